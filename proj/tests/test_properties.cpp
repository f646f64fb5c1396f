#include <doctest.h>

#include <algorithm>

#include "permgen/properties.hpp"

using namespace permgen;

TEST_CASE("scope names") {
  CHECK(parse_scope("axioms") == PropertyScope::Axioms);
  CHECK(parse_scope("appendixA") == PropertyScope::ConvexValued);
  CHECK_THROWS_AS(parse_scope("everything"), Error);
  CHECK_THROWS_AS(run_properties(PropertyScope::All, 0, 0), Error);
}

TEST_CASE("every suite passes a short run") {
  const SuiteReport r = run_properties(PropertyScope::All, 20, 123);
  for (const auto& p : r.properties) {
    INFO(p.name << ": " << p.counterexample);
    CHECK(p.passed());
  }
  CHECK(r.passed());
}

TEST_CASE("the splice non-example is reported with its witness") {
  const SuiteReport r = run_properties(PropertyScope::ConvexValued, 5, 0);
  const auto it = std::find_if(r.properties.begin(), r.properties.end(),
                               [](const PropertyResult& p) { return p.expected_negative; });
  REQUIRE(it != r.properties.end());
  CHECK(it->passed());
  CHECK(it->counterexample.find("(0.5,0.5)") != std::string::npos);
}

TEST_CASE("reports are reproducible from the seed") {
  const SuiteReport a = run_properties(PropertyScope::Groupwise, 5, 77);
  const SuiteReport b = run_properties(PropertyScope::Groupwise, 5, 77);
  REQUIRE(a.properties.size() == b.properties.size());
  for (std::size_t i = 0; i < a.properties.size(); ++i) {
    CHECK(a.properties[i].failures == b.properties[i].failures);
    CHECK(a.properties[i].counterexample == b.properties[i].counterexample);
  }
}

#include <doctest.h>

#include "helpers.hpp"
#include "permgen/generators.hpp"
#include "permgen/rng.hpp"

using namespace permgen;

TEST_CASE("generator names parse and compose right to left") {
  CHECK(GeneratorSpec::parse("conv") == GeneratorSpec::conv());
  const GeneratorSpec cs = GeneratorSpec::parse("conv|splice");
  CHECK(cs.kind() == GeneratorSpec::Kind::Composed);
  CHECK(cs.to_string() == "conv|splice");
  CHECK(cs.convex_valued());
  CHECK_FALSE(GeneratorSpec::splice().convex_valued());
  CHECK_FALSE(GeneratorSpec::parse("splice|conv").convex_valued());
  try {
    GeneratorSpec::parse("hull");
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigError);
  }
}

TEST_CASE("images of the basic generators") {
  const Corpus diag = Corpus::of({{0, 0}, {1, 1}});

  const GenerableSet box = generate(GeneratorSpec::box(), diag);
  CHECK(box.volume() == doctest::Approx(1.0));
  CHECK(box.contains(Creation{0.3, 0.9}));

  const GenerableSet grid = generate(GeneratorSpec::splice(), diag);
  REQUIRE(grid.is_grid());
  CHECK(grid.grid().cardinality() == 4);
  const auto pts = grid.grid().points();
  CHECK(pts == std::vector<Creation>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  CHECK(grid.contains(Creation{0, 1}));
  CHECK_FALSE(grid.contains(Creation{0.5, 0.5}));

  const GenerableSet tri = generate(GeneratorSpec::conv(), Corpus::of({{0, 0}, {0, 1}, {1, 0}}));
  CHECK(tri.volume() == doctest::Approx(0.5));
  CHECK_FALSE(is_member(GeneratorSpec::conv(), Corpus::of({{0, 0}, {0, 1}, {1, 0}}), Creation{0.6, 0.6}));
  CHECK(is_member(GeneratorSpec::box(), diag, Creation{0.3, 0.9}));
  CHECK(is_member(GeneratorSpec::splice(), diag, Creation{0, 1}));
}

TEST_CASE("empty corpus") {
  CHECK_THROWS_AS(generate(GeneratorSpec::conv(), Corpus(2)), Error);
  CHECK(generate_or_empty(GeneratorSpec::conv(), Corpus(2)).is_empty());
  CHECK(generate_or_empty(GeneratorSpec::splice(), Corpus(2)).is_empty());
}

TEST_CASE("splice after a continuum is rejected") {
  try {
    generate(GeneratorSpec::parse("splice|conv"), Corpus::of({{0, 0}, {1, 1}}));
    FAIL("expected UnsupportedComposition");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedComposition);
  }
}

TEST_CASE("large grids refuse to materialize") {
  Corpus c(3);
  for (int i = 0; i < 120; ++i) c.add(Creation{double(i), double(i) * 0.5 + 1000, double(-i)});
  const GenerableSet g = generate(GeneratorSpec::splice(), c);
  CHECK(g.grid().cardinality() == 120u * 120u * 120u);
  CHECK_THROWS_AS(g.grid().points(), Error);
}

TEST_CASE("closure axioms on a random corpus") {
  Rng rng(11);
  for (const auto& spec : {GeneratorSpec::conv(), GeneratorSpec::splice(), GeneratorSpec::box()}) {
    Corpus sup(2);
    while (sup.size() < 8) sup.add(Creation{rng.normal(), rng.normal()});
    const Corpus c = sup.prefix(4);
    std::vector<Creation> probes(sup.begin(), sup.end());
    for (int i = 0; i < 50; ++i) probes.push_back(Creation{2 * rng.normal(), 2 * rng.normal()});
    const ClosureReport r = check_closure_axioms(spec, c, sup, probes);
    CHECK(r.all());
  }
  CHECK_THROWS_AS(check_closure_axioms(GeneratorSpec::conv(), Corpus::of({{5, 5}}), Corpus::of({{0, 0}}), {}), Error);
}

TEST_CASE("splice idempotence by explicit enumeration") {
  const Corpus c = Corpus::of({{0, 3}, {1, 4}, {2, 3}});
  const auto first = generate(GeneratorSpec::splice(), c).grid().points();
  const auto second = generate(GeneratorSpec::splice(), Corpus(2, first)).grid().points();
  CHECK(first == second);
  CHECK(first.size() == 6);
}

TEST_CASE("convex-valued equivalences") {
  const Corpus c = Corpus::of({{0, 0}, {2, 1}, {1, 3}});
  for (const auto& spec : {GeneratorSpec::conv(), GeneratorSpec::box()}) {
    const ConvexValuedReport r = check_convex_valued(spec, c);
    CHECK(r.convex_valued());
    CHECK(r.contains_hull);
  }
  const ConvexValuedReport s = check_convex_valued(GeneratorSpec::splice(), Corpus::of({{0, 0}, {1, 1}}));
  CHECK_FALSE(s.convex_valued());
  CHECK(s.equivalences_agree());
  REQUIRE(s.witness);
  CHECK(*s.witness == Creation{0.5, 0.5});
}

TEST_CASE("positive homogeneity") {
  const Corpus seg = Corpus::of({{0, 0}, {1, 0}});
  CHECK(check_homogeneity(GeneratorSpec::conv(), seg, 2.0));
  const GenerableSet scaled_seg = generate(GeneratorSpec::conv(), scale_corpus(seg, 2.0));
  CHECK(scaled_seg.contains(Creation{2, 0}));
  CHECK_FALSE(scaled_seg.contains(Creation{2.1, 0}));

  const Corpus two = Corpus::of({{0, 0}, {2, 4}});
  CHECK(check_homogeneity(GeneratorSpec::box(), two, 0.5));
  const GenerableSet half = generate(GeneratorSpec::box(), scale_corpus(two, 0.5));
  CHECK(half.volume() == doctest::Approx(2.0));

  Rng rng(5);
  Corpus c(2);
  while (c.size() < 5) c.add(Creation{rng.normal(), rng.normal()});
  CHECK(check_homogeneity(GeneratorSpec::splice(), c, 3.0));
  const GenerableSet g1 = generate(GeneratorSpec::splice(), c);
  const GenerableSet g3 = generate(GeneratorSpec::splice(), scale_corpus(c, 3.0));
  const auto& base = g1.grid().values();
  const auto& tripled = g3.grid().values();
  for (std::size_t k = 0; k < 2; ++k) {
    REQUIRE(base[k].size() == tripled[k].size());
    for (std::size_t i = 0; i < base[k].size(); ++i) CHECK(tripled[k][i] == doctest::Approx(3 * base[k][i]));
  }
  CHECK_THROWS_AS(scale_corpus(c, 0.0), Error);
}

TEST_CASE("intersection and inclusion of sets") {
  const GenerableSet a = generate(GeneratorSpec::box(), Corpus::of({{0, 0}, {2, 2}}));
  const GenerableSet b = generate(GeneratorSpec::box(), Corpus::of({{1, 1}, {3, 3}}));
  const std::vector<GenerableSet> both{a, b};
  const GenerableSet m = intersect(both);
  CHECK(m.volume() == doctest::Approx(1.0));
  CHECK(set_includes(a, m));
  CHECK_FALSE(set_includes(m, a));

  const std::vector<GenerableSet> mixed{a, generate(GeneratorSpec::splice(), Corpus::of({{0, 0}, {1, 1}}))};
  CHECK_THROWS_AS(intersect(mixed), Error);
}

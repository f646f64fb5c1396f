#include <doctest.h>

#include <cmath>

#include "permgen/sampling.hpp"

using namespace permgen;

TEST_CASE("distribution text round trips") {
  for (const char* text : {"gauss:d=2", "elliptical:d=3,radial=exponential", "pareto:d=1,alpha=1",
                           "pareto-radial:d=2,alpha=1.5", "uniform:d=2,lo=-1,hi=1"}) {
    const DistributionSpec d = DistributionSpec::parse(text);
    CHECK(DistributionSpec::parse(d.to_string()).to_string() == d.to_string());
  }
  CHECK(DistributionSpec::parse("pareto:d=1,alpha=2").kind == DistributionSpec::Kind::Pareto1D);
  CHECK(DistributionSpec::parse("pareto:d=3,alpha=2").kind == DistributionSpec::Kind::ParetoRadial);
  CHECK(DistributionSpec::parse("gauss:d=2,seed=9").seed == 9);
  CHECK_THROWS_AS(DistributionSpec::parse("gauss:d"), Error);
  CHECK_THROWS_AS(DistributionSpec::parse("gauss:d=0"), Error);
  CHECK_THROWS_AS(DistributionSpec::parse("gauss:d=2,d=3"), Error);
  CHECK_THROWS_AS(DistributionSpec::parse("cauchy:d=1"), Error);
  CHECK_THROWS_AS(DistributionSpec::parse("pareto:d=1,alpha=-1"), Error);
  CHECK_THROWS_AS(DistributionSpec::parse("uniform:d=1,lo=2,hi=1"), Error);
}

TEST_CASE("draws are reproducible and prefix stable") {
  for (const auto& d : {DistributionSpec::gaussian(2, 4), DistributionSpec::elliptical(2, DistributionSpec::Radial::Normal, 4),
                        DistributionSpec::pareto_radial(3, 1.0, 4), DistributionSpec::pareto_1d(1.0, 4),
                        DistributionSpec::uniform_box(2, 0, 1, 4)}) {
    const auto a = sample_draws(d, 5);
    CHECK(a == sample_draws(d, 5));
    const auto b = sample_draws(d, 40);
    CHECK(std::equal(a.begin(), a.end(), b.begin()));
    CHECK(sample_corpus(d, 10) == sample_corpus(d, 30).prefix(10));
    CHECK(sample_draws(d.with_seed(5), 5) != a);
  }
}

TEST_CASE("pareto supports lie beyond the scale") {
  for (const auto& x : sample_draws(DistributionSpec::pareto_radial(2, 1.0, 1), 2000)) {
    CHECK(std::hypot(x[0], x[1]) >= 1.0);
  }
  for (const auto& x : sample_draws(DistributionSpec::pareto_1d(1.0, 1), 2000)) CHECK(x[0] >= 1.0);
}

TEST_CASE("gaussian sample mean is near zero") {
  const std::size_t n = 10000;
  const auto xs = sample_draws(DistributionSpec::gaussian(2, 12), n);
  for (std::size_t k = 0; k < 2; ++k) {
    double m = 0.0;
    for (const auto& x : xs) m += x[k];
    m /= static_cast<double>(n);
    CHECK(std::abs(m) <= 4.0 / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("a process that only repeats itself is degenerate") {
  const DistributionSpec flat = DistributionSpec::uniform_box(1, 1.0, std::nextafter(1.0, 2.0), 0);
  CHECK_THROWS_AS(sample_corpus(flat, 50), Error);
}

TEST_CASE("tail diagnostic tracks running maxima") {
  const TailDiagnostic t = tail_diagnostic(DistributionSpec::pareto_1d(1.0, 3), 100);
  REQUIRE(t.max_norm.size() == 100);
  REQUIRE(t.successive_ratio.size() == 99);
  for (std::size_t k = 1; k < 100; ++k) {
    CHECK(t.max_norm[k] >= t.max_norm[k - 1]);
    CHECK(t.successive_ratio[k - 1] == doctest::Approx(t.max_norm[k - 1] / t.max_norm[k]));
  }
  CHECK_THROWS_AS(tail_diagnostic(DistributionSpec::gaussian(1), 1), Error);
}

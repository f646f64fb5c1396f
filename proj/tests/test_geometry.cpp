#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "permgen/geometry.hpp"
#include "permgen/rng.hpp"

using namespace permgen;

namespace {

Polytope unit_square() { return convex_hull(Corpus::of({{0, 0}, {1, 0}, {0, 1}, {1, 1}})); }

}  // namespace

TEST_CASE("corpus rejects mixed dimensions and duplicates") {
  Corpus c(2);
  c.add(Creation{0, 0});
  CHECK_THROWS_AS(c.add(Creation{0, 0}), Error);
  CHECK_THROWS_AS(c.add(Creation{1, 2, 3}), Error);
  CHECK_THROWS_AS(Creation({1.0, NAN}), Error);
  CHECK(c.without(0).empty());
}

TEST_CASE("hull of two reals is the segment") {
  const Polytope p = convex_hull(Corpus::of({{0}, {1}}));
  CHECK(p.vertices().size() == 2);
  CHECK(p.full_dimensional());
  CHECK(volume(p) == doctest::Approx(1.0));
}

TEST_CASE("three collinear points give a flat segment") {
  const Polytope p = convex_hull(Corpus::of({{-1, 0}, {0, 0}, {1, 0}}));
  CHECK(p.affine_dim() == 1);
  CHECK(p.zero_volume());
  CHECK(volume(p) == 0.0);
  REQUIRE(p.vertices().size() == 2);
  CHECK(contains(p, Creation{0.5, 0}.coords()));
  CHECK_FALSE(contains(p, Creation{0.5, 0.01}.coords()));
}

TEST_CASE("random hull agrees with gift wrapping and contains every input") {
  Rng rng(7);
  Corpus c(2);
  while (c.size() < 100) c.add(Creation{rng.uniform(), rng.uniform()});
  const Polytope p = convex_hull(c);
  const auto ref = oracle::jarvis_hull(testing::to_p2(c.items()));
  CHECK(p.vertices().size() == ref.size());
  CHECK(volume(p) == doctest::Approx(oracle::shoelace(ref)).epsilon(1e-12));
  for (const auto& x : c) {
    CHECK(membership(p, x) != Location::Outside);
    // Brute-force halfspace evaluation, independent of the stored facets.
    CHECK(oracle::in_convex_polygon(ref, {x[0], x[1]}));
  }
}

TEST_CASE("membership in the unit square") {
  const Polytope sq = unit_square();
  CHECK(membership(sq, Creation{0.5, 0.5}) == Location::Inside);
  CHECK(membership(sq, Creation{1, 1}) == Location::Boundary);
  CHECK(membership(sq, Creation{2, 0}) == Location::Outside);
}

TEST_CASE("volumes of simple shapes") {
  CHECK(volume(unit_square()) == doctest::Approx(1.0));
  CHECK(volume(convex_hull(Corpus::of({{0, 0}, {1, 1}}))) == 0.0);
  CHECK(volume(convex_hull(Corpus::of({{0, 0}, {1, 0}, {0, 1}}))) == doctest::Approx(0.5));
  CHECK(volume(convex_hull(Corpus::of({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}))) == doctest::Approx(1.0 / 6));
}

TEST_CASE("monte carlo volume") {
  const Polytope sq = unit_square();
  const McEstimate full = mc_volume([&](std::span<const double> x) { return contains(sq, x); }, sq, 10000, 1);
  CHECK(full.estimate == 1.0);

  const Polytope tri = convex_hull(Corpus::of({{0, 0}, {1, 0}, {0, 1}}));
  const McEstimate half = mc_volume([&](std::span<const double> x) { return contains(tri, x); }, sq, 1000000, 42);
  CHECK(half.std_error > 0.0);
  CHECK(std::abs(half.estimate - 0.5) <= 3 * half.std_error);

  const McEstimate none = mc_volume([](std::span<const double>) { return false; }, sq, 1000, 3);
  CHECK(none.estimate == 0.0);
}

TEST_CASE("support function") {
  const Polytope sq = unit_square();
  const double r = 1 / std::sqrt(2.0);
  CHECK(support(sq, std::vector<double>{1, 0}) == doctest::Approx(1.0));
  CHECK(support(sq, std::vector<double>{r, r}) == doctest::Approx(std::sqrt(2.0)));
  const std::vector<double> u{0.6, -0.8};
  CHECK(support(scaled(sq, 3.0), u) == doctest::Approx(3.0 * support(sq, u)));
}

TEST_CASE("radon partitions") {
  SUBCASE("middle of three reals") {
    const RadonPartition r = radon_partition(Corpus::of({{0}, {1}, {2}}));
    CHECK(r.witness[0] == doctest::Approx(1.0));
    CHECK(r.a.size() + r.b.size() == 3);
  }
  SUBCASE("interior point of a triangle") {
    const RadonPartition r = radon_partition(Corpus::of({{0, 0}, {2, 0}, {1, 2}, {1, 0.5}}));
    CHECK(r.witness[0] == doctest::Approx(1.0));
    CHECK(r.witness[1] == doctest::Approx(0.5));
    CHECK(in_convex_hull(r.a.items(), r.witness.coords()));
    CHECK(in_convex_hull(r.b.items(), r.witness.coords()));
  }
  SUBCASE("square diagonals") {
    const RadonPartition r = radon_partition(Corpus::of({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
    CHECK(r.witness[0] == doctest::Approx(0.5));
    CHECK(r.witness[1] == doctest::Approx(0.5));
    CHECK(r.a.size() == 2);
    CHECK(r.b.size() == 2);
  }
  CHECK_THROWS_AS(radon_partition(Corpus::of({{0, 0}, {1, 0}, {0, 1}})), Error);
}

TEST_CASE("halfspace intersection") {
  const Polytope sq = unit_square();
  const std::vector<Polytope> same{sq, sq};
  CHECK(same_vertex_set(halfspace_intersection(same), sq));

  const std::vector<Polytope> touching{convex_hull(Corpus::of({{0}, {1}})), convex_hull(Corpus::of({{1}, {2}}))};
  const Polytope pt = halfspace_intersection(touching);
  REQUIRE(pt.vertices().size() == 1);
  CHECK(pt.vertices()[0][0] == doctest::Approx(1.0));

  const std::vector<Polytope> apart{convex_hull(Corpus::of({{0}, {1}})), convex_hull(Corpus::of({{2}, {3}}))};
  CHECK(halfspace_intersection(apart).is_empty());
}

TEST_CASE("leave-one-out intersection of the square matches a dense grid") {
  const Corpus c = Corpus::of({{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  std::vector<Polytope> loo;
  for (std::size_t i = 0; i < c.size(); ++i) loo.push_back(convex_hull(c.without(i)));
  const Polytope p = halfspace_intersection(loo);
  std::vector<std::vector<oracle::P2>> tris;
  for (std::size_t i = 0; i < c.size(); ++i) tris.push_back(oracle::jarvis_hull(testing::to_p2(c.without(i).items())));
  const double agree = oracle::grid_agreement(
      [&](const oracle::P2& x) { return contains(p, std::vector<double>{x[0], x[1]}); },
      [&](const oracle::P2& x) {
        for (const auto& t : tris) {
          if (!oracle::in_convex_polygon(t, x)) return false;
        }
        return true;
      },
      -0.5, 1.5, 81);
  CHECK(agree == 1.0);
}

TEST_CASE("four-dimensional hull answers membership by linear programming") {
  Rng rng(3);
  Corpus c(4);
  while (c.size() < 12) c.add(Creation{rng.normal(), rng.normal(), rng.normal(), rng.normal()});
  const Polytope p = convex_hull(c);
  for (const auto& x : c) CHECK(contains(p, x.coords()));
  CHECK_FALSE(contains(p, Creation{10, 0, 0, 0}.coords()));
  std::vector<double> centroid(4, 0.0);
  for (const auto& x : c) {
    for (std::size_t k = 0; k < 4; ++k) centroid[k] += x[k] / 12.0;
  }
  CHECK(contains(p, centroid));
}

TEST_CASE("axis boxes in higher dimension carry halfspaces") {
  const std::vector<double> lo{0, 0, 0, 0, 0};
  const std::vector<double> hi{1, 2, 1, 1, 1};
  const Polytope b = axis_box(lo, hi);
  CHECK(b.has_hrep());
  CHECK(contains(b, std::vector<double>{0.5, 1.5, 0.5, 0.5, 0.5}));
  CHECK_FALSE(contains(b, std::vector<double>{0.5, 2.5, 0.5, 0.5, 0.5}));
}

TEST_CASE("hull keeps the end of an edge whose points arrive out of order") {
  const std::vector<Creation> pts{{-3, 1}, {0, -1}, {1, -1}, {1, 0}, {-1, 3}, {-2.4, 2.2},
                                  {-7.0 / 3, 7.0 / 3}, {-25.0 / 11, 27.0 / 11}, {-2, 3}};
  const Polytope h = convex_hull_of(pts, 2, 1e-9);
  CHECK(h.vertices().size() == 6);
  CHECK(volume(h) == doctest::Approx(9.0));
}

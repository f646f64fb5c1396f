#pragma once

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "permgen/generators.hpp"

namespace testing {

inline std::vector<oracle::P2> to_p2(std::span<const permgen::Creation> pts) {
  std::vector<oracle::P2> out;
  for (const auto& p : pts) out.push_back({p[0], p[1]});
  return out;
}

/// The region of a set that must be a single polytope.
inline const permgen::Polytope& poly(const permgen::GenerableSet& s) { return *s.region().polytope(); }

/// The set is exactly the one point x (a region pinned to a vertex).
inline bool is_point(const permgen::GenerableSet& s, const permgen::Creation& x, double tol = 1e-9) {
  if (!s.is_region() || s.is_empty()) return false;
  const auto* p = s.region().polytope();
  if (p == nullptr || p->vertices().size() != 1) return false;
  for (std::size_t k = 0; k < x.dim(); ++k) {
    if (std::abs(p->vertices()[0][k] - x[k]) > tol) return false;
  }
  return true;
}

}  // namespace testing

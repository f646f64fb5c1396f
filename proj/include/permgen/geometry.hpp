#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <unordered_set>
#include <vector>

#include "permgen/error.hpp"

namespace permgen {

/// Absolute tolerance on halfspace residuals, LP residuals and coordinate
/// matching. Sized for double-precision work at coordinate scales up to ~1e6.
inline constexpr double kTolGeom = 1e-9;

/// Dimensions above this have no H-representation; membership goes through
/// LP feasibility and volume through Monte Carlo.
inline constexpr std::size_t kMaxExactDim = 3;

inline constexpr std::size_t kDefaultMcSamples = 200000;
inline constexpr std::uint64_t kDefaultMcSeed = 0x5eedULL;

/// A work embedded as a point of R^d. Coordinates are finite and d >= 1.
class Creation {
 public:
  explicit Creation(std::vector<double> coords);
  Creation(std::initializer_list<double> coords) : Creation(std::vector<double>(coords)) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t k) const { return coords_[k]; }
  std::span<const double> coords() const noexcept { return coords_; }

  friend bool operator==(const Creation&, const Creation&) = default;
  friend auto operator<=>(const Creation& a, const Creation& b) { return a.coords_ <=> b.coords_; }

 private:
  std::vector<double> coords_;
};

struct CreationHash {
  std::size_t operator()(const Creation& c) const noexcept;
};

/// Finite set of distinct creations of a common dimension. Iteration follows
/// insertion order; equality is set equality.
class Corpus {
 public:
  explicit Corpus(std::size_t dim);
  Corpus(std::size_t dim, std::vector<Creation> items);

  /// Infers the dimension from the first row; throws EmptyCorpus on no rows.
  static Corpus of(std::initializer_list<std::initializer_list<double>> rows);

  void add(Creation c);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  std::span<const Creation> items() const noexcept { return items_; }
  const Creation& operator[](std::size_t i) const { return items_[i]; }
  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }

  bool contains(const Creation& c) const { return index_.contains(c); }
  bool is_subset_of(const Corpus& other) const;

  Corpus without(std::size_t index) const;
  /// Set difference; members of `removed` that are not present are ignored.
  Corpus without(const Corpus& removed) const;
  Corpus with(const Creation& c) const;
  Corpus prefix(std::size_t n) const;
  Corpus scaled(double alpha) const;

  friend bool operator==(const Corpus& a, const Corpus& b);

 private:
  std::size_t dim_;
  std::vector<Creation> items_;
  std::unordered_set<Creation, CreationHash> index_;
};

/// {x : normal . x <= offset} with a unit normal.
struct Halfspace {
  std::vector<double> normal;
  double offset = 0.0;

  double residual(std::span<const double> x) const;
};

/// Convex polytope in R^d with its extreme points and, for d <= 3, a
/// consistent set of bounding halfspaces. Lower-dimensional polytopes keep
/// their vertices and report zero volume; their H-representation contains
/// pairs of opposite halfspaces pinning the affine hull.
class Polytope {
 public:
  static Polytope empty(std::size_t dim);

  Polytope(std::size_t dim, std::vector<Creation> vertices, std::vector<Halfspace> halfspaces,
           std::size_t affine_dim, bool has_hrep, double exact_volume);

  std::size_t dim() const noexcept { return dim_; }
  bool is_empty() const noexcept { return vertices_.empty(); }
  std::size_t affine_dim() const noexcept { return affine_dim_; }
  bool full_dimensional() const noexcept { return !is_empty() && affine_dim_ == dim_; }
  /// True when volume() is zero because the polytope is empty or flat.
  bool zero_volume() const noexcept { return !full_dimensional(); }

  /// Extreme points. For full-dimensional 2-D polytopes they are in
  /// counter-clockwise order.
  std::span<const Creation> vertices() const noexcept { return vertices_; }
  std::span<const Halfspace> halfspaces() const noexcept { return halfspaces_; }
  bool has_hrep() const noexcept { return has_hrep_; }

  /// Cached exact volume; meaningful only when dim() <= kMaxExactDim.
  double exact_volume() const noexcept { return exact_volume_; }

 private:
  std::size_t dim_;
  std::vector<Creation> vertices_;
  std::vector<Halfspace> halfspaces_;
  std::size_t affine_dim_ = 0;
  bool has_hrep_ = false;
  double exact_volume_ = 0.0;
};

enum class Location { Inside, Boundary, Outside };

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

struct RadonPartition {
  Corpus a;
  Corpus b;
  Creation witness;
};

struct BoundingBox {
  std::vector<double> lo;
  std::vector<double> hi;

  double volume() const;
};

using MembershipOracle = std::function<bool(std::span<const double>)>;

Polytope convex_hull(const Corpus& corpus, double tol = kTolGeom);

/// Hull of an arbitrary point list; near-duplicates (within tol) are merged.
Polytope convex_hull_of(std::span<const Creation> points, std::size_t dim, double tol = kTolGeom);

/// Axis-aligned box [lo_1, hi_1] x ... x [lo_d, hi_d]; requires lo <= hi.
/// Boxes carry an H-representation in every dimension.
Polytope axis_box(std::span<const double> lo, std::span<const double> hi, double tol = kTolGeom);

Polytope halfspace_intersection(std::span<const Polytope> polytopes, double tol = kTolGeom);

Location membership(const Polytope& polytope, std::span<const double> x, double tol = kTolGeom);
inline Location membership(const Polytope& polytope, const Creation& x, double tol = kTolGeom) {
  return membership(polytope, x.coords(), tol);
}
inline bool contains(const Polytope& polytope, std::span<const double> x, double tol = kTolGeom) {
  return membership(polytope, x, tol) != Location::Outside;
}

/// LP feasibility test for x in conv(points); works in any dimension.
bool in_convex_hull(std::span<const Creation> points, std::span<const double> x, double tol = kTolGeom);

/// Exact for d <= 3; Monte Carlo with the default sample budget above that.
double volume(const Polytope& polytope);

/// Hit-rate estimate of the volume of {x : region(x)}. Samples are drawn
/// uniformly from the axis-aligned bounding box of `bounding`, which must
/// contain the region.
McEstimate mc_volume(const MembershipOracle& region, const Polytope& bounding, std::size_t samples,
                     std::uint64_t seed);

double support(const Polytope& polytope, std::span<const double> direction);

RadonPartition radon_partition(const Corpus& corpus, double tol = kTolGeom);

BoundingBox bounding_box(const Polytope& polytope);
BoundingBox bounding_box(std::span<const Creation> points, std::size_t dim);

/// Every vertex of `inner` lies in `outer` (within tol).
bool polytope_includes(const Polytope& outer, const Polytope& inner, double tol = kTolGeom);
bool same_vertex_set(const Polytope& a, const Polytope& b, double tol = kTolGeom);

Polytope scaled(const Polytope& polytope, double alpha, double tol = kTolGeom);

double dot(std::span<const double> a, std::span<const double> b);

}  // namespace permgen

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "permgen/geometry.hpp"

namespace permgen {

/// Largest splice grid that is ever enumerated point by point.
inline constexpr std::size_t kGridLimit = 1'000'000;

/// A closure operator on finite corpora. Composed stages apply right to left,
/// so {Conv, Splice} means conv(splice(C)).
class GeneratorSpec {
 public:
  enum class Kind { Conv, Splice, Box, Composed };

  static GeneratorSpec conv() { return GeneratorSpec(Kind::Conv); }
  static GeneratorSpec splice() { return GeneratorSpec(Kind::Splice); }
  static GeneratorSpec box() { return GeneratorSpec(Kind::Box); }
  /// Throws InvalidArgument on an empty stage list. Single stages collapse.
  static GeneratorSpec composed(std::vector<GeneratorSpec> stages);

  /// Accepts "conv", "splice", "box" and compositions joined by '|'.
  /// Unknown names throw ConfigError.
  static GeneratorSpec parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  const std::vector<GeneratorSpec>& stages() const noexcept { return stages_; }
  std::string to_string() const;

  /// True when every image is convex. Decided structurally: the outermost
  /// stage is conv or box.
  bool convex_valued() const;

  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;

 private:
  explicit GeneratorSpec(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::vector<GeneratorSpec> stages_;
};

/// Product of per-coordinate finite value sets. Values are sorted and no two
/// lie within tol of each other. An empty value set on any coordinate means
/// the grid is empty.
class FiniteGrid {
 public:
  FiniteGrid(std::size_t dim, std::vector<std::vector<double>> values);
  static FiniteGrid empty(std::size_t dim);
  /// Per-coordinate value sets of a point list, merged at tol.
  static FiniteGrid of_points(std::span<const Creation> points, std::size_t dim, double tol = kTolGeom);

  std::size_t dim() const noexcept { return values_.size(); }
  const std::vector<std::vector<double>>& values() const noexcept { return values_; }
  bool is_empty() const noexcept;
  /// Saturates at SIZE_MAX.
  std::size_t cardinality() const noexcept;
  bool contains(std::span<const double> x, double tol = kTolGeom) const;
  /// Lexicographic enumeration; throws GridExplosion above `limit` points.
  std::vector<Creation> points(std::size_t limit = kGridLimit) const;

 private:
  std::vector<std::vector<double>> values_;
};

/// Convex set given as the intersection of one or more polytopes. In d <= 3
/// intersections are carried out eagerly, so there is exactly one piece; in
/// higher dimension the pieces are kept and queried through LP.
class ConvexRegion {
 public:
  explicit ConvexRegion(Polytope polytope);
  ConvexRegion(std::size_t dim, std::vector<Polytope> pieces);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Polytope>& pieces() const noexcept { return pieces_; }
  /// The single polytope when the region has one piece.
  const Polytope* polytope() const noexcept { return pieces_.size() == 1 ? &pieces_.front() : nullptr; }

  bool contains(std::span<const double> x, double tol = kTolGeom) const;
  bool is_empty(double tol = kTolGeom) const;
  /// Some point of the region, or nullopt when empty.
  std::optional<Creation> witness(double tol = kTolGeom) const;
  /// Exact in d <= 3, Monte Carlo otherwise.
  double volume(std::size_t samples = kDefaultMcSamples, std::uint64_t seed = kDefaultMcSeed) const;
  /// Box of the piece with the smallest bounding box; throws EmptyPolytope.
  BoundingBox bounds() const;

 private:
  std::size_t dim_;
  std::vector<Polytope> pieces_;
};

/// Image g(C): a convex region for conv and box, a grid for splice.
class GenerableSet {
 public:
  GenerableSet(ConvexRegion region) : set_(std::move(region)) {}  // NOLINT: implicit by design
  GenerableSet(FiniteGrid grid) : set_(std::move(grid)) {}        // NOLINT

  std::size_t dim() const;
  bool is_region() const noexcept { return std::holds_alternative<ConvexRegion>(set_); }
  bool is_grid() const noexcept { return std::holds_alternative<FiniteGrid>(set_); }
  const ConvexRegion& region() const { return std::get<ConvexRegion>(set_); }
  const FiniteGrid& grid() const { return std::get<FiniteGrid>(set_); }

  bool contains(std::span<const double> x, double tol = kTolGeom) const;
  bool contains(const Creation& x, double tol = kTolGeom) const { return contains(x.coords(), tol); }
  bool is_empty(double tol = kTolGeom) const;
  /// Lebesgue measure; zero for grids.
  double volume() const;
  /// Finite point set whose image under a conv/box/splice stage equals the
  /// image of this set: vertices for a region, all points for a grid.
  std::vector<Creation> generating_points(std::size_t grid_limit = kGridLimit) const;

 private:
  std::variant<ConvexRegion, FiniteGrid> set_;
};

/// g(C). Throws EmptyCorpus, GridExplosion, UnsupportedComposition.
GenerableSet generate(const GeneratorSpec& spec, const Corpus& corpus, double tol = kTolGeom,
                      std::size_t grid_limit = kGridLimit);

/// g(C), with g(empty) the empty set of the kind `spec` produces.
GenerableSet generate_or_empty(const GeneratorSpec& spec, const Corpus& corpus, double tol = kTolGeom,
                               std::size_t grid_limit = kGridLimit);

/// The empty set of the kind `spec` produces.
GenerableSet empty_image(const GeneratorSpec& spec, std::size_t dim);

/// x in g(C) without building g(C) where avoidable.
bool is_member(const GeneratorSpec& spec, const Corpus& corpus, std::span<const double> x, double tol = kTolGeom);
inline bool is_member(const GeneratorSpec& spec, const Corpus& corpus, const Creation& x, double tol = kTolGeom) {
  return is_member(spec, corpus, x.coords(), tol);
}

/// Set intersection; all operands must be of the same kind (UnsupportedComposition otherwise).
GenerableSet intersect(std::span<const GenerableSet> sets, double tol = kTolGeom);

/// outer contains inner. Exact for grids and single-piece regions; regions
/// with several pieces are compared on sampled points of `inner`.
bool set_includes(const GenerableSet& outer, const GenerableSet& inner, double tol = kTolGeom);
bool set_equal(const GenerableSet& a, const GenerableSet& b, double tol = kTolGeom);

GenerableSet scale_set(const GenerableSet& set, double alpha, double tol = kTolGeom);

struct ClosureReport {
  bool preservation = true;
  bool monotonicity = true;
  bool idempotence = true;
  std::optional<Creation> counterexample;

  bool all() const noexcept { return preservation && monotonicity && idempotence; }
};

/// Requires corpus to be a subset of superset (InvalidArgument otherwise).
ClosureReport check_closure_axioms(const GeneratorSpec& spec, const Corpus& corpus, const Corpus& superset,
                                   std::span<const Creation> probes, double tol = kTolGeom);

struct ConvexValuedReport {
  bool image_convex = true;   // g(C) is convex
  bool conv_after = true;     // conv(g(C)) = g(C)
  bool conv_before = true;    // g(conv(C)) = g(C), probed on finitely many points of conv(C)
  bool contains_hull = true;  // conv(C) within g(C)
  /// A point of conv(g(C)) outside g(C) when the image is not convex.
  std::optional<Creation> witness;

  bool equivalences_agree() const noexcept { return image_convex == conv_after && conv_after == conv_before; }
  bool convex_valued() const noexcept { return image_convex && conv_after && conv_before; }
};

ConvexValuedReport check_convex_valued(const GeneratorSpec& spec, const Corpus& corpus, double tol = kTolGeom);

/// Throws InvalidArgument unless alpha > 0.
Corpus scale_corpus(const Corpus& corpus, double alpha);

/// g(alpha C) = alpha g(C), compared by vertex sets or value sets.
bool check_homogeneity(const GeneratorSpec& spec, const Corpus& corpus, double alpha, double tol = kTolGeom);

}  // namespace permgen

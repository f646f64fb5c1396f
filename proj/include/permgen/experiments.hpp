#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "permgen/generators.hpp"
#include "permgen/sampling.hpp"

namespace permgen {

struct RatioMethod {
  enum class Kind { Exact, MonteCarlo };

  Kind kind = Kind::Exact;
  std::size_t samples = kDefaultMcSamples;
  std::uint64_t seed = kDefaultMcSeed;

  static RatioMethod exact() { return {}; }
  static RatioMethod monte_carlo(std::size_t samples, std::uint64_t seed) { return {Kind::MonteCarlo, samples, seed}; }
};

struct RatioEstimate {
  double ratio = 0.0;
  double std_error = 0.0;  // zero for exact ratios
  double vol_generable = 0.0;
  double vol_permissible = 0.0;
};

/// Vol(p(C)) / Vol(g(C)), clamped to [0, 1]. Exact needs d <= 3. Monte Carlo
/// draws one sample set from the bounding box of g(C) and evaluates both
/// sets on it. Throws ZeroGenerableVolume when g(C) has no volume and
/// NotConvexValued for grid-valued generators.
RatioEstimate permissible_ratio(const GeneratorSpec& spec, const Corpus& corpus,
                                const RatioMethod& method = RatioMethod::exact(), double tol = kTolGeom);

/// conv(C) and its leave-one-out hulls, maintained while points arrive.
/// A point strictly inside the current hull changes no hull vertex, so only
/// the leave-one-out hulls that miss it are extended; anything else triggers
/// a rebuild from all points.
class ConvGrowth {
 public:
  explicit ConvGrowth(std::size_t dim, double tol = kTolGeom);

  /// Throws DuplicateCreation on a repeated point; requires dim <= 3.
  void add(const Creation& c);

  std::size_t size() const noexcept { return points_.size(); }
  const Polytope& generable() const noexcept { return hull_; }
  /// Intersection of the leave-one-out hulls; cached between additions.
  const Polytope& permissible();
  std::size_t rebuilds() const noexcept { return rebuilds_; }

 private:
  void rebuild();

  std::size_t dim_;
  double tol_;
  Corpus points_;
  Polytope hull_;
  std::vector<Polytope> leave_out_;  // parallel to hull_.vertices()
  std::optional<Polytope> permissible_;
  std::size_t rebuilds_ = 0;
};

struct Checkpoint {
  std::size_t n = 0;
  double vol_generable = 0.0;
  double vol_permissible = 0.0;
  double ratio = 0.0;
  bool degenerate = false;  // g(C) had no volume; ratio reported as 0
  double walltime_ms = 0.0;
};

struct Trajectory {
  std::uint64_t seed = 0;
  std::vector<Checkpoint> checkpoints;
};

struct GrowthOptions {
  RatioMethod method = RatioMethod::exact();
  /// Worker cap; 0 means PERMGEN_THREADS or the hardware concurrency.
  std::size_t threads = 0;
  /// Wall time is left at 0 unless requested, so output stays reproducible.
  bool record_time = false;
  double tol = kTolGeom;
};

/// One trajectory per seed, in the order given. Checkpoints must be strictly
/// increasing within [1, n_max]. Exact conv runs in d <= 3 use ConvGrowth;
/// everything else recomputes the ratio at each checkpoint.
std::vector<Trajectory> run_growth(const DistributionSpec& dist, const GeneratorSpec& spec, std::size_t n_max,
                                   const std::vector<std::size_t>& checkpoints,
                                   const std::vector<std::uint64_t>& seeds, const GrowthOptions& options = {});

/// Worker count from PERMGEN_THREADS, else hardware concurrency; at least 1.
std::size_t default_thread_count();

struct BoundStep {
  std::size_t n = 0;
  double ratio = 0.0;
  /// max_{i<n} X_i / max_{i<=n} X_i; 1 at n = 1.
  double bound = 1.0;
  bool holds = true;
};

struct HeavyTailReport {
  std::vector<BoundStep> steps;
  bool all_hold = true;
};

/// Conv ratio of every prefix of a one-dimensional corpus against the
/// successive-maxima bound. Throws DimensionNotOne.
HeavyTailReport heavy_tail_bound(const Corpus& corpus, double tol = kTolGeom);

struct CheckpointStats {
  std::size_t n = 0;
  double mean = 0.0;
  double median = 0.0;
  double q10 = 0.0;
  double q90 = 0.0;
  double frac_below_07 = 0.0;
  double frac_below_09 = 0.0;
};

/// Per-checkpoint aggregates across trajectories. Quantiles interpolate
/// linearly between order statistics. Throws MisalignedCheckpoints.
std::vector<CheckpointStats> summarize(const std::vector<Trajectory>& trajectories);

/// Linear-interpolation quantile of unsorted data; q in [0, 1].
double quantile(std::vector<double> values, double q);

void write_trajectory_csv(std::ostream& out, const std::vector<Trajectory>& trajectories);
void write_stats_csv(std::ostream& out, const std::vector<CheckpointStats>& stats);

}  // namespace permgen

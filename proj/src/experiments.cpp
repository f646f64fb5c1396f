#include "permgen/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <ostream>
#include <thread>

#include <fmt/format.h>

#include "permgen/permissibility.hpp"
#include "permgen/rng.hpp"

namespace permgen {
namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

void require_convex_valued(const GeneratorSpec& spec) {
  if (!spec.convex_valued()) {
    throw Error(ErrorCode::NotConvexValued, spec.to_string() + " has no volume ratio: images are finite grids");
  }
}

RatioEstimate exact_ratio(const GeneratorSpec& spec, const Corpus& corpus, double tol) {
  if (corpus.dim() > kMaxExactDim) throw Error(ErrorCode::UnsupportedDimension, "exact ratio needs d <= 3");
  const PermissibleResult res = permissible_set(spec, corpus, tol);
  const Polytope* g = res.generable.region().polytope();
  if (g == nullptr || g->zero_volume()) throw Error(ErrorCode::ZeroGenerableVolume, "generable set has no volume");
  RatioEstimate r;
  r.vol_generable = volume(*g);
  r.vol_permissible = std::min(res.permissible.volume(), r.vol_generable);
  r.ratio = clamp01(r.vol_permissible / r.vol_generable);
  return r;
}

RatioEstimate monte_carlo_ratio(const GeneratorSpec& spec, const Corpus& corpus, const RatioMethod& method,
                                double tol) {
  if (method.samples == 0) throw Error(ErrorCode::InvalidArgument, "samples must be >= 1");
  const PermissibleResult res = permissible_set(spec, corpus, tol);
  const ConvexRegion& g = res.generable.region();
  const BoundingBox box = g.bounds();
  const double box_volume = box.volume();
  if (!(box_volume > 0.0)) throw Error(ErrorCode::ZeroGenerableVolume, "generable set has no volume");

  Rng rng(method.seed, /*stream=*/0x7261);
  std::vector<double> x(corpus.dim());
  std::size_t hits_g = 0, hits_p = 0;
  for (std::size_t s = 0; s < method.samples; ++s) {
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = rng.uniform(box.lo[k], box.hi[k]);
    if (!g.contains(x, tol)) continue;
    ++hits_g;
    if (res.permissible.contains(x, tol)) ++hits_p;
  }
  if (hits_g == 0) throw Error(ErrorCode::ZeroGenerableVolume, "no sample landed in the generable set");
  RatioEstimate r;
  const double n = static_cast<double>(method.samples);
  r.ratio = static_cast<double>(hits_p) / static_cast<double>(hits_g);
  r.std_error = std::sqrt(r.ratio * (1.0 - r.ratio) / static_cast<double>(hits_g));
  r.vol_generable = static_cast<double>(hits_g) / n * box_volume;
  r.vol_permissible = static_cast<double>(hits_p) / n * box_volume;
  return r;
}

Checkpoint record_state(ConvGrowth& state, std::size_t n) {
  Checkpoint cp;
  cp.n = n;
  const Polytope& g = state.generable();
  if (g.zero_volume()) {
    cp.degenerate = true;
    return cp;
  }
  cp.vol_generable = volume(g);
  cp.vol_permissible = std::min(volume(state.permissible()), cp.vol_generable);
  cp.ratio = clamp01(cp.vol_permissible / cp.vol_generable);
  return cp;
}

Trajectory run_seed(const DistributionSpec& dist, const GeneratorSpec& spec, std::size_t n_max,
                    const std::vector<std::size_t>& checkpoints, std::uint64_t seed, const GrowthOptions& options) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto elapsed_ms = [&] {
    if (!options.record_time) return 0.0;
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  };

  Trajectory t;
  t.seed = seed;
  const Corpus corpus = sample_corpus(dist.with_seed(seed), n_max);
  const bool incremental = spec.kind() == GeneratorSpec::Kind::Conv &&
                           options.method.kind == RatioMethod::Kind::Exact && corpus.dim() <= kMaxExactDim;
  if (incremental) {
    ConvGrowth state(corpus.dim(), options.tol);
    std::size_t next = 0;
    for (std::size_t i = 0; i < n_max && next < checkpoints.size(); ++i) {
      state.add(corpus[i]);
      if (i + 1 == checkpoints[next]) {
        Checkpoint cp = record_state(state, i + 1);
        cp.walltime_ms = elapsed_ms();
        t.checkpoints.push_back(cp);
        ++next;
      }
    }
    return t;
  }

  for (std::size_t n : checkpoints) {
    Checkpoint cp;
    cp.n = n;
    try {
      const RatioEstimate r = permissible_ratio(spec, corpus.prefix(n), options.method, options.tol);
      cp.vol_generable = r.vol_generable;
      cp.vol_permissible = r.vol_permissible;
      cp.ratio = r.ratio;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ZeroGenerableVolume) throw;
      cp.degenerate = true;
    }
    cp.walltime_ms = elapsed_ms();
    t.checkpoints.push_back(cp);
  }
  return t;
}

std::string g17(double x) { return fmt::format("{:.17g}", x); }

}  // namespace

RatioEstimate permissible_ratio(const GeneratorSpec& spec, const Corpus& corpus, const RatioMethod& method,
                                double tol) {
  require_convex_valued(spec);
  if (corpus.empty()) throw Error(ErrorCode::EmptyCorpus, "ratio of an empty corpus");
  if (method.kind == RatioMethod::Kind::Exact) return exact_ratio(spec, corpus, tol);
  return monte_carlo_ratio(spec, corpus, method, tol);
}

// ---- ConvGrowth ------------------------------------------------------------

ConvGrowth::ConvGrowth(std::size_t dim, double tol)
    : dim_(dim), tol_(tol), points_(dim), hull_(Polytope::empty(dim)) {
  if (dim == 0 || dim > kMaxExactDim) throw Error(ErrorCode::UnsupportedDimension, "incremental hulls need 1 <= d <= 3");
}

void ConvGrowth::add(const Creation& c) {
  points_.add(c);
  permissible_.reset();
  if (!hull_.full_dimensional() || membership(hull_, c, tol_) != Location::Inside) {
    rebuild();
    return;
  }
  for (auto& lo : leave_out_) {
    if (contains(lo, c.coords(), tol_)) continue;
    std::vector<Creation> pts(lo.vertices().begin(), lo.vertices().end());
    pts.push_back(c);
    lo = convex_hull_of(pts, dim_, tol_);
  }
}

void ConvGrowth::rebuild() {
  ++rebuilds_;
  hull_ = convex_hull(points_, tol_);
  leave_out_.clear();
  for (const auto& v : hull_.vertices()) {
    std::size_t idx = 0;
    while (!(points_[idx] == v)) ++idx;
    leave_out_.push_back(points_.size() > 1 ? convex_hull(points_.without(idx), tol_) : Polytope::empty(dim_));
  }
}

const Polytope& ConvGrowth::permissible() {
  if (!permissible_) {
    if (points_.size() <= 1) {
      permissible_ = Polytope::empty(dim_);
    } else if (leave_out_.size() == 1) {
      permissible_ = leave_out_.front();
    } else {
      permissible_ = halfspace_intersection(leave_out_, tol_);
    }
  }
  return *permissible_;
}

// ---- growth runs -----------------------------------------------------------

std::size_t default_thread_count() {
  std::size_t n = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PERMGEN_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) n = std::min(n, static_cast<std::size_t>(v));
  }
  return n;
}

std::vector<Trajectory> run_growth(const DistributionSpec& dist, const GeneratorSpec& spec, std::size_t n_max,
                                   const std::vector<std::size_t>& checkpoints,
                                   const std::vector<std::uint64_t>& seeds, const GrowthOptions& options) {
  require_convex_valued(spec);
  dist.validate();
  if (n_max == 0) throw Error(ErrorCode::InvalidArgument, "nmax must be >= 1");
  if (checkpoints.empty()) throw Error(ErrorCode::InvalidArgument, "at least one checkpoint is required");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] == 0 || checkpoints[i] > n_max || (i > 0 && checkpoints[i] <= checkpoints[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "checkpoints must increase strictly within [1, nmax]");
    }
  }

  std::vector<Trajectory> out(seeds.size());
  std::vector<std::exception_ptr> errors(seeds.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      try {
        out[i] = run_seed(dist, spec, n_max, checkpoints, seeds[i], options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min(options.threads ? options.threads : default_thread_count(), seeds.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

HeavyTailReport heavy_tail_bound(const Corpus& corpus, double tol) {
  if (corpus.dim() != 1) throw Error(ErrorCode::DimensionNotOne, "successive-maxima bound is one-dimensional");
  HeavyTailReport report;
  ConvGrowth state(1, tol);
  double running = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const double x = corpus[i][0];
    const double previous = running;
    running = std::max(running, x);
    state.add(corpus[i]);

    BoundStep step;
    step.n = i + 1;
    step.bound = i == 0 ? 1.0 : previous / running;
    step.ratio = record_state(state, i + 1).ratio;
    step.holds = step.ratio <= step.bound + tol;
    report.all_hold = report.all_hold && step.holds;
    report.steps.push_back(step);
  }
  return report;
}

// ---- aggregation -----------------------------------------------------------

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "quantile of no values");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<CheckpointStats> summarize(const std::vector<Trajectory>& trajectories) {
  if (trajectories.empty()) throw Error(ErrorCode::InvalidArgument, "nothing to summarize");
  const auto& ref = trajectories.front().checkpoints;
  for (const auto& t : trajectories) {
    bool aligned = t.checkpoints.size() == ref.size();
    for (std::size_t j = 0; aligned && j < ref.size(); ++j) aligned = t.checkpoints[j].n == ref[j].n;
    if (!aligned) {
      throw Error(ErrorCode::MisalignedCheckpoints, "trajectory for seed " + std::to_string(t.seed) +
                                                        " has different checkpoints");
    }
  }

  std::vector<CheckpointStats> out;
  std::vector<double> r;
  for (std::size_t j = 0; j < ref.size(); ++j) {
    r.clear();
    for (const auto& t : trajectories) r.push_back(t.checkpoints[j].ratio);
    CheckpointStats s;
    s.n = ref[j].n;
    double sum = 0.0;
    std::size_t below07 = 0, below09 = 0;
    for (double x : r) {
      sum += x;
      below07 += x < 0.7 ? 1 : 0;
      below09 += x < 0.9 ? 1 : 0;
    }
    const auto count = static_cast<double>(r.size());
    s.mean = sum / count;
    s.median = quantile(r, 0.5);
    s.q10 = quantile(r, 0.1);
    s.q90 = quantile(r, 0.9);
    s.frac_below_07 = static_cast<double>(below07) / count;
    s.frac_below_09 = static_cast<double>(below09) / count;
    out.push_back(s);
  }
  return out;
}

void write_trajectory_csv(std::ostream& out, const std::vector<Trajectory>& trajectories) {
  out << "seed,n,vol_generable,vol_permissible,ratio,degenerate_flag,walltime_ms\n";
  for (const auto& t : trajectories) {
    for (const auto& c : t.checkpoints) {
      out << fmt::format("{},{},{},{},{},{},{}\n", t.seed, c.n, g17(c.vol_generable), g17(c.vol_permissible),
                         g17(c.ratio), c.degenerate ? 1 : 0, g17(c.walltime_ms));
    }
  }
}

void write_stats_csv(std::ostream& out, const std::vector<CheckpointStats>& stats) {
  out << "checkpoint,mean,median,q10,q90,frac_below_0.7,frac_below_0.9\n";
  for (const auto& s : stats) {
    out << fmt::format("{},{},{},{},{},{},{}\n", s.n, g17(s.mean), g17(s.median), g17(s.q10), g17(s.q90),
                       g17(s.frac_below_07), g17(s.frac_below_09));
  }
}

}  // namespace permgen

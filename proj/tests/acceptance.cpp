// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Statistical thresholds were fixed from oracle runs before this
// harness was first executed and must not be tuned to its output.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"
#include "permgen/cli.hpp"
#include "permgen/experiments.hpp"
#include "permgen/permissibility.hpp"
#include "permgen/properties.hpp"

using namespace permgen;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt_double(double v, int prec = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

/// Runtime limits are part of the criteria; `limit_s` of 0 means none.
bool run(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) {
    o.pass = false;
    o.detail += "; runtime " + fmt_double(secs, 1) + " s exceeds " + fmt_double(limit_s, 0) + " s";
  }
  std::printf("criterion %d %s: %s [%.2f s] %s\n", id, o.pass ? "PASS" : "FAIL", title, secs, o.detail.c_str());
  std::fflush(stdout);
  return o.pass;
}

/// Checks that every property whose name starts with one of `prefixes` ran
/// `trials` times without failure; reports the first offender.
Outcome require_properties(const SuiteReport& report, const std::vector<std::string>& prefixes, std::size_t trials) {
  std::size_t matched = 0;
  for (const auto& prefix : prefixes) {
    std::size_t hits = 0;
    for (const auto& p : report.properties) {
      if (p.name.rfind(prefix, 0) != 0) continue;
      ++hits;
      if (!p.passed() || (!p.expected_negative && p.trials < trials)) {
        return {false, p.name + ": " + std::to_string(p.failures) + " failures of " + std::to_string(p.trials) +
                           "; first " + p.counterexample};
      }
    }
    if (hits == 0) return {false, "no property named " + prefix};
    matched += hits;
  }
  return {true, std::to_string(matched) + " properties x " + std::to_string(trials) + " trials, zero failures"};
}

Outcome worked_examples() {
  const double tol = 1e-9;
  const auto conv = GeneratorSpec::conv();
  if (!permissible_set(conv, Corpus::of({{0}, {1}}), tol).permissible.is_empty()) {
    return {false, "d=1 {0,1}: permissible set not empty"};
  }
  const AdditionReport a =
      add_creation_effect(conv, Corpus::of({{-1, 0}, {0, 0}, {1, 0}}), Creation{0, 1}, tol);
  if (!testing::is_point(a.before.permissible, Creation{0, 0}, tol) ||
      !testing::is_point(a.after.permissible, Creation{0, 0}, tol)) {
    return {false, "collinear corpus plus (0,1): permissible set is not {(0,0)} before and after"};
  }
  const AdditionReport b = add_creation_effect(conv, Corpus::of({{0, 0}, {0, 1}, {1, 0}}), Creation{1, 1}, tol);
  if (!b.before.permissible.is_empty() || !testing::is_point(b.after.permissible, Creation{0.5, 0.5}, tol)) {
    return {false, "triangle plus (1,1): expected empty then {(1/2,1/2)}"};
  }
  return {true, "empty; {(0,0)} -> {(0,0)}; empty -> {(0.5,0.5)}"};
}

Outcome light_tail_growth() {
  const std::vector<std::size_t> checkpoints{50, 200, 800, 2000};
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 0; s < 20; ++s) seeds.push_back(s);
  const DistributionSpec dist = DistributionSpec::gaussian(2);
  const auto runs = run_growth(dist, GeneratorSpec::conv(), 2000, checkpoints, seeds);

  std::size_t increased = 0;
  double mean_final = 0.0;
  double worst_gap = 0.0;
  for (const auto& t : runs) {
    const double r50 = t.checkpoints.front().ratio;
    const double r2000 = t.checkpoints.back().ratio;
    increased += r2000 > r50 ? 1 : 0;
    mean_final += r2000 / static_cast<double>(runs.size());

    // Brute-force recomputation by gift wrapping and polygon clipping.
    const Corpus c = sample_corpus(dist.with_seed(t.seed), 2000);
    for (const auto& cp : t.checkpoints) {
      const auto pts = testing::to_p2(c.prefix(cp.n).items());
      const double g = oracle::shoelace(oracle::jarvis_hull(pts));
      const double ref = oracle::conv_permissible_area(pts) / g;
      worst_gap = std::max(worst_gap, std::abs(ref - cp.ratio));
    }
  }
  const bool pass = increased >= 18 && mean_final >= 0.85 && worst_gap <= 1e-9;
  return {pass, "r(2000) > r(50) in " + std::to_string(increased) + "/20 seeds (need 18); mean r(2000) = " +
                    fmt_double(mean_final) + " (need 0.85); max gap to brute force " + fmt_double(worst_gap, 12)};
}

/// Fraction of final ratios below 0.7 from direct simulation of the order
/// statistics: in one dimension the permissible interval runs from the second
/// smallest to the second largest draw.
double order_statistics_fraction(std::size_t sims, std::size_t n) {
  std::mt19937_64 eng(20240601);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::size_t below = 0;
  for (std::size_t s = 0; s < sims; ++s) {
    double lo1 = INFINITY, lo2 = INFINITY, hi1 = -INFINITY, hi2 = -INFINITY;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = 1.0 / (1.0 - unif(eng));  // Pareto(1) on [1, inf)
      if (x < lo1) {
        lo2 = lo1;
        lo1 = x;
      } else if (x < lo2) {
        lo2 = x;
      }
      if (x > hi1) {
        hi2 = hi1;
        hi1 = x;
      } else if (x > hi2) {
        hi2 = x;
      }
    }
    below += (hi2 - lo2) / (hi1 - lo1) < 0.7 ? 1 : 0;
  }
  return static_cast<double>(below) / static_cast<double>(sims);
}

Outcome heavy_tail() {
  const std::size_t n = 2000;
  const std::size_t seeds = 200;
  const DistributionSpec dist = DistributionSpec::pareto_1d(1.0);
  std::size_t violations = 0;
  std::size_t below = 0;
  std::size_t steps = 0;
  for (std::uint64_t s = 0; s < seeds; ++s) {
    const Corpus c = sample_corpus(dist.with_seed(s), n);
    const HeavyTailReport r = heavy_tail_bound(c);
    for (const auto& st : r.steps) {
      violations += st.ratio <= st.bound ? 0 : 1;
      ++steps;
    }
    std::vector<double> xs;
    for (const auto& x : c) xs.push_back(x[0]);
    if (std::abs(r.steps.back().ratio - oracle::conv_ratio_1d(xs)) > 1e-12) {
      return {false, "seed " + std::to_string(s) + ": final ratio disagrees with the interval oracle"};
    }
    below += r.steps.back().ratio < 0.7 ? 1 : 0;
  }
  const double frac = static_cast<double>(below) / static_cast<double>(seeds);
  const double expected = order_statistics_fraction(100000, n);
  const double sigma = std::sqrt(expected * (1 - expected) / static_cast<double>(seeds));
  const bool consistent = std::abs(frac - expected) <= 4 * sigma;
  const bool pass = violations == 0 && frac >= 0.10 && consistent;
  return {pass, "bound held at " + std::to_string(steps - violations) + "/" + std::to_string(steps) +
                    " steps; fraction below 0.7 = " + fmt_double(frac, 3) + " (need 0.10; order-statistics oracle " +
                    fmt_double(expected, 3) + " +- " + fmt_double(4 * sigma, 3) + ")"};
}

Outcome volume_cross_validation() {
  std::size_t agree = 0;
  std::size_t nonzero = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const Corpus c = sample_corpus(DistributionSpec::gaussian(2, 1000 + i), 6 + i % 40);
    const PermissibleResult pr = permissible_set(GeneratorSpec::conv(), c);
    const double exact = pr.permissible.volume();
    const auto& region = pr.permissible.region();
    const McEstimate mc = mc_volume([&](std::span<const double> x) { return region.contains(x); },
                                    testing::poly(pr.generable), 1000000, i);
    nonzero += exact > 0 ? 1 : 0;
    agree += std::abs(mc.estimate - exact) <= 4 * mc.std_error ? 1 : 0;
  }
  return {agree >= 48, std::to_string(agree) + "/50 within 4 standard errors (need 48; " + std::to_string(nonzero) +
                           " with positive area)"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "permgen_acceptance";
  fs::remove_all(root);
  const std::vector<std::vector<std::string>> invocations{
      {"simulate", "gauss:d=2", "conv", "--nmax", "500", "--checkpoints", "50,200,500", "--seeds", "6", "--threads", "4"},
      {"simulate", "pareto:d=1,alpha=1", "conv", "--nmax", "500", "--seeds", "10"},
      {"simulate", "elliptical:d=3,radial=exponential", "box", "--nmax", "80", "--checkpoints", "20,80", "--seeds",
       "3", "--samples", "20000", "--threads", "3"}};
  std::size_t idx = 0;
  for (const auto& args : invocations) {
    std::string outputs[2];
    for (int rep = 0; rep < 2; ++rep) {
      std::vector<std::string> full{"permgen"};
      full.insert(full.end(), args.begin(), args.end());
      // Same directory both times: stdout names it.
      const fs::path dir = root / std::to_string(idx);
      full.push_back("--out");
      full.push_back(dir.string());
      std::vector<const char*> argv;
      for (const auto& a : full) argv.push_back(a.c_str());
      std::ostringstream out, err;
      if (cli::run(static_cast<int>(argv.size()), argv.data(), out, err) != 0) {
        return {false, "invocation failed: " + err.str()};
      }
      outputs[rep] = out.str() + slurp(dir / "trajectories.csv") + slurp(dir / "stats.csv");
    }
    if (outputs[0] != outputs[1] || outputs[0].empty()) {
      return {false, "outputs differ for invocation " + std::to_string(idx)};
    }
    ++idx;
  }
  fs::remove_all(root);
  return {true, std::to_string(idx) + " invocations repeated, stdout and CSV files byte-identical"};
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run(1, "worked examples", 1.0, worked_examples);

  ok &= run(2, "closure axioms", 60.0, [] {
    return require_properties(run_properties(PropertyScope::Axioms, 1000, 1), {"closure axioms/"}, 1000);
  });

  const std::size_t trials = 500;
  SuiteReport perm;
  SuiteReport group;
  ok &= run(3, "permissibility and groupwise laws", 0.0, [&] {
    perm = run_properties(PropertyScope::Permissibility, trials, 2);
    group = run_properties(PropertyScope::Groupwise, trials, 3);
    const Outcome a = require_properties(
        perm, {"monotonicity of p/", "stability of p/", "addition trichotomy/"}, trials);
    if (!a.pass) return a;
    const Outcome b = require_properties(group, {"groupwise monotonicity/", "groupwise stability/",
                                                 "richer collection shrinks p/", "superadditivity/"},
                                         trials);
    if (!b.pass) return b;
    return Outcome{true, a.detail + "; " + b.detail};
  });

  ok &= run(4, "radon witnesses", 0.0, [&] {
    return require_properties(perm, {"radon witness permissible/conv", "radon witness permissible/box"}, trials);
  });

  ok &= run(5, "convex-valued generators", 0.0, [&] {
    return require_properties(run_properties(PropertyScope::ConvexValued, trials, 4),
                              {"conv within box", "convex-valued equivalences/box", "splice is not convex-valued"},
                              trials);
  });

  ok &= run(6, "light-tail growth", 600.0, light_tail_growth);
  ok &= run(7, "heavy-tail persistence", 300.0, heavy_tail);
  ok &= run(8, "volume cross-validation", 0.0, volume_cross_validation);
  ok &= run(9, "determinism", 0.0, determinism);

  std::printf("%s\n", ok ? "all criteria passed" : "some criteria FAILED");
  return ok ? 0 : 1;
}

#include "permgen/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "permgen/corpus_io.hpp"
#include "permgen/experiments.hpp"
#include "permgen/generators.hpp"
#include "permgen/permissibility.hpp"
#include "permgen/properties.hpp"
#include "permgen/sampling.hpp"

namespace permgen::cli {
namespace {

using nlohmann::json;

json to_json(const Creation& c) { return json(std::vector<double>(c.coords().begin(), c.coords().end())); }

json to_json(std::span<const Creation> pts) {
  json arr = json::array();
  for (const auto& p : pts) arr.push_back(to_json(p));
  return arr;
}

json describe(const Polytope& p) {
  json j;
  j["empty"] = p.is_empty();
  j["affine_dim"] = p.is_empty() ? json(nullptr) : json(p.affine_dim());
  j["volume"] = volume(p);
  j["vertices"] = to_json(p.vertices());
  if (p.has_hrep()) {
    json hs = json::array();
    for (const auto& h : p.halfspaces()) hs.push_back({{"normal", h.normal}, {"offset", h.offset}});
    j["halfspaces"] = hs;
  }
  // Counter-clockwise outline ready for plotting.
  if (p.dim() == 2 && p.full_dimensional()) j["polygon"] = to_json(p.vertices());
  return j;
}

json describe(const GenerableSet& s) {
  if (s.is_grid()) {
    const FiniteGrid& g = s.grid();
    json sizes = json::array();
    for (const auto& v : g.values()) sizes.push_back(v.size());
    return {{"type", "grid"},     {"empty", g.is_empty()},       {"sizes", sizes},
            {"values", g.values()}, {"cardinality", g.cardinality()}};
  }
  const ConvexRegion& r = s.region();
  if (const Polytope* p = r.polytope()) {
    json j = describe(*p);
    j["type"] = "region";
    return j;
  }
  json j{{"type", "region"}, {"pieces", r.pieces().size()}, {"empty", r.is_empty()}};
  if (!r.is_empty()) {
    j["volume"] = r.volume();
    j["witness"] = to_json(*r.witness());
  }
  return j;
}

json describe(const Classification& c, const Corpus& corpus) {
  json idx = json::array();
  for (const auto& x : c.infringed) {
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (corpus[i] == x) idx.push_back(i);
    }
  }
  return {{"classification", to_string(c.kind)}, {"infringed", to_json(c.infringed)}, {"infringed_indices", idx}};
}

int fail(std::ostream& err, const Error& e) {
  err << "error: " << e.what() << '\n';
  return e.code() == ErrorCode::ConfigError ? kConfigError : kInputError;
}

// ---- analyze -----------------------------------------------------------------

struct AnalyzeArgs {
  std::string corpus_path;
  std::string generator = "conv";
  std::string query;
  std::string add;
  std::size_t grid = 0;
  std::string collection;
  double tol = kTolGeom;
};

json grid_scan(const GeneratorSpec& spec, const Corpus& corpus, std::size_t res, double tol) {
  const std::size_t d = corpus.dim();
  double total = 1.0;
  for (std::size_t k = 0; k < d; ++k) total *= static_cast<double>(res);
  if (res < 2 || total > 1e6) throw Error(ErrorCode::InvalidArgument, "grid resolution must be >= 2 with at most 1e6 points");
  const BoundingBox b = bounding_box(corpus.items(), d);
  const PermissibleResult pr = permissible_set(spec, corpus, tol);
  std::size_t counts[3] = {0, 0, 0};
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> x(d);
  for (bool more = true; more;) {
    for (std::size_t k = 0; k < d; ++k) {
      x[k] = b.lo[k] + (b.hi[k] - b.lo[k]) * static_cast<double>(idx[k]) / static_cast<double>(res - 1);
    }
    if (!pr.generable.contains(x, tol)) {
      ++counts[2];
    } else if (pr.permissible.contains(x, tol)) {
      ++counts[0];
    } else {
      ++counts[1];
    }
    more = false;
    for (std::size_t k = d; k-- > 0;) {
      if (++idx[k] < res) {
        more = true;
        break;
      }
      idx[k] = 0;
    }
  }
  return {{"resolution", res},
          {"lo", b.lo},
          {"hi", b.hi},
          {"permissible", counts[0]},
          {"violation", counts[1]},
          {"not_generable", counts[2]}};
}

int analyze(const AnalyzeArgs& a, std::ostream& out) {
  const GeneratorSpec spec = GeneratorSpec::parse(a.generator);
  const Corpus corpus = read_corpus_csv(a.corpus_path);
  const PermissibleResult pr = permissible_set(spec, corpus, a.tol);

  json j;
  j["generator"] = spec.to_string();
  j["dim"] = corpus.dim();
  j["n"] = corpus.size();
  j["generable"] = describe(pr.generable);
  j["permissible"] = describe(pr.permissible);

  if (!a.query.empty()) {
    const Creation x = parse_point(a.query, corpus.dim());
    json q = describe(classify(spec, corpus, x, a.tol), corpus);
    q["point"] = to_json(x);
    j["query"] = q;
  }
  if (!a.add.empty()) {
    const Creation c = parse_point(a.add, corpus.dim());
    const AdditionReport r = add_creation_effect(spec, corpus, c, a.tol);
    j["addition"] = {{"point", to_json(c)},
                     {"case", to_string(r.case_label)},
                     {"before", describe(r.before.permissible)},
                     {"after", describe(r.after.permissible)},
                     {"unchanged", r.unchanged},
                     {"strictly_expanded", r.strictly_expanded},
                     {"witness", r.witness ? to_json(*r.witness) : json(nullptr)},
                     {"law_holds", r.law_holds}};
  }
  if (!a.collection.empty()) {
    json parsed;
    try {
      parsed = json::parse(a.collection);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ParseError, std::string("collection: ") + e.what());
    }
    std::vector<std::vector<std::size_t>> sets;
    try {
      sets = parsed.get<std::vector<std::vector<std::size_t>>>();
    } catch (const json::exception&) {
      throw Error(ErrorCode::ParseError, "collection must be an array of arrays of corpus indices");
    }
    const Collection col = Collection::from_indices(corpus, sets);
    j["groupwise"] = {{"collection", sets}, {"permissible", describe(groupwise_permissible(spec, corpus, col, a.tol))}};
  }
  if (a.grid > 0) j["grid"] = grid_scan(spec, corpus, a.grid, a.tol);

  out << j.dump(2) << '\n';
  return kOk;
}

// ---- simulate ----------------------------------------------------------------

struct SimulateArgs {
  std::string dist;
  std::string generator = "conv";
  std::size_t n_max = 0;
  std::vector<std::size_t> checkpoints;
  std::size_t seeds = 1;
  std::uint64_t seed_base = 0;
  std::size_t samples = 0;
  std::string out_dir;
  bool record_time = false;
  std::size_t threads = 0;
  double tol = kTolGeom;
};

int simulate(const SimulateArgs& a, std::ostream& out) {
  const GeneratorSpec spec = GeneratorSpec::parse(a.generator);
  const DistributionSpec dist = DistributionSpec::parse(a.dist);
  if (a.n_max == 0) throw Error(ErrorCode::InvalidArgument, "--nmax must be >= 1");
  if (a.seeds == 0) throw Error(ErrorCode::InvalidArgument, "--seeds must be >= 1");

  GrowthOptions opt;
  if (a.samples > 0) opt.method = RatioMethod::monte_carlo(a.samples, kDefaultMcSeed);
  opt.threads = a.threads;
  opt.record_time = a.record_time;
  opt.tol = a.tol;
  const std::vector<std::size_t> checkpoints = a.checkpoints.empty() ? std::vector<std::size_t>{a.n_max} : a.checkpoints;
  std::vector<std::uint64_t> seeds(a.seeds);
  for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = a.seed_base + i;

  const auto trajectories = run_growth(dist, spec, a.n_max, checkpoints, seeds, opt);
  const auto stats = summarize(trajectories);

  if (a.out_dir.empty()) {
    write_trajectory_csv(out, trajectories);
    out << '\n';
    write_stats_csv(out, stats);
    return kOk;
  }
  std::filesystem::create_directories(a.out_dir);
  const auto path = std::filesystem::path(a.out_dir);
  std::ofstream traj(path / "trajectories.csv");
  std::ofstream st(path / "stats.csv");
  if (!traj || !st) throw Error(ErrorCode::InvalidArgument, "cannot write to '" + a.out_dir + "'");
  write_trajectory_csv(traj, trajectories);
  write_stats_csv(st, stats);

  out << fmt::format("{} | {} | {} seeds | nmax {}\n", dist.to_string(), spec.to_string(), seeds.size(), a.n_max);
  out << fmt::format("{:>10} {:>8} {:>8} {:>8} {:>8} {:>9} {:>9}\n", "n", "mean", "median", "q10", "q90", "<0.7",
                     "<0.9");
  for (const auto& s : stats) {
    out << fmt::format("{:>10} {:>8.4f} {:>8.4f} {:>8.4f} {:>8.4f} {:>9.3f} {:>9.3f}\n", s.n, s.mean, s.median, s.q10,
                       s.q90, s.frac_below_07, s.frac_below_09);
  }
  out << "wrote " << (path / "trajectories.csv").string() << " and " << (path / "stats.csv").string() << '\n';
  return kOk;
}

// ---- props -------------------------------------------------------------------

int props(const std::string& scope, std::size_t trials, std::uint64_t seed, std::ostream& out) {
  const PropertyScope s = parse_scope(scope);
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "--trials must be >= 1");
  const SuiteReport report = run_properties(s, trials, seed);
  std::size_t failed = 0;
  for (const auto& p : report.properties) {
    out << fmt::format("{} {:<44} trials={} failures={}", p.passed() ? "PASS" : "FAIL", p.name, p.trials, p.failures);
    if (p.expected_negative) out << "  (expected negative: " << p.counterexample << ")";
    out << '\n';
    if (!p.passed()) {
      ++failed;
      out << "     first counterexample: " << p.counterexample << '\n';
    }
  }
  out << fmt::format("{} properties, {} failed\n", report.properties.size(), failed);
  return failed == 0 ? kOk : kPropertyFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Permissible and violation sets of closure-operator generators"};
  app.require_subcommand(1);

  AnalyzeArgs an;
  auto* analyze_cmd = app.add_subcommand("analyze", "Generable and permissible sets of a corpus file (JSON output)");
  analyze_cmd->add_option("corpus", an.corpus_path, "CSV file, one creation per row")->required();
  analyze_cmd->add_option("--generator,-g", an.generator, "conv, splice, box, or a composition such as conv|splice");
  analyze_cmd->add_option("--query", an.query, "Point to classify, e.g. 0.5,0.5");
  analyze_cmd->add_option("--add", an.add, "Creation to add; reports the effect on the permissible set");
  analyze_cmd->add_option("--grid", an.grid, "Classify an N^d lattice over the bounding box");
  analyze_cmd->add_option("--collection", an.collection, "Protected sets as JSON index arrays, e.g. [[0,1],[3]]");
  analyze_cmd->add_option("--tol", an.tol, "Geometric tolerance")->check(CLI::PositiveNumber);

  SimulateArgs sim;
  std::string positional_dist, positional_gen;
  auto* simulate_cmd = app.add_subcommand("simulate", "Seeded growth runs of the permissible ratio (CSV output)");
  simulate_cmd->add_option("dist_spec", positional_dist, "Distribution, e.g. gauss:d=2");
  simulate_cmd->add_option("generator_spec", positional_gen, "Generator, e.g. conv");
  simulate_cmd->add_option("--dist", sim.dist, "Distribution, e.g. gauss:d=2 or pareto:d=1,alpha=1");
  simulate_cmd->add_option("--generator,-g", sim.generator, "Convex-valued generator");
  simulate_cmd->add_option("--nmax", sim.n_max, "Final corpus size")->required();
  simulate_cmd->add_option("--checkpoints", sim.checkpoints, "Corpus sizes to record (default: nmax)")->delimiter(',');
  simulate_cmd->add_option("--seeds", sim.seeds, "Number of seeds");
  simulate_cmd->add_option("--seed-base", sim.seed_base, "First seed");
  simulate_cmd->add_option("--samples", sim.samples, "Use Monte Carlo ratios with this many samples");
  simulate_cmd->add_option("--out", sim.out_dir, "Directory for trajectories.csv and stats.csv");
  simulate_cmd->add_option("--threads", sim.threads, "Worker threads (also capped by PERMGEN_THREADS)");
  simulate_cmd->add_option("--tol", sim.tol, "Geometric tolerance")->check(CLI::PositiveNumber);
  simulate_cmd->add_flag("--record-time", sim.record_time, "Record wall time per checkpoint (output no longer reproducible)");

  std::string scope = "all";
  std::size_t trials = 100;
  std::uint64_t props_seed = 0;
  auto* props_cmd = app.add_subcommand("props", "Randomized property suites; exit 1 on any failure");
  props_cmd->add_option("scope", scope, "axioms, permissibility, groupwise, appendixA or all");
  props_cmd->add_option("--trials", trials, "Random instances per property");
  props_cmd->add_option("--seed", props_seed, "Suite seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*analyze_cmd) return analyze(an, out);
    if (*simulate_cmd) {
      if (!positional_dist.empty()) {
        if (!sim.dist.empty()) throw Error(ErrorCode::InvalidArgument, "distribution given twice");
        sim.dist = positional_dist;
      }
      if (!positional_gen.empty()) sim.generator = positional_gen;
      if (sim.dist.empty()) throw Error(ErrorCode::InvalidArgument, "a distribution is required (--dist)");
      return simulate(sim, out);
    }
    return props(scope, trials, props_seed, out);
  } catch (const Error& e) {
    return fail(err, e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace permgen::cli

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include <fmt/format.h>

#include "permgen/generators.hpp"
#include "permgen/permissibility.hpp"
#include "permgen/properties.hpp"
#include "permgen/rng.hpp"

namespace permgen {
namespace {

using Failure = std::optional<std::string>;
using Law = std::function<Failure(Rng&)>;

std::string show(std::span<const Creation> pts) {
  std::string s = "{";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) s += ", ";
    s += "(";
    for (std::size_t k = 0; k < pts[i].dim(); ++k) s += (k ? "," : "") + fmt::format("{}", pts[i][k]);
    s += ")";
  }
  return s + "}";
}

std::string show(const Corpus& c) { return show(c.items()); }
std::string show(const Creation& c) { return show(std::span<const Creation>(&c, 1)); }

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) h = (h ^ ch) * 0x100000001b3ULL;
  return h;
}

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.uniform() * static_cast<double>(hi - lo + 1));
}

/// Random instances mix small integer lattices, where ties and degeneracies
/// are common, with continuous Gaussian coordinates.
class Instances {
 public:
  explicit Instances(Rng& rng) : rng_(rng) {}

  bool coin() { return rng_.uniform() < 0.5; }

  Creation point(std::size_t d, bool lattice) {
    std::vector<double> x(d);
    for (double& v : x) v = lattice ? static_cast<double>(pick(rng_, 0, 6)) - 3.0 : 3.0 * rng_.normal();
    return Creation(std::move(x));
  }

  void grow(Corpus& c, std::size_t n, bool lattice) {
    for (int attempt = 0; c.size() < n && attempt < 400; ++attempt) {
      Creation p = point(c.dim(), lattice);
      if (!c.contains(p)) c.add(std::move(p));
    }
  }

  Corpus corpus(std::size_t d, std::size_t n, bool lattice) {
    Corpus c(d);
    grow(c, n, lattice);
    return c;
  }

  /// Points spread over the bounding box of `c` (widened by one unit), plus
  /// lattice points and the corpus itself.
  std::vector<Creation> probes(const Corpus& c, std::size_t count) {
    const BoundingBox b = bounding_box(c.items(), c.dim());
    std::vector<Creation> out(c.begin(), c.end());
    for (std::size_t i = 0; i < count; ++i) {
      if (i % 4 == 0) {
        out.push_back(point(c.dim(), true));
        continue;
      }
      std::vector<double> x(c.dim());
      for (std::size_t k = 0; k < x.size(); ++k) x[k] = rng_.uniform(b.lo[k] - 1.0, b.hi[k] + 1.0);
      out.emplace_back(std::move(x));
    }
    return out;
  }

  /// Random nonempty subset of the corpus.
  Corpus subset(const Corpus& c, std::size_t max_size) {
    Corpus s(c.dim());
    const std::size_t want = pick(rng_, 1, std::min(max_size, c.size()));
    while (s.size() < want) {
      const Creation& x = c[pick(rng_, 0, c.size() - 1)];
      if (!s.contains(x)) s.add(x);
    }
    return s;
  }

  Collection collection(const Corpus& c, std::size_t max_sets) {
    Collection out;
    const std::size_t k = pick(rng_, 1, max_sets);
    for (std::size_t i = 0; i < k; ++i) out.protected_sets.push_back(subset(c, 3));
    return out;
  }

  Rng& rng() { return rng_; }

 private:
  Rng& rng_;
};

PropertyResult run_law(const std::string& name, std::size_t trials, std::uint64_t seed, const Law& law) {
  PropertyResult r;
  r.name = name;
  r.trials = trials;
  Rng rng(seed, fnv1a(name));
  for (std::size_t t = 0; t < trials; ++t) {
    Failure f;
    try {
      f = law(rng);
    } catch (const std::exception& e) {
      f = std::string("exception: ") + e.what();
    }
    if (f) {
      if (r.failures == 0) r.counterexample = *f;
      ++r.failures;
    }
  }
  return r;
}

const std::vector<std::pair<std::string, GeneratorSpec>>& basic_generators() {
  static const std::vector<std::pair<std::string, GeneratorSpec>> gens{
      {"conv", GeneratorSpec::conv()}, {"splice", GeneratorSpec::splice()}, {"box", GeneratorSpec::box()}};
  return gens;
}

// ---- closure axioms --------------------------------------------------------

void axioms(std::vector<PropertyResult>& out, std::size_t trials, std::uint64_t seed) {
  for (const auto& [name, spec] : basic_generators()) {
    out.push_back(run_law("closure axioms/" + name, trials, seed, [spec = spec](Rng& rng) -> Failure {
      Instances inst(rng);
      const bool lattice = inst.coin();
      const std::size_t d = pick(rng, 1, 4);
      Corpus c = inst.corpus(d, pick(rng, 1, 12), lattice);
      Corpus sup = c;
      inst.grow(sup, std::min<std::size_t>(12, c.size() + pick(rng, 0, 4)), lattice);
      const auto probes = inst.probes(sup, 24);
      const ClosureReport r = check_closure_axioms(spec, c, sup, probes);
      if (r.all()) return std::nullopt;
      return fmt::format("C={} D={} preservation={} monotonicity={} idempotence={}", show(c), show(sup),
                         r.preservation, r.monotonicity, r.idempotence);
    }));
  }

  out.push_back(run_law("box equals conv of splice", trials, seed, [](Rng& rng) -> Failure {
    Instances inst(rng);
    const Corpus c = inst.corpus(pick(rng, 1, 3), pick(rng, 1, 8), inst.coin());
    const GenerableSet box = generate(GeneratorSpec::box(), c);
    const GenerableSet composed = generate(GeneratorSpec::parse("conv|splice"), c);
    if (set_equal(box, composed)) return std::nullopt;
    return "C=" + show(c);
  }));

  for (const auto& [name, spec] : basic_generators()) {
    out.push_back(run_law("homogeneity/" + name, trials, seed, [spec = spec](Rng& rng) -> Failure {
      static constexpr double kAlphas[] = {0.5, 1.0, 2.0, 10.0};
      Instances inst(rng);
      const Corpus c = inst.corpus(pick(rng, 1, 4), pick(rng, 1, 10), inst.coin());
      for (double a : kAlphas) {
        if (!check_homogeneity(spec, c, a)) return fmt::format("alpha={} C={}", a, show(c));
      }
      return std::nullopt;
    }));
  }

  out.push_back(run_law("splice grid cardinality", trials, seed, [](Rng& rng) -> Failure {
    Instances inst(rng);
    const Corpus c = inst.corpus(pick(rng, 1, 4), pick(rng, 1, 10), inst.coin());
    const FiniteGrid g = generate(GeneratorSpec::splice(), c).grid();
    std::size_t product = 1;
    for (const auto& v : g.values()) product *= v.size();
    if (g.cardinality() == product && g.points().size() == product) return std::nullopt;
    return "C=" + show(c);
  }));
}

// ---- permissibility --------------------------------------------------------

/// Sampled points of `inner` that `outer` misses; exact inclusion checked first.
Failure check_inclusion(const GenerableSet& outer, const GenerableSet& inner, std::span<const Creation> probes,
                        const std::string& context) {
  if (!set_includes(outer, inner)) return context + " (exact inclusion)";
  for (const auto& x : probes) {
    if (inner.contains(x) && !outer.contains(x)) return context + " at x=" + show(x);
  }
  return std::nullopt;
}

void permissibility(std::vector<PropertyResult>& out, std::size_t trials, std::uint64_t seed) {
  for (const auto& [name, spec] : basic_generators()) {
    out.push_back(run_law("monotonicity of p/" + name, trials, seed, [spec = spec](Rng& rng) -> Failure {
      Instances inst(rng);
      const bool lattice = inst.coin();
      const Corpus c = inst.corpus(pick(rng, 1, 3), pick(rng, 1, 8), lattice);
      Corpus sup = c;
      inst.grow(sup, std::min<std::size_t>(10, c.size() + pick(rng, 1, 4)), lattice);
      const auto probes = inst.probes(sup, 64);
      return check_inclusion(permissible_set(spec, sup).permissible, permissible_set(spec, c).permissible, probes,
                             "C=" + show(c) + " D=" + show(sup));
    }));

    out.push_back(run_law("stability of p/" + name, trials, seed, [spec = spec](Rng& rng) -> Failure {
      Instances inst(rng);
      const Corpus c = inst.corpus(pick(rng, 1, 3), pick(rng, 1, 10), inst.coin());
      const GenerableSet p = permissible_set(spec, c).permissible;
      if (p.is_empty()) return std::nullopt;
      Corpus gen(c.dim());
      for (const auto& x : p.generating_points()) {
        if (!gen.contains(x)) gen.add(x);
      }
      if (set_equal(generate(spec, gen), p)) return std::nullopt;
      return "C=" + show(c);
    }));

    out.push_back(run_law("addition trichotomy/" + name, trials, seed, [spec = spec](Rng& rng) -> Failure {
      Instances inst(rng);
      const bool lattice = inst.coin();
      const Corpus c = inst.corpus(pick(rng, 1, 3), pick(rng, 1, 8), lattice);
      std::optional<Creation> add;
      for (int attempt = 0; attempt < 50 && !add; ++attempt) {
        // Alternate between nearby points and points from the same lattice.
        auto probes = inst.probes(c, 4);
        const Creation& x = probes[pick(rng, c.size(), probes.size() - 1)];
        if (!c.contains(x)) add = x;
      }
      if (!add) return std::nullopt;
      const AdditionReport r = add_creation_effect(spec, c, *add);
      const bool in_p = r.before.permissible.contains(*add);
      const bool in_g = r.before.generable.contains(*add);
      const bool label_ok = (r.case_label == Classification::Kind::Permissible) == in_p &&
                            (r.case_label == Classification::Kind::NotGenerable) == !in_g;
      if (r.law_holds && label_ok) return std::nullopt;
      return fmt::format("C={} c={} case={}", show(c), show(*add), to_string(r.case_label));
    }));

    const std::size_t corpora = std::max<std::size_t>(1, trials / 10);
    out.push_back(run_law("classify matches permissible set/" + name, corpora, seed, [spec = spec](Rng& rng) -> Failure {
      Instances inst(rng);
      const Corpus c = inst.corpus(pick(rng, 1, 3), pick(rng, 2, 8), inst.coin());
      const PermissibleResult res = permissible_set(spec, c);
      for (const auto& x : inst.probes(c, 1000)) {
        const Classification cls = classify(spec, c, x);
        const bool permissible = cls.kind == Classification::Kind::Permissible;
        if (permissible != res.permissible.contains(x)) return "C=" + show(c) + " x=" + show(x);
        for (const auto& inf : cls.infringed) {
          if (is_member(spec, c.without(Corpus(c.dim(), {inf})), x)) return "bad attribution C=" + show(c);
        }
      }
      return std::nullopt;
    }));
  }

  for (const auto& [name, spec] : basic_generators()) {
    if (!spec.convex_valued()) continue;
    out.push_back(run_law("radon witness permissible/" + name, trials, seed, [spec = spec](Rng& rng) -> Failure {
      Instances inst(rng);
      const std::size_t d = pick(rng, 1, 3);
      const Corpus c = inst.corpus(d, d + 2, false);
      const RadonWitness w = radon_nonemptiness_witness(spec, c);
      const bool ok = w.classification.kind == Classification::Kind::Permissible &&
                      permissible_set(spec, c).permissible.contains(w.partition.witness);
      if (ok) return std::nullopt;
      return "C=" + show(c) + " witness=" + show(w.partition.witness);
    }));
  }
}

// ---- groupwise ---------------------------------------------------------------

void groupwise(std::vector<PropertyResult>& out, std::size_t trials, std::uint64_t seed) {
  for (const auto& [name, spec] : basic_generators()) {
    out.push_back(run_law("groupwise monotonicity/" + name, trials, seed, [spec = spec](Rng& rng) -> Failure {
      Instances inst(rng);
      const bool lattice = inst.coin();
      const Corpus c = inst.corpus(pick(rng, 1, 3), pick(rng, 1, 8), lattice);
      Corpus sup = c;
      inst.grow(sup, std::min<std::size_t>(10, c.size() + pick(rng, 1, 4)), lattice);
      const Collection a = inst.collection(c, 3);
      return check_inclusion(groupwise_permissible(spec, sup, a), groupwise_permissible(spec, c, a),
                             inst.probes(sup, 64), "C=" + show(c) + " D=" + show(sup));
    }));

    out.push_back(run_law("groupwise stability/" + name, trials, seed, [spec = spec](Rng& rng) -> Failure {
      Instances inst(rng);
      const Corpus c = inst.corpus(pick(rng, 1, 3), pick(rng, 1, 10), inst.coin());
      const GenerableSet p = groupwise_permissible(spec, c, inst.collection(c, 3));
      if (p.is_empty()) return std::nullopt;
      Corpus gen(c.dim());
      for (const auto& x : p.generating_points()) {
        if (!gen.contains(x)) gen.add(x);
      }
      if (set_equal(generate(spec, gen), p)) return std::nullopt;
      return "C=" + show(c);
    }));

    out.push_back(run_law("singleton collection reduces/" + name, trials, seed, [spec = spec](Rng& rng) -> Failure {
      Instances inst(rng);
      const Corpus c = inst.corpus(pick(rng, 1, 3), pick(rng, 1, 8), inst.coin());
      if (set_equal(groupwise_permissible(spec, c, Collection::singletons(c)), permissible_set(spec, c).permissible)) {
        return std::nullopt;
      }
      return "C=" + show(c);
    }));

    out.push_back(run_law("richer collection shrinks p/" + name, trials, seed, [spec = spec](Rng& rng) -> Failure {
      Instances inst(rng);
      const Corpus c = inst.corpus(pick(rng, 1, 3), pick(rng, 2, 10), inst.coin());
      const Collection b = inst.collection(c, 4);
      // Merge the sets of b into random groups and pad each union.
      Collection a;
      for (const auto& set : b.protected_sets) {
        if (a.protected_sets.empty() || inst.coin()) {
          a.protected_sets.push_back(set);
        } else {
          Corpus& target = a.protected_sets[pick(rng, 0, a.protected_sets.size() - 1)];
          for (const auto& x : set) {
            if (!target.contains(x)) target.add(x);
          }
        }
        if (inst.coin()) {
          const Creation& extra = c[pick(rng, 0, c.size() - 1)];
          if (!a.protected_sets.back().contains(extra)) a.protected_sets.back().add(extra);
        }
      }
      if (!richness_compare(a, b)) return "richness not detected for C=" + show(c);
      return check_inclusion(groupwise_permissible(spec, c, b), groupwise_permissible(spec, c, a),
                             inst.probes(c, 64), "C=" + show(c));
    }));

    out.push_back(run_law("superadditivity/" + name, trials, seed, [spec = spec](Rng& rng) -> Failure {
      Instances inst(rng);
      const Corpus c = inst.corpus(pick(rng, 1, 3), pick(rng, 2, 8), inst.coin());
      if (c.size() < 2) return std::nullopt;
      const Corpus a = inst.subset(c, c.size() - 1);
      const Corpus rest = c.without(a);
      const Corpus b = inst.subset(rest, 2);
      const SuperadditivityReport r = superadditivity_check(spec, c, a, b, kTolGeom, 2000, rng());
      if (r.inclusion_holds) return std::nullopt;
      return "C=" + show(c) + " A=" + show(a) + " B=" + show(b);
    }));
  }
}

// ---- convex-valued generators --------------------------------------------------

void convex_valued_suite(std::vector<PropertyResult>& out, std::size_t trials, std::uint64_t seed) {
  out.push_back(run_law("conv within box", trials, seed, [](Rng& rng) -> Failure {
    Instances inst(rng);
    const Corpus c = inst.corpus(pick(rng, 1, 4), pick(rng, 1, 12), inst.coin());
    if (set_includes(generate(GeneratorSpec::box(), c), generate(GeneratorSpec::conv(), c))) return std::nullopt;
    return "C=" + show(c);
  }));

  for (const char* name : {"box", "conv"}) {
    const GeneratorSpec spec = GeneratorSpec::parse(name);
    out.push_back(run_law(std::string("convex-valued equivalences/") + name, trials, seed, [spec](Rng& rng) -> Failure {
      Instances inst(rng);
      const Corpus c = inst.corpus(pick(rng, 1, 3), pick(rng, 1, 10), inst.coin());
      const ConvexValuedReport r = check_convex_valued(spec, c);
      if (r.convex_valued() && r.contains_hull) return std::nullopt;
      return fmt::format("C={} image={} conv_after={} conv_before={} hull={}", show(c), r.image_convex, r.conv_after,
                         r.conv_before, r.contains_hull);
    }));
  }

  out.push_back(run_law("equivalences agree/splice", trials, seed, [](Rng& rng) -> Failure {
    Instances inst(rng);
    const Corpus c = inst.corpus(pick(rng, 1, 3), pick(rng, 1, 8), inst.coin());
    const ConvexValuedReport r = check_convex_valued(GeneratorSpec::splice(), c);
    if (r.equivalences_agree()) return std::nullopt;
    return fmt::format("C={} image={} conv_after={} conv_before={}", show(c), r.image_convex, r.conv_after,
                       r.conv_before);
  }));

  // Documented non-example: splice is not convex-valued.
  PropertyResult neg;
  neg.name = "splice is not convex-valued";
  neg.trials = 1;
  neg.expected_negative = true;
  const Corpus c = Corpus::of({{0, 0}, {1, 1}});
  const ConvexValuedReport r = check_convex_valued(GeneratorSpec::splice(), c);
  const bool expected = !r.convex_valued() && r.witness && *r.witness == Creation{0.5, 0.5};
  neg.counterexample = r.witness ? "witness " + show(*r.witness) + " in conv(grid) but not in grid" : "no witness";
  neg.failures = expected ? 0 : 1;
  out.push_back(neg);
}

}  // namespace

bool SuiteReport::passed() const noexcept {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.passed(); });
}

PropertyScope parse_scope(std::string_view name) {
  if (name == "axioms") return PropertyScope::Axioms;
  if (name == "permissibility") return PropertyScope::Permissibility;
  if (name == "groupwise") return PropertyScope::Groupwise;
  if (name == "appendixA") return PropertyScope::ConvexValued;
  if (name == "all") return PropertyScope::All;
  throw Error(ErrorCode::InvalidArgument, "unknown property scope '" + std::string(name) + "'");
}

SuiteReport run_properties(PropertyScope scope, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  SuiteReport report;
  const bool all = scope == PropertyScope::All;
  if (all || scope == PropertyScope::Axioms) axioms(report.properties, trials, seed);
  if (all || scope == PropertyScope::Permissibility) permissibility(report.properties, trials, seed);
  if (all || scope == PropertyScope::Groupwise) groupwise(report.properties, trials, seed);
  if (all || scope == PropertyScope::ConvexValued) convex_valued_suite(report.properties, trials, seed);
  return report;
}

}  // namespace permgen

#include "permgen/permissibility.hpp"

#include <algorithm>
#include <unordered_set>

#include "permgen/rng.hpp"

namespace permgen {
namespace {

/// Per-coordinate values supplied by at least two items, using the same
/// merge rule as FiniteGrid::of_points. Removing an item only loses values it
/// alone supplies, so these are exactly the values kept by every leave-one-out
/// grid.
FiniteGrid shared_values(const Corpus& corpus, double tol) {
  const std::size_t d = corpus.dim();
  std::vector<std::vector<double>> values(d);
  std::vector<double> column;
  for (std::size_t k = 0; k < d; ++k) {
    column.clear();
    for (const auto& c : corpus) column.push_back(c[k]);
    std::sort(column.begin(), column.end());
    std::size_t i = 0;
    while (i < column.size()) {
      std::size_t j = i + 1;
      while (j < column.size() && column[j] - column[i] <= tol) ++j;
      if (j - i >= 2) values[k].push_back(column[i]);
      i = j;
    }
  }
  return FiniteGrid(d, std::move(values));
}

/// Some point of `big` outside `small`, if one can be found. Complete when
/// `small` is convex or a grid and `big` is a single polytope or a grid.
std::optional<Creation> point_outside(const GenerableSet& big, const GenerableSet& small, double tol) {
  if (big.is_empty(tol)) return std::nullopt;
  if (small.is_empty(tol)) {
    if (!big.is_grid()) return big.region().witness(tol);
    std::vector<double> x;
    for (const auto& v : big.grid().values()) x.push_back(v.front());
    return Creation(std::move(x));
  }
  if (big.is_grid()) {
    const auto& values = big.grid().values();
    std::vector<double> x(big.dim());
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = values[k].front();
    if (!small.contains(x, tol)) return Creation(x);
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double keep = x[k];
      for (double v : values[k]) {
        x[k] = v;
        if (!small.contains(x, tol)) return Creation(x);
      }
      x[k] = keep;
    }
    if (small.is_grid()) return std::nullopt;
    for (const auto& p : big.grid().points()) {
      if (!small.contains(p, tol)) return p;
    }
    return std::nullopt;
  }
  if (const Polytope* p = big.region().polytope()) {
    for (const auto& v : p->vertices()) {
      if (!small.contains(v, tol)) return v;
    }
    return std::nullopt;
  }
  const BoundingBox box = big.region().bounds();
  Rng rng(0x6f7574ULL);
  std::vector<double> x(big.dim());
  for (int s = 0; s < 4000; ++s) {
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = rng.uniform(box.lo[k], box.hi[k]);
    if (big.contains(x, tol) && !small.contains(x, tol)) return Creation(x);
  }
  return std::nullopt;
}

void require_subset(const Corpus& part, const Corpus& corpus) {
  if (part.dim() != corpus.dim()) throw Error(ErrorCode::DimensionMismatch, "protected set of wrong dimension");
  if (!part.is_subset_of(corpus)) throw Error(ErrorCode::ProtectedSetNotInCorpus, "protected set is not in the corpus");
}

}  // namespace

std::vector<std::size_t> critical_items(const GeneratorSpec& spec, const Corpus& corpus, double tol) {
  std::vector<std::size_t> out;
  const std::size_t d = corpus.dim();
  if (spec.kind() == GeneratorSpec::Kind::Conv && !corpus.empty()) {
    const Polytope hull = convex_hull(corpus, tol);
    const std::unordered_set<Creation, CreationHash> verts(hull.vertices().begin(), hull.vertices().end());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (verts.contains(corpus[i])) out.push_back(i);
    }
    return out;
  }
  if (spec.kind() == GeneratorSpec::Kind::Box && !corpus.empty()) {
    const BoundingBox b = bounding_box(corpus.items(), d);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      for (std::size_t k = 0; k < d; ++k) {
        if (corpus[i][k] == b.lo[k] || corpus[i][k] == b.hi[k]) {
          out.push_back(i);
          break;
        }
      }
    }
    return out;
  }
  out.resize(corpus.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

PermissibleResult permissible_set(const GeneratorSpec& spec, const Corpus& corpus, double tol) {
  if (corpus.empty()) throw Error(ErrorCode::EmptyCorpus, "permissible set of an empty corpus");
  GenerableSet generable = generate(spec, corpus, tol);
  const std::vector<std::size_t> critical = critical_items(spec, corpus, tol);

  std::vector<GenerableSet> per_creation;
  per_creation.reserve(corpus.size());
  std::vector<GenerableSet> changed;
  std::size_t next = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (next < critical.size() && critical[next] == i) {
      ++next;
      per_creation.push_back(generate_or_empty(spec, corpus.without(i), tol));
      changed.push_back(per_creation.back());
    } else {
      per_creation.push_back(generable);
    }
  }

  if (corpus.size() == 1) {
    GenerableSet empty = empty_image(spec, corpus.dim());
    return {std::move(generable), std::move(empty), std::move(per_creation)};
  }
  if (spec.kind() == GeneratorSpec::Kind::Splice) {
    return {std::move(generable), shared_values(corpus, tol), std::move(per_creation)};
  }
  GenerableSet permissible = changed.empty() ? generable : intersect(changed, tol);
  return {std::move(generable), std::move(permissible), std::move(per_creation)};
}

const char* to_string(Classification::Kind kind) {
  switch (kind) {
    case Classification::Kind::Permissible: return "Permissible";
    case Classification::Kind::Violation: return "Violation";
    case Classification::Kind::NotGenerable: return "NotGenerable";
  }
  return "Unknown";
}

Classification classify(const GeneratorSpec& spec, const Corpus& corpus, const Creation& x, double tol) {
  if (x.dim() != corpus.dim()) throw Error(ErrorCode::DimensionMismatch, "query of wrong dimension");
  Classification out;
  if (!is_member(spec, corpus, x, tol)) return out;
  for (std::size_t i : critical_items(spec, corpus, tol)) {
    if (!is_member(spec, corpus.without(i), x, tol)) out.infringed.push_back(corpus[i]);
  }
  out.kind = out.infringed.empty() ? Classification::Kind::Permissible : Classification::Kind::Violation;
  return out;
}

AdditionReport add_creation_effect(const GeneratorSpec& spec, const Corpus& corpus, const Creation& c, double tol) {
  if (corpus.contains(c)) throw Error(ErrorCode::DuplicateCreation, "added creation is already in the corpus");
  const Classification label = classify(spec, corpus, c, tol);
  AdditionReport r{label.kind, permissible_set(spec, corpus, tol), permissible_set(spec, corpus.with(c), tol),
                   false, false, false, std::nullopt, false};

  const GenerableSet& before = r.before.permissible;
  const GenerableSet& after = r.after.permissible;
  r.includes_before = set_includes(after, before, tol);
  r.unchanged = r.includes_before && set_includes(before, after, tol);

  switch (r.case_label) {
    case Classification::Kind::Permissible:
      r.law_holds = r.unchanged;
      break;
    case Classification::Kind::Violation:
      r.witness = c;
      r.strictly_expanded = after.contains(c, tol) && !before.contains(c, tol);
      r.law_holds = r.includes_before && r.strictly_expanded;
      break;
    case Classification::Kind::NotGenerable:
      if (!r.unchanged) r.witness = point_outside(after, before, tol);
      r.strictly_expanded = r.includes_before && r.witness.has_value();
      r.law_holds = r.includes_before;
      break;
  }
  return r;
}

RadonWitness radon_nonemptiness_witness(const GeneratorSpec& spec, const Corpus& corpus, double tol) {
  if (!spec.convex_valued()) throw Error(ErrorCode::NotConvexValued, spec.to_string() + " is not convex-valued");
  RadonPartition part = radon_partition(corpus, tol);
  Classification cls = classify(spec, corpus, part.witness, tol);
  return {std::move(part), std::move(cls)};
}

Collection Collection::from_indices(const Corpus& corpus, const std::vector<std::vector<std::size_t>>& sets) {
  Collection out;
  for (const auto& set : sets) {
    if (set.empty()) throw Error(ErrorCode::InvalidArgument, "protected sets must be nonempty");
    Corpus part(corpus.dim());
    for (std::size_t i : set) {
      if (i >= corpus.size()) {
        throw Error(ErrorCode::ProtectedSetNotInCorpus, "index " + std::to_string(i) + " is outside the corpus");
      }
      if (!part.contains(corpus[i])) part.add(corpus[i]);
    }
    out.protected_sets.push_back(std::move(part));
  }
  return out;
}

Collection Collection::singletons(const Corpus& corpus) {
  Collection out;
  for (const auto& c : corpus) out.protected_sets.push_back(Corpus(corpus.dim(), {c}));
  return out;
}

GenerableSet groupwise_permissible(const GeneratorSpec& spec, const Corpus& corpus, const Collection& collection,
                                   double tol) {
  for (const auto& a : collection.protected_sets) {
    if (a.empty()) throw Error(ErrorCode::InvalidArgument, "protected sets must be nonempty");
    require_subset(a, corpus);
  }
  if (collection.protected_sets.empty()) return generate(spec, corpus, tol);
  std::vector<GenerableSet> parts;
  parts.reserve(collection.protected_sets.size());
  for (const auto& a : collection.protected_sets) parts.push_back(generate_or_empty(spec, corpus.without(a), tol));
  return intersect(parts, tol);
}

bool richness_compare(const Collection& a, const Collection& b) {
  return std::all_of(b.protected_sets.begin(), b.protected_sets.end(), [&](const Corpus& bs) {
    return std::any_of(a.protected_sets.begin(), a.protected_sets.end(),
                       [&](const Corpus& as) { return bs.is_subset_of(as); });
  });
}

SuperadditivityReport superadditivity_check(const GeneratorSpec& spec, const Corpus& corpus, const Corpus& a,
                                            const Corpus& b, double tol, std::size_t samples, std::uint64_t seed) {
  require_subset(a, corpus);
  require_subset(b, corpus);
  if (a.empty() || b.empty()) throw Error(ErrorCode::InvalidArgument, "protected sets must be nonempty");
  for (const auto& x : a) {
    if (b.contains(x)) throw Error(ErrorCode::InvalidArgument, "protected sets must be disjoint");
  }

  const GenerableSet full = generate(spec, corpus, tol);
  const std::vector<GenerableSet> sides{generate_or_empty(spec, corpus.without(a), tol),
                                        generate_or_empty(spec, corpus.without(b), tol)};
  const GenerableSet pair = intersect(sides, tol);
  const GenerableSet joint = generate_or_empty(spec, corpus.without(a).without(b), tol);

  // v^{A,B} = g(C) \ pair and v^{A u B} = g(C) \ joint, so the inclusion is
  // joint within pair.
  SuperadditivityReport r;
  r.inclusion_holds = set_includes(pair, joint, tol);

  Rng rng(seed, 0x73757061ULL);
  std::vector<double> x(corpus.dim());
  const bool grid = full.is_grid();
  const BoundingBox box = grid ? BoundingBox{} : full.region().bounds();
  for (std::size_t s = 0; s < samples && r.inclusion_holds; ++s) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (grid) {
        const auto& v = full.grid().values()[k];
        x[k] = v[static_cast<std::size_t>(rng.uniform() * static_cast<double>(v.size()))];
      } else {
        x[k] = rng.uniform(box.lo[k], box.hi[k]);
      }
    }
    if (!full.contains(x, tol)) continue;
    const bool in_pair_violation = !pair.contains(x, tol);
    const bool in_joint_violation = !joint.contains(x, tol);
    if (in_pair_violation && !in_joint_violation) r.inclusion_holds = false;
  }

  r.strict_witness = point_outside(pair, joint, tol);
  return r;
}

}  // namespace permgen

#include "permgen/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "permgen/rng.hpp"
#include "simplex.hpp"

namespace permgen {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<double> merge_values(std::vector<double> v, double tol) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v) {
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  }
  return out;
}

bool value_in(const std::vector<double>& sorted, double x, double tol) {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), x - tol);
  return it != sorted.end() && *it <= x + tol;
}

/// Bounds of a polytope whose H-representation consists of axis-aligned
/// halfspaces only; nullopt otherwise.
std::optional<BoundingBox> as_axis_box(const Polytope& p) {
  if (p.is_empty() || !p.has_hrep()) return std::nullopt;
  for (const auto& h : p.halfspaces()) {
    std::size_t nonzero = 0;
    for (double c : h.normal) {
      if (c == 0.0) continue;
      if (std::abs(c) != 1.0) return std::nullopt;
      ++nonzero;
    }
    if (nonzero != 1) return std::nullopt;
  }
  return bounding_box(p);
}

/// Innermost stage decides whether the image depends on extreme points only.
bool determined_by_extremes(const GeneratorSpec& spec) {
  switch (spec.kind()) {
    case GeneratorSpec::Kind::Conv:
    case GeneratorSpec::Kind::Box: return true;
    case GeneratorSpec::Kind::Splice: return false;
    case GeneratorSpec::Kind::Composed: return determined_by_extremes(spec.stages().back());
  }
  return false;
}

Corpus corpus_from_points(std::span<const Creation> pts, std::size_t dim) {
  Corpus c(dim);
  for (const auto& p : pts) {
    if (!c.contains(p)) c.add(p);
  }
  return c;
}

GenerableSet apply_points(const GeneratorSpec& spec, std::span<const Creation> pts, std::size_t dim, double tol,
                          std::size_t grid_limit) {
  switch (spec.kind()) {
    case GeneratorSpec::Kind::Conv: return ConvexRegion(convex_hull_of(pts, dim, tol));
    case GeneratorSpec::Kind::Box: {
      const BoundingBox b = bounding_box(pts, dim);
      return ConvexRegion(axis_box(b.lo, b.hi, tol));
    }
    case GeneratorSpec::Kind::Splice: return FiniteGrid::of_points(pts, dim, tol);
    case GeneratorSpec::Kind::Composed: break;
  }
  const auto& stages = spec.stages();
  std::vector<Creation> current(pts.begin(), pts.end());
  for (std::size_t i = stages.size(); i-- > 0;) {
    GenerableSet out = apply_points(stages[i], current, dim, tol, grid_limit);
    if (i == 0) return out;
    if (out.is_region() && !determined_by_extremes(stages[i - 1])) {
      const Polytope* poly = out.region().polytope();
      if (poly == nullptr || poly->vertices().size() > 1) {
        throw Error(ErrorCode::UnsupportedComposition,
                    stages[i - 1].to_string() + " applied to a continuum produced by " + stages[i].to_string());
      }
    }
    current = out.generating_points(grid_limit);
  }
  throw Error(ErrorCode::InvalidArgument, "composition without stages");
}

}  // namespace

// ---- GeneratorSpec ---------------------------------------------------------

GeneratorSpec GeneratorSpec::composed(std::vector<GeneratorSpec> stages) {
  if (stages.empty()) throw Error(ErrorCode::InvalidArgument, "composition needs at least one stage");
  if (stages.size() == 1) return stages.front();
  GeneratorSpec g(Kind::Composed);
  for (auto& s : stages) {
    if (s.kind_ == Kind::Composed) {
      g.stages_.insert(g.stages_.end(), s.stages_.begin(), s.stages_.end());
    } else {
      g.stages_.push_back(std::move(s));
    }
  }
  return g;
}

GeneratorSpec GeneratorSpec::parse(std::string_view text) {
  std::vector<GeneratorSpec> stages;
  std::size_t start = 0;
  for (;;) {
    const std::size_t bar = text.find('|', start);
    const std::string name = trim(text.substr(start, bar == std::string_view::npos ? text.npos : bar - start));
    if (name == "conv") {
      stages.push_back(conv());
    } else if (name == "splice") {
      stages.push_back(splice());
    } else if (name == "box") {
      stages.push_back(box());
    } else {
      throw Error(ErrorCode::ConfigError, "unknown generator '" + name + "'");
    }
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return composed(std::move(stages));
}

std::string GeneratorSpec::to_string() const {
  switch (kind_) {
    case Kind::Conv: return "conv";
    case Kind::Splice: return "splice";
    case Kind::Box: return "box";
    case Kind::Composed: break;
  }
  std::string s;
  for (const auto& st : stages_) {
    if (!s.empty()) s += '|';
    s += st.to_string();
  }
  return s;
}

bool GeneratorSpec::convex_valued() const {
  switch (kind_) {
    case Kind::Conv:
    case Kind::Box: return true;
    case Kind::Splice: return false;
    case Kind::Composed: return stages_.front().convex_valued();
  }
  return false;
}

// ---- FiniteGrid ------------------------------------------------------------

FiniteGrid::FiniteGrid(std::size_t dim, std::vector<std::vector<double>> values) : values_(std::move(values)) {
  if (values_.size() != dim) throw Error(ErrorCode::DimensionMismatch, "grid value sets disagree with dimension");
  for (auto& v : values_) std::sort(v.begin(), v.end());
}

FiniteGrid FiniteGrid::empty(std::size_t dim) { return FiniteGrid(dim, std::vector<std::vector<double>>(dim)); }

FiniteGrid FiniteGrid::of_points(std::span<const Creation> points, std::size_t dim, double tol) {
  std::vector<std::vector<double>> values(dim);
  for (const auto& p : points) {
    for (std::size_t k = 0; k < dim; ++k) values[k].push_back(p[k]);
  }
  for (auto& v : values) v = merge_values(std::move(v), tol);
  return FiniteGrid(dim, std::move(values));
}

bool FiniteGrid::is_empty() const noexcept {
  return std::any_of(values_.begin(), values_.end(), [](const auto& v) { return v.empty(); });
}

std::size_t FiniteGrid::cardinality() const noexcept {
  std::size_t n = 1;
  for (const auto& v : values_) {
    if (v.empty()) return 0;
    if (n > std::numeric_limits<std::size_t>::max() / v.size()) return std::numeric_limits<std::size_t>::max();
    n *= v.size();
  }
  return n;
}

bool FiniteGrid::contains(std::span<const double> x, double tol) const {
  if (x.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "grid query of wrong dimension");
  for (std::size_t k = 0; k < dim(); ++k) {
    if (!value_in(values_[k], x[k], tol)) return false;
  }
  return true;
}

std::vector<Creation> FiniteGrid::points(std::size_t limit) const {
  const std::size_t n = cardinality();
  if (n > limit) {
    throw Error(ErrorCode::GridExplosion,
                "grid of " + std::to_string(n) + " points exceeds limit " + std::to_string(limit));
  }
  std::vector<Creation> out;
  if (n == 0) return out;
  out.reserve(n);
  std::vector<std::size_t> idx(dim(), 0);
  std::vector<double> x(dim());
  for (;;) {
    for (std::size_t k = 0; k < dim(); ++k) x[k] = values_[k][idx[k]];
    out.emplace_back(x);
    std::size_t k = dim();
    while (k-- > 0) {
      if (++idx[k] < values_[k].size()) break;
      idx[k] = 0;
    }
    if (k == std::numeric_limits<std::size_t>::max()) break;
  }
  return out;
}

// ---- ConvexRegion ----------------------------------------------------------

ConvexRegion::ConvexRegion(Polytope polytope) : dim_(polytope.dim()) { pieces_.push_back(std::move(polytope)); }

ConvexRegion::ConvexRegion(std::size_t dim, std::vector<Polytope> pieces) : dim_(dim), pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw Error(ErrorCode::InvalidArgument, "region needs at least one polytope");
  for (const auto& p : pieces_) {
    if (p.dim() != dim_) throw Error(ErrorCode::DimensionMismatch, "region pieces disagree in dimension");
  }
}

bool ConvexRegion::contains(std::span<const double> x, double tol) const {
  return std::all_of(pieces_.begin(), pieces_.end(), [&](const Polytope& p) { return permgen::contains(p, x, tol); });
}

std::optional<Creation> ConvexRegion::witness(double tol) const {
  for (const auto& p : pieces_) {
    if (p.is_empty()) return std::nullopt;
  }
  if (pieces_.size() == 1) return pieces_.front().vertices().front();

  // Joint feasibility: one convex-combination vector per piece, all mapping
  // to the same point.
  const std::size_t m = pieces_.size();
  const auto d = static_cast<Eigen::Index>(dim_);
  std::vector<Eigen::Index> offset(m + 1, 0);
  for (std::size_t j = 0; j < m; ++j) {
    offset[j + 1] = offset[j] + static_cast<Eigen::Index>(pieces_[j].vertices().size());
  }
  const auto rows = static_cast<Eigen::Index>(m) + d * static_cast<Eigen::Index>(m - 1);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, offset[m]);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
  for (std::size_t j = 0; j < m; ++j) {
    const auto row = static_cast<Eigen::Index>(j);
    for (Eigen::Index c = offset[j]; c < offset[j + 1]; ++c) a(row, c) = 1.0;
    b(row) = 1.0;
  }
  for (std::size_t j = 1; j < m; ++j) {
    const Eigen::Index base = static_cast<Eigen::Index>(m) + d * static_cast<Eigen::Index>(j - 1);
    const auto fill = [&](std::size_t piece, double sign) {
      const auto verts = pieces_[piece].vertices();
      for (std::size_t v = 0; v < verts.size(); ++v) {
        for (Eigen::Index k = 0; k < d; ++k) {
          a(base + k, offset[piece] + static_cast<Eigen::Index>(v)) = sign * verts[v][static_cast<std::size_t>(k)];
        }
      }
    };
    fill(0, 1.0);
    fill(j, -1.0);
  }
  const auto lp = detail::find_nonnegative_solution(a, b, tol);
  if (!lp.feasible) return std::nullopt;
  std::vector<double> x(dim_, 0.0);
  const auto verts = pieces_.front().vertices();
  for (std::size_t v = 0; v < verts.size(); ++v) {
    for (std::size_t k = 0; k < dim_; ++k) x[k] += lp.solution[v] * verts[v][k];
  }
  return Creation(std::move(x));
}

bool ConvexRegion::is_empty(double tol) const { return !witness(tol).has_value(); }

BoundingBox ConvexRegion::bounds() const {
  BoundingBox box = bounding_box(pieces_.front());
  for (std::size_t j = 1; j < pieces_.size(); ++j) {
    const BoundingBox b = bounding_box(pieces_[j]);
    for (std::size_t k = 0; k < dim_; ++k) {
      box.lo[k] = std::max(box.lo[k], b.lo[k]);
      box.hi[k] = std::min(box.hi[k], b.hi[k]);
    }
  }
  return box;
}

double ConvexRegion::volume(std::size_t samples, std::uint64_t seed) const {
  if (pieces_.size() == 1) return permgen::volume(pieces_.front());
  if (std::any_of(pieces_.begin(), pieces_.end(), [](const Polytope& p) { return p.zero_volume(); })) return 0.0;
  const BoundingBox box = bounds();
  for (std::size_t k = 0; k < dim_; ++k) {
    if (!(box.hi[k] - box.lo[k] > kTolGeom)) return 0.0;
  }
  const Polytope bounding = axis_box(box.lo, box.hi);
  const auto oracle = [&](std::span<const double> x) { return contains(x); };
  return mc_volume(oracle, bounding, samples, seed).estimate;
}

// ---- GenerableSet ----------------------------------------------------------

std::size_t GenerableSet::dim() const {
  return is_region() ? region().dim() : grid().dim();
}

bool GenerableSet::contains(std::span<const double> x, double tol) const {
  return is_region() ? region().contains(x, tol) : grid().contains(x, tol);
}

bool GenerableSet::is_empty(double tol) const { return is_region() ? region().is_empty(tol) : grid().is_empty(); }

double GenerableSet::volume() const { return is_region() ? region().volume() : 0.0; }

std::vector<Creation> GenerableSet::generating_points(std::size_t grid_limit) const {
  if (is_grid()) return grid().points(grid_limit);
  const Polytope* p = region().polytope();
  if (p == nullptr) {
    throw Error(ErrorCode::UnsupportedDimension, "vertex set of an implicit intersection is not available");
  }
  return {p->vertices().begin(), p->vertices().end()};
}

// ---- generation ------------------------------------------------------------

GenerableSet empty_image(const GeneratorSpec& spec, std::size_t dim) {
  switch (spec.kind()) {
    case GeneratorSpec::Kind::Conv:
    case GeneratorSpec::Kind::Box: return ConvexRegion(Polytope::empty(dim));
    case GeneratorSpec::Kind::Splice: return FiniteGrid::empty(dim);
    case GeneratorSpec::Kind::Composed: return empty_image(spec.stages().front(), dim);
  }
  return ConvexRegion(Polytope::empty(dim));
}

GenerableSet generate(const GeneratorSpec& spec, const Corpus& corpus, double tol, std::size_t grid_limit) {
  if (corpus.empty()) throw Error(ErrorCode::EmptyCorpus, "generate on an empty corpus");
  return apply_points(spec, corpus.items(), corpus.dim(), tol, grid_limit);
}

GenerableSet generate_or_empty(const GeneratorSpec& spec, const Corpus& corpus, double tol, std::size_t grid_limit) {
  if (corpus.empty()) return empty_image(spec, corpus.dim());
  return generate(spec, corpus, tol, grid_limit);
}

bool is_member(const GeneratorSpec& spec, const Corpus& corpus, std::span<const double> x, double tol) {
  if (x.size() != corpus.dim()) throw Error(ErrorCode::DimensionMismatch, "query of wrong dimension");
  if (corpus.empty()) return false;
  const std::size_t d = corpus.dim();
  switch (spec.kind()) {
    case GeneratorSpec::Kind::Conv:
      if (d > kMaxExactDim) return in_convex_hull(corpus.items(), x, tol);
      return contains(convex_hull(corpus, tol), x, tol);
    case GeneratorSpec::Kind::Box: {
      const BoundingBox b = bounding_box(corpus.items(), d);
      for (std::size_t k = 0; k < d; ++k) {
        if (x[k] < b.lo[k] - tol || x[k] > b.hi[k] + tol) return false;
      }
      return true;
    }
    case GeneratorSpec::Kind::Splice:
      for (std::size_t k = 0; k < d; ++k) {
        const bool hit = std::any_of(corpus.begin(), corpus.end(),
                                     [&](const Creation& c) { return std::abs(c[k] - x[k]) <= tol; });
        if (!hit) return false;
      }
      return true;
    case GeneratorSpec::Kind::Composed: break;
  }
  return generate(spec, corpus, tol).contains(x, tol);
}

GenerableSet intersect(std::span<const GenerableSet> sets, double tol) {
  if (sets.empty()) throw Error(ErrorCode::InvalidArgument, "intersection of an empty list");
  const std::size_t d = sets.front().dim();
  const bool grids = sets.front().is_grid();
  for (const auto& s : sets) {
    if (s.dim() != d) throw Error(ErrorCode::DimensionMismatch, "intersection of sets of different dimension");
    if (s.is_grid() != grids) throw Error(ErrorCode::UnsupportedComposition, "intersection of a grid and a region");
  }

  if (grids) {
    std::vector<std::vector<double>> values = sets.front().grid().values();
    for (std::size_t i = 1; i < sets.size(); ++i) {
      for (std::size_t k = 0; k < d; ++k) {
        std::erase_if(values[k], [&](double v) { return !value_in(sets[i].grid().values()[k], v, tol); });
      }
    }
    return FiniteGrid(d, std::move(values));
  }

  std::vector<Polytope> pieces;
  for (const auto& s : sets) {
    for (const auto& p : s.region().pieces()) {
      if (p.is_empty()) return ConvexRegion(Polytope::empty(d));
      pieces.push_back(p);
    }
  }
  if (pieces.size() == 1) return ConvexRegion(pieces.front());
  if (d <= kMaxExactDim) return ConvexRegion(halfspace_intersection(pieces, tol));

  // Boxes intersect coordinatewise in any dimension.
  std::vector<BoundingBox> boxes;
  for (const auto& p : pieces) {
    auto b = as_axis_box(p);
    if (!b) break;
    boxes.push_back(std::move(*b));
  }
  if (boxes.size() == pieces.size()) {
    BoundingBox box = boxes.front();
    for (const auto& b : boxes) {
      for (std::size_t k = 0; k < d; ++k) {
        box.lo[k] = std::max(box.lo[k], b.lo[k]);
        box.hi[k] = std::min(box.hi[k], b.hi[k]);
      }
    }
    for (std::size_t k = 0; k < d; ++k) {
      if (box.lo[k] > box.hi[k] + tol) return ConvexRegion(Polytope::empty(d));
      if (box.lo[k] > box.hi[k]) box.lo[k] = box.hi[k];
    }
    return ConvexRegion(axis_box(box.lo, box.hi, tol));
  }
  return ConvexRegion(d, std::move(pieces));
}

bool set_includes(const GenerableSet& outer, const GenerableSet& inner, double tol) {
  if (outer.dim() != inner.dim()) throw Error(ErrorCode::DimensionMismatch, "comparison of sets of different dimension");
  if (inner.is_empty(tol)) return true;
  if (outer.is_empty(tol)) return false;

  if (inner.is_grid()) {
    if (outer.is_grid()) {
      for (std::size_t k = 0; k < inner.dim(); ++k) {
        for (double v : inner.grid().values()[k]) {
          if (!value_in(outer.grid().values()[k], v, tol)) return false;
        }
      }
      return true;
    }
    const auto pts = inner.grid().points();
    return std::all_of(pts.begin(), pts.end(), [&](const Creation& p) { return outer.contains(p, tol); });
  }

  if (const Polytope* p = inner.region().polytope()) {
    if (outer.is_grid() && p->vertices().size() > 1) return false;
    return std::all_of(p->vertices().begin(), p->vertices().end(),
                       [&](const Creation& v) { return outer.contains(v, tol); });
  }

  // Implicit intersection: compare on a witness and on sampled members.
  const auto w = inner.region().witness(tol);
  if (w && !outer.contains(*w, tol)) return false;
  if (outer.is_grid()) return false;
  const BoundingBox box = inner.region().bounds();
  Rng rng(0x696e636cULL);
  std::vector<double> x(inner.dim());
  for (int s = 0; s < 4000; ++s) {
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = rng.uniform(box.lo[k], box.hi[k]);
    if (inner.contains(x, tol) && !outer.contains(x, tol)) return false;
  }
  return true;
}

bool set_equal(const GenerableSet& a, const GenerableSet& b, double tol) {
  return set_includes(a, b, tol) && set_includes(b, a, tol);
}

GenerableSet scale_set(const GenerableSet& set, double alpha, double tol) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
  if (set.is_grid()) {
    auto values = set.grid().values();
    for (auto& v : values) {
      for (double& x : v) x *= alpha;
    }
    return FiniteGrid(set.dim(), std::move(values));
  }
  std::vector<Polytope> pieces;
  for (const auto& p : set.region().pieces()) {
    if (auto b = as_axis_box(p)) {
      for (double& x : b->lo) x *= alpha;
      for (double& x : b->hi) x *= alpha;
      pieces.push_back(axis_box(b->lo, b->hi, tol));
    } else {
      pieces.push_back(scaled(p, alpha, tol));
    }
  }
  return ConvexRegion(set.dim(), std::move(pieces));
}

// ---- diagnostics -----------------------------------------------------------

ClosureReport check_closure_axioms(const GeneratorSpec& spec, const Corpus& corpus, const Corpus& superset,
                                   std::span<const Creation> probes, double tol) {
  if (!corpus.is_subset_of(superset)) throw Error(ErrorCode::InvalidArgument, "corpus is not a subset of superset");
  ClosureReport r;
  const GenerableSet g = generate(spec, corpus, tol);

  for (const auto& c : corpus) {
    if (!g.contains(c, tol) || !is_member(spec, corpus, c, tol)) {
      r.preservation = false;
      r.counterexample = c;
      break;
    }
  }

  const GenerableSet big = generate(spec, superset, tol);
  r.monotonicity = set_includes(big, g, tol);
  for (const auto& p : probes) {
    if (is_member(spec, corpus, p, tol) && !is_member(spec, superset, p, tol)) {
      r.monotonicity = false;
      if (!r.counterexample) r.counterexample = p;
      break;
    }
  }

  const auto pts = g.generating_points();
  const GenerableSet again = generate(spec, corpus_from_points(pts, corpus.dim()), tol);
  r.idempotence = set_equal(again, g, tol);
  return r;
}

ConvexValuedReport check_convex_valued(const GeneratorSpec& spec, const Corpus& corpus, double tol) {
  if (corpus.empty()) throw Error(ErrorCode::EmptyCorpus, "convexity check on an empty corpus");
  const std::size_t d = corpus.dim();
  ConvexValuedReport r;
  const GenerableSet g = generate(spec, corpus, tol);
  const Polytope hull = convex_hull(corpus, tol);
  r.contains_hull = set_includes(g, ConvexRegion(hull), tol);

  if (g.is_grid()) {
    // Midpoint of the two lowest values on every coordinate that has two:
    // the average of two grid points, on no grid line of those coordinates.
    const auto& values = g.grid().values();
    std::vector<double> lo(d), mid(d);
    bool spread = false;
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = values[k][0];
      mid[k] = values[k].size() > 1 ? 0.5 * (values[k][0] + values[k][1]) : values[k][0];
      spread = spread || values[k].size() > 1;
    }
    if (spread && !g.contains(mid, tol)) r.witness = Creation(mid);
    r.image_convex = !r.witness.has_value();
    // conv(g(C)) contains the witness, so it differs from g(C) exactly when a witness exists.
    r.conv_after = !(r.witness && !g.contains(*r.witness, tol));
  } else {
    r.image_convex = true;
    const auto pts = g.generating_points();
    r.conv_after = set_equal(ConvexRegion(convex_hull_of(pts, d, tol)), g, tol);
  }

  // g(conv(C)) probed on the hull vertices, pairwise midpoints of the corpus
  // and seeded random convex combinations.
  std::vector<Creation> probe(corpus.begin(), corpus.end());
  const std::size_t n = corpus.size();
  for (std::size_t i = 0; i < n && probe.size() < 400; ++i) {
    for (std::size_t j = i + 1; j < n && probe.size() < 400; ++j) {
      std::vector<double> m(d);
      for (std::size_t k = 0; k < d; ++k) m[k] = 0.5 * (corpus[i][k] + corpus[j][k]);
      probe.emplace_back(std::move(m));
    }
  }
  Rng rng(0x636f6e76ULL, n);
  for (int s = 0; s < 32; ++s) {
    std::vector<double> w(n), x(d, 0.0);
    double total = 0.0;
    for (double& v : w) total += (v = rng.exponential());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < d; ++k) x[k] += w[i] / total * corpus[i][k];
    }
    probe.emplace_back(std::move(x));
  }
  const GenerableSet via_hull = generate(spec, corpus_from_points(probe, d), tol);
  r.conv_before = set_equal(via_hull, g, tol);
  return r;
}

Corpus scale_corpus(const Corpus& corpus, double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
  return corpus.scaled(alpha);
}

bool check_homogeneity(const GeneratorSpec& spec, const Corpus& corpus, double alpha, double tol) {
  const Corpus scaled_corpus = scale_corpus(corpus, alpha);
  const GenerableSet direct = generate(spec, scaled_corpus, tol);
  const GenerableSet mapped = scale_set(generate(spec, corpus, tol), alpha, tol);
  const double t = tol * std::max(1.0, alpha);
  if (direct.is_grid() && mapped.is_grid()) {
    const auto& a = direct.grid().values();
    const auto& b = mapped.grid().values();
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[k].size() != b[k].size()) return false;
      for (std::size_t i = 0; i < a[k].size(); ++i) {
        if (std::abs(a[k][i] - b[k][i]) > t) return false;
      }
    }
    return true;
  }
  if (direct.is_region() && mapped.is_region() && direct.region().polytope() && mapped.region().polytope()) {
    return same_vertex_set(*direct.region().polytope(), *mapped.region().polytope(), t);
  }
  return set_equal(direct, mapped, t);
}

}  // namespace permgen

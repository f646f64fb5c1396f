#include "permgen/geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <string>

#include "permgen/rng.hpp"
#include "simplex.hpp"

namespace permgen {

Creation::Creation(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw Error(ErrorCode::InvalidArgument, "creation must have dimension >= 1");
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    if (!std::isfinite(coords_[k])) {
      throw Error(ErrorCode::NonFiniteCoordinate, "coordinate " + std::to_string(k) + " is not finite");
    }
    if (coords_[k] == 0.0) coords_[k] = 0.0;  // fold -0.0 so hashing agrees with ==
  }
}

std::size_t CreationHash::operator()(const Creation& c) const noexcept {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (double v : c.coords()) h = splitmix64(h ^ std::bit_cast<std::uint64_t>(v));
  return static_cast<std::size_t>(h);
}

Corpus::Corpus(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "corpus dimension must be >= 1");
}

Corpus::Corpus(std::size_t dim, std::vector<Creation> items) : Corpus(dim) {
  items_.reserve(items.size());
  for (auto& c : items) add(std::move(c));
}

Corpus Corpus::of(std::initializer_list<std::initializer_list<double>> rows) {
  if (rows.size() == 0) throw Error(ErrorCode::EmptyCorpus, "no rows");
  Corpus out(rows.begin()->size());
  for (const auto& row : rows) out.add(Creation(row));
  return out;
}

void Corpus::add(Creation c) {
  if (c.dim() != dim_) {
    throw Error(ErrorCode::DimensionMismatch,
                "creation of dimension " + std::to_string(c.dim()) + " added to corpus of dimension " +
                    std::to_string(dim_));
  }
  if (index_.contains(c)) throw Error(ErrorCode::DuplicateCreation, "creation already in corpus");
  index_.insert(c);
  items_.push_back(std::move(c));
}

bool Corpus::is_subset_of(const Corpus& other) const {
  if (dim_ != other.dim_) return false;
  return std::all_of(items_.begin(), items_.end(), [&](const Creation& c) { return other.contains(c); });
}

Corpus Corpus::without(std::size_t index) const {
  Corpus out(dim_);
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i != index) out.add(items_[i]);
  }
  return out;
}

Corpus Corpus::without(const Corpus& removed) const {
  Corpus out(dim_);
  for (const auto& c : items_) {
    if (!removed.contains(c)) out.add(c);
  }
  return out;
}

Corpus Corpus::with(const Creation& c) const {
  Corpus out = *this;
  out.add(c);
  return out;
}

Corpus Corpus::prefix(std::size_t n) const {
  Corpus out(dim_);
  for (std::size_t i = 0; i < std::min(n, items_.size()); ++i) out.add(items_[i]);
  return out;
}

Corpus Corpus::scaled(double alpha) const {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
  Corpus out(dim_);
  for (const auto& c : items_) {
    std::vector<double> v(c.coords().begin(), c.coords().end());
    for (double& x : v) x *= alpha;
    out.add(Creation(std::move(v)));
  }
  return out;
}

bool operator==(const Corpus& a, const Corpus& b) {
  return a.dim_ == b.dim_ && a.size() == b.size() && a.is_subset_of(b);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double Halfspace::residual(std::span<const double> x) const { return dot(normal, x) - offset; }

Polytope Polytope::empty(std::size_t dim) { return Polytope(dim, {}, {}, 0, true, 0.0); }

Polytope::Polytope(std::size_t dim, std::vector<Creation> vertices, std::vector<Halfspace> halfspaces,
                   std::size_t affine_dim, bool has_hrep, double exact_volume)
    : dim_(dim),
      vertices_(std::move(vertices)),
      halfspaces_(std::move(halfspaces)),
      affine_dim_(affine_dim),
      has_hrep_(has_hrep),
      exact_volume_(exact_volume) {}

namespace {

void require_dim(std::size_t expected, std::size_t got) {
  if (expected != got) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected dimension " + std::to_string(expected) + ", got " + std::to_string(got));
  }
}

}  // namespace

bool in_convex_hull(std::span<const Creation> points, std::span<const double> x, double tol) {
  if (points.empty()) return false;
  const auto d = static_cast<Eigen::Index>(x.size());
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd a(d + 1, n);
  Eigen::VectorXd b(d + 1);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& p = points[static_cast<std::size_t>(j)];
    for (Eigen::Index k = 0; k < d; ++k) a(k, j) = p[static_cast<std::size_t>(k)];
    a(d, j) = 1.0;
  }
  for (Eigen::Index k = 0; k < d; ++k) b(k) = x[static_cast<std::size_t>(k)];
  b(d) = 1.0;
  return detail::find_nonnegative_solution(a, b, tol).feasible;
}

Location membership(const Polytope& polytope, std::span<const double> x, double tol) {
  require_dim(polytope.dim(), x.size());
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (polytope.is_empty()) return Location::Outside;
  if (!polytope.has_hrep()) {
    if (!in_convex_hull(polytope.vertices(), x, tol)) return Location::Outside;
    return polytope.full_dimensional() ? Location::Inside : Location::Boundary;
  }
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& h : polytope.halfspaces()) worst = std::max(worst, h.residual(x));
  if (worst > tol) return Location::Outside;
  if (worst >= -tol) return Location::Boundary;
  return Location::Inside;
}

double BoundingBox::volume() const {
  double v = 1.0;
  for (std::size_t k = 0; k < lo.size(); ++k) v *= std::max(0.0, hi[k] - lo[k]);
  return v;
}

BoundingBox bounding_box(std::span<const Creation> points, std::size_t dim) {
  BoundingBox box{std::vector<double>(dim, std::numeric_limits<double>::infinity()),
                  std::vector<double>(dim, -std::numeric_limits<double>::infinity())};
  for (const auto& p : points) {
    for (std::size_t k = 0; k < dim; ++k) {
      box.lo[k] = std::min(box.lo[k], p[k]);
      box.hi[k] = std::max(box.hi[k], p[k]);
    }
  }
  return box;
}

BoundingBox bounding_box(const Polytope& polytope) {
  if (polytope.is_empty()) throw Error(ErrorCode::EmptyPolytope, "bounding box of empty polytope");
  return bounding_box(polytope.vertices(), polytope.dim());
}

McEstimate mc_volume(const MembershipOracle& region, const Polytope& bounding, std::size_t samples,
                     std::uint64_t seed) {
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, "samples must be >= 1");
  if (bounding.zero_volume()) throw Error(ErrorCode::ZeroVolumeBounding, "bounding polytope has no volume");
  const BoundingBox box = bounding_box(bounding);
  const double box_volume = box.volume();
  if (!(box_volume > 0.0)) throw Error(ErrorCode::ZeroVolumeBounding, "bounding box has no volume");

  const std::size_t d = bounding.dim();
  Rng rng(seed, /*stream=*/0x6d63);
  std::vector<double> x(d);
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t k = 0; k < d; ++k) x[k] = rng.uniform(box.lo[k], box.hi[k]);
    if (region(x)) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  return {p * box_volume, box_volume * std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
}

double volume(const Polytope& polytope) {
  if (polytope.zero_volume()) return 0.0;
  if (polytope.dim() <= kMaxExactDim) return polytope.exact_volume();
  const auto oracle = [&](std::span<const double> x) { return contains(polytope, x); };
  return mc_volume(oracle, polytope, kDefaultMcSamples, kDefaultMcSeed).estimate;
}

double support(const Polytope& polytope, std::span<const double> direction) {
  require_dim(polytope.dim(), direction.size());
  if (polytope.is_empty()) throw Error(ErrorCode::EmptyPolytope, "support of empty polytope");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : polytope.vertices()) best = std::max(best, dot(direction, v.coords()));
  return best;
}

bool polytope_includes(const Polytope& outer, const Polytope& inner, double tol) {
  require_dim(outer.dim(), inner.dim());
  if (inner.is_empty()) return true;
  if (outer.is_empty()) return false;
  return std::all_of(inner.vertices().begin(), inner.vertices().end(),
                     [&](const Creation& v) { return contains(outer, v.coords(), tol); });
}

bool same_vertex_set(const Polytope& a, const Polytope& b, double tol) {
  if (a.dim() != b.dim() || a.vertices().size() != b.vertices().size()) return false;
  const auto close = [&](const Creation& p, const Creation& q) {
    for (std::size_t k = 0; k < p.dim(); ++k) {
      if (std::abs(p[k] - q[k]) > tol) return false;
    }
    return true;
  };
  for (const auto& v : a.vertices()) {
    if (std::none_of(b.vertices().begin(), b.vertices().end(), [&](const Creation& w) { return close(v, w); })) {
      return false;
    }
  }
  for (const auto& w : b.vertices()) {
    if (std::none_of(a.vertices().begin(), a.vertices().end(), [&](const Creation& v) { return close(v, w); })) {
      return false;
    }
  }
  return true;
}

Polytope scaled(const Polytope& polytope, double alpha, double tol) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
  if (polytope.is_empty()) return polytope;
  std::vector<Creation> pts;
  pts.reserve(polytope.vertices().size());
  for (const auto& v : polytope.vertices()) {
    std::vector<double> c(v.coords().begin(), v.coords().end());
    for (double& x : c) x *= alpha;
    pts.emplace_back(std::move(c));
  }
  return convex_hull_of(pts, polytope.dim(), tol);
}

namespace {

std::vector<double> affine_dependence(std::span<const Creation> pts, std::size_t d) {
  const auto cols = static_cast<Eigen::Index>(pts.size());
  const auto rows = static_cast<Eigen::Index>(d + 1);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index k = 0; k < rows - 1; ++k) m(k, j) = pts[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    m(rows - 1, j) = 1.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd v = svd.matrixV().col(cols - 1);
  return {v.data(), v.data() + v.size()};
}

struct SignSplit {
  std::vector<std::size_t> positive;
  std::vector<std::size_t> negative;
};

SignSplit split_by_sign(std::vector<double>& a) {
  double scale = 0.0;
  for (double x : a) scale = std::max(scale, std::abs(x));
  const double eps = 1e-10 * scale;
  SignSplit s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > eps) s.positive.push_back(i);
    if (a[i] < -eps) s.negative.push_back(i);
  }
  // Smaller side first; ties go to the side holding the lowest index.
  const bool flip = s.negative.size() < s.positive.size() ||
                    (s.negative.size() == s.positive.size() && !s.negative.empty() && !s.positive.empty() &&
                     s.negative.front() < s.positive.front());
  if (flip) {
    std::swap(s.positive, s.negative);
    for (double& x : a) x = -x;
  }
  return s;
}

std::optional<RadonPartition> radon_from(std::span<const Creation> solve_pts, std::span<const Creation> report_pts,
                                         std::size_t d, double tol) {
  std::vector<double> a = affine_dependence(solve_pts, d);
  const SignSplit s = split_by_sign(a);
  if (s.positive.empty() || s.negative.empty()) return std::nullopt;

  std::vector<double> w(d, 0.0);
  double total = 0.0;
  for (std::size_t i : s.positive) {
    total += a[i];
    for (std::size_t k = 0; k < d; ++k) w[k] += a[i] * report_pts[i][k];
  }
  for (double& x : w) x /= total;

  Corpus part_a(d), part_b(d);
  std::vector<Creation> va, vb;
  for (std::size_t i : s.positive) {
    part_a.add(report_pts[i]);
    va.push_back(report_pts[i]);
  }
  for (std::size_t i : s.negative) {
    part_b.add(report_pts[i]);
    vb.push_back(report_pts[i]);
  }
  if (!in_convex_hull(va, w, tol) || !in_convex_hull(vb, w, tol)) return std::nullopt;
  return RadonPartition{std::move(part_a), std::move(part_b), Creation(std::move(w))};
}

}  // namespace

RadonPartition radon_partition(const Corpus& corpus, double tol) {
  const std::size_t d = corpus.dim();
  if (corpus.size() < d + 2) {
    throw Error(ErrorCode::InsufficientPoints, "Radon partition needs at least d+2 = " + std::to_string(d + 2) +
                                                   " points, got " + std::to_string(corpus.size()));
  }
  const auto pts = corpus.items().subspan(0, d + 2);
  if (auto r = radon_from(pts, pts, d, tol)) return std::move(*r);

  // Retry on a deterministically perturbed copy, then re-validate the
  // partition against the original coordinates.
  std::uint64_t h = 0;
  for (const auto& p : pts) h = splitmix64(h ^ CreationHash{}(p));
  Rng rng(h, 0x7261646f6e);
  std::vector<Creation> jittered;
  for (const auto& p : pts) {
    std::vector<double> c(p.coords().begin(), p.coords().end());
    for (double& x : c) x += 1e-12 * rng.uniform(-1.0, 1.0);
    jittered.emplace_back(std::move(c));
  }
  if (auto r = radon_from(jittered, pts, d, tol)) return std::move(*r);
  throw Error(ErrorCode::DegenerateSystem, "affine dependence did not yield a valid Radon partition");
}

}  // namespace permgen

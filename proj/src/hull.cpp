// Convex hulls, boxes and halfspace intersection.
//
// Every hull is computed inside the affine frame of its input: an origin plus
// an orthonormal basis of the affine hull, found greedily by repeatedly taking
// the point farthest from the current flat. Facets are found in frame
// coordinates (monotone chain for k = 2, incremental hull for k = 3) and lifted
// back to R^d; directions orthogonal to the frame become pairs of opposite
// halfspaces. Vertices are always copies of input points, so hulls of exact
// data reproduce the input coordinates bit for bit.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "permgen/geometry.hpp"

namespace permgen {
namespace {

using Vec = std::vector<double>;

struct Frame {
  Vec origin;
  std::vector<Vec> basis;
  std::vector<std::size_t> pivots;  // origin index followed by one index per basis vector
};

Vec minus(std::span<const double> a, std::span<const double> b) {
  Vec r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
  return r;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void orthogonalize(Vec& r, const std::vector<Vec>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) {
      const double c = dot(r, b);
      for (std::size_t k = 0; k < r.size(); ++k) r[k] -= c * b[k];
    }
  }
}

Frame affine_frame(std::span<const Creation> pts, std::size_t d, double tol) {
  Frame f;
  f.origin.assign(pts[0].coords().begin(), pts[0].coords().end());
  f.pivots.push_back(0);
  for (std::size_t step = 0; step < d; ++step) {
    std::size_t best = pts.size();
    double best_dist = tol;
    Vec best_r;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      Vec r = minus(pts[i].coords(), f.origin);
      orthogonalize(r, f.basis);
      const double dist = norm(r);
      if (dist > best_dist) {
        best_dist = dist;
        best = i;
        best_r = std::move(r);
      }
    }
    if (best == pts.size()) break;
    for (double& x : best_r) x /= best_dist;
    f.basis.push_back(std::move(best_r));
    f.pivots.push_back(best);
  }
  return f;
}

Vec project(const Frame& f, std::span<const double> p) {
  const Vec r = minus(p, f.origin);
  Vec y(f.basis.size());
  for (std::size_t j = 0; j < f.basis.size(); ++j) y[j] = dot(r, f.basis[j]);
  return y;
}

std::vector<Vec> complement_basis(const Frame& f, std::size_t d) {
  std::vector<Vec> all = f.basis;
  std::vector<Vec> out;
  for (std::size_t i = 0; i < d && all.size() < d; ++i) {
    Vec e(d, 0.0);
    e[i] = 1.0;
    orthogonalize(e, all);
    const double len = norm(e);
    if (len < 1e-6) continue;
    for (double& x : e) x /= len;
    all.push_back(e);
    out.push_back(std::move(e));
  }
  return out;
}

/// Facet {y : normal . y <= offset} in frame coordinates.
struct FrameFacet {
  Vec normal;
  double offset;
};

struct FrameHull {
  std::vector<std::size_t> vertices;  // indices into the point list
  std::vector<FrameFacet> facets;
  double volume = 0.0;  // k-dimensional volume in the frame
};

double cross2(const Vec& o, const Vec& a, const Vec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

FrameHull hull_1d(const std::vector<Vec>& y) {
  std::size_t lo = 0, hi = 0;
  for (std::size_t i = 1; i < y.size(); ++i) {
    if (y[i][0] < y[lo][0]) lo = i;
    if (y[i][0] > y[hi][0]) hi = i;
  }
  FrameHull h;
  h.vertices = {lo, hi};
  h.facets = {{{1.0}, y[hi][0]}, {{-1.0}, -y[lo][0]}};
  h.volume = y[hi][0] - y[lo][0];
  return h;
}

/// Andrew's monotone chain; returns counter-clockwise vertex indices.
std::vector<std::size_t> monotone_chain(const std::vector<Vec>& y, double tol) {
  std::vector<std::size_t> idx(y.size());
  std::iota(idx.begin(), idx.end(), 0);
  // Abscissae within tol of a run's first one share its key, so points on a
  // near-vertical edge are ordered by height rather than by rounding noise.
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return y[a][0] < y[b][0]; });
  std::vector<double> key(y.size());
  for (std::size_t i = 0, run = 0; i < idx.size(); ++i) {
    if (y[idx[i]][0] - y[idx[run]][0] > tol) run = i;
    key[idx[i]] = y[idx[run]][0];
  }
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return key[a] != key[b] ? key[a] < key[b] : y[a][1] < y[b][1];
  });

  const auto keeps_turn = [&](std::size_t a, std::size_t b, std::size_t c) {
    const double base = std::hypot(y[c][0] - y[a][0], y[c][1] - y[a][1]);
    return cross2(y[a], y[b], y[c]) > tol * base;
  };
  std::vector<std::size_t> chain;
  for (std::size_t i : idx) {
    while (chain.size() >= 2 && !keeps_turn(chain[chain.size() - 2], chain.back(), i)) chain.pop_back();
    chain.push_back(i);
  }
  const std::size_t lower = chain.size() + 1;
  for (auto it = idx.rbegin() + 1; it != idx.rend(); ++it) {
    while (chain.size() >= lower && !keeps_turn(chain[chain.size() - 2], chain.back(), *it)) chain.pop_back();
    chain.push_back(*it);
  }
  chain.pop_back();
  return chain;
}

FrameHull hull_2d(const std::vector<Vec>& y, double tol) {
  FrameHull h;
  h.vertices = monotone_chain(y, tol);
  const std::size_t m = h.vertices.size();
  if (m < 3) return h;
  for (std::size_t i = 0; i < m; ++i) {
    const Vec& p = y[h.vertices[i]];
    const Vec& q = y[h.vertices[(i + 1) % m]];
    const double ex = q[0] - p[0], ey = q[1] - p[1];
    const double len = std::hypot(ex, ey);
    Vec n{ey / len, -ex / len};
    const double off = n[0] * p[0] + n[1] * p[1];
    h.facets.push_back({std::move(n), off});
    h.volume += 0.5 * (p[0] * q[1] - q[0] * p[1]);
  }
  return h;
}

/// Sign of det[b - a, c - a, p - a], exact for double inputs. The double
/// determinant decides unless it is within its rounding bound; rationals
/// settle the rest.
int orient3d(const Vec& a, const Vec& b, const Vec& c, const Vec& p) {
  const double bx = b[0] - a[0], by = b[1] - a[1], bz = b[2] - a[2];
  const double cx = c[0] - a[0], cy = c[1] - a[1], cz = c[2] - a[2];
  const double px = p[0] - a[0], py = p[1] - a[1], pz = p[2] - a[2];
  const double m1 = cy * pz - cz * py, m2 = cz * px - cx * pz, m3 = cx * py - cy * px;
  const double det = bx * m1 + by * m2 + bz * m3;
  const double perm = std::abs(bx) * (std::abs(cy * pz) + std::abs(cz * py)) +
                      std::abs(by) * (std::abs(cz * px) + std::abs(cx * pz)) +
                      std::abs(bz) * (std::abs(cx * py) + std::abs(cy * px));
  // Differences are rounded too, hence a looser constant than the textbook one.
  const double bound = 1e-14 * perm;
  if (det > bound) return 1;
  if (det < -bound) return -1;

  const auto q = [](double x) { return mpq_class(x); };
  const mpq_class ex[3] = {q(b[0]) - q(a[0]), q(b[1]) - q(a[1]), q(b[2]) - q(a[2])};
  const mpq_class fx[3] = {q(c[0]) - q(a[0]), q(c[1]) - q(a[1]), q(c[2]) - q(a[2])};
  const mpq_class gx[3] = {q(p[0]) - q(a[0]), q(p[1]) - q(a[1]), q(p[2]) - q(a[2])};
  const mpq_class exact = ex[0] * (fx[1] * gx[2] - fx[2] * gx[1]) + ex[1] * (fx[2] * gx[0] - fx[0] * gx[2]) +
                          ex[2] * (fx[0] * gx[1] - fx[1] * gx[0]);
  return sgn(exact);
}

// Incremental 3-D hull over triangles. Faces are oriented counter-clockwise
// seen from outside and a point is visible from a face when it lies strictly
// beyond the face plane, decided exactly. The surface is therefore the exact
// hull of the inserted points, possibly with coplanar or zero-area triangles
// that `finish` folds into facets.
class Hull3 {
 public:
  Hull3(const std::vector<Vec>& y, double tol) : y_(y), tol_(tol) {}

  FrameHull run(const std::array<std::size_t, 4>& seed) {
    for (std::size_t k = 0; k < 3; ++k) {
      interior_[k] = (y_[seed[0]][k] + y_[seed[1]][k] + y_[seed[2]][k] + y_[seed[3]][k]) / 4.0;
    }
    add_oriented(seed[0], seed[1], seed[2]);
    add_oriented(seed[0], seed[3], seed[1]);
    add_oriented(seed[0], seed[2], seed[3]);
    add_oriented(seed[1], seed[3], seed[2]);

    // Farthest points first: the hull reaches its final size early, and the
    // near-duplicates that clipping produces then mostly fall inside.
    const std::set<std::size_t> seeded(seed.begin(), seed.end());
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t i = 0; i < y_.size(); ++i) {
      if (seeded.contains(i)) continue;
      const auto r = sub(y_[i], Vec(interior_.begin(), interior_.end()));
      order.emplace_back(-(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]), i);
    }
    std::sort(order.begin(), order.end());
    for (const auto& [neg_dist, i] : order) insert(i);
    return finish();
  }

 private:
  struct Face {
    std::array<std::size_t, 3> v;
    std::array<double, 3> n;
    double off;
    double area;
    bool alive;
  };

  static std::array<double, 3> sub(const Vec& a, const Vec& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
  static std::array<double, 3> cross(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  }

  Face make(std::size_t a, std::size_t b, std::size_t c) const {
    auto n = cross(sub(y_[b], y_[a]), sub(y_[c], y_[a]));
    const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    if (len > 0.0) {
      for (double& x : n) x /= len;
    }
    const double off = n[0] * y_[a][0] + n[1] * y_[a][1] + n[2] * y_[a][2];
    return {{a, b, c}, n, off, 0.5 * len, true};
  }

  /// A triangle thinner than tol has a meaningless
  /// normal; it arises when a new point is collinear with a horizon edge.
  bool degenerate(const Face& f) const {
    double longest = 0.0;
    for (int i = 0; i < 3; ++i) {
      const auto e = sub(y_[f.v[(i + 1) % 3]], y_[f.v[i]]);
      longest = std::max(longest, std::sqrt(e[0] * e[0] + e[1] * e[1] + e[2] * e[2]));
    }
    return !(2.0 * f.area > tol_ * longest);
  }

  bool visible_from(const Face& f, std::size_t p) const { return orient3d(y_[f.v[0]], y_[f.v[1]], y_[f.v[2]], y_[p]) > 0; }

  double height(const Face& f, const Vec& p) const { return f.n[0] * p[0] + f.n[1] * p[1] + f.n[2] * p[2] - f.off; }

  void add_oriented(std::size_t a, std::size_t b, std::size_t c) {
    Face f = make(a, b, c);
    const Vec centre(interior_.begin(), interior_.end());
    if (orient3d(y_[a], y_[b], y_[c], centre) > 0) f = make(a, c, b);
    push(f);
  }

  void insert(std::size_t p) {
    std::size_t top = faces_.size();
    double top_height = -std::numeric_limits<double>::infinity();
    for (std::size_t fi = 0; fi < faces_.size(); ++fi) {
      if (!faces_[fi].alive || !visible_from(faces_[fi], p)) continue;
      const double h = height(faces_[fi], y_[p]);
      if (top == faces_.size() || h > top_height) {
        top_height = h;
        top = fi;
      }
    }
    if (top == faces_.size()) return;

    // Exact visibility makes the visible faces a disc bounded by one horizon loop.
    std::vector<std::size_t> visible{top};
    std::set<std::size_t> seen{top};
    std::vector<std::pair<std::size_t, std::size_t>> horizon;
    for (std::size_t q = 0; q < visible.size(); ++q) {
      const auto v = faces_[visible[q]].v;
      for (int e = 0; e < 3; ++e) {
        const std::size_t a = v[e], b = v[(e + 1) % 3];
        const std::size_t nb = owner_.at({b, a});
        if (seen.contains(nb)) continue;
        if (visible_from(faces_[nb], p)) {
          seen.insert(nb);
          visible.push_back(nb);
        }
      }
    }
    for (std::size_t fi : visible) {
      const auto& v = faces_[fi].v;
      for (int e = 0; e < 3; ++e) {
        const std::size_t a = v[e], b = v[(e + 1) % 3];
        if (!seen.contains(owner_.at({b, a}))) horizon.emplace_back(a, b);
      }
    }
    for (std::size_t fi : visible) {
      faces_[fi].alive = false;
      const auto& v = faces_[fi].v;
      for (int e = 0; e < 3; ++e) owner_.erase({v[e], v[(e + 1) % 3]});
    }
    for (const auto& [a, b] : horizon) push(make(a, b, p));

    if (faces_.size() > 64 && 2 * live_count() < faces_.size()) {
      std::erase_if(faces_, [](const Face& f) { return !f.alive; });
      owner_.clear();
      for (std::size_t fi = 0; fi < faces_.size(); ++fi) register_edges(fi);
    }
  }

  void push(const Face& f) {
    faces_.push_back(f);
    register_edges(faces_.size() - 1);
  }

  void register_edges(std::size_t fi) {
    const auto& v = faces_[fi].v;
    for (int e = 0; e < 3; ++e) owner_[{v[e], v[(e + 1) % 3]}] = fi;
  }

  std::size_t live_count() const {
    return static_cast<std::size_t>(std::count_if(faces_.begin(), faces_.end(), [](const Face& f) { return f.alive; }));
  }

  /// Adjacent triangles whose vertices lie within `merge_tol` of a common
  /// plane become one facet. Without this, a large planar face produced by
  /// clipping is split into slivers whose rounded normals disagree, leaving
  /// inputs slightly outside and promoting interior points of the face to
  /// vertices. Each facet takes the plane of its largest triangle, with the
  /// offset raised until every input point is inside.
  FrameHull finish() const {
    FrameHull h;
    const Vec centre(interior_.begin(), interior_.end());
    const double merge_tol = tol_;

    std::vector<std::size_t> live;
    for (std::size_t fi = 0; fi < faces_.size(); ++fi) {
      if (!faces_[fi].alive) continue;
      live.push_back(fi);
      const auto& f = faces_[fi];
      const auto a = sub(y_[f.v[0]], centre), b = sub(y_[f.v[1]], centre), c = sub(y_[f.v[2]], centre);
      const auto bc = cross(b, c);
      h.volume += (a[0] * bc[0] + a[1] * bc[1] + a[2] * bc[2]) / 6.0;
    }
    std::stable_sort(live.begin(), live.end(),
                     [&](std::size_t x, std::size_t y) { return faces_[x].area > faces_[y].area; });

    std::map<std::size_t, std::size_t> group;  // face -> facet index
    std::vector<std::array<double, 3>> normals;
    std::vector<std::set<std::size_t>> incident(y_.size());
    for (std::size_t seed : live) {
      if (group.contains(seed) || degenerate(faces_[seed])) continue;
      const std::size_t g = normals.size();
      const auto& n = faces_[seed].n;
      const double off = faces_[seed].off;
      const auto near_plane = [&](const Face& f) {
        if (!degenerate(f) && n[0] * f.n[0] + n[1] * f.n[1] + n[2] * f.n[2] <= 0.5) return false;
        return std::all_of(f.v.begin(), f.v.end(),
                           [&](std::size_t v) { return std::abs(height_of(n, off, y_[v])) <= merge_tol; });
      };
      std::vector<std::size_t> queue{seed};
      group[seed] = g;
      for (std::size_t q = 0; q < queue.size(); ++q) {
        const auto& v = faces_[queue[q]].v;
        for (int e = 0; e < 3; ++e) {
          const std::size_t nb = owner_.at({v[(e + 1) % 3], v[e]});
          if (group.contains(nb) || !near_plane(faces_[nb])) continue;
          group[nb] = g;
          queue.push_back(nb);
        }
      }
      double top = off;
      for (const auto& p : y_) top = std::max(top, n[0] * p[0] + n[1] * p[1] + n[2] * p[2]);
      h.facets.push_back({Vec(n.begin(), n.end()), top});
      normals.push_back(n);
      for (std::size_t fi : queue) {
        for (std::size_t v : faces_[fi].v) incident[v].insert(g);
      }
    }

    // A vertex is extreme when the normals of its facets span R^3.
    const double eps = 1e-9;
    for (std::size_t i = 0; i < incident.size(); ++i) {
      const auto& gs = incident[i];
      if (gs.size() < 3) continue;
      const auto& n1 = normals[*gs.begin()];
      std::array<double, 3> axis{};
      bool found = false;
      for (std::size_t g : gs) {
        const auto c = cross(n1, normals[g]);
        const double len = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
        if (len > eps) {
          axis = {c[0] / len, c[1] / len, c[2] / len};
          found = true;
          break;
        }
      }
      if (!found) continue;
      const bool spans = std::any_of(gs.begin(), gs.end(), [&](std::size_t g) {
        const auto& n = normals[g];
        return std::abs(axis[0] * n[0] + axis[1] * n[1] + axis[2] * n[2]) > eps;
      });
      if (spans) h.vertices.push_back(i);
    }
    return h;
  }

  static double height_of(const std::array<double, 3>& n, double off, const Vec& p) {
    return n[0] * p[0] + n[1] * p[1] + n[2] * p[2] - off;
  }

  const std::vector<Vec>& y_;
  double tol_;
  std::array<double, 3> interior_{};
  std::vector<Face> faces_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> owner_;  // directed edge -> live face
};

std::vector<Creation> dedupe(std::span<const Creation> points, double tol) {
  std::vector<const Creation*> sorted;
  sorted.reserve(points.size());
  for (const auto& p : points) sorted.push_back(&p);
  std::sort(sorted.begin(), sorted.end(), [](const Creation* a, const Creation* b) { return *a < *b; });

  std::vector<Creation> kept;
  kept.reserve(points.size());
  for (const Creation* p : sorted) {
    bool dup = false;
    for (auto it = kept.rbegin(); it != kept.rend() && (*it)[0] >= (*p)[0] - tol; ++it) {
      bool close = true;
      for (std::size_t k = 0; k < p->dim() && close; ++k) close = std::abs((*it)[k] - (*p)[k]) <= tol;
      if (close) {
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back(*p);
  }
  return kept;
}

std::vector<std::size_t> extreme_points_lp(const std::vector<Creation>& pts, double tol) {
  const std::size_t n = pts.size();
  const std::size_t d = pts[0].dim();
  // Lexicographic extremes under each rotation of the coordinate order are
  // always vertices; they seed a cheap first-pass rejection test.
  std::vector<bool> known(n, false);
  for (std::size_t lead = 0; lead < d; ++lead) {
    const auto less = [&](std::size_t a, std::size_t b) {
      for (std::size_t k = 0; k < d; ++k) {
        const std::size_t c = (lead + k) % d;
        if (pts[a][c] != pts[b][c]) return pts[a][c] < pts[b][c];
      }
      return false;
    };
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (less(i, lo)) lo = i;
      if (less(hi, i)) hi = i;
    }
    known[lo] = known[hi] = true;
  }
  std::vector<Creation> seeds;
  for (std::size_t i = 0; i < n; ++i) {
    if (known[i]) seeds.push_back(pts[i]);
  }

  std::vector<std::size_t> out;
  std::vector<Creation> others;
  for (std::size_t i = 0; i < n; ++i) {
    if (known[i]) {
      out.push_back(i);
      continue;
    }
    if (in_convex_hull(seeds, pts[i].coords(), tol)) continue;
    others.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) others.push_back(pts[j]);
    }
    if (!in_convex_hull(others, pts[i].coords(), tol)) out.push_back(i);
  }
  return out;
}

Polytope assemble(const std::vector<Creation>& pts, const Frame& frame, FrameHull fh, std::size_t d) {
  const std::size_t k = frame.basis.size();
  std::vector<Creation> vertices;
  vertices.reserve(fh.vertices.size());
  for (std::size_t i : fh.vertices) vertices.push_back(pts[i]);

  if (d == 2 && k == 2) {
    // Frame handedness may differ from the ambient one.
    double area = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      const auto& p = vertices[i];
      const auto& q = vertices[(i + 1) % vertices.size()];
      area += p[0] * q[1] - q[0] * p[1];
    }
    if (area < 0.0) std::reverse(vertices.begin(), vertices.end());
  }

  std::vector<Halfspace> hs;
  for (const auto& f : fh.facets) {
    Vec normal(d, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t c = 0; c < d; ++c) normal[c] += f.normal[j] * frame.basis[j][c];
    }
    const double off = f.offset + dot(normal, frame.origin);
    hs.push_back({std::move(normal), off});
  }
  for (auto& u : complement_basis(frame, d)) {
    const double off = dot(u, frame.origin);
    Vec neg(u);
    for (double& x : neg) x = -x;
    hs.push_back({std::move(u), off});
    hs.push_back({std::move(neg), -off});
  }
  const double vol = (k == d) ? std::abs(fh.volume) : 0.0;
  return Polytope(d, std::move(vertices), std::move(hs), k, true, vol);
}

FrameHull hull_3d(const std::vector<Vec>& y, const std::array<std::size_t, 4>& seed, double tol) {
  return Hull3(y, tol).run(seed);
}

}  // namespace

Polytope convex_hull_of(std::span<const Creation> points, std::size_t dim, double tol) {
  if (points.empty()) return Polytope::empty(dim);
  for (const auto& p : points) {
    if (p.dim() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "point of dimension " + std::to_string(p.dim()) +
                                                    " in hull of dimension " + std::to_string(dim));
    }
  }
  const std::vector<Creation> pts = dedupe(points, tol);
  Frame frame = affine_frame(pts, dim, tol);

  for (;;) {
    const std::size_t k = frame.basis.size();
    if (k > kMaxExactDim) {
      auto ids = extreme_points_lp(pts, tol);
      std::vector<Creation> vertices;
      for (std::size_t i : ids) vertices.push_back(pts[i]);
      return Polytope(dim, std::move(vertices), {}, k, false, 0.0);
    }

    std::vector<Vec> y;
    y.reserve(pts.size());
    for (const auto& p : pts) y.push_back(project(frame, p.coords()));

    FrameHull fh;
    if (k == 0) {
      fh.vertices = {0};
    } else if (k == 1) {
      fh = hull_1d(y);
    } else if (k == 2) {
      fh = hull_2d(y, tol);
    } else {
      fh = hull_3d(y, {frame.pivots[0], frame.pivots[1], frame.pivots[2], frame.pivots[3]}, tol);
    }
    if (k >= 2 && fh.vertices.size() < k + 1) {
      // Flat within tolerance after all; retry one dimension lower.
      frame.basis.pop_back();
      frame.pivots.pop_back();
      continue;
    }
    return assemble(pts, frame, std::move(fh), dim);
  }
}

Polytope convex_hull(const Corpus& corpus, double tol) {
  if (corpus.empty()) throw Error(ErrorCode::EmptyCorpus, "convex hull of an empty corpus");
  return convex_hull_of(corpus.items(), corpus.dim(), tol);
}

Polytope axis_box(std::span<const double> lo, std::span<const double> hi, double tol) {
  const std::size_t d = lo.size();
  if (d == 0 || hi.size() != d) throw Error(ErrorCode::DimensionMismatch, "box bounds disagree in dimension");
  for (std::size_t k = 0; k < d; ++k) {
    if (!(lo[k] <= hi[k])) throw Error(ErrorCode::InvalidArgument, "box requires lo <= hi");
  }
  if (d > 16) throw Error(ErrorCode::UnsupportedDimension, "box corner enumeration limited to d <= 16");

  std::vector<Creation> corners;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    Vec c(d);
    bool redundant = false;
    for (std::size_t k = 0; k < d; ++k) {
      const bool upper = (mask >> k) & 1U;
      if (upper && hi[k] == lo[k]) redundant = true;
      c[k] = upper ? hi[k] : lo[k];
    }
    if (!redundant) corners.emplace_back(std::move(c));
  }
  if (d <= kMaxExactDim) return convex_hull_of(corners, d, tol);

  std::vector<Halfspace> hs;
  std::size_t affine = 0;
  for (std::size_t k = 0; k < d; ++k) {
    Vec up(d, 0.0), down(d, 0.0);
    up[k] = 1.0;
    down[k] = -1.0;
    hs.push_back({std::move(up), hi[k]});
    hs.push_back({std::move(down), -lo[k]});
    if (hi[k] - lo[k] > tol) ++affine;
  }
  double vol = 1.0;
  for (std::size_t k = 0; k < d; ++k) vol *= hi[k] - lo[k];
  return Polytope(d, std::move(corners), std::move(hs), affine, true, vol);
}

Polytope halfspace_intersection(std::span<const Polytope> polytopes, double tol) {
  if (polytopes.empty()) throw Error(ErrorCode::InvalidArgument, "intersection of an empty list");
  const std::size_t d = polytopes.front().dim();
  for (const auto& p : polytopes) {
    if (p.dim() != d) throw Error(ErrorCode::DimensionMismatch, "intersection of polytopes of different dimension");
  }
  for (const auto& p : polytopes) {
    if (p.is_empty()) return Polytope::empty(d);
  }
  if (d > kMaxExactDim || std::any_of(polytopes.begin(), polytopes.end(), [](const Polytope& p) { return !p.has_hrep(); })) {
    throw Error(ErrorCode::UnsupportedDimension, "halfspace intersection needs H-representations (d <= 3)");
  }

  std::size_t start = 0;
  for (std::size_t i = 1; i < polytopes.size(); ++i) {
    if (polytopes[i].vertices().size() < polytopes[start].vertices().size()) start = i;
  }
  std::vector<Creation> pts(polytopes[start].vertices().begin(), polytopes[start].vertices().end());
  std::vector<double> r;
  for (std::size_t i = 0; i < polytopes.size(); ++i) {
    if (i == start) continue;
    for (const auto& h : polytopes[i].halfspaces()) {
      r.resize(pts.size());
      double worst = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < pts.size(); ++j) {
        r[j] = h.residual(pts[j].coords());
        worst = std::max(worst, r[j]);
      }
      if (worst <= tol) continue;

      std::vector<Creation> next;
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (r[j] <= tol) next.push_back(pts[j]);
      }
      if (next.empty()) return Polytope::empty(d);
      for (std::size_t u = 0; u < pts.size(); ++u) {
        if (r[u] >= -tol) continue;
        for (std::size_t v = 0; v < pts.size(); ++v) {
          if (r[v] <= tol) continue;
          const double t = r[u] / (r[u] - r[v]);
          Vec x(d);
          for (std::size_t k = 0; k < d; ++k) x[k] = pts[u][k] + t * (pts[v][k] - pts[u][k]);
          next.emplace_back(std::move(x));
        }
      }
      const Polytope clipped = convex_hull_of(next, d, tol);
      pts.assign(clipped.vertices().begin(), clipped.vertices().end());
    }
  }
  return convex_hull_of(pts, d, tol);
}

}  // namespace permgen

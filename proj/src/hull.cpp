#include "sumset/hull.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <utility>

namespace sumset {

namespace {

using Vec = RationalVector;

void require_dim(int dim) {
  if (dim < 1 || dim > kMaxHullDim) {
    throw InputError("exact hulls are supported for 1 <= d <= 3, got d = " + std::to_string(dim));
  }
}

Vec sub(const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vec cross(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Rational dot(const Vec& a, const Vec& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

// Twice the signed area of triangle (o, a, b).
Rational cross2(const Vec& o, const Vec& a, const Vec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Six times the signed volume of tetrahedron (a, b, c, p).
Rational orient3(const Vec& a, const Vec& b, const Vec& c, const Vec& p) {
  return dot(cross(sub(b, a), sub(c, a)), sub(p, a));
}

std::vector<Vec> sorted_unique(std::vector<Vec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Andrew's monotone chain; strict turns drop collinear boundary points.
std::vector<std::size_t> hull2_indices(const std::vector<Vec>& pts) {
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return pts[i][0] < pts[j][0] || (pts[i][0] == pts[j][0] && pts[i][1] < pts[j][1]);
  });
  order.erase(std::unique(order.begin(), order.end(),
                          [&](std::size_t i, std::size_t j) { return pts[i] == pts[j]; }),
              order.end());
  if (order.size() <= 2) return order;
  std::vector<std::size_t> h(2 * order.size());
  std::size_t k = 0;
  for (std::size_t i : order) {
    while (k >= 2 && cross2(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
    h[k++] = i;
  }
  for (std::size_t idx = order.size() - 1, t = k + 1; idx-- > 0;) {
    std::size_t i = order[idx];
    while (k >= t && cross2(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
    h[k++] = i;
  }
  h.resize(k - 1);
  // All collinear: the chain degenerates to the two end points.
  if (h.size() == 2 || (h.size() > 2 && [&] {
        for (std::size_t i = 2; i < h.size(); ++i) {
          if (cross2(pts[h[0]], pts[h[1]], pts[h[i]]) != 0) return false;
        }
        return true;
      }())) {
    return {order.front(), order.back()};
  }
  return h;
}

struct Face {
  std::size_t a, b, c;
  bool alive = true;
};

struct Hull3 {
  std::vector<Vec> pts;
  std::vector<Face> faces;
};

// Incremental 3D hull over points known to span R^3. Faces are oriented with
// outward normals (b-a) x (c-a).
Hull3 hull3_full(std::vector<Vec> pts, std::size_t i0, std::size_t i1, std::size_t i2, std::size_t i3) {
  Hull3 h{std::move(pts), {}};
  const auto& P = h.pts;
  if (orient3(P[i0], P[i1], P[i2], P[i3]) > 0) std::swap(i1, i2);
  h.faces = {{i0, i1, i2}, {i0, i3, i1}, {i1, i3, i2}, {i2, i3, i0}};
  for (std::size_t p = 0; p < P.size(); ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    std::set<std::pair<std::size_t, std::size_t>> visible_edges;
    std::vector<std::size_t> visible;
    for (std::size_t f = 0; f < h.faces.size(); ++f) {
      const Face& F = h.faces[f];
      if (!F.alive) continue;
      if (orient3(P[F.a], P[F.b], P[F.c], P[p]) > 0) {
        visible.push_back(f);
        visible_edges.insert({F.a, F.b});
        visible_edges.insert({F.b, F.c});
        visible_edges.insert({F.c, F.a});
      }
    }
    if (visible.empty()) continue;
    std::vector<Face> added;
    for (std::size_t f : visible) {
      Face& F = h.faces[f];
      F.alive = false;
      for (auto [u, v] : {std::pair{F.a, F.b}, std::pair{F.b, F.c}, std::pair{F.c, F.a}}) {
        if (!visible_edges.count({v, u})) added.push_back({u, v, p});
      }
    }
    h.faces.insert(h.faces.end(), added.begin(), added.end());
  }
  std::erase_if(h.faces, [](const Face& f) { return !f.alive; });
  return h;
}

Vec face_normal(const Hull3& h, const Face& f) {
  return cross(sub(h.pts[f.b], h.pts[f.a]), sub(h.pts[f.c], h.pts[f.a]));
}

// A hull vertex is extreme iff the normals of its incident faces span R^3;
// otherwise it sits inside an edge or a flat facet.
std::vector<Vec> extreme_vertices(const Hull3& h) {
  std::map<std::size_t, std::vector<Vec>> normals;
  for (const auto& f : h.faces) {
    Vec n = face_normal(h, f);
    for (std::size_t v : {f.a, f.b, f.c}) normals[v].push_back(n);
  }
  std::vector<Vec> out;
  for (const auto& [v, ns] : normals) {
    bool spans = false;
    for (std::size_t i = 1; i < ns.size() && !spans; ++i) {
      Vec c = cross(ns[0], ns[i]);
      if (is_zero(c)) continue;
      for (std::size_t j = 1; j < ns.size() && !spans; ++j) spans = dot(c, ns[j]) != 0;
    }
    if (spans) out.push_back(h.pts[v]);
  }
  return sorted_unique(std::move(out));
}

struct Hull3Result {
  std::vector<Vec> vertices;
  Rational volume{0};
};

Hull3Result hull3(const std::vector<Vec>& input) {
  std::vector<Vec> pts = sorted_unique(input);
  if (pts.size() <= 1) return {pts, 0};
  std::size_t i1 = 1;
  Vec dir = sub(pts[1], pts[0]);
  std::size_t i2 = pts.size();
  for (std::size_t i = 2; i < pts.size(); ++i) {
    if (!is_zero(cross(dir, sub(pts[i], pts[0])))) {
      i2 = i;
      break;
    }
  }
  if (i2 == pts.size()) return {{pts.front(), pts.back()}, 0};  // collinear: lex extremes
  Vec normal = cross(dir, sub(pts[i2], pts[0]));
  std::size_t i3 = pts.size();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (dot(normal, sub(pts[i], pts[0])) != 0) {
      i3 = i;
      break;
    }
  }
  if (i3 == pts.size()) {
    // Coplanar: drop a coordinate the normal does not vanish on and hull in 2D.
    std::size_t drop = normal[0] != 0 ? 0 : (normal[1] != 0 ? 1 : 2);
    std::vector<Vec> flat;
    for (const auto& p : pts) {
      Vec q;
      for (std::size_t k = 0; k < 3; ++k) {
        if (k != drop) q.push_back(p[k]);
      }
      flat.push_back(std::move(q));
    }
    std::vector<Vec> verts;
    for (std::size_t i : hull2_indices(flat)) verts.push_back(pts[i]);
    return {sorted_unique(std::move(verts)), 0};
  }
  Hull3 h = hull3_full(pts, 0, i1, i2, i3);
  Rational vol(0);
  const Vec& o = h.pts[0];
  for (const auto& f : h.faces) vol += orient3(o, h.pts[f.a], h.pts[f.b], h.pts[f.c]);
  return {extreme_vertices(h), vol / 6};
}

Rational shoelace(const std::vector<Vec>& ccw) {
  if (ccw.size() < 3) return 0;
  Rational twice(0);
  for (std::size_t i = 0; i < ccw.size(); ++i) {
    const Vec& a = ccw[i];
    const Vec& b = ccw[(i + 1) % ccw.size()];
    twice += a[0] * b[1] - a[1] * b[0];
  }
  return twice / 2;
}

void check_points(int dim, const std::vector<Vec>& points) {
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != dim) {
      throw InputError("point has " + std::to_string(p.size()) + " coordinates, expected " +
                       std::to_string(dim));
    }
  }
}

}  // namespace

Polytope hull_of(int dim, const std::vector<RationalVector>& points) {
  require_dim(dim);
  if (points.empty()) throw InputError("hull of an empty point set");
  check_points(dim, points);
  Polytope out{dim, {}};
  if (dim == 1) {
    auto [lo, hi] = std::minmax_element(points.begin(), points.end());
    out.vertices.push_back(*lo);
    if (*hi != *lo) out.vertices.push_back(*hi);
  } else if (dim == 2) {
    for (std::size_t i : hull2_indices(points)) out.vertices.push_back(points[i]);
  } else {
    out.vertices = hull3(points).vertices;
  }
  return out;
}

Rational hull_volume(const Polytope& p) {
  require_dim(p.dim);
  if (p.vertices.empty()) return 0;
  if (p.dim == 1) {
    auto [lo, hi] = std::minmax_element(p.vertices.begin(), p.vertices.end());
    return (*hi)[0] - (*lo)[0];
  }
  if (p.dim == 2) {
    std::vector<Vec> ccw;
    for (std::size_t i : hull2_indices(p.vertices)) ccw.push_back(p.vertices[i]);
    return shoelace(ccw);
  }
  return hull3(p.vertices).volume;
}

bool contains(const Polytope& p, const RationalVector& x) {
  if (static_cast<int>(x.size()) != p.dim) throw InputError("membership query has wrong dimension");
  if (std::find(p.vertices.begin(), p.vertices.end(), x) != p.vertices.end()) return true;
  std::vector<Vec> pts = p.vertices;
  pts.push_back(x);
  Polytope grown = hull_of(p.dim, pts);
  return std::find(grown.vertices.begin(), grown.vertices.end(), x) == grown.vertices.end();
}

std::vector<RationalVector> hull_candidates(const GridSet& s) {
  const int dim = s.dim();
  auto d = static_cast<std::size_t>(dim);
  std::vector<std::int64_t> pts = dilate_anchors(dim, s.flat(), 2);
  for (std::size_t axis = 0; axis < d; ++axis) {
    // Rotate the axis to the last position, sort, keep both ends of each line.
    std::vector<std::int64_t> rot(pts.size());
    for (std::size_t i = 0; i < pts.size(); i += d) {
      for (std::size_t k = 0; k < d; ++k) rot[i + k] = pts[i + (k + axis + 1) % d];
    }
    normalize_anchors(dim, rot);
    std::vector<std::int64_t> kept;
    std::size_t n = rot.size() / d;
    for (std::size_t i = 0; i < n; ++i) {
      auto same_line = [&](std::size_t a, std::size_t b) {
        return std::equal(rot.begin() + a * d, rot.begin() + a * d + d - 1, rot.begin() + b * d);
      };
      bool first = i == 0 || !same_line(i - 1, i);
      bool last = i + 1 == n || !same_line(i, i + 1);
      if (!first && !last) continue;
      for (std::size_t k = 0; k < d; ++k) kept.push_back(rot[i * d + (k + d - axis - 1) % d]);
    }
    pts = std::move(kept);
  }
  normalize_anchors(dim, pts);
  std::vector<RationalVector> out;
  out.reserve(pts.size() / d);
  for (std::size_t i = 0; i < pts.size(); i += d) {
    RationalVector p(d);
    for (std::size_t k = 0; k < d; ++k) p[k] = make_rational(pts[i + k], s.resolution());
    out.push_back(std::move(p));
  }
  return out;
}

Polytope hull_of(const GridSet& s, const std::vector<RationalVector>& extra_points) {
  require_dim(s.dim());
  std::vector<RationalVector> pts = hull_candidates(s);
  pts.insert(pts.end(), extra_points.begin(), extra_points.end());
  return hull_of(s.dim(), pts);
}

Rational hull_ratio(const GridSet& s, const std::vector<RationalVector>& extra_points) {
  Rational vol = volume(s);
  if (vol == 0) throw InputError("hull ratio of a set with zero volume");
  return hull_volume(hull_of(s, extra_points)) / vol;
}

Rational hull_ratio(const IntervalSet& s, const std::vector<Rational>& extra_points) {
  Rational m = s.measure();
  if (m == 0) throw InputError("hull ratio of a set with zero measure");
  Rational lo = s.min(), hi = s.max();
  for (const auto& x : extra_points) {
    lo = min(lo, x);
    hi = max(hi, x);
  }
  return (hi - lo) / m;
}

}  // namespace sumset

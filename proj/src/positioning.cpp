#include "sumset/positioning.hpp"

#include <algorithm>
#include <stdexcept>

namespace sumset {

namespace {

using Vec = RationalVector;

Rational dot(const Vec& a, const Vec& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec unit(std::size_t dim, std::size_t axis, const Rational& scale = 1) {
  Vec e(dim, Rational(0));
  e[axis] = scale;
  return e;
}

void add_to(Vec& a, const Vec& b, const Rational& s = 1) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i] * s;
}

}  // namespace

Rational determinant(Matrix m) {
  const std::size_t n = m.size();
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

AffineMap AffineMap::identity(int dim) {
  auto d = static_cast<std::size_t>(dim);
  AffineMap m{Matrix(d, Vec(d, Rational(0))), Vec(d, Rational(0))};
  for (std::size_t i = 0; i < d; ++i) m.linear[i][i] = 1;
  return m;
}

Vec AffineMap::apply_linear(const Vec& x) const {
  Vec out(x.size(), Rational(0));
  for (std::size_t i = 0; i < linear.size(); ++i) out[i] = dot(linear[i], x);
  return out;
}

Vec AffineMap::apply(const Vec& x) const {
  Vec out = apply_linear(x);
  add_to(out, offset);
  return out;
}

AffineMap AffineMap::after(const AffineMap& first) const {
  const std::size_t d = linear.size();
  AffineMap out{Matrix(d, Vec(d, Rational(0))), apply(first.offset)};
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) out.linear[i][j] += linear[i][k] * first.linear[k][j];
    }
  }
  return out;
}

AffineMap AffineMap::inverse() const {
  const std::size_t d = linear.size();
  Matrix a = linear;
  Matrix inv = identity(static_cast<int>(d)).linear;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    while (pivot < d && a[pivot][col] == 0) ++pivot;
    if (pivot == d) throw std::domain_error("affine map is singular");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Rational s = a[col][col];
    for (std::size_t c = 0; c < d; ++c) {
      a[col][c] /= s;
      inv[col][c] /= s;
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (std::size_t c = 0; c < d; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  AffineMap out{inv, Vec(d, Rational(0))};
  Vec off = out.apply_linear(offset);
  for (auto& x : off) x = -x;
  out.offset = std::move(off);
  return out;
}

Polytope apply(const AffineMap& map, const Polytope& p) {
  std::vector<Vec> pts;
  pts.reserve(p.vertices.size());
  for (const auto& v : p.vertices) pts.push_back(map.apply(v));
  return hull_of(p.dim, pts);
}

Polytope translate(const Polytope& p, const Vec& v) {
  AffineMap m = AffineMap::identity(p.dim);
  m.offset = v;
  return apply(m, p);
}

namespace {

struct Range {
  Rational lo, hi;
};

Range range_along(const std::vector<Vec>& pts, std::size_t axis) {
  Range r{pts.front()[axis], pts.front()[axis]};
  for (const auto& p : pts) {
    r.lo = min(r.lo, p[axis]);
    r.hi = max(r.hi, p[axis]);
  }
  return r;
}

// Point of [lo, hi] closest to zero.
Rational nearest_zero(const Rational& lo, const Rational& hi) {
  if (lo > 0) return lo;
  if (hi < 0) return hi;
  return 0;
}

// Lexicographically smallest point among those attaining value `target` on `axis`.
Vec lex_smallest_at(const std::vector<Vec>& pts, std::size_t axis, const Rational& target) {
  std::optional<Vec> best;
  for (const auto& p : pts) {
    if (p[axis] == target && (!best || p < *best)) best = p;
  }
  return *best;
}

// Translation along the axis that puts both directional extremes into one body:
// zero if one range already contains the other, else the smallest-magnitude shift.
Rational alignment_shift(const Range& x, const Range& y) {
  bool x_holds_y = x.lo <= y.lo && y.hi <= x.hi;
  bool y_holds_x = y.lo <= x.lo && x.hi <= y.hi;
  if (x_holds_y || y_holds_x) return 0;
  Rational wx = x.hi - x.lo, wy = y.hi - y.lo;
  std::optional<Rational> best;
  if (wx >= wy) best = nearest_zero(x.lo - y.lo, x.hi - y.hi);
  if (wy >= wx) {
    Rational c = nearest_zero(x.hi - y.hi, x.lo - y.lo);
    if (!best || abs(c) < abs(*best)) best = c;
  }
  return *best;
}

}  // namespace

PositioningResult position(const Polytope& x, const Polytope& y, const PositioningOptions& options) {
  if (x.dim != y.dim) throw InputError("positioning inputs differ in dimension");
  const int dim = x.dim;
  if (dim < 1 || dim > kMaxHullDim) {
    throw InputError("positioning is supported for 1 <= d <= 3, got d = " + std::to_string(dim));
  }
  Polytope hx = hull_of(dim, x.vertices), hy = hull_of(dim, y.vertices);
  if (hull_volume(hx) == 0 || hull_volume(hy) == 0) {
    throw InputError("positioning needs full-dimensional inputs (zero width in some direction)");
  }
  const auto d = static_cast<std::size_t>(dim);
  std::vector<Vec> xs = hx.vertices, ys = hy.vertices;
  AffineMap map = AffineMap::identity(dim);
  Vec shift(d, Rational(0));
  PositioningCertificate cert;

  for (std::size_t j = 0; j < d; ++j) {
    // (a) slide Y along e_j so one body holds both extremes.
    Range rx = range_along(xs, j), ry = range_along(ys, j);
    Rational c = alignment_shift(rx, ry);
    if (c != 0) {
      for (auto& p : ys) p[j] += c;
      for (auto& cp : cert.points) {
        if (!cp.in_u) cp.p[j] += c;
      }
      shift[j] += c;
      ry.lo += c;
      ry.hi += c;
    }
    bool in_x = rx.lo <= ry.lo && ry.hi <= rx.hi;
    const std::vector<Vec>& holder = in_x ? xs : ys;
    Range rh = in_x ? rx : ry;
    Vec q = lex_smallest_at(holder, j, rh.lo);
    Vec r = lex_smallest_at(holder, j, rh.hi);

    // (b) translate everything by -q.
    for (auto* pts : {&xs, &ys}) {
      for (auto& p : *pts) add_to(p, q, -1);
    }
    for (auto& cp : cert.points) add_to(cp.p, q, -1);
    add_to(map.offset, q, -1);
    for (auto& h : cert.hyperplanes) h.offset -= dot(h.normal, q);
    add_to(r, q, -1);

    // (c) record H_j = {x_j = 0} and lambda_j.
    Rational lambda = r[j];
    cert.lambdas.push_back(lambda);
    cert.hyperplanes.push_back({unit(d, j), Rational(0)});
    cert.points.push_back({Vec(d, Rational(0)), in_x});

    // (d) shear x -> x - x_j w with w = r/lambda - e_j.
    Vec w = r;
    for (auto& v : w) v /= lambda;
    w[j] -= 1;
    auto shear = [&](Vec& p) {
      Rational t = p[j];
      if (t != 0) add_to(p, w, -t);
    };
    for (auto* pts : {&xs, &ys}) {
      for (auto& p : *pts) shear(p);
    }
    for (auto& cp : cert.points) shear(cp.p);
    shear(shift);
    shear(map.offset);
    // Linear part: each column of the matrix is a vector that gets sheared.
    for (std::size_t col = 0; col < d; ++col) {
      Vec column(d);
      for (std::size_t i = 0; i < d; ++i) column[i] = map.linear[i][col];
      shear(column);
      for (std::size_t i = 0; i < d; ++i) map.linear[i][col] = column[i];
    }
    // Hyperplanes transform by the inverse transpose: n -> n + e_j <w, n>.
    for (auto& h : cert.hyperplanes) h.normal[j] += dot(w, h.normal);

    if (options.check_each_step) {
      cert.u = hull_of(dim, xs);
      cert.v = hull_of(dim, ys);
      VerdictReport partial = verify_certificate_prefix(cert, static_cast<int>(j + 1));
      if (!partial.holds) {
        throw std::logic_error("positioning invariant broken after axis " + std::to_string(j + 1));
      }
    }
  }
  cert.u = hull_of(dim, xs);
  cert.v = hull_of(dim, ys);
  return {map, shift, cert};
}

VerdictReport verify_certificate_prefix(const PositioningCertificate& c, int axes) {
  VerdictReport r;
  r.kind = "positioning-certificate";
  const int dim = c.u.dim;
  const auto d = static_cast<std::size_t>(dim);
  const auto m = static_cast<std::size_t>(axes);
  if (c.v.dim != dim || c.points.size() < m || c.lambdas.size() < m || c.hyperplanes.size() < m ||
      m > d) {
    throw InputError("certificate is incomplete for " + std::to_string(axes) + " axes");
  }
  std::string text;
  for (const auto& l : c.lambdas) text += to_string(l) + ";";
  r.inputs_digest = digest(text);

  bool p1 = true, p2 = true;
  for (std::size_t i = 0; i < m; ++i) {
    const Polytope& body = c.points[i].in_u ? c.u : c.v;
    Vec far = c.points[i].p;
    far[i] += c.lambdas[i];
    if (!contains(body, c.points[i].p) || !contains(body, far)) {
      p1 = false;
      r.notes.push_back("property 1 fails on axis " + std::to_string(i + 1));
    }
    const Hyperplane& h = c.hyperplanes[i];
    Rational width = c.lambdas[i] * h.normal[i];
    bool ok = c.lambdas[i] > 0;
    for (const Polytope* body2 : {&c.u, &c.v}) {
      for (const auto& w : body2->vertices) {
        Rational s = dot(h.normal, w) - h.offset;
        if (s < 0 || s > width) ok = false;
      }
    }
    if (!ok) {
      p2 = false;
      r.notes.push_back("property 2 fails on axis " + std::to_string(i + 1));
    }
  }

  // The slabs {offset <= <n_i, x> <= offset + lambda_i <n_i, e_i>} restricted to
  // the first m coordinates form a parallelotope of volume
  // prod(lambda_i <n_i, e_i>) / |det N|.
  Matrix n(m, Vec(m));
  Rational widths(1), lambda_product(1);
  bool block = true;  // normals of processed axes must not involve later coordinates
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) n[i][k] = c.hyperplanes[i].normal[k];
    for (std::size_t k = m; k < d; ++k) {
      if (c.hyperplanes[i].normal[k] != 0) block = false;
    }
    widths *= c.lambdas[i] * c.hyperplanes[i].normal[i];
    lambda_product *= c.lambdas[i];
  }
  Rational det = determinant(n);
  bool p3 = block && det != 0;
  Rational slab_volume(0);
  if (p3) {
    slab_volume = abs(widths / det);
    p3 = slab_volume == lambda_product;
  }
  if (!p3) r.notes.push_back("property 3 fails: slab intersection volume differs from prod lambda_i");

  r.set("property_1", p1 ? 1 : 0);
  r.set("property_2", p2 ? 1 : 0);
  r.set("property_3", p3 ? 1 : 0);
  r.set("slab_volume", slab_volume);
  r.set("lambda_product", lambda_product);
  r.bound = lambda_product;
  r.holds = p1 && p2 && p3;
  r.tight = r.holds;
  return r;
}

VerdictReport verify_certificate(const PositioningCertificate& c) {
  return verify_certificate_prefix(c, c.u.dim);
}

EqualizedCertificate equalize_lambdas(const PositioningCertificate& c, std::optional<Rational> target) {
  const auto d = c.lambdas.size();
  Rational goal = target ? *target : *std::max_element(c.lambdas.begin(), c.lambdas.end());
  if (goal <= 0) throw InputError("equalization target must be positive");
  AffineMap scaling = AffineMap::identity(static_cast<int>(d));
  for (std::size_t i = 0; i < d; ++i) scaling.linear[i][i] = goal / c.lambdas[i];
  EqualizedCertificate out{scaling, c};
  auto& e = out.certificate;
  e.u = apply(scaling, c.u);
  e.v = apply(scaling, c.v);
  for (auto& cp : e.points) cp.p = scaling.apply(cp.p);
  for (std::size_t i = 0; i < d; ++i) {
    e.lambdas[i] = goal;
    auto& h = e.hyperplanes[i];
    // Normals pull back through the inverse diagonal, then renormalize.
    for (std::size_t k = 0; k < d; ++k) h.normal[k] /= scaling.linear[k][k];
    Rational lead = h.normal[i];
    for (auto& x : h.normal) x /= lead;
    h.offset /= lead;
  }
  return out;
}

}  // namespace sumset

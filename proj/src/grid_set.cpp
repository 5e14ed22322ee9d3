#include "sumset/grid_set.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <numeric>

namespace sumset {

namespace {

template <std::size_t D>
void normalize_fixed(std::vector<std::int64_t>& flat) {
  using Key = std::array<std::int64_t, D>;
  std::size_t n = flat.size() / D;
  std::vector<Key> keys(n);
  std::memcpy(keys.data(), flat.data(), n * sizeof(Key));
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  flat.resize(keys.size() * D);
  std::memcpy(flat.data(), keys.data(), keys.size() * sizeof(Key));
}

void normalize_generic(int dim, std::vector<std::int64_t>& flat) {
  auto d = static_cast<std::size_t>(dim);
  std::size_t n = flat.size() / d;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](std::size_t i, std::size_t j) {
    return std::lexicographical_compare(flat.begin() + i * d, flat.begin() + (i + 1) * d,
                                        flat.begin() + j * d, flat.begin() + (j + 1) * d);
  };
  std::sort(order.begin(), order.end(), less);
  std::vector<std::int64_t> out;
  out.reserve(flat.size());
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t i = order[k];
    if (!out.empty() && std::equal(out.end() - d, out.end(), flat.begin() + i * d)) continue;
    out.insert(out.end(), flat.begin() + i * d, flat.begin() + (i + 1) * d);
  }
  flat = std::move(out);
}

void check_cells(std::size_t n, const Limits& limits) {
  if (n > limits.max_cells) {
    throw CapacityError("working set of " + std::to_string(n) + " cells exceeds the cap of " +
                        std::to_string(limits.max_cells) + " cells");
  }
}

void check_resolution(std::int64_t q, const Limits& limits) {
  if (q > limits.max_resolution) {
    throw CapacityError("resolution " + std::to_string(q) + " exceeds the cap of " +
                        std::to_string(limits.max_resolution));
  }
}

std::int64_t integral_or_throw(const Rational& r, const char* what) {
  if (r.get_den() != 1) throw InputError(std::string(what) + " is not aligned to the grid");
  return to_int64(r.get_num());
}

}  // namespace

void normalize_anchors(int dim, std::vector<std::int64_t>& flat) {
  switch (dim) {
    case 1: normalize_fixed<1>(flat); break;
    case 2: normalize_fixed<2>(flat); break;
    case 3: normalize_fixed<3>(flat); break;
    case 4: normalize_fixed<4>(flat); break;
    default: normalize_generic(dim, flat); break;
  }
}

GridSet::GridSet(int dim, std::int64_t q) : dim_(dim), q_(q) {
  if (dim < 1) throw InputError("dimension must be at least 1");
  if (q < 1) throw InputError("resolution q must be at least 1");
}

GridSet::GridSet(int dim, std::int64_t q, std::vector<std::int64_t> flat_anchors)
    : GridSet(dim, q) {
  if (flat_anchors.size() % static_cast<std::size_t>(dim) != 0) {
    throw InputError("anchor array length is not a multiple of the dimension");
  }
  flat_ = std::move(flat_anchors);
  normalize_anchors(dim_, flat_);
}

GridSet GridSet::from_cells(int dim, std::int64_t q, const std::vector<Anchor>& cells) {
  std::vector<std::int64_t> flat;
  flat.reserve(cells.size() * static_cast<std::size_t>(std::max(dim, 0)));
  for (const auto& c : cells) {
    if (static_cast<int>(c.size()) != dim) {
      throw InputError("cell has " + std::to_string(c.size()) + " coordinates, expected " +
                       std::to_string(dim));
    }
    flat.insert(flat.end(), c.begin(), c.end());
  }
  return GridSet(dim, q, std::move(flat));
}

GridSet GridSet::box(std::int64_t q, const Anchor& lo, const Anchor& hi) {
  if (lo.size() != hi.size() || lo.empty()) throw InputError("box corners disagree in dimension");
  int dim = static_cast<int>(lo.size());
  std::size_t count = 1;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (hi[i] <= lo[i]) throw InputError("box has empty extent along an axis");
    count *= static_cast<std::size_t>(hi[i] - lo[i]);
  }
  std::vector<std::int64_t> flat;
  flat.reserve(count * lo.size());
  Anchor cur = lo;
  while (true) {
    flat.insert(flat.end(), cur.begin(), cur.end());
    int axis = dim - 1;
    while (axis >= 0 && ++cur[axis] == hi[axis]) {
      cur[axis] = lo[axis];
      --axis;
    }
    if (axis < 0) break;
  }
  return GridSet(dim, q, std::move(flat));
}

GridSet GridSet::box(std::int64_t q, const RationalVector& lo, const RationalVector& hi) {
  if (lo.size() != hi.size() || lo.empty()) throw InputError("box corners disagree in dimension");
  Anchor a(lo.size()), b(hi.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] < hi[i])) {
      throw InputError("box is degenerate along axis " + std::to_string(i) +
                       " (measure-zero sets are not grid-representable)");
    }
    a[i] = integral_or_throw(lo[i] * q, "box corner");
    b[i] = integral_or_throw(hi[i] * q, "box corner");
  }
  return box(q, a, b);
}

GridSet GridSet::unit_cube(int dim, std::int64_t q) {
  return box(q, Anchor(static_cast<std::size_t>(dim), 0), Anchor(static_cast<std::size_t>(dim), q));
}

std::vector<Anchor> GridSet::cells() const {
  std::vector<Anchor> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    auto c = cell(i);
    out.emplace_back(c.begin(), c.end());
  }
  return out;
}

bool GridSet::contains_cell(std::span<const std::int64_t> anchor) const {
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    auto c = cell(mid);
    if (std::lexicographical_compare(c.begin(), c.end(), anchor.begin(), anchor.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo == size()) return false;
  auto c = cell(lo);
  return std::equal(c.begin(), c.end(), anchor.begin(), anchor.end());
}

Anchor GridSet::lower() const {
  if (empty()) throw std::logic_error("bounds of an empty GridSet");
  Anchor out(cell(0).begin(), cell(0).end());
  for (std::size_t i = 1; i < size(); ++i) {
    auto c = cell(i);
    for (int k = 0; k < dim_; ++k) out[k] = std::min(out[k], c[k]);
  }
  return out;
}

Anchor GridSet::upper() const {
  if (empty()) throw std::logic_error("bounds of an empty GridSet");
  Anchor out(cell(0).begin(), cell(0).end());
  for (std::size_t i = 1; i < size(); ++i) {
    auto c = cell(i);
    for (int k = 0; k < dim_; ++k) out[k] = std::max(out[k], c[k]);
  }
  return out;
}

Rational volume(const GridSet& s) {
  Integer denom = 1;
  for (int i = 0; i < s.dim(); ++i) denom *= Integer(static_cast<long>(s.resolution()));
  return make_rational(Integer(static_cast<unsigned long>(s.size())), denom);
}

std::vector<std::int64_t> dilate_anchors(int dim, const std::vector<std::int64_t>& sorted_flat,
                                         std::int64_t side) {
  if (side <= 1) return sorted_flat;
  auto d = static_cast<std::size_t>(dim);
  std::vector<std::int64_t> cur = sorted_flat;
  // Separable: grow along one axis at a time, deduplicating between passes.
  for (std::size_t axis = 0; axis < d; ++axis) {
    std::vector<std::int64_t> next;
    next.reserve(cur.size() * static_cast<std::size_t>(side));
    for (std::size_t i = 0; i < cur.size(); i += d) {
      for (std::int64_t o = 0; o < side; ++o) {
        next.insert(next.end(), cur.begin() + i, cur.begin() + i + d);
        next[next.size() - d + axis] = checked_add(next[next.size() - d + axis], o);
      }
    }
    normalize_anchors(dim, next);
    cur = std::move(next);
  }
  return cur;
}

GridSet refine(const GridSet& s, std::int64_t m, const Limits& limits) {
  if (m < 1) throw InputError("refinement factor must be at least 1");
  if (m == 1) return s;
  std::int64_t q = checked_mul(s.resolution(), m);
  check_resolution(q, limits);
  std::size_t per = 1;
  for (int i = 0; i < s.dim(); ++i) per *= static_cast<std::size_t>(m);
  check_cells(s.size() * per, limits);
  std::vector<std::int64_t> scaled(s.flat().size());
  for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] = checked_mul(s.flat()[i], m);
  return GridSet(s.dim(), q, dilate_anchors(s.dim(), scaled, m));
}

GridSet refine_to(const GridSet& s, std::int64_t target, const Limits& limits) {
  if (target % s.resolution() != 0) {
    throw std::logic_error("target resolution is not a multiple of the current one");
  }
  return refine(s, target / s.resolution(), limits);
}

GridSet translate(const GridSet& s, const RationalVector& v, const Limits& limits) {
  if (static_cast<int>(v.size()) != s.dim()) throw InputError("translation vector has wrong dimension");
  std::int64_t m = 1;
  for (const auto& x : v) {
    Rational shifted = x * s.resolution();
    m = lcm64(m, to_int64(shifted.get_den()));
  }
  GridSet fine = refine(s, m, limits);
  std::vector<std::int64_t> shift(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational cellshift = v[i] * fine.resolution();
    shift[i] = to_int64(cellshift.get_num());
  }
  std::vector<std::int64_t> flat = fine.flat();
  for (std::size_t i = 0; i < flat.size(); ++i) {
    flat[i] = checked_add(flat[i], shift[i % shift.size()]);
  }
  return GridSet(s.dim(), fine.resolution(), std::move(flat));
}

GridSet scale(const GridSet& s, const RationalScalar& t, const Limits& limits) {
  if (t.value() <= 0) throw InputError("scale factor must be positive");
  std::int64_t p = to_int64(t.numerator());
  std::int64_t r = to_int64(t.denominator());
  std::int64_t q = checked_mul(s.resolution(), r);
  check_resolution(q, limits);
  std::vector<std::int64_t> flat(s.flat().size());
  for (std::size_t i = 0; i < flat.size(); ++i) flat[i] = checked_mul(s.flat()[i], p);
  auto out = dilate_anchors(s.dim(), flat, p);
  check_cells(out.size() / static_cast<std::size_t>(s.dim()), limits);
  return GridSet(s.dim(), q, std::move(out));
}

namespace {

std::pair<GridSet, GridSet> at_common_resolution(const GridSet& a, const GridSet& b,
                                                 const Limits& limits) {
  std::int64_t q = lcm64(a.resolution(), b.resolution());
  return {refine_to(a, q, limits), refine_to(b, q, limits)};
}

}  // namespace

void require_same_dim(const GridSet& a, const GridSet& b) {
  if (a.dim() != b.dim()) {
    throw InputError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                     std::to_string(b.dim()));
  }
}

GridSet unite(const GridSet& a, const GridSet& b, const Limits& limits) {
  require_same_dim(a, b);
  auto [x, y] = at_common_resolution(a, b, limits);
  std::vector<std::int64_t> flat = x.flat();
  flat.insert(flat.end(), y.flat().begin(), y.flat().end());
  return GridSet(a.dim(), x.resolution(), std::move(flat));
}

bool same_set(const GridSet& a, const GridSet& b) {
  if (a.dim() != b.dim()) return false;
  auto [x, y] = at_common_resolution(a, b, {});
  return x.flat() == y.flat();
}

bool is_subset(const GridSet& a, const GridSet& b) {
  require_same_dim(a, b);
  auto [x, y] = at_common_resolution(a, b, {});
  // Both arrays are sorted, so a merge walk suffices.
  std::size_t j = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto c = x.cell(i);
    while (j < y.size() &&
           std::lexicographical_compare(y.cell(j).begin(), y.cell(j).end(), c.begin(), c.end())) {
      ++j;
    }
    if (j == y.size() || !std::equal(c.begin(), c.end(), y.cell(j).begin())) return false;
  }
  return true;
}

std::vector<RationalVector> cell_corners(const GridSet& s) {
  auto corners = dilate_anchors(s.dim(), s.flat(), 2);
  auto d = static_cast<std::size_t>(s.dim());
  std::vector<RationalVector> out;
  out.reserve(corners.size() / d);
  for (std::size_t i = 0; i < corners.size(); i += d) {
    RationalVector p(d);
    for (std::size_t k = 0; k < d; ++k) p[k] = make_rational(corners[i + k], s.resolution());
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace sumset

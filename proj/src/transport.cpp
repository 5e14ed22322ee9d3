#include "sumset/transport.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "sumset/minkowski.hpp"

namespace sumset {

namespace {

Anchor base_of(std::span<const std::int64_t> cell, int axis) {
  Anchor base;
  base.reserve(cell.size() - 1);
  for (std::size_t i = 0; i < cell.size(); ++i) {
    if (static_cast<int>(i) != axis) base.push_back(cell[i]);
  }
  return base;
}

void push_cell(std::vector<std::int64_t>& flat, const Anchor& base, int axis, std::int64_t c) {
  for (std::size_t i = 0, k = 0; i <= base.size(); ++i) {
    if (static_cast<int>(i) == axis) {
      flat.push_back(c);
    } else {
      flat.push_back(base[k++]);
    }
  }
}

// Integer cell range [lo*q, hi*q) covered by a part of a fibre.
std::pair<std::int64_t, std::int64_t> cell_range(const Interval& part, std::int64_t q) {
  Rational lo = part.lo * q, hi = part.hi * q;
  if (lo.get_den() != 1 || hi.get_den() != 1) {
    throw std::logic_error("fibre endpoint is not on the grid");
  }
  return {to_int64(lo.get_num()), to_int64(hi.get_num())};
}

}  // namespace

Rational FiberDecomposition::base_cell_area() const {
  return 1 / pow(Rational(q), static_cast<unsigned>(dim - 1));
}

RationalVector FiberDecomposition::center(const Anchor& base) const {
  RationalVector x;
  x.reserve(base.size());
  for (auto a : base) x.push_back(make_rational(2 * a + 1, 2 * q));
  return x;
}

Anchor FiberDecomposition::anchor_of(const RationalVector& x) const {
  if (static_cast<int>(x.size()) != dim - 1) throw InputError("plan point has the wrong dimension");
  Anchor a;
  for (const auto& c : x) {
    Rational v = c * q - make_rational(1, 2);
    if (v.get_den() != 1) throw InputError("plan point " + to_string(c) + " is not a base-cell center");
    a.push_back(to_int64(v.get_num()));
  }
  return a;
}

Rational FiberDecomposition::total() const {
  Rational sum(0);
  for (const auto& [base, fiber] : fibers) sum += fiber.measure();
  return sum * base_cell_area();
}

FiberDecomposition decompose(const GridSet& s, int axis) {
  if (axis < 0 || axis >= s.dim()) {
    throw InputError("axis " + std::to_string(axis + 1) + " is out of range for d = " + std::to_string(s.dim()));
  }
  std::map<Anchor, std::vector<Interval>> parts;
  const std::int64_t q = s.resolution();
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto cell = s.cell(i);
    auto c = cell[static_cast<std::size_t>(axis)];
    parts[base_of(cell, axis)].push_back({make_rational(c, q), make_rational(c + 1, q)});
  }
  FiberDecomposition f{s.dim(), axis, q, {}};
  for (auto& [base, list] : parts) f.fibers.emplace(base, IntervalSet(std::move(list)));
  return f;
}

GridSet reassemble(const FiberDecomposition& f) {
  std::vector<std::int64_t> flat;
  for (const auto& [base, fiber] : f.fibers) {
    for (const auto& part : fiber.parts()) {
      auto [lo, hi] = cell_range(part, f.q);
      for (auto c = lo; c < hi; ++c) push_cell(flat, base, f.axis, c);
    }
  }
  return GridSet(f.dim, f.q, std::move(flat));
}

Marginal marginal(const FiberDecomposition& f) {
  Marginal out;
  out.reserve(f.fibers.size());
  const Rational area = f.base_cell_area();
  for (const auto& [base, fiber] : f.fibers) {
    if (fiber.measure() > 0) out.push_back({f.center(base), fiber.measure() * area});
  }
  return out;
}

namespace {

Rational squared_distance(const RationalVector& x, const RationalVector& y) {
  Rational s(0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    Rational d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

Rational total_mass(const Marginal& mu) {
  Rational s(0);
  for (const auto& a : mu) s += a.mass;
  return s;
}

TransportPlan monotone_plan(Marginal a, Marginal b) {
  auto by_x = [](const Atom& l, const Atom& r) { return l.x < r.x; };
  std::sort(a.begin(), a.end(), by_x);
  std::sort(b.begin(), b.end(), by_x);
  TransportPlan plan;
  std::size_t i = 0, j = 0;
  Rational ra = a.empty() ? Rational(0) : a[0].mass;
  Rational rb = b.empty() ? Rational(0) : b[0].mass;
  while (i < a.size() && j < b.size()) {
    Rational take = min(ra, rb);
    if (take > 0) plan.pairs.push_back({a[i].x, b[j].x, take});
    ra -= take;
    rb -= take;
    if (ra == 0 && ++i < a.size()) ra = a[i].mass;
    if (rb == 0 && ++j < b.size()) rb = b[j].mass;
  }
  return plan;
}

// Successive shortest paths on the complete bipartite graph. Ground costs are
// scaled to integers so Dijkstra runs on exact int64 distances; flows are rational.
TransportPlan min_cost_flow(const Marginal& a, const Marginal& b) {
  const std::size_t n = a.size(), m = b.size();
  Integer den(1);
  for (const auto* mu : {&a, &b}) {
    for (const auto& atom : *mu) {
      for (const auto& c : atom.x) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    }
  }
  std::vector<std::vector<std::int64_t>> cost(n, std::vector<std::int64_t>(m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      Rational c = squared_distance(a[i].x, b[j].x) * den * den;
      cost[i][j] = to_int64(c.get_num());
    }
  }
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<Rational> supply(n), demand(m);
  for (std::size_t i = 0; i < n; ++i) supply[i] = a[i].mass;
  for (std::size_t j = 0; j < m; ++j) demand[j] = b[j].mass;
  std::vector<std::vector<Rational>> flow(n, std::vector<Rational>(m, Rational(0)));
  std::vector<std::int64_t> pot(n + m, 0);
  for (std::size_t j = 0; j < m; ++j) {
    std::int64_t lo = kInf;
    for (std::size_t i = 0; i < n; ++i) lo = std::min(lo, cost[i][j]);
    pot[n + j] = lo;
  }

  const std::size_t max_rounds = 4 * (n + m) * (n + m) + 16;
  for (std::size_t round = 0;; ++round) {
    if (std::all_of(supply.begin(), supply.end(), [](const Rational& s) { return s == 0; })) break;
    if (round == max_rounds) throw std::logic_error("min-cost flow did not converge");
    std::vector<std::int64_t> dist(n + m, kInf);
    std::vector<std::ptrdiff_t> prev(n + m, -1);
    std::vector<char> done(n + m, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (supply[i] > 0) dist[i] = 0;
    }
    std::size_t target = n + m;
    std::int64_t reach = 0;
    for (;;) {
      std::size_t u = n + m;
      for (std::size_t v = 0; v < n + m; ++v) {
        if (!done[v] && dist[v] < kInf && (u == n + m || dist[v] < dist[u])) u = v;
      }
      if (u == n + m) throw std::logic_error("min-cost flow: no augmenting path");
      done[u] = 1;
      if (u >= n && demand[u - n] > 0) {
        target = u;
        reach = dist[u];
        break;
      }
      if (u < n) {
        for (std::size_t j = 0; j < m; ++j) {
          std::size_t v = n + j;
          if (done[v]) continue;
          std::int64_t nd = dist[u] + cost[u][j] + pot[u] - pot[v];
          if (nd < dist[v]) {
            dist[v] = nd;
            prev[v] = static_cast<std::ptrdiff_t>(u);
          }
        }
      } else {
        std::size_t j = u - n;
        for (std::size_t i = 0; i < n; ++i) {
          if (done[i] || flow[i][j] == 0) continue;
          std::int64_t nd = dist[u] - cost[i][j] + pot[u] - pot[i];
          if (nd < dist[i]) {
            dist[i] = nd;
            prev[i] = static_cast<std::ptrdiff_t>(u);
          }
        }
      }
    }
    for (std::size_t v = 0; v < n + m; ++v) pot[v] += std::min(dist[v], reach);

    Rational push = demand[target - n];
    std::size_t v = target;
    while (prev[v] >= 0) {
      auto u = static_cast<std::size_t>(prev[v]);
      if (u >= n) push = min(push, flow[v][u - n]);  // reverse edge sink u -> source v
      v = u;
    }
    const std::size_t source = v;
    push = min(push, supply[source]);
    supply[source] -= push;
    demand[target - n] -= push;
    v = target;
    while (prev[v] >= 0) {
      auto u = static_cast<std::size_t>(prev[v]);
      if (u < n) {
        flow[u][v - n] += push;
      } else {
        flow[v][u - n] -= push;
      }
      v = u;
    }
  }

  TransportPlan plan;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (flow[i][j] > 0) plan.pairs.push_back({a[i].x, b[j].x, flow[i][j]});
    }
  }
  return plan;
}

}  // namespace

Rational plan_cost(const std::vector<TransportPair>& pairs) {
  Rational c(0);
  for (const auto& p : pairs) c += p.m * squared_distance(p.x, p.y);
  return c;
}

TransportPlan optimal_transport(const Marginal& mu_a, const Marginal& mu_b) {
  Rational ta = total_mass(mu_a), tb = total_mass(mu_b);
  if (ta != tb) {
    throw InputError("marginals have unequal totals " + to_string(ta) + " and " + to_string(tb));
  }
  std::size_t base_dim = !mu_a.empty() ? mu_a.front().x.size() : mu_b.empty() ? 0 : mu_b.front().x.size();
  TransportPlan plan = base_dim <= 1 ? monotone_plan(mu_a, mu_b) : min_cost_flow(mu_a, mu_b);
  plan.cost = plan_cost(plan.pairs);
  return plan;
}

Rational marginal_residual(const TransportPlan& plan, const Marginal& mu_a, const Marginal& mu_b) {
  std::map<RationalVector, Rational> row, col;
  for (const auto& atom : mu_a) row[atom.x] += atom.mass;
  for (const auto& atom : mu_b) col[atom.x] += atom.mass;
  for (const auto& p : plan.pairs) {
    row[p.x] -= p.m;
    col[p.y] -= p.m;
  }
  Rational worst(0);
  for (const auto* side : {&row, &col}) {
    for (const auto& [x, r] : *side) worst = max(worst, abs(r));
  }
  return worst;
}

IntervalSet fiber_plus(const IntervalSet& i, const IntervalSet& j, const RationalScalar& t) {
  if (i.empty() || j.empty()) throw InputError("fibre sum needs nonempty fibres");
  const Rational& s = t.value();
  const Rational u = 1 - s;
  IntervalSet low = translate(scale(j, u), s * i.min());
  IntervalSet high = translate(scale(i, s), u * j.max());
  return unite(low, high);
}

namespace {

const IntervalSet& fiber_at(const FiberDecomposition& f, const RationalVector& x) {
  auto it = f.fibers.find(f.anchor_of(x));
  if (it == f.fibers.end() || it->second.empty()) {
    throw InputError("plan carries mass over an empty fibre");
  }
  return it->second;
}

void require_compatible(const FiberDecomposition& a, const FiberDecomposition& b) {
  if (a.dim != b.dim || a.axis != b.axis) {
    throw InputError("fibre decompositions differ in dimension or axis");
  }
}

}  // namespace

VerdictReport rho_t_check(const FiberDecomposition& a, const FiberDecomposition& b,
                          const TransportPlan& plan, const RationalScalar& t) {
  t.require_open_unit();
  require_compatible(a, b);
  if (marginal_residual(plan, marginal(a), marginal(b)) != 0) {
    throw InputError("transport plan does not match the marginals");
  }
  const Rational& s = t.value();
  const Rational u = 1 - s;
  Rational integral(0);
  for (const auto& p : plan.pairs) {
    Rational la = fiber_at(a, p.x).measure(), lb = fiber_at(b, p.y).measure();
    integral += (s * la + u * lb) * (s * p.m / la + u * p.m / lb);
  }
  VerdictReport r;
  r.kind = "rho-t";
  r.inputs_digest = digest(to_json(plan).dump() + ";t=" + to_string(t));
  r.bound = a.total();
  r.set("integral", integral);
  r.set("A", a.total());
  r.set("B", b.total());
  r.set("pairs", Rational(static_cast<long>(plan.pairs.size())));
  r.holds = integral >= r.bound;
  r.tight = integral == r.bound;
  return r;
}

S1Record s1_construct(const FiberDecomposition& a, const FiberDecomposition& b, const TransportPlan& plan,
                      const RationalScalar& t) {
  t.require_open_unit();
  require_compatible(a, b);
  const Rational& s = t.value();
  const Rational u = 1 - s;
  S1Record rec;
  for (const auto& p : plan.pairs) {
    const IntervalSet& i = fiber_at(a, p.x);
    const IntervalSet& j = fiber_at(b, p.y);
    S1Fiber f;
    f.x = p.x;
    f.y = p.y;
    f.mass = p.m;
    for (std::size_t k = 0; k < p.x.size(); ++k) f.position.push_back(s * p.x[k] + u * p.y[k]);
    f.fiber = fiber_plus(i, j, t);
    f.base_measure = s * p.m / i.measure() + u * p.m / j.measure();
    if (f.fiber.measure() != s * i.measure() + u * j.measure()) rec.per_pair_identity = false;
    rec.measure += f.base_measure * f.fiber.measure();
    rec.fibers.push_back(std::move(f));
  }
  return rec;
}

GridSet s1_grid(const FiberDecomposition& a, const FiberDecomposition& b, const TransportPlan& plan,
                const RationalScalar& t, const Limits& limits) {
  t.require_open_unit();
  require_compatible(a, b);
  if (a.q != b.q) throw InputError("s1_grid needs both decompositions at the same resolution");
  const std::int64_t p = to_int64(t.numerator()), r = to_int64(t.denominator());
  const std::int64_t qr = checked_mul(a.q, r);
  if (qr > limits.max_resolution) {
    throw CapacityError("resolution " + std::to_string(qr) + " exceeds the cap " +
                        std::to_string(limits.max_resolution));
  }
  const int base_dim = a.dim - 1;
  std::vector<std::int64_t> flat;
  for (const auto& pair : plan.pairs) {
    Anchor alpha = a.anchor_of(pair.x), beta = b.anchor_of(pair.y);
    IntervalSet fiber = fiber_plus(fiber_at(a, pair.x), fiber_at(b, pair.y), t);
    Anchor corner(static_cast<std::size_t>(base_dim));
    for (int k = 0; k < base_dim; ++k) {
      auto kk = static_cast<std::size_t>(k);
      corner[kk] = checked_add(checked_mul(p, alpha[kk]), checked_mul(r - p, beta[kk]));
    }
    // Odometer over the base block corner + {0..r-1}^(d-1).
    Anchor offset(static_cast<std::size_t>(base_dim), 0);
    for (;;) {
      Anchor base(corner);
      for (std::size_t k = 0; k < base.size(); ++k) base[k] += offset[k];
      for (const auto& part : fiber.parts()) {
        auto [lo, hi] = cell_range(part, qr);
        for (auto c = lo; c < hi; ++c) push_cell(flat, base, a.axis, c);
      }
      if (flat.size() / static_cast<std::size_t>(a.dim) > limits.max_cells) {
        throw CapacityError("S^1 grid exceeds the cell cap of " + std::to_string(limits.max_cells));
      }
      std::size_t k = 0;
      while (k < offset.size() && ++offset[k] == r) offset[k++] = 0;
      if (k == offset.size()) break;
    }
  }
  return GridSet(a.dim, qr, std::move(flat));
}

TransportRun run_transport(const GridSet& a, const GridSet& b, const RationalScalar& t, int axis,
                           const Limits& limits) {
  t.require_open_unit();
  require_same_dim(a, b);
  std::int64_t q = lcm64(a.resolution(), b.resolution());
  GridSet ga = refine_to(a, q, limits), gb = refine_to(b, q, limits);
  TransportRun run;
  run.a = decompose(ga, axis);
  run.b = decompose(gb, axis);
  run.plan = optimal_transport(marginal(run.a), marginal(run.b));
  run.rho = rho_t_check(run.a, run.b, run.plan, t);
  run.s1 = s1_construct(run.a, run.b, run.plan, t);
  GridSet s1 = s1_grid(run.a, run.b, run.plan, t, limits);
  run.s1_contained = is_subset(s1, scaled_sum(ga, gb, t, limits));
  return run;
}

Json to_json(const TransportPlan& plan) {
  Json pairs = Json::array();
  for (const auto& p : plan.pairs) {
    Json x = Json::array(), y = Json::array();
    for (const auto& c : p.x) x.push_back(to_string(c));
    for (const auto& c : p.y) y.push_back(to_string(c));
    pairs.push_back({{"x", x}, {"y", y}, {"m", to_string(p.m)}});
  }
  return {{"pairs", pairs}, {"cost", to_string(plan.cost)}};
}

}  // namespace sumset

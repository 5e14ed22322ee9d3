#pragma once

// Theorem-level quantities and consistency checkers for the sharp doubling
// thresholds: delta_t, the t^d and 1^d + ... + k^d thresholds, the explicit
// constants L and C = L^d, the long-fibre claim, Plunnecke, the sharp families
// A = [0,1]^d, B = A u {v}, and a seeded sweep driver.
//
// A checker "holds" unless it found a counterexample, i.e. an instance that
// meets the hypothesis of a statement but violates its conclusion.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sumset/grid_set.hpp"
#include "sumset/intervals.hpp"
#include "sumset/rational.hpp"
#include "sumset/verdict.hpp"

namespace sumset {

/// |tA + (1-t)B| / |A| - 1; requires volume(a) == volume(b) > 0.
Rational delta_t(const GridSet& a, const GridSet& b, const RationalScalar& t, const Limits& limits = {});

/// t^d.
Rational distinct_threshold(int d, const RationalScalar& t);
/// 1^d + 2^d + ... + k^d.
Rational iterated_threshold(int d, int k);
/// L = (2 / ((1-t) t))^(4d).
Rational constant_l(int d, const RationalScalar& t);
/// C = L^d.
Rational constant_c(int d, const RationalScalar& t);

struct SharpFamily {
  int dim = 2;
  std::optional<RationalScalar> t;  // two-set family
  std::optional<int> k;             // iterated family
  RationalVector v;
};

/// Closed-form evaluation from the disjoint box decomposition
///   two-set:  tA + (1-t)B = A u ([0,t]^d + (1-t)v)
///   iterated: k.A = u_{i=0..k} (iv + [0,k-i]^d)
/// cross-checked against grid computations at each resolution in grid_qs
/// (where v is on the grid). The far point is a single cell on the grid, so
/// the grid value exceeds the closed form by exactly that cell's contribution.
VerdictReport sharp_family_exact(const SharpFamily& family, const std::vector<std::int64_t>& grid_qs = {2, 4, 8},
                                 const Limits& limits = {});

/// Translations of b tried when minimizing |co(A u (B + v))| / |A|.
std::vector<RationalVector> alignment_candidates(const GridSet& a, const GridSet& b);

VerdictReport check_thm_distinct(const GridSet& a, const GridSet& b, const RationalScalar& t,
                                 const Limits& limits = {});

/// `c` defaults to L^d at t = 1/2, which is reported as a heuristic choice.
VerdictReport check_thm_iterated(const GridSet& a, int k, std::optional<Rational> c = std::nullopt,
                                 const Limits& limits = {});
/// 1D version on interval sets (points allowed).
VerdictReport check_thm_iterated(const IntervalSet& a, int k, std::optional<Rational> c = std::nullopt);

/// |m.X| <= (|X+Y|/|Y|)^m |Y|.
VerdictReport check_plunnecke(const GridSet& x, const GridSet& y, int m, const Limits& limits = {});
VerdictReport check_plunnecke(const IntervalSet& x, const IntervalSet& y, int m);

/// If every axis has a fibre of tA or (1-t)B of length >= sqrt(L), then
/// |tA + (1-t)B| >= 2|A|. Lengths are taken after scaling both sets to
/// |A| = 1. Only instances with L >= L_{d,t} can refute it.
VerdictReport check_long_fibre_claim(const GridSet& a, const GridSet& b, const RationalScalar& t,
                                     const Rational& l, const Limits& limits = {});

struct SweepConfig {
  std::string checker;
  std::uint64_t count = 100;
  std::uint64_t seed = 0;
  std::optional<RationalScalar> t;  // default: cycle 1/2, 1/3, 1/4
  std::optional<int> k;             // default: cycle 2, 3
  std::optional<int> m;             // default: cycle 1, 2, 3
  Limits limits;
};

struct SweepRecord {
  std::uint64_t seed = 0;
  std::uint64_t instance = 0;
  int d = 1;
  std::optional<std::int64_t> q;
  std::string t_or_k;
  Rational primary;
  Rational threshold;
  std::optional<Rational> hull_ratio;
  bool holds = true;
  bool tight = false;
  VerdictReport report;
};

const std::vector<std::string>& sweep_checkers();

/// Runs the named checker on `count` seeded instances (for sharp-family: the
/// fixed grid t in {1/2,1/3,1/4} x d in {1,2,3}). Throws InputError on an
/// unknown checker name.
std::vector<SweepRecord> sweep(const SweepConfig& config);

/// One instance of a sweep; `on_record` style callers can stream.
SweepRecord sweep_instance(const SweepConfig& config, std::uint64_t index);

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const SweepRecord& record);

}  // namespace sumset

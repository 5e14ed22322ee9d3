#pragma once

// Exact rational arithmetic shared by every module. Rationals are GMP
// mpq_class values kept in canonical form; they are serialized as "p/q"
// strings (the denominator is always written, so zero is "0/1").

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sumset {

using Rational = mpq_class;
using Integer = mpz_class;
using RationalVector = std::vector<Rational>;

/// Raised for malformed user input (bad rationals, bad JSON fields, violated
/// preconditions of a checker). The CLI maps it to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// Parses "p/q", "p" or "-p/q". Throws InputError on anything else.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form.
std::string to_string(const Rational& r);

Integer floor(const Rational& r);
Rational pow(const Rational& base, unsigned exponent);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// Converts to int64, throwing std::overflow_error if it does not fit.
std::int64_t to_int64(const Integer& z);

/// Checked int64 arithmetic for cell anchors.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

std::int64_t lcm64(std::int64_t a, std::int64_t b);

/// A scalar in lowest terms, used for the interpolation parameter t.
class RationalScalar {
 public:
  RationalScalar() = default;
  explicit RationalScalar(Rational value);
  RationalScalar(std::int64_t num, std::int64_t den);

  static RationalScalar parse(std::string_view text);

  const Rational& value() const { return value_; }
  Integer numerator() const { return value_.get_num(); }
  Integer denominator() const { return value_.get_den(); }

  /// 1 - t.
  RationalScalar complement() const;

  /// Throws InputError unless 0 < t < 1.
  void require_open_unit() const;

  friend bool operator==(const RationalScalar& a, const RationalScalar& b) {
    return a.value_ == b.value_;
  }

 private:
  Rational value_{0};
};

std::string to_string(const RationalScalar& t);

}  // namespace sumset

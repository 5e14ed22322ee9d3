#include "sumset/rational.hpp"

#include <cctype>
#include <numeric>
#include <stdexcept>

namespace sumset {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw InputError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational make_rational(std::int64_t num, std::int64_t den) {
  return make_rational(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  std::string owned(s.front() == '+' ? s.substr(1) : s);
  return Integer(owned, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' ||
      den.front() == '+') {
    throw InputError("malformed rational '" + std::string(text) + "' (expected \"p/q\")");
  }
  Integer d = parse_integer(den);
  if (d == 0) throw InputError("rational '" + std::string(text) + "' has zero denominator");
  return make_rational(parse_integer(num), d);
}

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Integer floor(const Rational& r) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational out(1);
  for (unsigned i = 0; i < exponent; ++i) out *= base;
  return out;
}

Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::int64_t to_int64(const Integer& z) {
  static_assert(sizeof(long) == sizeof(std::int64_t));
  if (!mpz_fits_slong_p(z.get_mpz_t())) {
    throw std::overflow_error("coordinate " + z.get_str() + " exceeds 64-bit range");
  }
  return static_cast<std::int64_t>(mpz_get_si(z.get_mpz_t()));
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("cell coordinate overflow");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("cell coordinate overflow");
  return out;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  return checked_mul(a / std::gcd(a, b), b);
}

RationalScalar::RationalScalar(Rational value) : value_(std::move(value)) { value_.canonicalize(); }

RationalScalar::RationalScalar(std::int64_t num, std::int64_t den)
    : value_(make_rational(num, den)) {}

RationalScalar RationalScalar::parse(std::string_view text) {
  return RationalScalar(parse_rational(text));
}

RationalScalar RationalScalar::complement() const { return RationalScalar(Rational(1) - value_); }

void RationalScalar::require_open_unit() const {
  if (value_ <= 0 || value_ >= 1) {
    throw InputError("t = " + to_string(value_) + " must lie strictly between 0 and 1");
  }
}

std::string to_string(const RationalScalar& t) { return to_string(t.value()); }

}  // namespace sumset

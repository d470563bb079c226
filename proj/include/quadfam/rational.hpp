#pragma once

// Exact signed fractions backed by GMP. Every value is kept in canonical form
// (positive denominator, gcd(|num|, den) == 1, zero as 0/1).

#include <quadfam/errors.hpp>

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace quadfam {

using BigInt = mpz_class;

class Rational {
public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : q_(value) {}   // NOLINT(google-explicit-constructor)
  explicit Rational(const BigInt& value) : q_(value) {}

  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw InvalidInput("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }

  /// The exact value of a finite double.
  static Rational from_double(double value) {
    if (!std::isfinite(value)) throw InvalidInput("cannot convert a non-finite double to a rational");
    return Rational(mpq_class(value));
  }

  /// Parses "p/q" or "p" (optional leading '-').
  static Rational parse(std::string_view text) {
    const std::string s(text);
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0) throw InvalidInput("not a rational: '" + s + "'");
    if (q.get_den() == 0) throw InvalidInput("rational with zero denominator: '" + s + "'");
    q.canonicalize();
    return Rational(std::move(q));
  }

  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  /// "p/q", or "p" when the denominator is one.
  std::string to_string() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  /// Nearest double, ties to even. Subnormal results may be double-rounded.
  double to_double() const {
    if (is_zero()) return 0.0;
    BigInt num = abs(q_.get_num());
    const BigInt& den = q_.get_den();
    const long shift = 55 - (static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                             static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)));
    BigInt scaled_num = num;
    BigInt scaled_den = den;
    if (shift >= 0) {
      mpz_mul_2exp(scaled_num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
    } else {
      mpz_mul_2exp(scaled_den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
    }
    BigInt quot;
    BigInt rem;
    mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), scaled_num.get_mpz_t(), scaled_den.get_mpz_t());
    // quot now has 55 or 56 significant bits; round to 53.
    const auto extra = static_cast<mp_bitcnt_t>(mpz_sizeinbase(quot.get_mpz_t(), 2) - 53);
    BigInt low;
    mpz_fdiv_r_2exp(low.get_mpz_t(), quot.get_mpz_t(), extra);
    mpz_fdiv_q_2exp(quot.get_mpz_t(), quot.get_mpz_t(), extra);
    BigInt half;
    mpz_setbit(half.get_mpz_t(), extra - 1);
    const int cmp_half = cmp(low, half);
    if (cmp_half > 0 || (cmp_half == 0 && (rem != 0 || mpz_odd_p(quot.get_mpz_t())))) ++quot;
    const double mantissa = quot.get_d();  // at most 2^53, exact
    const double magnitude = std::ldexp(mantissa, static_cast<int>(extra) - static_cast<int>(shift));
    return sign() < 0 ? -magnitude : magnitude;
  }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  friend Rational abs(const Rational& r) { return Rational(mpq_class(::abs(r.q_))); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw InvalidInput("division by zero rational");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

  const mpq_class& raw() const { return q_; }

private:
  explicit Rational(mpq_class q) : q_(std::move(q)) {}

  mpq_class q_;
};

inline Rational pow(const Rational& base, unsigned exponent) {
  BigInt num;
  BigInt den;
  mpz_pow_ui(num.get_mpz_t(), base.numerator().get_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.denominator().get_mpz_t(), exponent);
  return Rational(num, den);
}

inline BigInt factorial(unsigned n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

/// Exact decimal rendering with `decimals` fractional digits, round half to even.
inline std::string to_decimal(const Rational& r, int decimals) {
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(decimals));
  const BigInt num = abs(r.numerator()) * scale;
  const BigInt den = r.denominator();
  BigInt q;
  BigInt rem;
  mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  const int c = cmp(BigInt(2 * rem), den);
  if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t()))) ++q;
  std::string digits = q.get_str();
  if (decimals > 0) {
    if (digits.size() <= static_cast<std::size_t>(decimals))
      digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
    digits.insert(digits.size() - static_cast<std::size_t>(decimals), ".");
  }
  if (r.sign() < 0 && q != 0) digits.insert(0, "-");
  return digits;
}

}  // namespace quadfam

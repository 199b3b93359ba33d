#pragma once

/**
 * @file dyadic.hpp
 * @brief Closed intervals [lo, hi] with dyadic endpoints and outward rounding.
 *
 * Every operation rounds lo toward -inf and hi toward +inf, so the exact
 * real result of the operation applied to any points of the operands lies
 * inside the output. The result precision is the larger operand precision.
 */

#include <algorithm>
#include <cstdint>
#include <string>

#include <gmpxx.h>
#include <mpfr.h>

#include "qkfib/bigfloat.hpp"
#include "qkfib/params.hpp"

namespace qkfib {

class DyadicInterval {
 public:
  explicit DyadicInterval(Bits bits = 64) : lo_(bits), hi_(bits) {}

  /// Tightest enclosure of an integer / rational at the given precision.
  DyadicInterval(Bits bits, const mpz_class& v) : lo_(bits, v, MPFR_RNDD), hi_(bits, v, MPFR_RNDU) {}
  DyadicInterval(Bits bits, const mpq_class& v) : lo_(bits, v, MPFR_RNDD), hi_(bits, v, MPFR_RNDU) {}
  DyadicInterval(Bits bits, long v) : DyadicInterval(bits, mpz_class(v)) {}

  /// Takes endpoints as given; throws if lo > hi.
  DyadicInterval(BigFloat lo, BigFloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ > hi_) throw InternalError("interval endpoints out of order");
  }

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  Bits bits() const { return std::max(lo_.precision(), hi_.precision()); }

  /// Same enclosure carried at a different precision (widened if it shrinks).
  DyadicInterval with_bits(Bits bits) const {
    DyadicInterval r(bits);
    mpfr_set(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_set(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
  }

  /// hi - lo, rounded up.
  BigFloat width() const {
    BigFloat w(bits() + 2);
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    return w;
  }

  /// Exact midpoint as a rational.
  mpq_class midpoint() const { return (lo_.to_rational() + hi_.to_rational()) / 2; }

  /// max(|lo|, |hi|), rounded up.
  BigFloat magnitude() const {
    BigFloat a = abs(lo_), b = abs(hi_);
    return a > b ? a : b;
  }

  bool contains(const mpq_class& x) const {
    return mpfr_cmp_q(lo_.get(), x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), x.get_mpq_t()) >= 0;
  }
  bool contains(const mpz_class& x) const {
    return mpfr_cmp_z(lo_.get(), x.get_mpz_t()) <= 0 && mpfr_cmp_z(hi_.get(), x.get_mpz_t()) >= 0;
  }
  bool contains(const DyadicInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }

  friend DyadicInterval operator+(const DyadicInterval& a, const DyadicInterval& b) {
    DyadicInterval r(std::max(a.bits(), b.bits()));
    mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
  }

  friend DyadicInterval operator-(const DyadicInterval& a, const DyadicInterval& b) {
    DyadicInterval r(std::max(a.bits(), b.bits()));
    mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
    return r;
  }

  friend DyadicInterval operator-(const DyadicInterval& a) {
    DyadicInterval r(a.bits());
    mpfr_neg(r.lo_.get(), a.hi_.get(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), a.lo_.get(), MPFR_RNDU);
    return r;
  }

  friend DyadicInterval operator*(const DyadicInterval& a, const DyadicInterval& b) {
    const Bits bits = std::max(a.bits(), b.bits());
    DyadicInterval r(bits);
    BigFloat t(bits);
    bool first = true;
    for (const BigFloat* x : {&a.lo_, &a.hi_})
      for (const BigFloat* y : {&b.lo_, &b.hi_}) {
        mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
        if (first || t < r.lo_) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
        if (first || t > r.hi_) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
        first = false;
      }
    return r;
  }

  /// Throws PoleError when the divisor contains zero.
  friend DyadicInterval operator/(const DyadicInterval& a, const DyadicInterval& b) {
    if (b.contains_zero()) throw PoleError("interval division by an interval containing zero");
    const Bits bits = std::max(a.bits(), b.bits());
    DyadicInterval r(bits);
    BigFloat t(bits);
    bool first = true;
    for (const BigFloat* x : {&a.lo_, &a.hi_})
      for (const BigFloat* y : {&b.lo_, &b.hi_}) {
        mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDD);
        if (first || t < r.lo_) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDU);
        if (first || t > r.hi_) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
        first = false;
      }
    return r;
  }

  DyadicInterval& operator+=(const DyadicInterval& b) { return *this = *this + b; }
  DyadicInterval& operator-=(const DyadicInterval& b) { return *this = *this - b; }
  DyadicInterval& operator*=(const DyadicInterval& b) { return *this = *this * b; }

  /// Multiplication by 2^e is exact on dyadic endpoints.
  DyadicInterval scaled_pow2(long e) const {
    DyadicInterval r(bits());
    mpfr_mul_2si(r.lo_.get(), lo_.get(), e, MPFR_RNDD);
    mpfr_mul_2si(r.hi_.get(), hi_.get(), e, MPFR_RNDU);
    return r;
  }

 private:
  BigFloat lo_;
  BigFloat hi_;

  friend DyadicInterval square(const DyadicInterval& a);
  friend DyadicInterval sqrt(const DyadicInterval& a);
};

/// x^2, using that the square is nonnegative (tighter than x * x).
inline DyadicInterval square(const DyadicInterval& a) {
  DyadicInterval r(a.bits());
  if (a.lo_.sign() >= 0) {
    mpfr_sqr(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
    mpfr_sqr(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
  } else if (a.hi_.sign() <= 0) {
    mpfr_sqr(r.lo_.get(), a.hi_.get(), MPFR_RNDD);
    mpfr_sqr(r.hi_.get(), a.lo_.get(), MPFR_RNDU);
  } else {
    mpfr_set_zero(r.lo_.get(), 1);
    BigFloat m = a.magnitude();
    mpfr_sqr(r.hi_.get(), m.get(), MPFR_RNDU);
  }
  return r;
}

/// Square root; the interval must be nonnegative.
inline DyadicInterval sqrt(const DyadicInterval& a) {
  if (a.lo_.sign() < 0) throw DomainError("square root of an interval with negative part");
  DyadicInterval r(a.bits());
  mpfr_sqrt(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
  mpfr_sqrt(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
  return r;
}

/// x^n for any integer n (negative powers need 0 outside x).
inline DyadicInterval pow(const DyadicInterval& x, std::int64_t n) {
  if (n < 0) return DyadicInterval(x.bits(), 1L) / pow(x, -n);
  DyadicInterval result(x.bits(), 1L);
  DyadicInterval base = x;
  for (auto e = static_cast<std::uint64_t>(n); e != 0; e >>= 1) {
    if (e & 1) result *= base;
    if (e > 1) base = square(base);
  }
  return result;
}

/// a < b holds for every pair of points (a.hi < b.lo).
inline bool certainly_less(const DyadicInterval& a, const DyadicInterval& b) { return a.hi() < b.lo(); }
inline bool certainly_less(const DyadicInterval& a, const mpq_class& b) {
  return mpfr_cmp_q(a.hi().get(), b.get_mpq_t()) < 0;
}
inline bool certainly_less(const mpq_class& a, const DyadicInterval& b) {
  return mpfr_cmp_q(b.lo().get(), a.get_mpq_t()) > 0;
}
inline bool certainly_less(const DyadicInterval& a, const mpz_class& b) {
  return mpfr_cmp_z(a.hi().get(), b.get_mpz_t()) < 0;
}
inline bool certainly_less(const mpz_class& a, const DyadicInterval& b) {
  return mpfr_cmp_z(b.lo().get(), a.get_mpz_t()) > 0;
}

/// Decimal rendering "[lo, hi]" with lo rounded down and hi rounded up.
inline std::string to_string(const DyadicInterval& x, unsigned digits) {
  return "[" + to_decimal(x.lo(), digits, false) + ", " + to_decimal(x.hi(), digits, true) + "]";
}

/// Number of fractional decimal digits that resolve 2^-bits.
inline unsigned decimal_digits_for(Bits bits) {
  return static_cast<unsigned>(static_cast<double>(bits) * 0.30102999566398120) + 1;
}

}  // namespace qkfib

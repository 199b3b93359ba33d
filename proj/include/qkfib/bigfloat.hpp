#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

namespace qkfib {

using Bits = mpfr_prec_t;

/// Owning MPFR value. Arithmetic operators round to nearest; directed
/// rounding is available through the free functions taking an mpfr_rnd_t.
class BigFloat {
 public:
  explicit BigFloat(Bits precision = 64) {
    mpfr_init2(v_, precision);
    mpfr_set_zero(v_, 1);
  }
  BigFloat(Bits precision, long value) : BigFloat(precision) { mpfr_set_si(v_, value, MPFR_RNDN); }
  BigFloat(Bits precision, const mpz_class& value, mpfr_rnd_t rnd = MPFR_RNDN) : BigFloat(precision) {
    mpfr_set_z(v_, value.get_mpz_t(), rnd);
  }
  BigFloat(Bits precision, const mpq_class& value, mpfr_rnd_t rnd = MPFR_RNDN) : BigFloat(precision) {
    mpfr_set_q(v_, value.get_mpq_t(), rnd);
  }
  BigFloat(Bits precision, double value) : BigFloat(precision) { mpfr_set_d(v_, value, MPFR_RNDN); }

  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  Bits precision() const { return mpfr_get_prec(v_); }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Exact rational value (MPFR values are dyadic).
  mpq_class to_rational() const {
    if (is_zero()) return 0;
    mpz_class mantissa;
    const mpfr_exp_t e = mpfr_get_z_2exp(mantissa.get_mpz_t(), v_);
    mpq_class out(mantissa);
    if (e >= 0)
      mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    else
      mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    return out;
  }

  /// value == mantissa * 2^exponent exactly.
  std::pair<mpz_class, std::int64_t> to_dyadic() const {
    if (is_zero()) return {0, 0};
    mpz_class mantissa;
    const mpfr_exp_t e = mpfr_get_z_2exp(mantissa.get_mpz_t(), v_);
    return {mantissa, static_cast<std::int64_t>(e)};
  }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_add); }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_sub); }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_mul); }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_div); }
  friend BigFloat operator-(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  BigFloat& operator+=(const BigFloat& b) { return *this = *this + b; }
  BigFloat& operator-=(const BigFloat& b) { return *this = *this - b; }
  BigFloat& operator*=(const BigFloat& b) { return *this = *this * b; }
  BigFloat& operator/=(const BigFloat& b) { return *this = *this / b; }

  friend int compare(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_); }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return compare(a, b) < 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return compare(a, b) > 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return compare(a, b) >= 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return compare(a, b) == 0; }

 private:
  template <typename Op>
  static BigFloat binary(const BigFloat& a, const BigFloat& b, Op op) {
    BigFloat r(std::max(a.precision(), b.precision()));
    op(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }

  mpfr_t v_;
};

inline BigFloat abs(const BigFloat& a) {
  BigFloat r(a.precision());
  mpfr_abs(r.get(), a.get(), MPFR_RNDN);
  return r;
}

inline BigFloat sqrt(const BigFloat& a) {
  BigFloat r(a.precision());
  mpfr_sqrt(r.get(), a.get(), MPFR_RNDN);
  return r;
}

/// 2^exponent at the given precision.
inline BigFloat pow2(Bits precision, long exponent) {
  BigFloat r(precision, 1L);
  mpfr_mul_2si(r.get(), r.get(), exponent, MPFR_RNDN);
  return r;
}

/// Nearest integer (ties away from zero).
inline mpz_class round_to_integer(const BigFloat& a) {
  BigFloat r(a.precision());
  mpfr_round(r.get(), a.get());
  mpz_class out;
  mpfr_get_z(out.get_mpz_t(), r.get(), MPFR_RNDN);
  return out;
}

/// Fixed-point decimal of `value` with `digits` fractional digits, rounded
/// toward -inf (round_up = false) or +inf (round_up = true). Exact: works on
/// the dyadic representation with integer arithmetic.
inline std::string to_decimal(const BigFloat& value, unsigned digits, bool round_up) {
  const mpq_class exact = value.to_rational();
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  const mpq_class scaled = exact * scale;
  mpz_class q;
  if (round_up)
    mpz_cdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  else
    mpz_fdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  const bool negative = q < 0;
  mpz_class mag = abs(q);
  std::string s = mag.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  if (digits > 0) s.insert(s.size() - digits, ".");
  if (negative) s.insert(0, "-");
  return s;
}

}  // namespace qkfib

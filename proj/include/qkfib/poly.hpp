#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "qkfib/params.hpp"

namespace qkfib {

/// Integer polynomial, coefficients lowest degree first.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Integer> coefficients) : c_(std::move(coefficients)) { trim(); }

  const std::vector<Integer>& coefficients() const { return c_; }
  std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }
  const Integer& operator[](std::size_t i) const { return c_[i]; }

  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.c_.empty() || b.c_.empty()) return {};
    std::vector<Integer> out(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return IntPoly(std::move(out));
  }

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

  /// Derivative.
  IntPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Integer> out(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return IntPoly(std::move(out));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Integer> c_;
};

/// Phi(t) = t^k - q t^(k-1) - t^(k-2) - ... - t - 1.
class CharPoly {
 public:
  explicit CharPoly(const SequenceParams& p) : params_(p) {
    std::vector<Integer> c(static_cast<std::size_t>(p.k()) + 1, -1);
    c[static_cast<std::size_t>(p.k())] = 1;
    c[static_cast<std::size_t>(p.k()) - 1] = -p.q();
    poly_ = IntPoly(std::move(c));
  }
  const SequenceParams& params() const { return params_; }
  const IntPoly& poly() const { return poly_; }

 private:
  SequenceParams params_;
  IntPoly poly_;
};

/// h(t) = t^(k+1) - (q+1) t^k + (q-1) t^(k-1) + 1 = (t - 1) Phi(t).
class AuxPoly {
 public:
  explicit AuxPoly(const SequenceParams& p) : params_(p) {
    const auto k = static_cast<std::size_t>(p.k());
    std::vector<Integer> c(k + 2, 0);
    c[k + 1] = 1;
    c[k] = -(p.q() + 1);
    c[k - 1] += p.q() - 1;
    c[0] += 1;
    poly_ = IntPoly(std::move(c));
  }
  const SequenceParams& params() const { return params_; }
  const IntPoly& poly() const { return poly_; }

 private:
  SequenceParams params_;
  IntPoly poly_;
};

/// Exact Horner evaluation over the rationals.
inline mpq_class eval_poly(const IntPoly& poly, const mpq_class& x) {
  mpq_class acc = 0;
  const auto& c = poly.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}
inline mpq_class eval_poly(const CharPoly& p, const mpq_class& x) { return eval_poly(p.poly(), x); }
inline mpq_class eval_poly(const AuxPoly& p, const mpq_class& x) { return eval_poly(p.poly(), x); }

/// Sign of poly(mantissa * 2^exponent), computed in integers only.
///
/// Multiplies through by 2^(-exponent * degree) when exponent < 0 so every
/// Horner step stays integral.
inline int sign_at_dyadic(const IntPoly& poly, const Integer& mantissa, std::int64_t exponent) {
  const auto& c = poly.coefficients();
  if (c.empty()) return 0;
  const std::size_t deg = c.size() - 1;
  Integer acc = c[deg];
  if (exponent >= 0) {
    Integer x;
    mpz_mul_2exp(x.get_mpz_t(), mantissa.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent));
    for (std::size_t i = deg; i-- > 0;) acc = acc * x + c[i];
    return sgn(acc);
  }
  // 2^(e*deg) P(m / 2^e) = sum c_i m^i 2^(e (deg - i)), with e = -exponent.
  const auto e = static_cast<mp_bitcnt_t>(-exponent);
  Integer scaled;
  for (std::size_t i = deg; i-- > 0;) {
    acc *= mantissa;
    mpz_mul_2exp(scaled.get_mpz_t(), c[i].get_mpz_t(), e * static_cast<mp_bitcnt_t>(deg - i));
    acc += scaled;
  }
  return sgn(acc);
}

}  // namespace qkfib

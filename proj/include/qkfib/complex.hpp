#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>

#include "qkfib/bigfloat.hpp"

namespace qkfib {

/// Round-to-nearest multiprecision complex number.
struct Complex {
  BigFloat re;
  BigFloat im;

  explicit Complex(Bits bits = 64) : re(bits), im(bits) {}
  Complex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}

  Bits bits() const { return std::max(re.precision(), im.precision()); }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    // Smith's algorithm keeps intermediate magnitudes bounded.
    if (abs(b.re) >= abs(b.im)) {
      const BigFloat r = b.im / b.re;
      const BigFloat d = b.re + b.im * r;
      return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
    }
    const BigFloat r = b.re / b.im;
    const BigFloat d = b.re * r + b.im;
    return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
  }
  Complex& operator+=(const Complex& b) { return *this = *this + b; }
  Complex& operator-=(const Complex& b) { return *this = *this - b; }
  Complex& operator*=(const Complex& b) { return *this = *this * b; }
};

inline BigFloat abs(const Complex& z) {
  BigFloat r(z.bits());
  mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDN);
  return r;
}

inline Complex pow(const Complex& z, std::int64_t n) {
  const Bits bits = z.bits();
  if (n < 0) return Complex(BigFloat(bits, 1L), BigFloat(bits)) / pow(z, -n);
  Complex result(BigFloat(bits, 1L), BigFloat(bits));
  Complex base = z;
  for (auto e = static_cast<std::uint64_t>(n); e != 0; e >>= 1) {
    if (e & 1) result *= base;
    if (e > 1) base *= base;
  }
  return result;
}

}  // namespace qkfib

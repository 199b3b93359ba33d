#pragma once

/**
 * @file roots.hpp
 * @brief Roots of Phi(t) = t^k - q t^(k-1) - ... - t - 1 and related constants.
 *
 * For q >= 3, Phi has a single root gamma with q < gamma < q+1; the other
 * k-1 roots lie inside the unit circle. The dominant root is certified by
 * exact sign changes at dyadic bisection points; the secondary roots are
 * approximations carrying residuals.
 */

#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "qkfib/bigfloat.hpp"
#include "qkfib/complex.hpp"
#include "qkfib/dyadic.hpp"
#include "qkfib/params.hpp"
#include "qkfib/poly.hpp"

namespace qkfib {

/// Enclosures of alpha, beta = ((q+1) +- sqrt(q^2 - 2q + 5)) / 2.
struct QuadraticRoots {
  DyadicInterval alpha;
  DyadicInterval beta;
};

namespace detail {

inline DyadicInterval discriminant_sqrt(std::int64_t q, Bits bits) {
  const mpz_class d = mpz_class(q) * q - 2 * mpz_class(q) + 5;
  return sqrt(DyadicInterval(bits, d));
}

inline bool width_at_most(const DyadicInterval& x, Bits target) {
  return x.width() <= pow2(64, -static_cast<long>(target));
}

}  // namespace detail

inline QuadraticRoots quadratic_roots(std::int64_t q, Bits bits) {
  require_certified_regime(q, "quadratic_roots");
  for (Bits work = bits + 16;; work *= 2) {
    const DyadicInterval s = detail::discriminant_sqrt(q, work);
    const DyadicInterval q1(work, q + 1L);
    QuadraticRoots r{(q1 + s).scaled_pow2(-1), (q1 - s).scaled_pow2(-1)};
    if (!detail::width_at_most(r.alpha, bits) || !detail::width_at_most(r.beta, bits)) continue;
    if (!certainly_less(mpz_class(q), r.alpha) || !certainly_less(r.alpha, mpz_class(q + 1)) ||
        !certainly_less(mpz_class(0), r.beta) || !certainly_less(r.beta, mpz_class(1)))
      throw InternalError("quadratic root enclosure violates q < alpha < q+1, 0 < beta < 1");
    return r;
  }
}

/// Certified enclosure of the dominant root of Phi.
///
/// The interval is [m / 2^s, (m+1) / 2^s] with Phi(lo) < 0 < Phi(hi), both
/// signs computed exactly.
class RootEnclosure {
 public:
  const SequenceParams& params() const { return params_; }
  const DyadicInterval& interval() const { return interval_; }
  int sign_lo() const { return sign_lo_; }
  int sign_hi() const { return sign_hi_; }
  /// log2 of 1 / width.
  std::int64_t scale() const { return scale_; }
  const mpz_class& numerator() const { return lo_num_; }

  /// Continue bisection until the width is at most 2^-bits.
  RootEnclosure refined(Bits bits) const {
    RootEnclosure r = *this;
    r.bisect_to(bits);
    return r;
  }

  friend RootEnclosure dominant_root(const SequenceParams& p, Bits bits);

 private:
  explicit RootEnclosure(const SequenceParams& p) : params_(p), poly_(CharPoly(p).poly()) {}

  void bisect_to(Bits bits) {
    mpz_class mid;
    while (scale_ < bits) {
      lo_num_ *= 2;
      ++scale_;
      mid = lo_num_ + 1;
      const int s = sign_at_dyadic(poly_, mid, -scale_);
      if (s == 0) {
        // Exact dyadic root; Phi has no rational roots, so this cannot happen.
        throw InternalError("characteristic polynomial vanished at a dyadic point");
      }
      if (s < 0) lo_num_ = mid;
    }
    certify();
  }

  void certify() {
    const mpz_class den = mpz_class(1) << static_cast<mp_bitcnt_t>(scale_);
    const mpq_class lo(lo_num_, den);
    const mpq_class hi(lo_num_ + 1, den);
    sign_lo_ = sgn(eval_poly(poly_, lo));
    sign_hi_ = sgn(eval_poly(poly_, hi));
    if (!(sign_lo_ < 0 && sign_hi_ > 0))
      throw InternalError("dominant-root bracket lost its sign change for " + describe(params_));
    // Endpoints are exact at this precision.
    const mpz_class hi_num = lo_num_ + 1;
    const Bits prec = static_cast<Bits>(mpz_sizeinbase(hi_num.get_mpz_t(), 2)) + 8;
    interval_ = DyadicInterval(BigFloat(prec, lo, MPFR_RNDD), BigFloat(prec, hi, MPFR_RNDU));
  }

  SequenceParams params_;
  IntPoly poly_;
  mpz_class lo_num_;
  std::int64_t scale_ = 0;
  DyadicInterval interval_;
  int sign_lo_ = 0;
  int sign_hi_ = 0;
};

/// Bisection from (q, q+1) (or (1, q+1) when q < 3) down to width 2^-bits.
inline RootEnclosure dominant_root(const SequenceParams& p, Bits bits) {
  RootEnclosure r(p);
  // The bracket has width 1 for q >= 3; for q in {1, 2} start at (1, q+1)
  // and halve until the width is 1 too.
  r.lo_num_ = p.bounds_certified() ? p.q() : 1;
  if (!p.bounds_certified()) {
    mpz_class lo = 1, hi = p.q() + 1;
    while (hi - lo > 1) {
      const mpz_class mid = (lo + hi) / 2;
      if (sgn(eval_poly(r.poly_, mpq_class(mid))) < 0) lo = mid; else hi = mid;
    }
    r.lo_num_ = lo;
  }
  const int s_lo = sgn(eval_poly(r.poly_, mpq_class(r.lo_num_)));
  const int s_hi = sgn(eval_poly(r.poly_, mpq_class(r.lo_num_ + 1)));
  if (!(s_lo < 0 && s_hi > 0))
    throw InternalError("no sign change on the initial bracket for " + describe(p));
  r.bisect_to(bits);
  return r;
}

/// c = ((q+1)k + sqrt(k^2 (q^2-2q+5) + 4(q-1))) / (2(k+1)), the larger zero
/// of the denominator of the Binet weight.
inline DyadicInterval asymptote_c(const SequenceParams& p, Bits bits) {
  require_certified_regime(p.q(), "asymptote_c");
  const mpz_class q = p.q(), k = p.k();
  const mpz_class radicand = k * k * (q * q - 2 * q + 5) + 4 * (q - 1);
  for (Bits work = bits + 16;; work *= 2) {
    const DyadicInterval root = sqrt(DyadicInterval(work, radicand));
    const DyadicInterval c =
        (DyadicInterval(work, mpz_class((q + 1) * k)) + root) / DyadicInterval(work, mpz_class(2 * (k + 1)));
    if (detail::width_at_most(c, bits)) return c;
  }
}

/// One non-dominant root with its quality diagnostics.
struct SecondaryRoot {
  Complex value;
  /// |Phi(value)|.
  BigFloat residual;
  /// k |Phi / Phi'| at value: a disk of this radius around value contains a root.
  BigFloat radius;
};

struct RootSet {
  RootEnclosure dominant;
  std::vector<SecondaryRoot> secondary;
  Bits bits = 0;
  /// Smallest pairwise distance among all k approximations.
  BigFloat min_separation;
};

namespace detail {

inline std::vector<std::complex<double>> aberth_double(const std::vector<double>& coeffs) {
  // coeffs lowest degree first, monic.
  const std::size_t n = coeffs.size() - 1;
  std::vector<std::complex<double>> z(n);
  const double radius = 1.0 + std::abs(coeffs[n - 1]);
  for (std::size_t j = 0; j < n; ++j)
    z[j] = std::polar(0.5 * radius, 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n) + 0.4);
  auto eval = [&](std::complex<double> x, std::complex<double>& d) {
    std::complex<double> p = coeffs[n];
    d = 0;
    for (std::size_t i = n; i-- > 0;) {
      d = d * x + p;
      p = p * x + coeffs[i];
    }
    return p;
  };
  for (int iter = 0; iter < 500; ++iter) {
    double moved = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::complex<double> d;
      const std::complex<double> p = eval(z[i], d);
      if (p == 0.0) continue;
      const std::complex<double> ratio = p / d;
      std::complex<double> s = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) s += 1.0 / (z[i] - z[j]);
      const std::complex<double> w = ratio / (1.0 - ratio * s);
      z[i] -= w;
      moved = std::max(moved, std::abs(w));
    }
    if (moved < 1e-15) break;
  }
  return z;
}

struct PolyValue {
  Complex value;
  Complex derivative;
};

inline PolyValue eval_complex(const std::vector<BigFloat>& c, const Complex& x) {
  const Bits bits = x.bits();
  PolyValue out{Complex(c.back(), BigFloat(bits)), Complex(BigFloat(bits), BigFloat(bits))};
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    out.derivative = out.derivative * x + out.value;
    out.value = out.value * x + Complex(c[i], BigFloat(bits));
  }
  return out;
}

}  // namespace detail

/// Dominant root plus the k-1 secondary roots.
///
/// Secondary roots come from double-precision Aberth iteration and are then
/// refined by Aberth steps at bits + 32 with the dominant root held fixed at
/// its enclosure midpoint. Residuals must fall below 2^(-bits/2) and all
/// roots must be separated by more than 2^(-bits/4).
inline RootSet all_roots(const SequenceParams& p, Bits bits) {
  const std::size_t k = static_cast<std::size_t>(p.k());
  RootSet set{dominant_root(p, bits), {}, bits, BigFloat(bits)};
  const Bits work = bits + 32;
  const CharPoly phi(p);

  std::vector<double> cd(k + 1);
  std::vector<BigFloat> cm;
  cm.reserve(k + 1);
  for (std::size_t i = 0; i <= k; ++i) {
    cd[i] = phi.poly()[i].get_d();
    cm.emplace_back(work, phi.poly()[i]);
  }

  const BigFloat gamma(work, set.dominant.interval().midpoint());
  auto seeds = detail::aberth_double(cd);
  std::size_t dominant_seed = 0;
  for (std::size_t i = 1; i < k; ++i)
    if (std::abs(seeds[i] - gamma.to_double()) < std::abs(seeds[dominant_seed] - gamma.to_double()))
      dominant_seed = i;

  std::vector<Complex> z;
  z.emplace_back(gamma, BigFloat(work));
  for (std::size_t i = 0; i < k; ++i)
    if (i != dominant_seed) z.emplace_back(BigFloat(work, seeds[i].real()), BigFloat(work, seeds[i].imag()));

  const BigFloat one(work, 1L);
  const BigFloat step_target = pow2(work, -static_cast<long>(work) + 8);
  const int max_iterations = 64 + static_cast<int>(bits);
  for (int iter = 0; iter < max_iterations; ++iter) {
    BigFloat moved(work);
    for (std::size_t i = 1; i < k; ++i) {
      const auto pv = detail::eval_complex(cm, z[i]);
      if (pv.value.re.is_zero() && pv.value.im.is_zero()) continue;
      const Complex ratio = pv.value / pv.derivative;
      Complex s(work);
      for (std::size_t j = 0; j < k; ++j)
        if (j != i) s += Complex(one, BigFloat(work)) / (z[i] - z[j]);
      const Complex w = ratio / (Complex(one, BigFloat(work)) - ratio * s);
      z[i] -= w;
      const BigFloat m = abs(w);
      if (m > moved) moved = m;
    }
    if (moved <= step_target) break;
  }

  const BigFloat residual_limit = pow2(work, -static_cast<long>(bits / 2));
  std::ostringstream failures;
  for (std::size_t i = 1; i < k; ++i) {
    const auto pv = detail::eval_complex(cm, z[i]);
    SecondaryRoot root{z[i], abs(pv.value), BigFloat(work)};
    const BigFloat dmag = abs(pv.derivative);
    root.radius = dmag.is_zero() ? BigFloat(work, 1e300)
                                 : BigFloat(work, static_cast<long>(k)) * root.residual / dmag;
    if (root.residual >= residual_limit)
      failures << " root " << i << ": |Phi| ~ " << root.residual.to_double() << ";";
    set.secondary.push_back(std::move(root));
  }
  if (!failures.str().empty())
    throw ConvergenceError("secondary roots of " + describe(p) + " did not converge at " +
                           std::to_string(bits) + " bits:" + failures.str());

  bool first = true;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const BigFloat d = abs(z[i] - z[j]);
      if (first || d < set.min_separation) set.min_separation = d;
      first = false;
    }
  if (k > 1 && set.min_separation <= pow2(work, -static_cast<long>(bits / 4)))
    throw ConvergenceError("roots of " + describe(p) + " are not separated at " + std::to_string(bits) +
                           " bits (min distance ~ " + std::to_string(set.min_separation.to_double()) + ")");
  return set;
}

}  // namespace qkfib

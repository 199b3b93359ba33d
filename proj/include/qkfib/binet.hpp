#pragma once

/**
 * @file binet.hpp
 * @brief Binet-style evaluation: F(n) = sum_i g(gamma_i) gamma_i^n with
 *
 *     g(x) = (x - 1) / ((k+1) x^2 - (q+1) k x + (q-1)(k-1)),
 *
 * the dominant term g(gamma) gamma^n, its error E(n) = F(n) - g(gamma) gamma^n,
 * and the closed form of the companion sequence U.
 */

#include <cstdint>
#include <map>
#include <string>

#include "qkfib/bigfloat.hpp"
#include "qkfib/complex.hpp"
#include "qkfib/dyadic.hpp"
#include "qkfib/exact.hpp"
#include "qkfib/params.hpp"
#include "qkfib/roots.hpp"

namespace qkfib {

/// Output width the dominant-term evaluation aims for.
inline constexpr long kDominantTargetLog2 = -32;
/// Precision escalation stops at this multiple of the requested bits.
inline constexpr Bits kEscalationFactor = 16;

namespace detail {

/// Denominator D(x) = (k+1) x^2 - (q+1) k x + (q-1)(k-1) as exact rationals,
/// written around its vertex v: D(x) = (k+1)(x - v)^2 + D(v).
struct WeightDenominator {
  explicit WeightDenominator(const SequenceParams& p)
      : a(p.k() + 1), b(-(p.q() + 1) * p.k()), c((p.q() - 1) * (p.k() - 1)) {
    vertex = mpq_class(-b, 2 * a);
    vertex.canonicalize();
    at_vertex = eval(vertex);
  }
  mpq_class eval(const mpq_class& x) const { return (a * x + b) * x + c; }

  mpz_class a, b, c;
  mpq_class vertex;
  mpq_class at_vertex;
};

}  // namespace detail

/// Interval image of g over x. Throws PoleError unless the denominator has a
/// constant nonzero sign on x, which is decided exactly.
inline DyadicInterval g_eval(const SequenceParams& p, const DyadicInterval& x) {
  const detail::WeightDenominator den(p);
  const mpq_class lo = x.lo().to_rational(), hi = x.hi().to_rational();
  const int s_lo = sgn(den.eval(lo)), s_hi = sgn(den.eval(hi));
  bool constant_sign = s_lo != 0 && s_lo == s_hi;
  if (constant_sign && s_lo > 0 && lo < den.vertex && den.vertex < hi)
    constant_sign = sgn(den.at_vertex) > 0;
  if (!constant_sign)
    throw PoleError("weight denominator vanishes inside " + to_string(x, 12) + " for " + describe(p));

  const Bits bits = x.bits();
  const DyadicInterval shifted = x - DyadicInterval(bits, den.vertex);
  const DyadicInterval d = square(shifted) * DyadicInterval(bits, den.a) + DyadicInterval(bits, den.at_vertex);
  if (d.contains_zero())
    throw PoleError("weight denominator not separated from zero at " + std::to_string(bits) + " bits");
  return (x - DyadicInterval(bits, 1L)) / d;
}

/// Interval evaluation of the closed form
///   U(n) = [((q-3)+s) alpha^n + ((3-q)+s) beta^n] / (2 (q-1) s),  s = sqrt(q^2-2q+5).
inline DyadicInterval u_closed_form(std::int64_t q, std::int64_t n, Bits bits) {
  require_certified_regime(q, "u_closed_form");
  if (n < 1) throw DomainError("u_closed_form requires n >= 1, got n=" + std::to_string(n));
  const Bits work = bits + 16;
  const DyadicInterval s = detail::discriminant_sqrt(q, work);
  const DyadicInterval q1(work, q + 1L);
  const DyadicInterval alpha = (q1 + s).scaled_pow2(-1);
  const DyadicInterval beta = (q1 - s).scaled_pow2(-1);
  const DyadicInterval shift(work, q - 3L);
  const DyadicInterval numerator = (shift + s) * pow(alpha, n) + (s - shift) * pow(beta, n);
  return numerator / (DyadicInterval(work, 2L * (q - 1)) * s);
}

/// Enclosure of g(gamma) gamma^n together with the precision that produced it.
struct DominantTerm {
  DyadicInterval value;
  Bits bits_used = 0;
  /// True when the escalation cap was hit before reaching the target width.
  bool capped = false;
};

/// Evaluates g(gamma) gamma^n for one (q, k), escalating precision by
/// doubling from `bits` up to 16 x bits. Root enclosures are kept per
/// precision level so repeated calls over n share bisection work.
class DominantTermEvaluator {
 public:
  DominantTermEvaluator(const SequenceParams& p, Bits bits) : params_(p), bits_(bits) {
    require_certified_regime(p.q(), "the dominant Binet term");
  }

  const SequenceParams& params() const { return params_; }

  /// Root enclosure of width <= 2^-work.
  const RootEnclosure& root(Bits work) {
    auto it = roots_.find(work);
    if (it != roots_.end()) return it->second;
    if (!roots_.empty() && roots_.rbegin()->first < work)
      return roots_.emplace(work, roots_.rbegin()->second.refined(work)).first->second;
    return roots_.emplace(work, dominant_root(params_, work)).first->second;
  }

  /// (gamma, g(gamma)) as intervals at `work` bits.
  std::pair<DyadicInterval, DyadicInterval> gamma_and_weight(Bits work) {
    auto it = weights_.find(work);
    if (it == weights_.end()) {
      DyadicInterval gamma = root(work).interval().with_bits(work + 16);
      DyadicInterval weight = g_eval(params_, gamma);
      it = weights_.emplace(work, std::make_pair(std::move(gamma), std::move(weight))).first;
    }
    return it->second;
  }

  DominantTerm evaluate(TermIndex n) {
    require_index(params_, n);
    const BigFloat target = pow2(64, kDominantTargetLog2);
    const Bits cap = bits_ * kEscalationFactor;
    for (Bits work = bits_;; work *= 2) {
      auto [gamma, weight] = gamma_and_weight(work);
      DominantTerm out{weight * pow(gamma, n), work, false};
      if (out.value.width() <= target) return out;
      if (work * 2 > cap) {
        out.capped = true;
        return out;
      }
    }
  }

 private:
  SequenceParams params_;
  Bits bits_;
  std::map<Bits, RootEnclosure> roots_;
  std::map<Bits, std::pair<DyadicInterval, DyadicInterval>> weights_;
};

inline DominantTerm binet_dominant(const SequenceParams& p, TermIndex n, Bits bits) {
  DominantTermEvaluator eval(p, bits);
  return eval.evaluate(n);
}

/// Enclosure of E(n) = F(n) - g(gamma) gamma^n.
struct ErrorEnclosure {
  TermIndex n = 0;
  DyadicInterval interval;
  Bits bits_used = 0;
  bool capped = false;
};

inline ErrorEnclosure error_term(DominantTermEvaluator& eval, TermIndex n, const Integer& exact) {
  const DominantTerm dom = eval.evaluate(n);
  const Bits prec = std::max<Bits>(dom.value.bits(), static_cast<Bits>(mpz_sizeinbase(exact.get_mpz_t(), 2)) + 8);
  return {n, DyadicInterval(prec, exact) - dom.value, dom.bits_used, dom.capped};
}

inline ErrorEnclosure error_term(const SequenceParams& p, TermIndex n, Bits bits) {
  DominantTermEvaluator eval(p, bits);
  return error_term(eval, n, term_definition(p, n));
}

/// Rounded value of the full Binet sum with its rounding diagnostics.
struct Reconstruction {
  Integer value;
  /// |Re(sum) - value|.
  BigFloat residual;
  /// |Im(sum)|.
  BigFloat imaginary;
  /// Propagated error of the root approximations: (|n| + 16) 2^-bits sum |term_i|.
  BigFloat error_estimate;
  Bits bits = 0;
};

/// sum_i g(gamma_i) gamma_i^n over a precomputed root set; `magnitude`
/// receives sum_i |g(gamma_i) gamma_i^n|.
inline Complex binet_sum(const RootSet& roots, TermIndex n, BigFloat* magnitude = nullptr) {
  const SequenceParams& p = roots.dominant.params();
  const Bits work = roots.bits + 32;
  const Complex one(BigFloat(work, 1L), BigFloat(work));
  const Complex a(BigFloat(work, p.k() + 1L), BigFloat(work));
  const Complex b(BigFloat(work, -(p.q() + 1) * p.k()), BigFloat(work));
  const Complex c(BigFloat(work, (p.q() - 1) * (p.k() - 1)), BigFloat(work));
  auto term = [&](const Complex& z) { return (z - one) / ((a * z + b) * z + c) * pow(z, n); };

  Complex sum = term(Complex(BigFloat(work, roots.dominant.interval().midpoint()), BigFloat(work)));
  if (magnitude) *magnitude = abs(sum);
  for (const SecondaryRoot& r : roots.secondary) {
    const Complex t = term(r.value);
    if (magnitude) *magnitude += abs(t);
    sum += t;
  }
  return sum;
}

inline Reconstruction binet_reconstruct(const RootSet& roots, TermIndex n) {
  require_index(roots.dominant.params(), n);
  BigFloat magnitude;
  const Complex sum = binet_sum(roots, n, &magnitude);
  Reconstruction out{round_to_integer(sum.re), BigFloat(sum.re.precision()), abs(sum.im), BigFloat(64),
                     roots.bits};
  out.residual = abs(sum.re - BigFloat(sum.re.precision(), out.value));
  out.error_estimate = magnitude * BigFloat(64, static_cast<long>(n < 0 ? -n : n) + 16) *
                       pow2(64, -static_cast<long>(roots.bits));
  const BigFloat quarter(64, 0.25);
  if (!(out.error_estimate < quarter))
    throw ReconstructionError("precision too low for " + describe(roots.dominant.params()) + ", n=" +
                              std::to_string(n) + " at " + std::to_string(roots.bits) +
                              " bits: propagated error ~ " + std::to_string(out.error_estimate.to_double()));
  if (!(out.residual < quarter) || !(out.imaginary < quarter))
    throw ReconstructionError("rounding guard failed for " + describe(roots.dominant.params()) + ", n=" +
                              std::to_string(n) + " at " + std::to_string(roots.bits) +
                              " bits: residual " + std::to_string(out.residual.to_double()) +
                              ", imaginary " + std::to_string(out.imaginary.to_double()));
  return out;
}

inline Reconstruction binet_reconstruct(const SequenceParams& p, TermIndex n, Bits bits) {
  require_index(p, n);
  return binet_reconstruct(all_roots(p, bits), n);
}

}  // namespace qkfib

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace qkfib {

/// Arbitrary-precision signed integer used for every exact term value.
using Integer = mpz_class;

/// Signed term index; valid indices satisfy n >= 2 - k.
using TermIndex = std::int64_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or an index outside the sequence's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operation restricted to q >= 3 was called with q in {1, 2}.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// Denominator of a rational function may vanish on the input interval.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Iterative root refinement did not converge; message carries residuals.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Rounding guard of the Binet reconstruction failed.
class ReconstructionError : public Error {
 public:
  using Error::Error;
};

/// An invariant that should be guaranteed mathematically was violated.
class InternalError : public Error {
 public:
  using Error::Error;
};

enum class Regime {
  compute_only,      // q in {1, 2}
  bounds_certified,  // q >= 3
};

/// The pair (q, k) selecting one sequence of the family.
///
/// F(n) = q F(n-1) + F(n-2) + ... + F(n-k), with F(2-k) = ... = F(0) = 0 and
/// F(1) = 1.
class SequenceParams {
 public:
  SequenceParams(std::int64_t q, std::int64_t k) : q_(q), k_(k) {
    if (q < 1) throw DomainError("q must be >= 1, got " + std::to_string(q));
    if (k < 2) throw DomainError("k must be >= 2, got " + std::to_string(k));
    if (q > kMaxWeight || k > kMaxOrder)
      throw DomainError("parameters out of supported range");
  }

  std::int64_t q() const { return q_; }
  std::int64_t k() const { return k_; }

  Regime regime() const {
    return q_ >= 3 ? Regime::bounds_certified : Regime::compute_only;
  }
  bool bounds_certified() const { return regime() == Regime::bounds_certified; }

  /// Lowest valid index, 2 - k.
  TermIndex min_index() const { return 2 - k_; }

  friend bool operator==(const SequenceParams&, const SequenceParams&) = default;

  static constexpr std::int64_t kMaxWeight = 1 << 20;
  static constexpr std::int64_t kMaxOrder = 1 << 12;

 private:
  std::int64_t q_;
  std::int64_t k_;
};

inline std::string describe(const SequenceParams& p) {
  return "(q=" + std::to_string(p.q()) + ", k=" + std::to_string(p.k()) + ")";
}

inline void require_index(const SequenceParams& p, TermIndex n) {
  if (n < p.min_index())
    throw DomainError("index n=" + std::to_string(n) + " is below the domain n >= 2-k = " +
                      std::to_string(p.min_index()));
}

inline void require_certified_regime(std::int64_t q, const char* what) {
  if (q < 3)
    throw RegimeError(std::string(what) + " requires q >= 3, got q=" + std::to_string(q));
}

}  // namespace qkfib

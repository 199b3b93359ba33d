#pragma once

/**
 * @file exact.hpp
 * @brief Exact term engines for the (q,k)-bonacci family.
 *
 * Every engine returns the same integer F(n); they differ only in route:
 *
 *   term_definition  sliding window of the order-k recurrence
 *   term_shortcut    order-(k+1) recurrence from h(t) = (t-1) Phi(t):
 *                      F(n) = (q+1) F(n-1) - (q-1) F(n-2) - F(n-k-1),  n >= 3
 *   term_fast        k x k companion-matrix power, square-and-multiply
 *   theorem3_term    U/V convolution:
 *                      F(n) = U(n)                                   1 <= n <= k+1
 *                      F(n) = U(n) - sum_{j=1}^{n-k-1} V(j) F(n-k-j)  n >= k+2
 *   series_coefficients  long division of x / (1 - q x - x^2 - ... - x^k)
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qkfib/params.hpp"

namespace qkfib {

enum class CompanionKind { U, V };

namespace detail {

inline std::size_t as_size(std::int64_t v) { return static_cast<std::size_t>(v); }

}  // namespace detail

/// F(n) for n in [2-k, n_max] by the defining recurrence. Element i holds F(2-k+i).
inline std::vector<Integer> definition_row(const SequenceParams& p, TermIndex n_max) {
  const std::int64_t k = p.k();
  std::vector<Integer> row;
  if (n_max < p.min_index()) return row;
  row.reserve(detail::as_size(n_max - p.min_index() + 1));
  for (TermIndex n = p.min_index(); n <= std::min<TermIndex>(n_max, 0); ++n) row.emplace_back(0);
  if (n_max < 1) return row;
  row.emplace_back(1);
  // Window sum of the last k terms; F(n) = (q-1) F(n-1) + sum.
  Integer window = 1;
  const Integer q_minus_1 = p.q() - 1;
  for (TermIndex n = 2; n <= n_max; ++n) {
    Integer next = q_minus_1 * row.back() + window;
    window += next;
    window -= row[row.size() - detail::as_size(k)];
    row.push_back(std::move(next));
  }
  return row;
}

/// F(n) by the defining order-k recurrence, keeping only a window of k terms.
inline Integer term_definition(const SequenceParams& p, TermIndex n) {
  require_index(p, n);
  if (n <= 0) return 0;
  if (n == 1) return 1;
  const auto k = detail::as_size(p.k());
  // Ring buffer of the last k terms; slot (i mod k) holds F(i).
  std::vector<Integer> ring(k, 0);
  ring[1 % k] = 1;
  Integer window = 1;
  const Integer q_minus_1 = p.q() - 1;
  Integer next;
  for (TermIndex i = 2; i <= n; ++i) {
    Integer& oldest = ring[detail::as_size(i) % k];  // F(i-k)
    next = q_minus_1 * ring[detail::as_size(i - 1) % k] + window;
    window += next;
    window -= oldest;
    oldest.swap(next);
  }
  return ring[detail::as_size(n) % k];
}

/// F(n) via the order-(k+1) shortcut recurrence. Indices below 3 are read
/// from the initial segment, where the identity is not asserted.
inline Integer term_shortcut(const SequenceParams& p, TermIndex n) {
  require_index(p, n);
  if (n < 3) return term_definition(p, n);
  const std::int64_t k = p.k();
  const auto len = detail::as_size(k + 1);
  // Slot for index i is (i - (2-k)) mod (k+1); seeded with F(2-k..2) = 0,...,0,1,q.
  auto slot = [&](TermIndex i) { return detail::as_size(i - (2 - k)) % len; };
  std::vector<Integer> ring(len, 0);
  ring[slot(1)] = 1;
  ring[slot(2)] = p.q();
  const Integer q_plus_1 = p.q() + 1;
  const Integer q_minus_1 = p.q() - 1;
  for (TermIndex i = 3; i <= n; ++i) {
    Integer& target = ring[slot(i)];  // currently F(i-k-1)
    Integer next = q_plus_1 * ring[slot(i - 1)];
    next -= q_minus_1 * ring[slot(i - 2)];
    next -= target;
    target.swap(next);
  }
  return ring[slot(n)];
}

/// Row form of the shortcut route, indices [2-k, n_max].
inline std::vector<Integer> shortcut_row(const SequenceParams& p, TermIndex n_max) {
  std::vector<Integer> row;
  const std::int64_t k = p.k();
  if (n_max < p.min_index()) return row;
  for (TermIndex n = p.min_index(); n <= std::min<TermIndex>(n_max, 2); ++n)
    row.push_back(n <= 0 ? Integer(0) : n == 1 ? Integer(1) : Integer(p.q()));
  const Integer q_plus_1 = p.q() + 1;
  const Integer q_minus_1 = p.q() - 1;
  for (TermIndex n = 3; n <= n_max; ++n) {
    const std::size_t at = detail::as_size(n - p.min_index());
    Integer next = q_plus_1 * row[at - 1] - q_minus_1 * row[at - 2] - row[at - detail::as_size(k) - 1];
    row.push_back(std::move(next));
  }
  return row;
}

namespace detail {

using Matrix = std::vector<std::vector<Integer>>;

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t k = a.size();
  Matrix c(k, std::vector<Integer>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < k; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

inline std::vector<Integer> apply(const Matrix& a, const std::vector<Integer>& v) {
  const std::size_t k = a.size();
  std::vector<Integer> out(k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (v[j] != 0 && a[i][j] != 0) out[i] += a[i][j] * v[j];
  return out;
}

}  // namespace detail

/// Companion matrix of Phi: first row (q, 1, ..., 1), ones on the subdiagonal.
inline detail::Matrix companion_matrix(const SequenceParams& p) {
  const auto k = detail::as_size(p.k());
  detail::Matrix m(k, std::vector<Integer>(k, 0));
  m[0][0] = p.q();
  for (std::size_t j = 1; j < k; ++j) m[0][j] = 1;
  for (std::size_t i = 1; i < k; ++i) m[i][i - 1] = 1;
  return m;
}

/// F(n) for n >= 1 as the top entry of M^(n-1) (F(1), F(0), ..., F(2-k))^T.
inline Integer term_fast(const SequenceParams& p, TermIndex n) {
  if (n < 1)
    throw DomainError("term_fast requires n >= 1, got n=" + std::to_string(n));
  const auto k = detail::as_size(p.k());
  std::vector<Integer> state(k, 0);
  state[0] = 1;
  detail::Matrix power = companion_matrix(p);
  // Powers of M commute, so accumulating into the vector is plain
  // right-to-left square-and-multiply.
  for (auto e = static_cast<std::uint64_t>(n - 1); e != 0; e >>= 1) {
    if (e & 1) state = detail::apply(power, state);
    if (e > 1) power = detail::multiply(power, power);
  }
  return state[0];
}

/// U(1..n_max) or V(1..n_max); element i holds X(i+1).
inline std::vector<Integer> companion_row(std::int64_t q, CompanionKind kind, std::int64_t n_max) {
  require_certified_regime(q, "companion sequences U, V");
  std::vector<Integer> row;
  if (n_max < 1) return row;
  row.emplace_back(1);
  if (n_max >= 2) row.emplace_back(kind == CompanionKind::U ? q : q + 1);
  const Integer a = q + 1;
  const Integer b = q - 1;
  for (std::int64_t n = 3; n <= n_max; ++n) {
    const std::size_t at = row.size();
    row.push_back(a * row[at - 1] - b * row[at - 2]);
  }
  return row;
}

/// U(n) or V(n): X(n) = (q+1) X(n-1) - (q-1) X(n-2), seeds (1, q) or (1, q+1).
inline Integer companion_term(std::int64_t q, CompanionKind kind, std::int64_t n) {
  require_certified_regime(q, "companion sequences U, V");
  if (n < 1) throw DomainError("companion index must be >= 1, got n=" + std::to_string(n));
  return companion_row(q, kind, n).back();
}

/// F(1..n_max) by the U/V convolution identity alone; element i holds F(i+1).
inline std::vector<Integer> theorem3_row(const SequenceParams& p, TermIndex n_max) {
  require_certified_regime(p.q(), "the U/V convolution identity");
  std::vector<Integer> f;
  if (n_max < 1) return f;
  const auto u = companion_row(p.q(), CompanionKind::U, n_max);
  const auto v = companion_row(p.q(), CompanionKind::V, n_max);
  const std::int64_t k = p.k();
  f.reserve(detail::as_size(n_max));
  for (TermIndex n = 1; n <= n_max; ++n) {
    Integer value = u[detail::as_size(n - 1)];
    for (TermIndex j = 1; j <= n - k - 1; ++j)
      value -= v[detail::as_size(j - 1)] * f[detail::as_size(n - k - j - 1)];
    f.push_back(std::move(value));
  }
  return f;
}

inline Integer theorem3_term(const SequenceParams& p, TermIndex n) {
  require_certified_regime(p.q(), "the U/V convolution identity");
  if (n < 1) throw DomainError("theorem3_term requires n >= 1, got n=" + std::to_string(n));
  return theorem3_row(p, n).back();
}

/// First `count` coefficients of num(x) / den(x) as a formal power series.
/// Polynomials are coefficient lists, lowest degree first; den[0] must be +-1
/// so the division stays in the integers.
inline std::vector<Integer> series_divide(const std::vector<Integer>& num,
                                          const std::vector<Integer>& den, std::size_t count) {
  if (den.empty() || (den[0] != 1 && den[0] != -1))
    throw DomainError("series division needs a unit constant term in the denominator");
  std::vector<Integer> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    Integer c = n < num.size() ? num[n] : Integer(0);
    for (std::size_t i = 1; i < den.size() && i <= n; ++i) c -= den[i] * out[n - i];
    if (den[0] == -1) c = -c;
    out.push_back(std::move(c));
  }
  return out;
}

/// Coefficients c(0..count-1) of the generating function x / (1 - q x - x^2 - ... - x^k).
inline std::vector<Integer> series_coefficients(const SequenceParams& p, std::int64_t count) {
  if (count < 1) throw DomainError("count must be >= 1, got " + std::to_string(count));
  std::vector<Integer> den(detail::as_size(p.k()) + 1, -1);
  den[0] = 1;
  den[1] = -p.q();
  return series_divide({0, 1}, den, detail::as_size(count));
}

}  // namespace qkfib

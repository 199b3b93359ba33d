#pragma once

/**
 * @file lawcheck.hpp
 * @brief Grid verification of the identities, root laws, and term bounds.
 *
 * Each check returns one LawReport per law. Exact-integer laws only pass or
 * fail. Interval laws compare enclosures: a strict inequality counts only
 * when the enclosures are separated, precision is doubled up to 16x the
 * requested bits before a comparison is reported inconclusive.
 */

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "qkfib/binet.hpp"
#include "qkfib/dyadic.hpp"
#include "qkfib/exact.hpp"
#include "qkfib/params.hpp"
#include "qkfib/roots.hpp"

namespace qkfib {

enum class Verdict { pass, fail, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

/// Inclusive parameter ranges. An unset n_min means "from 2 - k".
struct Grid {
  std::int64_t q_min = 3, q_max = 5;
  std::int64_t k_min = 2, k_max = 8;
  std::optional<TermIndex> n_min;
  TermIndex n_max = 300;

  bool empty() const { return q_min > q_max || k_min > k_max; }
  TermIndex first_index(std::int64_t k) const { return std::max<TermIndex>(n_min.value_or(2 - k), 2 - k); }

  /// q in {3,4,5}, k in {2..8}, n up to 300: covers k = 2, 3 <= k <= q and
  /// k >= q + 1.
  static Grid defaults() { return {}; }
};

inline constexpr Bits kDefaultBits = 192;

struct Witness {
  std::int64_t q = 0, k = 0;
  std::optional<TermIndex> n;
  Verdict verdict = Verdict::fail;
  std::string detail;
  Bits bits = 0;

  friend bool operator<(const Witness& a, const Witness& b) {
    return std::tie(a.q, a.k, a.n, a.detail) < std::tie(b.q, b.k, b.n, b.detail);
  }
};

struct CellBits {
  std::int64_t q = 0, k = 0;
  Bits bits = 0;
};

struct LawReport {
  LawReport() = default;
  LawReport(std::string id, Grid g) : law_id(std::move(id)), grid(g) {}

  std::string law_id;
  Grid grid;
  Verdict verdict = Verdict::pass;
  std::vector<Witness> witnesses;
  /// Highest precision any comparison of the cell needed; empty for exact laws.
  std::vector<CellBits> bits_used;
  /// Set for checks that are evidence rather than certification.
  bool heuristic = false;
  /// error-bound only: whether |E| < 1/q was also certified at every point.
  std::optional<bool> strict;

  void add(Witness w) { witnesses.push_back(std::move(w)); }

  void finalize() {
    std::sort(witnesses.begin(), witnesses.end());
    std::sort(bits_used.begin(), bits_used.end(),
              [](const CellBits& a, const CellBits& b) { return std::tie(a.q, a.k) < std::tie(b.q, b.k); });
    verdict = Verdict::pass;
    for (const Witness& w : witnesses) {
      if (w.verdict == Verdict::fail) {
        verdict = Verdict::fail;
        break;
      }
      verdict = Verdict::inconclusive;
    }
  }
};

namespace law {
inline constexpr const char* kTheorem2 = "identity-theorem2";
inline constexpr const char* kTheorem3 = "identity-theorem3";
inline constexpr const char* kSeries = "series-oracle";
inline constexpr const char* kMonotone = "lemma1-monotone";
inline constexpr const char* kSandwich = "lemma1-sandwich";
inline constexpr const char* kWeight = "lemma2-sandwich";
inline constexpr const char* kConfinement = "root-confinement";
inline constexpr const char* kErrorBound = "error-bound";
inline constexpr const char* kGrowth = "growth-bounds";
inline constexpr const char* kReconstruction = "reconstruction";
inline constexpr const char* kDecay = "error-decay";
}  // namespace law

namespace detail {

enum class Cmp { holds, refuted, unknown };

/// a < b for intervals: separated, reversed, or overlapping.
inline Cmp strictly_less(const DyadicInterval& a, const DyadicInterval& b) {
  if (a.hi() < b.lo()) return Cmp::holds;
  if (a.lo() >= b.hi()) return Cmp::refuted;
  return Cmp::unknown;
}

struct Settled {
  Cmp result;
  Bits bits;
};

/// Re-evaluates `compare` at doubling precision until it settles or the
/// precision cap is reached.
inline Settled settle(Bits bits, const std::function<Cmp(Bits)>& compare) {
  const Bits cap = bits * kEscalationFactor;
  for (Bits work = bits;; work *= 2) {
    const Cmp c = compare(work);
    if (c != Cmp::unknown || work * 2 > cap) return {c, work};
  }
}

inline void require_grid(const Grid& g, std::int64_t q_lo, std::int64_t q_hi, std::int64_t k_hi, TermIndex n_hi) {
  if (g.empty()) return;
  if (g.q_min < q_lo || g.q_max > q_hi)
    throw DomainError("grid q range must lie in [" + std::to_string(q_lo) + ", " + std::to_string(q_hi) + "]");
  if (g.k_min < 2 || g.k_max > k_hi)
    throw DomainError("grid k range must lie in [2, " + std::to_string(k_hi) + "]");
  if (g.n_max > n_hi) throw DomainError("grid n_max must be <= " + std::to_string(n_hi));
}

inline void require_certified_grid(const Grid& g, const char* what) {
  if (!g.empty() && g.q_min < 3)
    throw RegimeError(std::string(what) + " requires q >= 3 across the grid, got q_min=" + std::to_string(g.q_min));
}

inline std::string str(const Integer& v) { return v.get_str(); }

/// Records one settled strict comparison "lhs < rhs" in the report.
inline void record(LawReport& r, const SequenceParams& p, std::optional<TermIndex> n, const std::string& what,
                   const Settled& s, Bits& cell_bits) {
  cell_bits = std::max(cell_bits, s.bits);
  if (s.result == Cmp::holds) return;
  r.add({p.q(), p.k(), n, s.result == Cmp::refuted ? Verdict::fail : Verdict::inconclusive,
         what + (s.result == Cmp::refuted ? " is false" : " not separated at the precision cap"), s.bits});
}

inline void note_cell_bits(LawReport& r, const SequenceParams& p, Bits bits) {
  auto it = std::find_if(r.bits_used.begin(), r.bits_used.end(),
                         [&](const CellBits& c) { return c.q == p.q() && c.k == p.k(); });
  if (it == r.bits_used.end())
    r.bits_used.push_back({p.q(), p.k(), bits});
  else
    it->bits = std::max(it->bits, bits);
}

}  // namespace detail

/// Exact identities: shortcut recurrence (n >= 3), U/V convolution (q >= 3,
/// n >= 1) and generating-function coefficients (n >= 0) against the
/// defining recurrence.
inline std::vector<LawReport> check_identities(const Grid& grid) {
  detail::require_grid(grid, 1, 10, 16, 500);
  LawReport shortcut{law::kTheorem2, grid}, conv{law::kTheorem3, grid}, series{law::kSeries, grid};
  if (!grid.empty()) {
    for (std::int64_t q = grid.q_min; q <= grid.q_max; ++q)
      for (std::int64_t k = grid.k_min; k <= grid.k_max; ++k) {
        const SequenceParams p(q, k);
        const TermIndex lo = grid.first_index(k), hi = grid.n_max;
        if (hi < lo) continue;
        const auto def = definition_row(p, hi);
        auto at = [&](TermIndex n) -> const Integer& { return def[static_cast<std::size_t>(n - p.min_index())]; };
        auto mismatch = [&](LawReport& r, TermIndex n, const Integer& got, const char* route) {
          r.add({q, k, n, Verdict::fail,
                 std::string(route) + " gives " + detail::str(got) + ", recurrence gives " + detail::str(at(n)), 0});
        };

        const auto sc = shortcut_row(p, hi);
        for (TermIndex n = std::max<TermIndex>(lo, 3); n <= hi; ++n)
          if (sc[static_cast<std::size_t>(n - p.min_index())] != at(n))
            mismatch(shortcut, n, sc[static_cast<std::size_t>(n - p.min_index())], "shortcut");

        if (q >= 3 && hi >= 1) {
          const auto t3 = theorem3_row(p, hi);
          for (TermIndex n = std::max<TermIndex>(lo, 1); n <= hi; ++n)
            if (t3[static_cast<std::size_t>(n - 1)] != at(n)) mismatch(conv, n, t3[static_cast<std::size_t>(n - 1)], "U/V identity");
        }

        if (hi >= 0) {
          const auto c = series_coefficients(p, hi + 1);
          for (TermIndex n = std::max<TermIndex>(lo, 0); n <= hi; ++n)
            if (c[static_cast<std::size_t>(n)] != at(n)) mismatch(series, n, c[static_cast<std::size_t>(n)], "series");
        }
      }
  }
  std::vector<LawReport> out{std::move(shortcut), std::move(conv), std::move(series)};
  for (auto& r : out) r.finalize();
  return out;
}

/// Root laws for each (q, k):
///   lemma1-monotone   gamma_k < gamma_l for k < l in the grid
///   lemma1-sandwich   q < gamma_k < q+1 and alpha (1 - q^-k) < gamma_k < alpha
///   lemma2-sandwich   1/(q+1) < g(gamma_k) < 1/q and c_{q,k} < gamma_k
///   root-confinement  |z| + k |Phi(z)/Phi'(z)| < 1 for every secondary root z
inline std::vector<LawReport> check_root_laws(const Grid& grid, Bits bits = kDefaultBits) {
  detail::require_certified_grid(grid, "check_root_laws");
  LawReport monotone{law::kMonotone, grid}, sandwich{law::kSandwich, grid}, weight{law::kWeight, grid},
      confinement{law::kConfinement, grid};
  using detail::Cmp;
  using detail::settle;
  using detail::strictly_less;

  if (!grid.empty()) {
    for (std::int64_t q = grid.q_min; q <= grid.q_max; ++q) {
      std::vector<DominantTermEvaluator> evals;
      for (std::int64_t k = grid.k_min; k <= grid.k_max; ++k) evals.emplace_back(SequenceParams(q, k), bits);
      auto gamma = [&](std::size_t i, Bits w) { return evals[i].root(w).interval(); };
      auto exact = [](Bits w, const mpq_class& v) { return DyadicInterval(w, v); };

      for (std::size_t i = 0; i < evals.size(); ++i) {
        const SequenceParams p = evals[i].params();
        const std::int64_t k = p.k();
        Bits sandwich_bits = 0, weight_bits = 0, monotone_bits = 0, confinement_bits = 0;

        detail::record(sandwich, p, std::nullopt, "q < gamma",
                       settle(bits, [&](Bits w) { return strictly_less(exact(w, q), gamma(i, w)); }), sandwich_bits);
        detail::record(sandwich, p, std::nullopt, "gamma < q+1",
                       settle(bits, [&](Bits w) { return strictly_less(gamma(i, w), exact(w, q + 1)); }), sandwich_bits);
        detail::record(sandwich, p, std::nullopt, "alpha (1 - q^-k) < gamma",
                       settle(bits, [&](Bits w) {
                         mpz_class qk;
                         mpz_ui_pow_ui(qk.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(k));
                         const DyadicInterval factor(w + 16, mpq_class(qk - 1, qk));
                         return strictly_less(quadratic_roots(q, w).alpha * factor, gamma(i, w));
                       }),
                       sandwich_bits);
        detail::record(sandwich, p, std::nullopt, "gamma < alpha",
                       settle(bits, [&](Bits w) { return strictly_less(gamma(i, w), quadratic_roots(q, w).alpha); }),
                       sandwich_bits);

        detail::record(weight, p, std::nullopt, "1/(q+1) < g(gamma)",
                       settle(bits, [&](Bits w) {
                         return strictly_less(exact(w, mpq_class(1, q + 1)), evals[i].gamma_and_weight(w).second);
                       }),
                       weight_bits);
        detail::record(weight, p, std::nullopt, "g(gamma) < 1/q",
                       settle(bits, [&](Bits w) {
                         return strictly_less(evals[i].gamma_and_weight(w).second, exact(w, mpq_class(1, q)));
                       }),
                       weight_bits);
        detail::record(weight, p, std::nullopt, "c < gamma",
                       settle(bits, [&](Bits w) { return strictly_less(asymptote_c(p, w), gamma(i, w)); }),
                       weight_bits);

        for (std::size_t j = i + 1; j < evals.size(); ++j)
          detail::record(monotone, p, std::nullopt,
                         "gamma_" + std::to_string(k) + " < gamma_" + std::to_string(evals[j].params().k()),
                         settle(bits, [&](Bits w) { return strictly_less(gamma(i, w), gamma(j, w)); }),
                         monotone_bits);

        try {
          const RootSet roots = all_roots(p, bits);
          confinement_bits = bits;
          const BigFloat one(64, 1L);
          for (std::size_t r = 0; r < roots.secondary.size(); ++r) {
            const SecondaryRoot& z = roots.secondary[r];
            const BigFloat reach = abs(z.value) + z.radius;
            if (!(reach < one)) {
              confinement.add({q, k, std::nullopt, abs(z.value) >= one ? Verdict::fail : Verdict::inconclusive,
                               "secondary root " + std::to_string(r) + " reaches |z| + radius = " +
                                   std::to_string(reach.to_double()),
                               bits});
            }
          }
        } catch (const ConvergenceError& e) {
          confinement.add({q, k, std::nullopt, Verdict::inconclusive, e.what(), bits});
        }

        detail::note_cell_bits(sandwich, p, sandwich_bits);
        detail::note_cell_bits(weight, p, weight_bits);
        if (monotone_bits > 0) detail::note_cell_bits(monotone, p, monotone_bits);
        detail::note_cell_bits(confinement, p, confinement_bits);
      }
    }
  }
  std::vector<LawReport> out{std::move(monotone), std::move(sandwich), std::move(weight), std::move(confinement)};
  for (auto& r : out) r.finalize();
  return out;
}

/// |E(n)| <= 1/q for n in [2-k, n_max], and for n >= 1
///   gamma^(n-2) < gamma^(n-1) (q-1)/q < F(n) < gamma^(n-1) (q+2)/q < gamma^n.
inline std::vector<LawReport> check_term_bounds(const Grid& grid, Bits bits = kDefaultBits) {
  detail::require_certified_grid(grid, "check_term_bounds");
  LawReport bound{law::kErrorBound, grid}, growth{law::kGrowth, grid};
  bound.strict = true;
  using detail::Cmp;
  using detail::settle;
  using detail::strictly_less;

  if (!grid.empty()) {
    for (std::int64_t q = grid.q_min; q <= grid.q_max; ++q)
      for (std::int64_t k = grid.k_min; k <= grid.k_max; ++k) {
        const SequenceParams p(q, k);
        const TermIndex lo = grid.first_index(k), hi = grid.n_max;
        if (hi < lo) continue;
        DominantTermEvaluator eval(p, bits);
        const auto def = definition_row(p, hi);
        const mpq_class inv_q(1, q), neg_inv_q(-1, q);
        Bits bound_bits = 0, growth_bits = 0;

        for (TermIndex n = lo; n <= hi; ++n) {
          const Integer& f = def[static_cast<std::size_t>(n - p.min_index())];
          const ErrorEnclosure e = error_term(eval, n, f);
          bound_bits = std::max(bound_bits, e.bits_used);
          const bool upper = mpfr_cmp_q(e.interval.hi().get(), inv_q.get_mpq_t()) <= 0;
          const bool lower = mpfr_cmp_q(e.interval.lo().get(), neg_inv_q.get_mpq_t()) >= 0;
          if (!(upper && lower)) {
            const bool refuted = mpfr_cmp_q(e.interval.lo().get(), inv_q.get_mpq_t()) > 0 ||
                                 mpfr_cmp_q(e.interval.hi().get(), neg_inv_q.get_mpq_t()) < 0;
            bound.add({q, k, n, refuted ? Verdict::fail : Verdict::inconclusive,
                       "E in " + to_string(e.interval, 12) + (e.capped ? " (precision cap)" : ""), e.bits_used});
          }
          if (!(certainly_less(e.interval, inv_q) && certainly_less(neg_inv_q, e.interval))) bound.strict = false;

          if (n < 1) continue;
          const DyadicInterval fi(std::max<Bits>(bits, static_cast<Bits>(mpz_sizeinbase(f.get_mpz_t(), 2)) + 8), f);
          auto powers = [&](Bits w) {
            const DyadicInterval g = eval.root(w).interval().with_bits(w + 16);
            const DyadicInterval lower_pow = pow(g, n - 2);
            return std::make_pair(g, lower_pow);
          };
          const std::string at = "n=" + std::to_string(n) + ": ";
          detail::record(growth, p, n, at + "gamma^(n-2) < gamma^(n-1)(q-1)/q", settle(bits, [&](Bits w) {
                           auto [g, g2] = powers(w);
                           return strictly_less(g2, g2 * g * DyadicInterval(w, mpq_class(q - 1, q)));
                         }),
                         growth_bits);
          detail::record(growth, p, n, at + "gamma^(n-1)(q-1)/q < F(n)", settle(bits, [&](Bits w) {
                           auto [g, g2] = powers(w);
                           return strictly_less(g2 * g * DyadicInterval(w, mpq_class(q - 1, q)), fi);
                         }),
                         growth_bits);
          detail::record(growth, p, n, at + "F(n) < gamma^(n-1)(q+2)/q", settle(bits, [&](Bits w) {
                           auto [g, g2] = powers(w);
                           return strictly_less(fi, g2 * g * DyadicInterval(w, mpq_class(q + 2, q)));
                         }),
                         growth_bits);
          detail::record(growth, p, n, at + "gamma^(n-1)(q+2)/q < gamma^n", settle(bits, [&](Bits w) {
                           auto [g, g2] = powers(w);
                           const DyadicInterval g1 = g2 * g;
                           return strictly_less(g1 * DyadicInterval(w, mpq_class(q + 2, q)), g1 * g);
                         }),
                         growth_bits);
        }
        detail::note_cell_bits(bound, p, bound_bits);
        if (growth_bits > 0) detail::note_cell_bits(growth, p, growth_bits);
      }
  }
  bound.finalize();
  growth.finalize();
  if (bound.verdict != Verdict::pass) bound.strict = false;
  return {std::move(bound), std::move(growth)};
}

/// Rounded Binet sums against the defining recurrence; the root set is
/// recomputed at doubled precision whenever the rounding guard fails.
inline LawReport check_reconstruction(const Grid& grid, Bits bits = 256) {
  detail::require_certified_grid(grid, "check_reconstruction");
  LawReport report{law::kReconstruction, grid};
  if (!grid.empty()) {
    const Bits cap = bits * kEscalationFactor;
    for (std::int64_t q = grid.q_min; q <= grid.q_max; ++q)
      for (std::int64_t k = grid.k_min; k <= grid.k_max; ++k) {
        const SequenceParams p(q, k);
        const TermIndex lo = grid.first_index(k), hi = grid.n_max;
        if (hi < lo) continue;
        const auto def = definition_row(p, hi);
        Bits work = bits;
        std::optional<RootSet> roots;
        std::string root_failure;
        auto load = [&]() {
          try {
            roots.emplace(all_roots(p, work));
            root_failure.clear();
          } catch (const ConvergenceError& e) {
            roots.reset();
            root_failure = e.what();
          }
        };
        load();
        for (TermIndex n = lo; n <= hi; ++n) {
          const Integer& expected = def[static_cast<std::size_t>(n - p.min_index())];
          std::string failure;
          for (;;) {
            if (roots) {
              try {
                const Reconstruction r = binet_reconstruct(*roots, n);
                if (r.value != expected)
                  report.add({q, k, n, Verdict::fail,
                              "reconstructed " + r.value.get_str() + ", expected " + expected.get_str() +
                                  " (residual " + std::to_string(r.residual.to_double()) + ", imaginary " +
                                  std::to_string(r.imaginary.to_double()) + ")",
                              work});
                failure.clear();
                break;
              } catch (const ReconstructionError& e) {
                failure = e.what();
              }
            } else {
              failure = root_failure;
            }
            if (work * 2 > cap) break;
            work *= 2;
            load();
          }
          if (!failure.empty()) report.add({q, k, n, Verdict::inconclusive, failure, work});
        }
        detail::note_cell_bits(report, p, work);
      }
  }
  report.finalize();
  return report;
}

/// Heuristic evidence for E(n) -> 0: |E(n_check)| < threshold per (q, k).
/// Not a certification of the limit.
inline LawReport check_error_decay(const Grid& grid, Bits bits = kDefaultBits, TermIndex n_check = 40,
                                   const mpq_class& threshold = mpq_class(1, 1000000)) {
  detail::require_certified_grid(grid, "check_error_decay");
  LawReport report{law::kDecay, grid};
  report.heuristic = true;
  if (!grid.empty()) {
    for (std::int64_t q = grid.q_min; q <= grid.q_max; ++q)
      for (std::int64_t k = grid.k_min; k <= grid.k_max; ++k) {
        const SequenceParams p(q, k);
        DominantTermEvaluator eval(p, bits);
        const ErrorEnclosure e = error_term(eval, n_check, term_definition(p, n_check));
        const mpq_class neg = -threshold;
        const bool below = certainly_less(e.interval, threshold) && certainly_less(neg, e.interval);
        if (!below) {
          const bool above = mpfr_cmp_q(e.interval.lo().get(), threshold.get_mpq_t()) >= 0 ||
                             mpfr_cmp_q(e.interval.hi().get(), neg.get_mpq_t()) <= 0;
          report.add({q, k, n_check, above ? Verdict::fail : Verdict::inconclusive,
                      "|E| not below threshold: E in " + to_string(e.interval, 12), e.bits_used});
        }
        detail::note_cell_bits(report, p, e.bits_used);
      }
  }
  report.finalize();
  return report;
}

inline nlohmann::json to_json(const Grid& g) {
  nlohmann::json n_min = nullptr;
  if (g.n_min) n_min = *g.n_min;
  return {{"q_min", g.q_min}, {"q_max", g.q_max}, {"k_min", g.k_min},
          {"k_max", g.k_max}, {"n_min", n_min},   {"n_max", g.n_max}};
}

inline nlohmann::json to_json(const LawReport& r) {
  nlohmann::json witnesses = nlohmann::json::array();
  for (const Witness& w : r.witnesses) {
    nlohmann::json n = nullptr;
    if (w.n) n = *w.n;
    witnesses.push_back(
        {{"q", w.q}, {"k", w.k}, {"n", n}, {"verdict", to_string(w.verdict)}, {"detail", w.detail}, {"bits", w.bits}});
  }
  nlohmann::json bits = nlohmann::json::array();
  for (const CellBits& c : r.bits_used) bits.push_back({{"q", c.q}, {"k", c.k}, {"bits", c.bits}});
  nlohmann::json out = {{"law_id", r.law_id},      {"grid", to_json(r.grid)},   {"verdict", to_string(r.verdict)},
                        {"witnesses", witnesses}, {"bits_used", bits},         {"heuristic", r.heuristic}};
  if (r.strict) out["strict"] = *r.strict;
  return out;
}

/// Every certified law on one grid, in a fixed order.
inline std::vector<LawReport> check_all(const Grid& grid, Bits bits = kDefaultBits) {
  std::vector<LawReport> out = check_identities(grid);
  for (auto& r : check_root_laws(grid, bits)) out.push_back(std::move(r));
  for (auto& r : check_term_bounds(grid, bits)) out.push_back(std::move(r));
  out.push_back(check_reconstruction(grid, bits));
  return out;
}

}  // namespace qkfib

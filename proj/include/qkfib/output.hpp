#pragma once

/**
 * @file output.hpp
 * @brief Term tables in csv / json / markdown, and wall-time comparison of
 * the exact term strategies.
 */

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qkfib/exact.hpp"
#include "qkfib/params.hpp"

namespace qkfib {

enum class TableFormat { csv, json, markdown };

struct TableRow {
  std::int64_t q = 0, k = 0;
  TermIndex n = 0;
  Integer value;
};

/// Rows for one q, k in [k_min, k_max], n in [n_min, n_max], sorted by (k, n).
/// One sliding-window pass per k.
inline std::vector<TableRow> make_table(std::int64_t q, std::int64_t k_min, std::int64_t k_max, TermIndex n_min,
                                        TermIndex n_max) {
  if (k_min > k_max) throw DomainError("table requires k_min <= k_max");
  if (n_min > n_max) throw DomainError("table requires n_min <= n_max");
  std::vector<TableRow> rows;
  for (std::int64_t k = k_min; k <= k_max; ++k) {
    const SequenceParams p(q, k);
    require_index(p, n_min);
    const auto row = definition_row(p, n_max);
    for (TermIndex n = n_min; n <= n_max; ++n)
      rows.push_back({q, k, n, row[static_cast<std::size_t>(n - p.min_index())]});
  }
  return rows;
}

inline void write_table(std::ostream& out, const std::vector<TableRow>& rows, TableFormat format) {
  switch (format) {
    case TableFormat::csv:
      out << "q,k,n,value\n";
      for (const TableRow& r : rows) out << r.q << ',' << r.k << ',' << r.n << ',' << r.value.get_str() << '\n';
      break;
    case TableFormat::json: {
      // Values as decimal strings: they outgrow 64-bit JSON numbers quickly.
      nlohmann::json j = nlohmann::json::array();
      for (const TableRow& r : rows) j.push_back({{"q", r.q}, {"k", r.k}, {"n", r.n}, {"value", r.value.get_str()}});
      out << j.dump(2) << '\n';
      break;
    }
    case TableFormat::markdown:
      out << "| q | k | n | value |\n|---|---|---|---|\n";
      for (const TableRow& r : rows)
        out << "| " << r.q << " | " << r.k << " | " << r.n << " | " << r.value.get_str() << " |\n";
      break;
  }
}

struct BenchResult {
  std::string strategy;
  double median_seconds = 0;
  double min_seconds = 0;
  Integer value;
};

/// Times term_definition, term_shortcut and term_fast at one (q, k, n).
inline std::vector<BenchResult> bench_strategies(const SequenceParams& p, TermIndex n, int reps) {
  if (reps < 1) throw DomainError("bench requires reps >= 1");
  if (n < 1) throw DomainError("bench requires n >= 1");
  struct Strategy {
    const char* name;
    Integer (*run)(const SequenceParams&, TermIndex);
  };
  const Strategy strategies[] = {{"def", term_definition}, {"shortcut", term_shortcut}, {"fast", term_fast}};
  std::vector<BenchResult> out;
  for (const Strategy& s : strategies) {
    std::vector<double> times;
    Integer value;
    for (int i = 0; i < reps; ++i) {
      const auto start = std::chrono::steady_clock::now();
      value = s.run(p, n);
      times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    std::sort(times.begin(), times.end());
    out.push_back({s.name, times[times.size() / 2], times.front(), value});
  }
  return out;
}

inline void write_bench(std::ostream& out, const SequenceParams& p, TermIndex n, int reps,
                        const std::vector<BenchResult>& results) {
  out << "strategy,q,k,n,reps,median_seconds,min_seconds\n";
  for (const BenchResult& r : results)
    out << r.strategy << ',' << p.q() << ',' << p.k() << ',' << n << ',' << reps << ',' << r.median_seconds << ','
        << r.min_seconds << '\n';
}

}  // namespace qkfib

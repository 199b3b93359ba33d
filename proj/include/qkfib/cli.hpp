#pragma once

/**
 * @file cli.hpp
 * @brief The qkfib command line: term, table, root, verify, series, bench.
 *
 * Exit status: 0 success or pass, 1 law failure / inconclusive / numeric
 * failure, 2 usage error or violated precondition.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qkfib/binet.hpp"
#include "qkfib/exact.hpp"
#include "qkfib/lawcheck.hpp"
#include "qkfib/output.hpp"
#include "qkfib/roots.hpp"

namespace qkfib {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

inline void print_report_text(std::ostream& out, const LawReport& r) {
  Bits max_bits = 0;
  for (const CellBits& c : r.bits_used) max_bits = std::max(max_bits, c.bits);
  out << r.law_id << ": " << to_string(r.verdict) << " (" << r.witnesses.size() << " witnesses";
  if (max_bits > 0) out << ", max bits " << max_bits;
  if (r.strict) out << ", strict " << (*r.strict ? "yes" : "no");
  if (r.heuristic) out << ", heuristic";
  out << ")\n";
  for (const Witness& w : r.witnesses) {
    out << "  q=" << w.q << " k=" << w.k;
    if (w.n) out << " n=" << *w.n;
    out << " " << to_string(w.verdict) << ": " << w.detail << '\n';
  }
}

inline std::string scientific(const BigFloat& x) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.3Re", x.get());
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

/// Binet reconstruction with the root set recomputed at doubled precision
/// while the rounding guard fails.
inline Reconstruction reconstruct_escalating(const SequenceParams& p, TermIndex n, Bits bits) {
  require_index(p, n);
  for (Bits work = bits;; work *= 2) {
    try {
      return binet_reconstruct(all_roots(p, work), n);
    } catch (const ReconstructionError&) {
      if (work * 2 > bits * kEscalationFactor) throw;
    } catch (const ConvergenceError&) {
      if (work * 2 > bits * kEscalationFactor) throw;
    }
  }
}

}  // namespace detail

/// Runs one command line (args excludes the program name).
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and certified computation of (q,k)-bonacci numbers", "qkfib"};
  app.require_subcommand(1);

  std::int64_t q = 0, k = 0, n = 0;

  auto* term = app.add_subcommand("term", "Print one exact term F(n)");
  std::string method = "def";
  Bits term_bits = 256;
  term->add_option("--q", q, "Weight of F(n-1), q >= 1")->required();
  term->add_option("--k", k, "Order, k >= 2")->required();
  term->add_option("--n", n, "Index, n >= 2 - k")->required();
  term->add_option("--method", method, "def | shortcut | fast | theorem3 | binet")
      ->check(CLI::IsMember({"def", "shortcut", "fast", "theorem3", "binet"}));
  term->add_option("--bits", term_bits, "Starting precision for --method binet")->check(CLI::Range(16, 1 << 20));

  auto* table = app.add_subcommand("table", "Print F(n) over a (k, n) grid for one q");
  std::int64_t k_min = 2, k_max = 2;
  TermIndex n_min = 1, n_max = 9;
  std::string table_format = "csv";
  table->add_option("--q", q)->required();
  table->add_option("--k-min", k_min)->required();
  table->add_option("--k-max", k_max)->required();
  table->add_option("--n-min", n_min, "Default 1");
  table->add_option("--n-max", n_max)->required();
  table->add_option("--format", table_format, "csv | json | markdown")
      ->check(CLI::IsMember({"csv", "json", "markdown"}));

  auto* root = app.add_subcommand("root", "Print an enclosure of the dominant root");
  Bits root_bits = 64;
  root->add_option("--q", q)->required();
  root->add_option("--k", k)->required();
  root->add_option("--bits", root_bits, "Enclosure width is at most 2^-bits")->check(CLI::Range(8, 1 << 20));

  auto* verify = app.add_subcommand("verify", "Check laws over a parameter grid");
  std::string law_name = "all";
  std::string verify_format = "text";
  std::optional<std::int64_t> grid_q, grid_q_min, grid_q_max;
  std::optional<TermIndex> grid_n_min;
  Grid grid = Grid::defaults();
  Bits verify_bits = kDefaultBits;
  verify
      ->add_option("--law", law_name,
                   "identities | lemma1 | lemma2 | error-bound | growth | reconstruction | decay | all")
      ->check(CLI::IsMember(
          {"identities", "lemma1", "lemma2", "error-bound", "growth", "reconstruction", "decay", "all"}));
  verify->add_option("--q", grid_q, "Single q (sets q-min and q-max)");
  verify->add_option("--q-min", grid_q_min);
  verify->add_option("--q-max", grid_q_max);
  verify->add_option("--k-min", grid.k_min);
  verify->add_option("--k-max", grid.k_max);
  verify->add_option("--n-min", grid_n_min, "Default 2 - k");
  verify->add_option("--n-max", grid.n_max);
  verify->add_option("--bits", verify_bits)->check(CLI::Range(16, 1 << 16));
  verify->add_option("--format", verify_format, "text | json")->check(CLI::IsMember({"text", "json"}));

  auto* series = app.add_subcommand("series", "Print generating-function coefficients c_0 .. c_{count-1}");
  std::int64_t count = 0;
  series->add_option("--q", q)->required();
  series->add_option("--k", k)->required();
  series->add_option("--count", count)->required()->check(CLI::Range(0, 1 << 20));

  auto* bench = app.add_subcommand("bench", "Compare wall times of def, shortcut and fast");
  int reps = 3;
  bench->add_option("--q", q)->required();
  bench->add_option("--k", k)->required();
  bench->add_option("--n", n)->required();
  bench->add_option("--reps", reps)->check(CLI::Range(1, 1000));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (term->parsed()) {
      const SequenceParams p(q, k);
      if (method == "binet") {
        const Reconstruction r = detail::reconstruct_escalating(p, n, term_bits);
        out << r.value.get_str() << '\n';
        out << "residual " << detail::scientific(r.residual) << " imaginary " << detail::scientific(r.imaginary)
            << " bits " << r.bits << '\n';
        return kExitOk;
      }
      Integer v;
      if (method == "def") v = term_definition(p, n);
      else if (method == "shortcut") v = term_shortcut(p, n);
      else if (method == "fast") v = term_fast(p, n);
      else v = theorem3_term(p, n);
      out << v.get_str() << '\n';
      return kExitOk;
    }

    if (table->parsed()) {
      const auto rows = make_table(q, k_min, k_max, n_min, n_max);
      const TableFormat format = table_format == "json" ? TableFormat::json
                                 : table_format == "markdown" ? TableFormat::markdown
                                                              : TableFormat::csv;
      write_table(out, rows, format);
      for (const TableRow& r : rows)
        if (r.q == 4 && r.k == 5 && r.n == 9)
          err << "note: F(q=4, k=5, n=9) = " << r.value.get_str()
              << " by the defining recurrence; the value 132565 found in published tables is a misprint\n";
      return kExitOk;
    }

    if (root->parsed()) {
      const RootEnclosure r = dominant_root(SequenceParams(q, k), root_bits);
      out << to_string(r.interval(), decimal_digits_for(root_bits)) << '\n';
      return kExitOk;
    }

    if (series->parsed()) {
      for (const Integer& c : series_coefficients(SequenceParams(q, k), count)) out << c.get_str() << '\n';
      return kExitOk;
    }

    if (bench->parsed()) {
      const SequenceParams p(q, k);
      const auto results = bench_strategies(p, n, reps);
      write_bench(out, p, n, reps, results);
      for (const BenchResult& r : results)
        if (r.value != results.front().value) {
          err << "error: strategy " << r.strategy << " disagrees with def\n";
          return kExitFail;
        }
      return kExitOk;
    }

    if (verify->parsed()) {
      if (grid_q) grid.q_min = grid.q_max = *grid_q;
      if (grid_q_min) grid.q_min = *grid_q_min;
      if (grid_q_max) grid.q_max = *grid_q_max;
      grid.n_min = grid_n_min;

      std::vector<LawReport> reports;
      auto keep = [&](std::vector<LawReport> all, std::initializer_list<const char*> ids) {
        for (auto& r : all)
          if (std::find_if(ids.begin(), ids.end(), [&](const char* id) { return r.law_id == id; }) != ids.end())
            reports.push_back(std::move(r));
      };
      if (law_name == "identities") reports = check_identities(grid);
      else if (law_name == "lemma1") keep(check_root_laws(grid, verify_bits), {law::kMonotone, law::kSandwich, law::kConfinement});
      else if (law_name == "lemma2") keep(check_root_laws(grid, verify_bits), {law::kWeight});
      else if (law_name == "error-bound") keep(check_term_bounds(grid, verify_bits), {law::kErrorBound});
      else if (law_name == "growth") keep(check_term_bounds(grid, verify_bits), {law::kGrowth});
      else if (law_name == "reconstruction") reports.push_back(check_reconstruction(grid, verify_bits));
      else if (law_name == "decay") reports.push_back(check_error_decay(grid, verify_bits));
      else reports = check_all(grid, verify_bits);

      if (verify_format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const LawReport& r : reports) j.push_back(to_json(r));
        out << j.dump(2) << '\n';
      } else {
        for (const LawReport& r : reports) detail::print_report_text(out, r);
      }
      const bool all_pass =
          std::all_of(reports.begin(), reports.end(), [](const LawReport& r) { return r.verdict == Verdict::pass; });
      return all_pass ? kExitOk : kExitFail;
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const RegimeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}

}  // namespace qkfib

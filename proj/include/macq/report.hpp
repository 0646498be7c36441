#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "engine.hpp"
#include "oracle.hpp"

namespace macq::report {

enum class Flag { ClaimExceedsOpt, LbViolation };

inline const char* to_string(Flag f) { return f == Flag::ClaimExceedsOpt ? "CLAIM_EXCEEDS_OPT" : "LB_VIOLATION"; }

struct ReportRow {
  int n = 0;
  int d = 0;
  std::optional<long long> oracle_opt;
  std::optional<long long> tree_worst;
  std::optional<long long> linear_worst;
  std::optional<long long> info_lb;
  std::optional<long long> claimed_factorial;
  std::optional<long long> claimed_power;
  std::optional<long long> claimed_analytic;
  std::vector<Flag> flags;  // in enum order, no duplicates
  std::vector<std::string> notes;  // "<column>: <error>" for cells that failed

  bool has(Flag f) const { return std::find(flags.begin(), flags.end(), f) != flags.end(); }
};

namespace detail {

inline std::optional<long long> cell(ReportRow& row, const char* column, const std::function<long long()>& compute) {
  try {
    return compute();
  } catch (const Error& e) {
    row.notes.push_back(std::string(column) + ": " + e.what());
    return std::nullopt;
  }
}

}  // namespace detail

inline ReportRow make_row(int n, int d, const oracle::OracleLimits& oracle_cap) {
  ReportRow row;
  row.n = n;
  row.d = d;
  const GameConfig config(n, d);
  if (n <= oracle_cap.max_n && d <= oracle_cap.max_d)
    row.oracle_opt = detail::cell(row, "oracle_opt", [&] { return oracle::exact_optimal_rounds(config, oracle_cap); });
  row.tree_worst = detail::cell(row, "tree_worst", [&] {
    return static_cast<long long>(worst_case_rounds(tree_split_strategy(), config).max_rounds);
  });
  row.linear_worst = detail::cell(row, "linear_worst", [&] {
    return static_cast<long long>(worst_case_rounds(linear_scan_strategy(), config).max_rounds);
  });
  row.info_lb = detail::cell(row, "info_lb", [&] { return bounds::info_lower_bound(n, d); });
  row.claimed_factorial = detail::cell(row, "claimed_factorial", [&] {
    return bounds::claimed_bound_combinatorial(n, d, bounds::LabelFactor::Factorial);
  });
  row.claimed_power = detail::cell(row, "claimed_power", [&] {
    return bounds::claimed_bound_combinatorial(n, d, bounds::LabelFactor::Power);
  });
  row.claimed_analytic = detail::cell(row, "claimed_analytic", [&] { return bounds::claimed_bound_analytic(n, d); });

  if (row.oracle_opt) {
    const long long opt = *row.oracle_opt;
    bool exceeds = false;
    for (const auto& claimed : {row.claimed_factorial, row.claimed_power, row.claimed_analytic}) {
      if (claimed && *claimed > opt) exceeds = true;
    }
    if (exceeds) row.flags.push_back(Flag::ClaimExceedsOpt);
    if (row.info_lb && *row.info_lb > opt) row.flags.push_back(Flag::LbViolation);
  }
  return row;
}

/// Rows for 2 <= n <= n_max and 1 <= d <= min(n, d_max), ordered by n then d.
/// Cell failures become empty cells with a note; the report never aborts.
inline std::vector<ReportRow> generate_report(int n_max, int d_max, const oracle::OracleLimits& oracle_cap = {}) {
  if (n_max < 2) throw Error(ErrorKind::DomainError, "generate_report needs n_max >= 2");
  if (d_max < 1) throw Error(ErrorKind::DomainError, "generate_report needs d_max >= 1");
  std::vector<ReportRow> rows;
  for (int n = 2; n <= n_max; ++n) {
    for (int d = 1; d <= std::min(n, d_max); ++d) rows.push_back(make_row(n, d, oracle_cap));
  }
  return rows;
}

inline constexpr const char* kCsvHeader =
    "n,d,oracle_opt,tree_worst,linear_worst,info_lb,claimed_factorial,claimed_power,claimed_analytic,flags";

inline std::string to_csv_line(const ReportRow& row) {
  auto field = [](const std::optional<long long>& v) { return v ? std::to_string(*v) : std::string(); };
  std::string flags;
  for (Flag f : row.flags) {
    if (!flags.empty()) flags += ';';
    flags += to_string(f);
  }
  return std::to_string(row.n) + "," + std::to_string(row.d) + "," + field(row.oracle_opt) + "," +
         field(row.tree_worst) + "," + field(row.linear_worst) + "," + field(row.info_lb) + "," +
         field(row.claimed_factorial) + "," + field(row.claimed_power) + "," + field(row.claimed_analytic) + "," +
         flags;
}

inline std::string to_csv(const std::vector<ReportRow>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const ReportRow& row : rows) out += to_csv_line(row) + "\n";
  return out;
}

}  // namespace macq::report

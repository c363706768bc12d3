#pragma once

#include <map>
#include <string>
#include <vector>

#include "qapbound/bound_solver.hpp"

namespace qapbound {

/// Relative margin of the best-bound rule.
inline constexpr double kBestBoundMargin = 1e-10;

/// B counts as best among bounds with maximum max when
/// B >= max - margin * |max|. For negative max this is B >= (1 + margin) max.
bool is_best_bound(double bound, double max);

struct ResultRow {
  std::string instance;
  std::string group;
  Method method = Method::hung_ri;
  double final_bound = 0.0;
  double offset = 0.0;  // constant removed by instance conversion
  int iterations = 0;
  double wall_time = 0.0;
  bool best = false;
};

struct GroupSummary {
  std::string group;
  int instances = 0;
  std::map<Method, int> best_count;
  std::map<Method, double> average_bound;
};

class ResultTable {
 public:
  void add(ResultRow row) { rows_.push_back(std::move(row)); }
  const std::vector<ResultRow>& rows() const { return rows_; }

  /// Sets ResultRow::best by comparing the methods on each instance.
  void mark_best();
  /// Per group in first-appearance order.
  std::vector<GroupSummary> summary() const;
  std::vector<Method> methods() const;

  std::string to_json() const;
  std::string to_csv() const;
  /// Plain-text table: one line per group, "#best" and "avg" per method.
  std::string to_text() const;

 private:
  std::vector<ResultRow> rows_;
};

/// Canonical JSON for one run. Keys are sorted; wall_time is the only field
/// that depends on timing.
std::string report_to_json(const BoundReport& report, bool trajectory, double offset = 0.0);
std::string report_to_csv(const BoundReport& report, bool trajectory, double offset = 0.0);

}  // namespace qapbound

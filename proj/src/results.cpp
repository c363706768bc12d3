#include "qapbound/results.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qapbound/io.hpp"

namespace qapbound {

using nlohmann::json;

bool is_best_bound(double bound, double max) { return bound >= max - kBestBoundMargin * std::abs(max); }

void ResultTable::mark_best() {
  std::map<std::pair<std::string, std::string>, double> max;
  for (const auto& r : rows_) {
    auto key = std::pair{r.group, r.instance};
    auto it = max.find(key);
    if (it == max.end())
      max.emplace(key, r.final_bound);
    else
      it->second = std::max(it->second, r.final_bound);
  }
  for (auto& r : rows_) r.best = is_best_bound(r.final_bound, max.at({r.group, r.instance}));
}

std::vector<Method> ResultTable::methods() const {
  std::vector<Method> out;
  for (const auto& r : rows_)
    if (std::find(out.begin(), out.end(), r.method) == out.end()) out.push_back(r.method);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GroupSummary> ResultTable::summary() const {
  std::vector<GroupSummary> out;
  std::map<std::string, std::size_t> index;
  std::vector<std::map<Method, int>> counts;
  std::vector<std::map<std::string, int>> seen;
  for (const auto& r : rows_) {
    auto [it, fresh] = index.emplace(r.group, out.size());
    if (fresh) {
      out.push_back({r.group, 0, {}, {}});
      counts.emplace_back();
      seen.emplace_back();
    }
    auto& g = out[it->second];
    if (seen[it->second][r.instance]++ == 0) ++g.instances;
    g.best_count[r.method] += r.best ? 1 : 0;
    g.average_bound[r.method] += r.final_bound;
    ++counts[it->second][r.method];
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    for (auto& [m, sum] : out[i].average_bound) sum /= counts[i][m];
  return out;
}

std::string ResultTable::to_json() const {
  json rows = json::array();
  for (const auto& r : rows_)
    rows.push_back({{"instance", r.instance},
                    {"group", r.group},
                    {"method", method_name(r.method)},
                    {"final_bound", r.final_bound},
                    {"offset", r.offset},
                    {"iterations", r.iterations},
                    {"wall_time", r.wall_time},
                    {"best", r.best}});
  json groups = json::array();
  for (const auto& g : summary()) {
    json methods = json::object();
    for (const auto& [m, avg] : g.average_bound)
      methods[method_name(m)] = {{"best_count", g.best_count.at(m)}, {"average_bound", avg}};
    groups.push_back({{"group", g.group}, {"instances", g.instances}, {"methods", methods}});
  }
  return json{{"rows", rows}, {"groups", groups}}.dump(2) + "\n";
}

std::string ResultTable::to_csv() const {
  std::ostringstream out;
  out << "instance,group,method,final_bound,offset,iterations,wall_time,best\n";
  for (const auto& r : rows_)
    out << r.instance << ',' << r.group << ',' << method_name(r.method) << ',' << format_double(r.final_bound) << ','
        << format_double(r.offset) << ',' << r.iterations << ',' << format_double(r.wall_time) << ','
        << (r.best ? 1 : 0) << '\n';
  return out.str();
}

std::string ResultTable::to_text() const {
  const auto ms = methods();
  std::ostringstream out;
  out << std::left << std::setw(20) << "group" << std::right << std::setw(6) << "#inst";
  for (Method m : ms) out << " | " << std::setw(8) << method_name(m) << " #best" << std::setw(16) << "avg";
  out << '\n';
  for (const auto& g : summary()) {
    out << std::left << std::setw(20) << g.group << std::right << std::setw(6) << g.instances;
    for (Method m : ms) {
      auto bc = g.best_count.find(m);
      auto avg = g.average_bound.find(m);
      out << " | " << std::setw(14) << (bc == g.best_count.end() ? 0 : bc->second);
      if (avg == g.average_bound.end())
        out << std::setw(16) << "-";
      else
        out << std::setw(16) << std::setprecision(10) << avg->second;
    }
    out << '\n';
  }
  return out.str();
}

namespace {

json report_json(const BoundReport& report, bool trajectory, double offset) {
  json j = {{"instance", report.instance},
            {"method", method_name(report.method)},
            {"initial_bound", report.initial_bound},
            {"final_bound", report.final_bound},
            {"offset", offset},
            {"iterations", report.iterations},
            {"stop_reason", stop_reason_name(report.stop_reason)},
            {"wall_time", report.wall_time}};
  if (trajectory) j["trajectory"] = report.trajectory;
  return j;
}

}  // namespace

std::string report_to_json(const BoundReport& report, bool trajectory, double offset) {
  return report_json(report, trajectory, offset).dump(2) + "\n";
}

std::string report_to_csv(const BoundReport& report, bool trajectory, double offset) {
  std::ostringstream out;
  out << "instance,method,initial_bound,final_bound,offset,iterations,stop_reason,wall_time\n";
  out << report.instance << ',' << method_name(report.method) << ',' << format_double(report.initial_bound) << ','
      << format_double(report.final_bound) << ',' << format_double(offset) << ',' << report.iterations << ','
      << stop_reason_name(report.stop_reason) << ',' << format_double(report.wall_time) << '\n';
  if (trajectory) {
    out << "\niteration,bound\n";
    for (std::size_t i = 0; i < report.trajectory.size(); ++i)
      out << i + 1 << ',' << format_double(report.trajectory[i]) << '\n';
  }
  return out.str();
}

}  // namespace qapbound

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qapbound/instance.hpp"

namespace qapbound {

/// Input text that cannot be read. line is 1-based, 0 when not tied to a line.
class ParseError : public InstanceError {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads a whole file; throws ParseError (line 0) if it cannot be opened.
std::string read_file(const std::string& path);

/// Graph-matching text format:
///   c <anything>            comment
///   p <N0> <N1> <A> <E>     header, before any record
///   a <id> <v> <l> <cost>   allowed pair, ids 0..A-1 each exactly once
///   e <id1> <id2> <cost>    pairwise cost between two pairs of distinct vertices
///   n0 ... / n1 ...         coordinate lines, ignored
/// The dummy label (id N1) is appended to every vertex with cost dummy_cost.
IqapInstance parse_dd(std::string_view text, double dummy_cost = 0.0);

/// Inverse of parse_dd for instances whose dummy costs are all equal and
/// whose pairwise terms do not involve the dummy. Costs are written in the
/// shortest form that reads back to the same double.
std::string serialize_dd(const IqapInstance& inst);

/// Koopmans-Beckmann data: n, then the flow matrix, then the distance matrix.
struct QaplibData {
  Index n = 0;
  std::vector<double> flow;      // row-major n x n
  std::vector<double> distance;  // row-major n x n
  double f(Index i, Index j) const { return flow[static_cast<std::size_t>(i) * n + j]; }
  double d(Index i, Index j) const { return distance[static_cast<std::size_t>(i) * n + j]; }
};

QaplibData parse_qaplib(std::string_view text);

struct QaplibConversion {
  IqapInstance instance;
  double shift = 0.0;   // C, subtracted from every real-label unary
  double offset = 0.0;  // n * C; QAP value = IQAP value + offset
};

/// Pairwise cost theta_uv(k, l) = F_uv D_kl + F_vu D_lk on vertex pairs u < v
/// with a nonzero block, nonzero entries stored. Real unaries are
/// F_vv D_ll - C with C = 1 + max |F_vv D_ll| + sum over edges of the largest
/// absolute pairwise entry unless a shift is given. The dummy costs 0.
QaplibConversion convert_qaplib_to_iqap(const QaplibData& data, std::optional<double> shift = std::nullopt);

inline constexpr double kAugmentCost = 1e7;

/// Sets theta_uv(l, l) to kAugmentCost on every edge for every real label l
/// allowed at both ends whose current value is zero (stored or not).
IqapInstance augment_instance(const IqapInstance& inst);

/// Small text format for single LAP / ILAP problems:
///   c <anything>
///   p lap <n>                 or   p ilap <num_vertices> <num_real_labels>
///   a <v> <l> <cost>          allowed pair
///   d <v> <cost>              ILAP dummy cost (default 0)
using AssignmentProblem = std::variant<LapInstance, IlapInstance>;
AssignmentProblem parse_assignment_problem(std::string_view text);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

}  // namespace qapbound

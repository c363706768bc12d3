#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qapbound {

using Index = std::int32_t;
inline constexpr Index kNone = -1;

/// Relative tolerance used for all equality tests against constraints. Every
/// instance scales it by (1 + max |cost|) before use.
inline constexpr double kDefaultTau = 1e-9;

/// Thrown when an instance cannot be constructed from the given data.
class InstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an operation is called with inputs that violate its contract
/// (an infeasible dual, an assignment outside the equality subgraph, ...).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Thrown when an objective is evaluated on an infeasible assignment.
class FeasibilityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One allowed (vertex, label) pair with its cost, used to build instances.
struct UnaryInput {
  Index label;
  double cost;
};

/// Per-vertex sorted allowed-label lists with parallel cost arrays.
///
/// Entries are numbered 0..num_entries()-1 in vertex-major, label-ascending
/// order. A column index (the vertices allowing each label) is built at
/// construction so label-centric sweeps do not have to scan every row.
class SparseCosts {
 public:
  SparseCosts() = default;

  /// Validates and sorts the rows. Throws InstanceError on an empty row,
  /// a duplicate label within a row, an out-of-range label or a non-finite
  /// cost.
  SparseCosts(Index num_labels, std::vector<std::vector<UnaryInput>> rows);

  Index num_vertices() const { return static_cast<Index>(row_begin_.size()) - 1; }
  Index num_labels() const { return num_labels_; }
  std::size_t num_entries() const { return label_.size(); }

  std::size_t row_begin(Index v) const { return row_begin_[v]; }
  std::size_t row_end(Index v) const { return row_begin_[v + 1]; }
  Index row_size(Index v) const { return static_cast<Index>(row_end(v) - row_begin(v)); }

  std::span<const Index> labels(Index v) const {
    return {label_.data() + row_begin(v), row_end(v) - row_begin(v)};
  }
  std::span<const double> costs(Index v) const {
    return {cost_.data() + row_begin(v), row_end(v) - row_begin(v)};
  }

  Index entry_vertex(std::size_t e) const { return vertex_[e]; }
  Index entry_label(std::size_t e) const { return label_[e]; }
  double entry_cost(std::size_t e) const { return cost_[e]; }

  /// Entry id of (v, label), if the label is allowed for v.
  std::optional<std::size_t> find(Index v, Index label) const;

  /// Entry ids of all (v, label) pairs with the given label, by ascending v.
  std::span<const std::size_t> column(Index label) const {
    return {col_entries_.data() + col_begin_[label], col_begin_[label + 1] - col_begin_[label]};
  }

  double max_abs_cost() const { return max_abs_cost_; }
  /// True when every cost is an integer small enough for exact int64 sums.
  bool integral() const { return integral_; }

  /// Same sparsity pattern, every cost multiplied by factor.
  SparseCosts scaled(double factor) const;

  bool operator==(const SparseCosts& other) const {
    return num_labels_ == other.num_labels_ && row_begin_ == other.row_begin_ &&
           label_ == other.label_ && cost_ == other.cost_;
  }

 private:
  void build_index();

  Index num_labels_ = 0;
  std::vector<std::size_t> row_begin_{0};
  std::vector<Index> label_;
  std::vector<double> cost_;
  std::vector<Index> vertex_;
  std::vector<std::size_t> col_begin_{0};
  std::vector<std::size_t> col_entries_;
  double max_abs_cost_ = 0.0;
  bool integral_ = true;
};

/// Linear assignment problem: a min-cost bijection between vertices and labels
/// restricted to allowed pairs.
class LapInstance {
 public:
  LapInstance() = default;
  /// Throws InstanceError unless num_vertices == num_labels.
  explicit LapInstance(SparseCosts costs);
  /// Square instance, rows[v] lists the allowed labels of v.
  LapInstance(Index n, std::vector<std::vector<UnaryInput>> rows);
  /// Complete instance from a dense n x n matrix given row-major.
  static LapInstance dense(Index n, std::span<const double> matrix);

  Index size() const { return costs_.num_vertices(); }
  const SparseCosts& costs() const { return costs_; }
  double tolerance(double tau = kDefaultTau) const { return tau * (1.0 + costs_.max_abs_cost()); }

  bool operator==(const LapInstance&) const = default;

 private:
  SparseCosts costs_;
};

/// Incomplete LAP. Label ids 0..num_real_labels()-1 are ordinary labels and
/// id num_real_labels() is the dummy label, allowed for every vertex and
/// assignable to any number of them.
class IlapInstance {
 public:
  IlapInstance() = default;
  /// `costs` must contain the dummy label (id num_labels - 1) in every row.
  explicit IlapInstance(SparseCosts costs);
  /// rows hold real labels only; the dummy entry is appended per vertex.
  IlapInstance(Index num_real_labels, std::vector<std::vector<UnaryInput>> rows,
               std::vector<double> dummy_costs);

  Index num_vertices() const { return costs_.num_vertices(); }
  Index num_real_labels() const { return costs_.num_labels() - 1; }
  Index dummy() const { return costs_.num_labels() - 1; }
  bool is_dummy(Index label) const { return label == dummy(); }
  const SparseCosts& costs() const { return costs_; }
  double dummy_cost(Index v) const { return costs_.entry_cost(costs_.row_end(v) - 1); }
  double tolerance(double tau = kDefaultTau) const { return tau * (1.0 + costs_.max_abs_cost()); }

  bool operator==(const IlapInstance&) const = default;

 private:
  SparseCosts costs_;
};

/// One stored pairwise cost; k and l are positions within labels(u) and
/// labels(v) of the owning edge.
struct PairwiseEntry {
  Index k;
  Index l;
  double cost;
  bool operator==(const PairwiseEntry&) const = default;
};

/// Pairwise cost table of one edge uv with u < v. Entries are sorted by (k, l);
/// by_column lists entry positions sorted by (l, k). Unstored pairs cost 0.
struct PairwiseTerm {
  Index u = 0;
  Index v = 0;
  std::vector<PairwiseEntry> entries;
  std::vector<std::size_t> by_column;

  std::optional<double> find(Index k, Index l) const;
  double cost(Index k, Index l) const { return find(k, l).value_or(0.0); }
  bool operator==(const PairwiseTerm& o) const { return u == o.u && v == o.v && entries == o.entries; }
};

/// Pairwise cost input in global label ids: theta_uv(label_u, label_v).
struct PairwiseInput {
  Index u;
  Index label_u;
  Index v;
  Index label_v;
  double cost;
};

/// Incomplete quadratic assignment problem: an ILAP plus pairwise costs on a
/// loopless graph over the vertices.
class IqapInstance {
 public:
  IqapInstance() = default;
  /// Pairwise inputs are grouped by unordered vertex pair, canonicalized to
  /// u < v and summed when the same (u, k, v, l) appears more than once.
  /// Throws InstanceError on loops, unknown vertices, disallowed labels or
  /// non-finite costs.
  IqapInstance(IlapInstance unary, std::span<const PairwiseInput> pairwise);

  const IlapInstance& unary() const { return unary_; }
  Index num_vertices() const { return unary_.num_vertices(); }
  Index num_edges() const { return static_cast<Index>(edges_.size()); }
  const PairwiseTerm& edge(Index e) const { return edges_[e]; }
  std::span<const PairwiseTerm> edges() const { return edges_; }

  /// Edge ids incident to v, ascending.
  std::span<const Index> incident_edges(Index v) const {
    return {incident_.data() + incident_begin_[v], incident_begin_[v + 1] - incident_begin_[v]};
  }

  double max_abs_cost() const;
  bool integral() const;
  double tolerance(double tau = kDefaultTau) const { return tau * (1.0 + max_abs_cost()); }

  bool operator==(const IqapInstance& o) const { return unary_ == o.unary_ && edges_ == o.edges_; }

 private:
  void build_incidence();

  IlapInstance unary_;
  std::vector<PairwiseTerm> edges_;
  std::vector<std::size_t> incident_begin_{0};
  std::vector<Index> incident_;
};

/// x[v] is the label id assigned to v (the dummy id for ILAP/IQAP "#").
using Assignment = std::vector<Index>;

struct LapDual {
  std::vector<double> alpha;  // per vertex
  std::vector<double> beta;   // per label
};

/// beta is indexed by real labels only.
struct IlapDual {
  std::vector<double> alpha;
  std::vector<double> beta;
};

/// Primal LP vector mu_v(l), one value per SparseCosts entry.
struct PrimalVector {
  std::vector<double> value;
};

enum class ViolationKind { size_mismatch, disallowed_label, duplicate_label };

struct Violation {
  ViolationKind kind;
  Index vertex = kNone;
  Index label = kNone;
  std::string message() const;
};

std::optional<Violation> check_feasible(const LapInstance& inst, const Assignment& x);
std::optional<Violation> check_feasible(const IlapInstance& inst, const Assignment& x);
std::optional<Violation> check_feasible(const IqapInstance& inst, const Assignment& x);

/// Objective values; throw FeasibilityError on infeasible assignments.
double lap_objective(const LapInstance& inst, const Assignment& x);
double ilap_objective(const IlapInstance& inst, const Assignment& x);
double iqap_objective(const IqapInstance& inst, const Assignment& x);

enum class DualViolationKind { constraint, positive_beta };

struct DualViolation {
  DualViolationKind kind;
  Index vertex = kNone;
  Index label = kNone;
  double excess = 0.0;
  std::string message() const;
};

/// Feasibility of the LP duals within absolute tolerance tol. Throw
/// std::invalid_argument on a dimension mismatch.
std::optional<DualViolation> dual_feasible(const LapInstance& inst, const LapDual& dual, double tol);
std::optional<DualViolation> dual_feasible(const IlapInstance& inst, const IlapDual& dual, double tol);
double dual_objective(const LapInstance& inst, const LapDual& dual);
double dual_objective(const IlapInstance& inst, const IlapDual& dual);

/// theta_v(l) - alpha_v - beta_l, the slack of dual constraint (v, l).
inline double slack(const LapInstance& inst, const LapDual& dual, std::size_t entry) {
  const auto& c = inst.costs();
  return c.entry_cost(entry) - dual.alpha[c.entry_vertex(entry)] - dual.beta[c.entry_label(entry)];
}

}  // namespace qapbound

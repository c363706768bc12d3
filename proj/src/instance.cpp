#include "qapbound/instance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace qapbound {

namespace {

// Integer costs above this magnitude are solved in floating point; sums of up
// to 2^20 such values stay exact in int64 and in double.
constexpr double kIntegralLimit = 1099511627776.0;  // 2^40

std::string pair_str(Index v, Index l) {
  return "(vertex " + std::to_string(v) + ", label " + std::to_string(l) + ")";
}

}  // namespace

SparseCosts::SparseCosts(Index num_labels, std::vector<std::vector<UnaryInput>> rows)
    : num_labels_(num_labels) {
  if (num_labels < 0) throw InstanceError("negative label count");
  row_begin_.reserve(rows.size() + 1);
  for (std::size_t v = 0; v < rows.size(); ++v) {
    auto& row = rows[v];
    if (row.empty())
      throw InstanceError("vertex " + std::to_string(v) + " has no allowed label");
    std::sort(row.begin(), row.end(),
              [](const UnaryInput& a, const UnaryInput& b) { return a.label < b.label; });
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& in = row[i];
      if (in.label < 0 || in.label >= num_labels)
        throw InstanceError("label out of range at " + pair_str(static_cast<Index>(v), in.label));
      if (i > 0 && row[i - 1].label == in.label)
        throw InstanceError("duplicate label at " + pair_str(static_cast<Index>(v), in.label));
      if (!std::isfinite(in.cost))
        throw InstanceError("non-finite cost at " + pair_str(static_cast<Index>(v), in.label));
      label_.push_back(in.label);
      cost_.push_back(in.cost);
      vertex_.push_back(static_cast<Index>(v));
    }
    row_begin_.push_back(label_.size());
  }
  build_index();
}

void SparseCosts::build_index() {
  col_begin_.assign(static_cast<std::size_t>(num_labels_) + 1, 0);
  for (Index l : label_) ++col_begin_[l + 1];
  for (Index l = 0; l < num_labels_; ++l) col_begin_[l + 1] += col_begin_[l];
  col_entries_.assign(label_.size(), 0);
  std::vector<std::size_t> fill(col_begin_.begin(), col_begin_.end() - 1);
  for (std::size_t e = 0; e < label_.size(); ++e) col_entries_[fill[label_[e]]++] = e;

  max_abs_cost_ = 0.0;
  integral_ = true;
  for (double c : cost_) {
    max_abs_cost_ = std::max(max_abs_cost_, std::abs(c));
    if (c != std::floor(c) || std::abs(c) > kIntegralLimit) integral_ = false;
  }
}

std::optional<std::size_t> SparseCosts::find(Index v, Index label) const {
  auto ls = labels(v);
  auto it = std::lower_bound(ls.begin(), ls.end(), label);
  if (it == ls.end() || *it != label) return std::nullopt;
  return row_begin(v) + static_cast<std::size_t>(it - ls.begin());
}

SparseCosts SparseCosts::scaled(double factor) const {
  SparseCosts out = *this;
  for (double& c : out.cost_) c *= factor;
  out.build_index();
  return out;
}

LapInstance::LapInstance(SparseCosts costs) : costs_(std::move(costs)) {
  if (costs_.num_vertices() != costs_.num_labels())
    throw InstanceError("LAP needs as many labels as vertices (" +
                        std::to_string(costs_.num_vertices()) + " vs " +
                        std::to_string(costs_.num_labels()) + ")");
}

LapInstance::LapInstance(Index n, std::vector<std::vector<UnaryInput>> rows)
    : LapInstance(SparseCosts(n, std::move(rows))) {}

LapInstance LapInstance::dense(Index n, std::span<const double> matrix) {
  if (matrix.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw InstanceError("dense LAP matrix has wrong size");
  std::vector<std::vector<UnaryInput>> rows(n);
  for (Index v = 0; v < n; ++v)
    for (Index l = 0; l < n; ++l) rows[v].push_back({l, matrix[static_cast<std::size_t>(v) * n + l]});
  return LapInstance(n, std::move(rows));
}

IlapInstance::IlapInstance(SparseCosts costs) : costs_(std::move(costs)) {
  if (costs_.num_labels() < 1) throw InstanceError("ILAP needs the dummy label");
  const Index d = dummy();
  for (Index v = 0; v < costs_.num_vertices(); ++v) {
    auto ls = costs_.labels(v);
    if (ls.back() != d)
      throw InstanceError("dummy label missing for vertex " + std::to_string(v));
  }
}

IlapInstance::IlapInstance(Index num_real_labels, std::vector<std::vector<UnaryInput>> rows,
                           std::vector<double> dummy_costs) {
  if (dummy_costs.size() != rows.size())
    throw InstanceError("one dummy cost per vertex is required");
  for (std::size_t v = 0; v < rows.size(); ++v) rows[v].push_back({num_real_labels, dummy_costs[v]});
  costs_ = SparseCosts(num_real_labels + 1, std::move(rows));
}

std::optional<double> PairwiseTerm::find(Index k, Index l) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), std::pair{k, l},
                             [](const PairwiseEntry& e, const std::pair<Index, Index>& key) {
                               return std::pair{e.k, e.l} < key;
                             });
  if (it == entries.end() || it->k != k || it->l != l) return std::nullopt;
  return it->cost;
}

IqapInstance::IqapInstance(IlapInstance unary, std::span<const PairwiseInput> pairwise)
    : unary_(std::move(unary)) {
  const auto& c = unary_.costs();
  const Index n = unary_.num_vertices();
  std::map<std::pair<Index, Index>, std::map<std::pair<Index, Index>, double>> grouped;
  for (const auto& in : pairwise) {
    if (in.u < 0 || in.u >= n || in.v < 0 || in.v >= n)
      throw InstanceError("pairwise term references an unknown vertex");
    if (in.u == in.v)
      throw InstanceError("pairwise term forms a loop at vertex " + std::to_string(in.u));
    if (!std::isfinite(in.cost)) throw InstanceError("non-finite pairwise cost");
    Index u = in.u, v = in.v, lu = in.label_u, lv = in.label_v;
    if (u > v) {
      std::swap(u, v);
      std::swap(lu, lv);
    }
    auto eu = c.find(u, lu);
    auto ev = c.find(v, lv);
    if (!eu || !ev)
      throw InstanceError("pairwise term uses a disallowed label on edge " + std::to_string(u) +
                          "-" + std::to_string(v));
    const auto k = static_cast<Index>(*eu - c.row_begin(u));
    const auto l = static_cast<Index>(*ev - c.row_begin(v));
    grouped[{u, v}][{k, l}] += in.cost;
  }
  edges_.reserve(grouped.size());
  for (auto& [uv, table] : grouped) {
    PairwiseTerm term;
    term.u = uv.first;
    term.v = uv.second;
    for (auto& [kl, cost] : table) term.entries.push_back({kl.first, kl.second, cost});
    term.by_column.resize(term.entries.size());
    for (std::size_t i = 0; i < term.by_column.size(); ++i) term.by_column[i] = i;
    std::sort(term.by_column.begin(), term.by_column.end(), [&](std::size_t a, std::size_t b) {
      const auto& x = term.entries[a];
      const auto& y = term.entries[b];
      return std::tie(x.l, x.k) < std::tie(y.l, y.k);
    });
    edges_.push_back(std::move(term));
  }
  build_incidence();
}

void IqapInstance::build_incidence() {
  const Index n = unary_.num_vertices();
  incident_begin_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& e : edges_) {
    ++incident_begin_[e.u + 1];
    ++incident_begin_[e.v + 1];
  }
  for (Index v = 0; v < n; ++v) incident_begin_[v + 1] += incident_begin_[v];
  incident_.assign(incident_begin_.back(), 0);
  std::vector<std::size_t> fill(incident_begin_.begin(), incident_begin_.end() - 1);
  for (Index e = 0; e < num_edges(); ++e) {
    incident_[fill[edges_[e].u]++] = e;
    incident_[fill[edges_[e].v]++] = e;
  }
}

double IqapInstance::max_abs_cost() const {
  double m = unary_.costs().max_abs_cost();
  for (const auto& e : edges_)
    for (const auto& p : e.entries) m = std::max(m, std::abs(p.cost));
  return m;
}

bool IqapInstance::integral() const {
  if (!unary_.costs().integral()) return false;
  for (const auto& e : edges_)
    for (const auto& p : e.entries)
      if (p.cost != std::floor(p.cost) || std::abs(p.cost) > kIntegralLimit) return false;
  return true;
}

std::string Violation::message() const {
  switch (kind) {
    case ViolationKind::size_mismatch:
      return "assignment size does not match the number of vertices";
    case ViolationKind::disallowed_label:
      return "label " + std::to_string(label) + " is not allowed for vertex " + std::to_string(vertex);
    case ViolationKind::duplicate_label:
      return "label " + std::to_string(label) + " is assigned more than once (again at vertex " +
             std::to_string(vertex) + ")";
  }
  return "unknown violation";
}

namespace {

std::optional<Violation> check_rows(const SparseCosts& c, const Assignment& x, Index free_label) {
  if (x.size() != static_cast<std::size_t>(c.num_vertices()))
    return Violation{ViolationKind::size_mismatch};
  std::vector<char> used(static_cast<std::size_t>(c.num_labels()), 0);
  for (Index v = 0; v < c.num_vertices(); ++v) {
    const Index l = x[v];
    if (l < 0 || l >= c.num_labels() || !c.find(v, l))
      return Violation{ViolationKind::disallowed_label, v, l};
    if (l == free_label) continue;
    if (used[l]) return Violation{ViolationKind::duplicate_label, v, l};
    used[l] = 1;
  }
  return std::nullopt;
}

double unary_sum(const SparseCosts& c, const Assignment& x) {
  double total = 0.0;
  for (Index v = 0; v < c.num_vertices(); ++v) total += c.entry_cost(*c.find(v, x[v]));
  return total;
}

void require_feasible(const std::optional<Violation>& viol) {
  if (viol) throw FeasibilityError("infeasible assignment: " + viol->message());
}

}  // namespace

std::optional<Violation> check_feasible(const LapInstance& inst, const Assignment& x) {
  // Same sizes and no repeated label make x a bijection.
  return check_rows(inst.costs(), x, kNone);
}

std::optional<Violation> check_feasible(const IlapInstance& inst, const Assignment& x) {
  return check_rows(inst.costs(), x, inst.dummy());
}

std::optional<Violation> check_feasible(const IqapInstance& inst, const Assignment& x) {
  return check_feasible(inst.unary(), x);
}

double lap_objective(const LapInstance& inst, const Assignment& x) {
  require_feasible(check_feasible(inst, x));
  return unary_sum(inst.costs(), x);
}

double ilap_objective(const IlapInstance& inst, const Assignment& x) {
  require_feasible(check_feasible(inst, x));
  return unary_sum(inst.costs(), x);
}

double iqap_objective(const IqapInstance& inst, const Assignment& x) {
  require_feasible(check_feasible(inst, x));
  const auto& c = inst.unary().costs();
  double total = unary_sum(c, x);
  for (const auto& e : inst.edges()) {
    const auto k = static_cast<Index>(*c.find(e.u, x[e.u]) - c.row_begin(e.u));
    const auto l = static_cast<Index>(*c.find(e.v, x[e.v]) - c.row_begin(e.v));
    total += e.cost(k, l);
  }
  return total;
}

std::string DualViolation::message() const {
  if (kind == DualViolationKind::positive_beta)
    return "beta of label " + std::to_string(label) + " is positive by " + std::to_string(excess);
  return "dual constraint at vertex " + std::to_string(vertex) + ", label " + std::to_string(label) +
         " is violated by " + std::to_string(excess);
}

std::optional<DualViolation> dual_feasible(const LapInstance& inst, const LapDual& dual, double tol) {
  const auto& c = inst.costs();
  if (dual.alpha.size() != static_cast<std::size_t>(c.num_vertices()) ||
      dual.beta.size() != static_cast<std::size_t>(c.num_labels()))
    throw std::invalid_argument("LAP dual dimensions do not match the instance");
  for (std::size_t e = 0; e < c.num_entries(); ++e) {
    const double s = slack(inst, dual, e);
    if (s < -tol)
      return DualViolation{DualViolationKind::constraint, c.entry_vertex(e), c.entry_label(e), -s};
  }
  return std::nullopt;
}

std::optional<DualViolation> dual_feasible(const IlapInstance& inst, const IlapDual& dual, double tol) {
  const auto& c = inst.costs();
  if (dual.alpha.size() != static_cast<std::size_t>(c.num_vertices()) ||
      dual.beta.size() != static_cast<std::size_t>(inst.num_real_labels()))
    throw std::invalid_argument("ILAP dual dimensions do not match the instance");
  for (Index l = 0; l < inst.num_real_labels(); ++l)
    if (dual.beta[l] > tol) return DualViolation{DualViolationKind::positive_beta, kNone, l, dual.beta[l]};
  for (std::size_t e = 0; e < c.num_entries(); ++e) {
    const Index v = c.entry_vertex(e);
    const Index l = c.entry_label(e);
    const double b = inst.is_dummy(l) ? 0.0 : dual.beta[l];
    const double s = c.entry_cost(e) - dual.alpha[v] - b;
    if (s < -tol) return DualViolation{DualViolationKind::constraint, v, l, -s};
  }
  return std::nullopt;
}

double dual_objective(const LapInstance& inst, const LapDual& dual) {
  if (dual.alpha.size() != static_cast<std::size_t>(inst.size()) ||
      dual.beta.size() != static_cast<std::size_t>(inst.size()))
    throw std::invalid_argument("LAP dual dimensions do not match the instance");
  double total = 0.0;
  for (double a : dual.alpha) total += a;
  for (double b : dual.beta) total += b;
  return total;
}

double dual_objective(const IlapInstance& inst, const IlapDual& dual) {
  if (dual.alpha.size() != static_cast<std::size_t>(inst.num_vertices()) ||
      dual.beta.size() != static_cast<std::size_t>(inst.num_real_labels()))
    throw std::invalid_argument("ILAP dual dimensions do not match the instance");
  double total = 0.0;
  for (double a : dual.alpha) total += a;
  for (double b : dual.beta) total += b;
  return total;
}

}  // namespace qapbound

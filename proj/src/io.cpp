#include "qapbound/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace qapbound {

ParseError::ParseError(std::size_t line, const std::string& what)
    : InstanceError(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      if (j > i) line.tokens.push_back(raw.substr(i, j - i));
      i = j;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    pos = end + 1;
  }
  return lines;
}

long long to_int(std::string_view tok, std::size_t line, const char* what) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, std::string("expected an integer ") + what + ", got '" + std::string(tok) + "'");
  return value;
}

double to_double(std::string_view tok, std::size_t line, const char* what) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(value))
    throw ParseError(line, std::string("expected a finite number ") + what + ", got '" + std::string(tok) + "'");
  return value;
}

Index to_index(std::string_view tok, std::size_t line, const char* what, long long limit) {
  const long long v = to_int(tok, line, what);
  if (v < 0 || v >= limit)
    throw ParseError(line, std::string(what) + " " + std::to_string(v) + " is out of range [0, " +
                               std::to_string(limit) + ")");
  return static_cast<Index>(v);
}

void expect_tokens(const Line& line, std::size_t n, const char* record) {
  if (line.tokens.size() != n)
    throw ParseError(line.number, std::string("'") + record + "' record needs " + std::to_string(n - 1) +
                                      " fields, got " + std::to_string(line.tokens.size() - 1));
}

constexpr long long kMaxCount = 1LL << 30;

}  // namespace

IqapInstance parse_dd(std::string_view text, double dummy_cost) {
  if (!std::isfinite(dummy_cost)) throw ParseError(0, "dummy cost must be finite");
  bool header = false;
  Index n0 = 0, n1 = 0;
  long long num_a = 0, num_e = 0;
  std::vector<std::vector<UnaryInput>> rows;
  std::vector<std::pair<Index, Index>> pair_of;  // assignment id -> (v, l)
  std::map<std::pair<Index, Index>, std::size_t> seen_pairs;
  std::vector<PairwiseInput> pairwise;
  long long count_a = 0, count_e = 0;

  for (const auto& line : tokenize(text)) {
    const auto kind = line.tokens[0];
    if (kind == "c" || kind.front() == 'c' || kind == "n0" || kind == "n1") continue;
    if (kind == "p") {
      if (header) throw ParseError(line.number, "second header line");
      expect_tokens(line, 5, "p");
      n0 = to_index(line.tokens[1], line.number, "left-set size", kMaxCount);
      n1 = to_index(line.tokens[2], line.number, "right-set size", kMaxCount);
      num_a = to_index(line.tokens[3], line.number, "assignment count", kMaxCount);
      num_e = to_index(line.tokens[4], line.number, "edge count", kMaxCount);
      rows.resize(n0);
      pair_of.assign(num_a, {kNone, kNone});
      header = true;
      continue;
    }
    if (!header) throw ParseError(line.number, "record before the 'p' header");
    if (kind == "a") {
      expect_tokens(line, 5, "a");
      const Index id = to_index(line.tokens[1], line.number, "assignment id", num_a);
      const Index v = to_index(line.tokens[2], line.number, "vertex", n0);
      const Index l = to_index(line.tokens[3], line.number, "label", n1);
      const double cost = to_double(line.tokens[4], line.number, "cost");
      if (pair_of[id].first != kNone)
        throw ParseError(line.number, "assignment id " + std::to_string(id) + " defined twice");
      auto [it, fresh] = seen_pairs.emplace(std::pair{v, l}, line.number);
      if (!fresh)
        throw ParseError(line.number, "duplicate pair (vertex " + std::to_string(v) + ", label " +
                                          std::to_string(l) + "), first on line " + std::to_string(it->second));
      pair_of[id] = {v, l};
      rows[v].push_back({l, cost});
      ++count_a;
    } else if (kind == "e") {
      expect_tokens(line, 4, "e");
      const Index id1 = to_index(line.tokens[1], line.number, "assignment id", num_a);
      const Index id2 = to_index(line.tokens[2], line.number, "assignment id", num_a);
      const double cost = to_double(line.tokens[3], line.number, "cost");
      const auto [v1, l1] = pair_of[id1];
      const auto [v2, l2] = pair_of[id2];
      if (v1 == kNone || v2 == kNone)
        throw ParseError(line.number, "edge references an assignment id that is not defined yet");
      if (v1 == v2)
        throw ParseError(line.number, "edge joins two pairs of vertex " + std::to_string(v1));
      pairwise.push_back({v1, l1, v2, l2, cost});
      ++count_e;
    } else {
      throw ParseError(line.number, "unknown record '" + std::string(kind) + "'");
    }
  }
  if (!header) throw ParseError(0, "missing 'p' header");
  if (count_a != num_a)
    throw ParseError(0, "header announces " + std::to_string(num_a) + " assignments, found " +
                            std::to_string(count_a));
  if (count_e != num_e)
    throw ParseError(0, "header announces " + std::to_string(num_e) + " edges, found " + std::to_string(count_e));

  IlapInstance unary(n1, std::move(rows), std::vector<double>(n0, dummy_cost));
  return IqapInstance(std::move(unary), pairwise);
}

std::string serialize_dd(const IqapInstance& inst) {
  const auto& u = inst.unary();
  const auto& c = u.costs();
  for (Index v = 1; v < u.num_vertices(); ++v)
    if (u.dummy_cost(v) != u.dummy_cost(0))
      throw std::invalid_argument("the text format needs one dummy cost shared by all vertices");

  // Real entries get consecutive ids in entry order.
  std::vector<long long> id(c.num_entries(), -1);
  long long next = 0;
  for (std::size_t e = 0; e < c.num_entries(); ++e)
    if (!u.is_dummy(c.entry_label(e))) id[e] = next++;

  std::size_t num_pairs = 0;
  for (const auto& term : inst.edges()) num_pairs += term.entries.size();

  std::ostringstream out;
  out << "p " << u.num_vertices() << ' ' << u.num_real_labels() << ' ' << next << ' ' << num_pairs << '\n';
  for (std::size_t e = 0; e < c.num_entries(); ++e)
    if (id[e] >= 0)
      out << "a " << id[e] << ' ' << c.entry_vertex(e) << ' ' << c.entry_label(e) << ' '
          << format_double(c.entry_cost(e)) << '\n';
  for (const auto& term : inst.edges())
    for (const auto& p : term.entries) {
      const long long a = id[c.row_begin(term.u) + p.k];
      const long long b = id[c.row_begin(term.v) + p.l];
      if (a < 0 || b < 0) throw std::invalid_argument("pairwise costs on the dummy label cannot be written");
      out << "e " << a << ' ' << b << ' ' << format_double(p.cost) << '\n';
    }
  return out.str();
}

QaplibData parse_qaplib(std::string_view text) {
  QaplibData data;
  std::vector<double> values;
  bool have_n = false;
  std::size_t expected = 0;
  std::size_t last_line = 0;
  for (const auto& line : tokenize(text)) {
    last_line = line.number;
    for (auto tok : line.tokens) {
      if (!have_n) {
        const long long n = to_int(tok, line.number, "problem size");
        if (n < 1 || n > 100000) throw ParseError(line.number, "problem size " + std::to_string(n) + " out of range");
        data.n = static_cast<Index>(n);
        expected = 2 * static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
        values.reserve(expected);
        have_n = true;
        continue;
      }
      if (values.size() == expected)
        throw ParseError(line.number, "more than 2 n^2 = " + std::to_string(expected) + " matrix entries");
      values.push_back(to_double(tok, line.number, "matrix entry"));
    }
  }
  if (!have_n) throw ParseError(0, "empty QAPLIB input");
  if (values.size() != expected)
    throw ParseError(last_line, "expected " + std::to_string(expected) + " matrix entries, found " +
                                    std::to_string(values.size()));
  const std::size_t half = expected / 2;
  data.flow.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(half));
  data.distance.assign(values.begin() + static_cast<std::ptrdiff_t>(half), values.end());
  return data;
}

QaplibConversion convert_qaplib_to_iqap(const QaplibData& data, std::optional<double> shift) {
  const Index n = data.n;
  std::vector<PairwiseInput> pairwise;
  double pairwise_scale = 0.0;
  for (Index u = 0; u < n; ++u)
    for (Index v = u + 1; v < n; ++v) {
      const double fuv = data.f(u, v), fvu = data.f(v, u);
      if (fuv == 0.0 && fvu == 0.0) continue;
      double block_max = 0.0;
      const std::size_t before = pairwise.size();
      for (Index k = 0; k < n; ++k)
        for (Index l = 0; l < n; ++l) {
          const double cost = fuv * data.d(k, l) + fvu * data.d(l, k);
          if (cost == 0.0) continue;
          pairwise.push_back({u, k, v, l, cost});
          block_max = std::max(block_max, std::abs(cost));
        }
      if (pairwise.size() > before) pairwise_scale += block_max;
    }

  double linear_max = 0.0;
  for (Index v = 0; v < n; ++v)
    for (Index l = 0; l < n; ++l) linear_max = std::max(linear_max, std::abs(data.f(v, v) * data.d(l, l)));

  QaplibConversion out;
  out.shift = shift.value_or(1.0 + linear_max + pairwise_scale);
  if (!std::isfinite(out.shift)) throw InstanceError("shift must be finite");
  out.offset = n * out.shift;
  std::vector<std::vector<UnaryInput>> rows(n);
  for (Index v = 0; v < n; ++v) {
    rows[v].reserve(n);
    for (Index l = 0; l < n; ++l) rows[v].push_back({l, data.f(v, v) * data.d(l, l) - out.shift});
  }
  IlapInstance unary(n, std::move(rows), std::vector<double>(n, 0.0));
  out.instance = IqapInstance(std::move(unary), pairwise);
  return out;
}

IqapInstance augment_instance(const IqapInstance& inst) {
  const auto& u = inst.unary();
  const auto& c = u.costs();
  std::vector<PairwiseInput> pairwise;
  for (const auto& term : inst.edges()) {
    const auto lu = c.labels(term.u);
    const auto lv = c.labels(term.v);
    std::map<std::pair<Index, Index>, double> table;
    for (const auto& p : term.entries) table[{p.k, p.l}] = p.cost;
    // Walk the two sorted label lists to find shared real labels.
    std::size_t i = 0, j = 0;
    while (i < lu.size() && j < lv.size()) {
      if (lu[i] < lv[j]) {
        ++i;
      } else if (lv[j] < lu[i]) {
        ++j;
      } else {
        if (!u.is_dummy(lu[i])) {
          auto [it, fresh] = table.try_emplace({static_cast<Index>(i), static_cast<Index>(j)}, 0.0);
          if (it->second == 0.0) it->second = kAugmentCost;
        }
        ++i;
        ++j;
      }
    }
    for (const auto& [kl, cost] : table) pairwise.push_back({term.u, lu[kl.first], term.v, lv[kl.second], cost});
  }
  return IqapInstance(u, pairwise);
}

AssignmentProblem parse_assignment_problem(std::string_view text) {
  enum class Kind { none, lap, ilap } kind = Kind::none;
  Index nv = 0, nl = 0;
  std::vector<std::vector<UnaryInput>> rows;
  std::vector<double> dummy;
  std::vector<char> dummy_set;
  std::set<std::pair<Index, Index>> seen;
  for (const auto& line : tokenize(text)) {
    const auto head = line.tokens[0];
    if (head.front() == 'c') continue;
    if (head == "p") {
      if (kind != Kind::none) throw ParseError(line.number, "second header line");
      if (line.tokens.size() >= 2 && line.tokens[1] == "lap") {
        expect_tokens(line, 3, "p lap");
        nv = nl = to_index(line.tokens[2], line.number, "size", kMaxCount);
        kind = Kind::lap;
      } else if (line.tokens.size() >= 2 && line.tokens[1] == "ilap") {
        expect_tokens(line, 4, "p ilap");
        nv = to_index(line.tokens[2], line.number, "vertex count", kMaxCount);
        nl = to_index(line.tokens[3], line.number, "label count", kMaxCount);
        kind = Kind::ilap;
        dummy.assign(nv, 0.0);
        dummy_set.assign(nv, 0);
      } else {
        throw ParseError(line.number, "header must be 'p lap <n>' or 'p ilap <vertices> <labels>'");
      }
      rows.resize(nv);
      continue;
    }
    if (kind == Kind::none) throw ParseError(line.number, "record before the 'p' header");
    if (head == "a") {
      expect_tokens(line, 4, "a");
      const Index v = to_index(line.tokens[1], line.number, "vertex", nv);
      const Index l = to_index(line.tokens[2], line.number, "label", nl);
      const double cost = to_double(line.tokens[3], line.number, "cost");
      if (!seen.emplace(v, l).second)
        throw ParseError(line.number, "duplicate pair (vertex " + std::to_string(v) + ", label " +
                                            std::to_string(l) + ")");
      rows[v].push_back({l, cost});
    } else if (head == "d") {
      if (kind != Kind::ilap) throw ParseError(line.number, "'d' records are only valid for ilap problems");
      expect_tokens(line, 3, "d");
      const Index v = to_index(line.tokens[1], line.number, "vertex", nv);
      if (dummy_set[v]) throw ParseError(line.number, "second dummy cost for vertex " + std::to_string(v));
      dummy[v] = to_double(line.tokens[2], line.number, "cost");
      dummy_set[v] = 1;
    } else {
      throw ParseError(line.number, "unknown record '" + std::string(head) + "'");
    }
  }
  if (kind == Kind::none) throw ParseError(0, "missing 'p' header");
  if (kind == Kind::lap) {
    for (Index v = 0; v < nv; ++v)
      if (rows[v].empty()) throw ParseError(0, "vertex " + std::to_string(v) + " has no allowed label");
    return LapInstance(nv, std::move(rows));
  }
  return IlapInstance(nl, std::move(rows), std::move(dummy));
}

}  // namespace qapbound

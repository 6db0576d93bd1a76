#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "comprep/cnf.hpp"

namespace comprep {

// One element of an instance, addressed by slot and local index (0-based).
struct ElementRef {
  int slot = 0;
  int elem = 0;
  auto operator<=>(const ElementRef&) const = default;
};

// Excluded pair: lo at its slot may not be chosen together with hi at its
// slot. Well-formed instances have lo.slot < hi.slot.
struct IncompatPair {
  ElementRef lo;
  ElementRef hi;
  auto operator<=>(const IncompatPair&) const = default;
};

// n candidate sets plus the pairs excluded from joint selection. Tokens are
// display labels only; all semantics go through (slot, local index). The
// relation is stored as its complement: pairs not listed are compatible.
struct Instance {
  std::vector<std::vector<std::string>> domains;
  std::vector<IncompatPair> incompat;

  int slot_count() const { return static_cast<int>(domains.size()); }
  int domain_size(int slot) const { return static_cast<int>(domains[slot].size()); }

  void add_incompat(int j, int a, int k, int b) {
    incompat.push_back({{j, a}, {k, b}});
  }

  bool operator==(const Instance&) const = default;
};

// One chosen local element index per slot.
struct Assignment {
  std::vector<int> choices;
  auto operator<=>(const Assignment&) const = default;
};

// Undirected graph on vertices 0..n-1; edges stored once, lower index first.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  explicit SimpleGraph(int vertices) : n_(vertices) {
    if (vertices < 0) throw std::invalid_argument("vertex count must be nonnegative");
  }

  int vertex_count() const { return n_; }

  void add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    if (u > v) std::swap(u, v);
    auto e = std::pair{u, v};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) edges_.insert(it, e);
  }

  bool has_edge(int u, int v) const {
    if (u == v) return false;
    if (u > v) std::swap(u, v);
    return std::binary_search(edges_.begin(), edges_.end(), std::pair{u, v});
  }

  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  std::vector<int> neighbors(int u) const {
    std::vector<int> out;
    for (auto [a, b] : edges_) {
      if (a == u) out.push_back(b);
      else if (b == u) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
};

// values holds each of 1..m exactly once.
struct Permutation {
  std::vector<int> values;

  int size() const { return static_cast<int>(values.size()); }

  bool valid() const {
    std::vector<char> seen(values.size(), 0);
    for (int v : values) {
      if (v < 1 || v > static_cast<int>(values.size()) || seen[v - 1]) return false;
      seen[v - 1] = 1;
    }
    return true;
  }
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

inline ValidationReport validate_instance(const Instance& inst) {
  ValidationReport report;
  auto in_range = [&](const ElementRef& e) {
    return e.slot >= 0 && e.slot < inst.slot_count() && e.elem >= 0 &&
           e.elem < inst.domain_size(e.slot);
  };
  std::vector<IncompatPair> seen;
  for (const IncompatPair& p : inst.incompat) {
    if (!(p.lo.slot >= 0 && p.hi.slot < inst.slot_count() && p.lo.slot < p.hi.slot)) {
      report.violations.push_back("pair not ordered j<k: (" + std::to_string(p.lo.slot + 1) +
                                  "," + std::to_string(p.hi.slot + 1) + ")");
      continue;
    }
    if (!in_range(p.lo) || !in_range(p.hi)) {
      report.violations.push_back("index out of range in pair at slots (" +
                                  std::to_string(p.lo.slot + 1) + "," +
                                  std::to_string(p.hi.slot + 1) + ")");
      continue;
    }
    seen.push_back(p);
  }
  std::sort(seen.begin(), seen.end());
  for (size_t i = 1; i < seen.size(); ++i) {
    if (seen[i] == seen[i - 1]) {
      report.violations.push_back("duplicate pair at slots (" + std::to_string(seen[i].lo.slot + 1) +
                                  "," + std::to_string(seen[i].hi.slot + 1) + ")");
    }
  }
  return report;
}

namespace detail {

inline void check_element(const Instance& inst, int slot, int elem, const char* what) {
  if (slot < 0 || slot >= inst.slot_count()) throw std::invalid_argument(std::string(what) + ": slot out of range");
  if (elem < 0 || elem >= inst.domain_size(slot)) throw std::invalid_argument(std::string(what) + ": element out of range");
}

// Per-element conflict adjacency over a validated instance. Conflict lists
// carry both directions so callers can query slots in any order.
class ConflictIndex {
 public:
  explicit ConflictIndex(const Instance& inst) {
    adj_.resize(inst.slot_count());
    for (int j = 0; j < inst.slot_count(); ++j) adj_[j].resize(inst.domain_size(j));
    for (const IncompatPair& p : inst.incompat) {
      adj_[p.lo.slot][p.lo.elem].push_back({p.hi.slot, p.hi.elem});
      adj_[p.hi.slot][p.hi.elem].push_back({p.lo.slot, p.lo.elem});
    }
    for (auto& slot : adj_)
      for (auto& lst : slot) {
        std::sort(lst.begin(), lst.end());
        lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
      }
  }

  bool incompatible(int j, int a, int k, int b) const {
    const auto& lst = adj_[j][a];
    return std::binary_search(lst.begin(), lst.end(), std::pair{k, b});
  }

  std::span<const std::pair<int, int>> conflicts(int j, int a) const { return adj_[j][a]; }

 private:
  std::vector<std::vector<std::vector<std::pair<int, int>>>> adj_;
};

}  // namespace detail

// Membership test against the stored relation; defined for j < k only.
inline bool is_compatible(const Instance& inst, int j, int a, int k, int b) {
  detail::check_element(inst, j, a, "is_compatible");
  detail::check_element(inst, k, b, "is_compatible");
  if (j >= k) throw std::invalid_argument("is_compatible: requires j < k");
  IncompatPair p{{j, a}, {k, b}};
  return std::find(inst.incompat.begin(), inst.incompat.end(), p) == inst.incompat.end();
}

inline bool check_solution(const Instance& inst, const Assignment& asg) {
  if (static_cast<int>(asg.choices.size()) != inst.slot_count())
    throw std::invalid_argument("check_solution: assignment length mismatch");
  for (int j = 0; j < inst.slot_count(); ++j)
    detail::check_element(inst, j, asg.choices[j], "check_solution");
  detail::ConflictIndex index(inst);
  for (int j = 0; j < inst.slot_count(); ++j)
    for (auto [k, b] : index.conflicts(j, asg.choices[j]))
      if (k > j && asg.choices[k] == b) return false;
  return true;
}

struct BruteForceResult {
  std::vector<Assignment> solutions;  // lexicographic by choices
  bool truncated = false;
};

// Exhaustive enumeration oracle. Walks the full cartesian product in
// lexicographic order; caller is responsible for keeping it desk-scale.
inline BruteForceResult brute_force_solutions(
    const Instance& inst, long long cap = std::numeric_limits<long long>::max()) {
  if (cap < 1) throw std::invalid_argument("brute_force_solutions: cap must be >= 1");
  BruteForceResult result;
  const int n = inst.slot_count();
  for (int j = 0; j < n; ++j)
    if (inst.domain_size(j) == 0) return result;
  detail::ConflictIndex index(inst);
  std::vector<int> cur(n, 0);
  while (true) {
    bool ok = true;
    for (int j = 0; ok && j < n; ++j)
      for (auto [k, b] : index.conflicts(j, cur[j]))
        if (k > j && cur[k] == b) {
          ok = false;
          break;
        }
    if (ok) {
      if (static_cast<long long>(result.solutions.size()) == cap) {
        result.truncated = true;
        return result;
      }
      result.solutions.push_back(Assignment{cur});
    }
    int j = n - 1;
    while (j >= 0 && cur[j] + 1 == inst.domain_size(j)) cur[j--] = 0;
    if (j < 0) return result;
    ++cur[j];
  }
}

// All slots share the vertex set; solutions are vertex sequences that form
// an n-clique (adjacency as compatibility, so equal or non-adjacent pairs
// are excluded).
inline Instance gen_clique(const SimpleGraph& g, int n) {
  if (n < 1) throw std::invalid_argument("gen_clique: n must be >= 1");
  Instance inst;
  std::vector<std::string> verts;
  for (int v = 0; v < g.vertex_count(); ++v) verts.push_back("v" + std::to_string(v + 1));
  inst.domains.assign(n, verts);
  for (int j = 0; j < n; ++j)
    for (int a = 0; a < g.vertex_count(); ++a)
      for (int k = j + 1; k < n; ++k)
        for (int b = 0; b < g.vertex_count(); ++b)
          if (a == b || !g.has_edge(a, b)) inst.add_incompat(j, a, k, b);
  std::sort(inst.incompat.begin(), inst.incompat.end());
  inst.incompat.erase(std::unique(inst.incompat.begin(), inst.incompat.end()), inst.incompat.end());
  return inst;
}

// Slot per vertex, element per color; adjacent vertices may not share a
// color. Solutions biject with proper c-colorings.
inline Instance gen_coloring(const SimpleGraph& g, int colors) {
  if (colors < 1) throw std::invalid_argument("gen_coloring: color count must be >= 1");
  Instance inst;
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::vector<std::string> dom;
    for (int c = 0; c < colors; ++c) dom.push_back("c" + std::to_string(c + 1));
    inst.domains.push_back(std::move(dom));
  }
  for (auto [u, v] : g.edges())
    for (int c = 0; c < colors; ++c) inst.add_incompat(u, c, v, c);
  std::sort(inst.incompat.begin(), inst.incompat.end());
  return inst;
}

// Slot per picked position; (j,a) works with (k,b) only when a < b and
// pi[a] < pi[b], so solutions are increasing subsequences of length n.
// The relation is transitive.
inline Instance gen_increasing_subsequence(const Permutation& pi, int n) {
  if (!pi.valid()) throw std::invalid_argument("gen_increasing_subsequence: not a permutation");
  const int m = pi.size();
  if (n < 1 || n > m) throw std::invalid_argument("gen_increasing_subsequence: need 1 <= n <= m");
  Instance inst;
  std::vector<std::string> dom;
  for (int a = 0; a < m; ++a) dom.push_back("p" + std::to_string(a + 1));
  inst.domains.assign(n, dom);
  for (int j = 0; j < n; ++j)
    for (int a = 0; a < m; ++a)
      for (int k = j + 1; k < n; ++k)
        for (int b = 0; b < m; ++b)
          if (!(a < b && pi.values[a] < pi.values[b])) inst.add_incompat(j, a, k, b);
  std::sort(inst.incompat.begin(), inst.incompat.end());
  inst.incompat.erase(std::unique(inst.incompat.begin(), inst.incompat.end()), inst.incompat.end());
  return inst;
}

// Slot per clause, element per literal; two literals clash exactly when one
// negates the other. Solvable iff the formula is satisfiable.
inline Instance gen_from_cnf(const Cnf& f) {
  Instance inst;
  for (const auto& clause : f.clauses) {
    if (clause.empty()) throw std::invalid_argument("gen_from_cnf: empty clause");
    std::vector<std::string> dom;
    for (int lit : clause) dom.push_back(lit > 0 ? "v" + std::to_string(lit) : "-v" + std::to_string(-lit));
    inst.domains.push_back(std::move(dom));
  }
  const int n = inst.slot_count();
  for (int j = 0; j < n; ++j)
    for (size_t a = 0; a < f.clauses[j].size(); ++a)
      for (int k = j + 1; k < n; ++k)
        for (size_t b = 0; b < f.clauses[k].size(); ++b)
          if (f.clauses[j][a] == -f.clauses[k][b])
            inst.add_incompat(j, static_cast<int>(a), k, static_cast<int>(b));
  std::sort(inst.incompat.begin(), inst.incompat.end());
  return inst;
}

}  // namespace comprep

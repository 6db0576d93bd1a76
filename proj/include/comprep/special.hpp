#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "comprep/core.hpp"

namespace comprep {

// Exhaustive triple check: compatible(j,a,k,b) and compatible(k,b,l,c)
// must imply compatible(j,a,l,c) for every j < k < l.
inline bool is_transitive(const Instance& inst) {
  detail::ConflictIndex index(inst);
  const int n = inst.slot_count();
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      for (int l = k + 1; l < n; ++l)
        for (int a = 0; a < inst.domain_size(j); ++a)
          for (int b = 0; b < inst.domain_size(k); ++b) {
            if (index.incompatible(j, a, k, b)) continue;
            for (int c = 0; c < inst.domain_size(l); ++c)
              if (!index.incompatible(k, b, l, c) && index.incompatible(j, a, l, c))
                return false;
          }
  return true;
}

// Surviving elements B_1..B_n with one predecessor witness per survivor.
struct Frontier {
  std::vector<std::vector<int>> live;     // per slot: surviving local indices, ascending
  std::vector<std::vector<int>> witness;  // parallel: predecessor element in slot j-1 (-1 at j=0)
  long long probes = 0;                   // compatibility probes spent

  bool solvable() const { return live.empty() || !live.back().empty(); }
};

inline Frontier compute_frontier(const Instance& inst) {
  detail::ConflictIndex index(inst);
  Frontier f;
  const int n = inst.slot_count();
  f.live.resize(n);
  f.witness.resize(n);
  for (int j = 0; j < n; ++j) {
    if (j == 0) {
      for (int a = 0; a < inst.domain_size(0); ++a) {
        f.live[0].push_back(a);
        f.witness[0].push_back(-1);
      }
      continue;
    }
    for (int b = 0; b < inst.domain_size(j); ++b)
      for (int a : f.live[j - 1]) {
        ++f.probes;
        if (!index.incompatible(j - 1, a, j, b)) {
          f.live[j].push_back(b);
          f.witness[j].push_back(a);
          break;
        }
      }
  }
  return f;
}

struct TransitiveResult {
  std::optional<Assignment> solution;
  long long probes = 0;
};

// Frontier solver for transitive compatibility. Callers are responsible for
// the transitivity precondition (see is_transitive); a produced chain that
// fails the full pairwise check surfaces as an error.
inline TransitiveResult solve_transitive(const Instance& inst) {
  Frontier f = compute_frontier(inst);
  TransitiveResult result;
  result.probes = f.probes;
  if (!f.solvable()) return result;
  const int n = inst.slot_count();
  Assignment asg;
  asg.choices.assign(n, 0);
  if (n > 0) {
    int elem = f.live[n - 1].front();
    for (int j = n - 1; j >= 0; --j) {
      asg.choices[j] = elem;
      if (j > 0) {
        auto it = std::lower_bound(f.live[j].begin(), f.live[j].end(), elem);
        elem = f.witness[j][it - f.live[j].begin()];
      }
    }
  }
  if (!check_solution(inst, asg))
    throw std::invalid_argument("solve_transitive: instance is not transitive");
  result.solution = std::move(asg);
  return result;
}

// Partition of all elements by equivalence class, when the symmetrized
// incompatibility relation is one.
struct ElementClasses {
  int class_count = 0;
  std::vector<std::vector<int>> class_of;  // [slot][elem] -> class id
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

 private:
  std::vector<int> parent_;
};

}  // namespace detail

// Detects whether incompatibility behaves as "same class" over the element
// universe. Elements are identified across slots by token; observed
// incompatibility merges tokens, observed compatibility must then separate
// them, and a token compatible with itself in another slot disqualifies.
inline std::optional<ElementClasses> incompatibility_classes(const Instance& inst) {
  detail::ConflictIndex index(inst);
  std::map<std::string, int> token_id;
  const int n = inst.slot_count();
  std::vector<std::vector<int>> tid(n);
  for (int j = 0; j < n; ++j)
    for (const std::string& tok : inst.domains[j]) {
      auto [it, _] = token_id.insert({tok, static_cast<int>(token_id.size())});
      tid[j].push_back(it->second);
    }

  detail::UnionFind uf(static_cast<int>(token_id.size()));
  std::vector<std::pair<int, int>> observed_compatible;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      for (int a = 0; a < inst.domain_size(j); ++a)
        for (int b = 0; b < inst.domain_size(k); ++b) {
          if (index.incompatible(j, a, k, b)) uf.unite(tid[j][a], tid[k][b]);
          else observed_compatible.push_back({tid[j][a], tid[k][b]});
        }
  for (auto [s, t] : observed_compatible)
    if (uf.find(s) == uf.find(t)) return std::nullopt;

  ElementClasses classes;
  std::map<int, int> dense;
  classes.class_of.resize(n);
  for (int j = 0; j < n; ++j)
    for (int a = 0; a < inst.domain_size(j); ++a) {
      int root = uf.find(tid[j][a]);
      auto [it, inserted] = dense.insert({root, classes.class_count});
      if (inserted) ++classes.class_count;
      classes.class_of[j].push_back(it->second);
    }
  return classes;
}

// Left side: slots. Right side: equivalence classes.
struct BipartiteGraph {
  int left_count = 0;
  int right_count = 0;
  std::vector<std::pair<int, int>> edges;  // (left, right), unique, sorted
};

struct Matching {
  std::vector<int> right_of;  // per left vertex: matched right vertex or -1
  int size = 0;
};

inline BipartiteGraph equivalence_graph(const Instance& inst, const ElementClasses& classes) {
  BipartiteGraph g;
  g.left_count = inst.slot_count();
  g.right_count = classes.class_count;
  for (int j = 0; j < inst.slot_count(); ++j)
    for (int c : classes.class_of[j]) g.edges.push_back({j, c});
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

// Augmenting-path maximum matching; deterministic under the fixed vertex
// order.
inline Matching max_matching(const BipartiteGraph& g) {
  std::vector<std::vector<int>> adj(g.left_count);
  for (auto [l, r] : g.edges) {
    if (l < 0 || l >= g.left_count || r < 0 || r >= g.right_count)
      throw std::invalid_argument("max_matching: edge endpoint out of range");
    adj[l].push_back(r);
  }
  std::vector<int> left_of(g.right_count, -1);
  Matching m;
  m.right_of.assign(g.left_count, -1);
  std::vector<char> visited;
  auto augment = [&](auto&& self, int l) -> bool {
    for (int r : adj[l]) {
      if (visited[r]) continue;
      visited[r] = 1;
      if (left_of[r] < 0 || self(self, left_of[r])) {
        left_of[r] = l;
        m.right_of[l] = r;
        return true;
      }
    }
    return false;
  };
  for (int l = 0; l < g.left_count; ++l) {
    visited.assign(g.right_count, 0);
    if (augment(augment, l)) ++m.size;
  }
  return m;
}

// Equivalence case: solvable iff the slot/class bipartite graph has a
// matching covering every slot.
inline std::optional<Assignment> solve_equivalence(const Instance& inst) {
  auto classes = incompatibility_classes(inst);
  if (!classes) throw std::invalid_argument("solve_equivalence: incompatibility is not an equivalence");
  Matching m = max_matching(equivalence_graph(inst, *classes));
  if (m.size != inst.slot_count()) return std::nullopt;
  Assignment asg;
  asg.choices.assign(inst.slot_count(), -1);
  for (int j = 0; j < inst.slot_count(); ++j) {
    for (int a = 0; a < inst.domain_size(j); ++a)
      if (classes->class_of[j][a] == m.right_of[j]) {
        asg.choices[j] = a;
        break;
      }
  }
  if (!check_solution(inst, asg)) throw std::logic_error("solve_equivalence: produced invalid assignment");
  return asg;
}

// Implication graph over one boolean per slot. Literal encoding: 2v is
// "slot v picks its second element", 2v+1 the negation.
struct TwoSatProblem {
  int variable_count = 0;
  std::vector<std::pair<int, int>> implications;
};

inline int twosat_literal(int var, bool positive) { return 2 * var + (positive ? 0 : 1); }
inline int twosat_negate(int literal) { return literal ^ 1; }

inline TwoSatProblem build_twosat(const Instance& inst) {
  const int n = inst.slot_count();
  TwoSatProblem p;
  p.variable_count = n;
  auto add_clause = [&](int lit_a, int lit_b) {
    p.implications.push_back({twosat_negate(lit_a), lit_b});
    p.implications.push_back({twosat_negate(lit_b), lit_a});
  };
  for (int j = 0; j < n; ++j) {
    const int size = inst.domain_size(j);
    if (size > 2) throw std::invalid_argument("build_twosat: domain larger than two");
    if (size == 0) {
      // Contradictory units: an empty slot makes the instance unsolvable.
      add_clause(twosat_literal(j, true), twosat_literal(j, true));
      add_clause(twosat_literal(j, false), twosat_literal(j, false));
    } else if (size == 1) {
      add_clause(twosat_literal(j, false), twosat_literal(j, false));
    }
  }
  // Literal for "slot j picks element a": positive iff a == 1.
  auto pick = [&](int j, int a) { return twosat_literal(j, a == 1); };
  for (const IncompatPair& pr : inst.incompat)
    add_clause(twosat_negate(pick(pr.lo.slot, pr.lo.elem)), twosat_negate(pick(pr.hi.slot, pr.hi.elem)));
  return p;
}

namespace detail {

// Iterative Tarjan; components are numbered in the order they complete
// (sinks first).
inline std::vector<int> strongly_connected_components(int nodes,
                                                      const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(nodes);
  for (auto [u, v] : edges) adj[u].push_back(v);
  std::vector<int> comp(nodes, -1), low(nodes, 0), num(nodes, -1), stack;
  std::vector<char> on_stack(nodes, 0);
  int counter = 0, comp_count = 0;
  struct Item {
    int node;
    size_t edge;
  };
  for (int start = 0; start < nodes; ++start) {
    if (num[start] >= 0) continue;
    std::vector<Item> work{{start, 0}};
    num[start] = low[start] = counter++;
    stack.push_back(start);
    on_stack[start] = 1;
    while (!work.empty()) {
      auto& [u, ei] = work.back();
      if (ei < adj[u].size()) {
        int v = adj[u][ei++];
        if (num[v] < 0) {
          num[v] = low[v] = counter++;
          stack.push_back(v);
          on_stack[v] = 1;
          work.push_back({v, 0});
        } else if (on_stack[v]) {
          low[u] = std::min(low[u], num[v]);
        }
      } else {
        if (low[u] == num[u]) {
          while (true) {
            int v = stack.back();
            stack.pop_back();
            on_stack[v] = 0;
            comp[v] = comp_count;
            if (v == u) break;
          }
          ++comp_count;
        }
        int done = u;
        work.pop_back();
        if (!work.empty()) low[work.back().node] = std::min(low[work.back().node], low[done]);
      }
    }
  }
  return comp;
}

}  // namespace detail

// Domains of size at most two, solved through the implication graph.
// Size-one domains act as unit-forced literals; empty domains make the
// instance unsolvable.
inline std::optional<Assignment> solve_2sat(const Instance& inst) {
  TwoSatProblem p = build_twosat(inst);
  auto comp = detail::strongly_connected_components(2 * p.variable_count, p.implications);
  Assignment asg;
  asg.choices.assign(inst.slot_count(), 0);
  for (int v = 0; v < p.variable_count; ++v) {
    int pos = comp[twosat_literal(v, true)];
    int neg = comp[twosat_literal(v, false)];
    if (pos == neg) return std::nullopt;
    // The literal whose component completes first (sink side) is safe to
    // satisfy.
    bool value = pos < neg;
    asg.choices[v] = (inst.domain_size(v) == 2 && value) ? 1 : 0;
  }
  if (!check_solution(inst, asg)) throw std::logic_error("solve_2sat: produced invalid assignment");
  return asg;
}

}  // namespace comprep

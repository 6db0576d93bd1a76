#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "comprep/cnf.hpp"
#include "comprep/core.hpp"

namespace comprep {

// One positive clause per slot plus one binary negative clause per excluded
// pair. At-most-one-per-slot is deliberately not encoded: any per-slot
// selection of a true literal is conflict-free because all cross-literal
// conflicts appear as clauses. Variables are numbered slot-major from 1.
inline Cnf to_cnf(const Instance& inst) {
  Cnf f;
  std::vector<std::vector<int>> var(inst.slot_count());
  for (int j = 0; j < inst.slot_count(); ++j) {
    if (inst.domain_size(j) == 0) throw std::invalid_argument("to_cnf: empty domain");
    for (int a = 0; a < inst.domain_size(j); ++a) {
      var[j].push_back(++f.var_count);
      f.var_table.push_back({j, a});
    }
  }
  for (int j = 0; j < inst.slot_count(); ++j) f.clauses.push_back(var[j]);
  for (const IncompatPair& p : inst.incompat)
    f.clauses.push_back({-var[p.lo.slot][p.lo.elem], -var[p.hi.slot][p.hi.elem]});
  return f;
}

// Per-slot choice read off a model of to_cnf(inst): the lowest-index true
// literal of each slot (variables are slot-major, matching to_cnf).
inline Assignment project_model(const Instance& inst, const std::vector<bool>& model) {
  Assignment asg;
  asg.choices.assign(inst.slot_count(), -1);
  int v = 0;
  for (int j = 0; j < inst.slot_count(); ++j)
    for (int a = 0; a < inst.domain_size(j); ++a, ++v)
      if (asg.choices[j] < 0 && model[v]) asg.choices[j] = a;
  for (int choice : asg.choices)
    if (choice < 0) throw std::invalid_argument("project_model: model picks no literal for some slot");
  return asg;
}

// Vertices are elements; same-slot elements clash, and cross-slot edges are
// the excluded pairs. An independent set of size n is exactly a solution.
struct IndependenceGraph {
  SimpleGraph graph;
  std::vector<std::pair<int, int>> vertex_table;  // vertex -> (slot, elem)
};

inline IndependenceGraph to_independence_graph(const Instance& inst) {
  IndependenceGraph result;
  std::vector<std::vector<int>> vertex(inst.slot_count());
  int count = 0;
  for (int j = 0; j < inst.slot_count(); ++j)
    for (int a = 0; a < inst.domain_size(j); ++a) {
      vertex[j].push_back(count++);
      result.vertex_table.push_back({j, a});
    }
  result.graph = SimpleGraph(count);
  for (int j = 0; j < inst.slot_count(); ++j)
    for (int a = 0; a < inst.domain_size(j); ++a)
      for (int b = a + 1; b < inst.domain_size(j); ++b)
        result.graph.add_edge(vertex[j][a], vertex[j][b]);
  for (const IncompatPair& p : inst.incompat)
    result.graph.add_edge(vertex[p.lo.slot][p.lo.elem], vertex[p.hi.slot][p.hi.elem]);
  return result;
}

namespace detail {

inline bool mis_search(const SimpleGraph& g, int idx, int target, std::vector<int>& current) {
  if (static_cast<int>(current.size()) >= target) return true;
  if (idx >= g.vertex_count()) return false;
  if (static_cast<int>(current.size()) + (g.vertex_count() - idx) < target) return false;
  bool independent = true;
  for (int u : current)
    if (g.has_edge(u, idx)) {
      independent = false;
      break;
    }
  if (independent) {
    current.push_back(idx);
    if (mis_search(g, idx + 1, target, current)) return true;
    current.pop_back();
  }
  return mis_search(g, idx + 1, target, current);
}

}  // namespace detail

// Oracle: an independent set of at least `target` vertices, if one exists.
inline std::optional<std::vector<int>> brute_force_mis(const SimpleGraph& g, int target,
                                                       int max_vertices = 24) {
  if (g.vertex_count() > max_vertices) throw std::invalid_argument("brute_force_mis: vertex bound exceeded");
  if (target < 0) throw std::invalid_argument("brute_force_mis: target must be nonnegative");
  std::vector<int> current;
  if (detail::mis_search(g, 0, target, current)) return current;
  return std::nullopt;
}

// True when no vertex has three pairwise non-adjacent neighbors.
inline bool is_claw_free(const SimpleGraph& g) {
  for (int v = 0; v < g.vertex_count(); ++v) {
    auto nb = g.neighbors(v);
    for (size_t i = 0; i < nb.size(); ++i)
      for (size_t j = i + 1; j < nb.size(); ++j) {
        if (g.has_edge(nb[i], nb[j])) continue;
        for (size_t k = j + 1; k < nb.size(); ++k)
          if (!g.has_edge(nb[i], nb[k]) && !g.has_edge(nb[j], nb[k])) return false;
      }
  }
  return true;
}

}  // namespace comprep

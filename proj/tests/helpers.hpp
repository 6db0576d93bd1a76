#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "comprep/core.hpp"
#include "comprep/mfl.hpp"

namespace testutil {

using comprep::Assignment;
using comprep::Instance;
using comprep::SimpleGraph;

inline Instance make_instance(std::vector<std::vector<std::string>> domains,
                              std::vector<std::array<int, 4>> pairs) {
  Instance inst;
  inst.domains = std::move(domains);
  for (auto [j, a, k, b] : pairs) inst.add_incompat(j, a, k, b);
  std::sort(inst.incompat.begin(), inst.incompat.end());
  return inst;
}

// A1=[a,b], A2=[c,d], A3=[e,f]; a clashes with both of slot 2, c with e,
// d with f. Exactly two solutions: (b,c,f) and (b,d,e).
inline Instance example_e1() {
  return make_instance({{"a", "b"}, {"c", "d"}, {"e", "f"}},
                       {{0, 0, 1, 0}, {0, 0, 1, 1}, {1, 0, 2, 0}, {1, 1, 2, 1}});
}

inline Instance random_instance(std::mt19937& rng, int max_slots = 6, int max_domain = 4,
                                double conflict_rate = 0.3) {
  std::uniform_int_distribution<int> slots(1, max_slots);
  std::uniform_int_distribution<int> domain(1, max_domain);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Instance inst;
  const int n = slots(rng);
  for (int j = 0; j < n; ++j) {
    int size = domain(rng);
    std::vector<std::string> dom;
    for (int a = 0; a < size; ++a) dom.push_back("s" + std::to_string(j + 1) + "e" + std::to_string(a + 1));
    inst.domains.push_back(std::move(dom));
  }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      for (int a = 0; a < inst.domain_size(j); ++a)
        for (int b = 0; b < inst.domain_size(k); ++b)
          if (coin(rng) < conflict_rate) inst.add_incompat(j, a, k, b);
  std::sort(inst.incompat.begin(), inst.incompat.end());
  return inst;
}

// Transitive by construction: each element gets a rank and compatibility is
// strict rank increase.
inline Instance random_transitive_instance(std::mt19937& rng, int max_slots = 6, int max_domain = 4) {
  std::uniform_int_distribution<int> slots(1, max_slots);
  std::uniform_int_distribution<int> domain(1, max_domain);
  std::uniform_int_distribution<int> rank(0, 4);
  Instance inst;
  const int n = slots(rng);
  std::vector<std::vector<int>> ranks(n);
  for (int j = 0; j < n; ++j) {
    int size = domain(rng);
    std::vector<std::string> dom;
    for (int a = 0; a < size; ++a) {
      dom.push_back("s" + std::to_string(j + 1) + "e" + std::to_string(a + 1));
      ranks[j].push_back(rank(rng));
    }
    inst.domains.push_back(std::move(dom));
  }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      for (int a = 0; a < inst.domain_size(j); ++a)
        for (int b = 0; b < inst.domain_size(k); ++b)
          if (!(ranks[j][a] < ranks[k][b])) inst.add_incompat(j, a, k, b);
  std::sort(inst.incompat.begin(), inst.incompat.end());
  return inst;
}

// Incompatibility = "same class" over a token universe shared across slots.
inline Instance random_equivalence_instance(std::mt19937& rng, int max_slots = 5) {
  std::uniform_int_distribution<int> slots(1, max_slots);
  std::uniform_int_distribution<int> domain(1, 3);
  const int universe = 6;
  std::uniform_int_distribution<int> token(0, universe - 1);
  std::uniform_int_distribution<int> klass(0, 2);
  std::vector<int> class_of(universe);
  for (int& c : class_of) c = klass(rng);
  Instance inst;
  const int n = slots(rng);
  std::vector<std::vector<int>> tokens(n);
  for (int j = 0; j < n; ++j) {
    int size = domain(rng);
    std::set<int> picked;
    while (static_cast<int>(picked.size()) < size) picked.insert(token(rng));
    std::vector<std::string> dom;
    for (int t : picked) {
      dom.push_back("t" + std::to_string(t));
      tokens[j].push_back(t);
    }
    inst.domains.push_back(std::move(dom));
  }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      for (size_t a = 0; a < tokens[j].size(); ++a)
        for (size_t b = 0; b < tokens[k].size(); ++b)
          if (class_of[tokens[j][a]] == class_of[tokens[k][b]])
            inst.add_incompat(j, static_cast<int>(a), k, static_cast<int>(b));
  std::sort(inst.incompat.begin(), inst.incompat.end());
  return inst;
}

inline SimpleGraph random_graph(std::mt19937& rng, int max_vertices, double edge_rate = 0.5) {
  std::uniform_int_distribution<int> verts(1, max_vertices);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  SimpleGraph g(verts(rng));
  for (int u = 0; u < g.vertex_count(); ++u)
    for (int v = u + 1; v < g.vertex_count(); ++v)
      if (coin(rng) < edge_rate) g.add_edge(u, v);
  return g;
}

// O(m^2) longest increasing subsequence.
inline int lis_length(const std::vector<int>& values) {
  const int m = static_cast<int>(values.size());
  std::vector<int> best(m, 1);
  int result = m > 0 ? 1 : 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < i; ++j)
      if (values[j] < values[i]) {
        best[i] = std::max(best[i], best[j] + 1);
        result = std::max(result, best[i]);
      }
  return result;
}

// Exhaustive proper-coloring count.
inline long long count_colorings(const SimpleGraph& g, int colors) {
  const int n = g.vertex_count();
  std::vector<int> color(n, 0);
  long long count = 0;
  while (true) {
    bool proper = true;
    for (auto [u, v] : g.edges())
      if (color[u] == color[v]) {
        proper = false;
        break;
      }
    if (proper) ++count;
    int i = n - 1;
    while (i >= 0 && color[i] + 1 == colors) color[i--] = 0;
    if (i < 0) return count;
    ++color[i];
  }
}

// Exhaustive k-clique existence.
inline bool has_clique(const SimpleGraph& g, int k) {
  std::vector<int> members;
  auto rec = [&](auto&& self, int next) -> bool {
    if (static_cast<int>(members.size()) == k) return true;
    for (int v = next; v < g.vertex_count(); ++v) {
      bool adjacent = true;
      for (int u : members)
        if (!g.has_edge(u, v)) {
          adjacent = false;
          break;
        }
      if (!adjacent) continue;
      members.push_back(v);
      if (self(self, v + 1)) return true;
      members.pop_back();
    }
    return false;
  };
  return rec(rec, 0);
}

// Exhaustive maximum bipartite matching size (oracle for max_matching).
inline int exhaustive_matching_size(int left, int right,
                                    const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(left);
  for (auto [l, r] : edges) adj[l].push_back(r);
  std::vector<char> used(right, 0);
  auto rec = [&](auto&& self, int l) -> int {
    if (l == left) return 0;
    int best = self(self, l + 1);  // leave l unmatched
    for (int r : adj[l])
      if (!used[r]) {
        used[r] = 1;
        best = std::max(best, 1 + self(self, l + 1));
        used[r] = 0;
      }
    return best;
  };
  return rec(rec, 0);
}

}  // namespace testutil

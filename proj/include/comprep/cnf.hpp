#pragma once

#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace comprep {

// Clause list over signed 1-based variable indices (DIMACS convention).
// var_table, when nonempty, records which (slot, element) each variable
// stands for; both entries 0-based.
struct Cnf {
  int var_count = 0;
  std::vector<std::vector<int>> clauses;
  std::vector<std::pair<int, int>> var_table;

  int clause_count() const { return static_cast<int>(clauses.size()); }
};

inline bool cnf_valid(const Cnf& f) {
  for (const auto& clause : f.clauses)
    for (int lit : clause)
      if (lit == 0 || std::abs(lit) > f.var_count) return false;
  return true;
}

inline bool cnf_satisfied(const Cnf& f, const std::vector<bool>& model) {
  for (const auto& clause : f.clauses) {
    bool sat = false;
    for (int lit : clause) {
      int v = std::abs(lit) - 1;
      if (model[v] == (lit > 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

// Truth-table oracle; returns the lexicographically first model (variable 1
// most significant, false before true) or nothing. Desk-scale only.
inline std::optional<std::vector<bool>> brute_force_sat(const Cnf& f, int max_vars = 24) {
  if (!cnf_valid(f)) throw std::invalid_argument("brute_force_sat: malformed formula");
  if (f.var_count > max_vars) throw std::invalid_argument("brute_force_sat: variable bound exceeded");
  const int n = f.var_count;
  std::vector<bool> model(n, false);
  for (unsigned long long m = 0; m < (1ull << n); ++m) {
    for (int v = 0; v < n; ++v) model[v] = (m >> (n - 1 - v)) & 1;
    if (cnf_satisfied(f, model)) return model;
  }
  return std::nullopt;
}

}  // namespace comprep

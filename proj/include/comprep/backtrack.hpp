#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "comprep/core.hpp"

namespace comprep {

enum class SearchMode { find_one, enumerate_all };
enum class SlotHeuristic { smallest_domain, fixed_order };
enum class ValueHeuristic { least_precluding, fixed_order };

struct SearchOptions {
  SearchMode mode = SearchMode::find_one;
  long long cap = std::numeric_limits<long long>::max();
  SlotHeuristic slot_heuristic = SlotHeuristic::smallest_domain;
  ValueHeuristic value_heuristic = ValueHeuristic::least_precluding;
  bool use_forced_rules = true;
};

struct SearchStats {
  long long nodes = 0;        // value assignments tried
  long long preclusions = 0;  // conflicting values removed by choices

  bool operator==(const SearchStats&) const = default;
};

// Live domains plus the removal trail that restores them on backtrack.
// Single-owner; the underlying Instance must outlive the state.
class SearchState {
 public:
  explicit SearchState(const Instance& inst)
      : inst_(&inst), index_(inst), alive_(inst.slot_count()), live_count_(inst.slot_count()),
        chosen_elem_(inst.slot_count(), -1) {
    for (int j = 0; j < inst.slot_count(); ++j) {
      alive_[j].assign(inst.domain_size(j), 1);
      live_count_[j] = inst.domain_size(j);
    }
  }

  const Instance& instance() const { return *inst_; }
  const detail::ConflictIndex& index() const { return index_; }
  int slot_count() const { return inst_->slot_count(); }
  bool alive(int j, int a) const { return alive_[j][a] != 0; }
  int live_count(int j) const { return live_count_[j]; }
  bool chosen(int j) const { return chosen_elem_[j] >= 0; }
  int chosen_elem(int j) const { return chosen_elem_[j]; }
  int depth() const { return static_cast<int>(frames_.size()); }
  const SearchStats& stats() const { return stats_; }

  std::vector<int> live_elements(int j) const {
    std::vector<int> out;
    for (int a = 0; a < inst_->domain_size(j); ++a)
      if (alive_[j][a]) out.push_back(a);
    return out;
  }

  // Selects (j, a): shrinks slot j to {a}, removes values incompatible with
  // the choice from unchosen slots. Returns false when some unchosen slot
  // is wiped out; the caller must still undo().
  bool choose(int j, int a) {
    if (chosen(j)) throw std::invalid_argument("choose: slot already chosen");
    if (!alive(j, a)) throw std::invalid_argument("choose: element not live");
    ++stats_.nodes;
    frames_.push_back({j, trail_.size(), 0, {-1, -1}});
    Frame& frame = frames_.back();
    for (int other = 0; other < inst_->domain_size(j); ++other)
      if (other != a && alive_[j][other]) remove(j, other);
    chosen_elem_[j] = a;
    bool ok = true;
    for (auto [k, b] : index_.conflicts(j, a)) {
      if (chosen(k) || !alive_[k][b]) continue;
      remove(k, b);
      ++stats_.preclusions;
      ++frame.conflict_removals;
      frame.single = {k, b};
      if (live_count_[k] == 0) ok = false;
    }
    return ok;
  }

  void undo() {
    if (frames_.empty()) throw std::logic_error("undo: no choice to undo");
    const Frame frame = frames_.back();
    frames_.pop_back();
    while (trail_.size() > frame.trail_start) {
      auto [j, a] = trail_.back();
      trail_.pop_back();
      alive_[j][a] = 1;
      ++live_count_[j];
    }
    chosen_elem_[frame.slot] = -1;
  }

  // When the most recent choose() precluded exactly one value, that value.
  std::optional<std::pair<int, int>> last_single_preclusion() const {
    if (frames_.empty()) return std::nullopt;
    const Frame& frame = frames_.back();
    if (frame.conflict_removals != 1) return std::nullopt;
    return frame.single;
  }

  // Shrinks an unchosen slot to a single value. Removals land in the
  // enclosing frame (or are permanent at the root).
  void force_domain(int j, int a) {
    if (chosen(j)) throw std::invalid_argument("force_domain: slot already chosen");
    if (!alive(j, a)) throw std::invalid_argument("force_domain: element not live");
    for (int other = 0; other < inst_->domain_size(j); ++other)
      if (other != a && alive_[j][other]) remove(j, other);
  }

  Assignment current_assignment() const {
    Assignment asg;
    asg.choices.assign(chosen_elem_.begin(), chosen_elem_.end());
    return asg;
  }

  std::uint64_t domain_checksum() const {
    std::uint64_t h = 1469598103934665603ull;
    for (int j = 0; j < slot_count(); ++j)
      for (int a = 0; a < inst_->domain_size(j); ++a) {
        h ^= static_cast<std::uint64_t>(alive_[j][a] ? 0x9e : 0x31);
        h *= 1099511628211ull;
      }
    return h;
  }

 private:
  struct Frame {
    int slot;
    size_t trail_start;
    int conflict_removals;
    std::pair<int, int> single;
  };

  void remove(int j, int a) {
    alive_[j][a] = 0;
    --live_count_[j];
    trail_.push_back({j, a});
  }

  const Instance* inst_;
  detail::ConflictIndex index_;
  std::vector<std::vector<char>> alive_;
  std::vector<int> live_count_;
  std::vector<int> chosen_elem_;
  std::vector<std::pair<int, int>> trail_;
  std::vector<Frame> frames_;
  SearchStats stats_;
};

// Live values in other, still-open slots that selecting (j, a) would remove.
inline int preclusion_count(const SearchState& state, int j, int a) {
  if (j < 0 || j >= state.slot_count()) throw std::invalid_argument("preclusion_count: slot out of range");
  if (state.chosen(j)) throw std::invalid_argument("preclusion_count: slot already chosen");
  if (a < 0 || a >= state.instance().domain_size(j) || !state.alive(j, a))
    throw std::invalid_argument("preclusion_count: element not live");
  int count = 0;
  for (auto [k, b] : state.index().conflicts(j, a))
    if (!state.chosen(k) && state.alive(k, b)) ++count;
  return count;
}

struct SolveResult {
  std::optional<Assignment> solution;
  SearchStats stats;
};

struct EnumerateResult {
  std::vector<Assignment> solutions;  // sorted lexicographically
  bool truncated = false;
  SearchStats stats;
};

namespace detail {

inline int pick_slot(const SearchState& st, SlotHeuristic heuristic) {
  int best = -1;
  for (int j = 0; j < st.slot_count(); ++j) {
    if (st.chosen(j)) continue;
    if (heuristic == SlotHeuristic::fixed_order) return j;
    if (best < 0 || st.live_count(j) < st.live_count(best)) best = j;
  }
  return best;
}

inline std::vector<int> order_values(const SearchState& st, int j, ValueHeuristic heuristic) {
  std::vector<int> values = st.live_elements(j);
  if (heuristic == ValueHeuristic::least_precluding) {
    std::vector<std::pair<int, int>> keyed;
    keyed.reserve(values.size());
    for (int a : values) keyed.push_back({preclusion_count(st, j, a), a});
    std::sort(keyed.begin(), keyed.end());
    for (size_t i = 0; i < values.size(); ++i) values[i] = keyed[i].second;
  }
  return values;
}

// Returns true to stop the search (solution found in find_one mode, or cap
// reached while enumerating).
inline bool search(SearchState& st, const SearchOptions& opts, bool forced_rules,
                   std::vector<Assignment>& out) {
  int j = pick_slot(st, opts.slot_heuristic);
  if (j < 0) {
    out.push_back(st.current_assignment());
    return opts.mode == SearchMode::find_one ||
           static_cast<long long>(out.size()) >= opts.cap;
  }
  if (st.live_count(j) == 0) return false;
  for (int a : order_values(st, j, opts.value_heuristic)) {
    bool viable = st.choose(j, a);
    auto single = st.last_single_preclusion();
    bool stop = viable && search(st, opts, forced_rules, out);
    st.undo();
    if (stop) return true;
    // Subtree under (j, a) failed; if a precluded exactly one value, that
    // value can be committed for the rest of this subproblem.
    if (forced_rules && single) st.force_domain(single->first, single->second);
  }
  return false;
}

inline void apply_root_rule1(SearchState& st) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int j = 0; j < st.slot_count() && !changed; ++j) {
      if (st.chosen(j) || st.live_count(j) <= 1) continue;
      for (int a : st.live_elements(j)) {
        if (preclusion_count(st, j, a) == 0) {
          st.force_domain(j, a);
          changed = true;
          break;
        }
      }
    }
  }
}

}  // namespace detail

namespace detail {

inline bool has_empty_domain(const Instance& inst) {
  for (int j = 0; j < inst.slot_count(); ++j)
    if (inst.domain_size(j) == 0) return true;
  return false;
}

}  // namespace detail

inline SolveResult solve(const Instance& inst, const SearchOptions& options = {}) {
  SearchOptions opts = options;
  opts.mode = SearchMode::find_one;
  SolveResult result;
  if (detail::has_empty_domain(inst)) return result;
  SearchState st(inst);
  if (opts.use_forced_rules) detail::apply_root_rule1(st);
  std::vector<Assignment> out;
  detail::search(st, opts, opts.use_forced_rules, out);
  result.stats = st.stats();
  if (!out.empty()) result.solution = std::move(out.front());
  return result;
}

// Forced rules stay off during enumeration: they preserve solvability, not
// the full solution set.
inline EnumerateResult enumerate(const Instance& inst, const SearchOptions& options = {}) {
  SearchOptions opts = options;
  opts.mode = SearchMode::enumerate_all;
  if (opts.cap < 1) throw std::invalid_argument("enumerate: cap must be >= 1");
  EnumerateResult result;
  if (detail::has_empty_domain(inst)) return result;
  SearchState st(inst);
  result.truncated = detail::search(st, opts, /*forced_rules=*/false, result.solutions);
  result.stats = st.stats();
  std::sort(result.solutions.begin(), result.solutions.end());
  return result;
}

struct ForcedFix {
  int slot = 0;   // slot whose domain was shrunk
  int elem = 0;   // surviving element, as an index into the input instance
  std::string token;
};

struct ForcedRulesResult {
  Instance instance;
  std::vector<ForcedFix> log;
};

// Rule 1, iterated to a fixed point: a slot containing a value that
// precludes nothing shrinks to that value. The result is solvable iff the
// input is. Rule 2 is not an instance rewrite; solve() applies it as search
// ordering.
inline ForcedRulesResult apply_forced_rules(const Instance& inst) {
  detail::ConflictIndex index(inst);
  std::vector<std::vector<char>> alive(inst.slot_count());
  for (int j = 0; j < inst.slot_count(); ++j) alive[j].assign(inst.domain_size(j), 1);

  ForcedRulesResult result;
  auto live_conflicts = [&](int j, int a) {
    int count = 0;
    for (auto [k, b] : index.conflicts(j, a))
      if (alive[k][b]) ++count;
    return count;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int j = 0; j < inst.slot_count() && !changed; ++j) {
      int live = 0;
      for (char c : alive[j]) live += c;
      if (live <= 1) continue;
      for (int a = 0; a < inst.domain_size(j) && !changed; ++a) {
        if (!alive[j][a] || live_conflicts(j, a) != 0) continue;
        for (int other = 0; other < inst.domain_size(j); ++other)
          if (other != a) alive[j][other] = 0;
        result.log.push_back({j, a, inst.domains[j][a]});
        changed = true;
      }
    }
  }

  // Rebuild with surviving elements; local indices are remapped.
  std::vector<std::vector<int>> remap(inst.slot_count());
  for (int j = 0; j < inst.slot_count(); ++j) {
    remap[j].assign(inst.domain_size(j), -1);
    std::vector<std::string> dom;
    for (int a = 0; a < inst.domain_size(j); ++a)
      if (alive[j][a]) {
        remap[j][a] = static_cast<int>(dom.size());
        dom.push_back(inst.domains[j][a]);
      }
    result.instance.domains.push_back(std::move(dom));
  }
  for (const IncompatPair& p : inst.incompat) {
    int a = remap[p.lo.slot][p.lo.elem];
    int b = remap[p.hi.slot][p.hi.elem];
    if (a >= 0 && b >= 0) result.instance.add_incompat(p.lo.slot, a, p.hi.slot, b);
  }
  std::sort(result.instance.incompat.begin(), result.instance.incompat.end());
  result.instance.incompat.erase(
      std::unique(result.instance.incompat.begin(), result.instance.incompat.end()),
      result.instance.incompat.end());
  return result;
}

}  // namespace comprep

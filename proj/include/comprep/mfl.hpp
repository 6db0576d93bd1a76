#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "comprep/backtrack.hpp"
#include "comprep/cnf.hpp"
#include "comprep/core.hpp"

namespace comprep {

struct GridPoint {
  int x = 0;
  int y = 0;
  auto operator<=>(const GridPoint&) const = default;
};

inline GridPoint operator+(GridPoint a, GridPoint b) { return {a.x + b.x, a.y + b.y}; }
inline GridPoint operator-(GridPoint a, GridPoint b) { return {a.x - b.x, a.y - b.y}; }

inline long long dist2(GridPoint a, GridPoint b) {
  long long dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline int chebyshev(GridPoint a, GridPoint b) {
  return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

enum class Direction { up, down, left, right };

inline constexpr std::array<Direction, 4> all_directions{Direction::up, Direction::down,
                                                         Direction::left, Direction::right};

inline GridPoint offset(Direction d) {
  switch (d) {
    case Direction::up: return {0, 1};
    case Direction::down: return {0, -1};
    case Direction::left: return {-1, 0};
    case Direction::right: return {1, 0};
  }
  throw std::logic_error("offset: bad direction");
}

inline char direction_code(Direction d) {
  switch (d) {
    case Direction::up: return 'U';
    case Direction::down: return 'D';
    case Direction::left: return 'L';
    case Direction::right: return 'R';
  }
  throw std::logic_error("direction_code: bad direction");
}

inline std::optional<Direction> direction_from_code(char c) {
  switch (c) {
    case 'U': return Direction::up;
    case 'D': return Direction::down;
    case 'L': return Direction::left;
    case 'R': return Direction::right;
    default: return std::nullopt;
  }
}

inline std::optional<Direction> direction_between(GridPoint from, GridPoint to) {
  for (Direction d : all_directions)
    if (from + offset(d) == to) return d;
  return std::nullopt;
}

// Distinct integer lattice points to be labeled.
struct MflInstance {
  std::vector<GridPoint> points;

  int size() const { return static_cast<int>(points.size()); }
};

// One label center per point. Valid solutions keep |x_j - p_j| = 1,
// |x_j - p_k| > 1 for k != j, and centers pairwise at Chebyshev distance
// >= 2 (the 2x2 label squares are then disjoint).
struct MflSolution {
  std::vector<GridPoint> centers;

  bool operator==(const MflSolution&) const = default;
};

inline int point_index(const MflInstance& inst, GridPoint p) {
  for (int j = 0; j < inst.size(); ++j)
    if (inst.points[j] == p) return j;
  return -1;
}

// Unit neighbors of p_j farther than 1 from every other point, in
// Direction enumeration order (U, D, L, R).
inline std::vector<GridPoint> candidates(const MflInstance& inst, int j) {
  if (j < 0 || j >= inst.size()) throw std::invalid_argument("candidates: index out of range");
  std::vector<GridPoint> out;
  for (Direction d : all_directions) {
    GridPoint c = inst.points[j] + offset(d);
    bool ok = true;
    for (int k = 0; k < inst.size() && ok; ++k)
      if (k != j && dist2(c, inst.points[k]) <= 1) ok = false;
    if (ok) out.push_back(c);
  }
  return out;
}

inline bool check_mfl_solution(const MflInstance& inst, const MflSolution& sol) {
  if (sol.centers.size() != inst.points.size())
    throw std::invalid_argument("check_mfl_solution: length mismatch");
  const int n = inst.size();
  for (int j = 0; j < n; ++j) {
    if (dist2(sol.centers[j], inst.points[j]) != 1) return false;
    for (int k = 0; k < n; ++k)
      if (k != j && dist2(sol.centers[j], inst.points[k]) <= 1) return false;
  }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      if (chebyshev(sol.centers[j], sol.centers[k]) < 2) return false;
  return true;
}

// Pins a point's label to one direction before solving.
struct DirectionFix {
  int point = 0;
  Direction dir = Direction::up;
};

// Compatibility embedding: slot per point, domain per unary-feasible label
// position, conflicts between centers at Chebyshev distance < 2.
struct MflEmbedding {
  Instance instance;
  std::vector<std::vector<GridPoint>> positions;  // [slot][elem] -> center
};

namespace detail {

inline MflEmbedding build_embedding(const MflInstance& inst, std::span<const DirectionFix> fixes) {
  {
    std::set<GridPoint> unique(inst.points.begin(), inst.points.end());
    if (static_cast<int>(unique.size()) != inst.size())
      throw std::invalid_argument("mfl: duplicate points");
  }
  MflEmbedding emb;
  const int n = inst.size();
  emb.positions.resize(n);
  for (int j = 0; j < n; ++j) {
    std::vector<GridPoint> cands = candidates(inst, j);
    for (const DirectionFix& fix : fixes) {
      if (fix.point < 0 || fix.point >= n) throw std::invalid_argument("mfl: fix index out of range");
      if (fix.point != j) continue;
      GridPoint want = inst.points[j] + offset(fix.dir);
      std::vector<GridPoint> kept;
      for (GridPoint c : cands)
        if (c == want) kept.push_back(c);
      cands = kept;
    }
    std::vector<std::string> tokens;
    for (GridPoint c : cands) {
      auto d = direction_between(inst.points[j], c);
      tokens.push_back(std::string(1, direction_code(*d)));
      emb.positions[j].push_back(c);
    }
    emb.instance.domains.push_back(std::move(tokens));
  }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      for (size_t a = 0; a < emb.positions[j].size(); ++a)
        for (size_t b = 0; b < emb.positions[k].size(); ++b)
          if (chebyshev(emb.positions[j][a], emb.positions[k][b]) < 2)
            emb.instance.add_incompat(j, static_cast<int>(a), k, static_cast<int>(b));
  std::sort(emb.instance.incompat.begin(), emb.instance.incompat.end());
  return emb;
}

}  // namespace detail

inline MflEmbedding to_compat(const MflInstance& inst) { return detail::build_embedding(inst, {}); }

inline MflSolution map_assignment(const MflEmbedding& emb, const Assignment& asg) {
  MflSolution sol;
  for (size_t j = 0; j < asg.choices.size(); ++j)
    sol.centers.push_back(emb.positions[j][asg.choices[j]]);
  return sol;
}

inline std::optional<MflSolution> solve_mfl(const MflInstance& inst,
                                            std::span<const DirectionFix> fixes = {}) {
  MflEmbedding emb = detail::build_embedding(inst, fixes);
  SolveResult res = solve(emb.instance);
  if (!res.solution) return std::nullopt;
  return map_assignment(emb, *res.solution);
}

// Exhaustive up to cap; ordered lexicographically by per-point direction
// in enumeration order (U < D < L < R).
inline std::vector<MflSolution> enumerate_mfl(const MflInstance& inst,
                                              long long cap = std::numeric_limits<long long>::max(),
                                              std::span<const DirectionFix> fixes = {}) {
  MflEmbedding emb = detail::build_embedding(inst, fixes);
  SearchOptions opts;
  opts.cap = cap;
  EnumerateResult res = enumerate(emb.instance, opts);
  std::vector<MflSolution> out;
  for (const Assignment& asg : res.solutions) out.push_back(map_assignment(emb, asg));
  return out;
}

// The two ways a four-point cluster can be labeled: positive sends the
// lower-left label left (and ul up, ur right, lr down); negative is the
// rotation sending it down.
enum class Orientation { positive, negative };

inline std::optional<Orientation> cluster_orientation(const MflInstance& inst,
                                                      const MflSolution& sol, int lower_left) {
  if (lower_left < 0 || lower_left >= inst.size() ||
      sol.centers.size() != inst.points.size())
    throw std::invalid_argument("cluster_orientation: bad arguments");
  auto d = direction_between(inst.points[lower_left], sol.centers[lower_left]);
  if (d == Direction::left) return Orientation::positive;
  if (d == Direction::down) return Orientation::negative;
  return std::nullopt;
}

// 2x2 block {origin, origin+(1,0), origin+(0,1), origin+(1,1)}; admits
// exactly two labelings.
inline MflInstance gadget_cluster(GridPoint origin) {
  MflInstance inst;
  inst.points = {origin, origin + GridPoint{1, 0}, origin + GridPoint{0, 1},
                 origin + GridPoint{1, 1}};
  return inst;
}

// Tree network of clusters whose origins are linked at diagonal offsets
// (+-3, +-3); the whole network keeps a single common orientation, so it
// has exactly two solutions.
inline MflInstance gadget_chain(std::span<const GridPoint> origins) {
  if (origins.empty()) throw std::invalid_argument("gadget_chain: no origins");
  {
    std::set<GridPoint> unique(origins.begin(), origins.end());
    if (unique.size() != origins.size()) throw std::invalid_argument("gadget_chain: duplicate origins");
  }
  std::vector<int> parent(origins.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t i = 0; i < origins.size(); ++i)
    for (size_t j = i + 1; j < origins.size(); ++j)
      if (std::abs(origins[i].x - origins[j].x) == 3 && std::abs(origins[i].y - origins[j].y) == 3)
        parent[find(static_cast<int>(i))] = find(static_cast<int>(j));
  for (size_t i = 0; i < origins.size(); ++i)
    if (find(static_cast<int>(i)) != find(0))
      throw std::invalid_argument("gadget_chain: origins are not chain-connected");
  MflInstance inst;
  for (GridPoint o : origins) {
    MflInstance cluster = gadget_cluster(o);
    inst.points.insert(inst.points.end(), cluster.points.begin(), cluster.points.end());
  }
  std::set<GridPoint> unique(inst.points.begin(), inst.points.end());
  if (unique.size() != inst.points.size())
    throw std::invalid_argument("gadget_chain: cluster point sets overlap");
  return inst;
}

// Clause gadget parameters. Arms carry 6l+4 and 6m+4 dots; the three leg
// polarities select the junction variant placed beneath each bottom triple
// when a clause is compiled.
struct CombSpec {
  int left_arm = 0;   // l
  int right_arm = 1;  // m
  std::array<bool, 3> leg_negated{false, false, false};
  GridPoint anchor{0, 0};
};

// Comb figure: three bottom triples, a stem over the middle triple, side
// columns, and a top row whose arms bridge the gaps. With l = 0, m = 1 and
// anchor (0,0) this is exactly the printed 38-dot configuration spanning
// x in [0,20], y in [0,7].
inline MflInstance gadget_comb(const CombSpec& spec) {
  const int l = spec.left_arm, m = spec.right_arm;
  if (l < 0 || m < 0) throw std::invalid_argument("gadget_comb: arms must be nonnegative");
  MflInstance inst;
  auto dot = [&](int x, int y) { inst.points.push_back(GridPoint{x, y} + spec.anchor); };
  const int left = -6 * l;        // left column / left triple start
  const int right = 6 * m + 14;   // right column / right triple end
  // bottom triples
  for (int x = left; x <= left + 2; ++x) dot(x, 0);
  for (int x = 6; x <= 8; ++x) dot(x, 0);
  for (int x = right - 2; x <= right; ++x) dot(x, 0);
  // side columns
  for (int y = 2; y <= 5; ++y) dot(left, y);
  for (int y = 2; y <= 5; ++y) dot(right, y);
  // stem
  dot(6, 3);
  dot(7, 3);
  dot(8, 3);
  dot(7, 6);
  // top row: corner, left arm, stem top, right arm, corner
  dot(left, 7);
  for (int x = left + 2; x <= 5; ++x) dot(x, 7);
  dot(7, 7);
  for (int x = 9; x <= right - 2; ++x) dot(x, 7);
  dot(right, 7);
  return inst;
}

// Polarity gadget joining a clause leg to a variable chain, as printed:
// a 3-dot top triple whose middle arrow, when pointing down, forces one
// orientation on the clusters below; pointing up it forces nothing. The
// negated variant replaces the upper cluster with a second triple and
// forces the opposite orientation.
inline MflInstance gadget_junction(bool negated, GridPoint anchor = {0, 0}) {
  MflInstance inst;
  auto dot = [&](int x, int y) { inst.points.push_back(GridPoint{x, y} + anchor); };
  auto cluster = [&](int x, int y) {
    MflInstance c = gadget_cluster(GridPoint{x, y} + anchor);
    inst.points.insert(inst.points.end(), c.points.begin(), c.points.end());
  };
  dot(1, 7);
  dot(2, 7);
  dot(3, 7);
  if (!negated) {
    cluster(0, 3);
    cluster(3, 0);
  } else {
    dot(1, 4);
    dot(2, 4);
    dot(3, 4);
    cluster(3, 0);
  }
  return inst;
}

// Planar 3SAT: variables on a line, three-legged clauses above and below,
// legs of distinct same-side clauses non-interleaving.
struct Planar3SatLeg {
  int var = 0;
  bool negated = false;
};

enum class ClauseSide { above, below };

struct Planar3SatClause {
  ClauseSide side = ClauseSide::above;
  std::array<Planar3SatLeg, 3> legs;
};

struct Planar3Sat {
  int var_count = 0;
  std::vector<Planar3SatClause> clauses;
};

inline bool planar3sat_satisfied(const Planar3Sat& f, const std::vector<bool>& assignment) {
  for (const auto& clause : f.clauses) {
    bool sat = false;
    for (const auto& leg : clause.legs)
      if (assignment[leg.var] != leg.negated) sat = true;
    if (!sat) return false;
  }
  return true;
}

inline Cnf planar3sat_to_cnf(const Planar3Sat& f) {
  Cnf out;
  out.var_count = f.var_count;
  for (const auto& clause : f.clauses) {
    std::vector<int> lits;
    for (const auto& leg : clause.legs) lits.push_back(leg.negated ? -(leg.var + 1) : leg.var + 1);
    out.clauses.push_back(std::move(lits));
  }
  return out;
}

namespace detail {

struct LegRef {
  int clause = 0;
  int leg = 0;
  auto operator<=>(const LegRef&) const = default;
};

// Left-to-right leg order for one side: legs grouped by variable in
// variable order, ordered within each group so that no two clauses
// interleave. Searches the per-variable orderings; nullopt when no
// non-crossing arrangement exists.
inline std::optional<std::vector<LegRef>> side_arrangement(const Planar3Sat& f, ClauseSide side) {
  std::vector<std::vector<LegRef>> buckets(f.var_count);
  std::vector<int> side_clauses;
  for (int c = 0; c < static_cast<int>(f.clauses.size()); ++c) {
    if (f.clauses[c].side != side) continue;
    side_clauses.push_back(c);
    for (int leg = 0; leg < 3; ++leg) buckets[f.clauses[c].legs[leg].var].push_back({c, leg});
  }
  // d fits c when every leg of d falls in the same gap of c's three legs.
  // A pair is non-crossing when it fits in at least one direction (nested
  // clauses fit one way only; disjoint ones fit both).
  auto fits = [](const std::vector<int>& p, const std::vector<int>& q) {
    int shared = -1;
    for (int pos : q) {
      int gap = 0;
      while (gap < 3 && pos > p[gap]) ++gap;
      if (shared < 0) shared = gap;
      else if (gap != shared) return false;
    }
    return true;
  };
  auto valid = [&](const std::vector<LegRef>& order) {
    std::map<int, std::vector<int>> positions;
    for (int i = 0; i < static_cast<int>(order.size()); ++i)
      positions[order[i].clause].push_back(i);
    for (size_t ci = 0; ci < side_clauses.size(); ++ci)
      for (size_t di = ci + 1; di < side_clauses.size(); ++di) {
        const auto& p = positions[side_clauses[ci]];
        const auto& q = positions[side_clauses[di]];
        if (!fits(p, q) && !fits(q, p)) return false;
      }
    return true;
  };
  std::vector<LegRef> order;
  long long attempts = 0;
  auto dfs = [&](auto&& self, int var) -> bool {
    if (var == f.var_count) return valid(order);
    std::vector<LegRef> bucket = buckets[var];
    std::sort(bucket.begin(), bucket.end());
    do {
      if (++attempts > 200000) throw std::invalid_argument("planar3sat: layout search overflow");
      size_t mark = order.size();
      order.insert(order.end(), bucket.begin(), bucket.end());
      if (self(self, var + 1)) return true;
      order.resize(mark);
    } while (std::next_permutation(bucket.begin(), bucket.end()));
    return false;
  };
  if (dfs(dfs, 0)) return order;
  return std::nullopt;
}

}  // namespace detail

inline bool planar3sat_valid(const Planar3Sat& f) {
  if (f.var_count < 0) return false;
  for (const auto& clause : f.clauses)
    for (const auto& leg : clause.legs)
      if (leg.var < 0 || leg.var >= f.var_count) return false;
  return detail::side_arrangement(f, ClauseSide::above).has_value() &&
         detail::side_arrangement(f, ClauseSide::below).has_value();
}

// How to read one variable off a solution of the compiled instance: the
// lower-left dot of a reference cluster in the variable's chain and the
// orientation meaning "true".
struct VarDecoderEntry {
  int point_index = 0;
  GridPoint point;
  Orientation true_orientation = Orientation::positive;
};

struct VarDecoder {
  std::vector<VarDecoderEntry> vars;
};

struct CompiledMfl {
  MflInstance instance;
  VarDecoder decoder;
};

inline std::vector<bool> decode(const MflSolution& sol, const VarDecoder& dec) {
  std::vector<bool> assignment;
  for (const auto& entry : dec.vars) {
    if (entry.point_index < 0 || entry.point_index >= static_cast<int>(sol.centers.size()))
      throw std::invalid_argument("decode: reference point outside solution");
    auto d = direction_between(entry.point, sol.centers[entry.point_index]);
    Orientation o;
    if (d == Direction::left) o = Orientation::positive;
    else if (d == Direction::down) o = Orientation::negative;
    else throw std::invalid_argument("decode: reference label is not a cluster corner arrow");
    assignment.push_back(o == entry.true_orientation);
  }
  return assignment;
}

namespace detail {

// Assembles compiled instances and keeps cluster origins for the final
// separation audit.
struct MflBuilder {
  std::vector<GridPoint> dots;
  std::vector<GridPoint> cluster_origins;

  void dot(GridPoint p) { dots.push_back(p); }
  void cluster(GridPoint origin) {
    cluster_origins.push_back(origin);
    MflInstance c = gadget_cluster(origin);
    dots.insert(dots.end(), c.points.begin(), c.points.end());
  }
  // Reflect about y = 1/2: a cluster occupies two rows, so this keeps
  // cluster origins on the same row lattice as the unreflected ones.
  void mirror_y() {
    for (GridPoint& p : dots) p.y = 1 - p.y;
    for (GridPoint& o : cluster_origins) o.y = -o.y;
  }
  void append(const MflBuilder& other) {
    dots.insert(dots.end(), other.dots.begin(), other.dots.end());
    cluster_origins.insert(cluster_origins.end(), other.cluster_origins.begin(),
                           other.cluster_origins.end());
  }
};

}  // namespace detail

// Compiles a properly nested planar 3SAT formula into an MFL instance:
// horizontal cluster chains for the variables, a comb per clause (above or
// below), a junction per leg selected by polarity, and zigzag cluster
// ladders carrying each leg down to its variable. Solvable iff the formula
// is satisfiable; decode() of any solution satisfies the formula.
inline CompiledMfl compile_3sat(const Planar3Sat& f) {
  if (f.var_count > 10 || static_cast<int>(f.clauses.size()) > 8)
    throw std::invalid_argument("compile_3sat: layout bounds exceeded");
  for (const auto& clause : f.clauses)
    for (const auto& leg : clause.legs)
      if (leg.var < 0 || leg.var >= f.var_count)
        throw std::invalid_argument("compile_3sat: leg variable out of range");
  auto above = detail::side_arrangement(f, ClauseSide::above);
  auto below = detail::side_arrangement(f, ClauseSide::below);
  if (!above || !below) throw std::invalid_argument("compile_3sat: clauses are not properly nested");

  // Tap columns: every leg lands on a column x = 7 (mod 12); consecutive
  // taps sit 12 apart so unrelated ladders and combs never interact.
  const int clause_count = static_cast<int>(f.clauses.size());
  std::vector<std::array<int, 3>> tap(clause_count, {0, 0, 0});
  std::vector<int> min_tap(f.var_count, 0), max_tap(f.var_count, 0);
  int next = 7;
  for (int v = 0; v < f.var_count; ++v) {
    min_tap[v] = next;
    bool any = false;
    for (const auto* arr : {&*above, &*below})
      for (const detail::LegRef& leg : *arr)
        if (f.clauses[leg.clause].legs[leg.leg].var == v) {
          tap[leg.clause][leg.leg] = next;
          max_tap[v] = next;
          next += 12;
          any = true;
        }
    if (!any) {
      max_tap[v] = next;
      next += 12;
    }
  }

  detail::MflBuilder out;
  CompiledMfl result;

  // Variable segments: base clusters at y=0 every 6 columns, connector
  // clusters at y=3 between them, spanning all of the variable's taps.
  for (int v = 0; v < f.var_count; ++v) {
    for (int x = min_tap[v] - 5; x <= max_tap[v] + 1; x += 6) out.cluster({x, 0});
    for (int x = min_tap[v] - 2; x <= max_tap[v] - 2; x += 6) out.cluster({x, 3});
    result.decoder.vars.push_back({-1, {min_tap[v] - 5, 0}, Orientation::positive});
  }

  // Comb heights per side: innermost (deepest nested) lowest, 12 apart,
  // all = 1 (mod 6) so ladders land on segment connectors.
  auto clause_depth = [&](int c) {
    int depth = 0;
    auto span = [&](int cl) {
      auto [lo, hi] = std::minmax_element(tap[cl].begin(), tap[cl].end());
      return std::pair{*lo, *hi};
    };
    auto [lo_c, hi_c] = span(c);
    for (int d = 0; d < clause_count; ++d) {
      if (d == c || f.clauses[d].side != f.clauses[c].side) continue;
      auto [lo_d, hi_d] = span(d);
      if (lo_d < lo_c && hi_c < hi_d) ++depth;
    }
    return depth;
  };
  int max_depth[2] = {0, 0};
  for (int c = 0; c < clause_count; ++c)
    max_depth[f.clauses[c].side == ClauseSide::below] =
        std::max(max_depth[f.clauses[c].side == ClauseSide::below], clause_depth(c));

  for (int c = 0; c < clause_count; ++c) {
    const Planar3SatClause& clause = f.clauses[c];
    const bool below_side = clause.side == ClauseSide::below;
    std::array<int, 3> taps = tap[c];
    std::array<int, 3> leg_order{0, 1, 2};
    std::sort(leg_order.begin(), leg_order.end(), [&](int a, int b) { return taps[a] < taps[b]; });
    const int t1 = taps[leg_order[0]], t2 = taps[leg_order[1]], t3 = taps[leg_order[2]];
    const int height = 13 + 12 * (max_depth[below_side] - clause_depth(c));

    detail::MflBuilder part;
    CombSpec comb;
    comb.left_arm = (t2 - t1) / 6 - 1;
    comb.right_arm = (t3 - t2) / 6 - 1;
    comb.anchor = {t2 - 7, height};
    for (int i = 0; i < 3; ++i) comb.leg_negated[i] = clause.legs[leg_order[i]].negated;
    for (GridPoint p : gadget_comb(comb).points) part.dot(p);

    for (int i = 0; i < 3; ++i) {
      const int t = taps[leg_order[i]];
      const bool negated = clause.legs[leg_order[i]].negated;
      // Above, a downward clause arrow must force the orientation encoding
      // "literal true"; mirroring flips orientations, so the below side
      // swaps variants.
      const bool variant2 = negated != below_side;
      if (!variant2) {
        part.cluster({t - 2, height - 4});
      } else {
        part.dot({t - 1, height - 3});
        part.dot({t, height - 3});
        part.dot({t + 1, height - 3});
      }
      const int steps = (height - 10) / 3;  // ladder stops at the segment connector
      for (int s = 0; s < steps; ++s)
        part.cluster({s % 2 == 0 ? t + 1 : t - 2, height - 7 - 3 * s});
      if (below_side) part.cluster({t - 2, 3});  // mirrors to the landing at y = -3
    }
    if (below_side) part.mirror_y();
    out.append(part);
  }

  result.instance.points = out.dots;
  {
    std::set<GridPoint> unique(out.dots.begin(), out.dots.end());
    if (unique.size() != out.dots.size())
      throw std::logic_error("compile_3sat: layout produced duplicate points");
  }
  // Separation audit: cluster pairs either sit far apart or form an
  // intended diagonal chain link.
  for (size_t i = 0; i < out.cluster_origins.size(); ++i)
    for (size_t j = i + 1; j < out.cluster_origins.size(); ++j) {
      GridPoint a = out.cluster_origins[i], b = out.cluster_origins[j];
      if (chebyshev(a, b) >= 5) continue;
      if (std::abs(a.x - b.x) == 3 && std::abs(a.y - b.y) == 3) continue;
      throw std::logic_error("compile_3sat: cluster separation audit failed");
    }
  for (auto& entry : result.decoder.vars) {
    entry.point_index = point_index(result.instance, entry.point);
    if (entry.point_index < 0) throw std::logic_error("compile_3sat: decoder reference missing");
  }
  return result;
}

}  // namespace comprep

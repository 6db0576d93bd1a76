#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "comprep/backtrack.hpp"
#include "comprep/special.hpp"
#include "helpers.hpp"

using namespace comprep;
using testutil::example_e1;
using testutil::make_instance;

TEST_CASE("is_transitive", "[special]") {
  SECTION("empty relation is transitive") {
    CHECK(is_transitive(make_instance({{"a", "b"}, {"c"}, {"d"}}, {})));
  }
  SECTION("increasing-subsequence instances are transitive") {
    CHECK(is_transitive(gen_increasing_subsequence({{1, 3, 2}}, 3)));
  }
  SECTION("a single violating triple") {
    Instance inst = make_instance({{"a"}, {"b"}, {"c"}}, {{0, 0, 2, 0}});
    CHECK_FALSE(is_transitive(inst));
  }
}

TEST_CASE("compute_frontier matches the worked example", "[special]") {
  // pi = (1,3,2), n = 2: B2 holds positions 2 and 3 (0-based 1 and 2)
  Instance inst = gen_increasing_subsequence({{1, 3, 2}}, 2);
  Frontier f = compute_frontier(inst);
  REQUIRE(f.live.size() == 2);
  CHECK(f.live[0] == std::vector<int>{0, 1, 2});
  CHECK(f.live[1] == std::vector<int>{1, 2});
  CHECK(f.witness[1] == std::vector<int>{0, 0});  // both reached from position 1
  CHECK(f.solvable());
}

TEST_CASE("solve_transitive", "[special]") {
  SECTION("solvable example") {
    Instance inst = gen_increasing_subsequence({{1, 3, 2}}, 2);
    auto result = solve_transitive(inst);
    REQUIRE(result.solution.has_value());
    CHECK(check_solution(inst, *result.solution));
  }
  SECTION("unsolvable example") {
    Instance inst = gen_increasing_subsequence({{2, 1}}, 2);
    auto result = solve_transitive(inst);
    CHECK_FALSE(result.solution.has_value());
    CHECK(compute_frontier(inst).live[1].empty());
  }
  SECTION("single slot returns an element of A1") {
    Instance inst = make_instance({{"a", "b"}}, {});
    auto result = solve_transitive(inst);
    REQUIRE(result.solution.has_value());
    CHECK(result.solution->choices == std::vector<int>{0});
  }
  SECTION("probe count stays within the product bound") {
    std::mt19937 rng(211);
    for (int trial = 0; trial < 100; ++trial) {
      Instance inst = testutil::random_transitive_instance(rng);
      REQUIRE(is_transitive(inst));
      long long bound = 0;
      for (int j = 1; j < inst.slot_count(); ++j)
        bound += static_cast<long long>(inst.domain_size(j - 1)) * inst.domain_size(j);
      auto result = solve_transitive(inst);
      CHECK(result.probes <= bound);
      bool expected = !brute_force_solutions(inst).solutions.empty();
      CHECK(result.solution.has_value() == expected);
      if (result.solution) CHECK(check_solution(inst, *result.solution));
    }
  }
}

TEST_CASE("incompatibility_classes", "[special]") {
  SECTION("distinct-representatives relation yields token classes") {
    Instance inst = make_instance({{"r", "s"}, {"r"}}, {{0, 0, 1, 0}});
    auto classes = incompatibility_classes(inst);
    REQUIRE(classes.has_value());
    CHECK(classes->class_count == 2);
    CHECK(classes->class_of[0][0] == classes->class_of[1][0]);  // both r
    CHECK(classes->class_of[0][1] != classes->class_of[0][0]);
  }
  SECTION("empty relation with distinct tokens gives singletons") {
    Instance inst = make_instance({{"a", "b"}, {"c"}}, {});
    auto classes = incompatibility_classes(inst);
    REQUIRE(classes.has_value());
    CHECK(classes->class_count == 3);
  }
  SECTION("E1 is not an equivalence") {
    CHECK_FALSE(incompatibility_classes(example_e1()).has_value());
  }
  SECTION("a token compatible with itself disqualifies") {
    Instance inst = make_instance({{"r"}, {"r"}}, {});
    CHECK_FALSE(incompatibility_classes(inst).has_value());
  }
}

TEST_CASE("max_matching", "[special]") {
  SECTION("complete 2x2") {
    BipartiteGraph g{2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
    CHECK(max_matching(g).size == 2);
  }
  SECTION("shared right vertex") {
    BipartiteGraph g{2, 1, {{0, 0}, {1, 0}}};
    CHECK(max_matching(g).size == 1);
  }
  SECTION("3x3 with an augmenting path") {
    BipartiteGraph g{3, 3, {{0, 0}, {0, 1}, {1, 0}, {2, 2}}};
    Matching m = max_matching(g);
    CHECK(m.size == 3);
    CHECK(m.right_of == std::vector<int>{1, 0, 2});
  }
  SECTION("random graphs against the exhaustive oracle") {
    std::mt19937 rng(223);
    std::uniform_int_distribution<int> side(1, 7);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int trial = 0; trial < 60; ++trial) {
      BipartiteGraph g;
      g.left_count = side(rng);
      g.right_count = side(rng);
      for (int l = 0; l < g.left_count; ++l)
        for (int r = 0; r < g.right_count; ++r)
          if (coin(rng) < 0.4) g.edges.push_back({l, r});
      Matching m = max_matching(g);
      CHECK(m.size == testutil::exhaustive_matching_size(g.left_count, g.right_count, g.edges));
      // matching validity
      std::set<int> used;
      int size = 0;
      for (int l = 0; l < g.left_count; ++l) {
        if (m.right_of[l] < 0) continue;
        ++size;
        CHECK(used.insert(m.right_of[l]).second);
        CHECK(std::find(g.edges.begin(), g.edges.end(), std::pair{l, m.right_of[l]}) != g.edges.end());
      }
      CHECK(size == m.size);
    }
  }
}

TEST_CASE("solve_equivalence", "[special]") {
  SECTION("pigeonhole fails") {
    Instance inst = make_instance({{"r"}, {"r"}}, {{0, 0, 1, 0}});
    CHECK_FALSE(solve_equivalence(inst).has_value());
  }
  SECTION("worked example picks (s, r)") {
    Instance inst = make_instance({{"r", "s"}, {"r"}}, {{0, 0, 1, 0}});
    auto sol = solve_equivalence(inst);
    REQUIRE(sol.has_value());
    CHECK(sol->choices == std::vector<int>{1, 0});
  }
  SECTION("private tokens always solvable") {
    Instance inst = make_instance({{"a"}, {"b"}, {"c"}}, {});
    CHECK(solve_equivalence(inst).has_value());
  }
  SECTION("non-equivalence input is a usage error") {
    CHECK_THROWS_AS(solve_equivalence(example_e1()), std::invalid_argument);
  }
  SECTION("random equivalence instances against brute force") {
    std::mt19937 rng(227);
    for (int trial = 0; trial < 100; ++trial) {
      Instance inst = testutil::random_equivalence_instance(rng);
      auto classes = incompatibility_classes(inst);
      REQUIRE(classes.has_value());
      auto sol = solve_equivalence(inst);
      bool expected = !brute_force_solutions(inst).solutions.empty();
      CHECK(sol.has_value() == expected);
      if (sol) CHECK(check_solution(inst, *sol));
    }
  }
}

TEST_CASE("build_twosat produces a skew-symmetric implication graph", "[special]") {
  std::mt19937 rng(229);
  for (int trial = 0; trial < 20; ++trial) {
    Instance inst = testutil::random_instance(rng, 6, 2);
    TwoSatProblem p = build_twosat(inst);
    for (auto [u, v] : p.implications) {
      auto mirrored = std::pair{twosat_negate(v), twosat_negate(u)};
      CHECK(std::find(p.implications.begin(), p.implications.end(), mirrored) != p.implications.end());
    }
  }
}

TEST_CASE("solve_2sat", "[special]") {
  SECTION("unique solution") {
    Instance inst = make_instance({{"a1", "a2"}, {"b1", "b2"}},
                                  {{0, 0, 1, 0}, {0, 0, 1, 1}, {0, 1, 1, 0}});
    auto sol = solve_2sat(inst);
    REQUIRE(sol.has_value());
    CHECK(sol->choices == std::vector<int>{1, 1});
  }
  SECTION("empty relation picks first elements") {
    Instance inst = make_instance({{"a1", "a2"}, {"b1"}}, {});
    auto sol = solve_2sat(inst);
    REQUIRE(sol.has_value());
    CHECK(sol->choices == std::vector<int>{0, 0});
  }
  SECTION("both values of a slot excluded") {
    Instance inst = make_instance({{"a1", "a2"}, {"b1"}, {"c1"}}, {{0, 0, 1, 0}, {0, 1, 2, 0}});
    CHECK_FALSE(solve_2sat(inst).has_value());
  }
  SECTION("oversized domain is a usage error") {
    Instance inst = make_instance({{"a", "b", "c"}}, {});
    CHECK_THROWS_AS(solve_2sat(inst), std::invalid_argument);
  }
  SECTION("random small-domain instances against brute force") {
    std::mt19937 rng(233);
    for (int trial = 0; trial < 200; ++trial) {
      Instance inst = testutil::random_instance(rng, 6, 2, 0.35);
      auto sol = solve_2sat(inst);
      bool expected = !brute_force_solutions(inst).solutions.empty();
      CHECK(sol.has_value() == expected);
      if (sol) CHECK(check_solution(inst, *sol));
    }
  }
}

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "comprep/cnf.hpp"
#include "comprep/core.hpp"
#include "helpers.hpp"

using namespace comprep;
using testutil::example_e1;
using testutil::make_instance;

TEST_CASE("validate_instance accepts the smallest well-formed instance", "[core]") {
  Instance inst = make_instance({{"a"}}, {});
  CHECK(validate_instance(inst).ok());
}

TEST_CASE("validate_instance reports violations", "[core]") {
  SECTION("pair not ordered") {
    Instance inst = make_instance({{"a"}, {"b"}}, {});
    inst.incompat.push_back({{1, 0}, {0, 0}});
    auto report = validate_instance(inst);
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations[0].find("not ordered") != std::string::npos);
  }
  SECTION("index out of range") {
    Instance inst = make_instance({{"a"}, {"b"}}, {{0, 0, 1, 3}});
    auto report = validate_instance(inst);
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations[0].find("out of range") != std::string::npos);
  }
  SECTION("duplicate pair") {
    Instance inst = make_instance({{"a"}, {"b"}}, {});
    inst.add_incompat(0, 0, 1, 0);
    inst.add_incompat(0, 0, 1, 0);
    auto report = validate_instance(inst);
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations[0].find("duplicate") != std::string::npos);
  }
  SECTION("empty domains are legal") {
    Instance inst = make_instance({{}}, {});
    CHECK(validate_instance(inst).ok());
  }
}

TEST_CASE("is_compatible consults the stored relation", "[core]") {
  Instance inst = make_instance({{"a", "b"}, {"c", "d"}}, {{0, 0, 1, 0}});
  CHECK_FALSE(is_compatible(inst, 0, 0, 1, 0));
  CHECK(is_compatible(inst, 0, 0, 1, 1));
  CHECK(is_compatible(inst, 0, 1, 1, 0));

  Instance empty_rel = make_instance({{"a"}, {"b"}}, {});
  CHECK(is_compatible(empty_rel, 0, 0, 1, 0));

  CHECK_THROWS_AS(is_compatible(inst, 1, 0, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(is_compatible(inst, 0, 5, 1, 0), std::invalid_argument);
}

TEST_CASE("check_solution is the pairwise conjunction", "[core]") {
  Instance inst = make_instance({{"a", "b"}, {"c", "d"}}, {{0, 0, 1, 0}});
  CHECK(check_solution(inst, Assignment{{1, 0}}));
  CHECK_FALSE(check_solution(inst, Assignment{{0, 0}}));

  Instance single = make_instance({{"a", "b"}}, {});
  CHECK(check_solution(single, Assignment{{1}}));

  CHECK_THROWS_AS(check_solution(inst, Assignment{{0}}), std::invalid_argument);
  CHECK_THROWS_AS(check_solution(inst, Assignment{{0, 9}}), std::invalid_argument);
}

TEST_CASE("check_solution unfolds to is_compatible over all pairs", "[core]") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    Instance inst = testutil::random_instance(rng, 4, 3);
    long long total = 1;
    for (int j = 0; j < inst.slot_count(); ++j) total *= inst.domain_size(j);
    if (total == 0 || total > 256) continue;
    for (const Assignment& asg : brute_force_solutions(inst).solutions) {
      bool all = true;
      for (int j = 0; j < inst.slot_count() && all; ++j)
        for (int k = j + 1; k < inst.slot_count() && all; ++k)
          all = is_compatible(inst, j, asg.choices[j], k, asg.choices[k]);
      CHECK(all);
    }
  }
}

TEST_CASE("brute_force_solutions enumerates lexicographically", "[core]") {
  SECTION("two-slot example") {
    Instance inst = make_instance({{"a", "b"}, {"c", "d"}}, {{0, 0, 1, 0}, {0, 0, 1, 1}});
    auto result = brute_force_solutions(inst);
    REQUIRE(result.solutions.size() == 2);
    CHECK(result.solutions[0] == Assignment{{1, 0}});
    CHECK(result.solutions[1] == Assignment{{1, 1}});
    CHECK_FALSE(result.truncated);
  }
  SECTION("empty domain means unsolvable") {
    Instance inst = make_instance({{"a"}, {}}, {});
    CHECK(brute_force_solutions(inst).solutions.empty());
  }
  SECTION("example E1") {
    auto result = brute_force_solutions(example_e1());
    REQUIRE(result.solutions.size() == 2);
    CHECK(result.solutions[0] == Assignment{{1, 0, 1}});  // (b, c, f)
    CHECK(result.solutions[1] == Assignment{{1, 1, 0}});  // (b, d, e)
  }
  SECTION("cap truncates") {
    Instance inst = make_instance({{"a", "b"}, {"c", "d"}}, {});
    auto result = brute_force_solutions(inst, 3);
    CHECK(result.solutions.size() == 3);
    CHECK(result.truncated);
  }
}

TEST_CASE("brute_force_solutions output is sorted, unique, sound and complete", "[core]") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    Instance inst = testutil::random_instance(rng, 5, 4);
    long long total = 1;
    for (int j = 0; j < inst.slot_count(); ++j) total *= inst.domain_size(j);
    if (total > 4096) continue;
    auto result = brute_force_solutions(inst);
    CHECK(std::is_sorted(result.solutions.begin(), result.solutions.end()));
    CHECK(std::adjacent_find(result.solutions.begin(), result.solutions.end()) == result.solutions.end());
    for (const Assignment& asg : result.solutions) CHECK(check_solution(inst, asg));
    // complement check: walk the whole product and compare membership
    std::vector<int> cur(inst.slot_count(), 0);
    bool has_empty = false;
    for (int j = 0; j < inst.slot_count(); ++j) has_empty |= inst.domain_size(j) == 0;
    if (has_empty) {
      CHECK(result.solutions.empty());
      continue;
    }
    long long members = 0;
    while (true) {
      Assignment asg{cur};
      bool in_result = std::binary_search(result.solutions.begin(), result.solutions.end(), asg);
      CHECK(in_result == check_solution(inst, asg));
      members += in_result;
      int j = inst.slot_count() - 1;
      while (j >= 0 && cur[j] + 1 == inst.domain_size(j)) cur[j--] = 0;
      if (j < 0) break;
      ++cur[j];
    }
    CHECK(members == static_cast<long long>(result.solutions.size()));
  }
}

TEST_CASE("gen_clique matches clique existence", "[core]") {
  SECTION("triangle has all six orderings") {
    SimpleGraph k3(3);
    k3.add_edge(0, 1);
    k3.add_edge(0, 2);
    k3.add_edge(1, 2);
    auto result = brute_force_solutions(gen_clique(k3, 3));
    CHECK(result.solutions.size() == 6);
  }
  SECTION("path has no triangle") {
    SimpleGraph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    CHECK(brute_force_solutions(gen_clique(path, 3)).solutions.empty());
  }
  SECTION("n=1 is solvable iff a vertex exists") {
    SimpleGraph one(1);
    CHECK_FALSE(brute_force_solutions(gen_clique(one, 1)).solutions.empty());
    SimpleGraph zero(0);
    CHECK(brute_force_solutions(gen_clique(zero, 1)).solutions.empty());
  }
  SECTION("random graphs against a clique enumerator") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
      SimpleGraph g = testutil::random_graph(rng, 6);
      for (int n = 2; n <= 3; ++n) {
        bool solvable = !brute_force_solutions(gen_clique(g, n)).solutions.empty();
        CHECK(solvable == testutil::has_clique(g, n));
      }
    }
  }
}

TEST_CASE("gen_coloring counts proper colorings", "[core]") {
  SimpleGraph k3(3);
  k3.add_edge(0, 1);
  k3.add_edge(0, 2);
  k3.add_edge(1, 2);
  CHECK(brute_force_solutions(gen_coloring(k3, 3)).solutions.size() == 6);
  CHECK(brute_force_solutions(gen_coloring(k3, 2)).solutions.empty());

  SimpleGraph edgeless(4);
  CHECK(brute_force_solutions(gen_coloring(edgeless, 2)).solutions.size() == 16);

  std::mt19937 rng(31);
  for (int trial = 0; trial < 15; ++trial) {
    SimpleGraph g = testutil::random_graph(rng, 5);
    for (int c = 1; c <= 3; ++c)
      CHECK(static_cast<long long>(brute_force_solutions(gen_coloring(g, c)).solutions.size()) ==
            testutil::count_colorings(g, c));
  }
}

TEST_CASE("gen_increasing_subsequence matches the LIS oracle", "[core]") {
  SECTION("named examples") {
    CHECK_FALSE(brute_force_solutions(gen_increasing_subsequence({{1, 3, 2}}, 2)).solutions.empty());
    CHECK(brute_force_solutions(gen_increasing_subsequence({{2, 1}}, 2)).solutions.empty());
    CHECK_FALSE(brute_force_solutions(gen_increasing_subsequence({{2, 1}}, 1)).solutions.empty());
  }
  SECTION("all permutations up to m = 5") {
    for (int m = 1; m <= 5; ++m) {
      std::vector<int> values(m);
      for (int i = 0; i < m; ++i) values[i] = i + 1;
      do {
        int lis = testutil::lis_length(values);
        for (int n = 1; n <= m; ++n) {
          bool solvable =
              !brute_force_solutions(gen_increasing_subsequence({values}, n)).solutions.empty();
          CHECK(solvable == (lis >= n));
        }
      } while (std::next_permutation(values.begin(), values.end()));
    }
  }
  SECTION("solutions are genuine increasing subsequences") {
    Permutation pi{{3, 1, 4, 2, 5}};
    for (const Assignment& asg : brute_force_solutions(gen_increasing_subsequence(pi, 3)).solutions) {
      for (size_t j = 0; j + 1 < asg.choices.size(); ++j) {
        CHECK(asg.choices[j] < asg.choices[j + 1]);
        CHECK(pi.values[asg.choices[j]] < pi.values[asg.choices[j + 1]]);
      }
    }
  }
}

TEST_CASE("gen_from_cnf mirrors satisfiability", "[core]") {
  SECTION("(u or v) and (not u or not v)") {
    Cnf f;
    f.var_count = 2;
    f.clauses = {{1, 2}, {-1, -2}};
    auto result = brute_force_solutions(gen_from_cnf(f));
    REQUIRE(result.solutions.size() == 2);
    CHECK(result.solutions[0] == Assignment{{0, 1}});  // u, not v
    CHECK(result.solutions[1] == Assignment{{1, 0}});  // v, not u
  }
  SECTION("single clause") {
    Cnf f;
    f.var_count = 1;
    f.clauses = {{1}};
    CHECK(brute_force_solutions(gen_from_cnf(f)).solutions.size() == 1);
  }
  SECTION("complementary singletons") {
    Cnf f;
    f.var_count = 1;
    f.clauses = {{1}, {-1}};
    CHECK(brute_force_solutions(gen_from_cnf(f)).solutions.empty());
  }
  SECTION("empty clause is rejected") {
    Cnf f;
    f.var_count = 1;
    f.clauses = {{1}, {}};
    CHECK_THROWS_AS(gen_from_cnf(f), std::invalid_argument);
  }
  SECTION("random formulas against the truth table") {
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> vars(1, 5);
    std::uniform_int_distribution<int> clauses(1, 6);
    std::uniform_int_distribution<int> width(1, 3);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
      Cnf f;
      f.var_count = vars(rng);
      int cc = clauses(rng);
      std::uniform_int_distribution<int> pick(1, f.var_count);
      for (int c = 0; c < cc; ++c) {
        std::vector<int> clause;
        int w = width(rng);
        for (int i = 0; i < w; ++i) clause.push_back(pick(rng) * (coin(rng) < 0.5 ? 1 : -1));
        f.clauses.push_back(clause);
      }
      bool solvable = !brute_force_solutions(gen_from_cnf(f)).solutions.empty();
      CHECK(solvable == brute_force_sat(f).has_value());
    }
  }
}

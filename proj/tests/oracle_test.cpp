#include "doctest.h"

#include "cdel/generators.hpp"
#include "cdel/oracle.hpp"
#include "test_util.hpp"

using namespace cdel;
using cdel::test::make_graph;

TEST_CASE("small fixed graphs") {
  CHECK(exact_min_deletion(make_graph(5, {{0, 1}, {1, 2}, {0, 2}, {3, 4}})).optimum == 0);
  CHECK(exact_min_deletion(path_graph(3)).optimum == 1);
  CHECK(exact_min_deletion(path_graph(4)).optimum == 1);
  CHECK(exact_min_deletion(cycle_graph(5)).optimum == 3);
  CHECK(cdel::test::brute_force_optimum(path_graph(4)) == 1);
  CHECK(cdel::test::brute_force_optimum(cycle_graph(5)) == 3);
}

TEST_CASE("decision") {
  CHECK_FALSE(exact_decision(cycle_graph(4), 1));
  CHECK(exact_decision(cycle_graph(4), 2));
  CHECK(exact_decision(Graph(4), 0));
  const Graph diamond = make_graph(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(exact_decision(diamond, 2));
  CHECK_FALSE(exact_decision(diamond, 1));
}

TEST_CASE("size cap") {
  CHECK_THROWS_AS(exact_min_deletion(Graph(kOracleMaxVertices + 1)), GraphTooLarge);
  CHECK_NOTHROW(exact_min_deletion(path_graph(kOracleMaxVertices)));
}

TEST_CASE("agrees with edge-subset enumeration on every graph with n <= 6") {
  for (int n = 1; n <= 6; ++n)
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << cdel::test::pair_count(n)); ++code) {
      const Graph g = cdel::test::graph_from_code(n, code);
      const OracleResult r = exact_min_deletion(g);
      REQUIRE(r.optimum == cdel::test::brute_force_optimum(g));
      REQUIRE(static_cast<long long>(r.witness.size()) == r.optimum);
      REQUIRE(validate_solution(g, r.witness, r.optimum));
    }
}

TEST_CASE("component additivity") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Graph g = gnp_graph(9 + static_cast<int>(seed % 6), 0.25, seed);
    long long total = 0;
    for (const auto& block : connected_components(g)) total += exact_min_deletion(induced_subgraph(g, block)).optimum;
    const OracleResult r = exact_min_deletion(g);
    CHECK(r.optimum == total);
    CHECK(validate_solution(g, r.witness, r.optimum));
  }
}

#include <doctest.h>

#include <random>
#include <set>

#include "minstate/clique_cover.hpp"
#include "minstate/error.hpp"
#include "minstate/exact_opt.hpp"
#include "support.hpp"

using namespace minstate;
using minstate::testing::H;

namespace {

Graph complete(std::size_t n) {
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

std::size_t cover_number(const Graph& g) {
  return min_clique_cover(bron_kerbosch(g), g.size(), std::max<std::size_t>(g.size(), 1)).size();
}

}  // namespace

TEST_CASE("fixture maximal cliques") {
  WindowCounts wc(gen_fixture(), 2);
  auto g = compatibility_graph(wc, TestConfig{});
  CHECK(bron_kerbosch(g.graph) == std::vector<Clique>{{0, 3}, {1}, {2, 3}});
}

TEST_CASE("small graphs") {
  CHECK(bron_kerbosch(complete(4)) == std::vector<Clique>{{0, 1, 2, 3}});
  CHECK(bron_kerbosch(Graph(3)) == std::vector<Clique>{{0}, {1}, {2}});
  CHECK(bron_kerbosch(Graph(0)).empty());
  Graph path(4);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  path.add_edge(2, 3);
  CHECK(bron_kerbosch(path) == std::vector<Clique>{{0, 1}, {1, 2}, {2, 3}});
  CHECK(cover_number(path) == 2);
}

TEST_CASE("maximal cliques agree with subset enumeration") {
  std::mt19937_64 gen(211);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + gen() % 12;
    const double p = std::uniform_real_distribution<double>(0.05, 0.95)(gen);
    auto g = testing::random_graph(n, p, gen);
    auto cliques = bron_kerbosch(g);
    std::set<Clique> found(cliques.begin(), cliques.end());
    REQUIRE(found.size() == cliques.size());
    REQUIRE(found == testing::maximal_cliques_by_subsets(g));
  }
}

TEST_CASE("cover of disjoint cliques") {
  Graph g(9);
  for (std::size_t base : {0, 3, 6})
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) g.add_edge(base + i, base + j);
  g.add_edge(2, 3);
  auto cliques = bron_kerbosch(g);
  auto cover = min_clique_cover(cliques, 9, 9);
  CHECK(cover.size() == 3);
  for (std::size_t v = 0; v < 9; ++v) {
    const auto& c = cliques[cover.mapping[v]];
    CHECK(std::find(c.begin(), c.end(), v) != c.end());
  }
  CHECK_THROWS_AS(min_clique_cover(cliques, 9, 2), CoverInfeasible);
}

TEST_CASE("cover number agrees with partition enumeration") {
  std::mt19937_64 gen(223);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + gen() % 9;
    const double p = std::uniform_real_distribution<double>(0.1, 0.9)(gen);
    auto g = testing::random_graph(n, p, gen);
    const auto expected = testing::clique_cover_number_by_partitions(g);
    REQUIRE(cover_number(g) == expected);
    CHECK(solve_msndpfsa(testing::anonymous(g)).optimum == expected);
  }
}

TEST_CASE("exact covers are exactly the minimum clique partitions") {
  std::mt19937_64 gen(227);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + gen() % 8;
    auto g = testing::random_graph(n, 0.6, gen);
    const auto opt = cover_number(g);
    auto covers = enumerate_exact_covers(g, opt);
    std::set<std::vector<std::vector<std::size_t>>> got;
    for (const auto& c : covers) got.insert(testing::sorted_blocks(c.blocks));
    CHECK(got.size() == covers.size());
    CHECK(got == testing::clique_partitions_of_size(g, opt));
  }
}

TEST_CASE("too many exact covers overflow") {
  CHECK(enumerate_exact_covers(complete(5), 2).size() == 15);
  CHECK_THROWS_AS(enumerate_exact_covers(complete(8), 2, 10), CoverOverflow);
}

TEST_CASE("fixture covers and their reconstructions") {
  WindowCounts wc(gen_fixture(), 2);
  auto g = compatibility_graph(wc, TestConfig{});
  auto succ = successor_table(g.vertices, wc);
  auto covers = enumerate_exact_covers(g.graph, 3);
  REQUIRE(covers.size() == 2);
  std::vector<std::size_t> states;
  for (const auto& c : covers) states.push_back(reconstruct_deterministic(c, g.vertices, succ).num_states);
  std::sort(states.begin(), states.end());
  CHECK(states == std::vector<std::size_t>{3, 4});
}

TEST_CASE("pipeline on the fixture") {
  WindowCounts wc(gen_fixture(), 2);
  auto r = clique_pipeline(wc, gen_fixture().alphabet, 2, TestConfig{});
  CHECK(r.cssr_states == 4);
  CHECK(r.cover_number == 3);
  CHECK(r.covers_examined == 2);
  CHECK(r.machine.num_states() == 3);
  CHECK(r.machine.states()[0] == std::vector<History>{H("00"), H("10")});
  CHECK(check_determinism(r.machine).empty());
}

TEST_CASE("pipeline on a constant sequence") {
  auto m = clique_pipeline(testing::digits(std::string(300, '1')), 2, TestConfig{});
  CHECK(m.num_states() == 1);
  CHECK(m.symbol_prob(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("pipeline is deterministic and never beats the cover number") {
  std::size_t agree = 0, differ = 0;
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    auto inst = testing::random_instance(seed * 31 + 5, 10);
    auto r = clique_pipeline(*inst.wc, inst.seq.alphabet, inst.L, inst.test);
    CHECK(check_determinism(r.machine).empty());
    CHECK(r.machine.num_states() >= r.cover_number);
    CHECK(r.cover_number == solve_msndpfsa(inst.graph).optimum);
    const auto msd = solve_msdpfsa(inst.graph, inst.succ).optimum;
    CHECK(r.machine.num_states() >= msd);
    (r.machine.num_states() == msd ? agree : differ) += 1;
  }
  MESSAGE("pipeline equal to the exact optimum: " << agree << ", above it: " << differ);
}

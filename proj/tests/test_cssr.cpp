#include <doctest.h>

#include <algorithm>
#include <set>

#include "minstate/cssr.hpp"
#include "minstate/error.hpp"
#include "minstate/exact_opt.hpp"
#include "support.hpp"

using namespace minstate;
using minstate::testing::H;

namespace {

std::set<std::set<History>> blocks_of_length(const StatePartition& p, std::size_t len) {
  std::set<std::set<History>> out;
  for (const auto& block : p.block_histories()) {
    std::set<History> b;
    for (const auto& h : block)
      if (h.size() == len) b.insert(h);
    if (!b.empty()) out.insert(b);
  }
  return out;
}

StatePartition cssr_partition(const WindowCounts& wc, const CssrConfig& cfg) {
  return cssr_reconstruct(cssr_split(wc, cfg), wc);
}

std::string repeat(const std::string& unit, std::size_t times) {
  std::string s;
  for (std::size_t i = 0; i < times; ++i) s += unit;
  return s;
}

}  // namespace

TEST_CASE("splitting the fixture") {
  WindowCounts wc(gen_fixture(), 2);
  auto split = cssr_split(wc, CssrConfig{});
  CHECK(blocks_of_length(split, 2) ==
        std::set<std::set<History>>{{H("00")}, {H("01")}, {H("11"), H("10")}});
  CHECK(split.index_of(History{}).has_value());
  CHECK(split.index_of(H("0")).has_value());
  CHECK(split.index_of(H("1")).has_value());
}

TEST_CASE("cssr on the fixture needs four states") {
  auto m = cssr(gen_fixture(), CssrConfig{});
  CHECK(m.num_states() == 4);
  CHECK(check_determinism(m).empty());
}

TEST_CASE("the three-state partition survives reconstruction") {
  WindowCounts wc(gen_fixture(), 2);
  auto q = partition_from_blocks({H("00"), H("01"), H("11"), H("10")}, {{0, 3}, {1}, {2}});
  CHECK(cssr_reconstruct(q, wc) == q);
}

TEST_CASE("periodic and constant sequences") {
  CHECK(cssr(testing::digits(repeat("01", 500)), CssrConfig{}).num_states() == 2);
  CHECK(cssr(testing::digits(std::string(1000, '0')), CssrConfig{}).num_states() == 1);
  CHECK(cssr(testing::digits(repeat("001", 300)), CssrConfig{}).num_states() == 3);
}

TEST_CASE("i.i.d. uniform data collapses to one state") {
  auto seq = testing::iid_sequence(2, 5000, 99);
  CHECK(cssr(seq, CssrConfig{}).num_states() == 1);
}

TEST_CASE("alpha close to one keeps distinguishable histories apart") {
  auto m = cssr(gen_fixture(), CssrConfig{2, {TestKind::chi2, 0.9999}});
  CHECK(m.num_states() == 4);
  for (const auto& s : m.states()) CHECK(s.size() == 1);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS((CssrConfig{0, {}}.validate()), InvalidConfig);
  CHECK_THROWS_AS(cssr(testing::digits("0101"), CssrConfig{0, {}}), InvalidConfig);
}

TEST_CASE("cssr output is deterministic, covering and repeatable") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t k = 2 + seed % 3;
    const std::size_t L = 1 + seed % 3;
    auto seq = sample(random_source(k, seed), 200 + seed * 37, seed * 3 + 1);
    const TestKind kinds[] = {TestKind::chi2, TestKind::pearson, TestKind::ks};
    const CssrConfig cfg{L, {kinds[seed % 3], 0.05}};
    WindowCounts wc(seq, L);
    auto m = cssr(wc, seq.alphabet, cfg);
    CHECK(check_determinism(m).empty());
    std::size_t covered = 0;
    for (const auto& h : wc.histories(L)) {
      std::size_t holders = 0;
      for (const auto& s : m.states()) holders += static_cast<std::size_t>(std::count(s.begin(), s.end(), h));
      CHECK(holders == 1);
      covered += holders;
    }
    std::size_t listed = 0;
    for (const auto& s : m.states()) listed += s.size();
    CHECK(listed == covered);
    CHECK(export_json(cssr(wc, seq.alphabet, cfg)) == export_json(m));
  }
}

TEST_CASE("a feasible cssr partition bounds the exact optimum") {
  std::size_t feasible = 0, infeasible = 0;
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    auto inst = testing::random_instance(seed * 7919 + 3);
    auto part = cssr_partition(*inst.wc, CssrConfig{inst.L, inst.test});
    std::vector<std::size_t> assign(inst.graph.size());
    for (std::size_t i = 0; i < inst.graph.size(); ++i) {
      auto idx = part.index_of(inst.graph.vertices[i]);
      REQUIRE(idx.has_value());
      assign[i] = part.assign[*idx];
    }
    StatePartition on_vertices(inst.graph.vertices, assign);
    bool cliques = true;
    for (const auto& b : on_vertices.blocks()) cliques = cliques && testing::is_clique(inst.graph.graph, b);
    const bool det = is_deterministic(on_vertices, inst.succ);
    const auto opt = solve_msdpfsa(inst.graph, inst.succ).optimum;
    if (cliques && det) {
      ++feasible;
      CHECK(part.num_states >= opt);
    } else {
      ++infeasible;
    }
    if (opt > part.num_states) CHECK_FALSE(cliques);
  }
  CHECK(feasible > 0);
  MESSAGE("cssr partitions feasible for the exact problem: " << feasible << ", infeasible: " << infeasible);
}

#pragma once

// Generators and brute-force oracles shared by the test suites. Nothing here
// calls into the code paths it is used to check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "minstate/bench.hpp"
#include "minstate/graph.hpp"
#include "minstate/machine.hpp"
#include "minstate/sequence.hpp"
#include "minstate/stat_tests.hpp"

namespace minstate::testing {

inline History H(const std::string& s) {
  History h;
  for (char c : s) h.push_back(static_cast<Symbol>(c - '0'));
  return h;
}

inline SymbolSequence digits(const std::string& s, std::size_t k = 2) {
  SymbolSequence seq;
  std::vector<std::string> symbols;
  for (std::size_t a = 0; a < k; ++a) symbols.push_back(std::to_string(a));
  seq.alphabet = Alphabet(symbols);
  for (char c : s) seq.tokens.push_back(static_cast<Symbol>(c - '0'));
  return seq;
}

inline SymbolSequence iid_sequence(std::size_t k, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<Symbol> pick(0, static_cast<Symbol>(k - 1));
  SymbolSequence seq;
  std::vector<std::string> symbols;
  for (std::size_t a = 0; a < k; ++a) symbols.push_back(std::to_string(a));
  seq.alphabet = Alphabet(symbols);
  for (std::size_t i = 0; i < n; ++i) seq.tokens.push_back(pick(gen));
  return seq;
}

/// O(N * |x|) rescan of y.
inline Count naive_count(const std::vector<Symbol>& y, const History& x) {
  if (x.empty()) return y.size();
  Count c = 0;
  for (std::size_t i = 0; i + x.size() <= y.size(); ++i)
    if (std::equal(x.begin(), x.end(), y.begin() + static_cast<std::ptrdiff_t>(i))) ++c;
  return c;
}

inline Graph random_graph(std::size_t n, double p, std::mt19937_64& gen) {
  Graph g(n);
  std::bernoulli_distribution edge(p);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (edge(gen)) g.add_edge(u, v);
  return g;
}

inline bool is_clique(const Graph& g, const std::vector<std::size_t>& vs) {
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (!g.adjacent(vs[i], vs[j])) return false;
  return true;
}

/// Every subset, keep cliques, keep those with no clique strict superset.
inline std::set<std::vector<std::size_t>> maximal_cliques_by_subsets(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<std::uint32_t> cliques;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> vs;
    for (std::size_t v = 0; v < n; ++v)
      if (mask >> v & 1u) vs.push_back(v);
    if (is_clique(g, vs)) cliques.push_back(mask);
  }
  std::set<std::vector<std::size_t>> out;
  for (auto m : cliques) {
    const bool maximal = std::none_of(cliques.begin(), cliques.end(), [&](std::uint32_t o) {
      return o != m && (o & m) == m;
    });
    if (!maximal) continue;
    std::vector<std::size_t> vs;
    for (std::size_t v = 0; v < n; ++v)
      if (m >> v & 1u) vs.push_back(v);
    out.insert(vs);
  }
  return out;
}

/// Visits every set partition of {0..n-1} as a block-index vector
/// (restricted growth string), recursively.
inline void for_each_partition(std::size_t n,
                               const std::function<void(const std::vector<std::size_t>&, std::size_t)>& visit) {
  std::vector<std::size_t> rgs(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t blocks) {
    if (i == n) {
      visit(rgs, blocks);
      return;
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      rgs[i] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  if (n == 0) {
    visit(rgs, 0);
    return;
  }
  rec(0, 0);
}

inline bool partition_is_clique_partition(const Graph& g, const std::vector<std::size_t>& rgs) {
  for (std::size_t i = 0; i < rgs.size(); ++i)
    for (std::size_t j = i + 1; j < rgs.size(); ++j)
      if (rgs[i] == rgs[j] && !g.adjacent(i, j)) return false;
  return true;
}

/// Clique cover number by exhaustive partition enumeration.
inline std::size_t clique_cover_number_by_partitions(const Graph& g) {
  std::size_t best = g.size();
  for_each_partition(g.size(), [&](const std::vector<std::size_t>& rgs, std::size_t blocks) {
    if (blocks < best && partition_is_clique_partition(g, rgs)) best = blocks;
  });
  return best;
}

/// All clique partitions with exactly k blocks, as sorted block lists.
inline std::set<std::vector<std::vector<std::size_t>>> clique_partitions_of_size(const Graph& g,
                                                                                  std::size_t k) {
  std::set<std::vector<std::vector<std::size_t>>> out;
  for_each_partition(g.size(), [&](const std::vector<std::size_t>& rgs, std::size_t blocks) {
    if (blocks != k || !partition_is_clique_partition(g, rgs)) return;
    std::vector<std::vector<std::size_t>> bs(blocks);
    for (std::size_t i = 0; i < rgs.size(); ++i) bs[rgs[i]].push_back(i);
    std::sort(bs.begin(), bs.end());
    out.insert(bs);
  });
  return out;
}

inline std::vector<std::vector<std::size_t>> sorted_blocks(std::vector<std::vector<std::size_t>> bs) {
  for (auto& b : bs) std::sort(b.begin(), b.end());
  std::sort(bs.begin(), bs.end());
  return bs;
}

/// Monte-Carlo permutation p-value: shuffle the pooled category labels
/// between the two samples and count statistics at least as extreme. With
/// `mid_p`, ties with the observed statistic count half.
template <typename Statistic>
double permutation_pvalue(const std::vector<Count>& a, const std::vector<Count>& b, Statistic stat,
                          std::size_t shuffles, std::uint64_t seed, bool mid_p = false) {
  std::vector<std::size_t> pooled;
  for (std::size_t j = 0; j < a.size(); ++j) pooled.insert(pooled.end(), a[j] + b[j], j);
  const std::size_t na = std::accumulate(a.begin(), a.end(), Count{0});
  const double observed = stat(a, b);
  std::mt19937_64 gen(seed);
  double extreme = 0;
  for (std::size_t s = 0; s < shuffles; ++s) {
    std::shuffle(pooled.begin(), pooled.end(), gen);
    std::vector<Count> pa(a.size(), 0), pb(a.size(), 0);
    for (std::size_t i = 0; i < pooled.size(); ++i) (i < na ? pa : pb)[pooled[i]]++;
    const double v = stat(pa, pb);
    if (v > observed + 1e-12) extreme += 1.0;
    else if (v >= observed - 1e-12) extreme += mid_p ? 0.5 : 1.0;
  }
  return extreme / static_cast<double>(shuffles);
}

/// Pearson statistic computed from its textbook definition.
inline double pearson_statistic(const std::vector<Count>& a, const std::vector<Count>& b) {
  const double na = std::accumulate(a.begin(), a.end(), 0.0);
  const double nb = std::accumulate(b.begin(), b.end(), 0.0);
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double col = static_cast<double>(a[j] + b[j]);
    if (col == 0) continue;
    const double ea = na * col / (na + nb), eb = nb * col / (na + nb);
    s += (a[j] - ea) * (a[j] - ea) / ea + (b[j] - eb) * (b[j] - eb) / eb;
  }
  return s;
}

inline CompatibilityGraph anonymous(const Graph& g) {
  CompatibilityGraph cg;
  cg.graph = g;
  for (std::size_t i = 0; i < g.size(); ++i) cg.vertices.push_back(History{static_cast<Symbol>(i)});
  return cg;
}

/// One inference instance derived from a sampled sequence.
struct Instance {
  SymbolSequence seq;
  std::size_t L;
  TestConfig test;
  std::optional<WindowCounts> wc;
  CompatibilityGraph graph;
  SuccessorTable succ;
};

/// Seeded instance with between 2 and `max_vertices` distinct length-L
/// histories. Short sequences from random sources give noisy, irregular
/// compatibility graphs.
inline Instance random_instance(std::uint64_t seed, std::size_t max_vertices = 8) {
  std::mt19937_64 gen(seed);
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::size_t k = std::uniform_int_distribution<std::size_t>(2, 3)(gen);
    const std::size_t L = k == 2 ? std::uniform_int_distribution<std::size_t>(2, 3)(gen) : 2;
    const std::size_t n = std::uniform_int_distribution<std::size_t>(30, 400)(gen);
    const double alphas[] = {0.01, 0.05, 0.2, 0.5};
    const TestKind kinds[] = {TestKind::chi2, TestKind::chi2, TestKind::pearson, TestKind::ks};
    Instance inst;
    inst.L = L;
    inst.test = {kinds[gen() % 4], alphas[gen() % 4]};
    inst.seq = sample(random_source(k, gen()), n, gen());
    inst.wc.emplace(inst.seq, L);
    inst.graph = compatibility_graph(*inst.wc, inst.test);
    if (inst.graph.size() < 2 || inst.graph.size() > max_vertices) continue;
    inst.succ = successor_table(inst.graph.vertices, *inst.wc);
    return inst;
  }
}

}  // namespace minstate::testing

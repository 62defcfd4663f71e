#include "minstate/clique_cover.hpp"

#include <algorithm>

#include "minstate/cssr.hpp"
#include "minstate/error.hpp"

namespace minstate {

namespace {

using VertexList = std::vector<std::size_t>;

void expand(const Graph& g, VertexList& r, VertexList p, VertexList x, std::vector<Clique>& out) {
  if (p.empty() && x.empty()) {
    Clique c = r;
    std::sort(c.begin(), c.end());
    out.push_back(std::move(c));
    return;
  }
  auto neighbours_in_p = [&](std::size_t u) {
    return static_cast<std::size_t>(std::count_if(
        p.begin(), p.end(), [&](std::size_t w) { return w != u && g.adjacent(u, w); }));
  };
  std::size_t pivot = p.empty() ? x.front() : p.front();
  std::size_t pivot_deg = neighbours_in_p(pivot);
  for (const VertexList* side : {&p, &x}) {
    for (std::size_t u : *side) {
      const std::size_t d = neighbours_in_p(u);
      if (d > pivot_deg) {
        pivot = u;
        pivot_deg = d;
      }
    }
  }
  VertexList branch;
  for (std::size_t v : p)
    if (v == pivot || !g.adjacent(pivot, v)) branch.push_back(v);

  for (std::size_t v : branch) {
    VertexList p2, x2;
    for (std::size_t w : p)
      if (w != v && g.adjacent(v, w)) p2.push_back(w);
    for (std::size_t w : x)
      if (w != v && g.adjacent(v, w)) x2.push_back(w);
    r.push_back(v);
    expand(g, r, std::move(p2), std::move(x2), out);
    r.pop_back();
    p.erase(std::find(p.begin(), p.end(), v));
    x.push_back(v);
  }
}

std::size_t greedy_independent(const Graph& g, const VertexList& vs) {
  VertexList chosen;
  for (std::size_t v : vs) {
    if (std::none_of(chosen.begin(), chosen.end(), [&](std::size_t u) { return g.adjacent(u, v); }))
      chosen.push_back(v);
  }
  return chosen.size();
}

}  // namespace

std::vector<Clique> bron_kerbosch(const Graph& g) {
  std::vector<Clique> out;
  if (g.size() == 0) return out;
  VertexList r, p(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) p[v] = v;
  expand(g, r, std::move(p), {}, out);
  std::sort(out.begin(), out.end());
  return out;
}

CliqueCover min_clique_cover(const std::vector<Clique>& cliques, std::size_t n,
                             std::size_t k_upper, const Deadline& deadline) {
  if (k_upper < 1) throw InvalidConfig("cover bound must be at least 1");
  std::vector<std::vector<std::size_t>> containing(n);
  for (std::size_t c = 0; c < cliques.size(); ++c)
    for (std::size_t v : cliques[c]) {
      if (v >= n) throw InvalidConfig("clique vertex out of range");
      containing[v].push_back(c);
    }
  for (std::size_t v = 0; v < n; ++v)
    if (containing[v].empty()) throw CoverInfeasible("vertex belongs to no clique");

  // Pairwise vertices sharing no clique need different cliques.
  Graph shares(n);
  for (const auto& c : cliques)
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j) shares.add_edge(c[i], c[j]);

  std::vector<int> covered(n, 0);
  std::vector<std::size_t> chosen, best;
  std::size_t best_size = k_upper + 1;
  std::uint64_t nodes = 0;

  auto search = [&](auto&& self) -> void {
    if ((++nodes & 0xFFF) == 0) deadline.check();
    VertexList uncovered;
    for (std::size_t v = 0; v < n; ++v)
      if (!covered[v]) uncovered.push_back(v);
    if (uncovered.empty()) {
      if (chosen.size() < best_size) {
        best_size = chosen.size();
        best = chosen;
      }
      return;
    }
    if (chosen.size() + greedy_independent(shares, uncovered) >= best_size) return;
    for (std::size_t c : containing[uncovered.front()]) {
      chosen.push_back(c);
      for (std::size_t v : cliques[c]) ++covered[v];
      self(self);
      for (std::size_t v : cliques[c]) --covered[v];
      chosen.pop_back();
    }
  };
  search(search);

  if (best.empty() && n > 0) {
    throw CoverInfeasible("no clique cover with at most " + std::to_string(k_upper) + " cliques");
  }
  CliqueCover cover;
  cover.selected = best;
  std::sort(cover.selected.begin(), cover.selected.end());
  cover.mapping.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    cover.mapping[v] = *std::find_if(cover.selected.begin(), cover.selected.end(), [&](std::size_t c) {
      return std::binary_search(cliques[c].begin(), cliques[c].end(), v);
    });
  }
  return cover;
}

std::vector<ExactCover> enumerate_exact_covers(const Graph& g, std::size_t optimum, std::size_t cap,
                                               const Deadline& deadline) {
  const std::size_t n = g.size();
  std::vector<ExactCover> out;
  std::vector<Clique> blocks;
  std::uint64_t nodes = 0;

  auto search = [&](auto&& self, std::size_t v) -> void {
    if ((++nodes & 0xFFF) == 0) deadline.check();
    if (v == n) {
      if (blocks.size() == optimum) {
        if (out.size() == cap) {
          throw CoverOverflow("more than " + std::to_string(cap) + " minimum clique covers");
        }
        out.push_back({blocks});
      }
      return;
    }
    VertexList homeless;
    for (std::size_t u = v; u < n; ++u) {
      const bool fits = std::any_of(blocks.begin(), blocks.end(), [&](const Clique& b) {
        return std::all_of(b.begin(), b.end(), [&](std::size_t w) { return g.adjacent(u, w); });
      });
      if (!fits) homeless.push_back(u);
    }
    if (blocks.size() + greedy_independent(g, homeless) > optimum) return;

    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (!std::all_of(blocks[b].begin(), blocks[b].end(),
                       [&](std::size_t w) { return g.adjacent(v, w); }))
        continue;
      blocks[b].push_back(v);
      self(self, v + 1);
      blocks[b].pop_back();
    }
    if (blocks.size() < optimum) {
      blocks.push_back({v});
      self(self, v + 1);
      blocks.pop_back();
    }
  };
  if (n > 0) search(search, 0);
  return out;
}

StatePartition reconstruct_deterministic(const ExactCover& cover,
                                         const std::vector<History>& vertices,
                                         const SuccessorTable& succ) {
  auto part = partition_from_blocks(vertices, cover.blocks);
  return refine_deterministic(part, succ);
}

PipelineResult clique_pipeline(const WindowCounts& wc, const Alphabet& alphabet, std::size_t L,
                               const TestConfig& test, const Deadline& deadline) {
  PipelineResult result;
  const CssrConfig cfg{L, test};
  result.cssr_states = cssr(wc, alphabet, cfg).num_states();

  const auto graph = compatibility_graph(wc, test);
  const auto succ = successor_table(graph.vertices, wc);
  const auto cliques = bron_kerbosch(graph.graph);
  deadline.check();

  CliqueCover cover;
  try {
    cover = min_clique_cover(cliques, graph.size(), result.cssr_states, deadline);
  } catch (const CoverInfeasible&) {
    // CSSR states need not be cliques, so its count can undercut the cover
    // number; fall back to the trivial bound.
    cover = min_clique_cover(cliques, graph.size(), std::max<std::size_t>(graph.size(), 1), deadline);
  }
  result.cover_number = cover.size();

  const auto covers = enumerate_exact_covers(graph.graph, cover.size(), kDefaultCoverCap, deadline);
  result.covers_examined = covers.size();
  std::optional<StatePartition> best;
  for (const auto& c : covers) {
    auto part = reconstruct_deterministic(c, graph.vertices, succ);
    if (!best || part.num_states < best->num_states ||
        (part.num_states == best->num_states && part.assign < best->assign)) {
      best = std::move(part);
    }
  }
  if (!best) best = singleton_partition(graph.vertices);
  result.partition = *best;
  result.machine = build_machine(*best, wc, alphabet);
  return result;
}

Pfsa clique_pipeline(const SymbolSequence& seq, std::size_t L, const TestConfig& test) {
  const WindowCounts wc(seq, L);
  return clique_pipeline(wc, seq.alphabet, L, test).machine;
}

}  // namespace minstate

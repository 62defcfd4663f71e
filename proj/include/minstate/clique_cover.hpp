#pragma once

// Minimum clique covers of the compatibility graph and the reconstruction
// that turns a cover into a deterministic machine.

#include <cstddef>
#include <vector>

#include "minstate/deadline.hpp"
#include "minstate/graph.hpp"
#include "minstate/machine.hpp"
#include "minstate/stat_tests.hpp"

namespace minstate {

using Clique = std::vector<std::size_t>;  // ascending vertex indices

/// All maximal cliques (Bron-Kerbosch, pivoting on the vertex of maximum
/// degree in P u X). Cliques are sorted ascending and listed in
/// lexicographic order.
std::vector<Clique> bron_kerbosch(const Graph& g);

struct CliqueCover {
  std::vector<std::size_t> selected;  ///< indices into the clique list, ascending
  std::vector<std::size_t> mapping;   ///< vertex -> index into the clique list
  std::size_t size() const { return selected.size(); }
};

/// Fewest cliques from `cliques` covering vertices 0..n-1, with at most
/// `k_upper` cliques. Each vertex is mapped to the first selected clique
/// containing it. Throws CoverInfeasible when no cover fits the bound.
CliqueCover min_clique_cover(const std::vector<Clique>& cliques, std::size_t n,
                             std::size_t k_upper, const Deadline& deadline = {});

/// A partition of the vertices into cliques.
struct ExactCover {
  std::vector<Clique> blocks;
};

inline constexpr std::size_t kDefaultCoverCap = 10000;

/// Every partition of the vertices into exactly `optimum` cliques, in
/// canonical (first-fit) order. Throws CoverOverflow beyond `cap` covers.
std::vector<ExactCover> enumerate_exact_covers(const Graph& g, std::size_t optimum,
                                               std::size_t cap = kDefaultCoverCap,
                                               const Deadline& deadline = {});

/// Splits each block by successor-block signature until deterministic.
StatePartition reconstruct_deterministic(const ExactCover& cover,
                                         const std::vector<History>& vertices,
                                         const SuccessorTable& succ);

struct PipelineResult {
  Pfsa machine;
  StatePartition partition;
  std::size_t cssr_states = 0;     ///< upper bound used for the cover search
  std::size_t cover_number = 0;    ///< minimum clique cover size
  std::size_t covers_examined = 0;
};

PipelineResult clique_pipeline(const WindowCounts& wc, const Alphabet& alphabet, std::size_t L,
                               const TestConfig& test, const Deadline& deadline = {});
Pfsa clique_pipeline(const SymbolSequence& seq, std::size_t L, const TestConfig& test);

}  // namespace minstate

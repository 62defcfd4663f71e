#pragma once

// Causal-state splitting and reconstruction.

#include <cstddef>

#include "minstate/machine.hpp"
#include "minstate/sequence.hpp"
#include "minstate/stat_tests.hpp"

namespace minstate {

struct CssrConfig {
  std::size_t L = 2;
  TestConfig test;

  void validate() const;
};

/// Splitting phase. Starts from the single state {lambda}; at level i every
/// observed extension a+x of a length i-1 history is compared with the pooled
/// distribution of each current state and joins the one with the largest
/// p-value (lowest index on ties) if that p-value exceeds alpha, otherwise
/// opens a new state. Pooled distributions update on every insertion.
/// Candidates within a level are taken in order of first appearance in the
/// data. The result covers histories of every length 0..L.
StatePartition cssr_split(const WindowCounts& wc, const CssrConfig& cfg);

/// Reconstruction phase over the longest histories of `part` only.
StatePartition cssr_reconstruct(const StatePartition& part, const WindowCounts& wc);

Pfsa cssr(const WindowCounts& wc, const Alphabet& alphabet, const CssrConfig& cfg);
Pfsa cssr(const SymbolSequence& seq, const CssrConfig& cfg);

}  // namespace minstate

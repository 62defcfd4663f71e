#pragma once

// The probabilistic automaton G = <Q, A, delta, p> and the partition of
// histories into states that it is built from.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minstate/sequence.hpp"

namespace minstate {

/// Assignment of histories to states. `assign[i]` is the state of
/// `histories[i]`; states are numbered 0..num_states-1 in order of first use.
struct StatePartition {
  std::vector<History> histories;
  std::vector<std::size_t> assign;
  std::size_t num_states = 0;

  StatePartition() = default;
  StatePartition(std::vector<History> hs, std::vector<std::size_t> state_of);

  std::size_t size() const { return histories.size(); }
  /// Member indices of every state, ascending.
  std::vector<std::vector<std::size_t>> blocks() const;
  /// Member histories of every state.
  std::vector<std::vector<History>> block_histories() const;
  std::optional<std::size_t> index_of(std::span<const Symbol> h) const;

  /// Renumbers states in first-use order.
  void canonicalize();

  friend bool operator==(const StatePartition&, const StatePartition&) = default;
};

StatePartition singleton_partition(std::vector<History> histories);
StatePartition partition_from_blocks(std::vector<History> histories,
                                     const std::vector<std::vector<std::size_t>>& blocks);

/// For each history index i and symbol a: index of successor(h_i, a) when
/// #(h_i a) > 0 and that successor is in the history list. Unobserved
/// extensions are empty and impose no constraint.
class SuccessorTable {
 public:
  SuccessorTable() = default;
  SuccessorTable(std::size_t n, std::size_t alphabet_size)
      : n_(n), k_(alphabet_size), next_(n * alphabet_size) {}

  std::size_t size() const { return n_; }
  std::size_t alphabet_size() const { return k_; }

  std::optional<std::size_t> next(std::size_t i, std::size_t a) const { return next_[i * k_ + a]; }
  void set(std::size_t i, std::size_t a, std::optional<std::size_t> target) {
    next_[i * k_ + a] = target;
  }

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<std::optional<std::size_t>> next_;
};

struct DanglingTransition {
  History history;
  Symbol symbol;
};

SuccessorTable successor_table(std::span<const History> histories, const WindowCounts& wc,
                               std::vector<DanglingTransition>* dangling = nullptr);

/// True when every state maps each symbol to at most one state over the
/// defined entries of `succ`.
bool is_deterministic(const StatePartition& part, const SuccessorTable& succ);

/// Splits states until the induced transition relation is a function.
/// Within a state, members are grouped first-fit by successor-state
/// signature; an undefined successor matches anything. Repeats until the
/// state count is stable. Never merges members of different input states.
StatePartition refine_deterministic(const StatePartition& part, const SuccessorTable& succ);

struct Transition {
  std::size_t from;
  Symbol symbol;
  std::size_t to;
  double prob;

  friend bool operator==(const Transition&, const Transition&) = default;
};

class Pfsa {
 public:
  Pfsa() = default;
  Pfsa(Alphabet alphabet, std::vector<std::vector<History>> states,
       std::vector<Transition> transitions);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return states_.size(); }
  const std::vector<std::vector<History>>& states() const { return states_; }
  const std::vector<Transition>& transitions() const { return transitions_; }

  /// Total probability of emitting `a` from `q`.
  double symbol_prob(std::size_t q, Symbol a) const;
  std::vector<std::size_t> targets(std::size_t q, Symbol a) const;
  bool has_outgoing(std::size_t q) const;
  std::optional<std::size_t> state_of(std::span<const Symbol> h) const;

 private:
  Alphabet alphabet_;
  std::vector<std::vector<History>> states_;
  std::vector<Transition> transitions_;  // sorted by (from, symbol, to)
};

/// States are ordered by their lexicographically smallest history. The
/// probability of (q, a, q') is the pooled count of members whose a-successor
/// lies in q' over the pooled support of q. Successors outside the partition
/// are dropped, reported through `dangling`, and the row renormalized.
Pfsa build_machine(const StatePartition& part, const WindowCounts& wc, const Alphabet& alphabet,
                   std::vector<DanglingTransition>* dangling = nullptr);

struct DeterminismViolation {
  std::size_t state;
  Symbol symbol;
  std::vector<std::size_t> targets;
};

std::vector<DeterminismViolation> check_determinism(const Pfsa& m);

/// Walks the machine for n steps drawing (symbol, next state) jointly.
/// Without an explicit start, starts in the state holding the history made
/// of the most probable symbol repeated, or state 0.
SymbolSequence sample(const Pfsa& m, std::size_t n, std::uint64_t seed,
                      std::optional<std::size_t> start = std::nullopt);

enum class ExportFormat { dot, json };

ExportFormat parse_export_format(const std::string& name);
std::string export_machine(const Pfsa& m, ExportFormat format);
std::string export_dot(const Pfsa& m);
std::string export_json(const Pfsa& m);
Pfsa import_json(const std::string& text);

}  // namespace minstate

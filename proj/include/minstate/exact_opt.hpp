#pragma once

// Exact minimum-state solvers over the compatibility graph, the 0/1 program
// they solve, and an exhaustive oracle for small instances.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "minstate/deadline.hpp"
#include "minstate/machine.hpp"
#include "minstate/stat_tests.hpp"

namespace minstate {

struct SolveResult {
  StatePartition partition;
  std::size_t optimum = 0;
  std::uint64_t nodes_explored = 0;
  std::chrono::nanoseconds elapsed{0};
};

/// Minimum-state deterministic machine: co-assigned histories must be
/// compatible and each (state, symbol) may reach only one state over the
/// observed successors. Depth-first branch and bound in vertex order; vertex
/// i joins an open state or opens exactly one new one, so the first optimum
/// found is the lexicographically least canonical assignment.
SolveResult solve_msdpfsa(const CompatibilityGraph& graph, const SuccessorTable& succ,
                          const Deadline& deadline = {});

/// Same search without the determinism constraint; the optimum is the
/// clique cover number of the graph.
SolveResult solve_msndpfsa(const CompatibilityGraph& graph, const Deadline& deadline = {});

/// Enumerates every set partition of the vertices (restricted growth
/// strings) and returns the fewest blocks among the feasible ones.
inline constexpr std::size_t kOracleMaxVertices = 10;
std::size_t brute_force_min_states(const Graph& graph, const SuccessorTable& succ,
                                   bool deterministic);
std::size_t brute_force_min_states(const CompatibilityGraph& graph, const SuccessorTable& succ,
                                   bool deterministic);

enum class Sense { ge, le, eq };

struct LinearTerm {
  std::size_t var;
  double coef;
};

struct LinearConstraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Sense sense;
  double rhs;
};

/// The binary program with n strings and n candidate states. z and mu are
/// data: implication rows are emitted only where z = 1 and compatibility
/// rows only where mu = 0, since the remaining rows hold trivially.
struct IpModel {
  std::size_t num_strings = 0;
  std::size_t alphabet_size = 0;
  bool deterministic = true;

  std::vector<std::string> variables;
  std::vector<LinearConstraint> constraints;
  std::vector<std::size_t> objective;  ///< unit-coefficient variables to minimize

  std::vector<std::uint8_t> z;   ///< [sigma][i][l]
  std::vector<std::uint8_t> mu;  ///< [i][l]

  std::size_t num_x() const { return num_strings * num_strings; }
  std::size_t num_y() const { return deterministic ? alphabet_size * num_strings * num_strings : 0; }
  std::size_t num_p() const { return num_strings; }
  std::size_t num_z() const { return z.size(); }

  std::size_t x(std::size_t i, std::size_t j) const { return i * num_strings + j; }
  std::size_t y(std::size_t sigma, std::size_t j, std::size_t k) const {
    return num_x() + (sigma * num_strings + j) * num_strings + k;
  }
  std::size_t p(std::size_t j) const { return num_x() + num_y() + j; }
  bool z_at(std::size_t sigma, std::size_t i, std::size_t l) const {
    return z[(sigma * num_strings + i) * num_strings + l] != 0;
  }

  /// True when every constraint holds at `values` (0/1 per variable).
  bool feasible(const std::vector<double>& values) const;
};

IpModel build_ip_model(const Graph& graph, const SuccessorTable& succ, bool deterministic);
IpModel build_ip_model(const CompatibilityGraph& graph, const SuccessorTable& succ,
                       bool deterministic);

/// CPLEX LP text.
std::string to_lp(const IpModel& model);

/// Solves the model by enumerating string-to-state assignments and checking
/// them against the model's own rows only (y set to the induced relation,
/// p to the used states). For cross-checking the search on small n.
std::size_t solve_ip_model(const IpModel& model);

}  // namespace minstate

#pragma once

// Runtime comparison of the three inference methods on sequences sampled
// from seeded random sources.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "minstate/machine.hpp"
#include "minstate/stat_tests.hpp"

namespace minstate {

enum class Method { cssr, ip, clique };

Method parse_method(const std::string& name);
std::string to_string(Method m);

struct BenchConfig {
  std::vector<Method> methods{Method::cssr, Method::ip, Method::clique};
  std::vector<std::size_t> alphabet_sizes{2};
  std::vector<std::size_t> lengths{100, 1000, 10000};
  std::size_t L = 2;
  TestConfig test;
  std::uint64_t seed = 1;
  std::size_t repetitions = 1;
  double timeout_seconds = 300.0;
  std::size_t threads = 1;
  std::size_t timing_repeats = 1;  ///< seconds = fastest of this many executions

  void validate() const;
};

/// Parses `key = value` lines; `#` starts a comment. Lists are
/// comma-separated. Keys: methods, alphabet_sizes, lengths, L, alpha, test,
/// seed, repetitions, timeout, threads, timing_repeats.
BenchConfig parse_bench_config(std::string_view text);

struct BenchRow {
  Method method;
  std::size_t alphabet;
  std::size_t length;
  std::size_t rep;
  std::optional<double> seconds;      ///< thread CPU time; empty on timeout or error
  std::optional<std::size_t> states;
  std::string flag;                   ///< "", "mismatch", "bound_violation", "timeout", "error"
};

/// Random deterministic source with 2-4 states over `alphabet_size`
/// symbols. Every symbol has positive probability in every state.
Pfsa random_source(std::size_t alphabet_size, std::uint64_t seed);

/// Seed of the sequence used at one benchmark point.
std::uint64_t point_seed(std::uint64_t seed, std::size_t alphabet, std::size_t length,
                         std::size_t rep);

/// Runs every method on the same sequence at each (alphabet, length, rep)
/// point. Timing covers counting and inference. Rows come back sorted by
/// (alphabet, length, rep, configured method order).
std::vector<BenchRow> run_bench(const BenchConfig& cfg);

/// Runs one method once and reports (seconds, states).
BenchRow run_method(Method method, const SymbolSequence& seq, const BenchConfig& cfg);

inline constexpr std::string_view kCsvHeader = "method,alphabet,length,rep,seconds,states,flag";

/// CSV text: a `#` comment line describing the source generator, the
/// header, then one line per row.
std::string to_csv(const std::vector<BenchRow>& rows, const BenchConfig& cfg);

}  // namespace minstate

#pragma once

// Alphabets, symbol sequences and sliding-window statistics.
//
// A history is a contiguous run of symbol ordinals. WindowCounts holds
// #(x, y), the number of (non-cyclic) windows of y equal to x, for every
// observed x of length 0..L+1, together with the position where x first
// occurs. All conditional distributions are count ratios over this table.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace minstate {

using Symbol = std::uint32_t;
using History = std::vector<Symbol>;
using Count = std::uint64_t;

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const { return symbols_.size(); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  const std::string& symbol(Symbol s) const { return symbols_.at(s); }
  bool contains(std::string_view token) const;
  Symbol index(std::string_view token) const;

  /// Concatenates tokens; uses a single space separator unless every token
  /// is exactly one character long.
  std::string render(std::span<const Symbol> history) const;
  History parse_history(std::string_view text) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> symbols_;
  std::map<std::string, Symbol, std::less<>> index_;
};

struct SymbolSequence {
  std::vector<Symbol> tokens;
  Alphabet alphabet;

  std::size_t size() const { return tokens.size(); }
};

enum class ParseMode { chars, tokens };

/// Alphabet order is first appearance. In `chars` mode every UTF-8 code
/// point except whitespace is one symbol.
SymbolSequence parse_sequence(std::string_view text, ParseMode mode);

/// The shift-append map: drops the first symbol of `x` and appends `a`.
History successor(std::span<const Symbol> x, Symbol a);

struct HistoryHash {
  std::size_t operator()(const History& h) const noexcept;
};

class WindowCounts {
 public:
  WindowCounts(const SymbolSequence& seq, std::size_t max_history);

  std::size_t max_history() const { return max_history_; }
  std::size_t total_len() const { return total_len_; }
  std::size_t alphabet_size() const { return alphabet_size_; }

  /// #(x, y); zero for unobserved windows, total_len for the empty history.
  Count count(std::span<const Symbol> x) const;
  bool observed(std::span<const Symbol> x) const { return count(x) > 0; }
  /// 0-based start of the first window equal to x. Requires observed(x).
  std::size_t first_position(std::span<const Symbol> x) const;

  /// #(xa, y) for every symbol a, in alphabet order. Requires |x| <= L.
  std::vector<Count> next_counts(std::span<const Symbol> x) const;

  /// Distinct observed histories of length `len`, by first appearance.
  std::vector<History> histories(std::size_t len) const;

  std::size_t num_windows() const { return table_.size(); }

 private:
  struct Entry {
    Count count = 0;
    std::size_t first = 0;
  };
  const Entry* find(std::span<const Symbol> x) const;

  std::size_t max_history_;
  std::size_t total_len_;
  std::size_t alphabet_size_;
  std::unordered_map<History, Entry, HistoryHash> table_;
};

WindowCounts count_windows(const SymbolSequence& seq, std::size_t max_history);

struct ConditionalDistribution {
  std::vector<double> probs;
  Count support_count = 0;
};

/// Next-symbol distribution of one history. The denominator is the number
/// of occurrences of x that are followed by a symbol, so an occurrence at
/// the very end of y does not count.
ConditionalDistribution cond_dist(std::span<const Symbol> x, const WindowCounts& wc);

/// Pooled distribution of a set of histories: summed next-symbol counts
/// over summed support.
ConditionalDistribution state_dist(std::span<const History> histories,
                                   const WindowCounts& wc);

/// Normalizes a count vector. Empty support yields all zeros.
ConditionalDistribution normalize(std::span<const Count> next);

/// The 648-symbol binary sequence of the worked CSSR counterexample:
/// 518 zeros, 16 x "1100", 21 x "100", then "101".
SymbolSequence gen_fixture();

}  // namespace minstate

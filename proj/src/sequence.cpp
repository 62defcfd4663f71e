#include "minstate/sequence.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "minstate/error.hpp"

namespace minstate {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw InvalidConfig("alphabet must be non-empty");
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].empty()) throw InvalidConfig("alphabet symbols must be non-empty");
    auto [it, inserted] = index_.emplace(symbols_[i], static_cast<Symbol>(i));
    if (!inserted) throw InvalidConfig("duplicate alphabet symbol '" + symbols_[i] + "'");
  }
}

bool Alphabet::contains(std::string_view token) const {
  return index_.find(token) != index_.end();
}

Symbol Alphabet::index(std::string_view token) const {
  auto it = index_.find(token);
  if (it == index_.end()) throw FormatError("unknown symbol '" + std::string(token) + "'");
  return it->second;
}

namespace {

bool single_char_symbols(const std::vector<std::string>& symbols) {
  return std::all_of(symbols.begin(), symbols.end(),
                     [](const std::string& s) { return s.size() == 1; });
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::size_t utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

}  // namespace

std::string Alphabet::render(std::span<const Symbol> history) const {
  const bool compact = single_char_symbols(symbols_);
  std::string out;
  for (std::size_t i = 0; i < history.size(); ++i) {
    if (!compact && i > 0) out += ' ';
    out += symbol(history[i]);
  }
  return out;
}

History Alphabet::parse_history(std::string_view text) const {
  History h;
  if (single_char_symbols(symbols_)) {
    for (char c : text) h.push_back(index(std::string_view(&c, 1)));
    return h;
  }
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) h.push_back(index(text.substr(i, j - i)));
    i = j;
  }
  return h;
}

SymbolSequence parse_sequence(std::string_view text, ParseMode mode) {
  std::vector<std::string> raw;
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_space(text[i])) {
      ++i;
      continue;
    }
    std::size_t len = 0;
    if (mode == ParseMode::chars) {
      len = std::min(utf8_length(static_cast<unsigned char>(text[i])), text.size() - i);
    } else {
      while (i + len < text.size() && !is_space(text[i + len])) ++len;
    }
    raw.emplace_back(text.substr(i, len));
    i += len;
  }
  if (raw.empty()) throw EmptySequence("input contains no symbols");

  std::vector<std::string> symbols;
  std::map<std::string, Symbol, std::less<>> seen;
  SymbolSequence seq;
  seq.tokens.reserve(raw.size());
  for (auto& tok : raw) {
    auto [it, inserted] = seen.emplace(tok, static_cast<Symbol>(symbols.size()));
    if (inserted) symbols.push_back(tok);
    seq.tokens.push_back(it->second);
  }
  seq.alphabet = Alphabet(std::move(symbols));
  return seq;
}

History successor(std::span<const Symbol> x, Symbol a) {
  History next;
  next.reserve(x.size());
  if (!x.empty()) next.assign(x.begin() + 1, x.end());
  if (!x.empty()) next.push_back(a);
  return next;
}

std::size_t HistoryHash::operator()(const History& h) const noexcept {
  std::size_t seed = h.size();
  for (Symbol s : h) seed ^= s + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  return seed;
}

WindowCounts::WindowCounts(const SymbolSequence& seq, std::size_t max_history)
    : max_history_(max_history),
      total_len_(seq.size()),
      alphabet_size_(seq.alphabet.size()) {
  if (seq.size() < max_history + 1) {
    throw SequenceTooShort("sequence of length " + std::to_string(seq.size()) +
                           " is shorter than L+1 = " + std::to_string(max_history + 1));
  }
  const auto& y = seq.tokens;
  History key;
  for (std::size_t start = 0; start < y.size(); ++start) {
    key.clear();
    for (std::size_t len = 1; len <= max_history + 1 && start + len <= y.size(); ++len) {
      key.push_back(y[start + len - 1]);
      auto [it, inserted] = table_.try_emplace(key, Entry{0, start});
      ++it->second.count;
    }
  }
}

const WindowCounts::Entry* WindowCounts::find(std::span<const Symbol> x) const {
  auto it = table_.find(History(x.begin(), x.end()));
  return it == table_.end() ? nullptr : &it->second;
}

Count WindowCounts::count(std::span<const Symbol> x) const {
  if (x.empty()) return total_len_;
  const Entry* e = find(x);
  return e ? e->count : 0;
}

std::size_t WindowCounts::first_position(std::span<const Symbol> x) const {
  if (x.empty()) return 0;
  const Entry* e = find(x);
  if (!e) throw UnobservedHistory("history never observed");
  return e->first;
}

std::vector<Count> WindowCounts::next_counts(std::span<const Symbol> x) const {
  if (x.size() > max_history_) {
    throw InvalidConfig("history longer than L has no counted extensions");
  }
  std::vector<Count> out(alphabet_size_, 0);
  History ext(x.begin(), x.end());
  ext.push_back(0);
  for (std::size_t a = 0; a < alphabet_size_; ++a) {
    ext.back() = static_cast<Symbol>(a);
    out[a] = count(ext);
  }
  return out;
}

std::vector<History> WindowCounts::histories(std::size_t len) const {
  if (len == 0) return {History{}};
  std::vector<std::pair<std::size_t, History>> found;
  for (const auto& [key, entry] : table_) {
    if (key.size() == len) found.emplace_back(entry.first, key);
  }
  std::sort(found.begin(), found.end());
  std::vector<History> out;
  out.reserve(found.size());
  for (auto& [pos, h] : found) out.push_back(std::move(h));
  return out;
}

WindowCounts count_windows(const SymbolSequence& seq, std::size_t max_history) {
  return WindowCounts(seq, max_history);
}

ConditionalDistribution normalize(std::span<const Count> next) {
  ConditionalDistribution d;
  d.support_count = std::accumulate(next.begin(), next.end(), Count{0});
  d.probs.assign(next.size(), 0.0);
  if (d.support_count == 0) return d;
  for (std::size_t a = 0; a < next.size(); ++a) {
    d.probs[a] = static_cast<double>(next[a]) / static_cast<double>(d.support_count);
  }
  return d;
}

ConditionalDistribution cond_dist(std::span<const Symbol> x, const WindowCounts& wc) {
  if (wc.count(x) == 0) throw UnobservedHistory("history never observed");
  return normalize(wc.next_counts(x));
}

ConditionalDistribution state_dist(std::span<const History> histories,
                                   const WindowCounts& wc) {
  if (histories.empty()) throw EmptyState("state has no histories");
  std::vector<Count> pooled(wc.alphabet_size(), 0);
  for (const auto& h : histories) {
    if (wc.count(h) == 0) throw UnobservedHistory("history never observed");
    auto next = wc.next_counts(h);
    for (std::size_t a = 0; a < pooled.size(); ++a) pooled[a] += next[a];
  }
  return normalize(pooled);
}

SymbolSequence gen_fixture() {
  SymbolSequence seq;
  seq.alphabet = Alphabet({"0", "1"});
  seq.tokens.assign(518, 0);
  for (int b = 0; b < 16; ++b) seq.tokens.insert(seq.tokens.end(), {1, 1, 0, 0});
  for (int b = 0; b < 21; ++b) seq.tokens.insert(seq.tokens.end(), {1, 0, 0});
  seq.tokens.insert(seq.tokens.end(), {1, 0, 1});
  return seq;
}

}  // namespace minstate

#include "minstate/machine.hpp"

#include <algorithm>
#include <cstdio>
#include <json.hpp>
#include <map>
#include <random>
#include <sstream>
#include <unordered_map>

#include "minstate/error.hpp"

namespace minstate {

StatePartition::StatePartition(std::vector<History> hs, std::vector<std::size_t> state_of)
    : histories(std::move(hs)), assign(std::move(state_of)) {
  if (histories.size() != assign.size()) {
    throw InvalidConfig("partition assignment size differs from history count");
  }
  canonicalize();
}

void StatePartition::canonicalize() {
  std::unordered_map<std::size_t, std::size_t> renumber;
  for (auto& s : assign) {
    auto [it, inserted] = renumber.try_emplace(s, renumber.size());
    s = it->second;
  }
  num_states = renumber.size();
}

std::vector<std::vector<std::size_t>> StatePartition::blocks() const {
  std::vector<std::vector<std::size_t>> out(num_states);
  for (std::size_t i = 0; i < assign.size(); ++i) out[assign[i]].push_back(i);
  return out;
}

std::vector<std::vector<History>> StatePartition::block_histories() const {
  std::vector<std::vector<History>> out(num_states);
  for (std::size_t i = 0; i < assign.size(); ++i) out[assign[i]].push_back(histories[i]);
  return out;
}

std::optional<std::size_t> StatePartition::index_of(std::span<const Symbol> h) const {
  for (std::size_t i = 0; i < histories.size(); ++i) {
    if (std::equal(histories[i].begin(), histories[i].end(), h.begin(), h.end())) return i;
  }
  return std::nullopt;
}

StatePartition singleton_partition(std::vector<History> histories) {
  std::vector<std::size_t> assign(histories.size());
  for (std::size_t i = 0; i < assign.size(); ++i) assign[i] = i;
  return StatePartition(std::move(histories), std::move(assign));
}

StatePartition partition_from_blocks(std::vector<History> histories,
                                     const std::vector<std::vector<std::size_t>>& blocks) {
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> assign(histories.size(), unset);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (std::size_t i : blocks[b]) {
      if (i >= assign.size() || assign[i] != unset) {
        throw InvalidConfig("blocks do not partition the histories");
      }
      assign[i] = b;
    }
  }
  if (std::find(assign.begin(), assign.end(), unset) != assign.end()) {
    throw InvalidConfig("blocks do not cover every history");
  }
  return StatePartition(std::move(histories), std::move(assign));
}

SuccessorTable successor_table(std::span<const History> histories, const WindowCounts& wc,
                               std::vector<DanglingTransition>* dangling) {
  std::unordered_map<History, std::size_t, HistoryHash> index;
  for (std::size_t i = 0; i < histories.size(); ++i) index.emplace(histories[i], i);
  SuccessorTable table(histories.size(), wc.alphabet_size());
  for (std::size_t i = 0; i < histories.size(); ++i) {
    const auto next = wc.next_counts(histories[i]);
    for (std::size_t a = 0; a < next.size(); ++a) {
      if (next[a] == 0) continue;
      auto it = index.find(successor(histories[i], static_cast<Symbol>(a)));
      if (it != index.end()) {
        table.set(i, a, it->second);
      } else if (dangling) {
        dangling->push_back({histories[i], static_cast<Symbol>(a)});
      }
    }
  }
  return table;
}

bool is_deterministic(const StatePartition& part, const SuccessorTable& succ) {
  constexpr auto none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> target(part.num_states * succ.alphabet_size(), none);
  for (std::size_t i = 0; i < part.size(); ++i) {
    for (std::size_t a = 0; a < succ.alphabet_size(); ++a) {
      auto next = succ.next(i, a);
      if (!next) continue;
      auto& slot = target[part.assign[i] * succ.alphabet_size() + a];
      const std::size_t t = part.assign[*next];
      if (slot == none) {
        slot = t;
      } else if (slot != t) {
        return false;
      }
    }
  }
  return true;
}

StatePartition refine_deterministic(const StatePartition& part, const SuccessorTable& succ) {
  using Signature = std::vector<std::optional<std::size_t>>;
  const std::size_t k = succ.alphabet_size();
  StatePartition cur = part;
  cur.canonicalize();
  while (true) {
    std::vector<std::size_t> next_assign(cur.size());
    std::size_t next_id = 0;
    for (const auto& members : cur.blocks()) {
      std::vector<std::pair<std::size_t, Signature>> subs;  // (id, merged signature)
      for (std::size_t i : members) {
        Signature sig(k);
        for (std::size_t a = 0; a < k; ++a) {
          if (auto t = succ.next(i, a)) sig[a] = cur.assign[*t];
        }
        auto fits = [&](const Signature& merged) {
          for (std::size_t a = 0; a < k; ++a) {
            if (sig[a] && merged[a] && *sig[a] != *merged[a]) return false;
          }
          return true;
        };
        auto it = std::find_if(subs.begin(), subs.end(),
                               [&](const auto& sub) { return fits(sub.second); });
        if (it == subs.end()) {
          subs.emplace_back(next_id++, sig);
          next_assign[i] = subs.back().first;
        } else {
          for (std::size_t a = 0; a < k; ++a) {
            if (sig[a]) it->second[a] = sig[a];
          }
          next_assign[i] = it->first;
        }
      }
    }
    StatePartition refined(cur.histories, std::move(next_assign));
    if (refined.num_states == cur.num_states) return refined;
    cur = std::move(refined);
  }
}

Pfsa::Pfsa(Alphabet alphabet, std::vector<std::vector<History>> states,
           std::vector<Transition> transitions)
    : alphabet_(std::move(alphabet)),
      states_(std::move(states)),
      transitions_(std::move(transitions)) {
  for (const auto& t : transitions_) {
    if (t.from >= states_.size() || t.to >= states_.size() || t.symbol >= alphabet_.size()) {
      throw FormatError("transition refers to an unknown state or symbol");
    }
  }
  std::sort(transitions_.begin(), transitions_.end(), [](const Transition& a, const Transition& b) {
    return std::tie(a.from, a.symbol, a.to) < std::tie(b.from, b.symbol, b.to);
  });
}

double Pfsa::symbol_prob(std::size_t q, Symbol a) const {
  double p = 0.0;
  for (const auto& t : transitions_)
    if (t.from == q && t.symbol == a) p += t.prob;
  return p;
}

std::vector<std::size_t> Pfsa::targets(std::size_t q, Symbol a) const {
  std::vector<std::size_t> out;
  for (const auto& t : transitions_)
    if (t.from == q && t.symbol == a) out.push_back(t.to);
  return out;
}

bool Pfsa::has_outgoing(std::size_t q) const {
  return std::any_of(transitions_.begin(), transitions_.end(),
                     [q](const Transition& t) { return t.from == q && t.prob > 0.0; });
}

std::optional<std::size_t> Pfsa::state_of(std::span<const Symbol> h) const {
  for (std::size_t q = 0; q < states_.size(); ++q) {
    for (const auto& member : states_[q]) {
      if (std::equal(member.begin(), member.end(), h.begin(), h.end())) return q;
    }
  }
  return std::nullopt;
}

Pfsa build_machine(const StatePartition& part, const WindowCounts& wc, const Alphabet& alphabet,
                   std::vector<DanglingTransition>* dangling) {
  auto blocks = part.block_histories();
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  std::unordered_map<History, std::size_t, HistoryHash> state_of;
  for (std::size_t q = 0; q < blocks.size(); ++q)
    for (const auto& h : blocks[q]) state_of.emplace(h, q);

  std::vector<Transition> transitions;
  for (std::size_t q = 0; q < blocks.size(); ++q) {
    std::map<std::pair<Symbol, std::size_t>, Count> weight;
    Count kept = 0;
    for (const auto& h : blocks[q]) {
      const auto next = wc.next_counts(h);
      for (std::size_t a = 0; a < next.size(); ++a) {
        if (next[a] == 0) continue;
        auto it = state_of.find(successor(h, static_cast<Symbol>(a)));
        if (it == state_of.end()) {
          if (dangling) dangling->push_back({h, static_cast<Symbol>(a)});
          continue;
        }
        weight[{static_cast<Symbol>(a), it->second}] += next[a];
        kept += next[a];
      }
    }
    for (const auto& [key, w] : weight) {
      transitions.push_back(
          {q, key.first, key.second, static_cast<double>(w) / static_cast<double>(kept)});
    }
  }
  return Pfsa(alphabet, std::move(blocks), std::move(transitions));
}

std::vector<DeterminismViolation> check_determinism(const Pfsa& m) {
  std::map<std::pair<std::size_t, Symbol>, std::vector<std::size_t>> targets;
  for (const auto& t : m.transitions()) targets[{t.from, t.symbol}].push_back(t.to);
  std::vector<DeterminismViolation> out;
  for (auto& [key, ts] : targets) {
    if (ts.size() > 1) out.push_back({key.first, key.second, std::move(ts)});
  }
  return out;
}

SymbolSequence sample(const Pfsa& m, std::size_t n, std::uint64_t seed,
                      std::optional<std::size_t> start) {
  if (m.num_states() == 0) throw DeadEnd("machine has no states");
  std::size_t q = 0;
  if (start) {
    if (*start >= m.num_states()) throw InvalidConfig("start state out of range");
    q = *start;
  } else {
    Symbol best = 0;
    double best_mass = -1.0;
    for (Symbol a = 0; a < m.alphabet().size(); ++a) {
      double mass = 0.0;
      for (std::size_t s = 0; s < m.num_states(); ++s) mass += m.symbol_prob(s, a);
      if (mass > best_mass) {
        best_mass = mass;
        best = a;
      }
    }
    const auto& first = m.states().front();
    if (!first.empty()) q = m.state_of(History(first.front().size(), best)).value_or(0);
  }

  // Transitions are sorted by source; index the row of each state.
  const auto& ts = m.transitions();
  std::vector<std::size_t> row(m.num_states() + 1, ts.size());
  for (std::size_t i = ts.size(); i-- > 0;) row[ts[i].from] = i;
  for (std::size_t s = m.num_states(); s-- > 0;) row[s] = std::min(row[s], row[s + 1]);

  std::mt19937_64 gen(seed);
  SymbolSequence out;
  out.alphabet = m.alphabet();
  out.tokens.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    double mass = 0.0;
    for (std::size_t i = row[q]; i < row[q + 1]; ++i) mass += ts[i].prob;
    if (mass <= 0.0) throw DeadEnd("state q" + std::to_string(q + 1) + " has no outgoing transitions");
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53 * mass;
    std::size_t pick = row[q + 1] - 1;
    double acc = 0.0;
    for (std::size_t i = row[q]; i < row[q + 1]; ++i) {
      acc += ts[i].prob;
      if (u < acc) {
        pick = i;
        break;
      }
    }
    out.tokens.push_back(ts[pick].symbol);
    q = ts[pick].to;
  }
  return out;
}

ExportFormat parse_export_format(const std::string& name) {
  if (name == "dot") return ExportFormat::dot;
  if (name == "json") return ExportFormat::json;
  throw InvalidConfig("unknown format '" + name + "' (expected dot or json)");
}

std::string export_machine(const Pfsa& m, ExportFormat format) {
  return format == ExportFormat::dot ? export_dot(m) : export_json(m);
}

std::string export_dot(const Pfsa& m) {
  std::ostringstream out;
  out << "digraph pfsa {\n  rankdir=LR;\n";
  for (std::size_t q = 0; q < m.num_states(); ++q) {
    out << "  q" << q + 1 << " [label=\"" << q + 1 << "\"];\n";
  }
  char prob[32];
  for (const auto& t : m.transitions()) {
    if (t.prob <= 0.0) continue;
    std::snprintf(prob, sizeof prob, "%.4f", t.prob);
    out << "  q" << t.from + 1 << " -> q" << t.to + 1 << " [label=\""
        << m.alphabet().symbol(t.symbol) << '/' << prob << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string export_json(const Pfsa& m) {
  nlohmann::ordered_json doc;
  doc["alphabet"] = m.alphabet().symbols();
  auto& states = doc["states"] = nlohmann::ordered_json::array();
  for (std::size_t q = 0; q < m.num_states(); ++q) {
    nlohmann::ordered_json s;
    s["id"] = q + 1;
    auto& hs = s["histories"] = nlohmann::ordered_json::array();
    for (const auto& h : m.states()[q]) hs.push_back(m.alphabet().render(h));
    states.push_back(std::move(s));
  }
  auto& trans = doc["transitions"] = nlohmann::ordered_json::array();
  for (const auto& t : m.transitions()) {
    nlohmann::ordered_json e;
    e["from"] = t.from + 1;
    e["symbol"] = m.alphabet().symbol(t.symbol);
    e["to"] = t.to + 1;
    e["prob"] = t.prob;
    trans.push_back(std::move(e));
  }
  return doc.dump(2) + "\n";
}

Pfsa import_json(const std::string& text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    Alphabet alphabet(doc.at("alphabet").get<std::vector<std::string>>());
    const auto& states_json = doc.at("states");
    std::vector<std::vector<History>> states(states_json.size());
    for (const auto& s : states_json) {
      const auto id = s.at("id").get<std::size_t>();
      if (id < 1 || id > states.size()) throw FormatError("state id out of range");
      for (const auto& h : s.at("histories")) {
        states[id - 1].push_back(alphabet.parse_history(h.get<std::string>()));
      }
    }
    std::vector<Transition> transitions;
    for (const auto& t : doc.at("transitions")) {
      const auto from = t.at("from").get<std::size_t>();
      const auto to = t.at("to").get<std::size_t>();
      if (from < 1 || to < 1) throw FormatError("state ids start at 1");
      transitions.push_back({from - 1, alphabet.index(t.at("symbol").get<std::string>()), to - 1,
                             t.at("prob").get<double>()});
    }
    return Pfsa(std::move(alphabet), std::move(states), std::move(transitions));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed machine JSON: ") + e.what());
  } catch (const InvalidConfig& e) {
    throw FormatError(std::string("malformed machine JSON: ") + e.what());
  }
}

}  // namespace minstate

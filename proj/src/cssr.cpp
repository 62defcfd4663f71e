#include "minstate/cssr.hpp"

#include <algorithm>
#include <numeric>

#include "minstate/error.hpp"

namespace minstate {

void CssrConfig::validate() const {
  if (L < 1) throw InvalidConfig("CSSR needs L >= 1");
  test.validate();
}

StatePartition cssr_split(const WindowCounts& wc, const CssrConfig& cfg) {
  cfg.validate();
  if (wc.max_history() < cfg.L) throw InvalidConfig("window counts were taken with a smaller L");

  const std::size_t k = wc.alphabet_size();
  std::vector<History> histories{History{}};
  std::vector<std::size_t> assign{0};
  std::vector<std::vector<Count>> pooled{wc.next_counts(History{})};

  auto total = [](const std::vector<Count>& v) {
    return std::accumulate(v.begin(), v.end(), Count{0});
  };

  for (std::size_t level = 1; level <= cfg.L; ++level) {
    std::vector<History> candidates;
    for (const auto& x : histories) {
      if (x.size() != level - 1) continue;
      for (std::size_t a = 0; a < k; ++a) {
        History ax;
        ax.reserve(level);
        ax.push_back(static_cast<Symbol>(a));
        ax.insert(ax.end(), x.begin(), x.end());
        if (wc.observed(ax)) candidates.push_back(std::move(ax));
      }
    }
    std::sort(candidates.begin(), candidates.end(), [&](const History& a, const History& b) {
      return wc.first_position(a) < wc.first_position(b);
    });

    for (auto& ax : candidates) {
      const auto next = wc.next_counts(ax);
      std::size_t best = 0;
      double best_p = -1.0;
      for (std::size_t s = 0; s < pooled.size(); ++s) {
        const double p = (total(next) == 0 || total(pooled[s]) == 0)
                             ? 1.0
                             : pvalue(cfg.test.test, pooled[s], next);
        if (p > best_p) {
          best_p = p;
          best = s;
        }
      }
      if (best_p <= cfg.test.alpha) {
        best = pooled.size();
        pooled.emplace_back(k, 0);
      }
      for (std::size_t a = 0; a < k; ++a) pooled[best][a] += next[a];
      histories.push_back(std::move(ax));
      assign.push_back(best);
    }
  }
  return StatePartition(std::move(histories), std::move(assign));
}

StatePartition cssr_reconstruct(const StatePartition& part, const WindowCounts& wc) {
  std::size_t len = 0;
  for (const auto& h : part.histories) len = std::max(len, h.size());
  std::vector<History> kept;
  std::vector<std::size_t> assign;
  for (std::size_t i = 0; i < part.size(); ++i) {
    if (part.histories[i].size() != len) continue;
    kept.push_back(part.histories[i]);
    assign.push_back(part.assign[i]);
  }
  StatePartition full_length(std::move(kept), std::move(assign));
  const auto succ = successor_table(full_length.histories, wc);
  return refine_deterministic(full_length, succ);
}

Pfsa cssr(const WindowCounts& wc, const Alphabet& alphabet, const CssrConfig& cfg) {
  return build_machine(cssr_reconstruct(cssr_split(wc, cfg), wc), wc, alphabet);
}

Pfsa cssr(const SymbolSequence& seq, const CssrConfig& cfg) {
  cfg.validate();
  const WindowCounts wc(seq, cfg.L);
  return cssr(wc, seq.alphabet, cfg);
}

}  // namespace minstate

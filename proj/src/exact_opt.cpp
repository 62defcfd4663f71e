#include "minstate/exact_opt.hpp"

#include <algorithm>
#include <sstream>

#include "minstate/error.hpp"

namespace minstate {

namespace {

constexpr auto kNone = static_cast<std::size_t>(-1);

// Greedy maximal independent set, lowest degree first. Its size bounds the
// number of states from below: pairwise-incompatible histories never share
// a state.
std::size_t greedy_independent_set(const Graph& g, const std::vector<std::size_t>& candidates) {
  std::vector<std::size_t> order = candidates;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return g.degree(a) < g.degree(b);
  });
  std::vector<std::size_t> chosen;
  for (std::size_t v : order) {
    if (std::none_of(chosen.begin(), chosen.end(),
                     [&](std::size_t u) { return g.adjacent(u, v); })) {
      chosen.push_back(v);
    }
  }
  return chosen.size();
}

class PartitionSearch {
 public:
  PartitionSearch(const Graph& g, const SuccessorTable* succ, const Deadline& deadline)
      : g_(g),
        succ_(succ),
        deadline_(deadline),
        n_(g.size()),
        k_(succ ? succ->alphabet_size() : 0),
        assign_(n_, kNone),
        preds_(n_) {
    if (succ_) {
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t a = 0; a < k_; ++a)
          if (auto t = succ_->next(i, a)) preds_[*t].push_back({i, a});
    }
    target_.assign(n_ * std::max<std::size_t>(k_, 1), {kNone, 0});
  }

  SolveResult run() {
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::size_t> all(n_);
    for (std::size_t i = 0; i < n_; ++i) all[i] = i;
    global_lb_ = greedy_independent_set(g_, all);
    best_count_ = n_ + 1;
    best_assign_.clear();
    members_.clear();
    if (n_ > 0) descend(0);
    SolveResult r;
    r.optimum = n_ == 0 ? 0 : best_count_;
    r.nodes_explored = nodes_;
    r.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::steady_clock::now() - start);
    r.partition.assign = best_assign_;
    r.partition.num_states = r.optimum;
    return r;
  }

 private:
  struct Edge {
    std::size_t from_state, symbol, to_state;
  };
  struct Slot {
    std::size_t target;
    std::size_t refs;
  };

  void descend(std::size_t v) {
    if ((++nodes_ & 0xFFF) == 0) deadline_.check();
    if (v == n_) {
      if (members_.size() < best_count_) {
        best_count_ = members_.size();
        best_assign_ = assign_;
      }
      return;
    }
    if (lower_bound(v) >= best_count_) return;

    const std::size_t open = members_.size();
    for (std::size_t s = 0; s < open; ++s) {
      if (!compatible_with_state(v, s)) continue;
      if (!place(v, s)) continue;
      descend(v + 1);
      unplace(v);
    }
    if (open + 1 < best_count_) {
      members_.emplace_back();
      if (place(v, open)) {
        descend(v + 1);
        unplace(v);
      }
      members_.pop_back();
    }
  }

  std::size_t lower_bound(std::size_t v) const {
    std::vector<std::size_t> homeless;
    for (std::size_t u = v; u < n_; ++u) {
      bool fits = false;
      for (std::size_t s = 0; s < members_.size() && !fits; ++s) fits = compatible_with_state(u, s);
      if (!fits) homeless.push_back(u);
    }
    const std::size_t local = members_.size() + greedy_independent_set(g_, homeless);
    return std::max(local, global_lb_);
  }

  bool compatible_with_state(std::size_t v, std::size_t s) const {
    return std::all_of(members_[s].begin(), members_[s].end(),
                       [&](std::size_t u) { return g_.adjacent(u, v); });
  }

  // Assigns v to s, registering every transition whose endpoints are now
  // both assigned. Fails (leaving no trace) on a determinism conflict.
  bool place(std::size_t v, std::size_t s) {
    assign_[v] = s;
    members_[s].push_back(v);
    if (!succ_) return true;
    std::vector<Edge> added;
    auto add = [&](const Edge& e) {
      auto& slot = target_[e.from_state * k_ + e.symbol];
      if (slot.refs > 0 && slot.target != e.to_state) return false;
      slot.target = e.to_state;
      ++slot.refs;
      added.push_back(e);
      return true;
    };
    bool ok = true;
    for (std::size_t a = 0; a < k_ && ok; ++a) {
      auto t = succ_->next(v, a);
      if (t && assign_[*t] != kNone) ok = add({s, a, assign_[*t]});
    }
    for (std::size_t i = 0; i < preds_[v].size() && ok; ++i) {
      const auto [p, a] = preds_[v][i];
      if (p != v && assign_[p] != kNone) ok = add({assign_[p], a, s});
    }
    if (ok) {
      placed_edges_.push_back(std::move(added));
      return true;
    }
    for (const auto& e : added) --target_[e.from_state * k_ + e.symbol].refs;
    members_[s].pop_back();
    assign_[v] = kNone;
    return false;
  }

  void unplace(std::size_t v) {
    const std::size_t s = assign_[v];
    if (succ_) {
      for (const auto& e : placed_edges_.back()) --target_[e.from_state * k_ + e.symbol].refs;
      placed_edges_.pop_back();
    }
    members_[s].pop_back();
    assign_[v] = kNone;
  }

  const Graph& g_;
  const SuccessorTable* succ_;
  const Deadline& deadline_;
  std::size_t n_;
  std::size_t k_;
  std::vector<std::size_t> assign_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> preds_;
  std::vector<Slot> target_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<std::vector<Edge>> placed_edges_;
  std::size_t global_lb_ = 0;
  std::size_t best_count_ = 0;
  std::vector<std::size_t> best_assign_;
  std::uint64_t nodes_ = 0;
};

SolveResult finish(SolveResult r, const CompatibilityGraph& graph) {
  r.partition = StatePartition(graph.vertices, std::move(r.partition.assign));
  return r;
}

}  // namespace

SolveResult solve_msdpfsa(const CompatibilityGraph& graph, const SuccessorTable& succ,
                          const Deadline& deadline) {
  if (succ.size() != graph.size()) throw InvalidConfig("successor table does not match graph");
  return finish(PartitionSearch(graph.graph, &succ, deadline).run(), graph);
}

SolveResult solve_msndpfsa(const CompatibilityGraph& graph, const Deadline& deadline) {
  return finish(PartitionSearch(graph.graph, nullptr, deadline).run(), graph);
}

std::size_t brute_force_min_states(const Graph& graph, const SuccessorTable& succ,
                                   bool deterministic) {
  const std::size_t n = graph.size();
  if (n > kOracleMaxVertices) {
    throw TooLargeForOracle("oracle limited to " + std::to_string(kOracleMaxVertices) +
                            " vertices");
  }
  if (n == 0) return 0;
  // Restricted growth string: rgs[0] = 0, rgs[i] <= 1 + max(rgs[0..i-1]).
  std::vector<std::size_t> rgs(n, 0), prefix_max(n, 0);
  std::size_t best = n;
  auto feasible = [&](std::size_t blocks) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (rgs[i] == rgs[j] && !graph.adjacent(i, j)) return false;
    if (!deterministic) return true;
    const std::size_t k = succ.alphabet_size();
    std::vector<std::size_t> target(blocks * k, kNone);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t a = 0; a < k; ++a) {
        auto t = succ.next(i, a);
        if (!t) continue;
        auto& slot = target[rgs[i] * k + a];
        if (slot == kNone) slot = rgs[*t];
        if (slot != rgs[*t]) return false;
      }
    }
    return true;
  };
  while (true) {
    const std::size_t blocks = prefix_max[n - 1] + 1;
    if (blocks < best && feasible(blocks)) best = blocks;
    // Advance to the next restricted growth string.
    std::size_t i = n - 1;
    while (i > 0 && rgs[i] == prefix_max[i - 1] + 1) --i;
    if (i == 0) break;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[j - 1];
    }
  }
  return best;
}

std::size_t brute_force_min_states(const CompatibilityGraph& graph, const SuccessorTable& succ,
                                   bool deterministic) {
  return brute_force_min_states(graph.graph, succ, deterministic);
}

IpModel build_ip_model(const Graph& graph, const SuccessorTable& succ, bool deterministic) {
  IpModel m;
  const std::size_t n = graph.size();
  const std::size_t k = succ.alphabet_size();
  m.num_strings = n;
  m.alphabet_size = k;
  m.deterministic = deterministic;

  m.z.assign(k * n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < k; ++a)
      if (auto t = succ.next(i, a)) m.z[(a * n + i) * n + *t] = 1;
  m.mu.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) m.mu[i * n + l] = graph.adjacent(i, l) ? 1 : 0;

  m.variables.resize(m.num_x() + m.num_y() + m.num_p());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m.variables[m.x(i, j)] = "x_" + std::to_string(i) + "_" + std::to_string(j);
  if (deterministic) {
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t q = 0; q < n; ++q)
          m.variables[m.y(a, j, q)] =
              "y_" + std::to_string(a) + "_" + std::to_string(j) + "_" + std::to_string(q);
  }
  for (std::size_t j = 0; j < n; ++j) {
    m.variables[m.p(j)] = "p_" + std::to_string(j);
    m.objective.push_back(m.p(j));
  }

  auto& rows = m.constraints;
  if (deterministic) {
    // (1-x_ij) + (1-z_il) + (1-x_lk) + y_jk >= 1 with z_il = 1.
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) {
          if (!m.z_at(a, i, l)) continue;
          for (std::size_t j = 0; j < n; ++j)
            for (std::size_t q = 0; q < n; ++q) {
              std::vector<LinearTerm> terms{{m.x(i, j), -1.0}, {m.y(a, j, q), 1.0}};
              if (m.x(l, q) == m.x(i, j)) {
                terms[0].coef = -2.0;
              } else {
                terms.push_back({m.x(l, q), -1.0});
              }
              rows.push_back({"trans_" + std::to_string(a) + "_" + std::to_string(i) + "_" +
                                  std::to_string(l) + "_" + std::to_string(j) + "_" +
                                  std::to_string(q),
                              std::move(terms), Sense::ge, -1.0});
            }
        }
    // sum_k y_jk <= 1.
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t j = 0; j < n; ++j) {
        LinearConstraint c{"det_" + std::to_string(a) + "_" + std::to_string(j), {}, Sense::le, 1.0};
        for (std::size_t q = 0; q < n; ++q) c.terms.push_back({m.y(a, j, q), 1.0});
        rows.push_back(std::move(c));
      }
  }
  // (1-x_ij) + (1-x_lj) + mu_il >= 1 with mu_il = 0.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = i + 1; l < n; ++l) {
      if (m.mu[i * n + l]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        rows.push_back({"compat_" + std::to_string(i) + "_" + std::to_string(l) + "_" +
                            std::to_string(j),
                        {{m.x(i, j), 1.0}, {m.x(l, j), 1.0}},
                        Sense::le,
                        1.0});
      }
    }
  // p_j >= sum_i x_ij / S with S = n.
  for (std::size_t j = 0; j < n; ++j) {
    LinearConstraint c{"used_" + std::to_string(j), {{m.p(j), static_cast<double>(n)}}, Sense::ge,
                       0.0};
    for (std::size_t i = 0; i < n; ++i) c.terms.push_back({m.x(i, j), -1.0});
    rows.push_back(std::move(c));
  }
  // sum_j x_ij = 1.
  for (std::size_t i = 0; i < n; ++i) {
    LinearConstraint c{"assign_" + std::to_string(i), {}, Sense::eq, 1.0};
    for (std::size_t j = 0; j < n; ++j) c.terms.push_back({m.x(i, j), 1.0});
    rows.push_back(std::move(c));
  }
  return m;
}

IpModel build_ip_model(const CompatibilityGraph& graph, const SuccessorTable& succ,
                       bool deterministic) {
  return build_ip_model(graph.graph, succ, deterministic);
}

bool IpModel::feasible(const std::vector<double>& values) const {
  constexpr double eps = 1e-9;
  for (const auto& c : constraints) {
    double lhs = 0.0;
    for (const auto& t : c.terms) lhs += t.coef * values[t.var];
    switch (c.sense) {
      case Sense::ge:
        if (lhs < c.rhs - eps) return false;
        break;
      case Sense::le:
        if (lhs > c.rhs + eps) return false;
        break;
      case Sense::eq:
        if (std::abs(lhs - c.rhs) > eps) return false;
        break;
    }
  }
  return true;
}

std::string to_lp(const IpModel& model) {
  std::ostringstream out;
  auto term = [&](const LinearTerm& t, bool first) {
    if (t.coef < 0) {
      out << " - ";
    } else if (!first) {
      out << " + ";
    } else {
      out << ' ';
    }
    const double mag = std::abs(t.coef);
    if (mag != 1.0) out << mag << ' ';
    out << model.variables[t.var];
  };
  out << "\\ minimum-state " << (model.deterministic ? "deterministic" : "non-deterministic")
      << " pFSA, " << model.num_strings << " strings, alphabet " << model.alphabet_size << "\n";
  out << "Minimize\n obj:";
  for (std::size_t i = 0; i < model.objective.size(); ++i) term({model.objective[i], 1.0}, i == 0);
  out << "\nSubject To\n";
  for (const auto& c : model.constraints) {
    out << ' ' << c.name << ':';
    for (std::size_t i = 0; i < c.terms.size(); ++i) term(c.terms[i], i == 0);
    out << (c.sense == Sense::ge ? " >= " : c.sense == Sense::le ? " <= " : " = ") << c.rhs << '\n';
  }
  out << "Binary\n";
  for (const auto& v : model.variables) out << ' ' << v << '\n';
  out << "End\n";
  return out.str();
}

std::size_t solve_ip_model(const IpModel& model) {
  const std::size_t n = model.num_strings;
  if (n > kOracleMaxVertices) throw TooLargeForOracle("model too large for enumeration");
  if (n == 0) return 0;
  std::vector<std::size_t> rgs(n, 0), prefix_max(n, 0);
  std::size_t best = n + 1;
  std::vector<double> values(model.variables.size());
  while (true) {
    std::fill(values.begin(), values.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) values[model.x(i, rgs[i])] = 1.0;
    if (model.deterministic) {
      for (std::size_t a = 0; a < model.alphabet_size; ++a)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t l = 0; l < n; ++l)
            if (model.z_at(a, i, l)) values[model.y(a, rgs[i], rgs[l])] = 1.0;
    }
    for (std::size_t i = 0; i < n; ++i) values[model.p(rgs[i])] = 1.0;
    if (model.feasible(values)) {
      double obj = 0.0;
      for (std::size_t v : model.objective) obj += values[v];
      best = std::min(best, static_cast<std::size_t>(obj + 0.5));
    }
    std::size_t i = n - 1;
    while (i > 0 && rgs[i] == prefix_max[i - 1] + 1) --i;
    if (i == 0) break;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[j - 1];
    }
  }
  return best;
}

}  // namespace minstate

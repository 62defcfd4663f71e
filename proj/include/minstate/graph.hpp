#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace minstate {

/// Undirected simple graph on vertices 0..n-1 stored as a dense matrix.
/// Self-adjacency is reported as true.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), adj_(n * n, 0) {}

  std::size_t size() const { return n_; }

  bool adjacent(std::size_t u, std::size_t v) const {
    return u == v || adj_[u * n_ + v] != 0;
  }
  void add_edge(std::size_t u, std::size_t v) {
    if (u == v) return;
    adj_[u * n_ + v] = 1;
    adj_[v * n_ + u] = 1;
  }

  std::size_t degree(std::size_t u) const {
    std::size_t d = 0;
    for (std::size_t v = 0; v < n_; ++v) d += (v != u && adj_[u * n_ + v]) ? 1 : 0;
    return d;
  }

  /// Edges (u, v) with u < v, in row-major order.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = u + 1; v < n_; ++v)
        if (adj_[u * n_ + v]) out.emplace_back(u, v);
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> adj_;
};

}  // namespace minstate

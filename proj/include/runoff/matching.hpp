#pragma once

#include <limits>
#include <queue>
#include <vector>

#include "runoff/error.hpp"

namespace runoff {

// Bipartite graph between `left` and `right` vertex sets given as adjacency
// lists of the left side.
struct BipartiteGraph {
  int left = 0;
  int right = 0;
  std::vector<std::vector<int>> adj;

  BipartiteGraph(int l, int r) : left(l), right(r), adj(l) {}

  void add_edge(int u, int v) {
    if (u < 0 || u >= left || v < 0 || v >= right) throw Error("bipartite edge out of range");
    adj[u].push_back(v);
  }
};

struct Matching {
  int size = 0;
  std::vector<int> left_to_right;  // -1 if unmatched
  std::vector<int> right_to_left;

  bool perfect(const BipartiteGraph& g) const { return size == g.left && size == g.right; }
};

// Hopcroft-Karp: BFS layers from free left vertices, then vertex-disjoint
// shortest augmenting paths by DFS, repeated until no augmenting path exists.
inline Matching max_bipartite_matching(const BipartiteGraph& g) {
  constexpr int inf = std::numeric_limits<int>::max();
  Matching m;
  m.left_to_right.assign(g.left, -1);
  m.right_to_left.assign(g.right, -1);
  std::vector<int> dist(g.left);

  auto bfs = [&] {
    std::queue<int> q;
    for (int u = 0; u < g.left; ++u) {
      dist[u] = m.left_to_right[u] < 0 ? 0 : inf;
      if (dist[u] == 0) q.push(u);
    }
    bool found = false;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : g.adj[u]) {
        const int w = m.right_to_left[v];
        if (w < 0) {
          found = true;
        } else if (dist[w] == inf) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  };

  auto dfs = [&](auto&& self, int u) -> bool {
    for (int v : g.adj[u]) {
      const int w = m.right_to_left[v];
      if (w < 0 || (dist[w] == dist[u] + 1 && self(self, w))) {
        m.left_to_right[u] = v;
        m.right_to_left[v] = u;
        return true;
      }
    }
    dist[u] = inf;
    return false;
  };

  while (bfs()) {
    for (int u = 0; u < g.left; ++u) {
      if (m.left_to_right[u] < 0 && dfs(dfs, u)) ++m.size;
    }
  }
  return m;
}

}  // namespace runoff

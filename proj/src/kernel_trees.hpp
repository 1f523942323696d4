#pragma once

#include <array>

namespace cohengine::kernels::detail {

// States 0..3 = |00>, |01>, |10>, |11> (cold first). Directed edges:
//   0: 0->1 hot up     1: 1->0 hot down
//   2: 0->2 cold up    3: 2->0 cold down
//   4: 1->3 cold up    5: 3->1 cold down
//   6: 2->3 hot up     7: 3->2 hot down
//   8: 1->2 tape down  9: 2->1 tape up
inline constexpr int kStates = 4;
inline constexpr int kTrees = 8;
inline constexpr int kDirectedEdges = 10;

struct Edge {
  int a;
  int b;
};

// Undirected edge slots: {0,1}, {0,2}, {1,3}, {2,3}, {1,2}; edge u has directed ids 2u, 2u+1.
inline constexpr std::array<Edge, 5> kUndirected = {{{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 2}}};

inline constexpr std::array<std::array<int, 3>, kTrees> kSpanningTrees = {{
    {0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3},
    {4, 0, 2}, {4, 0, 3}, {4, 1, 2}, {4, 1, 3},
}};

using TreeTable = std::array<std::array<std::array<int, 3>, kTrees>, kStates>;

constexpr TreeTable make_oriented_trees() {
  TreeTable table{};
  for (int root = 0; root < kStates; ++root) {
    for (int t = 0; t < kTrees; ++t) {
      const auto& tree = kSpanningTrees[t];
      std::array<int, kStates> dist{};
      for (int s = 0; s < kStates; ++s) dist[s] = s == root ? 0 : 99;
      for (int pass = 0; pass < kStates; ++pass) {
        for (int e : tree) {
          const Edge ed = kUndirected[e];
          if (dist[ed.a] + 1 < dist[ed.b]) dist[ed.b] = dist[ed.a] + 1;
          if (dist[ed.b] + 1 < dist[ed.a]) dist[ed.a] = dist[ed.b] + 1;
        }
      }
      for (int k = 0; k < 3; ++k) {
        const int e = tree[k];
        const Edge ed = kUndirected[e];
        // Orient from the endpoint farther from the root.
        table[root][t][k] = dist[ed.a] > dist[ed.b] ? 2 * e : 2 * e + 1;
      }
    }
  }
  return table;
}

inline constexpr TreeTable kOrientedTrees = make_oriented_trees();

}  // namespace cohengine::kernels::detail

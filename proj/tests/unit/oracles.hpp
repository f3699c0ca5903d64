#pragma once

// Brute-force reference computations shared by the tests. Nothing here calls
// into the library's algorithms; only plain containers and the public value
// types are used.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

/// Every labelling of n points by values < base, lexicographic.
inline void for_each_tuple(int n, long long base, const std::function<void(const std::vector<long long>&)>& visit) {
  std::vector<long long> x(static_cast<std::size_t>(n), 0);
  while (true) {
    visit(x);
    int i = n - 1;
    while (i >= 0 && ++x[static_cast<std::size_t>(i)] == base) x[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return;
  }
}

/// Set partitions of {0..n-1} as sorted lists of sorted blocks, built by
/// inserting each element into an existing block or a new one.
inline std::vector<std::vector<std::vector<int>>> set_partitions(int n) {
  std::vector<std::vector<std::vector<int>>> out{{}};
  for (int v = 0; v < n; ++v) {
    std::vector<std::vector<std::vector<int>>> next;
    for (const auto& p : out) {
      for (std::size_t b = 0; b < p.size(); ++b) {
        auto q = p;
        q[b].push_back(v);
        next.push_back(q);
      }
      auto q = p;
      q.push_back({v});
      next.push_back(q);
    }
    out = std::move(next);
  }
  for (auto& p : out) std::sort(p.begin(), p.end());
  return out;
}

/// label[v] = index of v's block in a canonical block list.
inline std::vector<int> labels_of(int n, const std::vector<std::vector<int>>& blocks) {
  std::vector<int> l(static_cast<std::size_t>(n));
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int v : blocks[b]) l[static_cast<std::size_t>(v)] = static_cast<int>(b);
  return l;
}

/// Smallest vertex of each vertex's component, by repeated relaxation.
inline std::vector<int> component_roots(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> c(static_cast<std::size_t>(n));
  std::iota(c.begin(), c.end(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [a, b] : edges) {
      const int m = std::min(c[static_cast<std::size_t>(a)], c[static_cast<std::size_t>(b)]);
      if (c[static_cast<std::size_t>(a)] != m || c[static_cast<std::size_t>(b)] != m) {
        c[static_cast<std::size_t>(a)] = c[static_cast<std::size_t>(b)] = m;
        changed = true;
      }
    }
  }
  return c;
}

inline int component_count(int n, const std::vector<std::pair<int, int>>& edges) {
  const auto c = component_roots(n, edges);
  return static_cast<int>(std::set<int>(c.begin(), c.end()).size());
}

/// Bridges by deletion: an edge is a bridge iff removing it adds a component.
inline std::vector<int> bridges_by_deletion(int n, const std::vector<std::pair<int, int>>& edges) {
  const int base = component_count(n, edges);
  std::vector<int> out;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto rest = edges;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(e));
    if (component_count(n, rest) > base) out.push_back(static_cast<int>(e));
  }
  return out;
}

/// Canonical form of a loopless multigraph by trying all n! relabelings.
inline std::vector<std::pair<int, int>> canonical_by_permutations(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::pair<int, int>> best;
  bool first = true;
  do {
    std::vector<std::pair<int, int>> e;
    for (auto [a, b] : edges) {
      int x = p[static_cast<std::size_t>(a)], y = p[static_cast<std::size_t>(b)];
      e.emplace_back(std::min(x, y), std::max(x, y));
    }
    std::sort(e.begin(), e.end());
    if (first || e < best) best = e;
    first = false;
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

}  // namespace oracle

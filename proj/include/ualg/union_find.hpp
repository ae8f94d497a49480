// union_find.hpp
//
// Minimal union-find over {0..n-1}.  Merges keep the least element of a class
// as its root, so the structure converts directly into the canonical
// least-representative partition form without a relabeling pass.

#pragma once

#include <numeric>
#include <utility>
#include <vector>

namespace ualg {

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];  // path halving
      x = parent[x];
    }
    return x;
  }

  /// Merge the classes of a and b; returns true when they were distinct.
  /// The smaller element always becomes the root.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

}  // namespace ualg

#pragma once

#include <numeric>
#include <vector>

namespace plsplit {

/// Union-find with an optional Z/2 parity attached to each element
/// relative to its root.
class UnionFind {
 public:
  explicit UnionFind(int n = 0) : parent_(n), parity_(n, 0), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int size() const { return static_cast<int>(parent_.size()); }

  int find(int x) {
    int p = 0;
    return find(x, p);
  }
  /// Returns the root; `parity` receives the parity of x relative to it.
  int find(int x, int& parity) {
    int acc = 0;
    int r = x;
    while (parent_[r] != r) {
      acc ^= parity_[r];
      r = parent_[r];
    }
    // path compression, keeping parities consistent
    int cur = x;
    int cur_par = acc;
    while (parent_[cur] != cur) {
      int next = parent_[cur];
      int next_par = cur_par ^ parity_[cur];
      parent_[cur] = r;
      parity_[cur] = cur_par;
      cur = next;
      cur_par = next_par;
    }
    parity = acc;
    return r;
  }

  /// Merges with the constraint parity(a) ^ parity(b) == rel.
  /// Returns false if the constraint contradicts an earlier one.
  bool unite(int a, int b, int rel = 0) {
    int pa = 0, pb = 0;
    int ra = find(a, pa);
    int rb = find(b, pb);
    if (ra == rb) return ((pa ^ pb) == rel);
    if (rank_[ra] < rank_[rb]) {
      std::swap(ra, rb);
      std::swap(pa, pb);
    }
    parent_[rb] = ra;
    parity_[rb] = pa ^ pb ^ rel;
    if (rank_[ra] == rank_[rb]) ++rank_[ra];
    return true;
  }

  bool same(int a, int b) { return find(a) == find(b); }

  /// Dense relabelling of roots in order of first appearance.
  std::vector<int> labels(int* count = nullptr) {
    std::vector<int> root_label(parent_.size(), -1);
    std::vector<int> out(parent_.size());
    int next = 0;
    for (int i = 0; i < size(); ++i) {
      int r = find(i);
      if (root_label[r] < 0) root_label[r] = next++;
      out[i] = root_label[r];
    }
    if (count) *count = next;
    return out;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> parity_;
  std::vector<int> rank_;
};

}  // namespace plsplit

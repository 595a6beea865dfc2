#pragma once

// template part of moments.hpp

namespace tightmaps {

namespace detail {

template <class V>
V tree_value(const Tree& t, int i, const InverseSystem<V>& sys, const std::vector<int>& coord) {
  if (t.leaf >= 0) return sys.jinv(i, coord[t.leaf]);
  const int n = sys.dim;
  const int k = int(t.children.size());
  // child values for every bottom label
  std::vector<std::vector<V>> cv(k);
  for (int c = 0; c < k; ++c)
    for (int l = 0; l < n; ++l) cv[c].push_back(tree_value(t.children[c], l, sys, coord));
  const V zero = sys.jinv(0, 0) - sys.jinv(0, 0);
  V total = zero;
  for (int j = 0; j < n; ++j) {
    V inner = zero;
    std::vector<int> labels(k, 0);
    while (true) {
      V term = sys.deriv(j, labels);
      for (int c = 0; c < k; ++c) term = term * cv[c][labels[c]];
      inner = inner - term;
      int p = 0;
      while (p < k && ++labels[p] == n) labels[p++] = 0;
      if (p == k) break;
    }
    total = total + sys.jinv(i, j) * inner;
  }
  return total;
}

}  // namespace detail

template <class V>
V inverse_tree_differential(const InverseSystem<V>& sys, const std::vector<int>& c, int eps, int* tree_count) {
  if (int(c.size()) != sys.dim) throw Error(ErrorCode::InvalidIndex, "multi-index arity");
  std::vector<int> coord;
  for (int i = 0; i < sys.dim; ++i)
    for (int r = 0; r < c[i]; ++r) coord.push_back(i);
  const int k = int(coord.size());
  if (k < 1 || k > 4) throw Error(ErrorCode::InvalidRange, "tree enumeration supports 1 <= k <= 4");
  auto trees = planted_trees(k);
  if (tree_count) *tree_count = int(trees.size());
  V sum = sys.jinv(0, 0) - sys.jinv(0, 0);
  for (auto& t : trees) sum = sum + detail::tree_value(t, eps, sys, coord);
  return sum;
}

}  // namespace tightmaps

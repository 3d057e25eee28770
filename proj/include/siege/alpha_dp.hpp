#pragma once

// Optimal alphabetic codes by dynamic programming over split points.
//
// W(j,j) = w(j) and, for j < k,
//     W(j,k) = theta * opt_{j <= s < k} [ W(j,s) + W(s+1,k) ]
// with opt = max for theta < 1 and min for theta > 1. Each combine adds one
// edge above every leaf of the range, so W(0,n-1) is exactly
// sum w(i) theta^l(i) for the reconstructed tree.
//
// At theta = 1 the table holds the classic expected-length cost instead:
// W(j,j) = 0, W(j,k) = sum_{j..k} w + min_s [ W(j,s) + W(s+1,k) ].
//
// Knuth's split-monotonicity speedup does not carry over to theta != 1, so
// every split is scanned: O(n^3) time and O(n^2) space.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "siege/model.hpp"

namespace siege {

/// Upper-triangular table indexed by 0-based symbol ranges [j, k].
template <Scalar T>
class DpTable {
 public:
  explicit DpTable(std::size_t n) : n_(n), weight_(n * n), split_(n * n, -1) {}

  std::size_t size() const noexcept { return n_; }
  const T& weight(std::size_t j, std::size_t k) const { return weight_[j * n_ + k]; }
  T& weight(std::size_t j, std::size_t k) { return weight_[j * n_ + k]; }
  /// Last symbol of the left subtree of the optimal tree on [j, k]; -1 if j == k.
  int split(std::size_t j, std::size_t k) const { return split_[j * n_ + k]; }
  int& split(std::size_t j, std::size_t k) { return split_[j * n_ + k]; }

  friend bool operator==(const DpTable&, const DpTable&) = default;

 private:
  std::size_t n_;
  std::vector<T> weight_;
  std::vector<int> split_;
};

template <Scalar T>
struct AlphabeticCode {
  CodeTree<T> tree;
  LengthVector lengths;
  PrefixCode code;
  DpTable<T> table;
  /// sum w theta^l, or sum w l at theta = 1.
  T value;
};

template <Scalar T>
DpTable<T> alphabetic_table(const SourceDistribution<T>& w, const DecayParameter<T>& theta) {
  const std::size_t n = w.size();
  const T& th = theta.value();
  const bool linear = th == 1;
  const bool maximize = th < 1;
  DpTable<T> table(n);
  std::vector<T> prefix(n + 1, T(0));
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + w[i];
  for (std::size_t j = 0; j < n; ++j) table.weight(j, j) = linear ? T(0) : w[j];
  for (std::size_t span = 1; span < n; ++span) {
    for (std::size_t j = 0; j + span < n; ++j) {
      const std::size_t k = j + span;
      T best = table.weight(j, j) + table.weight(j + 1, k);
      std::size_t best_s = j;
      for (std::size_t s = j + 1; s < k; ++s) {
        T candidate = table.weight(j, s) + table.weight(s + 1, k);
        // Strict comparison keeps the smallest optimal split.
        bool better = maximize ? candidate > best : candidate < best;
        if (better) {
          best = std::move(candidate);
          best_s = s;
        }
      }
      table.weight(j, k) = linear ? T(best + prefix[k + 1] - prefix[j]) : T(th * best);
      table.split(j, k) = static_cast<int>(best_s);
    }
  }
  return table;
}

namespace detail {

template <Scalar T>
int build_range(CodeTree<T>& tree, const DpTable<T>& table, const SourceDistribution<T>& w, std::size_t j,
                std::size_t k) {
  if (j == k) return tree.add_leaf(static_cast<int>(j), w[j]);
  const auto s = static_cast<std::size_t>(table.split(j, k));
  int left = build_range(tree, table, w, j, s);
  int right = build_range(tree, table, w, s + 1, k);
  return tree.add_internal(left, right, table.weight(j, k), static_cast<int>(s) + 1);
}

}  // namespace detail

/// Optimal alphabetic code for any theta > 0.
template <Scalar T>
AlphabeticCode<T> build_alphabetic_optimal(const SourceDistribution<T>& w, const DecayParameter<T>& theta) {
  const std::size_t n = w.size();
  DpTable<T> table = alphabetic_table(w, theta);
  CodeTree<T> tree;
  tree.symbols = n;
  tree.root = detail::build_range(tree, table, w, 0, n - 1);
  T value = table.weight(0, n - 1);
  if (n == 1) {
    tree.root = tree.add_internal(tree.root, -1, theta.value() * w[0]);
    value = theta.value() == 1 ? w[0] : T(theta.value() * w[0]);
  }
  PrefixCode code = tree.code(true);
  LengthVector lengths = code.lengths();
  return {std::move(tree), std::move(lengths), std::move(code), std::move(table), std::move(value)};
}

struct SplitProbe {
  int split_full;    // root split on all n symbols (0-based, last symbol of left part)
  int split_prefix;  // root split on symbols 0..n-2
  int split_suffix;  // root split on symbols 1..n-1
  bool violated;
};

/// Checks whether the optimal root split of the full range lies between
/// the optimal root splits of its two (n-1)-symbol subranges.
template <Scalar T>
SplitProbe split_monotonicity_probe(const SourceDistribution<T>& w, const DecayParameter<T>& theta) {
  const std::size_t n = w.size();
  if (n < 3) throw Error(Errc::out_of_range, "split monotonicity probe needs at least 3 symbols");
  DpTable<T> table = alphabetic_table(w, theta);
  SplitProbe probe{table.split(0, n - 1), table.split(0, n - 2), table.split(1, n - 1), false};
  int lo = std::min(probe.split_prefix, probe.split_suffix);
  int hi = std::max(probe.split_prefix, probe.split_suffix);
  probe.violated = probe.split_full < lo || probe.split_full > hi;
  return probe;
}

}  // namespace siege

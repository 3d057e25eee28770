#pragma once

// Generalized Huffman coding: repeatedly combine the two lightest items x, y
// into one item of weight theta * (w(x) + w(y)). The resulting lengths
// optimize sum p(i) theta^l(i) for every theta > 0 (maximum below one,
// minimum above one) and are ordinary Huffman lengths at theta = 1.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <numeric>
#include <queue>
#include <string>
#include <vector>

#include "siege/model.hpp"

namespace siege {

enum class TieBreak {
  /// Equal weights resolved by the smallest original symbol index contained.
  by_index,
  /// Combined items rank below single symbols of equal weight.
  top_merge,
};

template <Scalar T>
struct MergeRecord {
  std::size_t step;
  int first;   // tree node id of the lighter item (leaves are 0..n-1)
  int second;  // tree node id of the heavier item
  T weight;    // theta * (w(first) + w(second))
};

template <Scalar T>
struct HuffmanCode {
  CodeTree<T> tree;
  LengthVector lengths;
  PrefixCode code;
  std::vector<MergeRecord<T>> merges;
};

namespace detail {

template <Scalar T>
struct HuffmanItem {
  T weight;
  int node;
  int min_symbol;
};

// Two-queue selection: leaves presorted ascending, combined items are
// produced in nondecreasing weight order, so the lighter front is the minimum.
template <Scalar T>
void merge_two_queues(CodeTree<T>& tree, std::vector<MergeRecord<T>>& merges, const T& theta,
                      std::vector<HuffmanItem<T>> leaves) {
  std::deque<HuffmanItem<T>> singles(leaves.begin(), leaves.end());
  std::deque<HuffmanItem<T>> combined;
  auto pop_min = [&]() {
    bool take_combined = !combined.empty() &&
                         (singles.empty() || combined.front().weight <= singles.front().weight);
    auto& q = take_combined ? combined : singles;
    HuffmanItem<T> item = std::move(q.front());
    q.pop_front();
    return item;
  };
  while (singles.size() + combined.size() > 1) {
    HuffmanItem<T> x = pop_min();
    HuffmanItem<T> y = pop_min();
    T w = theta * (x.weight + y.weight);
    int id = tree.add_internal(y.node, x.node, w);
    merges.push_back({merges.size(), x.node, y.node, w});
    combined.push_back({w, id, std::min(x.min_symbol, y.min_symbol)});
  }
}

template <Scalar T>
void merge_by_index(CodeTree<T>& tree, std::vector<MergeRecord<T>>& merges, const T& theta,
                    std::vector<HuffmanItem<T>> leaves) {
  auto heavier = [](const HuffmanItem<T>& a, const HuffmanItem<T>& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.min_symbol > b.min_symbol;
  };
  std::priority_queue<HuffmanItem<T>, std::vector<HuffmanItem<T>>, decltype(heavier)> heap(
      heavier, std::move(leaves));
  while (heap.size() > 1) {
    HuffmanItem<T> x = heap.top();
    heap.pop();
    HuffmanItem<T> y = heap.top();
    heap.pop();
    T w = theta * (x.weight + y.weight);
    int id = tree.add_internal(y.node, x.node, w);
    merges.push_back({merges.size(), x.node, y.node, w});
    heap.push({w, id, std::min(x.min_symbol, y.min_symbol)});
  }
}

}  // namespace detail

/// Builds an optimal (nonalphabetic) code for the exponential objective.
/// Weights need not be normalized; the root weight of the returned tree is
/// exactly sum w(i) theta^l(i).
template <Scalar T>
HuffmanCode<T> build_exponential_huffman(const SourceDistribution<T>& weights, const DecayParameter<T>& theta,
                                         TieBreak tiebreak = TieBreak::top_merge) {
  const std::size_t n = weights.size();
  HuffmanCode<T> out;
  out.tree.symbols = n;
  std::vector<detail::HuffmanItem<T>> leaves;
  leaves.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    int id = out.tree.add_leaf(static_cast<int>(i), weights[i]);
    leaves.push_back({weights[i], id, static_cast<int>(i)});
  }
  if (n == 1) {
    // Lengths are positive, so the lone symbol still sits one edge below the root.
    out.tree.root = out.tree.add_internal(0, -1, theta.value() * weights[0]);
  } else {
    std::stable_sort(leaves.begin(), leaves.end(),
                     [](const auto& a, const auto& b) { return a.weight < b.weight; });
    if (tiebreak == TieBreak::top_merge) {
      detail::merge_two_queues(out.tree, out.merges, theta.value(), std::move(leaves));
    } else {
      detail::merge_by_index(out.tree, out.merges, theta.value(), std::move(leaves));
    }
    out.tree.root = static_cast<int>(out.tree.nodes.size()) - 1;
  }
  out.code = out.tree.code();
  out.lengths = out.code.lengths();
  return out;
}

struct UnaryCode {
  LengthVector lengths;
  PrefixCode code;
};

/// (0, 10, 110, ..., 1..10, 1..11); optimal whenever theta <= 1/2.
inline UnaryCode unary_code(std::size_t n) {
  if (n == 0) throw Error(Errc::empty_input, "unary code needs at least one symbol");
  std::vector<std::string> words;
  words.reserve(n);
  if (n == 1) {
    words.emplace_back("0");
  } else {
    for (std::size_t i = 0; i + 1 < n; ++i) words.push_back(std::string(i, '1') + '0');
    words.push_back(std::string(n - 1, '1'));
  }
  PrefixCode code(std::move(words), true);
  return {code.lengths(), code};
}

}  // namespace siege

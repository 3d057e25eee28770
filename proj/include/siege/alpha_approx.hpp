#pragma once

// Fast near-optimal alphabetic codes.
//
// Any length vector with Kraft sum <= 1/2 admits an alphabetic code, so
// adding one bit to an optimal nonalphabetic code already lands within one
// unit of penalty of the optimum. The refined procedure only lengthens the
// "minimal points" (interior local minima of the length profile), builds the
// canonical alphabetic code for those lengths, then contracts every node
// with a single child so the final code has Kraft sum exactly 1.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "siege/exp_huffman.hpp"
#include "siege/model.hpp"
#include "siege/renyi_bounds.hpp"

namespace siege {

/// ceil(-alpha log2 p(i) + log2 sum_j p(j)^alpha). Needs theta > 1/2.
template <Scalar T>
LengthVector shannon_like_lengths(const SourceDistribution<T>& p, const DecayParameter<T>& theta) {
  detail::check_normalized(p);
  const double alpha = theta.alpha();
  const auto probs = p.probabilities();
  double sum = 0;
  for (double x : probs) sum += std::pow(x, alpha);
  const double log_sum = std::log2(sum);

  auto lengths_for = [&](bool snap) {
    std::vector<int> l;
    l.reserve(probs.size());
    for (double x : probs) {
      double e = -alpha * std::log2(x) + log_sum;
      double r = std::round(e);
      // Exact integers (uniform sources, dyadic probabilities) must not be
      // pushed up a whole bit by rounding noise.
      if (snap && std::abs(e - r) <= 1e-9 * std::max(1.0, std::abs(e))) e = r;
      l.push_back(std::max(1, static_cast<int>(std::ceil(e))));
    }
    return LengthVector(std::move(l));
  };
  LengthVector l = lengths_for(true);
  if (l.kraft_sum() > 1) l = lengths_for(false);
  if (l.kraft_sum() > 1) throw Error(Errc::invariant_violation, "Shannon-like lengths violate Kraft");
  return l;
}

/// Canonical alphabetic assignment: the first codeword is l(1) zeros; each
/// next codeword increments the previous one truncated to l(i) bits, or
/// increments it and pads with zeros when l(i) grows.
inline PrefixCode canonical_alphabetic_codewords(const LengthVector& l) {
  std::vector<std::string> words;
  words.reserve(l.size());
  words.emplace_back(static_cast<std::size_t>(l[0]), '0');
  for (std::size_t i = 1; i < l.size(); ++i) {
    std::string c = words.back();
    const auto len = static_cast<std::size_t>(l[i]);
    if (len < c.size()) c.resize(len);
    std::size_t pos = c.size();
    while (pos > 0 && c[pos - 1] == '1') c[--pos] = '0';
    if (pos == 0) {
      throw Error(Errc::overflow, "no alphabetic codeword of length " + std::to_string(len) + " for symbol " +
                                      std::to_string(i + 1));
    }
    c[pos - 1] = '1';
    if (len > c.size()) c.append(len - c.size(), '0');
    words.push_back(std::move(c));
  }
  return PrefixCode(std::move(words), true);
}

/// Canonical alphabetic code on l + 1; feasible whenever Kraft(l) <= 1.
inline PrefixCode add_one_alphabetic(const LengthVector& l_non) {
  if (l_non.kraft_sum() > 1) throw Error(Errc::out_of_range, "lengths violate the Kraft inequality");
  std::vector<int> l = l_non.values();
  for (int& x : l) ++x;
  return canonical_alphabetic_codewords(LengthVector(std::move(l)));
}

struct MinimalPointSet {
  std::vector<std::size_t> indices;  // 0-based, ascending
  bool contains(std::size_t i) const { return std::binary_search(indices.begin(), indices.end(), i); }
};

/// Interior runs strictly below both neighbours. Each such run contributes
/// its lightest member (smallest index on ties); runs touching either end
/// never qualify.
template <Scalar T>
MinimalPointSet minimal_points(const LengthVector& l, const std::vector<T>& weights) {
  if (l.size() != weights.size()) throw Error(Errc::length_mismatch, "lengths and weights differ in size");
  MinimalPointSet m;
  const std::size_t n = l.size();
  std::size_t a = 0;
  while (a < n) {
    std::size_t b = a;
    while (b + 1 < n && l[b + 1] == l[a]) ++b;
    if (a > 0 && b + 1 < n && l[a - 1] > l[a] && l[b + 1] > l[b]) {
      std::size_t best = a;
      for (std::size_t j = a + 1; j <= b; ++j) {
        if (weights[j] < weights[best]) best = j;
      }
      m.indices.push_back(best);
    }
    a = b + 1;
  }
  return m;
}

/// Contracts every single-child node to a fixed point. Lengths never grow,
/// order is preserved and the result has Kraft sum 1 (n >= 2).
inline PrefixCode compact_tree(const PrefixCode& code) {
  CodeTrie trie(code);
  std::vector<std::string> words(code.size());
  std::vector<std::pair<int, std::string>> stack{{trie.root(), ""}};
  while (!stack.empty()) {
    auto [id, prefix] = std::move(stack.back());
    stack.pop_back();
    const auto& node = trie.node(id);
    if (node.symbol >= 0) {
      words[static_cast<std::size_t>(node.symbol)] = prefix.empty() ? "0" : prefix;
      continue;
    }
    const int zero = node.child[0];
    const int one = node.child[1];
    if (zero >= 0 && one >= 0) {
      stack.emplace_back(one, prefix + '1');
      stack.emplace_back(zero, prefix + '0');
    } else {
      stack.emplace_back(zero >= 0 ? zero : one, prefix);
    }
  }
  return PrefixCode(std::move(words), code.alphabetic());
}

enum class ApproxBase { shannon, huffman };

struct NearOptimalAlphabetic {
  PrefixCode code;
  LengthVector lengths;
  LengthVector base_lengths;         // nonalphabetic starting point
  LengthVector preliminary_lengths;  // after lengthening minimal points
  MinimalPointSet minimal;
  bool used_fallback = false;        // canonical construction overflowed
  double penalty = 0;                // of the returned code
  double huffman_penalty = 0;        // optimal nonalphabetic penalty
};

template <Scalar T>
NearOptimalAlphabetic near_optimal_alphabetic(const SourceDistribution<T>& weights, const DecayParameter<T>& theta,
                                              ApproxBase base = ApproxBase::huffman) {
  const SourceDistribution<T> p = weights.normalize();
  const LengthVector huff = build_exponential_huffman(p, theta, TieBreak::top_merge).lengths;
  NearOptimalAlphabetic out;
  out.base_lengths = base == ApproxBase::huffman ? huff : shannon_like_lengths(p, theta);
  out.minimal = minimal_points(out.base_lengths, p.weights());
  std::vector<int> pre = out.base_lengths.values();
  for (std::size_t i : out.minimal.indices) ++pre[i];
  out.preliminary_lengths = LengthVector(std::move(pre));
  PrefixCode preliminary;
  try {
    preliminary = canonical_alphabetic_codewords(out.preliminary_lengths);
  } catch (const Error& e) {
    if (e.code() != Errc::overflow) throw;
    out.used_fallback = true;
    preliminary = add_one_alphabetic(out.base_lengths);
  }
  out.code = compact_tree(preliminary);
  out.lengths = out.code.lengths();
  out.penalty = normalized_penalty(p, out.lengths, theta);
  out.huffman_penalty = normalized_penalty(p, huff, theta);
  return out;
}

}  // namespace siege

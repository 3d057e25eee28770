#pragma once

// Domain types shared by every algorithm in the library: source
// distributions, the decay parameter theta, codeword length vectors, prefix
// codes and code trees, plus the objective evaluators.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "siege/scalar.hpp"

namespace siege {

/// Ordered, strictly positive symbol weights. Index i (0-based) is symbol i+1.
template <Scalar T>
class SourceDistribution {
 public:
  explicit SourceDistribution(std::vector<T> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw Error(Errc::empty_input, "distribution has no symbols");
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      if (!(weights_[i] > 0)) {
        throw Error(Errc::nonpositive_weight,
                    "weight of symbol " + std::to_string(i + 1) + " is not strictly positive");
      }
    }
    total_ = std::accumulate(weights_.begin(), weights_.end(), T(0));
    if constexpr (is_exact_v<T>) {
      normalized_ = total_ == 1;
    } else {
      normalized_ = std::abs(total_ - 1.0) <= 1e-12;
    }
  }

  std::size_t size() const noexcept { return weights_.size(); }
  const T& operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<T>& weights() const noexcept { return weights_; }
  const T& total() const noexcept { return total_; }
  bool normalized() const noexcept { return normalized_; }

  SourceDistribution normalize() const {
    if (normalized_) return *this;
    std::vector<T> p;
    p.reserve(weights_.size());
    for (const auto& w : weights_) p.push_back(w / total_);
    return SourceDistribution(std::move(p));
  }

  SourceDistribution scaled(const T& factor) const {
    std::vector<T> w;
    w.reserve(weights_.size());
    for (const auto& x : weights_) w.push_back(x * factor);
    return SourceDistribution(std::move(w));
  }

  std::vector<double> probabilities() const {
    std::vector<double> p;
    p.reserve(weights_.size());
    for (const auto& w : weights_) p.push_back(to_double<T>(w / total_));
    return p;
  }

 private:
  std::vector<T> weights_;
  T total_{};
  bool normalized_ = false;
};

enum class Regime { trivial, siege, linear_limit, risk_averse };

inline std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::trivial: return "trivial";
    case Regime::siege: return "siege";
    case Regime::linear_limit: return "linear-limit";
    case Regime::risk_averse: return "risk-averse";
  }
  return "?";
}

/// theta > 0. The objective sum p(i) theta^l(i) is maximized for theta < 1,
/// minimized for theta > 1, and degenerates to expected length at theta = 1.
template <Scalar T>
class DecayParameter {
 public:
  explicit DecayParameter(T theta) : theta_(std::move(theta)) {
    if (!(theta_ > 0)) throw Error(Errc::out_of_range, "theta must be positive");
  }

  const T& value() const noexcept { return theta_; }
  double as_double() const { return to_double(theta_); }

  Regime regime() const {
    if (theta_ * 2 <= 1) return Regime::trivial;
    if (theta_ < 1) return Regime::siege;
    if (theta_ == 1) return Regime::linear_limit;
    return Regime::risk_averse;
  }

  bool maximizes() const { return theta_ < 1; }

  /// Renyi order 1/log2(2 theta); only defined above one half.
  double alpha() const {
    if (theta_ * 2 <= 1) throw Error(Errc::out_of_range, "alpha is undefined for theta <= 1/2");
    if (theta_ == 1) return 1.0;
    return 1.0 / (1.0 + std::log2(as_double()));
  }

 private:
  T theta_;
};

/// Codeword lengths l(1..n), each at least one.
class LengthVector {
 public:
  LengthVector() = default;
  explicit LengthVector(std::vector<int> lengths) : lengths_(std::move(lengths)) {
    if (lengths_.empty()) throw Error(Errc::empty_input, "length vector is empty");
    for (int l : lengths_) {
      if (l < 1) throw Error(Errc::invalid_length, "codeword lengths must be >= 1");
    }
  }
  LengthVector(std::initializer_list<int> lengths) : LengthVector(std::vector<int>(lengths)) {}

  std::size_t size() const noexcept { return lengths_.size(); }
  int operator[](std::size_t i) const { return lengths_[i]; }
  const std::vector<int>& values() const noexcept { return lengths_; }
  auto begin() const noexcept { return lengths_.begin(); }
  auto end() const noexcept { return lengths_.end(); }
  int max() const { return *std::max_element(lengths_.begin(), lengths_.end()); }
  int min() const { return *std::min_element(lengths_.begin(), lengths_.end()); }

  Rational kraft_sum() const;
  bool feasible() const { return kraft_sum() <= 1; }

  friend bool operator==(const LengthVector&, const LengthVector&) = default;
  friend auto operator<=>(const LengthVector&, const LengthVector&) = default;

 private:
  std::vector<int> lengths_;
};

/// Exact sum of 2^-l(i).
inline Rational kraft_sum(std::span<const int> lengths) {
  if (lengths.empty()) return Rational(0);
  int deepest = *std::max_element(lengths.begin(), lengths.end());
  BigInt numerator = 0;
  for (int l : lengths) numerator += BigInt(1) << (deepest - l);
  return Rational(numerator, BigInt(1) << deepest);
}

inline Rational LengthVector::kraft_sum() const { return siege::kraft_sum(lengths_); }

/// Bit-string codewords for symbols 1..n. Construction validates
/// prefix-freeness, and lexicographic order when flagged alphabetic.
class PrefixCode {
 public:
  PrefixCode() = default;
  explicit PrefixCode(std::vector<std::string> codewords, bool alphabetic = false)
      : words_(std::move(codewords)), alphabetic_(alphabetic) {
    if (words_.empty()) throw Error(Errc::empty_input, "code has no codewords");
    for (const auto& w : words_) {
      if (w.empty()) throw Error(Errc::invalid_length, "empty codeword");
      if (w.find_first_not_of("01") != std::string::npos) {
        throw Error(Errc::parse_error, "codeword '" + w + "' is not a bit string");
      }
    }
    if (!is_prefix_free(words_)) throw Error(Errc::not_prefix_free, "codewords are not prefix-free");
    if (alphabetic_ && !is_alphabetic(words_)) {
      throw Error(Errc::not_alphabetic, "codewords are not in lexicographic order");
    }
  }

  static bool is_prefix_free(std::vector<std::string> words) {
    std::sort(words.begin(), words.end());
    for (std::size_t i = 1; i < words.size(); ++i) {
      if (words[i].starts_with(words[i - 1])) return false;
    }
    return true;
  }

  static bool is_alphabetic(const std::vector<std::string>& words) {
    return std::adjacent_find(words.begin(), words.end(),
                              [](const auto& a, const auto& b) { return !(a < b); }) == words.end();
  }

  std::size_t size() const noexcept { return words_.size(); }
  const std::string& operator[](std::size_t i) const { return words_[i]; }
  const std::vector<std::string>& codewords() const noexcept { return words_; }
  bool alphabetic() const noexcept { return alphabetic_; }

  LengthVector lengths() const {
    std::vector<int> l;
    l.reserve(words_.size());
    for (const auto& w : words_) l.push_back(static_cast<int>(w.size()));
    return LengthVector(std::move(l));
  }

  friend bool operator==(const PrefixCode&, const PrefixCode&) = default;

 private:
  std::vector<std::string> words_;
  bool alphabetic_ = false;
};

/// Rooted binary tree with labeled leaves. Node 0..n-1 need not be leaves;
/// `root` indexes into `nodes`. Left edges read as 0, right edges as 1.
template <Scalar T>
struct CodeTree {
  struct Node {
    int left = -1;
    int right = -1;
    int symbol = -1;  // 0-based symbol for leaves
    int split = -1;   // alphabetic trees: last symbol (1-based) of the left subtree
    T weight{};
    bool is_leaf() const { return symbol >= 0; }
  };

  std::vector<Node> nodes;
  int root = -1;
  std::size_t symbols = 0;

  int add_leaf(int symbol, T weight) {
    nodes.push_back(Node{-1, -1, symbol, -1, std::move(weight)});
    return static_cast<int>(nodes.size()) - 1;
  }

  int add_internal(int left, int right, T weight, int split = -1) {
    nodes.push_back(Node{left, right, -1, split, std::move(weight)});
    return static_cast<int>(nodes.size()) - 1;
  }

  /// Codeword of every symbol, read off root-to-leaf paths.
  std::vector<std::string> codewords() const {
    std::vector<std::string> words(symbols);
    std::vector<std::pair<int, std::string>> stack{{root, ""}};
    while (!stack.empty()) {
      auto [id, prefix] = std::move(stack.back());
      stack.pop_back();
      const Node& node = nodes[static_cast<std::size_t>(id)];
      if (node.is_leaf()) {
        // A lone leaf at the root still needs a one-bit codeword.
        words[static_cast<std::size_t>(node.symbol)] = prefix.empty() ? "0" : prefix;
        continue;
      }
      if (node.right >= 0) stack.emplace_back(node.right, prefix + '1');
      if (node.left >= 0) stack.emplace_back(node.left, prefix + '0');
    }
    return words;
  }

  LengthVector lengths() const {
    std::vector<int> l;
    for (const auto& w : codewords()) l.push_back(static_cast<int>(w.size()));
    return LengthVector(std::move(l));
  }

  PrefixCode code(bool alphabetic = false) const { return PrefixCode(codewords(), alphabetic); }

  std::vector<int> in_order_symbols() const {
    std::vector<int> order;
    std::vector<int> stack;
    int cur = root;
    while (cur >= 0 || !stack.empty()) {
      while (cur >= 0) {
        stack.push_back(cur);
        cur = nodes[static_cast<std::size_t>(cur)].left;
      }
      cur = stack.back();
      stack.pop_back();
      const Node& node = nodes[static_cast<std::size_t>(cur)];
      if (node.is_leaf()) order.push_back(node.symbol);
      cur = node.right;
    }
    return order;
  }

  bool has_unary_node() const {
    return std::any_of(nodes.begin(), nodes.end(), [](const Node& n) {
      return !n.is_leaf() && ((n.left < 0) != (n.right < 0));
    });
  }
};

namespace detail {

template <Scalar T>
void check_sizes(const SourceDistribution<T>& p, const LengthVector& l) {
  if (p.size() != l.size()) {
    throw Error(Errc::length_mismatch, "distribution has " + std::to_string(p.size()) +
                                           " symbols but length vector has " + std::to_string(l.size()));
  }
}

template <Scalar T>
void check_normalized(const SourceDistribution<T>& p) {
  if (!p.normalized()) throw Error(Errc::not_normalized, "probabilities do not sum to 1");
}

}  // namespace detail

/// sum w(i) theta^l(i) over raw (possibly unnormalized) weights.
template <Scalar T>
T exponential_weight(const SourceDistribution<T>& w, const LengthVector& l, const DecayParameter<T>& theta) {
  detail::check_sizes(w, l);
  std::vector<T> powers(static_cast<std::size_t>(l.max()) + 1);
  powers[0] = T(1);
  for (std::size_t d = 1; d < powers.size(); ++d) powers[d] = powers[d - 1] * theta.value();
  T sum(0);
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * powers[static_cast<std::size_t>(l[i])];
  return sum;
}

/// P[l(X) <= T] for a geometric window T, i.e. sum p(i) theta^l(i).
template <Scalar T>
T success_probability(const SourceDistribution<T>& p, const LengthVector& l, const DecayParameter<T>& theta) {
  detail::check_sizes(p, l);
  detail::check_normalized(p);
  return exponential_weight(p, l, theta);
}

template <Scalar T>
T expected_length(const SourceDistribution<T>& p, const LengthVector& l) {
  detail::check_sizes(p, l);
  T sum(0);
  for (std::size_t i = 0; i < p.size(); ++i) sum += p[i] * T(l[i]);
  return sum;
}

/// log_theta sum p(i) theta^l(i); expected length at theta = 1. Lower is
/// better in every regime.
template <Scalar T>
double normalized_penalty(const SourceDistribution<T>& p, const LengthVector& l, const DecayParameter<T>& theta) {
  detail::check_sizes(p, l);
  detail::check_normalized(p);
  if (theta.value() == 1) return to_double(expected_length(p, l));
  return std::log(to_double(exponential_weight(p, l, theta))) / std::log(theta.as_double());
}

enum class WindowMode { independent, constant };

/// Expected number of windows until the message gets through: the reciprocal
/// of the success probability when every window carries a fresh message, and
/// sum p(i) theta^-l(i) when the same message is retried each window.
template <Scalar T>
T expected_windows(const SourceDistribution<T>& p, const LengthVector& l, const DecayParameter<T>& theta,
                   WindowMode mode) {
  if (!(theta.value() < 1)) throw Error(Errc::out_of_range, "expected windows need theta in (0,1)");
  if (mode == WindowMode::independent) return T(1) / success_probability(p, l, theta);
  detail::check_sizes(p, l);
  detail::check_normalized(p);
  T sum(0);
  for (std::size_t i = 0; i < p.size(); ++i) sum += p[i] * ipow(theta.value(), -static_cast<long>(l[i]));
  return sum;
}

/// Binary trie over a prefix code; shared by decoding and tree compaction.
class CodeTrie {
 public:
  struct Node {
    int child[2] = {-1, -1};
    int symbol = -1;
  };

  explicit CodeTrie(const PrefixCode& code) {
    nodes_.emplace_back();
    for (std::size_t s = 0; s < code.size(); ++s) {
      int cur = 0;
      for (char bit : code[s]) {
        int b = bit - '0';
        if (nodes_[static_cast<std::size_t>(cur)].child[b] < 0) {
          nodes_[static_cast<std::size_t>(cur)].child[b] = static_cast<int>(nodes_.size());
          nodes_.emplace_back();
        }
        cur = nodes_[static_cast<std::size_t>(cur)].child[b];
      }
      nodes_[static_cast<std::size_t>(cur)].symbol = static_cast<int>(s);
    }
  }

  const Node& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  int root() const { return 0; }

 private:
  std::vector<Node> nodes_;
};

/// Concatenates codewords; symbols are 1-based.
inline std::string encode(std::span<const int> message, const PrefixCode& code) {
  std::string bits;
  for (int s : message) {
    if (s < 1 || static_cast<std::size_t>(s) > code.size()) {
      throw Error(Errc::unknown_symbol, "symbol " + std::to_string(s) + " is outside 1.." +
                                            std::to_string(code.size()));
    }
    bits += code[static_cast<std::size_t>(s - 1)];
  }
  return bits;
}

inline std::vector<int> decode(std::string_view bits, const PrefixCode& code) {
  CodeTrie trie(code);
  std::vector<int> message;
  int cur = trie.root();
  for (std::size_t pos = 0; pos < bits.size(); ++pos) {
    char bit = bits[pos];
    if (bit != '0' && bit != '1') throw Error(Errc::parse_error, "bit string contains non-binary character");
    int next = trie.node(cur).child[bit - '0'];
    if (next < 0) {
      throw Error(Errc::unmatchable_bits, "bits at offset " + std::to_string(pos) + " match no codeword");
    }
    cur = next;
    if (trie.node(cur).symbol >= 0) {
      message.push_back(trie.node(cur).symbol + 1);
      cur = trie.root();
    }
  }
  if (cur != trie.root()) throw Error(Errc::dangling_bits, "bit string ends inside a codeword");
  return message;
}

}  // namespace siege

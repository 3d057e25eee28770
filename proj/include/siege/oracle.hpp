#pragma once

// Brute-force optima for small instances. Nothing here shares code with the
// Huffman or dynamic-programming builders; it only evaluates the objective
// on every candidate and keeps the best.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "siege/model.hpp"

namespace siege {

inline constexpr std::size_t kOracleMaxSymbols = 12;

template <Scalar T>
struct OptimumSet {
  /// sum w theta^l (sum w l at theta = 1) shared by every member.
  T value;
  /// Every optimal length vector, in symbol order, sorted and deduplicated.
  std::vector<LengthVector> optima;

  bool contains(const LengthVector& l) const { return std::binary_search(optima.begin(), optima.end(), l); }
  bool any_with_first_length(std::size_t symbol, int length) const {
    return std::any_of(optima.begin(), optima.end(), [&](const LengthVector& l) { return l[symbol] == length; });
  }
};

namespace detail {

template <Scalar T>
class OptimumTracker {
 public:
  explicit OptimumTracker(const T& theta) : maximize_(theta < 1) {}

  // Returns true when `value` ties or beats the incumbent.
  bool offer(const T& value) {
    if (!best_ || (maximize_ ? value > *best_ : value < *best_)) {
      best_ = value;
      members_.clear();
      return true;
    }
    return value == *best_;
  }
  void keep(std::vector<int> lengths) { members_.push_back(std::move(lengths)); }
  const T& best() const { return *best_; }
  const std::vector<std::vector<int>>& members() const { return members_; }

 private:
  bool maximize_;
  std::optional<T> best_;
  std::vector<std::vector<int>> members_;
};

template <Scalar T>
std::vector<T> depth_weights(const T& theta, int max_depth) {
  std::vector<T> pw(static_cast<std::size_t>(max_depth) + 1);
  pw[0] = T(1);
  for (std::size_t d = 1; d < pw.size(); ++d) pw[d] = theta == 1 ? T(static_cast<long>(d)) : T(pw[d - 1] * theta);
  return pw;
}

inline void check_oracle_size(std::size_t n) {
  if (n > kOracleMaxSymbols) {
    throw Error(Errc::too_large, "exhaustive search is limited to " + std::to_string(kOracleMaxSymbols) + " symbols");
  }
}

}  // namespace detail

/// Searches every nondecreasing Kraft-feasible length multiset with entries
/// in [1, max_len], laid onto the symbols by decreasing weight (a heavier
/// symbol never needs a longer codeword), then spreads each optimum over
/// all permutations within groups of equal weight.
template <Scalar T>
OptimumSet<T> exhaustive_nonalphabetic_optimum(const SourceDistribution<T>& w, const DecayParameter<T>& theta,
                                               std::optional<int> max_len = std::nullopt) {
  const std::size_t n = w.size();
  detail::check_oracle_size(n);
  const int limit = max_len.value_or(std::max<int>(1, static_cast<int>(n) - 1));
  int min_needed = 1;
  while ((std::size_t{1} << min_needed) < n) ++min_needed;
  if (limit < min_needed) throw Error(Errc::out_of_range, "max_len is too small to hold a prefix code");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });

  const std::vector<T> pw = detail::depth_weights(theta.value(), limit);
  detail::OptimumTracker<T> tracker(theta.value());
  std::vector<int> seq(n);
  const std::uint64_t budget = std::uint64_t{1} << limit;

  // Kraft budget counted in units of 2^-limit.
  std::function<void(std::size_t, int, std::uint64_t, T)> descend = [&](std::size_t pos, int min_len,
                                                                        std::uint64_t used, T partial) {
    if (pos == n) {
      if (tracker.offer(partial)) tracker.keep(seq);
      return;
    }
    for (int l = min_len; l <= limit; ++l) {
      const std::uint64_t cost = std::uint64_t{1} << (limit - l);
      // Every later symbol still needs at least one unit (length <= limit).
      if (used + cost + (n - pos - 1) > budget) continue;
      seq[pos] = l;
      descend(pos + 1, l, used + cost, partial + w[order[pos]] * pw[static_cast<std::size_t>(l)]);
    }
  };
  descend(0, 1, 0, T(0));

  std::set<LengthVector> all;
  for (const auto& sorted_lengths : tracker.members()) {
    std::vector<std::vector<int>> groups;
    for (std::size_t a = 0; a < n;) {
      std::size_t b = a;
      while (b < n && w[order[b]] == w[order[a]]) ++b;
      groups.emplace_back(sorted_lengths.begin() + static_cast<long>(a), sorted_lengths.begin() + static_cast<long>(b));
      a = b;
    }
    std::function<void(std::size_t, std::size_t, std::vector<int>&)> expand = [&](std::size_t g, std::size_t offset,
                                                                                  std::vector<int>& lengths) {
      if (g == groups.size()) {
        all.insert(LengthVector(lengths));
        return;
      }
      std::vector<int> perm = groups[g];
      std::sort(perm.begin(), perm.end());
      do {
        for (std::size_t i = 0; i < perm.size(); ++i) lengths[order[offset + i]] = perm[i];
        expand(g + 1, offset + perm.size(), lengths);
      } while (std::next_permutation(perm.begin(), perm.end()));
    };
    std::vector<int> lengths(n);
    expand(0, 0, lengths);
  }
  return {tracker.best(), std::vector<LengthVector>(all.begin(), all.end())};
}

/// Calls visit(depths) once for every ordered full binary tree with n
/// leaves (Catalan(n-1) calls); a tree is identified by its leaf depths.
/// A single leaf is reported at depth 1.
template <class Visit>
void for_each_ordered_tree(std::size_t n, Visit&& visit) {
  if (n == 0) throw Error(Errc::empty_input, "no symbols");
  std::vector<int> depth(n, 1);
  if (n == 1) {
    visit(std::as_const(depth));
    return;
  }
  struct Range {
    std::size_t lo, hi;
    int depth;
  };
  std::vector<Range> pending{{0, n - 1, 0}};
  std::function<void()> grow = [&]() {
    if (pending.empty()) {
      visit(std::as_const(depth));
      return;
    }
    Range r = pending.back();
    pending.pop_back();
    if (r.lo == r.hi) {
      depth[r.lo] = r.depth;
      grow();
    } else {
      for (std::size_t s = r.lo; s < r.hi; ++s) {
        pending.push_back({s + 1, r.hi, r.depth + 1});
        pending.push_back({r.lo, s, r.depth + 1});
        grow();
        pending.pop_back();
        pending.pop_back();
      }
    }
    pending.push_back(r);
  };
  grow();
}

/// Evaluates every ordered full binary tree on the symbols.
template <Scalar T>
OptimumSet<T> exhaustive_alphabetic_optimum(const SourceDistribution<T>& w, const DecayParameter<T>& theta) {
  const std::size_t n = w.size();
  detail::check_oracle_size(n);
  const std::vector<T> pw = detail::depth_weights(theta.value(), std::max<int>(1, static_cast<int>(n) - 1));
  detail::OptimumTracker<T> tracker(theta.value());
  for_each_ordered_tree(n, [&](const std::vector<int>& depth) {
    T value(0);
    for (std::size_t i = 0; i < n; ++i) value += w[i] * pw[static_cast<std::size_t>(depth[i])];
    if (tracker.offer(value)) tracker.keep(depth);
  });
  std::set<LengthVector> all;
  for (const auto& d : tracker.members()) all.insert(LengthVector(d));
  return {tracker.best(), std::vector<LengthVector>(all.begin(), all.end())};
}

}  // namespace siege

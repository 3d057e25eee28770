#pragma once

// Shared fixtures for the test suites: reference distributions and seeded
// random instance generators.

#include <cstdint>
#include <random>
#include <vector>

#include "siege/siege.hpp"

namespace siege::test {

using R = Rational;

inline std::vector<double> benford_probs() {
  return benford<double>().weights();
}

inline std::uint64_t uniform_int(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

/// Integer weights in [1, max_weight], normalized to exact probabilities.
inline SourceDistribution<R> random_distribution(std::mt19937_64& rng, std::size_t n, long max_weight = 20) {
  std::vector<R> w;
  for (std::size_t i = 0; i < n; ++i) w.emplace_back(static_cast<long>(uniform_int(rng, 1, max_weight)));
  return SourceDistribution<R>(std::move(w)).normalize();
}

inline const std::vector<R>& sweep_thetas() {
  static const std::vector<R> thetas{R(51, 100), R(3, 5), R(3, 4), R(9, 10), R(99, 100), R(3, 2), R(2)};
  return thetas;
}

inline const std::vector<R>& siege_thetas() {
  static const std::vector<R> thetas{R(51, 100), R(3, 5), R(3, 4), R(9, 10), R(99, 100)};
  return thetas;
}

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(uniform_int(rng, 0, v.size() - 1))];
}

/// Distribution whose most probable symbol (index 0) meets the one-bit
/// threshold 2 theta / (2 theta + 3).
inline SourceDistribution<R> random_heavy_head(std::mt19937_64& rng, std::size_t n, const R& theta) {
  std::vector<R> rest;
  R rest_total = 0;
  R rest_max = 0;
  for (std::size_t i = 1; i < n; ++i) {
    R w(static_cast<long>(uniform_int(rng, 1, 20)));
    rest_total += w;
    rest_max = std::max(rest_max, w);
    rest.push_back(w);
  }
  const R threshold = theta * 2 / (theta * 2 + 3);
  R head = std::max(rest_max, R(threshold * rest_total / (1 - threshold)));
  head += R(static_cast<long>(uniform_int(rng, 0, 20)));
  std::vector<R> w{head};
  w.insert(w.end(), rest.begin(), rest.end());
  return SourceDistribution<R>(std::move(w)).normalize();
}

}  // namespace siege::test

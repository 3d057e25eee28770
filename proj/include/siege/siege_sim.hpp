#pragma once

// Monte Carlo check of the geometric window model.
//
// Generator: std::mt19937_64 seeded with the 64-bit seed. Uniforms on (0,1)
// are (x >> 11 + 0.5) * 2^-53 of its raw output, windows are drawn by
// inverse CDF t = floor(ln U / ln theta), symbols by binary search on the
// cumulative distribution. With threads == 1 a report is a pure function of
// (inputs, trials, seed). With more threads, trials are split across
// streams seeded by splitmix64(seed + k), which is reproducible for a fixed
// thread count but not bit-identical to the sequential run.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <thread>
#include <vector>

#include "siege/model.hpp"

namespace siege {

using Rng = std::mt19937_64;

inline double uniform_open(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Draws T with P(T = t) = (1 - theta) theta^t.
inline std::uint64_t sample_window(double theta, Rng& rng) {
  if (!(theta > 0 && theta < 1)) throw Error(Errc::out_of_range, "window sampling needs theta in (0,1)");
  const double t = std::floor(std::log(uniform_open(rng)) / std::log(theta));
  constexpr double cap = 0x1.0p62;
  return t >= cap ? static_cast<std::uint64_t>(cap) : static_cast<std::uint64_t>(t);
}

struct SimReport {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double estimate = 0;
  double standard_error = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const SimReport&, const SimReport&) = default;
};

struct WindowsReport {
  std::uint64_t trials = 0;
  double mean_windows = 0;
  double standard_error = 0;
  std::uint64_t censored = 0;  // trials that hit the per-trial window cap
  std::uint64_t seed = 0;

  friend bool operator==(const WindowsReport&, const WindowsReport&) = default;
};

inline constexpr std::uint64_t kMaxWindowsPerTrial = 1'000'000;

namespace detail {

class SymbolSampler {
 public:
  explicit SymbolSampler(const std::vector<double>& probs) : cdf_(probs.size()) {
    double acc = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) cdf_[i] = acc += probs[i];
    // Rounding in the running sum must not leave a gap below 1.
    cdf_.back() = std::numeric_limits<double>::infinity();
  }
  std::size_t operator()(Rng& rng) const {
    const double u = uniform_open(rng);
    return static_cast<std::size_t>(std::upper_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
  }

 private:
  std::vector<double> cdf_;
};

// Runs body(rng, count) over `threads` independent streams and returns the
// per-stream results in stream order.
template <class Result, class Body>
std::vector<Result> run_streams(std::uint64_t trials, std::uint64_t seed, unsigned threads, Body body) {
  threads = std::max(1u, threads);
  if (threads == 1) {
    Rng rng(seed);
    return {body(rng, trials)};
  }
  std::vector<Result> results(threads);
  std::vector<std::jthread> workers;
  for (unsigned k = 0; k < threads; ++k) {
    const std::uint64_t share = trials / threads + (k < trials % threads ? 1 : 0);
    workers.emplace_back([&, k, share] {
      Rng rng(splitmix64(seed + k));
      results[k] = body(rng, share);
    });
  }
  workers.clear();
  return results;
}

template <Scalar T>
void check_alphabet(const SourceDistribution<T>& p, const PrefixCode& code) {
  if (p.size() != code.size()) {
    throw Error(Errc::length_mismatch, "code has " + std::to_string(code.size()) + " codewords for " +
                                           std::to_string(p.size()) + " symbols");
  }
}

}  // namespace detail

/// Draws X ~ p and an independent window T per trial; success iff l(X) <= T.
template <Scalar T>
SimReport simulate_siege(const SourceDistribution<T>& p, const PrefixCode& code, const DecayParameter<T>& theta,
                         std::uint64_t trials, std::uint64_t seed, unsigned threads = 1) {
  detail::check_alphabet(p, code);
  if (trials == 0) throw Error(Errc::out_of_range, "need at least one trial");
  const double th = theta.as_double();
  if (!(th > 0 && th < 1)) throw Error(Errc::out_of_range, "simulation needs theta in (0,1)");
  const auto sampler = detail::SymbolSampler(p.probabilities());
  const LengthVector lengths = code.lengths();

  auto counts = detail::run_streams<std::uint64_t>(trials, seed, threads, [&](Rng& rng, std::uint64_t count) {
    std::uint64_t ok = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
      const auto x = sampler(rng);
      const auto t = sample_window(th, rng);
      if (static_cast<std::uint64_t>(lengths[x]) <= t) ++ok;
    }
    return ok;
  });
  SimReport r;
  r.trials = trials;
  r.seed = seed;
  for (auto c : counts) r.successes += c;
  r.estimate = static_cast<double>(r.successes) / static_cast<double>(trials);
  r.standard_error = std::sqrt(r.estimate * (1 - r.estimate) / static_cast<double>(trials));
  return r;
}

/// Counts windows until the first success, restarting transmission in every
/// window. Independent mode draws a fresh message per window; constant mode
/// fixes the message for the whole trial.
template <Scalar T>
WindowsReport simulate_repeated_windows(const SourceDistribution<T>& p, const PrefixCode& code,
                                        const DecayParameter<T>& theta, std::uint64_t trials, std::uint64_t seed,
                                        WindowMode mode, unsigned threads = 1) {
  detail::check_alphabet(p, code);
  if (trials == 0) throw Error(Errc::out_of_range, "need at least one trial");
  const double th = theta.as_double();
  if (!(th > 0 && th < 1)) throw Error(Errc::out_of_range, "simulation needs theta in (0,1)");
  const auto sampler = detail::SymbolSampler(p.probabilities());
  const LengthVector lengths = code.lengths();

  struct Partial {
    double sum = 0;
    double sum_sq = 0;
    std::uint64_t censored = 0;
  };
  auto parts = detail::run_streams<Partial>(trials, seed, threads, [&](Rng& rng, std::uint64_t count) {
    Partial acc;
    for (std::uint64_t i = 0; i < count; ++i) {
      auto x = sampler(rng);
      std::uint64_t windows = 0;
      bool done = false;
      while (!done && windows < kMaxWindowsPerTrial) {
        ++windows;
        if (mode == WindowMode::independent && windows > 1) x = sampler(rng);
        done = static_cast<std::uint64_t>(lengths[x]) <= sample_window(th, rng);
      }
      if (!done) ++acc.censored;
      const auto w = static_cast<double>(windows);
      acc.sum += w;
      acc.sum_sq += w * w;
    }
    return acc;
  });
  Partial total;
  for (const auto& part : parts) {
    total.sum += part.sum;
    total.sum_sq += part.sum_sq;
    total.censored += part.censored;
  }
  WindowsReport r;
  r.trials = trials;
  r.seed = seed;
  r.censored = total.censored;
  const auto n = static_cast<double>(trials);
  r.mean_windows = total.sum / n;
  const double var = trials > 1 ? std::max(0.0, (total.sum_sq - n * r.mean_windows * r.mean_windows) / (n - 1)) : 0.0;
  r.standard_error = std::sqrt(var / n);
  return r;
}

}  // namespace siege

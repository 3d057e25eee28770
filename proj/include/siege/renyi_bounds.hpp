#pragma once

// Renyi-entropy bounds on the optimal success probability. With
// alpha = 1/log2(2 theta) and theta in (1/2, 1):
//
//     theta^(H_alpha + 1) < max_l sum p theta^l <= theta^H_alpha
//
// and when the most likely symbol has p(1) >= 2 theta / (2 theta + 3) some
// optimal code gives it a one-bit codeword, which tightens the lower bound.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "siege/model.hpp"

namespace siege {

inline double alpha_order(double theta) {
  if (!(theta > 0.5)) throw Error(Errc::out_of_range, "alpha is undefined for theta <= 1/2");
  if (theta == 1.0) return 1.0;
  return 1.0 / (1.0 + std::log2(theta));
}

/// H_alpha(p) in bits; the Shannon entropy at alpha = 1.
template <Scalar T>
double renyi_entropy(const SourceDistribution<T>& p, double alpha) {
  if (!(alpha > 0)) throw Error(Errc::out_of_range, "Renyi order must be positive");
  detail::check_normalized(p);
  const auto probs = p.probabilities();
  if (alpha == 1.0) {
    double h = 0;
    for (double x : probs) h -= x * std::log2(x);
    return std::max(h, 0.0);
  }
  double sum = 0;
  for (double x : probs) sum += std::pow(x, alpha);
  return std::max(std::log2(sum) / (1.0 - alpha), 0.0);
}

struct SuccessBounds {
  double lower;
  double upper;
};

namespace detail {

template <Scalar T>
void require_siege_regime(const DecayParameter<T>& theta) {
  if (theta.regime() != Regime::siege) throw Error(Errc::out_of_range, "requires theta in (1/2, 1)");
}

template <Scalar T>
T largest(const SourceDistribution<T>& p) {
  return *std::max_element(p.weights().begin(), p.weights().end());
}

}  // namespace detail

template <Scalar T>
SuccessBounds success_bounds(const SourceDistribution<T>& p, const DecayParameter<T>& theta) {
  detail::require_siege_regime(theta);
  const double th = theta.as_double();
  const double h = renyi_entropy(p, theta.alpha());
  return {std::pow(th, h + 1.0), std::pow(th, h)};
}

/// True when p(1) >= 2 theta / (2 theta + 3); then some optimal code assigns
/// the most probable symbol a single bit. Only sound for theta < 1.
template <Scalar T>
bool short_codeword_guarantee(const SourceDistribution<T>& p, const DecayParameter<T>& theta) {
  detail::require_siege_regime(theta);
  detail::check_normalized(p);
  const T& th = theta.value();
  return detail::largest(p) * (th * 2 + 3) >= th * 2;
}

/// theta^2 [theta^(alpha H) - p(1)^alpha]^(1/alpha) + theta p(1), a strict
/// lower bound on the success of any code with l(1) = 1.
template <Scalar T>
double corollary_lower_bound(const SourceDistribution<T>& p, const DecayParameter<T>& theta) {
  detail::require_siege_regime(theta);
  const double th = theta.as_double();
  const double alpha = theta.alpha();
  const double h = renyi_entropy(p, alpha);
  const double p1 = to_double(detail::largest(p));
  const double bracket = std::pow(th, alpha * h) - std::pow(p1, alpha);
  if (bracket < 0) throw Error(Errc::not_applicable, "one-bit lower bound is not applicable (negative bracket)");
  return th * th * std::pow(bracket, 1.0 / alpha) + th * p1;
}

struct BoundsReport {
  double alpha;
  double entropy;
  double lower;         // best available lower bound
  double upper;
  double simple_lower;  // theta^(H + 1)
  std::optional<double> corollary_lower;
  bool theorem1_applies;
};

template <Scalar T>
BoundsReport bounds_report(const SourceDistribution<T>& p, const DecayParameter<T>& theta) {
  const auto simple = success_bounds(p, theta);
  BoundsReport r{theta.alpha(), renyi_entropy(p, theta.alpha()), simple.lower, simple.upper, simple.lower,
                 std::nullopt, short_codeword_guarantee(p, theta)};
  if (r.theorem1_applies) {
    try {
      r.corollary_lower = corollary_lower_bound(p, theta);
      r.lower = std::max(r.lower, *r.corollary_lower);
    } catch (const Error& e) {
      if (e.code() != Errc::not_applicable) throw;
    }
  }
  return r;
}

/// Four-symbol family whose optimum is (2,2,2,2) although p(1) sits just
/// below the one-bit threshold: p(1) = 2 theta/(2 theta + 3) - 3 eps, the
/// rest 1/(2 theta + 3) + eps, for eps in (0, (2 theta - 1)/(8 theta + 12)).
template <Scalar T>
SourceDistribution<T> tightness_family(const DecayParameter<T>& theta, const T& eps) {
  detail::require_siege_regime(theta);
  const T& th = theta.value();
  const T limit = (th * 2 - 1) / (th * 8 + 12);
  if (!(eps > 0) || !(eps < limit)) {
    throw Error(Errc::out_of_range, "epsilon must lie strictly inside (0, (2 theta - 1)/(8 theta + 12))");
  }
  const T denom = th * 2 + 3;
  const T rest = T(1) / denom + eps;
  return SourceDistribution<T>({T(th * 2 / denom - eps * 3), rest, rest, rest});
}

}  // namespace siege

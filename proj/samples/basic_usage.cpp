// Builds the optimal code, the optimal alphabetic code and the fast
// approximation for a small source, and prints how likely each one is to
// get through a geometric window with theta = 3/4.

#include <iostream>

#include "siege/siege.hpp"

int main() {
  using siege::Rational;
  const siege::SourceDistribution<Rational> p = siege::parse_weights<Rational>("8 1 9 6 2").normalize();
  const siege::DecayParameter<Rational> theta(Rational(3, 4));

  const auto huffman = siege::build_exponential_huffman(p, theta);
  const auto alpha = siege::build_alphabetic_optimal(p, theta);
  const auto approx = siege::near_optimal_alphabetic(p, theta);

  auto show = [&](const char* name, const siege::PrefixCode& code) {
    std::cout << name << ":";
    for (const auto& w : code.codewords()) std::cout << ' ' << w;
    std::cout << "  success " << siege::to_double(siege::success_probability(p, code.lengths(), theta)) << '\n';
  };
  show("huffman     ", huffman.code);
  show("alphabetic  ", alpha.code);
  show("approximate ", approx.code);
  return 0;
}

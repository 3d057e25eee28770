#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "siege/alpha_dp.hpp"
#include "siege/exp_huffman.hpp"
#include "siege/oracle.hpp"
#include "support.hpp"

using namespace siege;
using siege::test::R;

TEST(AlphaDp, TwoSymbolsHaveOneTree) {
  for (R th : {R(3, 10), R(3, 5), R(1), R(2)}) {
    DecayParameter<R> theta(th);
    SourceDistribution<R> w({R(7), R(2)});
    auto a = build_alphabetic_optimal(w, theta);
    EXPECT_EQ(a.lengths, (LengthVector{1, 1}));
    EXPECT_EQ(a.code.codewords(), (std::vector<std::string>{"0", "1"}));
    EXPECT_EQ(a.table.split(0, 1), 0);
    if (th != 1) {
      // Root identity: sum p theta^l = theta (p(1) + p(2)) = W(1,2).
      EXPECT_EQ(a.value, th * (w[0] + w[1]));
      EXPECT_EQ(a.value, exponential_weight(w, a.lengths, theta));
    }
  }
}

TEST(AlphaDp, UniformFour) {
  auto a = build_alphabetic_optimal(uniform<R>(4), DecayParameter<R>(R(9, 10)));
  EXPECT_EQ(a.lengths, (LengthVector{2, 2, 2, 2}));
  EXPECT_EQ(a.value, R(81, 100));
}

TEST(AlphaDp, KnuthCounterexampleMatchesOracle) {
  auto w = parse_weights<R>("8 1 9 6");
  DecayParameter<R> theta(R(3, 5));
  auto a = build_alphabetic_optimal(w, theta);
  auto best = exhaustive_alphabetic_optimum(w, theta);
  EXPECT_EQ(a.value, best.value);
  EXPECT_EQ(a.value, R(228, 25));
  EXPECT_TRUE(best.contains(a.lengths));
  EXPECT_EQ(a.value, exponential_weight(w, a.lengths, theta));
}

TEST(AlphaDp, SingleSymbol) {
  auto a = build_alphabetic_optimal(SourceDistribution<R>({R(1)}), DecayParameter<R>(R(3, 4)));
  EXPECT_EQ(a.lengths, LengthVector{1});
  EXPECT_EQ(a.value, R(3, 4));
}

TEST(SplitProbe, CounterexampleAtSixTenths) {
  auto pr = split_monotonicity_probe(parse_weights<R>("8 1 9 6"), DecayParameter<R>(R(3, 5)));
  EXPECT_EQ(pr.split_full, 0);
  EXPECT_EQ(pr.split_prefix, 1);
  EXPECT_EQ(pr.split_suffix, 2);
  EXPECT_TRUE(pr.violated);
}

TEST(SplitProbe, HoldsAtThetaOne) {
  auto pr = split_monotonicity_probe(parse_weights<R>("8 1 9 6"), DecayParameter<R>(R(1)));
  EXPECT_EQ(pr.split_full, 1);
  EXPECT_EQ(pr.split_prefix, 1);
  EXPECT_EQ(pr.split_suffix, 2);
  EXPECT_FALSE(pr.violated);
}

TEST(SplitProbe, UniformNeverViolates) {
  for (R th : {R(3, 5), R(9, 10), R(1), R(2)}) {
    EXPECT_FALSE(split_monotonicity_probe(parse_weights<R>("1 1 1 1"), DecayParameter<R>(th)).violated);
  }
  EXPECT_THROW(split_monotonicity_probe(parse_weights<R>("1 1"), DecayParameter<R>(R(1, 2))), Error);
}

TEST(SplitProbe, MonotoneForLinearCostOnRandomInstances) {
  // Knuth's property holds for the classic expected-length problem.
  std::mt19937_64 rng(41);
  for (int i = 0; i < 300; ++i) {
    auto w = test::random_distribution(rng, test::uniform_int(rng, 3, 12));
    EXPECT_FALSE(split_monotonicity_probe(w, DecayParameter<R>(R(1))).violated);
  }
}

TEST(AlphaDp, EveryCellIsTheSubrangeOptimum) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = test::uniform_int(rng, 2, 8);
    auto w = test::random_distribution(rng, n);
    DecayParameter<R> theta(test::pick(rng, test::sweep_thetas()));
    auto table = alphabetic_table(w, theta);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        std::vector<R> sub(w.weights().begin() + static_cast<long>(j), w.weights().begin() + static_cast<long>(k) + 1);
        auto best = exhaustive_alphabetic_optimum(SourceDistribution<R>(sub), theta);
        EXPECT_EQ(table.weight(j, k), best.value) << "range " << j << ".." << k;
      }
    }
  }
}

TEST(AlphaDp, ThetaOneIsExpectedLength) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = test::uniform_int(rng, 2, 9);
    auto p = test::random_distribution(rng, n);
    DecayParameter<R> theta(R(1));
    auto a = build_alphabetic_optimal(p, theta);
    EXPECT_EQ(a.value, expected_length(p, a.lengths));
    EXPECT_EQ(a.value, exhaustive_alphabetic_optimum(p, theta).value);
  }
}

TEST(AlphaDp, DominatedByNonalphabeticAndSandwiched) {
  std::mt19937_64 rng(44);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = test::uniform_int(rng, 1, 20);
    auto p = test::random_distribution(rng, n);
    DecayParameter<R> theta(test::pick(rng, test::sweep_thetas()));
    auto a = build_alphabetic_optimal(p, theta);
    auto h = build_exponential_huffman(p, theta);
    EXPECT_TRUE(PrefixCode::is_alphabetic(a.code.codewords()));
    if (theta.value() < 1) {
      EXPECT_LE(success_probability(p, a.lengths, theta), success_probability(p, h.lengths, theta));
    }
    const double l_alpha = normalized_penalty(p, a.lengths, theta);
    const double l_huff = normalized_penalty(p, h.lengths, theta);
    EXPECT_LE(l_huff, l_alpha + 1e-9);
    EXPECT_LE(l_alpha, l_huff + 1 + 1e-9);
  }
}

TEST(AlphaDp, TreeIsAlphabeticWithSplitLabels) {
  auto a = build_alphabetic_optimal(parse_weights<double>("5 1 1 7 2 2 9 3"), DecayParameter<double>(0.7));
  std::vector<int> expected(8);
  for (int i = 0; i < 8; ++i) expected[static_cast<std::size_t>(i)] = i;
  EXPECT_EQ(a.tree.in_order_symbols(), expected);
  const auto& root = a.tree.nodes[static_cast<std::size_t>(a.tree.root)];
  EXPECT_EQ(root.split, a.table.split(0, 7) + 1);
}

TEST(AlphaDp, Deterministic) {
  std::mt19937_64 rng(45);
  auto w = test::random_distribution(rng, 15);
  DecayParameter<R> theta(R(3, 4));
  EXPECT_EQ(alphabetic_table(w, theta), alphabetic_table(w, theta));
}

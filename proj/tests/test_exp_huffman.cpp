#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "siege/exp_huffman.hpp"
#include "siege/oracle.hpp"
#include "siege/renyi_bounds.hpp"
#include "support.hpp"

using namespace siege;
using siege::test::R;

TEST(ExpHuffman, BenfordOptimalLengths) {
  EXPECT_EQ(build_exponential_huffman(benford<double>(), DecayParameter<double>(0.9)).lengths,
            (LengthVector{2, 2, 3, 3, 4, 4, 4, 5, 5}));
  EXPECT_EQ(build_exponential_huffman(benford<double>(), DecayParameter<double>(0.6)).lengths,
            (LengthVector{1, 2, 3, 4, 5, 6, 7, 8, 8}));
  EXPECT_EQ(build_exponential_huffman(benford<R>(), DecayParameter<R>(R(9, 10))).lengths,
            (LengthVector{2, 2, 3, 3, 4, 4, 4, 5, 5}));
}

TEST(ExpHuffman, RiskAverseCounterexample) {
  auto p = parse_weights<R>("0.55 0.15 0.15 0.15");
  EXPECT_EQ(build_exponential_huffman(p, DecayParameter<R>(R(2))).lengths, (LengthVector{2, 2, 2, 2}));
}

TEST(ExpHuffman, UniformAndTightnessFamily) {
  EXPECT_EQ(build_exponential_huffman(uniform<R>(4), DecayParameter<R>(R(9, 10))).lengths,
            (LengthVector{2, 2, 2, 2}));
  DecayParameter<R> theta(R(3, 4));
  auto p = tightness_family(theta, R(1, 100));
  EXPECT_EQ(build_exponential_huffman(p, theta).lengths, (LengthVector{2, 2, 2, 2}));
}

TEST(ExpHuffman, SingleSymbol) {
  auto h = build_exponential_huffman(SourceDistribution<R>({R(1)}), DecayParameter<R>(R(3, 4)));
  EXPECT_EQ(h.lengths, LengthVector{1});
  EXPECT_EQ(h.code.codewords(), std::vector<std::string>{"0"});
  EXPECT_TRUE(h.merges.empty());
  EXPECT_EQ(h.tree.nodes[static_cast<std::size_t>(h.tree.root)].weight, R(3, 4));
}

TEST(ExpHuffman, RootWeightIsTheObjectiveAndMergesFollowTheRule) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = test::uniform_int(rng, 2, 15);
    auto w = test::random_distribution(rng, n).scaled(R(static_cast<long>(test::uniform_int(rng, 1, 50))));
    DecayParameter<R> theta(test::pick(rng, test::sweep_thetas()));
    for (auto tb : {TieBreak::top_merge, TieBreak::by_index}) {
      auto h = build_exponential_huffman(w, theta, tb);
      ASSERT_EQ(h.merges.size(), n - 1);
      const auto& nodes = h.tree.nodes;
      for (const auto& m : h.merges) {
        EXPECT_EQ(m.weight, theta.value() * (nodes[static_cast<std::size_t>(m.first)].weight +
                                             nodes[static_cast<std::size_t>(m.second)].weight));
        EXPECT_LE(nodes[static_cast<std::size_t>(m.first)].weight, nodes[static_cast<std::size_t>(m.second)].weight);
      }
      EXPECT_EQ(nodes[static_cast<std::size_t>(h.tree.root)].weight, exponential_weight(w, h.lengths, theta));
      EXPECT_EQ(h.lengths.kraft_sum(), R(1));
    }
  }
}

TEST(ExpHuffman, MonotoneAssignment) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = test::uniform_int(rng, 2, 25);
    auto p = test::random_distribution(rng, n, 30);
    DecayParameter<R> theta(test::pick(rng, test::sweep_thetas()));
    auto l = build_exponential_huffman(p, theta).lengths;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (p[a] > p[b]) {
          EXPECT_LE(l[a], l[b]);
        }
      }
    }
  }
}

TEST(ExpHuffman, TrivialRegimeMatchesUnary) {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = test::uniform_int(rng, 1, 12);
    auto p = test::random_distribution(rng, n);
    for (R th : {R(1, 2), R(2, 5), R(1, 10)}) {
      DecayParameter<R> theta(th);
      auto l = build_exponential_huffman(p, theta).lengths;
      // Unary lengths go to the symbols in decreasing probability order.
      std::vector<std::size_t> order(n);
      for (std::size_t k = 0; k < n; ++k) order[k] = k;
      std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return p[a] > p[b]; });
      auto u = unary_code(n).lengths;
      std::vector<int> assigned(n);
      for (std::size_t k = 0; k < n; ++k) assigned[order[k]] = u[k];
      EXPECT_EQ(success_probability(p, l, theta), success_probability(p, LengthVector(assigned), theta));
    }
  }
}

TEST(ExpHuffman, ScaleInvariance) {
  std::mt19937_64 rng(34);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = test::uniform_int(rng, 1, 20);
    auto p = test::random_distribution(rng, n);
    DecayParameter<R> theta(test::pick(rng, test::sweep_thetas()));
    const R c(static_cast<long>(test::uniform_int(rng, 1, 1000)), static_cast<long>(test::uniform_int(rng, 1, 1000)));
    for (auto tb : {TieBreak::top_merge, TieBreak::by_index}) {
      EXPECT_EQ(build_exponential_huffman(p, theta, tb).lengths, build_exponential_huffman(p.scaled(c), theta, tb).lengths);
    }
  }
}

TEST(ExpHuffman, Deterministic) {
  auto p = parse_weights<double>("1 1 1 1 2 2 3 3 3");
  DecayParameter<double> theta(0.8);
  for (auto tb : {TieBreak::top_merge, TieBreak::by_index}) {
    auto a = build_exponential_huffman(p, theta, tb);
    auto b = build_exponential_huffman(p, theta, tb);
    EXPECT_EQ(a.code, b.code);
  }
}

TEST(ExpHuffman, TopMergePrefersCombinedItemsOnTies) {
  // Weights (2,1,1,1,1) at theta = 1: after two merges the items {2, 2m, 2m}
  // tie. Top-merge joins the two combined items and leaves the single 2 at
  // depth 1; ordering by symbol index pairs symbol 1 with a combined item.
  auto p = parse_weights<R>("2 1 1 1 1");
  EXPECT_EQ(build_exponential_huffman(p, DecayParameter<R>(R(1)), TieBreak::top_merge).lengths,
            (LengthVector{1, 3, 3, 3, 3}));
  EXPECT_EQ(build_exponential_huffman(p, DecayParameter<R>(R(1)), TieBreak::by_index).lengths,
            (LengthVector{2, 3, 3, 2, 2}));
  // Both have expected length 14/6; the top-merge code does better below 1.
  DecayParameter<R> theta(R(9, 10));
  auto pn = p.normalize();
  EXPECT_GT(success_probability(pn, LengthVector{1, 3, 3, 3, 3}, theta),
            success_probability(pn, LengthVector{2, 3, 3, 2, 2}, theta));
}

TEST(ExpHuffman, MatchesOracleOnSmallInstances) {
  std::mt19937_64 rng(35);
  for (int i = 0; i < 150; ++i) {
    const std::size_t n = test::uniform_int(rng, 2, 7);
    auto p = test::random_distribution(rng, n);
    DecayParameter<R> theta(test::pick(rng, test::sweep_thetas()));
    auto best = exhaustive_nonalphabetic_optimum(p, theta);
    for (auto tb : {TieBreak::top_merge, TieBreak::by_index}) {
      auto h = build_exponential_huffman(p, theta, tb);
      EXPECT_EQ(exponential_weight(p, h.lengths, theta), best.value);
      EXPECT_TRUE(best.contains(h.lengths));
    }
  }
}

TEST(ExpHuffman, OneBitGuaranteeConsistency) {
  std::mt19937_64 rng(36);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = test::uniform_int(rng, 2, 7);
    const R th = test::pick(rng, std::vector<R>{R(3, 5), R(3, 4), R(9, 10)});
    auto p = test::random_heavy_head(rng, n, th);
    DecayParameter<R> theta(th);
    ASSERT_TRUE(short_codeword_guarantee(p, theta));
    EXPECT_TRUE(exhaustive_nonalphabetic_optimum(p, theta).any_with_first_length(0, 1));
  }
}

TEST(UnaryCode, Examples) {
  auto u3 = unary_code(3);
  EXPECT_EQ(u3.lengths, (LengthVector{1, 2, 2}));
  EXPECT_EQ(u3.code.codewords(), (std::vector<std::string>{"0", "10", "11"}));
  EXPECT_EQ(unary_code(5).lengths, (LengthVector{1, 2, 3, 4, 4}));
  EXPECT_EQ(unary_code(1).code.codewords(), std::vector<std::string>{"0"});
  for (std::size_t n = 2; n < 20; ++n) EXPECT_EQ(unary_code(n).lengths.kraft_sum(), R(1));
  EXPECT_THROW(unary_code(0), Error);
}

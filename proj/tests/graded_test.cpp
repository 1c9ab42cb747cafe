#include <gtest/gtest.h>

#include <random>

#include "infalg/graded.hpp"

using namespace infalg;

TEST(BidegreePairing, Examples) {
  Bidegree a{Parity(1), 0}, b{Parity(0), 1}, z{Parity(0), 0}, c{Parity(1), 1};
  EXPECT_EQ(bidegree_pairing(a, b, Pairing::usual), Parity(0));
  EXPECT_EQ(bidegree_pairing(a, b, Pairing::good), Parity(1));
  for (auto kind : {Pairing::usual, Pairing::good}) {
    EXPECT_EQ(bidegree_pairing(z, a, kind), Parity(0));
    EXPECT_EQ(bidegree_pairing(z, c, kind), Parity(0));
    EXPECT_EQ(bidegree_pairing(c, c, kind), Parity(0));
  }
}

TEST(BidegreePairing, Symmetric) {
  for (int k = 0; k < 2; ++k)
    for (int m = -3; m < 4; ++m)
      for (int l = 0; l < 2; ++l)
        for (int n = -3; n < 4; ++n) {
          Bidegree x{Parity(k), m}, y{Parity(l), n};
          for (auto kind : {Pairing::usual, Pairing::good})
            EXPECT_EQ(bidegree_pairing(x, y, kind), bidegree_pairing(y, x, kind));
        }
}

TEST(KoszulSign, Examples) {
  EXPECT_EQ(koszul_sign({0, 1, 2}, {Parity(1), Parity(1), Parity(0)}), 1);
  EXPECT_EQ(koszul_sign({1, 0}, {Parity(1), Parity(1)}), -1);
  EXPECT_EQ(koszul_sign({1, 0}, {Parity(0), Parity(0)}), 1);
  EXPECT_EQ(exterior_sign({1, 0}, {Parity(1), Parity(1)}), 1);
  EXPECT_EQ(exterior_sign({1, 0}, {Parity(0), Parity(0)}), -1);
  EXPECT_THROW(koszul_sign({0, 1}, {Parity(0)}), std::invalid_argument);
  EXPECT_THROW(koszul_sign({0, 0}, {Parity(0), Parity(0)}), std::invalid_argument);
}

// Reordering by rho, then by sigma, equals reordering by the composite
// (u_i = v_{rho[sigma[i]]}), with the parities carried along.
TEST(KoszulSign, MultiplicativeOverComposition) {
  std::mt19937 rng(7);
  for (int n = 1; n <= 5; ++n) {
    for (int trial = 0; trial < 60; ++trial) {
      Permutation sigma(n), rho(n);
      for (int i = 0; i < n; ++i) sigma[i] = rho[i] = i;
      std::shuffle(sigma.begin(), sigma.end(), rng);
      std::shuffle(rho.begin(), rho.end(), rng);
      std::vector<Parity> par(n);
      for (auto& p : par) p = Parity(static_cast<int>(rng() % 2));
      std::vector<Parity> permuted(n);
      for (int i = 0; i < n; ++i) permuted[i] = par[rho[i]];
      Permutation composite(n);
      for (int i = 0; i < n; ++i) composite[i] = rho[sigma[i]];
      EXPECT_EQ(koszul_sign(composite, par), koszul_sign(sigma, permuted) * koszul_sign(rho, par));
    }
  }
}

TEST(Unshuffles, Examples) {
  auto u11 = unshuffles(1, 1);
  ASSERT_EQ(u11.size(), 2u);
  EXPECT_EQ(u11[0], (Permutation{0, 1}));
  EXPECT_EQ(u11[1], (Permutation{1, 0}));
  auto u21 = unshuffles(2, 1);
  ASSERT_EQ(u21.size(), 3u);
  EXPECT_EQ(u21[0], (Permutation{0, 1, 2}));
  EXPECT_EQ(u21[1], (Permutation{0, 2, 1}));
  EXPECT_EQ(u21[2], (Permutation{1, 2, 0}));
  EXPECT_EQ(unshuffles(0, 4), (std::vector<Permutation>{{0, 1, 2, 3}}));
}

TEST(Unshuffles, CountsAndMonotone) {
  for (int k = 0; k <= 8; ++k)
    for (int l = 0; k + l <= 8; ++l) {
      auto all = unshuffles(k, l);
      EXPECT_EQ(static_cast<long long>(all.size()), binomial(k + l, k));
      for (const auto& s : all) {
        for (int i = 0; i + 1 < k; ++i) EXPECT_LT(s[i], s[i + 1]);
        for (int i = k; i + 1 < k + l; ++i) EXPECT_LT(s[i], s[i + 1]);
      }
      EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
    }
}

TEST(CanonicalizeExterior, Examples) {
  auto sp = make_space({{"x", Parity(0)}, {"y", Parity(0)}, {"t", Parity(1)}});
  auto a = canonicalize_exterior(*sp, std::vector<std::string>{"x", "y"});
  ASSERT_TRUE(a);
  EXPECT_EQ(a->tuple, (std::vector<int>{0, 1}));
  EXPECT_EQ(a->sign, 1);
  auto b = canonicalize_exterior(*sp, std::vector<std::string>{"y", "x"});
  ASSERT_TRUE(b);
  EXPECT_EQ(b->sign, -1);
  EXPECT_FALSE(canonicalize_exterior(*sp, std::vector<std::string>{"x", "x"}));
  auto tt = canonicalize_exterior(*sp, std::vector<std::string>{"t", "t"});
  ASSERT_TRUE(tt);
  EXPECT_EQ(tt->sign, 1);
  auto ty = canonicalize_exterior(*sp, std::vector<std::string>{"t", "y"});
  ASSERT_TRUE(ty);
  EXPECT_EQ(ty->sign, -1);
  EXPECT_THROW(canonicalize_exterior(*sp, std::vector<std::string>{"q"}), std::out_of_range);
}

TEST(CanonicalizeExterior, IdempotentWithUnitSign) {
  auto sp = make_space({{"a", Parity(0)}, {"b", Parity(1)}, {"c", Parity(1)}, {"d", Parity(0)}});
  for (const auto& t : tensor_tuples(4, 4)) {
    auto w = canonicalize_exterior(*sp, t);
    if (!w) continue;
    auto again = canonicalize_exterior(*sp, w->tuple);
    ASSERT_TRUE(again);
    EXPECT_EQ(again->tuple, w->tuple);
    EXPECT_EQ(again->sign, 1);
  }
}

TEST(GradedSpace, RejectsDuplicates) {
  EXPECT_THROW(make_space({{"x", Parity(0)}, {"x", Parity(1)}}), std::invalid_argument);
}

TEST(ExteriorTuples, Counts) {
  auto sp = make_space({{"a", Parity(0)}, {"b", Parity(0)}, {"c", Parity(1)}});
  // Lambda^2 of (2 even | 1 odd): C(2,2) + 2*1 + 1 = 4.
  EXPECT_EQ(exterior_tuples(*sp, 2).size(), 4u);
  EXPECT_EQ(exterior_tuples(*make_space({{"a", Parity(0)}, {"b", Parity(0)}}), 3).size(), 0u);
}

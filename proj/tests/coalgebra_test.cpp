#include <gtest/gtest.h>

#include "infalg/coalgebra.hpp"
#include "infalg/scalar.hpp"

using namespace infalg;
using Q = Rational;

namespace {

std::map<std::pair<std::string, std::string>, Q> named(const FilteredCoalgebra<Q>& F, const std::string& x) {
  std::map<std::pair<std::string, std::string>, Q> out;
  for (const auto& [uv, c] : F.coproduct(F.index(x))) out[{F.name(uv.first), F.name(uv.second)}] = c;
  return out;
}

/// The constants with the summation range j = 1..q+1 taken literally and the
/// box truncation 1 <= i <= N, 1 <= j <= Q (out-of-range summands dropped).
FilteredCoalgebra<Q> naive_restricted(int N, int Qcap) {
  std::vector<CoalgebraElement> b;
  std::map<std::tuple<char, int, int>, int> idx;
  for (char letter : {'e', 'f'})
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= Qcap; ++j) {
        idx[{letter, i, j}] = static_cast<int>(b.size());
        b.push_back({restricted_name(letter, i, j), {letter == 'e' ? Parity(j) : Parity(j - 1), j - 2}, i == 1, true});
      }
  FilteredCoalgebra<Q> F(b);
  for (const auto& [key, x] : idx) {
    auto [letter, p, q] = key;
    for (int i = 1; i < p; ++i)
      for (int j = 1; j <= q + 1; ++j) {
        int l = q + 2 - j;
        auto ee = [&](char a, char c) {
          auto u = idx.find({a, i, j}), v = idx.find({c, p - i, l});
          if (u != idx.end() && v != idx.end()) F.add_coproduct(x, u->second, v->second, Q(-1, 2));
        };
        if (letter == 'e') {
          ee('e', 'e');
        } else {
          ee('f', 'e');
          ee('e', 'f');
        }
      }
  }
  return F;
}

}  // namespace

TEST(CheckCoalgebra, SinglePrimitive) {
  FilteredCoalgebra<Q> F({{"e", {Parity(0), 0}, true, true}});
  EXPECT_TRUE(check_coalgebra(F).passed());
}

TEST(CheckCoalgebra, AntisymmetricCoproductIsNotCocommutative) {
  FilteredCoalgebra<Q> F({{"e", {Parity(0), 0}, false, true}, {"f", {Parity(1), 0}, false, true}});
  F.add_coproduct("e", "e", "f", Q(1));
  F.add_coproduct("e", "f", "e", Q(-1));
  auto r = check_coalgebra(F);
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(r.failed(CoalgebraCheck::cocommutativity));
}

TEST(CheckCoalgebra, FiltrationConditions) {
  FilteredCoalgebra<Q> F({{"a", {Parity(0), 0}, true, false}, {"b", {Parity(0), 0}, true, true}, {"c", {Parity(0), 0}, false, true}});
  F.add_coproduct("b", "c", "c", Q(1));
  F.add_coproduct("c", "a", "a", Q(1));
  auto r = check_coalgebra(F);
  EXPECT_TRUE(r.failed(CoalgebraCheck::filtration));
  EXPECT_TRUE(r.failed(CoalgebraCheck::primitive_f0));
  EXPECT_TRUE(r.failed(CoalgebraCheck::image_in_f1));
}

TEST(BuildFLie, Constants) {
  auto F = build_F_lie<Q>(3);
  EXPECT_TRUE(named(F, "e1").empty());
  EXPECT_TRUE(named(F, "f1").empty());
  EXPECT_EQ(named(F, "e2"), (std::map<std::pair<std::string, std::string>, Q>{{{"e1", "e1"}, Q(-1, 2)}}));
  EXPECT_EQ(named(F, "f2"), (std::map<std::pair<std::string, std::string>, Q>{{{"f1", "e1"}, Q(-1, 2)}, {{"e1", "f1"}, Q(-1, 2)}}));
  EXPECT_TRUE(F.element(F.index("e1")).in_f0);
  EXPECT_FALSE(F.element(F.index("e2")).in_f0);
}

TEST(BuildFLie, PassesChecks) {
  for (int N = 1; N <= 6; ++N) {
    auto r = check_coalgebra(build_F_lie<Q>(N));
    EXPECT_TRUE(r.passed()) << N << ": " << (r.passed() ? "" : r.violations[0].detail);
  }
}

TEST(BuildFRestricted, Constants) {
  auto F = build_F_restricted<Q>(3, 4);
  for (int j = 1; j <= 4; ++j) EXPECT_TRUE(named(F, restricted_name('e', 1, j)).empty());
  auto f12 = F.element(F.index("f1_2")).bidegree;
  EXPECT_EQ(f12.internal, Parity(1));
  EXPECT_EQ(f12.external, 0);
  // j = 1, 2, 3 all survive: e^{1,1} has i + j = 2
  EXPECT_EQ(named(F, "e2_2"), (std::map<std::pair<std::string, std::string>, Q>{
                                  {{"e1_1", "e1_3"}, Q(-1, 2)}, {{"e1_2", "e1_2"}, Q(-1, 2)}, {{"e1_3", "e1_1"}, Q(-1, 2)}}));
  EXPECT_FALSE(F.find("e3_3"));  // weight 5 exceeds 4
  // j <= 0 corner elements
  EXPECT_EQ(named(F, "e2_0"), (std::map<std::pair<std::string, std::string>, Q>{{{"e1_1", "e1_1"}, Q(-1, 2)}}));
  EXPECT_EQ(named(F, "e3_-1"), (std::map<std::pair<std::string, std::string>, Q>{
                                   {{"e1_1", "e2_0"}, Q(-1, 2)}, {{"e2_0", "e1_1"}, Q(-1, 2)}}));
  EXPECT_EQ(F.element(F.index("f1_1")).bidegree.external, -1);
  EXPECT_FALSE(F.find("e1_0"));
}

TEST(BuildFRestricted, PassesChecks) {
  for (int N = 1; N <= 6; ++N)
    for (int Qc = 2; Qc <= 6; ++Qc) {
      auto r = check_coalgebra(build_F_restricted<Q>(N, Qc));
      EXPECT_TRUE(r.passed()) << N << "," << Qc << ": " << (r.passed() ? "" : r.violations[0].detail);
    }
}

// The literal summation range with j >= 1 only is not coassociative.
TEST(BuildFRestricted, BoxTruncationIsNotCoassociative) {
  auto r = check_coalgebra(naive_restricted(3, 3));
  EXPECT_TRUE(r.failed(CoalgebraCheck::coassociativity));
}

// With the usual pairing, f^{i,j}⊗e^{a,b} picks up (-1)^b under S.
TEST(BuildFRestricted, UsualPairingBreaksCocommutativity) {
  auto F = build_F_restricted<Q>(2, 3);
  EXPECT_TRUE(check_coalgebra(F, Pairing::good).passed());
  EXPECT_TRUE(check_coalgebra(F, Pairing::usual).failed(CoalgebraCheck::cocommutativity));
  EXPECT_TRUE(check_coalgebra(build_F_lie<Q>(4), Pairing::usual).passed());
}

TEST(DualAlgebra, LieTable) {
  const int N = 5;
  auto F = build_F_lie<Q>(N);
  auto G = dual_algebra(F);
  EXPECT_TRUE(G.passed());
  auto e = [&](int k) { return F.index("e" + std::to_string(k)); };
  auto f = [&](int k) { return F.index("f" + std::to_string(k)); };
  EXPECT_EQ(G.multiply(e(1), e(1)), (SparseVec<Q>{{e(2), Q(-1, 2)}}));
  EXPECT_TRUE(G.multiply(f(1), f(1)).empty());
  for (int k = 1; k <= N; ++k)
    for (int l = 1; k + l <= N; ++l) {
      EXPECT_EQ(G.multiply(e(k), e(l)), (SparseVec<Q>{{e(k + l), Q(-1, 2)}}));
      EXPECT_EQ(G.multiply(e(k), f(l)), (SparseVec<Q>{{f(k + l), Q(-1, 2)}}));
      EXPECT_TRUE(G.multiply(f(k), f(l)).empty());
    }
  // t = e_1, theta = f_1: e_k = (-2)^{k-1} t^k and f_l = (-2)^{l-1} t^{l-1} theta
  SparseVec<Q> t{{e(1), Q(1)}}, theta{{f(1), Q(1)}}, power = t, ftheta = theta;
  for (int k = 1; k <= N; ++k) {
    Q c(1);
    for (int i = 1; i < k; ++i) c *= Q(-2);
    EXPECT_EQ(scaled(power, c), (SparseVec<Q>{{e(k), Q(1)}})) << k;
    EXPECT_EQ(scaled(ftheta, c), (SparseVec<Q>{{f(k), Q(1)}})) << k;
    power = G.multiply(power, t);
    ftheta = G.multiply(t, ftheta);
  }
}

TEST(DualAlgebra, RestrictedTable) {
  const int N = 3, Qc = 5;
  auto F = build_F_restricted<Q>(N, Qc);
  auto G = dual_algebra(F);
  EXPECT_TRUE(G.passed());
  auto id = [&](char c, int i, int j) { return F.find(restricted_name(c, i, j)); };
  int checked = 0;
  for (int i = 1; i <= N; ++i)
    for (int k = 1; k <= Qc; ++k)
      for (int j = 1; j <= N; ++j)
        for (int l = 1; l <= Qc; ++l) {
          auto a = id('e', i, k), b = id('e', j, l), fa = id('f', i, k);
          auto prod = id('e', i + j, k + l - 2), fprod = id('f', i + j, k + l - 2);
          if (!a || !b) continue;
          SparseVec<Q> want = prod ? SparseVec<Q>{{*prod, Q(-1, 2)}} : SparseVec<Q>{};
          EXPECT_EQ(G.multiply(*a, *b), want);
          if (fa) {
            SparseVec<Q> fwant = fprod ? SparseVec<Q>{{*fprod, Q(-1, 2)}} : SparseVec<Q>{};
            EXPECT_EQ(G.multiply(*fa, *b), fwant);
            if (auto fb = id('f', j, l)) {
              EXPECT_TRUE(G.multiply(*fa, *fb).empty());
            }
          }
          ++checked;
        }
  EXPECT_GT(checked, 20);
  // t_i t_j = t_k t_l whenever i + j = k + l
  auto t = [&](int i) { return SparseVec<Q>{{*id('e', 1, i), Q(1)}}; };
  EXPECT_EQ(G.multiply(t(1), t(3)), G.multiply(t(2), t(2)));
  EXPECT_EQ(G.multiply(G.multiply(t(1), t(2)), t(2)), G.multiply(G.multiply(t(1), t(1)), t(3)));
}

TEST(DualAlgebra, UsualPairingContradictsTable) {
  auto F = build_F_restricted<Q>(2, 3);
  auto G = dual_algebra(F, Pairing::usual);
  // f_{1,1} e_{1,1}: Delta f^{2,0} does not exist, use f_{1,2} e_{1,1} -> f_{2,1}
  auto fa = F.index("f1_2"), b = F.index("e1_1"), prod = F.index("f2_1");
  EXPECT_EQ(G.multiply(fa, b), (SparseVec<Q>{{prod, Q(1, 2)}}));
}

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "etf_forge/error.hpp"
#include "etf_forge/hadamard.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace etf;

namespace {

SkewHadamard order_two() { return SkewHadamard(2, {1, 1, -1, 1}); }

// D H D for a sign vector D; stays skew Hadamard.
SkewHadamard conjugate_signs(const SkewHadamard& h, const std::vector<int>& signs) {
  const std::size_t m = h.order();
  std::vector<std::int8_t> out(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out[i * m + j] = static_cast<std::int8_t>(signs[i] * h(i, j) * signs[j]);
  return SkewHadamard(m, std::move(out));
}

// Integer matrix product of two n x n 0/1 tables.
std::vector<std::int64_t> int_product(const CoreAdjacency& a, bool ta, const CoreAdjacency& b, bool tb) {
  const std::size_t n = a.n();
  std::vector<std::int64_t> out(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) out[i * n + j] += (ta ? a(k, i) : a(i, k)) * (tb ? b(j, k) : b(k, j));
  return out;
}

}  // namespace

class Paley : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(Paley, ExactInvariantsAndNormalized) {
  const std::uint64_t q = GetParam();
  const SkewHadamard h = paley_skew_hadamard(q);
  ASSERT_EQ(h.order(), q + 1);
  EXPECT_TRUE(oracle::skew_hadamard(h.order(), h.entries()));
  for (std::size_t j = 0; j < h.order(); ++j) EXPECT_EQ(h(0, j), 1);
  EXPECT_EQ(normalize_hadamard(h), h);
}

INSTANTIATE_TEST_SUITE_P(Primes, Paley, ::testing::Values(3, 7, 11, 19, 23, 31, 43, 47, 59, 67, 71, 79, 83, 103));

TEST(Paley, RejectsBadInputs) {
  EXPECT_EQ(error_code([] { paley_skew_hadamard(5); }), "wrong_residue");
  EXPECT_EQ(error_code([] { paley_skew_hadamard(15); }), "not_prime");
  EXPECT_EQ(error_code([] { paley_skew_hadamard(1); }), "not_prime");
}

TEST(Paley, QuadraticCharacterEntries) {
  const SkewHadamard h = paley_skew_hadamard(7);
  const std::set<int> residues{1, 2, 4};
  for (int x = 0; x < 7; ++x) {
    EXPECT_EQ(h(x + 1, 0), -1);
    for (int y = 0; y < 7; ++y) {
      const int diff = ((y - x) % 7 + 7) % 7;
      const int expect = diff == 0 ? 1 : (residues.count(diff) ? 1 : -1);
      EXPECT_EQ(h(x + 1, y + 1), expect);
    }
  }
}

TEST(SkewHadamard, ConstructorRejectsNonSkew) {
  EXPECT_EQ(error_code([] { SkewHadamard(2, {1, 1, 1, -1}); }), "not_skew_hadamard");
  EXPECT_EQ(error_code([] { SkewHadamard(2, {1, 1, -1, -1}); }), "not_skew_hadamard");
}

TEST(DoubleHadamard, SmallOrders) {
  const SkewHadamard four = double_hadamard(order_two());
  EXPECT_EQ(four.order(), 4u);
  EXPECT_TRUE(oracle::skew_hadamard(4, four.entries()));

  const SkewHadamard eight = double_hadamard(paley_skew_hadamard(3));
  EXPECT_EQ(eight.order(), 8u);
  EXPECT_TRUE(oracle::skew_hadamard(8, eight.entries()));

  const SkewHadamard h48 = double_hadamard(double_hadamard(paley_skew_hadamard(11)));
  EXPECT_EQ(h48.order(), 48u);
  EXPECT_TRUE(oracle::skew_hadamard(48, h48.entries()));
}

TEST(DoubleHadamard, PreservesInvariantsUpTo400) {
  for (std::uint64_t q : {3u, 7u, 11u, 19u, 23u, 31u, 43u, 47u}) {
    SkewHadamard h = paley_skew_hadamard(q);
    while (2 * h.order() <= 400) {
      h = double_hadamard(h);
      EXPECT_TRUE(oracle::skew_hadamard(h.order(), h.entries())) << h.order();
    }
  }
}

TEST(Normalize, FixesTopRowAndIsIdempotent) {
  const SkewHadamard base = paley_skew_hadamard(11);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<int> signs(12);
    for (auto& s : signs) s = (rng() & 1) ? 1 : -1;
    const SkewHadamard h = conjugate_signs(base, signs);
    const SkewHadamard n1 = normalize_hadamard(h);
    EXPECT_TRUE(oracle::skew_hadamard(12, n1.entries()));
    for (std::size_t j = 0; j < 12; ++j) EXPECT_EQ(n1(0, j), 1);
    for (std::size_t i = 1; i < 12; ++i) EXPECT_EQ(n1(i, 0), -1);
    EXPECT_EQ(normalize_hadamard(n1), n1);
    EXPECT_EQ(core_adjacency(h), core_adjacency(n1));
  }
}

TEST(Normalize, AlternatingTopRow) {
  // Row 0 of conjugate_signs(paley(3), (1,-1,1,-1)) is (1,-1,1,-1).
  const SkewHadamard h = conjugate_signs(paley_skew_hadamard(3), {1, -1, 1, -1});
  ASSERT_EQ(h(0, 1), -1);
  const SkewHadamard n = normalize_hadamard(h);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(n(0, j), 1);
  EXPECT_TRUE(oracle::skew_hadamard(4, n.entries()));
}

TEST(CoreAdjacency, CyclicTournamentFromThree) {
  const CoreAdjacency a = core_adjacency(paley_skew_hadamard(3));
  ASSERT_EQ(a.n(), 3u);
  // chi(1) = +1 mod 3: x -> x+1.
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(a(i, j), j == (i + 1) % 3 ? 1 : 0);
  EXPECT_TRUE(a.is_tournament());
  EXPECT_TRUE(a.is_regular());
}

TEST(CoreAdjacency, SevenVertexTournament) {
  const CoreAdjacency a = core_adjacency(paley_skew_hadamard(7));
  for (std::size_t i = 0; i < 7; ++i) {
    int row = 0;
    for (std::size_t j = 0; j < 7; ++j) {
      row += a(i, j);
      EXPECT_EQ(a(i, j) + a(j, i) + (i == j ? 1 : 0), 1);
    }
    EXPECT_EQ(row, 3);
  }
}

TEST(CoreAdjacency, Errors) {
  EXPECT_EQ(error_code([] { core_adjacency(order_two()); }), "order_too_small");
  EXPECT_EQ(error_code([] { CoreAdjacency(2, {0, 2, 0, 0}); }), "bad_entry");
  EXPECT_EQ(error_code([] { CoreAdjacency(2, {1, 0, 0, 0}); }), "bad_entry");
}

TEST(Association, CorrectedIdentitiesAgainstIntegerOracle) {
  for (std::uint64_t q : {3u, 7u, 11u, 19u, 23u}) {
    const CoreAdjacency a = core_adjacency(paley_skew_hadamard(q));
    EXPECT_TRUE(association_check(a)) << q;

    const std::int64_t n = static_cast<std::int64_t>(q);
    const auto aat = int_product(a, false, a, true);
    const auto ata = int_product(a, true, a, false);
    const auto aa = int_product(a, false, a, false);
    for (std::size_t i = 0; i < a.n(); ++i) {
      for (std::size_t j = 0; j < a.n(); ++j) {
        const std::int64_t id = i == j ? 1 : 0;
        const std::int64_t want_aat = 4 * ((n - 1) / 2) * id + (n - 3) * (a(i, j) + a(j, i));
        EXPECT_EQ(4 * aat[i * a.n() + j], want_aat);
        EXPECT_EQ(4 * ata[i * a.n() + j], want_aat);
        EXPECT_EQ(4 * aa[i * a.n() + j], (n - 3) * a(i, j) + (n + 1) * a(j, i));
      }
    }
  }
}

TEST(Association, ThreeCycleDirect) {
  const CoreAdjacency a = core_adjacency(paley_skew_hadamard(3));
  const auto aa = int_product(a, false, a, false);
  const auto aat = int_product(a, false, a, true);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_EQ(aa[i * 3 + j], a(j, i));
      EXPECT_EQ(aat[i * 3 + j], i == j ? 1 : 0);
    }
}

TEST(Association, RejectsZeroMatrixAndWrongResidue) {
  EXPECT_FALSE(association_check(CoreAdjacency(3, std::vector<std::uint8_t>(9, 0))));
  EXPECT_EQ(error_code([] { association_check(CoreAdjacency(5, std::vector<std::uint8_t>(25, 0))); }),
            "wrong_residue");
}

TEST(IsPrime, AgreesWithOracle) {
  for (std::uint64_t q = 0; q < 3000; ++q) EXPECT_EQ(is_prime(q), oracle::prime(q)) << q;
}

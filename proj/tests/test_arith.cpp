#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "choired/arith.hpp"
#include "choired/errors.hpp"
#include "oracles.hpp"

using namespace choired;

TEST(Kronecker, SmallTableAgainstFactorizationOracle) {
  for (std::int64_t D = -400; D <= 400; ++D)
    for (std::uint64_t n = 0; n <= 300; ++n)
      ASSERT_EQ(kronecker_symbol(D, n), oracle::kronecker(D, static_cast<std::int64_t>(n)))
          << "D=" << D << " n=" << n;
}

TEST(Kronecker, RandomLargeArguments) {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<std::int64_t> dD(-4'000'000'000LL, 4'000'000'000LL);
  std::uniform_int_distribution<std::int64_t> dn(1, 2'000'000);
  for (int i = 0; i < 20000; ++i) {
    const auto D = dD(rng);
    const auto n = dn(rng);
    ASSERT_EQ(kronecker_symbol(D, static_cast<std::uint64_t>(n)), oracle::kronecker(D, n))
        << D << " " << n;
  }
}

TEST(Kronecker, ZeroAndTwo) {
  EXPECT_EQ(kronecker_symbol(1, 0), 1);
  EXPECT_EQ(kronecker_symbol(-1, 0), 1);
  EXPECT_EQ(kronecker_symbol(-4, 0), 0);
  EXPECT_EQ(kronecker_symbol(-7, 2), 1);   // -7 = 1 mod 8
  EXPECT_EQ(kronecker_symbol(-3, 2), -1);  // -3 = 5 mod 8
  EXPECT_EQ(kronecker_symbol(-4, 2), 0);
}

TEST(Kronecker, MultiplicativeInN) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> dD(-100000, -1);
  std::uniform_int_distribution<std::uint64_t> dn(1, 5000);
  for (int i = 0; i < 5000; ++i) {
    const auto D = dD(rng);
    const auto m = dn(rng), n = dn(rng);
    ASSERT_EQ(kronecker_symbol(D, m * n), kronecker_symbol(D, m) * kronecker_symbol(D, n));
  }
}

TEST(Primes, SieveAndTrialDivisionAgree) {
  const auto ps = primes_up_to(10000);
  std::size_t j = 0;
  for (std::uint32_t n = 0; n <= 10000; ++n) {
    const bool expected = oracle::is_prime(n);
    EXPECT_EQ(is_prime(n), expected) << n;
    if (expected) {
      ASSERT_LT(j, ps.size());
      EXPECT_EQ(ps[j++], n);
    }
  }
  EXPECT_EQ(j, ps.size());
  EXPECT_TRUE(primes_up_to(1).empty());
  EXPECT_TRUE(is_prime(1'000'000'007ULL));
}

TEST(Isqrt, ExactAroundSquares) {
  for (std::uint64_t r : {0ULL, 1ULL, 2ULL, 1000ULL, 4294967295ULL}) {
    EXPECT_EQ(isqrt(r * r), r);
    if (r > 0) EXPECT_EQ(isqrt(r * r - 1), r - 1);
  }
  EXPECT_EQ(isqrt(UINT64_MAX), 4294967295ULL);
}

TEST(Factorize, Roundtrip) {
  EXPECT_EQ(factorize(497), (std::vector<PrimePower>{{7, 1}, {71, 1}}));
  EXPECT_EQ(factorize(360), (std::vector<PrimePower>{{2, 3}, {3, 2}, {5, 1}}));
  EXPECT_TRUE(factorize(1).empty());
  EXPECT_EQ(prime_divisors(170203), (std::vector<std::uint64_t>{11, 15473}));
}

TEST(Squarefree, SieveMatchesTrialDivision) {
  for (auto [lo, hi] : {std::pair<std::uint64_t, std::uint64_t>{1, 5000}, {99'000, 101'000},
                        {1'000'000'000, 1'000'002'000}}) {
    const auto s = sieve_squarefree(lo, hi);
    ASSERT_EQ(s.size(), hi - lo);
    for (std::uint64_t n = lo; n < hi; ++n)
      ASSERT_EQ(s.is_squarefree(n), oracle::squarefree(static_cast<std::int64_t>(n))) << n;
  }
}

TEST(Squarefree, EmptyAndInvalidRanges) {
  EXPECT_EQ(sieve_squarefree(10, 10).size(), 0u);
  EXPECT_THROW(sieve_squarefree(0, 10), ValidationError);
  EXPECT_THROW(sieve_squarefree(10, 9), ValidationError);
}

TEST(Squarefree, CountInProgressionMatchesOracle) {
  for (std::uint64_t b : {1ULL, 4ULL, 8ULL, 15ULL, 28ULL}) {
    const auto by_residue = count_squarefree_by_residue(20000, b);
    ASSERT_EQ(by_residue.size(), b);
    for (std::int64_t a = 0; a < static_cast<std::int64_t>(b); ++a) {
      std::uint64_t expected = 0;
      for (std::int64_t n = 1; n < 20000; ++n)
        expected += (n % static_cast<std::int64_t>(b) == a) && oracle::squarefree(n);
      EXPECT_EQ(by_residue[a], expected);
      if (std::gcd<std::int64_t>(a, b) == 1 || b == 1)
        EXPECT_EQ(count_squarefree_in_ap(20000, a, b), expected) << a << " mod " << b;
    }
  }
  EXPECT_THROW(count_squarefree_in_ap(100, 2, 4), ValidationError);
  EXPECT_THROW(count_squarefree_in_ap(100, 1, 0), ValidationError);
}

TEST(Squarefree, AsymptoticConstant) {
  EXPECT_NEAR(zeta2(), 1.6449340668482264, 1e-15);
  // b = 1: x / zeta(2)
  EXPECT_NEAR(asymptotic_squarefree_in_ap(1e6, 0, 1), 1e6 / zeta2(), 1e-6);
  // b = 4: (x / zeta2) (1/4) (4/3)
  EXPECT_NEAR(asymptotic_squarefree_in_ap(1e6, 1, 4), 1e6 / zeta2() / 3.0, 1e-6);
  EXPECT_THROW(asymptotic_squarefree_in_ap(1e6, 2, 4), ValidationError);
}

TEST(Discriminant, FundamentalFromSquarefree) {
  EXPECT_EQ(fundamental_discriminant(-1), (FundamentalDiscriminant{-4, -1}));
  EXPECT_EQ(fundamental_discriminant(-3), (FundamentalDiscriminant{-3, -3}));
  EXPECT_EQ(fundamental_discriminant(-2), (FundamentalDiscriminant{-8, -2}));
  EXPECT_EQ(fundamental_discriminant(-11), (FundamentalDiscriminant{-11, -11}));
  EXPECT_THROW(fundamental_discriminant(-4), ValidationError);
  EXPECT_THROW(fundamental_discriminant(5), ValidationError);
  EXPECT_THROW(fundamental_discriminant(0), ValidationError);
}

TEST(Discriminant, PredicateMatchesOracle) {
  for (std::int64_t D = -20000; D <= 10; ++D)
    ASSERT_EQ(is_fundamental_discriminant(D), oracle::fundamental(D)) << D;
}

TEST(EulerPhi, ValidatesFactorization) {
  const std::vector<PrimePower> f{{5, 1}, {7, 1}, {71, 1}};
  EXPECT_EQ(euler_phi(2485, f), 1680u);
  EXPECT_EQ(euler_phi(2485, f), static_cast<std::uint64_t>(oracle::phi(2485)));
  const std::vector<PrimePower> wrong{{5, 1}, {7, 1}};
  EXPECT_THROW(euler_phi(2485, wrong), ValidationError);
  const std::vector<PrimePower> composite{{4, 1}};
  EXPECT_THROW(euler_phi(4, composite), ValidationError);
}

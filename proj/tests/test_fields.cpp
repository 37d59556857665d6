#include <gtest/gtest.h>

#include "choired/arith.hpp"
#include "choired/errors.hpp"
#include "choired/fields.hpp"
#include "oracles.hpp"

using namespace choired;

TEST(ClassNumber, KnownValues) {
  EXPECT_EQ(class_number(-3), 1);
  EXPECT_EQ(class_number(-4), 1);
  EXPECT_EQ(class_number(-7), 1);
  EXPECT_EQ(class_number(-23), 3);
  EXPECT_EQ(class_number(-47), 5);
  EXPECT_EQ(class_number(-163), 1);
  EXPECT_EQ(class_number(-84), 4);
  EXPECT_EQ(class_number(-3299), 27);
}

TEST(ClassNumber, MatchesExhaustiveScanBelow2000) {
  for (std::int64_t D = -1; D > -2000; --D)
    if (oracle::fundamental(D)) ASSERT_EQ(class_number(D), oracle::class_number(D)) << D;
}

TEST(ClassNumber, RejectsNonFundamental) {
  EXPECT_THROW(class_number(-12), ValidationError);
  EXPECT_THROW(class_number(5), ValidationError);
  EXPECT_THROW(class_number(0), ValidationError);
}

TEST(ClassNumber, Heegner) {
  // the nine imaginary quadratic fields of class number one
  int ones = 0;
  for (std::int64_t D = -3; D >= -200; --D)
    if (is_fundamental_discriminant(D) && class_number(D) == 1) ++ones;
  EXPECT_EQ(ones, 9);
  EXPECT_FALSE(total_ramification_ok(-47, 5));
  EXPECT_TRUE(total_ramification_ok(-23, 5));
}

class FieldsOn497 : public ::testing::Test {
 protected:
  CurveModel curve = fixture::curve("497a1");
  PrimeSetting setting = make_prime_setting(curve, 5);
};

TEST_F(FieldsOn497, SymbolsAndProducts) {
  // -11: (-11|5) = 1, (-11|7) = -1, (-11|71) = ?
  const auto fc = classify_field(-11, curve, setting);
  ASSERT_EQ(fc.symbols.size(), 3u);
  EXPECT_EQ(fc.symbols[0].prime, 5);
  for (const auto& s : fc.symbols) EXPECT_EQ(s.symbol, oracle::kronecker(-11, s.prime));
  EXPECT_TRUE(fc.coprime_ok);
  EXPECT_EQ(fc.n_plus * fc.n_minus, 497);
  EXPECT_EQ(fc.symbol_at(71), oracle::kronecker(-11, 71));
  EXPECT_THROW(fc.symbol_at(3), std::out_of_range);
}

TEST_F(FieldsOn497, RamifiedIsNotCoprime) {
  EXPECT_FALSE(classify_field(-7, curve, setting).coprime_ok);
  EXPECT_FALSE(classify_field(-20, curve, setting).coprime_ok);
  EXPECT_FALSE(classify_field(-71, curve, setting).coprime_ok);
  EXPECT_THROW(classify_field(-9, curve, setting), ValidationError);
}

TEST_F(FieldsOn497, VerdictMatchesDefinition) {
  for (std::int64_t D = -3; D > -3000; --D) {
    if (!oracle::fundamental(D)) continue;
    const auto fc = classify_field(D, curve, setting);
    const auto v = choired_verdict(fc, curve, setting);
    const int s5 = oracle::kronecker(D, 5), s7 = oracle::kronecker(D, 7),
              s71 = oracle::kronecker(D, 71);
    const bool coprime = s5 != 0 && s7 != 0 && s71 != 0;
    const bool odd = ((s7 == -1) + (s71 == -1)) % 2 == 1;
    ASSERT_EQ(v.overall_ord, coprime && odd) << D;
    ASSERT_EQ(v.overall_ss, coprime && odd && s5 == 1) << D;
    ASSERT_FALSE(v.surjectivity_assumed);
  }
}

TEST_F(FieldsOn497, MismatchedSettingRejected) {
  const auto other = fixture::curve("14a1");
  const auto fc = classify_field(-11, curve, setting);
  EXPECT_THROW(choired_verdict(fc, other, make_prime_setting(other, 5)), ValidationError);
  const auto s13 = make_prime_setting(curve, 13);
  EXPECT_THROW(choired_verdict(fc, curve, s13), ValidationError);
}

TEST(Verdict, KounterPrimeInertExcluded) {
  const auto curve = fixture::curve("syn-k1-ord");  // N = 11 * 1789, 11 is kounter at 5
  const auto s = make_prime_setting(curve, 5);
  ASSERT_EQ(s.kounter.primes, std::vector<std::int64_t>{11});
  int seen = 0;
  for (std::int64_t D = -3; D > -5000 && seen < 20; --D) {
    if (!oracle::fundamental(D)) continue;
    const auto fc = classify_field(D, curve, s);
    if (!fc.coprime_ok || fc.symbol_at(11) != -1) continue;
    ++seen;
    const auto v = choired_verdict(fc, curve, s);
    EXPECT_FALSE(v.conditions.no_kounter_inert);
    EXPECT_FALSE(v.overall_ord);
  }
  EXPECT_EQ(seen, 20);
}

TEST(Verdict, UnknownSurjectivityNeedsAssumption) {
  const auto curve = fixture::curve("497a1");
  const auto s = make_prime_setting(curve, 13);
  ASSERT_EQ(s.surjectivity, Surjectivity::unknown);
  // find a field that is choired apart from surjectivity
  for (std::int64_t D = -3;; --D) {
    if (!is_fundamental_discriminant(D)) continue;
    const auto fc = classify_field(D, curve, s);
    const auto assumed = choired_verdict(fc, curve, s, true);
    if (!assumed.overall_ord) continue;
    EXPECT_TRUE(assumed.surjectivity_assumed);
    const auto strict = choired_verdict(fc, curve, s, false);
    EXPECT_FALSE(strict.overall_ord);
    EXPECT_FALSE(strict.conditions.surjective_ok);
    break;
  }
}

TEST(Verdict, DegenerateApExcludesEverything) {
  const auto curve = fixture::curve("11a1");  // a_5 = 1
  const auto s = make_prime_setting(curve, 5);
  for (std::int64_t D = -3; D > -500; --D) {
    if (!is_fundamental_discriminant(D)) continue;
    EXPECT_FALSE(choired_verdict(classify_field(D, curve, s), curve, s, true).overall_ord);
  }
}

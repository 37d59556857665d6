#include <gtest/gtest.h>

#include <cmath>

#include "choired/census.hpp"
#include "choired/errors.hpp"
#include "choired/fields.hpp"
#include "choired/report.hpp"
#include "oracles.hpp"

using namespace choired;

namespace {

CensusOptions small_options() {
  CensusOptions o;
  o.chunk_size = 1 << 12;
  return o;
}

}  // namespace

TEST(Enumeration, MatchesOracleAndOrder) {
  const auto fds = enumerate_fundamental_discriminants(5000);
  std::vector<std::int64_t> expected;
  for (std::int64_t D = -1; D > -5000; --D)
    if (oracle::fundamental(D)) expected.push_back(D);
  ASSERT_EQ(fds.size(), expected.size());
  for (std::size_t i = 0; i < fds.size(); ++i) {
    EXPECT_EQ(fds[i].D, expected[i]);
    EXPECT_EQ(fds[i].D, oracle::mod(fds[i].d, 4) == 1 ? fds[i].d : 4 * fds[i].d);
  }
  EXPECT_EQ(fds.front().D, -3);
  EXPECT_EQ(fds[1].D, -4);
  EXPECT_EQ(fds[2].D, -7);
  EXPECT_EQ(fds[3].D, -8);
}

TEST(Enumeration, RangesConcatenate) {
  auto a = enumerate_fundamental_discriminants(1, 2000);
  const auto b = enumerate_fundamental_discriminants(2000, 6001);
  a.insert(a.end(), b.begin(), b.end());
  EXPECT_EQ(a, enumerate_fundamental_discriminants(6001));
  EXPECT_TRUE(enumerate_fundamental_discriminants(100, 100).empty());
  EXPECT_THROW(enumerate_fundamental_discriminants(2), ValidationError);
  EXPECT_THROW(enumerate_fundamental_discriminants(0, 10), ValidationError);
}

TEST(Sampling, DeterministicAndCalibrated) {
  EXPECT_FALSE(class_sample_selected(1, 100, 0.0));
  EXPECT_TRUE(class_sample_selected(1, 100, 1.0));
  int hits = 0;
  for (std::uint64_t n = 1; n <= 200000; ++n) {
    const bool s = class_sample_selected(42, n, 0.1);
    ASSERT_EQ(s, class_sample_selected(42, n, 0.1));
    hits += s;
  }
  EXPECT_NEAR(hits / 200000.0, 0.1, 0.005);
  int differ = 0;
  for (std::uint64_t n = 1; n <= 1000; ++n)
    differ += class_sample_selected(1, n, 0.5) != class_sample_selected(2, n, 0.5);
  EXPECT_GT(differ, 300);
}

class CensusOn : public ::testing::TestWithParam<std::tuple<const char*, int, Mode>> {};

TEST_P(CensusOn, KernelMatchesReference) {
  const auto [label, p, mode] = GetParam();
  const auto curve = fixture::curve(label);
  const auto s = make_prime_setting(curve, p);
  auto o = small_options();
  o.mode = mode;
  o.class_sampling_rate = 0.05;
  o.seed = 9;
  const auto kernel = run_census(curve, s, 60000, o);
  const auto ref = run_census_reference(curve, s, 60000, o);
  EXPECT_EQ(kernel.tally, ref.tally);
  EXPECT_TRUE(same_results(kernel, ref));
  EXPECT_EQ(census_json(kernel).dump(), census_json(ref).dump());
}

INSTANTIATE_TEST_SUITE_P(
    Fixtures, CensusOn,
    ::testing::Values(std::tuple{"497a1", 5, Mode::ss}, std::tuple{"497a1", 13, Mode::ord},
                      std::tuple{"14a1", 5, Mode::ss}, std::tuple{"syn-k1-ord", 5, Mode::ord},
                      std::tuple{"syn-k1-ss", 5, Mode::ss}, std::tuple{"37a1", 5, Mode::ord}),
    [](const auto& info) {
      std::string name = std::get<0>(info.param);
      std::erase(name, '-');
      return name + "_p" + std::to_string(std::get<1>(info.param)) + "_" +
             std::string(to_string(std::get<2>(info.param)));
    });

TEST(Census, TallyInvariants) {
  const auto curve = fixture::curve("497a1");
  const auto s = make_prime_setting(curve, 5);
  const auto r = run_census(curve, s, 200000, small_options());
  const auto& t = r.tally;
  std::uint64_t sum = 0;
  for (auto c : t.per_partition) sum += c;
  EXPECT_EQ(sum, t.coprime_fields);
  EXPECT_LE(t.coprime_fields, t.total_fields);
  // choired ss = p split with exactly one of 7, 71 inert
  EXPECT_EQ(t.choired_ss_plus, t.per_partition[0b010] + t.per_partition[0b100]);
  EXPECT_EQ(t.choired_ord_minus, t.per_partition[0b011] + t.per_partition[0b101]);
  EXPECT_EQ(t.choired_ord_plus, t.choired_ss_plus);
  EXPECT_EQ(t.total_fields, enumerate_fundamental_discriminants(200000).size());
  EXPECT_EQ(r.partition_labels.size(), 8u);
}

TEST(Census, BelowAsymptoticRegimeWarns) {
  const auto curve = fixture::curve("497a1");
  const auto r = run_census(curve, make_prime_setting(curve, 5), 100, small_options());
  ASSERT_FALSE(r.warnings.empty());
  EXPECT_NE(r.warnings.back().find("below the asymptotic regime"), std::string::npos);
}

TEST(Census, UnknownSurjectivityWarnsAndRespectsAssumption) {
  const auto curve = fixture::curve("497a1");
  const auto s = make_prime_setting(curve, 13);
  auto o = small_options();
  o.mode = Mode::ord;
  const auto assumed = run_census(curve, s, 50000, o);
  EXPECT_GT(assumed.tally.choired_ord_plus, 0u);
  o.assume_surjective = false;
  const auto strict = run_census(curve, s, 50000, o);
  EXPECT_EQ(strict.tally.choired_ord_plus, 0u);
  EXPECT_EQ(strict.tally.choired_ord_minus, 0u);
  EXPECT_EQ(strict.tally, run_census_reference(curve, s, 50000, o).tally);
  EXPECT_EQ(strict.tally.per_partition, assumed.tally.per_partition);
  EXPECT_FALSE(strict.warnings.empty());
}

TEST(Census, ClassSampleUsesExactClassNumbers) {
  const auto curve = fixture::curve("497a1");
  const auto s = make_prime_setting(curve, 5);
  auto o = small_options();
  o.class_sampling_rate = 1.0;
  const auto r = run_census(curve, s, 3000, o);
  std::uint64_t n = 0, divides = 0;
  for (const auto& fd : enumerate_fundamental_discriminants(3000)) {
    const auto v = choired_verdict(classify_field(fd.D, curve, s), curve, s, true);
    if (!v.overall_ss) continue;
    ++n;
    divides += oracle::class_number(fd.D) % 5 == 0;
  }
  EXPECT_EQ(r.tally.class_sample_size, n);
  EXPECT_EQ(r.tally.class_sample_p_divides, divides);
  ASSERT_TRUE(r.class_sample.has_value());
  EXPECT_LE(r.class_sample->ci_low, r.class_sample->estimate);
  EXPECT_GE(r.class_sample->ci_high, r.class_sample->estimate);
}

TEST(Census, Errors) {
  const auto curve = fixture::curve("497a1");
  const auto s = make_prime_setting(curve, 5);
  auto o = small_options();
  EXPECT_THROW(run_census(curve, s, 2, o), ValidationError);
  o.class_sampling_rate = 1.5;
  EXPECT_THROW(run_census(curve, s, 1000, o), ValidationError);
  o = small_options();
  o.chunk_size = 0;
  EXPECT_THROW(run_census(curve, s, 1000, o), ValidationError);
  const auto c11 = fixture::curve("11a1");
  EXPECT_THROW(run_census(c11, make_prime_setting(c11, 5), 1000, small_options()),
               HypothesisError);
}

TEST(Determinism, ThreadsAndChunks) {
  const auto curve = fixture::curve("497a1");
  const auto s = make_prime_setting(curve, 5);
  auto o = small_options();
  o.class_sampling_rate = 0.02;
  o.threads = 1;
  const auto base = run_census(curve, s, 100000, o);
  const auto base_json = census_json(base).dump();
  for (int threads : {2, 4})
    for (std::uint64_t chunk : {777ULL, 4096ULL, 1ULL << 22}) {
      o.threads = threads;
      o.chunk_size = chunk;
      const auto r = run_census(curve, s, 100000, o);
      EXPECT_TRUE(same_results(base, r)) << threads << " " << chunk;
      EXPECT_EQ(census_json(r).dump(), base_json);
    }
}

TEST(Merge, AssociativeOverFourWaySplit) {
  const auto curve = fixture::curve("14a1");
  const auto s = make_prime_setting(curve, 5);
  auto o = small_options();
  o.class_sampling_rate = 0.1;
  const std::uint64_t cuts[] = {1, 17000, 40000, 71234, 100000};
  std::vector<CensusReport> parts;
  for (int i = 0; i < 4; ++i) parts.push_back(run_census_range(curve, s, cuts[i], cuts[i + 1], o));
  const auto whole = run_census(curve, s, 100000, o);
  const auto left = merge_reports(merge_reports(merge_reports(parts[0], parts[1]), parts[2]), parts[3]);
  const auto right = merge_reports(parts[0], merge_reports(parts[1], merge_reports(parts[2], parts[3])));
  const auto pairs = merge_reports(merge_reports(parts[0], parts[1]), merge_reports(parts[2], parts[3]));
  EXPECT_TRUE(same_results(left, whole));
  EXPECT_TRUE(same_results(right, whole));
  EXPECT_TRUE(same_results(pairs, whole));
  // order of arguments does not matter for adjacent ranges
  EXPECT_TRUE(same_results(merge_reports(parts[1], parts[0]), merge_reports(parts[0], parts[1])));
  // empty range is an identity
  const auto empty = run_census_range(curve, s, 100000, 100000, o);
  EXPECT_TRUE(same_results(merge_reports(whole, empty), whole));
}

TEST(Merge, RejectsGapsAndMismatches) {
  const auto curve = fixture::curve("497a1");
  const auto s = make_prime_setting(curve, 5);
  auto o = small_options();
  const auto a = run_census_range(curve, s, 1, 1000, o);
  const auto c = run_census_range(curve, s, 2000, 3000, o);
  EXPECT_THROW(merge_reports(a, c), ValidationError);
  o.seed = 5;
  const auto b = run_census_range(curve, s, 1000, 2000, o);
  EXPECT_THROW(merge_reports(a, b), ValidationError);
}

TEST(Crosscheck, ZeroMismatchesAndDetectsCorruption) {
  const auto curve = fixture::curve("497a1");
  const auto s = make_prime_setting(curve, 5);
  const auto ok = residue_class_crosscheck(curve, s, 20000);
  EXPECT_TRUE(ok.ok);
  EXPECT_EQ(ok.mismatch_count, 0u);
  EXPECT_GT(ok.fields_checked, 0u);

  std::vector<SplitPartition> parts;
  for (auto& part : all_partitions(curve, 5)) parts.push_back(residue_class_set(part, 5, 497));
  parts[3].residue_set.erase(parts[3].residue_set.begin());
  const auto bad = residue_class_crosscheck(curve, s, 20000, parts);
  EXPECT_FALSE(bad.ok);
  EXPECT_GT(bad.mismatch_count, 0u);
  EXPECT_EQ(bad.mismatches.front().partition, parts[3].label());
}

TEST(Report, JsonAndTsvShape) {
  const auto curve = fixture::curve("497a1");
  const auto r = run_census(curve, make_prime_setting(curve, 5), 20000, small_options());
  const auto j = census_json(r);
  EXPECT_EQ(j["schema"], "choired.census/1");
  EXPECT_EQ(j["theoretical"]["delta_choired_ss"]["exact"], "2485/13824");
  EXPECT_EQ(j["tallies"]["per_partition"].size(), 8u);
  EXPECT_FALSE(j.contains("threads"));
  const auto tsv = census_tsv(r);
  EXPECT_EQ(tsv.rfind("name\tcount\tempirical\ttheoretical\tabs_error\tverdict\n", 0), 0u);
  EXPECT_EQ(std::count(tsv.begin(), tsv.end(), '\n'), static_cast<long>(r.rows.size() + 1));
}

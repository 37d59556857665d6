#pragma once

// Empirical side: enumerate every imaginary quadratic field with |D| < x,
// classify it against (E, p), and tally what the closed forms predict.
//
// run_census is the OpenMP kernel (table-driven Kronecker symbols over
// sieved chunks of |D|). run_census_reference walks the same range one field
// at a time through classify_field / choired_verdict and is kept as the
// serial oracle for the kernel.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "choired/arith.hpp"
#include "choired/curve.hpp"
#include "choired/density.hpp"

namespace choired {

/// Every fundamental D < 0 with |D| < x, ascending in |D|.
/// Throws ValidationError for x < 3.
std::vector<FundamentalDiscriminant> enumerate_fundamental_discriminants(std::uint64_t x);

/// Same for lo <= |D| < hi, lo >= 1.
std::vector<FundamentalDiscriminant> enumerate_fundamental_discriminants(std::uint64_t lo,
                                                                         std::uint64_t hi);

struct CensusOptions {
  Mode mode = Mode::ss;
  double class_sampling_rate = 0.0;
  std::uint64_t seed = 0;
  double tol_1e6 = 0.02;         // absolute, used below x = 10^7
  double tol_1e7 = 0.005;        // absolute, used from x = 10^7 on
  double total_rel_tol = 0.005;  // relative, total field count vs x / (2 zeta(2))
  bool assume_surjective = true;
  // execution only; never changes a result
  std::uint64_t chunk_size = std::uint64_t{1} << 22;
  int threads = 0;  // 0: OpenMP default

  /// Tolerance applied to density rows for a census up to x.
  double tolerance_for(std::uint64_t x) const { return x >= 10'000'000 ? tol_1e7 : tol_1e6; }
};

/// Exact counts over lo <= |D| < hi.
struct CensusTally {
  std::uint64_t lo = 1;
  std::uint64_t hi = 1;
  std::uint64_t total_fields = 0;
  std::uint64_t coprime_fields = 0;
  std::vector<std::uint64_t> per_partition;  // by partition mask
  std::uint64_t choired_ss_plus = 0;
  std::uint64_t choired_ord_plus = 0;
  std::uint64_t choired_ord_minus = 0;
  std::uint64_t class_sample_size = 0;
  std::uint64_t class_sample_p_divides = 0;

  bool empty() const { return lo == hi; }
  bool operator==(const CensusTally&) const = default;
};

struct RatioRow {
  std::string name;
  std::uint64_t count = 0;
  double empirical = 0;
  double theoretical = 0;
  double abs_error = 0;
  double tolerance = 0;
  std::string verdict;  // pass, fail, n/a

  bool operator==(const RatioRow&) const = default;
};

struct ClassSampleSummary {
  std::uint64_t sample_size = 0;
  std::uint64_t p_divides = 0;
  double estimate = 0;  // c_p* estimate
  double ci_low = 0;    // Wilson 95%
  double ci_high = 0;
  double cp_formula = 0;

  bool operator==(const ClassSampleSummary&) const = default;
};

struct CensusReport {
  std::string curve_label;
  std::int64_t conductor = 0;
  std::int64_t p = 0;
  std::int64_t ap = 0;
  Reduction reduction = Reduction::ordinary;
  Surjectivity surjectivity = Surjectivity::unknown;
  std::vector<std::int64_t> kounter;
  CensusOptions options;
  std::vector<std::int64_t> pi_primes;
  std::vector<std::string> partition_labels;
  DensityFormulas theoretical;
  CensusTally tally;

  // recomputed from the tally by summarize()
  std::vector<RatioRow> rows;
  std::optional<ClassSampleSummary> class_sample;
  std::vector<std::string> warnings;

  bool passed() const;
};

/// Recomputes rows, class_sample and warnings from the tally.
void summarize(CensusReport& report);

/// OpenMP kernel over 1 <= |D| < x.
CensusReport run_census(const CurveModel& curve, const PrimeSetting& setting, std::uint64_t x,
                        const CensusOptions& options);
CensusReport run_census_range(const CurveModel& curve, const PrimeSetting& setting,
                              std::uint64_t lo, std::uint64_t hi, const CensusOptions& options);

/// Serial per-field reference over 1 <= |D| < x.
CensusReport run_census_reference(const CurveModel& curve, const PrimeSetting& setting,
                                  std::uint64_t x, const CensusOptions& options);
CensusReport run_census_reference_range(const CurveModel& curve, const PrimeSetting& setting,
                                        std::uint64_t lo, std::uint64_t hi,
                                        const CensusOptions& options);

/// Sums the tallies of two reports over adjacent ranges with the same curve,
/// prime and result-affecting options. An empty-range report is an identity.
/// Throws ValidationError on mismatched configuration or non-adjacent ranges.
CensusReport merge_reports(const CensusReport& a, const CensusReport& b);

/// True iff the two reports agree on everything except execution options.
bool same_results(const CensusReport& a, const CensusReport& b);

/// Deterministic per-field sampling decision for class-number estimation.
bool class_sample_selected(std::uint64_t seed, std::uint64_t abs_disc, double rate);

struct CrosscheckMismatch {
  std::int64_t D = 0;
  std::string partition;
  bool residue_member = false;
  bool kronecker_member = false;
};

struct CrosscheckResult {
  bool ok = true;
  std::uint64_t fields_checked = 0;
  std::vector<CrosscheckMismatch> mismatches;  // capped at 100
  std::uint64_t mismatch_count = 0;
};

/// For every coprime fundamental D with |D| < x and every partition:
/// (D mod modulus in residue set) <=> (Kronecker symbols match the partition).
/// Uses all 2^(r+1) partitions with residue sets from residue_class_set.
CrosscheckResult residue_class_crosscheck(const CurveModel& curve, const PrimeSetting& setting,
                                          std::uint64_t x);
CrosscheckResult residue_class_crosscheck(const CurveModel& curve, const PrimeSetting& setting,
                                          std::uint64_t x,
                                          const std::vector<SplitPartition>& partitions);

namespace detail {

/// Header fields, theoretical densities and partition labels for a census of
/// (curve, setting); the tally is left empty.
CensusReport make_report_shell(const CurveModel& curve, const PrimeSetting& setting,
                               const CensusOptions& options);

/// Partition-mask classes of the choired sets: which masks are p-split
/// choired, and which are p-inert choired.
struct ChoiredMasks {
  std::vector<std::uint8_t> plus;
  std::vector<std::uint8_t> minus;
};
ChoiredMasks choired_masks(const CurveModel& curve, const PrimeSetting& setting);

}  // namespace detail

}  // namespace choired

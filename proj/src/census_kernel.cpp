#include <omp.h>

#include <algorithm>

#include "choired/census.hpp"
#include "choired/errors.hpp"
#include "choired/fields.hpp"

namespace choired {

namespace {

// Odd primes up to this size get a lookup table of (-n | q) by n mod q.
constexpr std::int64_t kTableLimit = std::int64_t{1} << 20;

struct KernelPlan {
  std::vector<std::int64_t> primes;              // partition order: p, q_1, ..., q_r
  std::vector<std::vector<std::int8_t>> tables;  // empty for 2 and for large primes
  std::vector<std::uint8_t> plus_mask;
  std::int64_t p = 0;
  double rate = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint32_t> sieve_primes;

  int symbol(std::size_t i, std::uint64_t n) const {
    const std::int64_t q = primes[i];
    if (q == 2) {
      if (n % 2 == 0) return 0;
      const std::uint64_t r = n % 8;  // D = -n: D = 1, 7 (mod 8) iff n = 7, 1
      return (r == 1 || r == 7) ? 1 : -1;
    }
    if (!tables[i].empty()) return tables[i][n % static_cast<std::uint64_t>(q)];
    return kronecker_symbol(-static_cast<std::int64_t>(n), static_cast<std::uint64_t>(q));
  }
};

bool choired_possible(const PrimeSetting& setting, const CensusOptions& options) {
  return options.assume_surjective || setting.surjectivity != Surjectivity::unknown;
}

KernelPlan make_plan(const CurveModel& curve, const PrimeSetting& setting,
                     const CensusOptions& options, std::uint64_t hi) {
  KernelPlan plan;
  plan.primes = partition_primes(curve, setting.p);
  for (const auto q : plan.primes) {
    std::vector<std::int8_t> table;
    if (q != 2 && q <= kTableLimit) {
      table.resize(static_cast<std::size_t>(q));
      for (std::int64_t r = 0; r < q; ++r)
        table[static_cast<std::size_t>(r)] =
            static_cast<std::int8_t>(kronecker_symbol(-r, static_cast<std::uint64_t>(q)));
    }
    plan.tables.push_back(std::move(table));
  }
  plan.plus_mask = detail::choired_masks(curve, setting).plus;
  if (!choired_possible(setting, options)) std::ranges::fill(plan.plus_mask, 0);
  plan.p = setting.p;
  plan.rate = options.class_sampling_rate;
  plan.seed = options.seed;
  plan.sieve_primes = primes_up_to(static_cast<std::uint32_t>(isqrt(hi)));
  return plan;
}

void tally_field(const KernelPlan& plan, std::uint64_t n, CensusTally& t) {
  ++t.total_fields;
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < plan.primes.size(); ++i) {
    const int s = plan.symbol(i, n);
    if (s == 0) return;
    if (s < 0) mask |= std::uint64_t{1} << i;
  }
  ++t.coprime_fields;
  ++t.per_partition[mask];
  if (plan.plus_mask[mask] && class_sample_selected(plan.seed, n, plan.rate)) {
    ++t.class_sample_size;
    if (class_number(-static_cast<std::int64_t>(n)) % plan.p == 0) ++t.class_sample_p_divides;
  }
}

// Fundamental discriminants D = -n with lo <= n < hi: n = 3 (mod 4) squarefree,
// or n = 4m with m = 1, 2 (mod 4) squarefree.
CensusTally census_chunk(const KernelPlan& plan, std::uint64_t lo, std::uint64_t hi) {
  CensusTally t;
  t.lo = lo;
  t.hi = hi;
  t.per_partition.assign(std::size_t{1} << plan.primes.size(), 0);
  if (hi <= lo) return t;
  const auto odd = sieve_squarefree(lo, hi, plan.sieve_primes);
  const std::uint64_t m_lo = (lo + 3) / 4;
  const std::uint64_t m_hi = std::max(m_lo, (hi + 3) / 4);
  const auto quarter = sieve_squarefree(m_lo, m_hi, plan.sieve_primes);

  std::uint64_t n = lo;
  for (; n < hi && n % 4 != 0; ++n)
    if (n % 4 == 3 && odd.is_squarefree(n)) tally_field(plan, n, t);
  for (; n + 3 < hi; n += 4) {
    const std::uint64_t m = n / 4;
    if (m % 4 != 0 && m % 4 != 3 && quarter.is_squarefree(m)) tally_field(plan, n, t);
    if (odd.is_squarefree(n + 3)) tally_field(plan, n + 3, t);
  }
  for (; n < hi; ++n) {
    if (n % 4 == 3 && odd.is_squarefree(n)) tally_field(plan, n, t);
    if (n % 4 == 0 && (n / 4) % 4 != 0 && (n / 4) % 4 != 3 && quarter.is_squarefree(n / 4))
      tally_field(plan, n, t);
  }
  return t;
}

void add_into(CensusTally& acc, const CensusTally& t) {
  acc.hi = t.hi;
  acc.total_fields += t.total_fields;
  acc.coprime_fields += t.coprime_fields;
  for (std::size_t i = 0; i < acc.per_partition.size(); ++i) acc.per_partition[i] += t.per_partition[i];
  acc.class_sample_size += t.class_sample_size;
  acc.class_sample_p_divides += t.class_sample_p_divides;
}

}  // namespace

CensusReport run_census_range(const CurveModel& curve, const PrimeSetting& setting,
                              std::uint64_t lo, std::uint64_t hi, const CensusOptions& options) {
  if (lo == 0 || hi < lo) throw ValidationError("census range must satisfy 1 <= lo <= hi");
  CensusReport report = detail::make_report_shell(curve, setting, options);
  const KernelPlan plan = make_plan(curve, setting, options, hi);

  const std::uint64_t chunk = options.chunk_size;
  const std::uint64_t n_chunks = (hi - lo + chunk - 1) / chunk;
  std::vector<CensusTally> parts(n_chunks);
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n_chunks); ++i) {
    const std::uint64_t a = lo + static_cast<std::uint64_t>(i) * chunk;
    parts[static_cast<std::size_t>(i)] = census_chunk(plan, a, std::min(hi, a + chunk));
  }

  CensusTally& t = report.tally;
  t.lo = lo;
  t.hi = lo;
  for (const auto& part : parts) add_into(t, part);
  t.hi = hi;

  const auto masks = detail::choired_masks(curve, setting);
  for (std::size_t m = 0; m < t.per_partition.size() && choired_possible(setting, options); ++m) {
    if (masks.plus[m]) t.choired_ord_plus += t.per_partition[m];
    if (masks.minus[m]) t.choired_ord_minus += t.per_partition[m];
  }
  t.choired_ss_plus = t.choired_ord_plus;
  summarize(report);
  return report;
}

CensusReport run_census(const CurveModel& curve, const PrimeSetting& setting, std::uint64_t x,
                        const CensusOptions& options) {
  if (x < 3) throw ValidationError("census: x must be >= 3");
  return run_census_range(curve, setting, 1, x, options);
}

}  // namespace choired

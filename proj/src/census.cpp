#include "choired/census.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "choired/errors.hpp"
#include "choired/fields.hpp"

namespace choired {

std::vector<FundamentalDiscriminant> enumerate_fundamental_discriminants(std::uint64_t lo,
                                                                         std::uint64_t hi) {
  if (lo == 0) throw ValidationError("enumerate_fundamental_discriminants: lo must be >= 1");
  std::vector<FundamentalDiscriminant> out;
  if (hi <= lo) return out;
  // |d| = m with m = 3 (mod 4) gives |D| = m; m = 1, 2 (mod 4) gives |D| = 4m.
  const std::uint64_t m_lo = std::max<std::uint64_t>(1, (lo + 3) / 4);
  const auto sieve = sieve_squarefree(m_lo, hi);
  for (std::uint64_t m = m_lo; m < hi; ++m) {
    if (!sieve.is_squarefree(m)) continue;
    const auto d = -static_cast<std::int64_t>(m);
    const std::uint64_t absD = m % 4 == 3 ? m : 4 * m;
    if (absD < lo || absD >= hi) continue;
    out.push_back({-static_cast<std::int64_t>(absD), d});
  }
  std::ranges::sort(out, [](const auto& a, const auto& b) { return a.D > b.D; });
  return out;
}

std::vector<FundamentalDiscriminant> enumerate_fundamental_discriminants(std::uint64_t x) {
  if (x < 3) throw ValidationError("enumerate_fundamental_discriminants: x must be >= 3");
  return enumerate_fundamental_discriminants(1, x);
}

bool class_sample_selected(std::uint64_t seed, std::uint64_t abs_disc, double rate) {
  if (rate <= 0) return false;
  if (rate >= 1) return true;
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  const std::uint64_t h = mix(seed ^ mix(abs_disc));
  return static_cast<double>(h >> 11) * 0x1.0p-53 < rate;
}

namespace detail {

ChoiredMasks choired_masks(const CurveModel& curve, const PrimeSetting& setting) {
  const auto primes = partition_primes(curve, setting.p);
  const std::uint64_t n_masks = std::uint64_t{1} << primes.size();
  ChoiredMasks out{std::vector<std::uint8_t>(n_masks, 0), std::vector<std::uint8_t>(n_masks, 0)};
  if (!setting.ap_ok()) return out;
  for (std::uint64_t mask = 0; mask < n_masks; ++mask) {
    const std::uint64_t bad_inert = mask >> 1;
    bool ok = std::popcount(bad_inert) % 2 == 1;
    for (std::size_t i = 1; ok && i < primes.size(); ++i)
      if (((mask >> i) & 1) && setting.kounter.contains(primes[i])) ok = false;
    if (!ok) continue;
    (mask & 1 ? out.minus : out.plus)[mask] = 1;
  }
  return out;
}

CensusReport make_report_shell(const CurveModel& curve, const PrimeSetting& setting,
                               const CensusOptions& options) {
  if (!(options.class_sampling_rate >= 0 && options.class_sampling_rate <= 1))
    throw ValidationError("class sampling rate must lie in [0, 1]");
  if (options.chunk_size == 0) throw ValidationError("chunk size must be positive");
  CensusReport r;
  r.theoretical = density_choired(curve, setting, options.mode);
  r.curve_label = curve.label;
  r.conductor = curve.conductor;
  r.p = setting.p;
  r.ap = setting.ap;
  r.reduction = setting.reduction;
  r.surjectivity = setting.surjectivity;
  r.kounter = setting.kounter.primes;
  r.options = options;
  r.pi_primes = partition_primes(curve, setting.p);
  for (const auto& part : all_partitions(curve, setting.p))
    r.partition_labels.push_back(part.label());
  r.tally.per_partition.assign(r.partition_labels.size(), 0);
  return r;
}

}  // namespace detail

bool CensusReport::passed() const {
  return std::ranges::none_of(rows, [](const RatioRow& row) { return row.verdict == "fail"; });
}

void summarize(CensusReport& report) {
  const CensusTally& t = report.tally;
  const CensusOptions& o = report.options;
  report.rows.clear();
  report.warnings.clear();
  report.class_sample.reset();

  const double total = static_cast<double>(t.total_fields);
  const double tol = o.tolerance_for(t.hi);
  auto add = [&](std::string name, std::uint64_t count, double empirical, double theoretical,
                 double tolerance) {
    RatioRow row{std::move(name), count, empirical, theoretical,
                 std::abs(empirical - theoretical), tolerance, ""};
    row.verdict = t.total_fields == 0 ? "n/a" : (row.abs_error < tolerance ? "pass" : "fail");
    report.rows.push_back(std::move(row));
  };
  auto frac = [&](std::uint64_t c) { return total > 0 ? static_cast<double>(c) / total : 0.0; };

  const double expected_total = static_cast<double>(t.hi - t.lo) / (2.0 * zeta2());
  add("total_fields", t.total_fields, expected_total > 0 ? total / expected_total : 0.0, 1.0,
      o.total_rel_tol);
  const auto& th = report.theoretical;
  add("coprime_fraction", t.coprime_fields, frac(t.coprime_fields), to_double(th.frak_d), tol);
  for (std::size_t i = 0; i < t.per_partition.size(); ++i)
    add("partition " + report.partition_labels[i], t.per_partition[i], frac(t.per_partition[i]),
        to_double(th.delta_pi), tol);
  add("choired_ss_plus", t.choired_ss_plus, frac(t.choired_ss_plus), to_double(th.delta_choired_ss),
      tol);
  add("choired_ord_minus", t.choired_ord_minus, frac(t.choired_ord_minus),
      to_double(th.delta_choired_ss), tol);
  add("choired_ord", t.choired_ord_plus + t.choired_ord_minus,
      frac(t.choired_ord_plus + t.choired_ord_minus), to_double(th.delta_choired_ord), tol);
  const std::uint64_t gap = t.choired_ord_plus > t.choired_ord_minus
                                ? t.choired_ord_plus - t.choired_ord_minus
                                : t.choired_ord_minus - t.choired_ord_plus;
  add("pm_balance", gap,
      t.coprime_fields > 0 ? static_cast<double>(gap) / static_cast<double>(t.coprime_fields) : 0.0,
      0.0, tol);

  if (o.class_sampling_rate > 0) {
    ClassSampleSummary cs;
    cs.sample_size = t.class_sample_size;
    cs.p_divides = t.class_sample_p_divides;
    cs.cp_formula = th.cp;
    if (cs.sample_size > 0) {
      const double n = static_cast<double>(cs.sample_size);
      const double ph = static_cast<double>(cs.p_divides) / n;
      const double z = 1.959963984540054;
      const double denom = 1 + z * z / n;
      const double center = (ph + z * z / (2 * n)) / denom;
      const double half = z * std::sqrt(ph * (1 - ph) / n + z * z / (4 * n * n)) / denom;
      cs.estimate = ph;
      cs.ci_low = std::max(0.0, center - half);
      cs.ci_high = std::min(1.0, center + half);
    }
    report.class_sample = cs;
  }

  if (report.surjectivity == Surjectivity::unknown)
    report.warnings.push_back(
        o.assume_surjective
            ? "surjectivity of the mod-p representation is unknown; counts assume it"
            : "surjectivity of the mod-p representation is unknown and not assumed; choired "
              "sets are empty");
  if (t.hi < 1'000'000)
    report.warnings.push_back("x = " + std::to_string(t.hi) +
                              " is below the asymptotic regime (10^6); verdicts are indicative");
}

CensusReport merge_reports(const CensusReport& a, const CensusReport& b) {
  const auto& oa = a.options;
  const auto& ob = b.options;
  if (a.curve_label != b.curve_label || a.conductor != b.conductor || a.p != b.p ||
      oa.mode != ob.mode || oa.class_sampling_rate != ob.class_sampling_rate ||
      oa.seed != ob.seed || oa.tol_1e6 != ob.tol_1e6 || oa.tol_1e7 != ob.tol_1e7 ||
      oa.total_rel_tol != ob.total_rel_tol || oa.assume_surjective != ob.assume_surjective ||
      a.tally.per_partition.size() != b.tally.per_partition.size())
    throw ValidationError("merge_reports: reports were computed under different configurations");
  if (b.tally.empty()) return a;
  if (a.tally.empty()) return b;
  const CensusReport& first = a.tally.lo <= b.tally.lo ? a : b;
  const CensusReport& second = a.tally.lo <= b.tally.lo ? b : a;
  if (first.tally.hi != second.tally.lo)
    throw ValidationError("merge_reports: ranges [" + std::to_string(first.tally.lo) + ", " +
                          std::to_string(first.tally.hi) + ") and [" +
                          std::to_string(second.tally.lo) + ", " +
                          std::to_string(second.tally.hi) + ") are not adjacent");
  CensusReport out = first;
  auto& t = out.tally;
  const auto& u = second.tally;
  t.hi = u.hi;
  t.total_fields += u.total_fields;
  t.coprime_fields += u.coprime_fields;
  for (std::size_t i = 0; i < t.per_partition.size(); ++i) t.per_partition[i] += u.per_partition[i];
  t.choired_ss_plus += u.choired_ss_plus;
  t.choired_ord_plus += u.choired_ord_plus;
  t.choired_ord_minus += u.choired_ord_minus;
  t.class_sample_size += u.class_sample_size;
  t.class_sample_p_divides += u.class_sample_p_divides;
  summarize(out);
  return out;
}

bool same_results(const CensusReport& a, const CensusReport& b) {
  return a.curve_label == b.curve_label && a.conductor == b.conductor && a.p == b.p &&
         a.ap == b.ap && a.options.mode == b.options.mode &&
         a.options.seed == b.options.seed &&
         a.options.class_sampling_rate == b.options.class_sampling_rate && a.tally == b.tally &&
         a.rows == b.rows && a.class_sample == b.class_sample && a.warnings == b.warnings;
}

CrosscheckResult residue_class_crosscheck(const CurveModel& curve, const PrimeSetting& setting,
                                          std::uint64_t x,
                                          const std::vector<SplitPartition>& partitions) {
  CrosscheckResult res;
  for (const auto& fd : enumerate_fundamental_discriminants(x)) {
    const FieldClass fc = classify_field(fd.D, curve, setting);
    if (!fc.coprime_ok) continue;
    ++res.fields_checked;
    for (const auto& part : partitions) {
      const std::int64_t residue = ((fd.D % part.modulus) + part.modulus) % part.modulus;
      const bool in_set = std::ranges::binary_search(part.residue_set, residue);
      bool matches = true;
      for (const auto& s : fc.symbols) {
        const bool inert = std::ranges::binary_search(part.pi_minus, s.prime);
        if (s.symbol != (inert ? -1 : 1)) matches = false;
      }
      if (in_set == matches) continue;
      res.ok = false;
      ++res.mismatch_count;
      if (res.mismatches.size() < 100)
        res.mismatches.push_back({fd.D, part.label(), in_set, matches});
    }
  }
  return res;
}

CrosscheckResult residue_class_crosscheck(const CurveModel& curve, const PrimeSetting& setting,
                                          std::uint64_t x) {
  std::vector<SplitPartition> parts;
  for (auto& part : all_partitions(curve, setting.p))
    parts.push_back(residue_class_set(std::move(part), setting.p, curve.conductor));
  return residue_class_crosscheck(curve, setting, x, parts);
}

}  // namespace choired

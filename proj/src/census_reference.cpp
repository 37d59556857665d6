#include "choired/census.hpp"
#include "choired/errors.hpp"
#include "choired/fields.hpp"

namespace choired {

CensusReport run_census_reference_range(const CurveModel& curve, const PrimeSetting& setting,
                                        std::uint64_t lo, std::uint64_t hi,
                                        const CensusOptions& options) {
  if (lo == 0 || hi < lo) throw ValidationError("census range must satisfy 1 <= lo <= hi");
  CensusReport report = detail::make_report_shell(curve, setting, options);
  CensusTally& t = report.tally;
  t.lo = lo;
  t.hi = hi;
  for (const auto& fd : enumerate_fundamental_discriminants(lo, hi)) {
    ++t.total_fields;
    FieldClass fc = classify_field(fd.D, curve, setting);
    if (!fc.coprime_ok) continue;
    ++t.coprime_fields;
    std::size_t mask = 0;
    for (std::size_t i = 0; i < fc.symbols.size(); ++i)
      if (fc.symbols[i].symbol == -1) mask |= std::size_t{1} << i;
    ++t.per_partition[mask];

    const auto absD = static_cast<std::uint64_t>(-fd.D);
    const bool sample = class_sample_selected(options.seed, absD, options.class_sampling_rate);
    ChoiredVerdict v = choired_verdict(fc, curve, setting, options.assume_surjective);
    if (v.overall_ss && sample) {
      fc.class_number = class_number(fd.D);
      v = choired_verdict(fc, curve, setting, options.assume_surjective);
      ++t.class_sample_size;
      if (!*v.class_number_ok) ++t.class_sample_p_divides;
    }
    if (v.overall_ss) ++t.choired_ss_plus;
    if (v.overall_ord && v.p_split) ++t.choired_ord_plus;
    if (v.overall_ord && !v.p_split) ++t.choired_ord_minus;
  }
  summarize(report);
  return report;
}

CensusReport run_census_reference(const CurveModel& curve, const PrimeSetting& setting,
                                  std::uint64_t x, const CensusOptions& options) {
  if (x < 3) throw ValidationError("census: x must be >= 3");
  return run_census_reference_range(curve, setting, 1, x, options);
}

}  // namespace choired

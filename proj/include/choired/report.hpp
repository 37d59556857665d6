#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "choired/census.hpp"
#include "choired/density.hpp"
#include "choired/primescan.hpp"

namespace choired {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kCensusSchema = "choired.census/1";
inline constexpr std::string_view kPrimeScanSchema = "choired.primescan/1";
inline constexpr std::string_view kDensitySchema = "choired.density/1";

inline constexpr std::string_view kToleranceNote =
    "no error term is known for these densities; tolerances are engineering choices";

using Json = nlohmann::ordered_json;

/// Tallies, ratios and class sample of a census. Execution options
/// (threads, chunk size) are left out so that reports compare equal across
/// worker counts and chunkings.
Json census_json(const CensusReport& report);

/// name, count, empirical, theoretical, abs_error, verdict
std::string census_tsv(const CensusReport& report);

Json density_json(const DensityFormulas& f);

Json primescan_json(const PrimeScan& scan);

/// p, a_p, reduction, split, bound_ok, congruence_ok, ap_ok, hK_ok, verdict
std::string primescan_tsv(const PrimeScan& scan);

}  // namespace choired

#pragma once

// Fixed (E, K), varying p: which good primes does the prime-varying
// cotorsion theorem cover?

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "choired/curve.hpp"

namespace choired {

enum class ScanVerdict { guaranteed_ss, guaranteed_ord, not_guaranteed, unknown };

std::string_view to_string(ScanVerdict v);

struct PrimeScanRow {
  std::int64_t p = 0;
  std::int64_t ap = 0;
  Reduction reduction = Reduction::ordinary;
  bool p_split_in_K = false;
  bool p_ramified_in_K = false;
  bool above_serre_bound = false;
  bool q_congruence_clear = false;  // no bad q = +-1 (mod p)
  bool ap_nondegenerate = false;    // ord: a_p != 0, +-1 (mod p); ss: a_p = 0
  std::optional<bool> hK_ok;        // ss rows only
  ScanVerdict verdict = ScanVerdict::unknown;
  std::string reason;
};

struct PrimeScanOptions {
  bool conjectural_serre = false;
  /// Required when |K_disc| > 10^7; otherwise computed by form counting.
  std::optional<std::int64_t> class_number_K;
  int threads = 0;
};

struct PrimeScan {
  std::int64_t K_disc = 0;
  std::int64_t hK = 0;
  std::int64_t n_minus = 1;
  bool hypothesis_ok = false;  // N^- is a product of an odd number of primes, gcd(D_K, N) = 1
  std::string hypothesis_note;
  SerreBound serre;
  std::vector<PrimeScanRow> rows;  // ascending p
};

inline constexpr std::int64_t kMaxScanPrime = 1'000'000;
inline constexpr std::int64_t kMaxFormCountDisc = 10'000'000;

/// One row per good prime in [p_lo, p_hi]. Throws ValidationError for a CM
/// curve, a non-fundamental K_disc, or a range outside 3 < p_lo <= p_hi <= 10^6.
PrimeScan scan_primes(const CurveModel& curve, std::int64_t K_disc, std::int64_t p_lo,
                      std::int64_t p_hi, const PrimeScanOptions& options = {});

}  // namespace choired

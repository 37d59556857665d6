#include "choired/primescan.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>

#include "choired/arith.hpp"
#include "choired/errors.hpp"
#include "choired/fields.hpp"

namespace choired {

std::string_view to_string(ScanVerdict v) {
  switch (v) {
    case ScanVerdict::guaranteed_ss: return "guaranteed_ss";
    case ScanVerdict::guaranteed_ord: return "guaranteed_ord";
    case ScanVerdict::not_guaranteed: return "not_guaranteed";
    case ScanVerdict::unknown: return "unknown";
  }
  return "unknown";
}

namespace {

PrimeScanRow scan_one(const CurveModel& curve, const PrimeScan& scan, std::int64_t p,
                      const PrimeScanOptions& options) {
  PrimeScanRow row;
  row.p = p;
  row.ap = ap_point_count(curve, p);
  row.reduction = row.ap == 0 ? Reduction::supersingular : Reduction::ordinary;
  const int symbol = kronecker_symbol(scan.K_disc, static_cast<std::uint64_t>(p));
  row.p_split_in_K = symbol == 1;
  row.p_ramified_in_K = symbol == 0;
  const bool ss = row.reduction == Reduction::supersingular;

  if (options.conjectural_serre) {
    // p > max(N^- + 1, 37), and also h_K in the supersingular case
    double threshold = std::max(static_cast<double>(scan.n_minus + 1), kConjecturalSerreConstant);
    if (ss) threshold = std::max(threshold, static_cast<double>(scan.hK));
    row.above_serre_bound = static_cast<double>(p) > threshold;
  } else {
    row.above_serre_bound = static_cast<double>(p) > scan.serre.value;
  }

  row.q_congruence_clear = std::ranges::none_of(curve.bad_primes, [p](const BadPrime& bp) {
    const std::int64_t r = bp.prime % p;
    return r == 1 || r == p - 1;
  });
  const std::int64_t a = ((row.ap % p) + p) % p;
  row.ap_nondegenerate = ss ? true : (a != 0 && a != 1 && a != p - 1);
  if (ss) row.hK_ok = scan.hK % p != 0;

  if (!scan.hypothesis_ok) {
    row.verdict = ScanVerdict::not_guaranteed;
    row.reason = scan.hypothesis_note;
    return row;
  }
  if (row.p_ramified_in_K) {
    row.verdict = ScanVerdict::not_guaranteed;
    row.reason = "p ramifies in K (gcd(D_K, pN) != 1)";
    return row;
  }
  std::string failed;
  if (!row.q_congruence_clear) failed = "a bad prime is +-1 mod p";
  else if (!row.ap_nondegenerate) failed = "a_p = 0 or +-1 mod p";
  else if (ss && !row.p_split_in_K) failed = "p is inert in K";
  else if (ss && !*row.hK_ok) failed = "p divides h_K";
  if (!failed.empty()) {
    row.verdict = ScanVerdict::not_guaranteed;
    row.reason = failed;
    return row;
  }
  if (!row.above_serre_bound) {
    row.verdict = ScanVerdict::unknown;
    row.reason = "below the surjectivity threshold";
    return row;
  }
  row.verdict = ss ? ScanVerdict::guaranteed_ss : ScanVerdict::guaranteed_ord;
  return row;
}

}  // namespace

PrimeScan scan_primes(const CurveModel& curve, std::int64_t K_disc, std::int64_t p_lo,
                      std::int64_t p_hi, const PrimeScanOptions& options) {
  if (!curve.non_cm)
    throw ValidationError("curve " + curve.label +
                          " is not attested non-CM; the prime scan requires a curve without CM");
  if (!is_fundamental_discriminant(K_disc))
    throw ValidationError(std::to_string(K_disc) + " is not an imaginary quadratic discriminant");
  if (p_lo <= 3 || p_lo > p_hi || p_hi > kMaxScanPrime)
    throw ValidationError("prime range must satisfy 3 < p_lo <= p_hi <= 10^6");

  PrimeScan scan;
  scan.K_disc = K_disc;
  scan.serre = serre_surjectivity_bound(curve);
  if (options.class_number_K) {
    scan.hK = *options.class_number_K;
  } else {
    if (-K_disc > kMaxFormCountDisc)
      throw ValidationError("|D_K| > 10^7: supply the class number of K explicitly");
    scan.hK = class_number(K_disc);
  }

  int inert = 0;
  bool ramified = false;
  for (const auto& bp : curve.bad_primes) {
    const int s = kronecker_symbol(K_disc, static_cast<std::uint64_t>(bp.prime));
    if (s == -1) {
      ++inert;
      scan.n_minus *= bp.prime;
    }
    ramified = ramified || s == 0;
  }
  if (ramified) {
    scan.hypothesis_note = "a bad prime ramifies in K (gcd(D_K, N) != 1)";
  } else if (inert % 2 == 0) {
    scan.hypothesis_note = "N^- = " + std::to_string(scan.n_minus) + " has an even number (" +
                           std::to_string(inert) + ") of prime factors";
  } else {
    scan.hypothesis_ok = true;
  }

  std::vector<std::int64_t> primes;
  for (const auto q : primes_up_to(static_cast<std::uint32_t>(p_hi)))
    if (q >= p_lo && curve.conductor % q != 0) primes.push_back(q);
  scan.rows.resize(primes.size());
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(primes.size()); ++i)
    scan.rows[static_cast<std::size_t>(i)] =
        scan_one(curve, scan, primes[static_cast<std::size_t>(i)], options);
  return scan;
}

}  // namespace choired

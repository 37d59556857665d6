#pragma once

// Closed-form side: splitting partitions of {p, q_1, ..., q_r}, their
// residue-class sets, and the exact choired densities.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "choired/curve.hpp"
#include "choired/rational.hpp"

namespace choired {

enum class Mode { ss, ord };

std::string_view to_string(Mode m);
/// Accepts "ss" and "ord".
Mode parse_mode(std::string_view s);

/// {p, q_1, ..., q_r}: p first, bad primes ascending. Partition masks index
/// into this list: bit i set means the i-th prime is prescribed inert.
std::vector<std::int64_t> partition_primes(const CurveModel& curve, std::int64_t p);

struct SplitPartition {
  std::vector<std::int64_t> pi_minus;  // prescribed inert, ascending
  std::vector<std::int64_t> pi_plus;   // prescribed split, ascending
  std::int64_t modulus = 0;            // pN, or 4pN when N is even; 0 until filled
  std::vector<std::int64_t> residue_set;  // ascending

  /// e.g. "-{7}+{5,71}"
  std::string label() const;
  bool operator==(const SplitPartition&) const = default;
};

/// The partition with inert set given by `mask` over partition_primes.
SplitPartition partition_from_mask(std::span<const std::int64_t> primes, std::uint64_t mask);

/// All 2^(r+1) partitions, in mask order. Residue sets are not filled.
std::vector<SplitPartition> all_partitions(const CurveModel& curve, std::int64_t p);

/// Partitions whose inert bad primes form an odd subset of the non-kounter
/// primes: one per subset with p split (ss), or two with p split and inert
/// (ord). Throws HypothesisError when k >= r.
std::vector<SplitPartition> enumerate_partitions(const CurveModel& curve,
                                                 const PrimeSetting& setting, Mode mode);

/// Fills `modulus` and `residue_set` by CRT from the per-prime residue and
/// non-residue classes; for 2 | N the mod-8 component is {1} (2 split) or
/// {5} (2 inert). Throws ValidationError if N is not square-free or the
/// partition does not cover {p} u {q | N} exactly.
SplitPartition residue_class_set(SplitPartition partition, std::int64_t p, std::int64_t N);

/// (1/2) (x / zeta(2)) M / prod_{q | M} (q + 1). Throws ValidationError for
/// M not square-free.
double coprime_disc_asymptotic(double x, std::int64_t M);

/// pN / ((p + 1) prod (q_i + 1)).
Rational frak_d(std::int64_t p, const CurveModel& curve);
Rational frak_d(std::int64_t p, std::span<const std::int64_t> bad_primes);

struct DensityFormulas {
  Mode mode = Mode::ss;
  int r = 0;
  int k = 0;
  Rational frak_d;
  Rational delta_pi;          // frak_d / 2^(r+1)
  Rational delta_choired_ss;  // frak_d / 2^(k+2)
  Rational delta_choired_ord; // frak_d / 2^(k+1)
  Rational bd_bound;          // delta_choired_ss / 2
  double cp = 0;

  /// The density the selected mode's theorem asserts.
  const Rational& target() const { return mode == Mode::ss ? delta_choired_ss : delta_choired_ord; }
};

/// Throws HypothesisError when k >= r, when mode ss meets an ordinary
/// prime, or when mode ord meets a supersingular prime or a_p = +-1 (mod p).
DensityFormulas density_choired(const CurveModel& curve, const PrimeSetting& setting, Mode mode);

/// (6 / pi^2)(1 - prod_{j >= 1} (1 - p^-j)), truncated once p^-j < tol.
double cohen_lenstra_cp(std::int64_t p, double tol = 1e-18);

}  // namespace choired

#pragma once

// Classification of one imaginary quadratic field against (E, p).

#include <cstdint>
#include <optional>
#include <vector>

#include "choired/curve.hpp"

namespace choired {

struct PrimeSymbol {
  std::int64_t prime;
  int symbol;  // +1 split, -1 inert, 0 ramified

  bool operator==(const PrimeSymbol&) const = default;
};

struct FieldClass {
  std::int64_t D = 0;
  bool coprime_ok = false;
  /// p first, then the bad primes in ascending order.
  std::vector<PrimeSymbol> symbols;
  std::int64_t n_plus = 1;   // product of split bad primes
  std::int64_t n_minus = 1;  // product of inert bad primes
  std::optional<std::int64_t> class_number;

  /// Throws std::out_of_range for a prime not in {p} u {q | N}.
  int symbol_at(std::int64_t q) const;
};

/// Throws ValidationError for a non-fundamental D.
FieldClass classify_field(std::int64_t D, const CurveModel& curve, const PrimeSetting& setting);

struct ChoiredConditions {
  bool coprime = false;
  bool odd_inert_count = false;
  bool no_kounter_inert = false;
  bool ap_ok = false;
  bool surjective_ok = false;
};

struct ChoiredVerdict {
  ChoiredConditions conditions;
  bool p_split = false;
  std::optional<bool> class_number_ok;  // p does not divide h, when h is known
  bool surjectivity_assumed = false;
  bool overall_ord = false;
  bool overall_ss = false;
};

/// With `assume_surjective`, an unknown surjectivity status counts as
/// satisfied and `surjectivity_assumed` records that it was overridden.
/// Throws ValidationError if fc was not computed for this curve and prime.
ChoiredVerdict choired_verdict(const FieldClass& fc, const CurveModel& curve,
                               const PrimeSetting& setting, bool assume_surjective = false);

/// Number of reduced primitive forms (a, b, c) of discriminant D < 0.
/// Throws ValidationError unless D is a negative fundamental discriminant.
std::int64_t class_number(std::int64_t D);

/// p does not divide h(D). Sufficient for the primes above p to be totally
/// ramified in the anticyclotomic Z_p-extension; not necessary.
bool total_ramification_ok(std::int64_t D, std::int64_t p);

}  // namespace choired

#pragma once

// Elliptic curve input: validation of a square-free-conductor model, a_p by
// character sums, kounter primes, and the surjectivity thresholds.

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "choired/rational.hpp"

namespace choired {

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
struct WeierstrassModel {
  std::array<std::int64_t, 5> a{};  // a1, a2, a3, a4, a6

  BigInt b2() const;
  BigInt b4() const;
  BigInt b6() const;
  BigInt b8() const;
  BigInt c4() const;
  BigInt discriminant() const;
};

/// One line of the curve JSON-lines file.
struct CurveRecord {
  std::string label;
  std::array<std::int64_t, 5> ainvs{};
  std::int64_t conductor = 0;
  bool non_cm = false;
  std::optional<std::vector<std::int64_t>> surjective_primes;
};

/// Throws ValidationError on malformed JSON or missing fields.
CurveRecord parse_curve_record(std::string_view json_line);

/// Reads every non-blank line of a JSON-lines stream.
std::vector<CurveRecord> load_curve_records(std::istream& in);
std::vector<CurveRecord> load_curve_records(const std::string& path);

struct BadPrime {
  std::int64_t prime;
  int valuation;  // ord_q of the minimal discriminant

  bool operator==(const BadPrime&) const = default;
};

/// A validated curve: square-free conductor, multiplicative reduction at
/// every bad prime, discriminant supported exactly on the conductor.
struct CurveModel {
  std::string label;
  WeierstrassModel model;
  std::int64_t conductor = 0;
  BigInt discriminant;
  std::vector<BadPrime> bad_primes;  // ascending
  bool non_cm = false;
  std::vector<std::int64_t> attested_surjective_primes;

  int r() const { return static_cast<int>(bad_primes.size()); }
  std::vector<std::int64_t> bad_prime_list() const;
  int valuation_at(std::int64_t q) const;
};

CurveModel validate_curve(const CurveRecord& raw);

/// a_p = p + 1 - #E(F_p), computed as minus the character sum of the
/// completed-square cubic 4x^3 + b2 x^2 + 2 b4 x + b6. Requires p > 3 prime
/// with p not dividing the discriminant.
std::int64_t ap_point_count(const WeierstrassModel& model, std::int64_t p);
std::int64_t ap_point_count(const CurveModel& curve, std::int64_t p);

/// Unramified at a multiplicative prime q iff p | ord_q(Delta_min).
bool mod_p_unramified_at(const CurveModel& curve, std::int64_t q, std::int64_t p);

struct KounterSet {
  std::vector<std::int64_t> primes;  // ascending

  int k() const { return static_cast<int>(primes.size()); }
  bool contains(std::int64_t q) const;
};

/// Bad primes q = +-1 (mod p) at which the mod-p representation is unramified.
KounterSet kounter_primes(const CurveModel& curve, std::int64_t p);

struct SerreBound {
  double kraus = 0;      // 68 N (1 + log log N)^(1/2)
  double cojocaru = 0;   // (4 sqrt 6 / 3) N prod_{q | N} (1 + 1/q)^(1/2)
  double value = 0;      // min of the two
};

inline constexpr double kConjecturalSerreConstant = 37.0;

/// Throws ValidationError for N <= 2.
SerreBound serre_surjectivity_bound(const CurveModel& curve);

/// The threshold above which surjectivity follows: the unconditional bound,
/// or 37 when `conjectural` is set.
double surjectivity_threshold(const CurveModel& curve, bool conjectural);

enum class Surjectivity { attested, implied_by_bound, unknown };
enum class Reduction { ordinary, supersingular };

std::string_view to_string(Surjectivity s);
std::string_view to_string(Reduction r);

Surjectivity surjectivity_status(const CurveModel& curve, std::int64_t p,
                                 bool conjectural = false);

/// Everything about (E, p) that does not depend on the quadratic field.
struct PrimeSetting {
  std::string curve_label;
  std::int64_t conductor = 0;
  std::int64_t p = 0;
  std::int64_t ap = 0;
  Reduction reduction = Reduction::ordinary;
  KounterSet kounter;
  Surjectivity surjectivity = Surjectivity::unknown;

  int k() const { return kounter.k(); }
  /// a_p != +-1 (mod p)
  bool ap_ok() const;
};

/// Throws HypothesisError for p <= 3, ValidationError for composite p or
/// bad reduction at p.
PrimeSetting make_prime_setting(const CurveModel& curve, std::int64_t p,
                                bool conjectural_serre = false);

}  // namespace choired

#include "choired/fields.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "choired/arith.hpp"
#include "choired/errors.hpp"

namespace choired {

int FieldClass::symbol_at(std::int64_t q) const {
  for (const auto& s : symbols)
    if (s.prime == q) return s.symbol;
  throw std::out_of_range("FieldClass: no symbol recorded at " + std::to_string(q));
}

FieldClass classify_field(std::int64_t D, const CurveModel& curve, const PrimeSetting& setting) {
  if (!is_fundamental_discriminant(D))
    throw ValidationError(std::to_string(D) + " is not a negative fundamental discriminant");
  FieldClass fc;
  fc.D = D;
  fc.symbols.push_back({setting.p, kronecker_symbol(D, static_cast<std::uint64_t>(setting.p))});
  bool any_ramified = fc.symbols.front().symbol == 0;
  for (const auto& bp : curve.bad_primes) {
    const int s = kronecker_symbol(D, static_cast<std::uint64_t>(bp.prime));
    fc.symbols.push_back({bp.prime, s});
    if (s == 1) fc.n_plus *= bp.prime;
    if (s == -1) fc.n_minus *= bp.prime;
    any_ramified = any_ramified || s == 0;
  }
  const auto absD = static_cast<std::uint64_t>(-D);
  const auto pN = static_cast<std::uint64_t>(setting.p) * static_cast<std::uint64_t>(curve.conductor);
  fc.coprime_ok = !any_ramified && std::gcd(absD, pN) == 1;
  return fc;
}

ChoiredVerdict choired_verdict(const FieldClass& fc, const CurveModel& curve,
                               const PrimeSetting& setting, bool assume_surjective) {
  if (setting.curve_label != curve.label || setting.conductor != curve.conductor ||
      fc.symbols.size() != curve.bad_primes.size() + 1 || fc.symbols.front().prime != setting.p)
    throw ValidationError("choired_verdict: field classification does not match curve " +
                          curve.label + " at p = " + std::to_string(setting.p));
  for (std::size_t i = 0; i < curve.bad_primes.size(); ++i)
    if (fc.symbols[i + 1].prime != curve.bad_primes[i].prime)
      throw ValidationError("choired_verdict: bad prime list mismatch");

  ChoiredVerdict v;
  auto& c = v.conditions;
  c.coprime = fc.coprime_ok;
  int inert = 0;
  bool kounter_inert = false;
  for (std::size_t i = 1; i < fc.symbols.size(); ++i) {
    if (fc.symbols[i].symbol != -1) continue;
    ++inert;
    kounter_inert = kounter_inert || setting.kounter.contains(fc.symbols[i].prime);
  }
  c.odd_inert_count = inert % 2 == 1;
  c.no_kounter_inert = !kounter_inert;
  c.ap_ok = setting.ap_ok();
  c.surjective_ok = setting.surjectivity != Surjectivity::unknown || assume_surjective;
  v.surjectivity_assumed = setting.surjectivity == Surjectivity::unknown && assume_surjective;
  v.p_split = fc.symbols.front().symbol == 1;
  if (fc.class_number) v.class_number_ok = *fc.class_number % setting.p != 0;

  v.overall_ord = c.coprime && c.odd_inert_count && c.no_kounter_inert && c.ap_ok && c.surjective_ok;
  v.overall_ss = v.overall_ord && v.p_split;
  return v;
}

std::int64_t class_number(std::int64_t D) {
  if (!is_fundamental_discriminant(D))
    throw ValidationError("class_number: " + std::to_string(D) +
                          " is not a negative fundamental discriminant");
  const std::int64_t n = -D;
  // Reduced forms: |b| <= a <= c, b >= 0 if |b| = a or a = c. For each b >= 0
  // of the parity of D, a runs over divisors of m = (b^2 + |D|)/4 with
  // b <= a <= sqrt(m); a form with 0 < b < a < c also has a partner (a, -b, c).
  std::int64_t h = 0;
  for (std::int64_t b = n % 2; 3 * b * b <= n; b += 2) {
    const std::int64_t m = (b * b + n) / 4;
    for (std::int64_t a = std::max<std::int64_t>(b, 1); a * a <= m; ++a) {
      if (m % a != 0) continue;
      const std::int64_t c = m / a;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      h += (b == 0 || b == a || a == c) ? 1 : 2;
    }
  }
  return h;
}

bool total_ramification_ok(std::int64_t D, std::int64_t p) { return class_number(D) % p != 0; }

}  // namespace choired

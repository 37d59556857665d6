#include "choired/curve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "json.hpp"

#include "choired/arith.hpp"
#include "choired/errors.hpp"

namespace choired {

namespace {

std::int64_t mod_p(const BigInt& v, std::int64_t p) {
  BigInt r = v % p;
  if (r < 0) r += p;
  return r.convert_to<std::int64_t>();
}

int big_valuation(BigInt n, std::int64_t q) {
  if (n == 0) return 0;
  int v = 0;
  while (n % q == 0) {
    n /= q;
    ++v;
  }
  return v;
}

}  // namespace

BigInt WeierstrassModel::b2() const { return BigInt(a[0]) * a[0] + 4 * BigInt(a[1]); }
BigInt WeierstrassModel::b4() const { return 2 * BigInt(a[3]) + BigInt(a[0]) * a[2]; }
BigInt WeierstrassModel::b6() const { return BigInt(a[2]) * a[2] + 4 * BigInt(a[4]); }

BigInt WeierstrassModel::b8() const {
  const BigInt a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3], a6 = a[4];
  return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
}

BigInt WeierstrassModel::c4() const {
  const BigInt b2v = b2();
  return b2v * b2v - 24 * b4();
}

BigInt WeierstrassModel::discriminant() const {
  const BigInt b2v = b2(), b4v = b4(), b6v = b6(), b8v = b8();
  return -b2v * b2v * b8v - 8 * b4v * b4v * b4v - 27 * b6v * b6v + 9 * b2v * b4v * b6v;
}

CurveRecord parse_curve_record(std::string_view json_line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("curve record is not valid JSON: ") + e.what());
  }
  CurveRecord rec;
  try {
    rec.label = j.at("label").get<std::string>();
    const auto ainvs = j.at("ainvs").get<std::vector<std::int64_t>>();
    if (ainvs.size() != 5)
      throw ValidationError("curve " + rec.label + ": ainvs must have five entries");
    std::ranges::copy(ainvs, rec.ainvs.begin());
    rec.conductor = j.at("conductor").get<std::int64_t>();
    rec.non_cm = j.at("non_cm").get<bool>();
    if (j.contains("surjective_primes"))
      rec.surjective_primes = j.at("surjective_primes").get<std::vector<std::int64_t>>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("curve record: ") + e.what());
  }
  return rec;
}

std::vector<CurveRecord> load_curve_records(std::istream& in) {
  std::vector<CurveRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_curve_record(line));
  }
  return out;
}

std::vector<CurveRecord> load_curve_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open curve file " + path);
  return load_curve_records(in);
}

std::vector<std::int64_t> CurveModel::bad_prime_list() const {
  std::vector<std::int64_t> out;
  for (const auto& bp : bad_primes) out.push_back(bp.prime);
  return out;
}

int CurveModel::valuation_at(std::int64_t q) const {
  for (const auto& bp : bad_primes)
    if (bp.prime == q) return bp.valuation;
  throw ValidationError("curve " + label + ": " + std::to_string(q) + " does not divide N");
}

CurveModel validate_curve(const CurveRecord& raw) {
  CurveModel c;
  c.label = raw.label;
  c.model.a = raw.ainvs;
  c.conductor = raw.conductor;
  c.non_cm = raw.non_cm;
  if (raw.surjective_primes) c.attested_surjective_primes = *raw.surjective_primes;
  std::ranges::sort(c.attested_surjective_primes);

  const std::string who = "curve " + raw.label + ": ";
  if (raw.conductor < 1) throw ValidationError(who + "conductor must be positive");
  c.discriminant = c.model.discriminant();
  if (c.discriminant == 0) throw ValidationError(who + "singular model (discriminant 0)");
  if (!is_squarefree(static_cast<std::uint64_t>(raw.conductor)))
    throw ValidationError(who + "conductor " + std::to_string(raw.conductor) +
                          " is not square-free");

  const BigInt c4 = c.model.c4();
  BigInt rest = abs(c.discriminant);
  for (const auto q64 : prime_divisors(static_cast<std::uint64_t>(raw.conductor))) {
    const auto q = static_cast<std::int64_t>(q64);
    const int v = big_valuation(c.discriminant, q);
    if (v == 0)
      throw ValidationError(who + std::to_string(q) + " divides N but not the discriminant");
    if (c4 % q == 0)
      throw ValidationError(who + "additive reduction at " + std::to_string(q) +
                            " (q | c4), outside the square-free conductor setting");
    c.bad_primes.push_back({q, v});
    for (int i = 0; i < v; ++i) rest /= q;
  }
  if (rest != 1)
    throw ValidationError(who + "discriminant has prime factors outside the conductor");
  return c;
}

std::int64_t ap_point_count(const WeierstrassModel& model, std::int64_t p) {
  if (p <= 3 || !is_prime(static_cast<std::uint64_t>(p)))
    throw ValidationError("ap_point_count: p must be a prime > 3");
  if (model.discriminant() % p == 0)
    throw ValidationError("ap_point_count: bad reduction at p = " + std::to_string(p));
  const std::int64_t b2 = mod_p(model.b2(), p);
  const std::int64_t b4x2 = mod_p(2 * model.b4(), p);
  const std::int64_t b6 = mod_p(model.b6(), p);

  std::vector<std::int8_t> chi(static_cast<std::size_t>(p), -1);
  chi[0] = 0;
  for (std::int64_t y = 1; y <= p / 2; ++y) chi[static_cast<std::size_t>(y * y % p)] = 1;

  // f(x) = ((4x + b2) x + 2 b4) x + b6
  std::int64_t sum = 0;
  for (std::int64_t x = 0; x < p; ++x) {
    std::int64_t f = (4 * x + b2) % p;
    f = (f * x + b4x2) % p;
    f = (f * x + b6) % p;
    sum += chi[static_cast<std::size_t>(f)];
  }
  return -sum;
}

std::int64_t ap_point_count(const CurveModel& curve, std::int64_t p) {
  return ap_point_count(curve.model, p);
}

bool mod_p_unramified_at(const CurveModel& curve, std::int64_t q, std::int64_t p) {
  return curve.valuation_at(q) % p == 0;
}

bool KounterSet::contains(std::int64_t q) const {
  return std::ranges::binary_search(primes, q);
}

KounterSet kounter_primes(const CurveModel& curve, std::int64_t p) {
  KounterSet out;
  for (const auto& [q, v] : curve.bad_primes) {
    const std::int64_t r = q % p;
    if ((r == 1 || r == p - 1) && mod_p_unramified_at(curve, q, p)) out.primes.push_back(q);
  }
  return out;
}

SerreBound serre_surjectivity_bound(const CurveModel& curve) {
  if (curve.conductor <= 2)
    throw ValidationError("serre_surjectivity_bound: needs N >= 3");
  const double n = static_cast<double>(curve.conductor);
  SerreBound b;
  b.kraus = 68.0 * n * std::sqrt(1.0 + std::log(std::log(n)));
  double prod = 1.0;
  for (const auto& bp : curve.bad_primes) prod *= 1.0 + 1.0 / static_cast<double>(bp.prime);
  b.cojocaru = 4.0 * std::sqrt(6.0) / 3.0 * n * std::sqrt(prod);
  b.value = std::min(b.kraus, b.cojocaru);
  return b;
}

double surjectivity_threshold(const CurveModel& curve, bool conjectural) {
  return conjectural ? kConjecturalSerreConstant : serre_surjectivity_bound(curve).value;
}

std::string_view to_string(Surjectivity s) {
  switch (s) {
    case Surjectivity::attested: return "attested";
    case Surjectivity::implied_by_bound: return "implied_by_bound";
    case Surjectivity::unknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(Reduction r) {
  return r == Reduction::supersingular ? "supersingular" : "ordinary";
}

Surjectivity surjectivity_status(const CurveModel& curve, std::int64_t p, bool conjectural) {
  if (std::ranges::binary_search(curve.attested_surjective_primes, p))
    return Surjectivity::attested;
  if (curve.non_cm && curve.conductor > 2 &&
      static_cast<double>(p) > surjectivity_threshold(curve, conjectural))
    return Surjectivity::implied_by_bound;
  return Surjectivity::unknown;
}

bool PrimeSetting::ap_ok() const {
  const std::int64_t r = ((ap % p) + p) % p;
  return r != 1 && r != p - 1;
}

PrimeSetting make_prime_setting(const CurveModel& curve, std::int64_t p, bool conjectural_serre) {
  if (p <= 3) throw HypothesisError("p must be a prime > 3, got " + std::to_string(p));
  if (!is_prime(static_cast<std::uint64_t>(p)))
    throw ValidationError(std::to_string(p) + " is not prime");
  if (curve.conductor % p == 0)
    throw ValidationError("curve " + curve.label + " has bad reduction at p = " +
                          std::to_string(p));
  PrimeSetting s;
  s.curve_label = curve.label;
  s.conductor = curve.conductor;
  s.p = p;
  s.ap = ap_point_count(curve, p);
  s.reduction = s.ap == 0 ? Reduction::supersingular : Reduction::ordinary;
  s.kounter = kounter_primes(curve, p);
  s.surjectivity = surjectivity_status(curve, p, conjectural_serre);
  return s;
}

}  // namespace choired

#include "choired/density.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "choired/arith.hpp"
#include "choired/errors.hpp"

namespace choired {

namespace {

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t t = 0, new_t = 1, r = m, new_r = ((a % m) + m) % m;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw std::logic_error("inverse_mod: not invertible");
  return t < 0 ? t + m : t;
}

std::string join(const std::vector<std::int64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

std::string_view to_string(Mode m) { return m == Mode::ss ? "ss" : "ord"; }

Mode parse_mode(std::string_view s) {
  if (s == "ss") return Mode::ss;
  if (s == "ord") return Mode::ord;
  throw ValidationError("unknown mode '" + std::string(s) + "' (expected ss or ord)");
}

std::vector<std::int64_t> partition_primes(const CurveModel& curve, std::int64_t p) {
  std::vector<std::int64_t> out{p};
  for (const auto& bp : curve.bad_primes) out.push_back(bp.prime);
  return out;
}

std::string SplitPartition::label() const { return "-{" + join(pi_minus) + "}+{" + join(pi_plus) + "}"; }

SplitPartition partition_from_mask(std::span<const std::int64_t> primes, std::uint64_t mask) {
  SplitPartition part;
  for (std::size_t i = 0; i < primes.size(); ++i)
    ((mask >> i) & 1 ? part.pi_minus : part.pi_plus).push_back(primes[i]);
  std::ranges::sort(part.pi_minus);
  std::ranges::sort(part.pi_plus);
  return part;
}

std::vector<SplitPartition> all_partitions(const CurveModel& curve, std::int64_t p) {
  const auto primes = partition_primes(curve, p);
  if (primes.size() > 24) throw ValidationError("too many bad primes to enumerate partitions");
  std::vector<SplitPartition> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << primes.size()); ++mask)
    out.push_back(partition_from_mask(primes, mask));
  return out;
}

std::vector<SplitPartition> enumerate_partitions(const CurveModel& curve,
                                                 const PrimeSetting& setting, Mode mode) {
  const int r = curve.r();
  const int k = setting.k();
  if (k >= r)
    throw HypothesisError("no valid inert sets: k = " + std::to_string(k) +
                          " >= r = " + std::to_string(r));
  std::vector<std::int64_t> free_primes;  // q_{k+1}, ..., q_r
  for (const auto& bp : curve.bad_primes)
    if (!setting.kounter.contains(bp.prime)) free_primes.push_back(bp.prime);

  std::vector<SplitPartition> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << free_primes.size()); ++mask) {
    if (std::popcount(mask) % 2 == 0) continue;
    SplitPartition part;
    part.pi_plus = setting.kounter.primes;
    for (std::size_t i = 0; i < free_primes.size(); ++i)
      ((mask >> i) & 1 ? part.pi_minus : part.pi_plus).push_back(free_primes[i]);

    SplitPartition split = part;
    split.pi_plus.push_back(setting.p);
    std::ranges::sort(split.pi_plus);
    std::ranges::sort(split.pi_minus);
    out.push_back(std::move(split));
    if (mode == Mode::ord) {
      part.pi_minus.push_back(setting.p);
      std::ranges::sort(part.pi_plus);
      std::ranges::sort(part.pi_minus);
      out.push_back(std::move(part));
    }
  }
  return out;
}

SplitPartition residue_class_set(SplitPartition partition, std::int64_t p, std::int64_t N) {
  if (N < 1 || !is_squarefree(static_cast<std::uint64_t>(N)))
    throw ValidationError("residue_class_set: conductor must be square-free");
  if (N % p == 0) throw ValidationError("residue_class_set: p divides N");

  std::vector<std::int64_t> expected;
  for (const auto q : prime_divisors(static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(N)))
    expected.push_back(static_cast<std::int64_t>(q));
  std::vector<std::int64_t> covered = partition.pi_minus;
  covered.insert(covered.end(), partition.pi_plus.begin(), partition.pi_plus.end());
  std::ranges::sort(covered);
  if (covered != expected)
    throw ValidationError("residue_class_set: partition " + partition.label() +
                          " does not cover the primes of pN exactly");

  const bool even = N % 2 == 0;
  std::vector<std::int64_t> set{0};
  std::int64_t modulus = 1;
  for (const auto q : expected) {
    const bool inert = std::ranges::binary_search(partition.pi_minus, q);
    std::int64_t m = q;
    std::vector<std::int64_t> component;
    if (q == 2) {
      m = 8;
      component = {inert ? 5 : 1};
    } else {
      std::vector<std::uint8_t> square(static_cast<std::size_t>(q), 0);
      for (std::int64_t y = 1; y < q; ++y) square[static_cast<std::size_t>(y * y % q)] = 1;
      for (std::int64_t t = 1; t < q; ++t)
        if (static_cast<bool>(square[static_cast<std::size_t>(t)]) != inert) component.push_back(t);
    }
    // x = s (mod modulus), x = t (mod m)
    const std::int64_t inv = inverse_mod(modulus % m, m);
    std::vector<std::int64_t> next;
    next.reserve(set.size() * component.size());
    for (const auto s : set)
      for (const auto t : component) {
        const std::int64_t lift = ((t - s % m) % m + m) % m * inv % m;
        next.push_back(s + modulus * lift);
      }
    set = std::move(next);
    modulus *= m;
  }
  std::ranges::sort(set);

  const auto pN = static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(N);
  const auto fac = factorize(pN);
  const std::uint64_t phi = euler_phi(pN, fac);
  const int r = static_cast<int>(fac.size()) - 1;
  const std::uint64_t want = even ? phi >> r : phi >> (r + 1);
  if (set.size() != want)
    throw std::logic_error("residue_class_set: size " + std::to_string(set.size()) +
                           " != phi(pN)/2^" + std::to_string(even ? r : r + 1));
  partition.modulus = modulus;
  partition.residue_set = std::move(set);
  return partition;
}

double coprime_disc_asymptotic(double x, std::int64_t M) {
  if (M < 1 || !is_squarefree(static_cast<std::uint64_t>(M)))
    throw ValidationError("coprime_disc_asymptotic: M must be square-free");
  double value = 0.5 * x / zeta2();
  for (const auto q : prime_divisors(static_cast<std::uint64_t>(M)))
    value *= static_cast<double>(q) / static_cast<double>(q + 1);
  return value;
}

Rational frak_d(std::int64_t p, std::span<const std::int64_t> bad_primes) {
  BigInt num = p;
  BigInt den = p + 1;
  for (const auto q : bad_primes) {
    num *= q;
    den *= q + 1;
  }
  return Rational(num, den);
}

Rational frak_d(std::int64_t p, const CurveModel& curve) {
  const auto qs = curve.bad_prime_list();
  return frak_d(p, qs);
}

DensityFormulas density_choired(const CurveModel& curve, const PrimeSetting& setting, Mode mode) {
  if (setting.curve_label != curve.label)
    throw ValidationError("density_choired: setting was computed for another curve");
  const int r = curve.r();
  const int k = setting.k();
  if (k >= r)
    throw HypothesisError("k = " + std::to_string(k) + " >= r = " + std::to_string(r) +
                          ": no choired fields exist (density 0)");
  if (mode == Mode::ss && setting.reduction != Reduction::supersingular)
    throw HypothesisError("mode ss needs supersingular reduction, but a_" +
                          std::to_string(setting.p) + " = " + std::to_string(setting.ap));
  if (mode == Mode::ord) {
    if (setting.reduction != Reduction::ordinary)
      throw HypothesisError("mode ord needs ordinary reduction at p = " + std::to_string(setting.p));
    if (!setting.ap_ok())
      throw HypothesisError("a_p = +-1 (mod p) violates the a_p condition");
  }
  DensityFormulas f;
  f.mode = mode;
  f.r = r;
  f.k = k;
  f.frak_d = frak_d(setting.p, curve);
  f.delta_pi = f.frak_d / Rational(BigInt(1) << (r + 1));
  f.delta_choired_ss = f.frak_d / Rational(BigInt(1) << (k + 2));
  f.delta_choired_ord = f.frak_d / Rational(BigInt(1) << (k + 1));
  f.bd_bound = f.delta_choired_ss / 2;
  f.cp = cohen_lenstra_cp(setting.p);
  return f;
}

double cohen_lenstra_cp(std::int64_t p, double tol) {
  if (p < 2) throw ValidationError("cohen_lenstra_cp: p must be prime");
  if (!(tol > 0)) throw ValidationError("cohen_lenstra_cp: tol must be positive");
  const double inv_p = 1.0 / static_cast<double>(p);
  double prod = 1.0;
  for (double term = inv_p; term >= tol; term *= inv_p) prod *= 1.0 - term;
  return 6.0 / (std::numbers::pi * std::numbers::pi) * (1.0 - prod);
}

}  // namespace choired

#include "choired/arith.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "choired/errors.hpp"

namespace choired {

namespace {

constexpr std::uint64_t kSegment = std::uint64_t{1} << 22;

// Jacobi symbol (a|n) for odd n > 0 and 0 <= a < n.
int jacobi(std::uint64_t a, std::uint64_t n) {
  int t = 1;
  while (a != 0) {
    const int v = std::countr_zero(a);
    a >>= v;
    if ((v & 1) && (n % 8 == 3 || n % 8 == 5)) t = -t;
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

std::uint64_t mod_nonneg(std::int64_t a, std::uint64_t m) {
  const auto mm = static_cast<std::int64_t>(m);
  std::int64_t r = a % mm;
  if (r < 0) r += mm;
  return static_cast<std::uint64_t>(r);
}

}  // namespace

int kronecker_symbol(std::int64_t D, std::uint64_t n) {
  if (n == 0) return (D == 1 || D == -1) ? 1 : 0;
  const int v = std::countr_zero(n);
  if (v > 0 && D % 2 == 0) return 0;
  n >>= v;
  int k = 1;
  if (v & 1) {
    const std::uint64_t r = mod_nonneg(D, 8);
    if (r == 3 || r == 5) k = -k;
  }
  if (n == 1) return k;
  return k * jacobi(mod_nonneg(D, n), n);
}

std::uint64_t isqrt(std::uint64_t n) {
  constexpr std::uint64_t kMax = 0xFFFFFFFFULL;  // isqrt(2^64 - 1)
  auto r = std::min(kMax, static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n))));
  while (r > 0 && r * r > n) --r;
  while (r < kMax && (r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<std::uint8_t> composite(limit + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return primes;
}

std::vector<PrimePower> factorize(std::uint64_t n) {
  std::vector<PrimePower> out;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d != 0) continue;
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.push_back({d, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

bool is_squarefree(std::uint64_t n) {
  if (n == 0) return false;
  return std::ranges::all_of(factorize(n), [](const PrimePower& pp) { return pp.exponent == 1; });
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (const auto& pp : factorize(n)) out.push_back(pp.prime);
  return out;
}

SquarefreeSieve sieve_squarefree(std::uint64_t lo, std::uint64_t hi,
                                 std::span<const std::uint32_t> primes) {
  if (lo == 0 || lo > hi)
    throw ValidationError("sieve_squarefree: need 0 < lo <= hi, got [" + std::to_string(lo) +
                          ", " + std::to_string(hi) + ")");
  std::vector<std::uint8_t> flags(hi - lo, 1);
  if (hi - lo == 0) return {lo, hi, std::move(flags)};
  const std::uint64_t last = hi - 1;
  for (const std::uint32_t q : primes) {
    const std::uint64_t sq = std::uint64_t{q} * q;
    if (sq > last) break;
    std::uint64_t start = (lo + sq - 1) / sq * sq;
    for (std::uint64_t m = start; m < hi; m += sq) flags[m - lo] = 0;
  }
  return {lo, hi, std::move(flags)};
}

SquarefreeSieve sieve_squarefree(std::uint64_t lo, std::uint64_t hi) {
  if (lo == 0 || lo > hi)
    throw ValidationError("sieve_squarefree: need 0 < lo <= hi, got [" + std::to_string(lo) +
                          ", " + std::to_string(hi) + ")");
  const auto primes = primes_up_to(static_cast<std::uint32_t>(isqrt(hi > 1 ? hi - 1 : 1)));
  return sieve_squarefree(lo, hi, primes);
}

FundamentalDiscriminant fundamental_discriminant(std::int64_t d) {
  if (d >= 0) throw ValidationError("fundamental_discriminant: d must be negative");
  if (!is_squarefree(static_cast<std::uint64_t>(-d)))
    throw ValidationError("fundamental_discriminant: d = " + std::to_string(d) +
                          " is not squarefree");
  if (mod_nonneg(d, 4) == 1) return {d, d};
  return {4 * d, d};
}

bool is_fundamental_discriminant(std::int64_t D) {
  if (D >= 0) return false;
  const std::uint64_t r = mod_nonneg(D, 16);
  if (r % 4 == 1) return is_squarefree(static_cast<std::uint64_t>(-D));
  if (r == 8 || r == 12) return is_squarefree(static_cast<std::uint64_t>(-D) / 4);
  return false;
}

std::vector<std::uint64_t> count_squarefree_by_residue(std::uint64_t x, std::uint64_t b) {
  if (b == 0) throw ValidationError("count_squarefree_by_residue: modulus must be positive");
  std::vector<std::uint64_t> counts(b, 0);
  if (x <= 1) return counts;
  const auto primes = primes_up_to(static_cast<std::uint32_t>(isqrt(x - 1)));
  for (std::uint64_t lo = 1; lo < x; lo += kSegment) {
    const std::uint64_t hi = std::min(x, lo + kSegment);
    const auto sieve = sieve_squarefree(lo, hi, primes);
    std::uint64_t r = lo % b;
    for (const std::uint8_t f : sieve.flags()) {
      counts[r] += f;
      if (++r == b) r = 0;
    }
  }
  return counts;
}

std::uint64_t count_squarefree_in_ap(std::uint64_t x, std::int64_t a, std::uint64_t b) {
  if (b == 0) throw ValidationError("count_squarefree_in_ap: modulus must be positive");
  const std::uint64_t a0 = mod_nonneg(a, b);
  if (std::gcd(a0, b) != 1)
    throw ValidationError("count_squarefree_in_ap: gcd(a, b) != 1");
  if (x <= 1) return 0;
  const auto primes = primes_up_to(static_cast<std::uint32_t>(isqrt(x - 1)));
  std::uint64_t count = 0;
  for (std::uint64_t lo = 1; lo < x; lo += kSegment) {
    const std::uint64_t hi = std::min(x, lo + kSegment);
    const auto sieve = sieve_squarefree(lo, hi, primes);
    // first n >= lo with n = a0 (mod b)
    std::uint64_t n = lo + (a0 + b - lo % b) % b;
    for (; n < hi; n += b) count += sieve.is_squarefree(n);
  }
  return count;
}

double zeta2() { return std::numbers::pi * std::numbers::pi / 6.0; }

double asymptotic_squarefree_in_ap(double x, std::int64_t a, std::uint64_t b) {
  if (b == 0) throw ValidationError("asymptotic_squarefree_in_ap: modulus must be positive");
  if (std::gcd(mod_nonneg(a, b), b) != 1)
    throw ValidationError("asymptotic_squarefree_in_ap: gcd(a, b) != 1");
  double value = x / zeta2() / static_cast<double>(b);
  for (const auto q : prime_divisors(b)) {
    const double qq = static_cast<double>(q) * static_cast<double>(q);
    value *= qq / (qq - 1.0);
  }
  return value;
}

std::uint64_t euler_phi(std::uint64_t n, std::span<const PrimePower> factorization) {
  if (n == 0) throw ValidationError("euler_phi: n must be positive");
  std::uint64_t product = 1;
  std::uint64_t phi = 1;
  std::vector<std::uint64_t> seen;
  for (const auto& [q, e] : factorization) {
    if (e == 0 || !is_prime(q) || std::ranges::find(seen, q) != seen.end())
      throw ValidationError("euler_phi: factorization entries must be distinct primes with "
                            "positive exponents");
    seen.push_back(q);
    std::uint64_t qe = 1;
    for (unsigned i = 0; i < e; ++i) qe *= q;
    product *= qe;
    phi *= qe / q * (q - 1);
  }
  if (product != n)
    throw ValidationError("euler_phi: factorization does not multiply to " + std::to_string(n));
  return phi;
}

}  // namespace choired

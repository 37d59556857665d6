#pragma once

// Elementary number theory shared by the rest of the library: Kronecker
// symbols, squarefree sieving, fundamental discriminants, squarefree counts
// in arithmetic progressions.

#include <cstdint>
#include <span>
#include <vector>

namespace choired {

/// The Kronecker symbol (D|n), extended to n = 0 and even n.
int kronecker_symbol(std::int64_t D, std::uint64_t n);

/// Floor of the square root.
std::uint64_t isqrt(std::uint64_t n);

bool is_prime(std::uint64_t n);

/// All primes <= limit, by the sieve of Eratosthenes.
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;

  bool operator==(const PrimePower&) const = default;
};

/// Full factorization by trial division. Inputs here are conductors and
/// small moduli, so this is never asked to split anything large.
std::vector<PrimePower> factorize(std::uint64_t n);

bool is_squarefree(std::uint64_t n);

/// Distinct prime divisors in ascending order.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

/// Squarefree flags for the half-open range [lo, hi).
class SquarefreeSieve {
 public:
  SquarefreeSieve(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint8_t> flags)
      : lo_(lo), hi_(hi), flags_(std::move(flags)) {}

  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return hi_; }
  std::uint64_t size() const { return hi_ - lo_; }

  /// n must lie in [lo, hi).
  bool is_squarefree(std::uint64_t n) const { return flags_[n - lo_] != 0; }
  std::span<const std::uint8_t> flags() const { return flags_; }

 private:
  std::uint64_t lo_;
  std::uint64_t hi_;
  std::vector<std::uint8_t> flags_;
};

/// Sieves [lo, hi) by the squares of all primes up to sqrt(hi - 1).
/// Throws ValidationError unless 0 < lo <= hi.
SquarefreeSieve sieve_squarefree(std::uint64_t lo, std::uint64_t hi);

/// Same, with the sieving primes supplied by the caller. `primes` must
/// contain every prime <= sqrt(hi - 1); larger entries are ignored.
SquarefreeSieve sieve_squarefree(std::uint64_t lo, std::uint64_t hi,
                                 std::span<const std::uint32_t> primes);

/// D = d for d = 1 mod 4, D = 4d otherwise.
struct FundamentalDiscriminant {
  std::int64_t D;
  std::int64_t d;

  bool operator==(const FundamentalDiscriminant&) const = default;
};

/// Throws ValidationError for d >= 0 or non-squarefree d.
FundamentalDiscriminant fundamental_discriminant(std::int64_t d);

/// True iff D < 0 is the discriminant of an imaginary quadratic field.
bool is_fundamental_discriminant(std::int64_t D);

/// Exact count of squarefree n with 0 < n < x and n = a (mod b).
/// Throws ValidationError if gcd(a, b) != 1 or b == 0.
std::uint64_t count_squarefree_in_ap(std::uint64_t x, std::int64_t a, std::uint64_t b);

/// Counts of squarefree n in (0, x) for every residue class mod b, indexed
/// by residue. One sieve pass.
std::vector<std::uint64_t> count_squarefree_by_residue(std::uint64_t x, std::uint64_t b);

/// pi^2 / 6 in double precision.
double zeta2();

/// (x / zeta(2)) * (1/b) * prod_{q | b} (1 - q^-2)^-1.
/// Throws ValidationError if gcd(a, b) != 1 or b == 0.
double asymptotic_squarefree_in_ap(double x, std::int64_t a, std::uint64_t b);

/// Euler's totient from a claimed factorization of n. Throws
/// ValidationError if the factorization is not exactly that of n.
std::uint64_t euler_phi(std::uint64_t n, std::span<const PrimePower> factorization);

}  // namespace choired

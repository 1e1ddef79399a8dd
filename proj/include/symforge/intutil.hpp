#pragma once

// Integer utilities: squarefree normalization via bounded trial division,
// perfect-square detection, prime sieving, and uint64 modular arithmetic.

#include "symforge/rational.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace symforge {

class UnfactoredError : public std::runtime_error {
 public:
  explicit UnfactoredError(const std::string& what) : std::runtime_error(what) {}
};

inline Int isqrt_floor(const Int& n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const Int& n, Int* root = nullptr) {
  if (n < 0) return false;
  Int r = isqrt_floor(n);
  if (r * r == n) {
    if (root) *root = r;
    return true;
  }
  return false;
}

struct SquarefreeSplit {
  Int d;      // squarefree part, sign of the input (1 or -1 when the input is a square)
  Int scale;  // positive, with input = d * scale^2
};

// Split raw = d * scale^2 with d squarefree, by trial division up to
// trial_bound.  The leftover cofactor beyond the bound is accepted only when
// its structure is still certain (prime, or a perfect square); inputs large
// enough to defeat that are rejected rather than probabilistically factored.
inline SquarefreeSplit squarefree_split(Int raw, std::uint64_t trial_bound = 10'000'000) {
  if (raw == 0) throw std::domain_error("squarefree_split of zero");
  SquarefreeSplit out{raw < 0 ? Int(-1) : Int(1), Int(1)};
  Int n = abs(raw);
  auto strip = [&](const Int& f) {
    int e = 0;
    while (n % f == 0) {
      n /= f;
      ++e;
    }
    if (e % 2 == 1) out.d *= f;
    for (int i = 0; i < e / 2; ++i) out.scale *= f;
  };
  strip(2);
  for (Int f = 3; f * f <= n && f <= trial_bound; f += 2) strip(f);
  if (n > 1) {
    Int root;
    if (n <= Int(trial_bound) * trial_bound) {
      // No factor up to trial_bound and n <= bound^2, so n is prime.
      out.d *= n;
    } else if (is_perfect_square(n, &root)) {
      // m^2 has squarefree part 1 no matter how m factors.
      out.scale *= root;
    } else {
      throw UnfactoredError("squarefree_split: cofactor " + n.str() +
                            " too large to certify");
    }
  }
  return out;
}

inline std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
  std::vector<bool> sieve(n + 1, true);
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 2; i <= n; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = std::uint64_t(i) * i; j <= n; j += i) sieve[j] = false;
  }
  return out;
}

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((__uint128_t)a * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t acc = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) acc = mulmod_u64(acc, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return acc;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    if (n % f == 0) return n == f;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (a % n == 0) continue;  // the base itself; n > 13 with no small factor
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace symforge

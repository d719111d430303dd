#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace a5a1 {

using u32 = uint32_t;
using u64 = uint64_t;
using i64 = int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Exact rational, always stored reduced.
using Rat = mpq_class;

std::string to_string(u128 n);

// n with its full prime factorization, primes strictly increasing.
struct Factored {
    u128 n = 1;
    std::vector<std::pair<u128, int>> factors;

    // all divisors of n, unsorted (only sensible for small divisor counts)
    std::vector<u128> divisors() const;
};

// Deterministic Miller-Rabin, valid on all of [0, 2^64).
bool is_prime(u64 n);
// Probabilistic above 2^64 (GMP), deterministic below.
bool is_prime(u128 n);

// Trial division + Brent rho. Rejects n = 0.
Factored factor(u128 n);
Factored factor(u64 n);

// Jacobi symbol (a/n), n odd positive. 0 iff (a,n) > 1; (a/1) = 1.
int jacobi(i64 a, u64 n);

// {n/2^j}: number of ρ mod 2^j with ρ² ≡ n (mod 2^j), for odd n.
int bracket2(i64 n, int j);

int mobius(const Factored& f);
int omega(const Factored& f);
u128 radical(const Factored& f);
// φ*(n) = ∏_{p|n} (1 - 1/p)
Rat phi_star(const Factored& f);
Rat phi_star(u64 n);

// n = 2^v * odd, n != 0; returns (v, odd part with sign of n)
std::pair<int, i64> two_adic(i64 n);

// Shared read-only prime machinery (built once, then safe to use from
// parallel code).
const std::vector<u32>& small_primes();          // primes below 10^6
std::vector<u32> primes_up_to(u32 n);
std::vector<u32> spf_table(u32 n);               // smallest prime factor, [0..n]

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);
// Inverse of a mod m, requires (a, m) = 1, m >= 1.
u64 invmod(u64 a, u64 m);

// a mod m in [0, m), works for negative a.
inline u64 pos_mod(i64 a, u64 m) {
    i64 r = a % static_cast<i64>(m);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}
inline u64 pos_mod128(i128 a, u64 m) {
    i128 r = a % static_cast<i128>(m);
    return static_cast<u64>(r < 0 ? r + static_cast<i128>(m) : r);
}

// ω of a product given the individual factors, without factoring the product.
int omega_of_product(std::span<const u64> parts);
Rat phi_star_of_product(std::span<const u64> parts);
// distinct primes dividing any part, ascending
std::vector<u64> prime_union(std::span<const u64> parts);

}  // namespace a5a1

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <random>

#include "a5a1/arith.hpp"

using namespace a5a1;

TEST_CASE("is_prime matches trial division below 10000") {
    for (u64 n = 0; n < 10000; ++n) {
        bool p = n >= 2;
        for (u64 d = 2; d * d <= n; ++d)
            if (n % d == 0) p = false;
        CHECK(is_prime(n) == p);
    }
}

TEST_CASE("is_prime on 64-bit edge cases") {
    CHECK(is_prime(u64(18446744073709551557ull)));   // largest 64-bit prime
    CHECK(!is_prime(u64(18446744073709551615ull)));
    CHECK(is_prime(u64(2147483647)));                // 2^31 - 1
    CHECK(!is_prime(u64(2147483647) * 2147483647));
}

TEST_CASE("factor reconstructs n with increasing primes") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        u64 n = 1 + rng() % 1000000000000ull;
        Factored f = factor(n);
        u128 prod = 1;
        u128 last = 1;
        for (auto [p, e] : f.factors) {
            CHECK(p > last);
            last = p;
            CHECK(is_prime(static_cast<u128>(p)));
            CHECK(e >= 1);
            for (int i = 0; i < e; ++i) prod *= p;
        }
        CHECK(prod == f.n);
        CHECK(f.n == n);
    }
}

TEST_CASE("divisors enumerates exactly the divisors") {
    for (u64 n : {1, 2, 12, 360, 1024, 9699690}) {
        auto divs = factor(n).divisors();
        u64 expected = 0;
        for (u64 d = 1; d <= n; ++d)
            if (n % d == 0) ++expected;
        CHECK(divs.size() == expected);
        for (u128 d : divs) CHECK(n % static_cast<u64>(d) == 0);
    }
}

TEST_CASE("jacobi agrees with Euler criterion for odd primes") {
    for (u64 p : {3, 5, 7, 11, 13, 101, 997}) {
        for (i64 a = -50; a <= 50; ++a) {
            int j = jacobi(a, p);
            u64 e = powmod(pos_mod(a, p), (p - 1) / 2, p);
            int euler = e == 0 ? 0 : (e == 1 ? 1 : -1);
            CHECK(j == euler);
        }
    }
}

TEST_CASE("jacobi is multiplicative in the denominator") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        u64 m = 2 * (rng() % 200) + 1;
        u64 n = 2 * (rng() % 200) + 1;
        i64 a = static_cast<i64>(rng() % 4001) - 2000;
        CHECK(jacobi(a, m * n) == jacobi(a, m) * jacobi(a, n));
    }
    CHECK(jacobi(5, 1) == 1);
    CHECK(jacobi(0, 9) == 0);
}

TEST_CASE("bracket2 equals the exhaustive 2-adic count") {
    for (int j = 0; j <= 10; ++j) {
        u64 m = u64(1) << j;
        for (i64 n = 1; n < 256; n += 2) {
            int cnt = 0;
            for (u64 r = 0; r < m; ++r)
                if (r * r % m == static_cast<u64>(n) % m) ++cnt;
            CHECK(bracket2(n, j) == cnt);
        }
    }
}

TEST_CASE("bracket2 handles negative odd n") {
    CHECK(bracket2(-1, 0) == 1);
    CHECK(bracket2(-1, 3) == 0);  // -1 = 7 mod 8, not a square mod 8
    CHECK(bracket2(-7, 3) == 4);  // -7 = 1 mod 8
}

TEST_CASE("mobius, omega, radical, phi_star on known values") {
    CHECK(mobius(factor(u64(1))) == 1);
    CHECK(mobius(factor(u64(30))) == -1);
    CHECK(mobius(factor(u64(12))) == 0);
    CHECK(omega(factor(u64(1))) == 0);
    CHECK(omega(factor(u64(360))) == 3);
    CHECK(radical(factor(u64(360))) == 30);
    CHECK(phi_star(u64(1)) == 1);
    CHECK(phi_star(u64(12)) == Rat(1, 3));
    CHECK(phi_star(u64(30)) == Rat(4, 15));
}

TEST_CASE("two_adic splits off the exact power of two") {
    CHECK(two_adic(40) == std::pair<int, i64>(3, 5));
    CHECK(two_adic(-12) == std::pair<int, i64>(2, -3));
    CHECK(two_adic(7) == std::pair<int, i64>(0, 7));
}

TEST_CASE("prime sieves agree with is_prime") {
    auto ps = primes_up_to(1000);
    std::vector<u32> expected;
    for (u32 n = 2; n <= 1000; ++n)
        if (is_prime(u64(n))) expected.push_back(n);
    CHECK(ps == expected);
    auto spf = spf_table(1000);
    for (u32 n = 2; n <= 1000; ++n) {
        CHECK(n % spf[n] == 0);
        CHECK(is_prime(u64(spf[n])));
        for (u32 d = 2; d < spf[n]; ++d) CHECK(n % d != 0);
    }
}

TEST_CASE("modular arithmetic round trips") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 1000; ++trial) {
        u64 m = 1 + rng() % 1000000007ull;
        u64 a = rng() % m;
        u64 b = rng() % m;
        CHECK(mulmod(a, b, m) ==
              static_cast<u64>(u128(a) * b % m));
        if (m > 1 && std::gcd(a, m) == 1) {
            u64 inv = invmod(a, m);
            CHECK(mulmod(a, inv, m) == 1 % m);
        }
    }
    CHECK(powmod(3, 100, 101) == 1);  // Fermat
}

TEST_CASE("pos_mod handles negatives") {
    CHECK(pos_mod(-1, 5) == 4);
    CHECK(pos_mod(-10, 5) == 0);
    CHECK(pos_mod128(i128(-7) * 1000000000000ll, 9973) ==
          pos_mod(-(7000000000000ll % 9973), 9973));
}

TEST_CASE("product helpers avoid factoring the product") {
    std::array<u64, 4> parts{12, 35, 35, 1};
    u64 prod = 12 * 35 * 35;
    CHECK(omega_of_product(parts) == omega(factor(prod)));
    CHECK(phi_star_of_product(parts) == phi_star(prod));
    auto pu = prime_union(parts);
    CHECK(pu == std::vector<u64>{2, 3, 5, 7});
}

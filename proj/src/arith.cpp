#include "a5a1/arith.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace a5a1 {

std::string to_string(u128 n) {
    if (n == 0) return "0";
    std::string s;
    while (n) {
        s.push_back(char('0' + int(n % 10)));
        n /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

std::vector<u128> Factored::divisors() const {
    std::vector<u128> out{1};
    for (auto [p, e] : factors) {
        size_t m = out.size();
        u128 pe = 1;
        for (int i = 1; i <= e; ++i) {
            pe *= p;
            for (size_t j = 0; j < m; ++j) out.push_back(out[j] * pe);
        }
    }
    return out;
}

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 m) {
    if (m == 1) return 0;
    i64 t = 0, nt = 1;
    i64 r = static_cast<i64>(m), nr = static_cast<i64>(a % m);
    while (nr != 0) {
        i64 q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw std::domain_error("invmod: arguments not coprime");
    return static_cast<u64>(t < 0 ? t + static_cast<i64>(m) : t);
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                  29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    // this witness set is known to be exact below 2^64
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                  29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

static mpz_class to_mpz(u128 n) {
    mpz_class z = static_cast<unsigned long>(n >> 64);
    z <<= 64;
    z += static_cast<unsigned long>(n & ~u64(0));
    return z;
}

bool is_prime(u128 n) {
    if (n < (u128(1) << 64)) return is_prime(static_cast<u64>(n));
    mpz_class z = to_mpz(n);
    return mpz_probab_prime_p(z.get_mpz_t(), 40) > 0;
}

const std::vector<u32>& small_primes() {
    static const std::vector<u32> primes = primes_up_to(1000000);
    return primes;
}

std::vector<u32> primes_up_to(u32 n) {
    std::vector<bool> comp(n + 1, false);
    std::vector<u32> primes;
    for (u32 i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        primes.push_back(i);
        for (u64 j = static_cast<u64>(i) * i; j <= n; j += i) comp[j] = true;
    }
    return primes;
}

std::vector<u32> spf_table(u32 n) {
    std::vector<u32> spf(n + 1, 0);
    for (u32 i = 2; i <= n; ++i) {
        if (spf[i] != 0) continue;
        for (u64 j = i; j <= n; j += i)
            if (spf[j] == 0) spf[j] = i;
    }
    return spf;
}

// Brent's cycle variant of rho; n odd composite, no factor below 10^6.
static u64 rho_brent(u64 n, u64 c) {
    u64 y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
    const u64 m = 128;
    while (g == 1) {
        x = y;
        for (u64 i = 0; i < r; ++i) y = (mulmod(y, y, n) + c) % n;
        u64 k = 0;
        while (k < r && g == 1) {
            ys = y;
            u64 lim = std::min(m, r - k);
            for (u64 i = 0; i < lim; ++i) {
                y = (mulmod(y, y, n) + c) % n;
                q = mulmod(q, x > y ? x - y : y - x, n);
            }
            g = std::gcd(q, n);
            k += m;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = (mulmod(ys, ys, n) + c) % n;
            g = std::gcd(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g;
}

static void factor_rec64(u64 n, std::vector<u128>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 d = n;
    for (u64 c = 1; d == n; ++c) d = rho_brent(n, c);
    factor_rec64(d, out);
    factor_rec64(n / d, out);
}

static void factor_rec_mpz(const mpz_class& n, std::vector<u128>& out);

static u128 from_mpz(const mpz_class& z) {
    mpz_class hi = z >> 64;
    mpz_class lo = z & mpz_class((mpz_class(1) << 64) - 1);
    return (u128(hi.get_ui()) << 64) | lo.get_ui();
}

static void factor_rec128(u128 n, std::vector<u128>& out) {
    if (n == 1) return;
    if (n < (u128(1) << 64)) {
        factor_rec64(static_cast<u64>(n), out);
        return;
    }
    factor_rec_mpz(to_mpz(n), out);
}

static void factor_rec_mpz(const mpz_class& n, std::vector<u128>& out) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40) > 0) {
        out.push_back(from_mpz(n));
        return;
    }
    // rho on mpz, retrying with a fresh polynomial shift on cycle failure
    for (unsigned long c = 1;; ++c) {
        mpz_class x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            mpz_class diff = x > y ? x - y : y - x;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != n) {
            factor_rec_mpz(d, out);
            factor_rec_mpz(n / d, out);
            return;
        }
    }
}

Factored factor(u128 n) {
    if (n == 0) throw std::domain_error("factor: n must be positive");
    Factored f;
    f.n = n;
    std::vector<u128> primes;
    for (u32 p : small_primes()) {
        if (u128(p) * p > n) break;
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    factor_rec128(n, primes);
    std::sort(primes.begin(), primes.end());
    for (u128 p : primes) {
        if (!f.factors.empty() && f.factors.back().first == p)
            ++f.factors.back().second;
        else
            f.factors.emplace_back(p, 1);
    }
    return f;
}

Factored factor(u64 n) { return factor(static_cast<u128>(n)); }

int jacobi(i64 a, u64 n) {
    if (n == 0 || n % 2 == 0)
        throw std::domain_error("jacobi: modulus must be odd and positive");
    u64 aa = pos_mod(a, n);
    int t = 1;
    while (aa != 0) {
        while ((aa & 1) == 0) {
            aa >>= 1;
            u64 r = n & 7;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(aa, n);
        if ((aa & 3) == 3 && (n & 3) == 3) t = -t;
        aa %= n;
    }
    return n == 1 ? t : 0;
}

int bracket2(i64 n, int j) {
    if ((n & 1) == 0) throw std::domain_error("bracket2: n must be odd");
    if (j < 0) throw std::domain_error("bracket2: j must be nonnegative");
    if (j == 0 || j == 1) return 1;
    if (j == 2) return pos_mod(n, 4) == 1 ? 2 : 0;
    return pos_mod(n, 8) == 1 ? 4 : 0;
}

int mobius(const Factored& f) {
    for (auto [p, e] : f.factors)
        if (e > 1) return 0;
    return f.factors.size() % 2 == 0 ? 1 : -1;
}

int omega(const Factored& f) { return static_cast<int>(f.factors.size()); }

u128 radical(const Factored& f) {
    u128 r = 1;
    for (auto [p, e] : f.factors) r *= p;
    return r;
}

Rat phi_star(const Factored& f) {
    Rat r = 1;
    for (auto [p, e] : f.factors) {
        mpz_class pz = to_mpz(p);
        r *= Rat(pz - 1, pz);
    }
    return r;
}

Rat phi_star(u64 n) { return phi_star(factor(n)); }

std::pair<int, i64> two_adic(i64 n) {
    if (n == 0) throw std::domain_error("two_adic: n must be nonzero");
    int v = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++v;
    }
    return {v, n};
}

std::vector<u64> prime_union(std::span<const u64> parts) {
    std::vector<u64> primes;
    for (u64 x : parts) {
        for (auto [p, e] : factor(x).factors) primes.push_back(static_cast<u64>(p));
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    return primes;
}

int omega_of_product(std::span<const u64> parts) {
    return static_cast<int>(prime_union(parts).size());
}

Rat phi_star_of_product(std::span<const u64> parts) {
    Rat r = 1;
    for (u64 p : prime_union(parts)) r *= Rat(p - 1, p);
    return r;
}

}  // namespace a5a1

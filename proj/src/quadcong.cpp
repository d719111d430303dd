#include "a5a1/quadcong.hpp"

#include <algorithm>
#include <stdexcept>

namespace a5a1 {

u64 count_brute(const CongruenceInstance& inst) {
    const u64 q = inst.q;
    const u64 target = pos_mod(inst.a, q);
    u64 count = 0;
    for (u64 rho = 1; rho <= q; ++rho) {
        if (std::gcd(rho, q) != 1) continue;
        if (mulmod(rho % q, rho % q, q) == target) ++count;
    }
    return count;
}

u64 count_formula(const CongruenceInstance& inst) {
    const u64 q = inst.q;
    if (std::gcd(pos_mod(inst.a, q), q) != 1 && q > 1)
        throw std::domain_error("count_formula: requires (a, q) = 1");
    u64 count = 1;
    for (auto [p, e] : inst.q_factored.factors) {
        if (p == 2) {
            if (pos_mod(inst.a, 2) == 0)
                throw std::domain_error("count_formula: requires (a, q) = 1");
            count *= static_cast<u64>(bracket2(inst.a, e));
        } else {
            count *= static_cast<u64>(1 + jacobi(inst.a, static_cast<u64>(p)));
        }
        if (count == 0) return 0;
    }
    return count;
}

// Tonelli-Shanks square root of unit a mod odd prime p, or no value.
static bool sqrt_mod_p(u64 a, u64 p, u64& out) {
    a %= p;
    if (p == 2 || a == 0) {
        out = a;
        return true;
    }
    if (powmod(a, (p - 1) / 2, p) != 1) return false;
    if (p % 4 == 3) {
        out = powmod(a, (p + 1) / 4, p);
        return true;
    }
    u64 s = p - 1;
    int e = 0;
    while ((s & 1) == 0) s >>= 1, ++e;
    u64 n = 2;
    while (powmod(n, (p - 1) / 2, p) != p - 1) ++n;
    u64 x = powmod(a, (s + 1) / 2, p);
    u64 b = powmod(a, s, p);
    u64 g = powmod(n, s, p);
    int r = e;
    while (true) {
        u64 t = b;
        int m = 0;
        for (; m < r; ++m) {
            if (t == 1) break;
            t = mulmod(t, t, p);
        }
        if (m == 0) {
            out = x;
            return true;
        }
        u64 gs = g;
        for (int i = 0; i < r - m - 1; ++i) gs = mulmod(gs, gs, p);
        g = mulmod(gs, gs, p);
        x = mulmod(x, gs, p);
        b = mulmod(b, g, p);
        r = m;
    }
}

// roots of ρ² ≡ a mod p^e for odd prime p, (a, p) = 1; Hensel from mod p
static std::vector<u64> sqrt_mod_odd_pe(u64 a, u64 p, int e) {
    u64 pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    a %= pe;
    u64 r;
    if (!sqrt_mod_p(a % p, p, r)) return {};
    u64 pk = p;
    for (int k = 1; k < e; ++k) {
        // unique lift: r <- r - (r²-a) / (2r) mod p^{k+1}
        u64 pk1 = pk * p;
        u64 r2 = mulmod(r, r, pk1);
        u64 diff = (r2 + pk1 - a % pk1) % pk1;
        u64 inv2r = invmod(mulmod(2 % pk1, r, pk1), pk1);
        r = (r + pk1 - mulmod(diff, inv2r, pk1)) % pk1;
        pk = pk1;
    }
    u64 other = (pe - r) % pe;
    if (other == r) return {r};
    return {r, other};
}

// roots of ρ² ≡ a mod 2^e, a odd
static std::vector<u64> sqrt_mod_2e(u64 a, int e) {
    u64 m = u64(1) << e;
    a &= m - 1;
    if (e == 1) return {1};
    if (e == 2) return a == 1 ? std::vector<u64>{1, 3} : std::vector<u64>{};
    if (a % 8 != 1) return {};
    // lift from mod 8 (root 1) upward; at each step the defect is correctable
    u64 r = 1;
    for (int k = 3; k < e; ++k) {
        u64 mk1 = u64(1) << (k + 1);
        if ((mulmod(r, r, mk1) != a % mk1)) r += u64(1) << (k - 1);
    }
    std::vector<u64> roots{r % m, (m - r) % m, (r + m / 2) % m,
                           (m - r + m / 2) % m};
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::vector<u64> sqrt_mod(i64 a, const Factored& q_factored) {
    const u64 q = static_cast<u64>(q_factored.n);
    if (q > 1 && std::gcd(pos_mod(a, q), q) != 1)
        throw std::domain_error("sqrt_mod: requires (a, q) = 1");
    std::vector<u64> roots{0};
    u64 mod_so_far = 1;
    for (auto [pp, e] : q_factored.factors) {
        u64 p = static_cast<u64>(pp);
        u64 pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        std::vector<u64> local =
            p == 2 ? sqrt_mod_2e(pos_mod(a, pe), e)
                   : sqrt_mod_odd_pe(pos_mod(a, pe), p, e);
        if (local.empty()) return {};
        // CRT combine
        std::vector<u64> next;
        next.reserve(roots.size() * local.size());
        u64 m = mod_so_far * pe;
        u64 inv = invmod(mod_so_far % pe, pe);
        for (u64 r1 : roots)
            for (u64 r2 : local) {
                u64 t = mulmod(inv, (r2 + pe - r1 % pe) % pe, pe);
                next.push_back(r1 + mod_so_far * t);
            }
        roots = std::move(next);
        mod_so_far = m;
    }
    for (u64& r : roots)
        if (r == 0) r = q;  // only happens for q = 1
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<u32> count_table(u64 q) {
    std::vector<u32> table(q, 0);
    for (u64 rho = 1; rho <= q; ++rho) {
        if (std::gcd(rho, q) != 1) continue;
        ++table[mulmod(rho % q, rho % q, q)];
    }
    return table;
}

namespace {
constexpr u64 kTableCap = 256;
const std::vector<std::vector<u32>>& small_tables() {
    static const std::vector<std::vector<u32>> tables = [] {
        std::vector<std::vector<u32>> t(kTableCap + 1);
        for (u64 q = 1; q <= kTableCap; ++q) t[q] = count_table(q);
        return t;
    }();
    return tables;
}
}  // namespace

u64 count_n(i64 a, u64 q) {
    u64 am = pos_mod(a, q);
    if (q > 1 && std::gcd(am, q) != 1) return 0;
    if (q <= kTableCap) return small_tables()[q][am % q];
    return count_formula(CongruenceInstance(a, q));
}

}  // namespace a5a1

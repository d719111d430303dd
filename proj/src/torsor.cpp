#include "a5a1/torsor.hpp"

#include <algorithm>
#include <cmath>

#include <omp.h>

#include "a5a1/quadcong.hpp"

namespace a5a1 {

namespace {

i128 abs128(i128 x) { return x < 0 ? -x : x; }

void check_cap(i64 B) {
    if (B < 0) throw std::domain_error("B must be nonnegative");
    if (B > kMaxB) throw std::domain_error("B exceeds the overflow cap 10^9");
}

}  // namespace

bool on_surface(i64 x0, i64 x1, i64 x2, i64 x3) {
    return i128(x1) * x1 * x1 + i128(x2) * x3 * x3 + i128(x0) * x1 * x2 == 0;
}

i64 height(const SurfacePoint& p) {
    return std::max({std::abs(p.x0), std::abs(p.x1), std::abs(p.x2),
                     std::abs(p.x3)});
}

SurfacePoint canonicalize(i64 x0, i64 x1, i64 x2, i64 x3) {
    if (x1 == 0) throw std::domain_error("canonicalize: x1 = 0 is off U");
    if (!on_surface(x0, x1, x2, x3))
        throw std::domain_error("canonicalize: point not on the surface");
    u64 g = std::gcd(std::gcd(static_cast<u64>(std::abs(x0)),
                              static_cast<u64>(std::abs(x1))),
                     std::gcd(static_cast<u64>(std::abs(x2)),
                              static_cast<u64>(std::abs(x3))));
    x0 /= static_cast<i64>(g);
    x1 /= static_cast<i64>(g);
    x2 /= static_cast<i64>(g);
    x3 /= static_cast<i64>(g);
    // x2 = 0 with x1 != 0 contradicts the equation, so the sign is decidable
    if (x2 < 0) {
        x0 = -x0;
        x1 = -x1;
        x2 = -x2;
        x3 = -x3;
    }
    return {x0, x1, x2, x3};
}

bool torsor_valid(const TorsorPoint& t, std::string* why) {
    auto fail = [&](const char* msg) {
        if (why) *why = msg;
        return false;
    };
    for (int i = 1; i <= 7; ++i)
        if (t[i] <= 0) return fail("eta1..eta7 must be positive");
    if (t[8] == 0) return fail("eta8 must be nonzero");
    i128 lhs = i128(t[1]) * t[10] + i128(t[2]) * t[9] * t[9] +
               i128(t[4]) * t[5] * t[5] * t[6] * t[6] * t[6] * t[6] * t[7] *
                   t[7] * t[7] * t[8];
    if (lhs != 0) return fail("torsor equation violated");
    auto cp = [&](i64 a, std::initializer_list<int> idx) {
        // (a, ∏ t_i) = 1 iff (a, t_i) = 1 for every i; avoids a huge product
        for (int i : idx)
            if (std::gcd(static_cast<u64>(std::abs(a)),
                         static_cast<u64>(std::abs(t[i]))) != 1)
                return false;
        return true;
    };
    if (!cp(t[10], {2, 3, 4, 5, 6, 7})) return fail("(eta10, eta2..eta7) > 1");
    if (!cp(t[9], {1, 3, 4, 5, 6, 7})) return fail("(eta9, eta1 eta3..eta7) > 1");
    if (!cp(t[8], {1, 2, 3, 4, 5, 7})) return fail("(eta8, ...) > 1");
    if (!cp(t[7], {1, 2, 3, 4})) return fail("(eta7, eta1..eta4) > 1");
    if (!cp(t[6], {1, 2, 3, 4, 5})) return fail("(eta6, eta1..eta5) > 1");
    if (!cp(t[5], {1, 2, 3})) return fail("(eta5, eta1..eta3) > 1");
    if (!cp(t[4], {1, 2})) return fail("(eta4, eta1 eta2) > 1");
    if (std::gcd(t[1], t[2]) != 1) return fail("(eta1, eta2) > 1");
    return true;
}

SurfacePoint psi(const TorsorPoint& t) {
    std::string why;
    if (!torsor_valid(t, &why)) throw std::domain_error("psi: " + why);
    i128 x0 = i128(t[8]) * t[10];
    i128 x1 = i128(t[1]) * t[2] * t[3] * t[3] * t[4] * t[4] * t[5] * t[5] *
              t[6] * t[6] * t[7] * t[7] * t[8];
    i128 x2 = i128(t[1]) * t[1] * t[1] * t[2] * t[2] * t[3] * t[3] * t[3] *
              t[3] * t[4] * t[4] * t[4] * t[5] * t[5] * t[7];
    i128 x3 = i128(t[2]) * t[3] * t[4] * t[5] * t[6] * t[7] * t[8] * t[9];
    constexpr i128 lim = std::numeric_limits<i64>::max();
    if (abs128(x0) > lim || abs128(x1) > lim || abs128(x2) > lim ||
        abs128(x3) > lim)
        throw std::overflow_error("psi: coordinates overflow");
    return {static_cast<i64>(x0), static_cast<i64>(x1), static_cast<i64>(x2),
            static_cast<i64>(x3)};
}

bool height_condition(const std::array<i64, 8>& e, i64 e9, i64 B) {
    check_cap(B);
    const i128 B128 = B;
    const i128 c = i128(e[3]) * e[4] * e[4] * e[5] * e[5] * e[5] * e[5] *
                   e[6] * e[6] * e[6];
    const i128 t1 = i128(e[7]) * (i128(e[1]) * e9 * e9 + c * e[7]);
    if (abs128(t1) > B128 * e[0]) return false;
    const i128 t2 = i128(e[0]) * e[1] * e[2] * e[2] * e[3] * e[3] * e[4] *
                    e[4] * e[5] * e[5] * e[6] * e[6] * abs128(e[7]);
    if (t2 > B128) return false;
    const i128 t3 = i128(e[0]) * e[0] * e[0] * e[1] * e[1] * e[2] * e[2] *
                    e[2] * e[2] * e[3] * e[3] * e[3] * e[4] * e[4] * e[6];
    if (t3 > B128) return false;
    const i128 t4 = i128(e[1]) * e[2] * e[3] * e[4] * e[5] * e[6] *
                    abs128(e[7]) * abs128(e9);
    return t4 <= B128;
}

std::vector<EtaPrefix> eta_prefixes(i64 B) {
    check_cap(B);
    std::vector<EtaPrefix> out;
    const i128 B128 = B;
    for (i64 e6 = 1; i128(e6) * e6 <= B128; ++e6) {
        for (i64 e7 = 1; i128(e7) * e7 * e6 * e6 <= B128 && e7 <= B; ++e7) {
            for (i64 e5 = 1;; ++e5) {
                if (i128(e5) * e5 * e6 * e6 * e7 * e7 > B128 ||
                    i128(e5) * e5 * e7 > B128)
                    break;
                if (std::gcd(e5, e6) != 1) continue;
                for (i64 e4 = 1;; ++e4) {
                    if (i128(e4) * e4 * e5 * e5 * e6 * e6 * e7 * e7 > B128 ||
                        i128(e4) * e4 * e4 * e5 * e5 * e7 > B128)
                        break;
                    if (std::gcd(e4, e6) != 1 || std::gcd(e4, e7) != 1)
                        continue;
                    out.push_back({e6, e7, e5, e4});
                }
            }
        }
    }
    return out;
}

namespace {

// Square roots of every unit mod every q up to maxq, flattened.
struct RootsTable {
    i64 maxq = 0;
    std::vector<u64> base;     // base[q] = Σ_{q'<q} q'
    std::vector<u32> starts;   // starts[base[q]+s] .. starts[idx+1) into pool
    std::vector<u32> pool;

    explicit RootsTable(i64 maxq_) : maxq(maxq_) {
        base.assign(maxq + 2, 0);
        for (i64 q = 1; q <= maxq; ++q) base[q + 1] = base[q] + q;
        starts.assign(base[maxq + 1] + 1, 0);
        u32 pos = 0;
        for (i64 q = 1; q <= maxq; ++q) {
            Factored qf = factor(static_cast<u64>(q));
            for (i64 s = 0; s < q; ++s) {
                starts[base[q] + s] = pos;
                if (std::gcd(s, q) == 1 || q == 1) {
                    for (u64 r : sqrt_mod(s, qf)) {
                        pool.push_back(static_cast<u32>(r % q));
                        ++pos;
                    }
                }
            }
        }
        starts[base[maxq + 1]] = pos;
    }

    std::pair<const u32*, const u32*> roots(i64 q, i64 s) const {
        u64 idx = base[q] + s;
        return {pool.data() + starts[idx], pool.data() + starts[idx + 1]};
    }
};

u64 count_in_prefix(i64 B, const EtaPrefix& pre, const RootsTable& roots) {
    u64 count = 0;
    const i128 B128 = B;
    scan_eta_prime(B, pre, [&](const std::array<i64, 8>& e) {
        const i64 e1 = e[0], e2 = e[1], e3 = e[2], e4 = e[3], e5 = e[4],
                  e6 = e[5], e7 = e[6], e8 = e[7];
        const i128 c = i128(e4) * e5 * e5 * e6 * e6 * e6 * e6 * e7 * e7 * e7;
        const u64 cp9 = static_cast<u64>(e3) * e4 * e5 * e6 * e7;
        const u64 cp10 = static_cast<u64>(e2) * cp9;
        const i64 h9 =
            B / (e2 * e3 * e4 * e5 * e6 * e7 * std::abs(e8));
        const i128 t1cap = B128 * e1;

        const u32 *rb, *re;
        u32 single = 0;
        if (e1 == 1) {
            rb = &single;
            re = rb + 1;
        } else {
            const u64 q = static_cast<u64>(e1);
            // η2 η9² ≡ -c η8 (mod η1); a shared factor would force p | η9
            const u64 rhs = pos_mod128(-c * e8, q);
            if (std::gcd(rhs, q) != 1) return;
            const u64 s = mulmod(rhs, invmod(static_cast<u64>(e2) % q, q), q);
            auto [b0, e0] = roots.roots(e1, static_cast<i64>(s));
            rb = b0;
            re = e0;
        }
        for (const u32* rp = rb; rp != re; ++rp) {
            const i64 rho = *rp;
            // class members rho + m e1 inside [-h9, h9]
            i64 m0 = -((h9 + rho) / e1);
            for (i64 e9 = rho + m0 * e1; e9 <= h9; e9 += e1) {
                const i128 t = i128(e2) * e9 * e9 + c * e8;
                if (abs128(i128(e8) * t) > t1cap) continue;
                if (std::gcd(static_cast<u64>(std::abs(e9)) % cp9, cp9) != 1)
                    continue;
                const i128 e10 = -t / e1;
                if (std::gcd(pos_mod128(e10, cp10), cp10) != 1) continue;
                ++count;
            }
        }
    });
    return count;
}

u64 count_torsor_impl(i64 B, bool parallel) {
    check_cap(B);
    if (B < 1) return 0;
    const i64 maxq = static_cast<i64>(std::cbrt(static_cast<double>(B))) + 1;
    const RootsTable roots(maxq);
    const std::vector<EtaPrefix> prefixes = eta_prefixes(B);
    u64 total = 0;
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : total)
        for (size_t i = 0; i < prefixes.size(); ++i)
            total += count_in_prefix(B, prefixes[i], roots);
    } else {
        for (const EtaPrefix& pre : prefixes)
            total += count_in_prefix(B, pre, roots);
    }
    return total;
}

}  // namespace

u64 count_torsor(i64 B) { return count_torsor_impl(B, true); }
u64 count_torsor_serial(i64 B) { return count_torsor_impl(B, false); }

u64 count_direct(i64 B) {
    check_cap(B);
    if (B > 2000) throw std::domain_error("count_direct: oracle capped at 2000");
    u64 total = 0;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : total)
    for (i64 x1 = -B; x1 <= B; ++x1) {
        if (x1 == 0) continue;
        const i64 x1c = x1 * x1 * x1;
        for (i64 x2 = 1; x2 <= B; ++x2) {
            const i64 m = x1 * x2;
            for (i64 x3 = 0; x3 <= B; ++x3) {
                const i64 num = x1c + x2 * x3 * x3;
                if (num % m != 0) continue;
                const i64 x0 = -num / m;
                if (std::abs(x0) > B) continue;
                u64 g = std::gcd(std::gcd(static_cast<u64>(std::abs(x0)),
                                          static_cast<u64>(std::abs(x1))),
                                 std::gcd(static_cast<u64>(x2),
                                          static_cast<u64>(std::abs(x3))));
                if (g != 1) continue;
                total += x3 == 0 ? 1 : 2;  // x3 and -x3 are distinct points
            }
        }
    }
    return total;
}

std::vector<SurfacePoint> list_points_direct(i64 B) {
    check_cap(B);
    if (B > 2000)
        throw std::domain_error("list_points_direct: oracle capped at 2000");
    std::vector<SurfacePoint> pts;
    for (i64 x1 = -B; x1 <= B; ++x1) {
        if (x1 == 0) continue;
        for (i64 x2 = 1; x2 <= B; ++x2) {
            const i64 m = x1 * x2;
            for (i64 x3 = -B; x3 <= B; ++x3) {
                const i64 num = x1 * x1 * x1 + x2 * x3 * x3;
                if (num % m != 0) continue;
                const i64 x0 = -num / m;
                if (std::abs(x0) > B) continue;
                u64 g = std::gcd(std::gcd(static_cast<u64>(std::abs(x0)),
                                          static_cast<u64>(std::abs(x1))),
                                 std::gcd(static_cast<u64>(x2),
                                          static_cast<u64>(std::abs(x3))));
                if (g != 1) continue;
                pts.push_back({x0, x1, x2, x3});
            }
        }
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

std::vector<SurfacePoint> list_points(i64 B) {
    check_cap(B);
    if (B > 10000) throw std::domain_error("list_points: capped at 10^4");
    if (B < 1) return {};
    const i64 maxq = static_cast<i64>(std::cbrt(static_cast<double>(B))) + 1;
    const RootsTable roots(maxq);
    std::vector<SurfacePoint> pts;
    const i128 B128 = B;
    for (const EtaPrefix& pre : eta_prefixes(B)) {
        scan_eta_prime(B, pre, [&](const std::array<i64, 8>& e) {
            const i64 e1 = e[0], e2 = e[1], e3 = e[2], e4 = e[3], e5 = e[4],
                      e6 = e[5], e7 = e[6], e8 = e[7];
            const i128 c = i128(e4) * e5 * e5 * e6 * e6 * e6 * e6 * e7 * e7 *
                           e7;
            const u64 cp9 = static_cast<u64>(e3) * e4 * e5 * e6 * e7;
            const u64 cp10 = static_cast<u64>(e2) * cp9;
            const i64 h9 = B / (e2 * e3 * e4 * e5 * e6 * e7 * std::abs(e8));
            const i128 t1cap = B128 * e1;
            const u32 *rb, *re;
            u32 single = 0;
            if (e1 == 1) {
                rb = &single;
                re = rb + 1;
            } else {
                const u64 q = static_cast<u64>(e1);
                const u64 rhs = pos_mod128(-c * e8, q);
                if (std::gcd(rhs, q) != 1) return;
                const u64 s =
                    mulmod(rhs, invmod(static_cast<u64>(e2) % q, q), q);
                auto [b0, e0] = roots.roots(e1, static_cast<i64>(s));
                rb = b0;
                re = e0;
            }
            for (const u32* rp = rb; rp != re; ++rp) {
                const i64 rho = *rp;
                i64 m0 = -((h9 + rho) / e1);
                for (i64 e9 = rho + m0 * e1; e9 <= h9; e9 += e1) {
                    const i128 t = i128(e2) * e9 * e9 + c * e8;
                    if (abs128(i128(e8) * t) > t1cap) continue;
                    if (std::gcd(static_cast<u64>(std::abs(e9)) % cp9, cp9) !=
                        1)
                        continue;
                    const i128 e10 = -t / e1;
                    if (std::gcd(pos_mod128(e10, cp10), cp10) != 1) continue;
                    TorsorPoint tp;
                    tp.eta = {e1, e2, e3, e4, e5, e6, e7, e8, e9,
                              static_cast<i64>(e10)};
                    pts.push_back(psi(tp));
                }
            }
        });
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

}  // namespace a5a1

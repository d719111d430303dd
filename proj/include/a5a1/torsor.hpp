#pragma once

#include <array>
#include <stdexcept>

#include "a5a1/arith.hpp"

namespace a5a1 {

// x1³ + x2 x3² + x0 x1 x2 = 0, gcd = 1, x1 != 0, x2 > 0
struct SurfacePoint {
    i64 x0 = 0, x1 = 0, x2 = 0, x3 = 0;

    auto operator<=>(const SurfacePoint&) const = default;
};

// η1..η7 > 0, η8 != 0, η9, η10 ∈ Z, torsor equation
// η1η10 + η2η9² + η4η5²η6⁴η7³η8 = 0 plus the coprimality conditions.
struct TorsorPoint {
    std::array<i64, 10> eta{};  // eta[i] = η_{i+1}

    i64 operator[](int i) const { return eta[i - 1]; }  // 1-based
};

constexpr i64 kMaxB = 1000000000;  // keeps all monomials below 2^127

i64 height(const SurfacePoint& p);
bool on_surface(i64 x0, i64 x1, i64 x2, i64 x3);

// Divides by the gcd and flips the global sign so x2 > 0.
// Rejects off-surface input and x1 = 0.
SurfacePoint canonicalize(i64 x0, i64 x1, i64 x2, i64 x3);

// Validates all TorsorPoint invariants.
bool torsor_valid(const TorsorPoint& t, std::string* why = nullptr);

// ψ(η) = (η8η10, η^(1,1,2,2,2,2,2,1), η^(3,2,4,3,2,0,1,0), η^(0,1,1,1,1,1,1,1) η9)
SurfacePoint psi(const TorsorPoint& t);

// All four height terms at most B; eta_prime = (η1..η8).
bool height_condition(const std::array<i64, 8>& eta_prime, i64 eta9, i64 B);

// Brute-force N_{U,H}(B) by scanning surface coordinates. Oracle scale only.
u64 count_direct(i64 B);
std::vector<SurfacePoint> list_points_direct(i64 B);

// N_{U,H}(B) through the torsor parametrization.
u64 count_torsor(i64 B);
u64 count_torsor_serial(i64 B);

// Canonical points of height <= B, sorted, via the torsor enumeration.
std::vector<SurfacePoint> list_points(i64 B);

// --- enumeration internals, shared with the density module ---

// Outer (η6, η7, η5, η4) loops; each prefix satisfies its height bounds and
// the coprimality conditions among these four variables.
struct EtaPrefix {
    i64 e6, e7, e5, e4;
};
std::vector<EtaPrefix> eta_prefixes(i64 B);

// Extends one prefix over η3, η2, η1, η8 subject to the second and third
// height terms and to the coprimality conditions (all of (3.5)-(3.6) style
// conditions among η1..η8). f receives η1..η8 as e[0..7].
template <typename F>
void scan_eta_prime(i64 B, const EtaPrefix& pre, F&& f) {
    const i64 e6 = pre.e6, e7 = pre.e7, e5 = pre.e5, e4 = pre.e4;
    const i128 B128 = B;
    const i64 m2_4 = e4 * e5 * e6 * e7;      // η4η5η6η7 (squared inside m2)
    const i128 m3_4 = i128(e4) * e4 * e4 * e5 * e5 * e7;  // η4³η5²η7
    std::array<i64, 8> e{};
    e[5] = e6;
    e[6] = e7;
    e[4] = e5;
    e[3] = e4;
    for (i64 e3 = 1;; ++e3) {
        const i128 sq2 = i128(e3) * e3 * m2_4 * m2_4;         // (η3η4η5η6η7)²
        const i128 m3_3 = i128(e3) * e3 * e3 * e3 * m3_4;     // η3⁴η4³η5²η7
        if (sq2 > B128 || m3_3 > B128) break;
        if (std::gcd(e3, e5) != 1 || std::gcd(e3, e6) != 1 ||
            std::gcd(e3, e7) != 1)
            continue;
        e[2] = e3;
        for (i64 e2 = 1;; ++e2) {
            if (e2 * sq2 > B128 || i128(e2) * e2 * m3_3 > B128) break;
            if (std::gcd(e2, e4) != 1 || std::gcd(e2, e5) != 1 ||
                std::gcd(e2, e6) != 1 || std::gcd(e2, e7) != 1)
                continue;
            e[1] = e2;
            const i128 m2_1 = i128(e2) * sq2;       // m2 / (η1 |η8|)
            const i128 m3_2 = i128(e2) * e2 * m3_3;  // m3 / η1³
            for (i64 e1 = 1;; ++e1) {
                if (e1 * m2_1 > B128 || i128(e1) * e1 * e1 * m3_2 > B128)
                    break;
                if (std::gcd(e1, e2) != 1 || std::gcd(e1, e4) != 1 ||
                    std::gcd(e1, e5) != 1 || std::gcd(e1, e6) != 1 ||
                    std::gcd(e1, e7) != 1)
                    continue;
                e[0] = e1;
                const i64 h8 = static_cast<i64>(B128 / (e1 * m2_1));
                const u64 cp8 = static_cast<u64>(e1) * e2 * e3 * e4 * e5 * e7;
                for (i64 a8 = 1; a8 <= h8; ++a8) {
                    if (std::gcd(static_cast<u64>(a8), cp8) != 1) continue;
                    e[7] = a8;
                    f(e);
                    e[7] = -a8;
                    f(e);
                }
            }
        }
    }
}

}  // namespace a5a1

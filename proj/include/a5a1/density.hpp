#pragma once

#include <array>

#include "a5a1/arith.hpp"

namespace a5a1 {

// (η1..η7 > 0, η8 != 0) with the coprimality flag computed once:
// (η8, η1η2η3η4η5η7) = 1 together with the pairwise conditions
// (η7, η1η2η3η4) = (η6, η1..η5) = (η5, η1η2η3) = (η4, η1η2) = (η1, η2) = 1.
struct EtaPrime {
    std::array<i64, 8> e{1, 1, 1, 1, 1, 1, 1, 1};
    bool coprime_ok = true;

    EtaPrime() = default;
    explicit EtaPrime(const std::array<i64, 8>& eta);

    i64 operator[](int i) const { return e[i - 1]; }  // 1-based
};

// Arithmetic density weights. All are exact and vanish when the
// coprimality conditions fail.
Rat theta1(const EtaPrime& e);
Rat theta1_prime(const EtaPrime& e);
Rat theta2(const std::array<i64, 7>& e);
// Local factor at p from the support set I = {i : p | η_i}, bit i-1 of mask.
Rat theta2_local(u64 p, unsigned mask);

// (1/η1) times the length of the real η9-interval allowed by the height
// conditions; 0 if the η8-free height terms already exceed B.
double v1(const EtaPrime& e, double B);
// Same with real η coordinates (η1..η7 > 0, η8 != 0).
double v1_real(const std::array<double, 8>& e, double B);

// ∑ θ1'(η')·V1(η'; B) over all integral η'. Cost guard B ≤ 10^5.
double main_term_sum(i64 B);

// --- exact polytope volume machinery ---

struct Constraint {
    std::vector<Rat> a;  // a·t ≤ b
    Rat b;
};

struct Triangulation {
    int dim = 0;
    std::vector<std::vector<Rat>> vertices;
    std::vector<std::vector<int>> simplices;  // dim+1 vertex indices each
    std::vector<Rat> volumes;                 // per simplex
    Rat total = 0;
};

// Exact vertex enumeration (constraint-subset intersections) for a bounded
// polytope, then a simplicial decomposition from a fixed base vertex.
Triangulation triangulate(int dim, const std::vector<Constraint>& cons);
Rat polytope_volume(int dim, const std::vector<Constraint>& cons);

// {t ≥ 0 : 3t1+2t2+4t3+3t4+2t5 ≤ 1, 5t1+3t2+6t3+4t4+2t5-2t6 ≥ 1}
std::vector<Constraint> alpha_constraints();
// Exact volume of that polytope; equals 1/172800.
Rat alpha_volume();

struct McEstimate {
    double value = 0;
    double stderr_ = 0;
};

// Monte Carlo cross-check of alpha_volume: hit rate in the bounding box
// [0,1/3]x[0,1/2]x[0,1/4]x[0,1/3]x[0,1/2]x[0,1/3].
McEstimate alpha_mc(u64 samples, u64 seed);

// Single local factor (1 - 1/p)^7 (1 + 7/p + 1/p²), exact.
Rat euler_factor(u64 p);
// ∏_{p ≤ P} euler_factor(p); tail beyond P is O(∑_{p>P} 21/p²).
double euler_product(u64 P);

// ∫ 1/|x1 x2| over {|x1³ + x2 x3²| ≤ |x1| x2, |x1| ≤ 1, 0 < x2 ≤ 1,
// |x3| ≤ 1}. Stratified Monte Carlo (sign(x1) × dyadic shells of |x1|).
McEstimate omega_inf(u64 samples, u64 seed);
// Independent deterministic estimator: adaptive midpoint grid on the
// reduced 2D integrand after integrating x3 analytically.
double omega_inf_grid(double rel_tol = 1e-3);

struct PeyreBreakdown {
    Rat alpha;            // 1/172800, computed not assumed
    double euler_prod = 0;
    u64 prime_limit = 0;
    double omega_inf = 0;
    double omega_inf_stderr = 0;
    double c_SH = 0;      // alpha · euler_prod · omega_inf
};

PeyreBreakdown peyre_constant(u64 prime_limit, u64 samples, u64 seed);

// Monte Carlo estimate of ∫ η1^{-1} over the relaxed real region: η1..η6
// sampled as B^{t_i} with t uniform in the polytope above, η7 ≥ 0 and η8
// real bounded by the η9-free height terms, η9 integrated in closed form.
// Consistent with alpha·omega_inf·B(log B)^6.
McEstimate v0_prime_estimate(double B, u64 samples, u64 seed);

}  // namespace a5a1

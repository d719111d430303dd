#pragma once

#include <functional>

#include "a5a1/arith.hpp"

namespace a5a1 {

enum class IntervalKind { LeftOpen, RightOpen, Open, Closed };

// Named weight functions Φ(a_1..a_r, q), all rational-valued so sums stay
// exact. 0 ≤ Φ ≤ V.
struct WeightFn {
    enum class Kind { One, InvQ, BoxIndicator, PiecewiseLinear } kind = Kind::One;
    Rat V = 1;
    Rat qlo = 0, qhi = 0;                       // BoxIndicator: 1 on [qlo, qhi]
    std::vector<std::pair<Rat, Rat>> table;     // PiecewiseLinear breakpoints

    static WeightFn one();
    static WeightFn inv_q();
    static WeightFn box_indicator(Rat qlo, Rat qhi);
    static WeightFn piecewise_linear(std::vector<std::pair<Rat, Rat>> table);

    Rat eval(u64 q) const;
};

// Range functions Q^-(a), Q^+(a); 0 < Q^- <= Q^+ <= Q.
struct RangeFn {
    std::function<double(std::span<const i64>)> qminus;
    std::function<double(std::span<const i64>)> qplus;

    static RangeFn constant(double qm, double qp);
};

struct SumSpec {
    int r = 2;
    std::vector<double> K;   // dyadic box: a_i runs over (K_i, 2K_i]
    double Q = 1;
    i64 b = 1;
    u64 k = 1;               // (k, b) = 1
    std::vector<u64> t;      // primed variant: (a_i, t_i) = 1
    u64 u = 1;               // primed variant: (q, u) = 1
    bool pairwise = false;   // primed variant: also require (a_i, a_j) = 1
    WeightFn weight = WeightFn::one();
    RangeFn range;
    IntervalKind interval_kind = IntervalKind::LeftOpen;

    void validate() const;
    // K = 2^{r+1} K_1 ... K_r
    double K_total() const;
};

struct SumReport {
    Rat sigma, main, err;  // err = sigma - main, exactly
    double bound = 0;      // E' with no implied constant
    double ratio = 0;      // |err| / bound
    u64 terms = 0;         // lattice terms visited for sigma
};

// Σ of the dyadic-box average: Σ Φ(a,q) N(-a_1..a_r b, kq)
Rat sigma(const SumSpec& spec, u64* terms = nullptr);
// M: same sum restricted to (a_1..a_r b, kq) = 1 with the 2-adic factor
Rat main_term(const SumSpec& spec);
// E summed directly from its divisor-sum definition (small specs only)
Rat error_direct(const SumSpec& spec);

// Σ', M': with (a_i, t_i) = (a_i, a_j) = (q, u) = 1 added
Rat sigma_prime(const SumSpec& spec);
Rat main_prime(const SumSpec& spec);

// E' = V K^{1/2+ε} Q L^ε (K^{1/2-1/2r} rad(k)^{1/4} + |b|^ε 2^{(1+ε)ω(k)}
//      + 2^{ω(k)} L),  L = log(2+Q)
double error_bound(const SumSpec& spec, double eps);

SumReport report(const SumSpec& spec, double eps, bool primed = false);

struct SimpleCaseResult {
    Rat sigma, main;
    double c_hat = 0;  // main / (K2 K4 K7 K8 Q)
};
// The basic dyadic-box sum: a_i ~ K_i (i in {2,4,7,8}), q ~ Q, Φ ≡ 1.
SimpleCaseResult simple_case_scan(double K2, double K4, double K7, double K8,
                                  double Q);

// Integer endpoints of the q-interval with the given kind.
std::pair<i64, i64> interval_bounds(double lo, double hi, IntervalKind kind);

}  // namespace a5a1

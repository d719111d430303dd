#include "a5a1/avgsum.hpp"

#include <cmath>
#include <stdexcept>

#include "a5a1/quadcong.hpp"

namespace a5a1 {

WeightFn WeightFn::one() { return WeightFn{}; }

WeightFn WeightFn::inv_q() {
    WeightFn w;
    w.kind = Kind::InvQ;
    w.V = 1;
    return w;
}

WeightFn WeightFn::box_indicator(Rat qlo, Rat qhi) {
    WeightFn w;
    w.kind = Kind::BoxIndicator;
    w.V = 1;
    w.qlo = std::move(qlo);
    w.qhi = std::move(qhi);
    return w;
}

WeightFn WeightFn::piecewise_linear(std::vector<std::pair<Rat, Rat>> table) {
    if (table.size() < 2)
        throw std::invalid_argument("piecewise_linear: need at least 2 points");
    WeightFn w;
    w.kind = Kind::PiecewiseLinear;
    w.table = std::move(table);
    w.V = 0;
    for (auto& [q, v] : w.table)
        if (v > w.V) w.V = v;
    return w;
}

Rat WeightFn::eval(u64 q) const {
    switch (kind) {
        case Kind::One:
            return 1;
        case Kind::InvQ:
            return Rat(1, static_cast<unsigned long>(q));
        case Kind::BoxIndicator:
            return (qlo <= Rat(static_cast<unsigned long>(q)) &&
                    Rat(static_cast<unsigned long>(q)) <= qhi)
                       ? 1
                       : 0;
        case Kind::PiecewiseLinear: {
            Rat x(static_cast<unsigned long>(q));
            if (x <= table.front().first) return table.front().second;
            if (x >= table.back().first) return table.back().second;
            for (size_t i = 1; i < table.size(); ++i) {
                if (x <= table[i].first) {
                    const auto& [x0, y0] = table[i - 1];
                    const auto& [x1, y1] = table[i];
                    Rat y = y0 + (y1 - y0) * (x - x0) / (x1 - x0);
                    return y;
                }
            }
            return table.back().second;
        }
    }
    return 0;
}

RangeFn RangeFn::constant(double qm, double qp) {
    RangeFn r;
    r.qminus = [qm](std::span<const i64>) { return qm; };
    r.qplus = [qp](std::span<const i64>) { return qp; };
    return r;
}

void SumSpec::validate() const {
    if (r < 2) throw std::invalid_argument("SumSpec: r >= 2 required");
    if (static_cast<int>(K.size()) != r)
        throw std::invalid_argument("SumSpec: K must have r entries");
    if (b == 0) throw std::invalid_argument("SumSpec: b must be nonzero");
    if (k == 0 || std::gcd(k, static_cast<u64>(std::abs(b))) != 1)
        throw std::invalid_argument("SumSpec: need k >= 1 with (k, b) = 1");
    if (!t.empty() && static_cast<int>(t.size()) != r)
        throw std::invalid_argument("SumSpec: t must have r entries (or none)");
    if (!range.qminus || !range.qplus)
        throw std::invalid_argument("SumSpec: range functions must be set");
}

double SumSpec::K_total() const {
    double kt = std::ldexp(1.0, r + 1);
    for (double ki : K) kt *= ki;
    return kt;
}

std::pair<i64, i64> interval_bounds(double lo, double hi, IntervalKind kind) {
    i64 a, b;
    switch (kind) {
        case IntervalKind::LeftOpen:
            a = static_cast<i64>(std::floor(lo)) + 1;
            b = static_cast<i64>(std::floor(hi));
            break;
        case IntervalKind::RightOpen:
            a = static_cast<i64>(std::ceil(lo));
            b = static_cast<i64>(std::ceil(hi)) - 1;
            break;
        case IntervalKind::Open:
            a = static_cast<i64>(std::floor(lo)) + 1;
            b = static_cast<i64>(std::ceil(hi)) - 1;
            break;
        case IntervalKind::Closed:
            a = static_cast<i64>(std::ceil(lo));
            b = static_cast<i64>(std::floor(hi));
            break;
    }
    return {a, b};
}

namespace {

// Walks the lattice box a_i ~ K_i (with the primed coprimality conditions
// when primed is set) and hands each admissible tuple plus its q-interval to
// f(a, prod, qlo, qhi).
template <typename F>
void for_each_tuple(const SumSpec& spec, bool primed, F&& f) {
    const int r = spec.r;
    std::vector<i64> lo(r), hi(r), a(r);
    for (int i = 0; i < r; ++i) {
        lo[i] = static_cast<i64>(std::floor(spec.K[i])) + 1;
        hi[i] = static_cast<i64>(std::floor(2 * spec.K[i]));
        if (hi[i] < lo[i]) return;  // empty box
    }
    int i = 0;
    a[0] = lo[0] - 1;
    while (i >= 0) {
        ++a[i];
        if (a[i] > hi[i]) {
            --i;
            continue;
        }
        if (primed) {
            bool ok = spec.t.empty() ||
                      std::gcd(static_cast<u64>(a[i]), spec.t[i]) == 1;
            if (spec.pairwise)
                for (int j = 0; ok && j < i; ++j)
                    ok = std::gcd(a[i], a[j]) == 1;
            if (!ok) continue;
        }
        if (i + 1 < r) {
            ++i;
            a[i] = lo[i] - 1;
            continue;
        }
        i128 prod = 1;
        for (i64 ai : a) prod *= ai;
        prod *= spec.b;
        double qm = spec.range.qminus(a);
        double qp = spec.range.qplus(a);
        auto [q0, q1] = interval_bounds(qm, qp, spec.interval_kind);
        if (q0 < 1) q0 = 1;
        f(std::span<const i64>(a), prod, q0, q1);
    }
}

Rat sigma_impl(const SumSpec& spec, bool primed, u64* terms) {
    spec.validate();
    Rat acc = 0;
    u64 nterms = 0;
    if (spec.Q < 1) {
        if (terms) *terms = 0;
        return acc;
    }
    for_each_tuple(spec, primed, [&](std::span<const i64>, i128 ab, i64 q0,
                                     i64 q1) {
        for (i64 q = q0; q <= q1; ++q) {
            if (primed && spec.u > 1 &&
                std::gcd(static_cast<u64>(q), spec.u) != 1)
                continue;
            ++nterms;
            u64 kq = spec.k * static_cast<u64>(q);
            u64 n = count_n(static_cast<i64>(pos_mod128(-ab, kq)), kq);
            if (n == 0) continue;
            acc += spec.weight.eval(static_cast<u64>(q)) *
                   Rat(static_cast<unsigned long>(n));
        }
    });
    if (terms) *terms = nterms;
    return acc;
}

Rat main_impl(const SumSpec& spec, bool primed) {
    spec.validate();
    Rat acc = 0;
    if (spec.Q < 1) return acc;
    for_each_tuple(spec, primed, [&](std::span<const i64>, i128 ab, i64 q0,
                                     i64 q1) {
        for (i64 q = q0; q <= q1; ++q) {
            if (primed && spec.u > 1 &&
                std::gcd(static_cast<u64>(q), spec.u) != 1)
                continue;
            u64 kq = spec.k * static_cast<u64>(q);
            if (std::gcd(pos_mod128(ab, kq), kq) != 1 && kq > 1) continue;
            int v = two_adic(static_cast<i64>(kq)).first;
            int w;
            if (v == 0) {
                w = 1;
            } else {
                i64 n8 = static_cast<i64>(pos_mod128(-ab, 8));
                w = bracket2(n8, v);
            }
            if (w == 0) continue;
            acc += spec.weight.eval(static_cast<u64>(q)) * w;
        }
    });
    return acc;
}

}  // namespace

Rat sigma(const SumSpec& spec, u64* terms) { return sigma_impl(spec, false, terms); }
Rat main_term(const SumSpec& spec) { return main_impl(spec, false); }
Rat sigma_prime(const SumSpec& spec) { return sigma_impl(spec, true, nullptr); }
Rat main_prime(const SumSpec& spec) { return main_impl(spec, true); }

Rat error_direct(const SumSpec& spec) {
    spec.validate();
    Rat acc = 0;
    if (spec.Q < 1) return acc;
    for_each_tuple(spec, false, [&](std::span<const i64>, i128 ab, i64 q0,
                                    i64 q1) {
        for (i64 q = q0; q <= q1; ++q) {
            u64 kq = spec.k * static_cast<u64>(q);
            if (std::gcd(pos_mod128(ab, kq), kq) != 1 && kq > 1) continue;
            int v = two_adic(static_cast<i64>(kq)).first;
            int w;
            if (v == 0) {
                w = 1;
            } else {
                w = bracket2(static_cast<i64>(pos_mod128(-ab, 8)), v);
            }
            if (w == 0) continue;
            // ∑_{d | kq, d > 1, d odd} μ²(d) (-ab/d) over squarefree d
            Factored kqf = factor(kq);
            std::vector<u64> odd_primes;
            for (auto [p, e] : kqf.factors)
                if (p != 2) odd_primes.push_back(static_cast<u64>(p));
            i64 inner = 0;
            const size_t m = odd_primes.size();
            for (size_t mask = 1; mask < (size_t(1) << m); ++mask) {
                u64 d = 1;
                for (size_t j = 0; j < m; ++j)
                    if (mask & (size_t(1) << j)) d *= odd_primes[j];
                inner += jacobi(static_cast<i64>(pos_mod128(-ab, d)), d);
            }
            if (inner == 0) continue;
            acc += spec.weight.eval(static_cast<u64>(q)) * w *
                   Rat(static_cast<long>(inner));
        }
    });
    return acc;
}

double error_bound(const SumSpec& spec, double eps) {
    if (eps <= 0) throw std::invalid_argument("error_bound: eps > 0 required");
    const double V = spec.weight.V.get_d();
    const double K = spec.K_total();
    const double Q = spec.Q;
    const double L = std::log(2 + Q);
    Factored kf = factor(spec.k);
    const double radk = static_cast<double>(static_cast<u64>(radical(kf)));
    const int wk = omega(kf);
    const double term1 =
        std::pow(K, 0.5 - 0.5 / spec.r) * std::pow(radk, 0.25);
    const double term2 =
        std::pow(std::abs(static_cast<double>(spec.b)), eps) *
        std::pow(2.0, (1 + eps) * wk);
    const double term3 = std::pow(2.0, wk) * L;
    return V * std::pow(K, 0.5 + eps) * Q * std::pow(L, eps) *
           (term1 + term2 + term3);
}

SumReport report(const SumSpec& spec, double eps, bool primed) {
    SumReport rep;
    rep.sigma = primed ? sigma_prime(spec) : sigma(spec, &rep.terms);
    rep.main = primed ? main_prime(spec) : main_term(spec);
    rep.err = rep.sigma - rep.main;
    rep.bound = error_bound(spec, eps);
    rep.ratio = std::abs(rep.err.get_d()) / rep.bound;
    return rep;
}

SimpleCaseResult simple_case_scan(double K2, double K4, double K7, double K8,
                                  double Q) {
    if (K2 < 0.5 || K4 < 0.5 || K7 < 0.5 || K8 < 0.5 || Q < 0.5)
        throw std::invalid_argument("simple_case_scan: parameters >= 1/2");
    SumSpec spec;
    spec.r = 4;
    spec.K = {K2, K4, K7, K8};
    spec.Q = 2 * Q;
    spec.b = 1;
    spec.k = 1;
    spec.range = RangeFn::constant(Q, 2 * Q);
    spec.interval_kind = IntervalKind::LeftOpen;
    SimpleCaseResult res;
    res.sigma = sigma(spec);
    res.main = main_term(spec);
    res.c_hat = res.main.get_d() / (K2 * K4 * K7 * K8 * Q);
    return res;
}

}  // namespace a5a1

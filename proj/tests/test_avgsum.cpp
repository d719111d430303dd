#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "a5a1/avgsum.hpp"
#include "a5a1/quadcong.hpp"

using namespace a5a1;

namespace {

SumSpec base_spec() {
    SumSpec s;
    s.r = 2;
    s.K = {0.5, 0.5};
    s.Q = 2;
    s.range = RangeFn::constant(0.5, 2);
    return s;
}

}  // namespace

TEST_CASE("smallest box evaluates by hand") {
    SumSpec s = base_spec();
    // a = (1,1) only; q in {1, 2}: N(-1,1) = N(-1,2) = 1
    CHECK(sigma(s) == 2);
    CHECK(main_term(s) == 2);
    CHECK(error_direct(s) == 0);
}

TEST_CASE("Q below 1 gives empty sums") {
    SumSpec s = base_spec();
    s.Q = 0.5;
    CHECK(sigma(s) == 0);
    CHECK(main_term(s) == 0);
}

TEST_CASE("sigma equals an independent nested-loop oracle") {
    SumSpec s;
    s.r = 4;
    s.K = {1, 1, 1, 1};
    s.Q = 4;
    s.range = RangeFn::constant(0.5, 4);
    Rat oracle = 0;
    for (i64 a1 = 2; a1 <= 2; ++a1)
        for (i64 a2 = 2; a2 <= 2; ++a2)
            for (i64 a3 = 2; a3 <= 2; ++a3)
                for (i64 a4 = 2; a4 <= 2; ++a4)
                    for (i64 q = 1; q <= 4; ++q)
                        oracle += static_cast<long>(count_brute(
                            CongruenceInstance(-a1 * a2 * a3 * a4, q)));
    CHECK(sigma(s) == oracle);
}

TEST_CASE("sigma minus main equals the direct error sum") {
    for (double K : {0.5, 1.0, 2.0})
        for (double Q : {2.0, 5.0, 9.0})
            for (i64 b : {1, -3})
                for (u64 k : {1, 2}) {
                    SumSpec s;
                    s.r = 3;
                    s.K = {K, 1, K};
                    s.Q = Q;
                    s.b = b;
                    s.k = k;
                    s.range = RangeFn::constant(0.5, Q);
                    CHECK(sigma(s) - main_term(s) == error_direct(s));
                }
}

TEST_CASE("interval kinds only move boundary terms") {
    SumSpec s;
    s.r = 2;
    s.K = {2, 2};
    s.Q = 8;
    s.range = RangeFn::constant(3, 8);
    s.interval_kind = IntervalKind::Closed;
    Rat closed = sigma(s);
    s.interval_kind = IntervalKind::LeftOpen;
    Rat left = sigma(s);
    s.interval_kind = IntervalKind::RightOpen;
    Rat right = sigma(s);
    s.interval_kind = IntervalKind::Open;
    Rat open = sigma(s);
    // boundary contributions q = 3 and q = 8, each nonnegative
    Rat q3 = closed - left;
    Rat q8 = closed - right;
    CHECK(q3 >= 0);
    CHECK(q8 >= 0);
    CHECK(open == closed - q3 - q8);
}

TEST_CASE("interval_bounds endpoint handling") {
    CHECK(interval_bounds(2, 5, IntervalKind::LeftOpen) ==
          std::pair<i64, i64>(3, 5));
    CHECK(interval_bounds(2, 5, IntervalKind::RightOpen) ==
          std::pair<i64, i64>(2, 4));
    CHECK(interval_bounds(2, 5, IntervalKind::Open) ==
          std::pair<i64, i64>(3, 4));
    CHECK(interval_bounds(2, 5, IntervalKind::Closed) ==
          std::pair<i64, i64>(2, 5));
    CHECK(interval_bounds(2.5, 4.5, IntervalKind::LeftOpen) ==
          std::pair<i64, i64>(3, 4));
}

TEST_CASE("sigma is nondecreasing in the upper endpoint") {
    SumSpec s;
    s.r = 2;
    s.K = {2, 1};
    s.Q = 12;
    Rat prev = -1;
    for (double qp : {3.0, 6.0, 9.0, 12.0}) {
        s.range = RangeFn::constant(0.5, qp);
        Rat cur = sigma(s);
        CHECK(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("primed sums reduce to plain sums when conditions are empty") {
    SumSpec s;
    s.r = 3;
    s.K = {1, 2, 1};
    s.Q = 6;
    s.t = {1, 1, 1};
    s.u = 1;
    s.range = RangeFn::constant(0.5, 6);
    CHECK(sigma_prime(s) == sigma(s));
    CHECK(main_prime(s) == main_term(s));
}

TEST_CASE("primed sum drops even q when u = 2") {
    SumSpec s = base_spec();
    s.t = {1, 1};
    s.u = 2;
    // from the by-hand case: the q = 2 term is removed
    CHECK(sigma_prime(s) == 1);
}

TEST_CASE("t_i coprime to a box of ones changes nothing") {
    SumSpec s = base_spec();
    s.t = {2, 3};
    CHECK(sigma_prime(s) == sigma(s));
}

TEST_CASE("weights scale the sum") {
    SumSpec s;
    s.r = 2;
    s.K = {2, 2};
    s.Q = 4;
    s.range = RangeFn::constant(0.5, 4);
    s.weight = WeightFn::inv_q();
    Rat weighted = sigma(s);
    // manual: sum N(-a1 a2, q)/q over the box
    Rat manual = 0;
    for (i64 a1 = 3; a1 <= 4; ++a1)
        for (i64 a2 = 3; a2 <= 4; ++a2)
            for (i64 q = 1; q <= 4; ++q)
                manual += Rat(static_cast<long>(count_n(-a1 * a2, q)),
                              static_cast<long>(q));
    CHECK(weighted == manual);

    s.weight = WeightFn::box_indicator(2, 3);
    Rat boxed = sigma(s);
    Rat manual2 = 0;
    for (i64 a1 = 3; a1 <= 4; ++a1)
        for (i64 a2 = 3; a2 <= 4; ++a2)
            for (i64 q = 2; q <= 3; ++q)
                manual2 += static_cast<long>(count_n(-a1 * a2, q));
    CHECK(boxed == manual2);
}

TEST_CASE("piecewise linear weight interpolates") {
    WeightFn w = WeightFn::piecewise_linear({{0, 0}, {4, 2}, {8, 0}});
    CHECK(w.eval(2) == 1);
    CHECK(w.eval(4) == 2);
    CHECK(w.eval(6) == 1);
    CHECK(w.eval(100) == 0);
    CHECK(w.V == 2);
}

TEST_CASE("error_bound formula spot values") {
    SumSpec s;
    s.r = 2;
    s.K = {0.5, 0.5};  // K_total = 8 * 1/4 = 2
    s.Q = 1;
    s.range = RangeFn::constant(0.5, 1);
    double eps = 1e-9;
    double L = std::log(3.0);
    double expect = std::pow(2.0, 0.5) *
                    (std::pow(2.0, 0.5 - 0.25) + 1 + L);
    CHECK(error_bound(s, eps) == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("error_bound is linear in V") {
    SumSpec s = base_spec();
    double base = error_bound(s, 0.1);
    s.weight = WeightFn::piecewise_linear({{0, 2}, {10, 2}});
    CHECK(error_bound(s, 0.1) == doctest::Approx(2 * base));
}

TEST_CASE("error_bound matches the closed form for composite k") {
    SumSpec s;
    s.r = 2;
    s.K = {1, 1};
    s.Q = 4;
    s.k = 15;  // omega = 2, radical = 15
    s.range = RangeFn::constant(0.5, 4);
    double eps = 0.1;
    double L = std::log(2 + s.Q);
    double K = s.K_total();
    double lead = std::pow(K, 0.5 + eps) * s.Q * std::pow(L, eps);
    double expect = lead * (std::pow(K, 0.25) * std::pow(15.0, 0.25) +
                            std::pow(2.0, 2 * (1 + eps)) + 4 * L);
    CHECK(error_bound(s, eps) == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("simple case scan by-hand cell") {
    SimpleCaseResult r = simple_case_scan(0.5, 0.5, 0.5, 0.5, 0.5);
    CHECK(r.sigma == 1);
}

TEST_CASE("simple case scan roughly doubles with Q") {
    SimpleCaseResult a = simple_case_scan(4, 4, 4, 4, 16);
    SimpleCaseResult b = simple_case_scan(4, 4, 4, 4, 32);
    double ratio = b.main.get_d() / a.main.get_d();
    CHECK(ratio > 1.5);
    CHECK(ratio < 2.5);
}

TEST_CASE("report ties the pieces together") {
    SumSpec s;
    s.r = 4;
    s.K = {1, 1, 1, 1};
    s.Q = 8;
    s.range = RangeFn::constant(0.5, 8);
    SumReport rep = report(s, 0.1);
    CHECK(rep.sigma == rep.main + rep.err);
    CHECK(rep.bound > 0);
    CHECK(rep.ratio == doctest::Approx(std::abs(rep.err.get_d()) / rep.bound));
    CHECK(rep.terms == 8);  // one tuple, q = 1..8
}

TEST_CASE("invalid specs are rejected") {
    SumSpec s;
    s.r = 1;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = base_spec();
    s.k = 2;
    s.b = 4;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = base_spec();
    s.t = {1};
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "a5a1/density.hpp"
#include "a5a1/torsor.hpp"

using namespace a5a1;

namespace {

EtaPrime make_eta(std::array<i64, 8> e) { return EtaPrime(e); }

}  // namespace

TEST_CASE("theta1_prime hand values") {
    CHECK(theta1_prime(make_eta({1, 1, 1, 1, 1, 1, 1, 1})) == 1);
    CHECK(theta1_prime(make_eta({1, 2, 1, 1, 1, 1, 1, 1})) == 1);
    // eta1 = 2: v = 1 and -1 odd, four odd squares mod 2 -> one class
    CHECK(theta1_prime(make_eta({2, 1, 1, 1, 1, 1, 1, 1})) == 1);
}

TEST_CASE("theta1 hand values") {
    CHECK(theta1(make_eta({1, 1, 1, 1, 1, 1, 1, 1})) == 1);
    // -1 = 4 = 2^2 mod 5, two roots
    CHECK(theta1(make_eta({5, 1, 1, 1, 1, 1, 1, 1})) == 2);
}

TEST_CASE("theta weights vanish without coprimality") {
    // eta1 and eta2 share a factor
    EtaPrime e = make_eta({2, 2, 1, 1, 1, 1, 1, 1});
    CHECK(!e.coprime_ok);
    CHECK(theta1_prime(e) == 0);
    CHECK(theta1(e) == 0);
    // eta8 sharing a factor with eta1
    EtaPrime f = make_eta({3, 1, 1, 1, 1, 1, 1, 3});
    CHECK(theta1_prime(f) == 0);
}

TEST_CASE("theta2_local table") {
    for (u64 p : {2, 3, 5, 7}) {
        Rat q(1, static_cast<long>(p));
        Rat one_m = 1 - q;
        CHECK(theta2_local(p, 0) == 1);
        CHECK(theta2_local(p, 1u << 0) == one_m);        // {1}
        CHECK(theta2_local(p, 1u << 1) == one_m);        // {2}
        CHECK(theta2_local(p, 1u << 5) == one_m);        // {6}
        CHECK(theta2_local(p, 1u << 2) == one_m * (1 - 2 * q));  // {3}
        for (unsigned i : {3u, 4u, 6u})                  // {4},{5},{7}
            CHECK(theta2_local(p, 1u << i) == one_m * one_m);
        // the listed pairs
        for (unsigned mask : {(1u << 0) | (1u << 2), (1u << 1) | (1u << 2),
                              (1u << 2) | (1u << 3), (1u << 3) | (1u << 4),
                              (1u << 4) | (1u << 6), (1u << 5) | (1u << 6)})
            CHECK(theta2_local(p, mask) == one_m * one_m);
        // a forbidden pair
        CHECK(theta2_local(p, (1u << 0) | (1u << 1)) == 0);
    }
    CHECK(theta2_local(3, 1u << 2) == Rat(2, 9));
}

TEST_CASE("theta2 equals the local product") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        std::array<i64, 7> et;
        for (auto& x : et) x = 1 + static_cast<i64>(rng() % 10000);
        std::array<u64, 7> parts;
        for (int i = 0; i < 7; ++i) parts[i] = static_cast<u64>(et[i]);
        Rat prod = 1;
        for (u64 p : prime_union(parts)) {
            unsigned mask = 0;
            for (int i = 0; i < 7; ++i)
                if (et[i] % static_cast<i64>(p) == 0) mask |= 1u << i;
            prod *= theta2_local(p, mask);
            if (prod == 0) break;
        }
        CHECK(theta2(et) == prod);
    }
}

TEST_CASE("eta8 average of theta1_prime approaches theta2") {
    std::mt19937_64 rng(37);
    const i64 t = 10000;
    int tested = 0;
    for (int trial = 0; trial < 3000 && tested < 10; ++trial) {
        std::array<i64, 7> et;
        for (auto& x : et) x = 1 + static_cast<i64>(rng() % 30);
        Rat t2 = theta2(et);
        if (t2 <= 0) continue;
        ++tested;
        Rat s = 0;
        for (i64 e8 = 1; e8 <= t; ++e8) {
            std::array<i64, 8> full;
            std::copy(et.begin(), et.end(), full.begin());
            full[7] = e8;
            s += theta1_prime(EtaPrime(full));
        }
        Rat target = t2 * t;
        Rat dev = s - target;
        if (dev < 0) dev = -dev;
        CHECK(dev < target / 100);
        // deviation bounded by a small multiple of 2^{omega scale}
        std::array<u64, 6> parts{static_cast<u64>(et[0]), static_cast<u64>(et[1]),
                                 static_cast<u64>(et[2]), static_cast<u64>(et[3]),
                                 static_cast<u64>(et[4]), static_cast<u64>(et[6])};
        double cap = 4.0 * std::pow(2.0, omega_of_product(parts) +
                                             omega(factor(u64(et[2]))));
        CHECK(dev.get_d() <= cap);
    }
    CHECK(tested == 10);
}

TEST_CASE("v1 hand values") {
    EtaPrime one = make_eta({1, 1, 1, 1, 1, 1, 1, 1});
    CHECK(v1(one, 2) == doctest::Approx(2.0));
    CHECK(v1(one, 1) == doctest::Approx(0.0));
    // third height term too large
    EtaPrime big = make_eta({10, 1, 1, 1, 1, 1, 1, 1});
    CHECK(v1(big, 5) == 0.0);
}

TEST_CASE("v1 upper bounds hold pointwise") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 500; ++trial) {
        std::array<i64, 8> e;
        for (auto& x : e) x = 1 + static_cast<i64>(rng() % 6);
        if (rng() % 2) e[7] = -e[7];
        double B = 10 + static_cast<double>(rng() % 100000);
        double v = v1(EtaPrime(e), B);
        CHECK(v >= 0);
        // |e2 e8 x^2 + d| <= B e1 confines x to intervals of total length
        // 2 sqrt(2 B e1 / (e2 |e8|)); dividing by e1 gives the first bound.
        double b1 = 2 * std::sqrt(2 * B) /
                    std::sqrt(static_cast<double>(e[0]) * e[1] * std::abs(e[7]));
        // |x| <= B / (e2 e3 e4 e5 e6 e7 |e8|) caps the interval directly
        double b2 = 2 * B /
                    (static_cast<double>(e[0]) * e[1] * e[2] * e[3] * e[4] *
                     e[5] * e[6] * std::abs(e[7]));
        CHECK(v <= std::min(b1, b2) * (1 + 1e-9));
    }
}

TEST_CASE("v1_real agrees with v1 on integer input") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 200; ++trial) {
        std::array<i64, 8> e;
        for (auto& x : e) x = 1 + static_cast<i64>(rng() % 5);
        if (rng() % 2) e[7] = -e[7];
        std::array<double, 8> d;
        for (int i = 0; i < 8; ++i) d[i] = static_cast<double>(e[i]);
        double B = 50 + static_cast<double>(rng() % 10000);
        CHECK(v1(EtaPrime(e), B) == doctest::Approx(v1_real(d, B)));
    }
}

TEST_CASE("main_term_sum basics") {
    CHECK(main_term_sum(0) == 0.0);
    CHECK(main_term_sum(10) > 0);
    double m = main_term_sum(1000);
    double n = static_cast<double>(count_torsor(1000));
    CHECK(std::fabs(m / n - 1) < 0.05);
    CHECK_THROWS(main_term_sum(200000));
}

TEST_CASE("alpha volume is exactly 1/172800") {
    CHECK(alpha_volume() == Rat(1, 172800));
}

TEST_CASE("simplex volume sanity for the volume engine") {
    // standard 3-simplex x,y,z >= 0, x+y+z <= 1 has volume 1/6
    std::vector<Constraint> cons;
    for (int i = 0; i < 3; ++i) {
        Constraint c;
        c.a.assign(3, 0);
        c.a[i] = -1;
        c.b = 0;
        cons.push_back(c);
    }
    Constraint top;
    top.a = {1, 1, 1};
    top.b = 1;
    cons.push_back(top);
    CHECK(polytope_volume(3, cons) == Rat(1, 6));
    // scaled box
    std::vector<Constraint> box;
    for (int i = 0; i < 2; ++i) {
        Constraint lo;
        lo.a.assign(2, 0);
        lo.a[i] = -1;
        lo.b = 0;
        box.push_back(lo);
        Constraint hi;
        hi.a.assign(2, 0);
        hi.a[i] = 1;
        hi.b = Rat(i + 1, 2);
        box.push_back(hi);
    }
    CHECK(polytope_volume(2, box) == Rat(1, 2));
}

TEST_CASE("dropping the lower constraint gives the plain simplex volume") {
    // only 3t1+2t2+4t3+3t4+2t5 <= 1, t6 <= 1 say, t >= 0:
    // volume = 1/(5! * 3*2*4*3*2) * 1 = 1/17280
    std::vector<Constraint> cons;
    for (int i = 0; i < 6; ++i) {
        Constraint c;
        c.a.assign(6, 0);
        c.a[i] = -1;
        c.b = 0;
        cons.push_back(c);
    }
    Constraint cap;
    cap.a = {3, 2, 4, 3, 2, 0};
    cap.b = 1;
    cons.push_back(cap);
    Constraint t6;
    t6.a = {0, 0, 0, 0, 0, 1};
    t6.b = 1;
    cons.push_back(t6);
    CHECK(polytope_volume(6, cons) == Rat(1, 17280));
}

TEST_CASE("alpha Monte Carlo brackets the exact volume") {
    McEstimate mc = alpha_mc(2000000, 99);
    double exact = alpha_volume().get_d();
    CHECK(std::fabs(mc.value - exact) <= 4 * mc.stderr_);
    CHECK(mc.stderr_ < exact);  // meaningful precision
}

TEST_CASE("euler product") {
    CHECK(euler_factor(2) == Rat(19, 512));
    CHECK(euler_product(2) == doctest::Approx(19.0 / 512));
    CHECK(std::fabs(euler_product(100000) - euler_product(1000000)) < 1e-6);
    // factors below 1, so the product decreases in P
    CHECK(euler_product(1000) < euler_product(100));
}

TEST_CASE("omega_inf estimators agree") {
    double g = omega_inf_grid();
    McEstimate m = omega_inf(2000000, 5);
    CHECK(std::fabs(m.value - g) / g < 0.02);
    CHECK(m.stderr_ > 0);
    CHECK(m.stderr_ < 0.1 * m.value);
}

TEST_CASE("omega_inf is reproducible from the seed") {
    McEstimate a = omega_inf(100000, 12);
    McEstimate b = omega_inf(100000, 12);
    CHECK(a.value == b.value);
    CHECK(a.stderr_ == b.stderr_);
    McEstimate c = omega_inf(100000, 13);
    CHECK(a.value != c.value);
}

TEST_CASE("omega_inf rejects tiny budgets") {
    CHECK_THROWS(omega_inf(100, 1));
}

TEST_CASE("peyre constant assembles its parts") {
    PeyreBreakdown pb = peyre_constant(10000, 1000000, 3);
    CHECK(pb.alpha == Rat(1, 172800));
    CHECK(pb.c_SH > 0);
    CHECK(pb.c_SH == doctest::Approx(pb.alpha.get_d() * pb.euler_prod *
                                     pb.omega_inf));
    PeyreBreakdown pb2 = peyre_constant(20000, 2000000, 4);
    CHECK(std::fabs(pb2.c_SH - pb.c_SH) / pb.c_SH < 0.02);
}

TEST_CASE("v0 estimate matches the closed form") {
    const double B = 10000;
    McEstimate v0 = v0_prime_estimate(B, 500000, 2);
    double closed = alpha_volume().get_d() * omega_inf_grid() * B *
                    std::pow(std::log(B), 6);
    CHECK(std::fabs(v0.value / closed - 1) < 0.1);
}

TEST_CASE("v0 estimate scales like B log^6 B") {
    const double B = 5000;
    double a = v0_prime_estimate(B, 300000, 7).value;
    double b = v0_prime_estimate(2 * B, 300000, 7).value;
    double predicted =
        2 * std::pow(std::log(2 * B) / std::log(B), 6);
    CHECK(b / a == doctest::Approx(predicted).epsilon(0.15));
}

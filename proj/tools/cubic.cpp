#include <cstdio>
#include <cstdlib>
#include <string>

#include <omp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "a5a1/avgsum.hpp"
#include "a5a1/density.hpp"
#include "a5a1/quadcong.hpp"
#include "a5a1/torsor.hpp"
#include "a5a1/verify.hpp"

using json = nlohmann::ordered_json;
using namespace a5a1;

namespace {

// 12 significant digits, locale-independent
json num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return json::parse(buf);
}

void emit(const json& j) { std::printf("%s\n", j.dump().c_str()); }

void apply_threads(int threads) {
    if (threads <= 0) {
        const char* env = std::getenv("CUBIC_THREADS");
        if (env) threads = std::atoi(env);
    }
    if (threads > 0) omp_set_num_threads(threads);
}

int cmd_nq(i64 a, u64 q, const std::string& method) {
    json j{{"a", a}, {"q", q}};
    CongruenceInstance inst(a, q);
    if (method == "brute" || method == "both") j["brute"] = count_brute(inst);
    if (method == "formula" || method == "both") {
        if (q > 1 && std::gcd(pos_mod(a, q), q) != 1)
            j["formula"] = 0;  // non-unit residue
        else
            j["formula"] = count_formula(inst);
    }
    j["n"] = count_n(a, q);
    emit(j);
    return 0;
}

int cmd_count(i64 B, const std::string& method) {
    json j{{"B", B}};
    if (method == "direct" || method == "both")
        j["count_direct"] = count_direct(B);
    if (method == "torsor" || method == "both")
        j["count_torsor"] = count_torsor(B);
    if (method == "serial") j["count_torsor"] = count_torsor_serial(B);
    emit(j);
    return 0;
}

int cmd_points(i64 B, const std::string& format) {
    auto pts = list_points(B);
    if (format == "csv") {
        std::printf("x0,x1,x2,x3\n");
        for (const SurfacePoint& p : pts)
            std::printf("%lld,%lld,%lld,%lld\n", (long long)p.x0,
                        (long long)p.x1, (long long)p.x2, (long long)p.x3);
    } else {
        for (const SurfacePoint& p : pts)
            emit(json{{"x0", p.x0}, {"x1", p.x1}, {"x2", p.x2}, {"x3", p.x3}});
    }
    return 0;
}

int cmd_sigma(int r, std::vector<double> K, double Q, i64 b, u64 k,
              std::vector<u64> t, u64 u, const std::string& weight,
              double qmin, double qmax, const std::string& kind, double eps,
              bool primed) {
    SumSpec s;
    s.r = r;
    s.K = std::move(K);
    s.Q = Q;
    s.b = b;
    s.k = k;
    s.t = std::move(t);
    s.u = u;
    if (weight == "invq")
        s.weight = WeightFn::inv_q();
    else if (weight != "one")
        throw CLI::ValidationError("--weight must be one|invq");
    if (qmax <= 0) qmax = Q;
    s.range = RangeFn::constant(qmin, qmax);
    if (kind == "left-open")
        s.interval_kind = IntervalKind::LeftOpen;
    else if (kind == "right-open")
        s.interval_kind = IntervalKind::RightOpen;
    else if (kind == "open")
        s.interval_kind = IntervalKind::Open;
    else if (kind == "closed")
        s.interval_kind = IntervalKind::Closed;
    else
        throw CLI::ValidationError("--interval must be left-open|right-open|open|closed");
    SumReport rep = report(s, eps, primed);
    emit(json{{"sigma", rep.sigma.get_str()},
              {"main", rep.main.get_str()},
              {"err", rep.err.get_str()},
              {"sigma_real", num(rep.sigma.get_d())},
              {"bound", num(rep.bound)},
              {"ratio", num(rep.ratio)},
              {"terms", rep.terms}});
    return 0;
}

int cmd_constant(u64 prime_limit, u64 samples, u64 seed) {
    PeyreBreakdown pb = peyre_constant(prime_limit, samples, seed);
    emit(json{{"alpha_num", pb.alpha.get_num().get_str()},
              {"alpha_den", pb.alpha.get_den().get_str()},
              {"euler_product", num(pb.euler_prod)},
              {"prime_limit", pb.prime_limit},
              {"omega_inf", num(pb.omega_inf)},
              {"omega_inf_stderr", num(pb.omega_inf_stderr)},
              {"c_SH", num(pb.c_SH)}});
    return 0;
}

int cmd_fit(i64 Bmin, i64 Bmax, int steps, u64 prime_limit, u64 samples,
            u64 seed, bool main_terms) {
    PeyreBreakdown pb = peyre_constant(prime_limit, samples, seed);
    std::printf("B,N_UHB,prediction,ratio%s\n",
                main_terms ? ",main_term_sum" : "");
    for (int i = 0; i < steps; ++i) {
        double logB = std::log(static_cast<double>(Bmin)) +
                      (steps == 1 ? 0.0
                                  : i * (std::log(static_cast<double>(Bmax)) -
                                         std::log(static_cast<double>(Bmin))) /
                                        (steps - 1));
        i64 B = static_cast<i64>(std::llround(std::exp(logB)));
        if (B < 2) B = 2;
        u64 n = count_torsor(B);
        double pred = pb.c_SH * static_cast<double>(B) *
                      std::pow(std::log(static_cast<double>(B)), 6);
        std::printf("%lld,%llu,%.12g,%.12g", (long long)B,
                    (unsigned long long)n, pred,
                    static_cast<double>(n) / pred);
        if (main_terms) std::printf(",%.12g", main_term_sum(B));
        std::printf("\n");
    }
    return 0;
}

int cmd_verify(std::vector<std::string> names, bool list) {
    if (list) {
        for (const std::string& n : check_names()) std::printf("%s\n", n.c_str());
        return 0;
    }
    if (names.empty()) names = check_names();
    bool all_pass = true;
    for (const std::string& n : names) {
        CheckResult r = run_check(n);
        std::printf("%s: %s (%s)\n", r.name.c_str(), r.pass ? "PASS" : "FAIL",
                    r.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rational point counts and density constants for the cubic "
                 "surface x1^3 + x2 x3^2 + x0 x1 x2 = 0"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads,
                   "OpenMP thread count (or env CUBIC_THREADS)");

    i64 nq_a = 1;
    u64 nq_q = 1;
    std::string nq_method = "both";
    auto* nq = app.add_subcommand("nq", "Count unit square roots mod q");
    nq->add_option("--a", nq_a, "residue")->required();
    nq->add_option("--q", nq_q, "modulus")->required();
    nq->add_option("--method", nq_method, "brute|formula|both");

    int sg_r = 4;
    std::vector<double> sg_K;
    double sg_Q = 4, sg_qmin = 0.5, sg_qmax = 0, sg_eps = 0.1;
    i64 sg_b = 1;
    u64 sg_k = 1, sg_u = 1;
    std::vector<u64> sg_t;
    std::string sg_weight = "one", sg_kind = "left-open";
    bool sg_primed = false;
    auto* sg = app.add_subcommand("sigma", "Averaged congruence-count sums");
    sg->add_option("--r", sg_r, "number of a-variables");
    sg->add_option("--K", sg_K, "dyadic box bounds, r values")->required();
    sg->add_option("--Q", sg_Q, "global q cap")->required();
    sg->add_option("--b", sg_b, "fixed multiplier");
    sg->add_option("--k", sg_k, "modulus multiplier, coprime to b");
    sg->add_option("--t", sg_t, "primed: require (a_i, t_i) = 1");
    sg->add_option("--u", sg_u, "primed: require (q, u) = 1");
    sg->add_option("--weight", sg_weight, "one|invq");
    sg->add_option("--qmin", sg_qmin, "lower q endpoint");
    sg->add_option("--qmax", sg_qmax, "upper q endpoint (default Q)");
    sg->add_option("--interval", sg_kind,
                   "left-open|right-open|open|closed");
    sg->add_option("--eps", sg_eps, "epsilon in the error bound");
    sg->add_flag("--primed", sg_primed, "apply the primed coprimality set");

    i64 ct_B = 1;
    std::string ct_method = "torsor";
    auto* ct = app.add_subcommand("count", "Count points of height <= B");
    ct->add_option("--B", ct_B, "height bound")->required();
    ct->add_option("--method", ct_method, "torsor|direct|both|serial");

    i64 pt_B = 10;
    std::string pt_format = "json-lines";
    auto* pt = app.add_subcommand("points", "List points of height <= B");
    pt->add_option("--B", pt_B, "height bound")->required();
    pt->add_option("--format", pt_format, "json-lines|csv");

    u64 cn_P = 1000000, cn_samples = 10000000, cn_seed = 1;
    auto* cn = app.add_subcommand("constant", "Leading-constant breakdown");
    cn->add_option("--prime-limit", cn_P, "Euler product cutoff");
    cn->add_option("--samples", cn_samples, "Monte Carlo samples");
    cn->add_option("--seed", cn_seed, "Monte Carlo seed");

    i64 ft_Bmin = 1000, ft_Bmax = 100000;
    int ft_steps = 5;
    u64 ft_P = 1000000, ft_samples = 10000000, ft_seed = 1;
    bool ft_main = false;
    auto* ft = app.add_subcommand("fit", "Count vs. predicted growth, CSV");
    ft->add_option("--Bmin", ft_Bmin)->required();
    ft->add_option("--Bmax", ft_Bmax)->required();
    ft->add_option("--steps", ft_steps)->required();
    ft->add_option("--prime-limit", ft_P, "Euler product cutoff");
    ft->add_option("--samples", ft_samples, "Monte Carlo samples");
    ft->add_option("--seed", ft_seed, "Monte Carlo seed");
    ft->add_flag("--main-terms", ft_main, "add the main_term_sum column");

    std::vector<std::string> vf_names;
    bool vf_list = false;
    auto* vf = app.add_subcommand("verify", "Run acceptance checks by name");
    vf->add_option("names", vf_names, "check names (default: all)");
    vf->add_flag("--list", vf_list, "list check names and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    apply_threads(threads);
    try {
        if (*nq) return cmd_nq(nq_a, nq_q, nq_method);
        if (*sg)
            return cmd_sigma(sg_r, sg_K, sg_Q, sg_b, sg_k, sg_t, sg_u,
                             sg_weight, sg_qmin, sg_qmax, sg_kind, sg_eps,
                             sg_primed);
        if (*ct) return cmd_count(ct_B, ct_method);
        if (*pt) return cmd_points(pt_B, pt_format);
        if (*cn) return cmd_constant(cn_P, cn_samples, cn_seed);
        if (*ft)
            return cmd_fit(ft_Bmin, ft_Bmax, ft_steps, ft_P, ft_samples,
                           ft_seed, ft_main);
        if (*vf) return cmd_verify(vf_names, vf_list);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}

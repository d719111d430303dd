#include "a5a1/density.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <omp.h>

#include "a5a1/quadcong.hpp"
#include "a5a1/torsor.hpp"

namespace a5a1 {

namespace {

bool pairwise_ok(const std::array<i64, 8>& e) {
    auto cp = [&](int i, std::initializer_list<int> js) {
        for (int j : js)
            if (std::gcd(e[i - 1], e[j - 1]) != 1) return false;
        return true;
    };
    return cp(7, {1, 2, 3, 4}) && cp(6, {1, 2, 3, 4, 5}) && cp(5, {1, 2, 3}) &&
           cp(4, {1, 2}) && cp(1, {2});
}

bool eta8_ok(const std::array<i64, 8>& e) {
    u64 a8 = static_cast<u64>(std::abs(e[7]));
    for (int i : {0, 1, 2, 3, 4, 6})
        if (std::gcd(a8, static_cast<u64>(e[i])) != 1) return false;
    return true;
}

// Squarefree k | e3 with (k, e2 e4) = 1, passed to f(k, mu_k).
template <typename F>
void for_each_k(i64 e1, i64 e2, i64 e3, i64 e4, F&& f) {
    (void)e1;
    Factored f3 = factor(static_cast<u64>(e3));
    std::vector<u64> ps;
    for (auto [p, ex] : f3.factors) {
        u64 pp = static_cast<u64>(p);
        if (e2 % static_cast<i64>(pp) != 0 && e4 % static_cast<i64>(pp) != 0)
            ps.push_back(pp);
    }
    const size_t m = ps.size();
    for (size_t mask = 0; mask < (size_t(1) << m); ++mask) {
        u64 k = 1;
        int mu = 1;
        for (size_t j = 0; j < m; ++j)
            if (mask & (size_t(1) << j)) {
                k *= ps[j];
                mu = -mu;
            }
        f(k, mu);
    }
}

void require_positive(const std::array<i64, 8>& e) {
    for (int i = 0; i < 7; ++i)
        if (e[i] <= 0) throw std::domain_error("eta1..eta7 must be positive");
    if (e[7] == 0) throw std::domain_error("eta8 must be nonzero");
}

}  // namespace

EtaPrime::EtaPrime(const std::array<i64, 8>& eta) : e(eta) {
    require_positive(e);
    coprime_ok = pairwise_ok(e) && eta8_ok(e);
}

Rat theta1_prime(const EtaPrime& e) {
    if (!e.coprime_ok) return 0;
    const std::array<u64, 5> parts{static_cast<u64>(e[3]),
                                   static_cast<u64>(e[4]),
                                   static_cast<u64>(e[5]),
                                   static_cast<u64>(e[6]),
                                   static_cast<u64>(e[7])};
    const Rat ph34567 = phi_star_of_product(parts);
    Rat acc = 0;
    for_each_k(e[1], e[2], e[3], e[4], [&](u64 k, int mu) {
        const u64 kq = k * static_cast<u64>(e[1]);
        const int v = two_adic(static_cast<i64>(kq)).first;
        int w = 1;
        if (v > 0) {
            // kη1 even forces η2η4η7η8 odd by the coprimality conditions
            const i128 prod = i128(e[2]) * e[4] * e[7] * e[8];
            w = bracket2(static_cast<i64>(pos_mod128(-prod, 8)), v);
        }
        if (w == 0) return;
        const u64 g = std::gcd(static_cast<u64>(e[3]), kq);
        acc += Rat(mu) * ph34567 * w /
               (Rat(static_cast<unsigned long>(k)) * phi_star(g));
    });
    return acc;
}

Rat theta1(const EtaPrime& e) {
    if (!e.coprime_ok) return 0;
    const std::array<u64, 5> parts{static_cast<u64>(e[3]),
                                   static_cast<u64>(e[4]),
                                   static_cast<u64>(e[5]),
                                   static_cast<u64>(e[6]),
                                   static_cast<u64>(e[7])};
    const Rat ph34567 = phi_star_of_product(parts);
    Rat acc = 0;
    for_each_k(e[1], e[2], e[3], e[4], [&](u64 k, int mu) {
        const u64 kq = k * static_cast<u64>(e[1]);
        const i128 prod = i128(e[2]) * e[4] * e[7] * e[8];
        const u64 n = count_n(static_cast<i64>(pos_mod128(-prod, kq)), kq);
        if (n == 0) return;
        const u64 g = std::gcd(static_cast<u64>(e[3]), kq);
        acc += Rat(mu) * ph34567 * Rat(static_cast<unsigned long>(n)) /
               (Rat(static_cast<unsigned long>(k)) * phi_star(g));
    });
    return acc;
}

Rat theta2(const std::array<i64, 7>& et) {
    std::array<i64, 8> e8;
    std::copy(et.begin(), et.end(), e8.begin());
    e8[7] = 1;
    require_positive(e8);
    if (!pairwise_ok(e8)) return 0;
    const std::array<u64, 5> parts{static_cast<u64>(et[2]),
                                   static_cast<u64>(et[3]),
                                   static_cast<u64>(et[4]),
                                   static_cast<u64>(et[5]),
                                   static_cast<u64>(et[6])};
    const Rat ph34567 = phi_star_of_product(parts);
    const std::array<u64, 6> uparts{static_cast<u64>(et[0]),
                                    static_cast<u64>(et[1]),
                                    static_cast<u64>(et[2]),
                                    static_cast<u64>(et[3]),
                                    static_cast<u64>(et[4]),
                                    static_cast<u64>(et[6])};
    const Rat ph123457 = phi_star_of_product(uparts);
    Rat acc = 0;
    for_each_k(et[0], et[1], et[2], et[3], [&](u64 k, int mu) {
        const u64 kq = k * static_cast<u64>(et[0]);
        const u64 g = std::gcd(static_cast<u64>(et[2]), kq);
        acc += Rat(mu) * ph34567 * ph123457 /
               (Rat(static_cast<unsigned long>(k)) * phi_star(g));
    });
    return acc;
}

Rat theta2_local(u64 p, unsigned mask) {
    if (p < 2) throw std::domain_error("theta2_local: p must be prime");
    const Rat q1 = Rat(static_cast<long>(p) - 1, static_cast<long>(p));
    const Rat q2 = Rat(static_cast<long>(p) - 2, static_cast<long>(p));
    auto bits = [](std::initializer_list<int> is) {
        unsigned m = 0;
        for (int i : is) m |= 1u << (i - 1);
        return m;
    };
    if (mask == 0) return 1;
    if (mask == bits({1}) || mask == bits({2}) || mask == bits({6})) return q1;
    for (auto s : {bits({4}), bits({5}), bits({7}), bits({1, 3}), bits({2, 3}),
                   bits({3, 4}), bits({4, 5}), bits({5, 7}), bits({6, 7})})
        if (mask == s) return q1 * q1;
    if (mask == bits({3})) return q1 * q2;
    return 0;
}

double v1_real(const std::array<double, 8>& e, double B) {
    const double e1 = e[0], e2 = e[1], e3 = e[2], e4 = e[3], e5 = e[4],
                 e6 = e[5], e7 = e[6], e8 = e[7];
    if (B <= 0 || e8 == 0) return 0;
    const double a8 = std::fabs(e8);
    const double m2 = e1 * e2 * e3 * e3 * e4 * e4 * e5 * e5 * e6 * e6 * e7 *
                      e7 * a8;
    const double m3 = e1 * e1 * e1 * e2 * e2 * e3 * e3 * e3 * e3 * e4 * e4 *
                      e4 * e5 * e5 * e7;
    if (m2 > B || m3 > B) return 0;
    const double c = e4 * e5 * e5 * e6 * e6 * e6 * e6 * e7 * e7 * e7;
    const double W = B * e1 / a8;
    const double d = c * e8;
    const double hi = (W - d) / e2;
    if (hi <= 0) return 0;
    const double lo = std::max(0.0, (-W - d) / e2);
    const double h9 = B / (e2 * e3 * e4 * e5 * e6 * e7 * a8);
    const double s_hi = std::min(std::sqrt(hi), h9);
    const double s_lo = std::sqrt(lo);
    const double len = 2 * std::max(0.0, s_hi - s_lo);
    return len / e1;
}

double v1(const EtaPrime& e, double B) {
    std::array<double, 8> d;
    for (int i = 0; i < 8; ++i) d[i] = static_cast<double>(e.e[i]);
    return v1_real(d, B);
}

namespace {

// theta1_prime(eta8) for fixed eta1..eta7, grouped by v(k eta1):
// theta1' = sum_v coeff[v] * {-eta2 eta4 eta7 eta8 / 2^v}
struct Theta1Coeffs {
    std::array<i64, 7> key{};
    std::vector<std::pair<int, double>> cv;

    void rebuild(const std::array<i64, 8>& e) {
        std::copy(e.begin(), e.begin() + 7, key.begin());
        cv.clear();
        const std::array<u64, 5> parts{static_cast<u64>(e[2]),
                                       static_cast<u64>(e[3]),
                                       static_cast<u64>(e[4]),
                                       static_cast<u64>(e[5]),
                                       static_cast<u64>(e[6])};
        const Rat ph = phi_star_of_product(parts);
        std::vector<Rat> acc;
        for_each_k(e[0], e[1], e[2], e[3], [&](u64 k, int mu) {
            const u64 kq = k * static_cast<u64>(e[0]);
            const int v = two_adic(static_cast<i64>(kq)).first;
            const u64 g = std::gcd(static_cast<u64>(e[2]), kq);
            Rat term = Rat(mu) * ph /
                       (Rat(static_cast<unsigned long>(k)) * phi_star(g));
            if (static_cast<size_t>(v) >= acc.size()) acc.resize(v + 1, Rat(0));
            acc[v] += term;
        });
        for (size_t v = 0; v < acc.size(); ++v)
            if (acc[v] != 0) cv.emplace_back(static_cast<int>(v),
                                             acc[v].get_d());
    }

    double eval(const std::array<i64, 8>& e) const {
        double s = 0;
        i64 n8 = 0;
        for (auto [v, c] : cv) {
            if (v == 0) {
                s += c;
                continue;
            }
            if (n8 == 0) {
                const i128 prod = i128(e[1]) * e[3] * e[6] * e[7];
                n8 = static_cast<i64>(pos_mod128(-prod, 8));
            }
            s += c * bracket2(n8, v);
        }
        return s;
    }
};

}  // namespace

double main_term_sum(i64 B) {
    if (B < 0) throw std::domain_error("main_term_sum: B must be nonnegative");
    if (B > 100000) throw std::domain_error("main_term_sum: capped at 10^5");
    if (B == 0) return 0;
    const std::vector<EtaPrefix> prefixes = eta_prefixes(B);
    std::vector<double> partial(prefixes.size(), 0.0);
    const double Bd = static_cast<double>(B);
#pragma omp parallel for schedule(dynamic, 16)
    for (size_t i = 0; i < prefixes.size(); ++i) {
        Theta1Coeffs co;
        bool have = false;
        double sum = 0;
        scan_eta_prime(B, prefixes[i], [&](const std::array<i64, 8>& e) {
            if (!have ||
                !std::equal(e.begin(), e.begin() + 7, co.key.begin())) {
                co.rebuild(e);
                have = true;
            }
            if (co.cv.empty()) return;
            std::array<double, 8> d;
            for (int j = 0; j < 8; ++j) d[j] = static_cast<double>(e[j]);
            const double len = v1_real(d, Bd);
            if (len > 0) sum += co.eval(e) * len;
        });
        partial[i] = sum;
    }
    double total = 0;
    for (double p : partial) total += p;  // fixed order
    return total;
}

// --- exact polytope volume ---

namespace {

using Vec = std::vector<Rat>;

// Solves A x = b in place; false if singular.
bool solve_square(std::vector<Vec> A, Vec b, Vec& out) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (A[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return false;
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        for (int r = 0; r < n; ++r) {
            if (r == col || A[r][col] == 0) continue;
            Rat m = A[r][col] / A[col][col];
            for (int c = col; c < n; ++c) A[r][c] -= m * A[col][c];
            b[r] -= m * b[col];
        }
    }
    out.resize(n);
    for (int i = 0; i < n; ++i) out[i] = b[i] / A[i][i];
    return true;
}

Rat dot(const Vec& a, const Vec& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

int rank_of(std::vector<Vec> M) {
    int rank = 0;
    const int rows = static_cast<int>(M.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(M[0].size());
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (M[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(M[piv], M[rank]);
        for (int r = rank + 1; r < rows; ++r) {
            if (M[r][col] == 0) continue;
            Rat m = M[r][col] / M[rank][col];
            for (int c = col; c < cols; ++c) M[r][c] -= m * M[rank][c];
        }
        ++rank;
    }
    return rank;
}

int affine_rank(const std::vector<int>& idx, const std::vector<Vec>& verts) {
    if (idx.size() <= 1) return 0;
    std::vector<Vec> diffs;
    for (size_t i = 1; i < idx.size(); ++i) {
        Vec d = verts[idx[i]];
        for (size_t c = 0; c < d.size(); ++c) d[c] -= verts[idx[0]][c];
        diffs.push_back(std::move(d));
    }
    return rank_of(std::move(diffs));
}

Rat abs_det(std::vector<Vec> M) {
    const int n = static_cast<int>(M.size());
    Rat det = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (M[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != col) std::swap(M[piv], M[col]);
        det *= M[col][col];
        for (int r = col + 1; r < n; ++r) {
            if (M[r][col] == 0) continue;
            Rat m = M[r][col] / M[col][col];
            for (int c = col; c < n; ++c) M[r][c] -= m * M[col][c];
        }
    }
    return abs(det);
}

// Simplicial decomposition of a k-face by coning from its first vertex onto
// its proper subfaces.
void tri_face(const std::vector<int>& face, int k,
              const std::vector<Vec>& verts,
              const std::vector<std::vector<bool>>& tight,
              std::vector<std::vector<int>>& out) {
    if (static_cast<int>(face.size()) == k + 1) {
        out.push_back(face);
        return;
    }
    const int v0 = face[0];
    std::set<std::vector<int>> seen;
    for (size_t c = 0; c < tight.size(); ++c) {
        if (tight[c][v0]) continue;
        std::vector<int> sub;
        for (int v : face)
            if (tight[c][v]) sub.push_back(v);
        if (static_cast<int>(sub.size()) < k) continue;
        if (affine_rank(sub, verts) != k - 1) continue;
        if (!seen.insert(sub).second) continue;
        std::vector<std::vector<int>> subsimps;
        tri_face(sub, k - 1, verts, tight, subsimps);
        for (auto& s : subsimps) {
            s.push_back(v0);
            out.push_back(std::move(s));
        }
    }
}

}  // namespace

Triangulation triangulate(int dim, const std::vector<Constraint>& cons) {
    const int n = static_cast<int>(cons.size());
    if (n < dim + 1) throw std::invalid_argument("triangulate: too few constraints");
    Triangulation tri;
    tri.dim = dim;
    // candidate vertices: every dim-subset of tight constraints
    std::vector<int> pick(dim);
    std::set<std::vector<std::pair<long, unsigned long>>> seen;
    auto try_subset = [&](const std::vector<int>& idx) {
        std::vector<Vec> A;
        Vec b;
        for (int i : idx) {
            A.push_back(cons[i].a);
            b.push_back(cons[i].b);
        }
        Vec x;
        if (!solve_square(std::move(A), std::move(b), x)) return;
        for (const Constraint& c : cons)
            if (dot(c.a, x) > c.b) return;
        std::vector<std::pair<long, unsigned long>> key;
        for (const Rat& v : x)
            key.emplace_back(v.get_num().get_si(), v.get_den().get_ui());
        if (seen.insert(key).second) tri.vertices.push_back(std::move(x));
    };
    std::vector<int> idx(dim);
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == dim) {
            try_subset(idx);
            return;
        }
        for (int i = start; i <= n - (dim - depth); ++i) {
            idx[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
    const int nv = static_cast<int>(tri.vertices.size());
    if (nv < dim + 1) throw std::runtime_error("triangulate: degenerate polytope");
    std::vector<std::vector<bool>> tight(n, std::vector<bool>(nv, false));
    for (int c = 0; c < n; ++c)
        for (int v = 0; v < nv; ++v)
            tight[c][v] = dot(cons[c].a, tri.vertices[v]) == cons[c].b;
    std::vector<int> all(nv);
    for (int v = 0; v < nv; ++v) all[v] = v;
    if (affine_rank(all, tri.vertices) != dim)
        throw std::runtime_error("triangulate: polytope not full-dimensional");
    tri_face(all, dim, tri.vertices, tight, tri.simplices);
    Rat fact = 1;
    for (int i = 2; i <= dim; ++i) fact *= i;
    for (const auto& s : tri.simplices) {
        std::vector<Vec> M;
        for (int i = 0; i < dim; ++i) {
            Vec d = tri.vertices[s[i + 1]];
            for (int c = 0; c < dim; ++c) d[c] -= tri.vertices[s[0]][c];
            M.push_back(std::move(d));
        }
        Rat vol = abs_det(std::move(M)) / fact;
        tri.total += vol;
        tri.volumes.push_back(std::move(vol));
    }
    return tri;
}

Rat polytope_volume(int dim, const std::vector<Constraint>& cons) {
    return triangulate(dim, cons).total;
}

std::vector<Constraint> alpha_constraints() {
    std::vector<Constraint> cons;
    for (int i = 0; i < 6; ++i) {
        Constraint c;
        c.a.assign(6, Rat(0));
        c.a[i] = -1;
        c.b = 0;
        cons.push_back(std::move(c));
    }
    Constraint c1;
    c1.a = {Rat(3), Rat(2), Rat(4), Rat(3), Rat(2), Rat(0)};
    c1.b = 1;
    cons.push_back(std::move(c1));
    Constraint c2;  // 5t1+3t2+6t3+4t4+2t5-2t6 >= 1, flipped
    c2.a = {Rat(-5), Rat(-3), Rat(-6), Rat(-4), Rat(-2), Rat(2)};
    c2.b = -1;
    cons.push_back(std::move(c2));
    return cons;
}

Rat alpha_volume() { return polytope_volume(6, alpha_constraints()); }

// --- reproducible counter-based sampling ---

namespace {

inline u64 mix64(u64 z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// uniform in [0, 1), fully determined by (seed, stream, counter)
inline double rng01(u64 seed, u64 stream, u64 ctr) {
    u64 z = mix64(seed ^ mix64(stream ^ mix64(ctr)));
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

}  // namespace

McEstimate alpha_mc(u64 samples, u64 seed) {
    if (samples == 0) throw std::invalid_argument("alpha_mc: samples >= 1");
    static const double box[6] = {1.0 / 3, 1.0 / 2, 1.0 / 4,
                                  1.0 / 3, 1.0 / 2, 1.0 / 3};
    double boxvol = 1;
    for (double b : box) boxvol *= b;
    u64 hits = 0;
#pragma omp parallel for schedule(static) reduction(+ : hits)
    for (u64 j = 0; j < samples; ++j) {
        double t[6];
        for (int i = 0; i < 6; ++i) t[i] = rng01(seed, i, j) * box[i];
        if (3 * t[0] + 2 * t[1] + 4 * t[2] + 3 * t[3] + 2 * t[4] > 1) continue;
        if (5 * t[0] + 3 * t[1] + 6 * t[2] + 4 * t[3] + 2 * t[4] - 2 * t[5] <
            1)
            continue;
        ++hits;
    }
    const double p = static_cast<double>(hits) / samples;
    McEstimate est;
    est.value = p * boxvol;
    est.stderr_ = boxvol * std::sqrt(p * (1 - p) / samples);
    return est;
}

Rat euler_factor(u64 p) {
    if (p < 2 || !is_prime(p)) throw std::domain_error("euler_factor: p prime");
    const long pl = static_cast<long>(p);
    Rat q1(pl - 1, pl);
    Rat head = Rat(pl * pl + 7 * pl + 1, 1) / Rat(pl * pl, 1);
    Rat f = head;
    for (int i = 0; i < 7; ++i) f *= q1;
    return f;
}

double euler_product(u64 P) {
    if (P < 2) throw std::domain_error("euler_product: P >= 2");
    double prod = 1;
    for (u32 p : primes_up_to(static_cast<u32>(P))) {
        const double pd = p;
        prod *= std::pow(1 - 1 / pd, 7) * (1 + 7 / pd + 1 / (pd * pd));
    }
    return prod;
}

// --- archimedean density ---

namespace {

// length of {x3 in [-1, 1] : |x1^3 + x2 x3^2| <= |x1| x2}
double len3(double x1, double x2) {
    const double a1 = std::fabs(x1);
    const double cube = x1 * x1 * x1;
    double lo = (-a1 * x2 - cube) / x2;  // bounds on x3^2
    double hi = (a1 * x2 - cube) / x2;
    lo = std::max(lo, 0.0);
    hi = std::min(hi, 1.0);
    return hi > lo ? 2 * (std::sqrt(hi) - std::sqrt(lo)) : 0.0;
}

constexpr int kShells = 45;  // |x1| down to 2^-45; tail below is ~1e-5

struct StratumStat {
    double mean = 0, var = 0;
};

StratumStat omega_stratum(int sign, int k, u64 n, u64 seed) {
    const double lo = std::ldexp(1.0, -k - 1);
    const double w = lo;  // shell (2^-k-1, 2^-k]
    const u64 stream = 3 * (2 * static_cast<u64>(k) + (sign > 0 ? 0 : 1));
    double sum = 0, sumsq = 0;
    for (u64 j = 0; j < n; ++j) {
        const double a1 = lo + rng01(seed, stream, j) * w;
        const double x1 = sign * a1;
        // admissible x2 is >= |x1|^3 / 2 for either sign; log-uniform there
        const double L = std::log(2.0 / (a1 * a1 * a1));
        const double x2 = std::exp(-rng01(seed, stream + 1, j) * L);
        const double x3 = rng01(seed, stream + 2, j);
        const double x0 = (x1 * x1 * x1 + x2 * x3 * x3) / (x1 * x2);
        double val = 0;
        if (std::fabs(x0) <= 1) val = 2 * w * L / a1;  // x3 symmetry factor 2
        sum += val;
        sumsq += val * val;
    }
    StratumStat st;
    st.mean = sum / n;
    st.var = std::max(0.0, sumsq / n - st.mean * st.mean) / n;
    return st;
}

}  // namespace

McEstimate omega_inf(u64 samples, u64 seed) {
    if (samples < 10000)
        throw std::invalid_argument("omega_inf: samples >= 10^4");
    const u64 per = std::max<u64>(1, samples / (2 * kShells));
    double total = 0, var = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : total, var)
    for (int s = 0; s < 2 * kShells; ++s) {
        StratumStat st = omega_stratum(s % 2 ? -1 : 1, s / 2, per, seed);
        total += st.mean;
        var += st.var;
    }
    return {total, std::sqrt(var)};
}

namespace {

// reduced integrand after x1 = sign·y², x2 = e^{-b}: bounded by 2√2
double grid_integrand(double y, double b) {
    const double x1 = (y < 0 ? -1 : 1) * y * y;
    const double x2 = std::exp(-b);
    return 2 * len3(x1, x2) / std::fabs(y);
}

double adapt_cell(double x0, double x1, double y0, double y1, double coarse,
                  double tol, int depth) {
    const double xm = 0.5 * (x0 + x1), ym = 0.5 * (y0 + y1);
    const double qa = 0.25 * (x1 - x0) * (y1 - y0);
    const double f00 = grid_integrand(0.5 * (x0 + xm), 0.5 * (y0 + ym));
    const double f10 = grid_integrand(0.5 * (xm + x1), 0.5 * (y0 + ym));
    const double f01 = grid_integrand(0.5 * (x0 + xm), 0.5 * (ym + y1));
    const double f11 = grid_integrand(0.5 * (xm + x1), 0.5 * (ym + y1));
    const double fine = qa * (f00 + f10 + f01 + f11);
    // always refine a few levels: agreement at coarse scale can be spurious
    // where the support only grazes the cell
    if (depth >= 30 || (depth >= 6 && std::fabs(fine - coarse) <= tol))
        return fine + (fine - coarse) / 3;
    const double t4 = depth < 6 ? tol / 2 : tol / 4;
    return adapt_cell(x0, xm, y0, ym, qa * f00, t4, depth + 1) +
           adapt_cell(xm, x1, y0, ym, qa * f10, t4, depth + 1) +
           adapt_cell(x0, xm, ym, y1, qa * f01, t4, depth + 1) +
           adapt_cell(xm, x1, ym, y1, qa * f11, t4, depth + 1);
}

double omega_grid_pass(double tol) {
    // support: b <= ln(2/|x1|^3) <= 96 once |x1| >= 2^-45
    const double bmax = 96.0;
    double total = 0;
    const int nb = 96;
#pragma omp parallel for schedule(dynamic) reduction(+ : total)
    for (int i = 0; i < 2 * nb; ++i) {
        const double x0 = i < nb ? -1.0 : 0.0;
        const int bi = i % nb;
        const double b0 = bi * (bmax / nb), b1 = (bi + 1) * (bmax / nb);
        const double xm = x0 + 0.5, bm = 0.5 * (b0 + b1);
        const double coarse = grid_integrand(xm, bm) * (b1 - b0);
        total += adapt_cell(x0, x0 + 1, b0, b1, coarse, tol / (2 * nb), 0);
    }
    return total;
}

}  // namespace

double omega_inf_grid(double rel_tol) {
    if (rel_tol <= 0) throw std::invalid_argument("omega_inf_grid: rel_tol > 0");
    const double rough = omega_grid_pass(1e30);  // forced-depth levels only
    return omega_grid_pass(rel_tol * std::max(1.0, std::fabs(rough)));
}

PeyreBreakdown peyre_constant(u64 prime_limit, u64 samples, u64 seed) {
    PeyreBreakdown pb;
    pb.alpha = alpha_volume();
    pb.prime_limit = prime_limit;
    pb.euler_prod = euler_product(prime_limit);
    McEstimate oi = omega_inf(samples, seed);
    pb.omega_inf = oi.value;
    pb.omega_inf_stderr = oi.stderr_;
    pb.c_SH = pb.alpha.get_d() * pb.euler_prod * pb.omega_inf;
    return pb;
}

McEstimate v0_prime_estimate(double B, u64 samples, u64 seed) {
    if (samples == 0)
        throw std::invalid_argument("v0_prime_estimate: samples >= 1");
    if (B <= 1) return {0, 0};
    static const Triangulation tri = triangulate(6, alpha_constraints());
    std::vector<double> cum;
    double tv = 0;
    for (const Rat& v : tri.volumes) {
        tv += v.get_d();
        cum.push_back(tv);
    }
    std::vector<std::array<double, 6>> verts;
    for (const auto& v : tri.vertices) {
        std::array<double, 6> d;
        for (int c = 0; c < 6; ++c) d[c] = v[c].get_d();
        verts.push_back(d);
    }
    const double logB = std::log(B);
    double sum = 0, sumsq = 0;
#pragma omp parallel for schedule(static) reduction(+ : sum, sumsq)
    for (u64 j = 0; j < samples; ++j) {
        // uniform point of the polytope: simplex by volume, then Dirichlet
        const double u = rng01(seed, 0, j) * tv;
        const size_t si = std::lower_bound(cum.begin(), cum.end(), u) -
                          cum.begin();
        double w[7], wsum = 0;
        for (int i = 0; i < 7; ++i) {
            w[i] = -std::log(1 - rng01(seed, 1 + i, j));
            wsum += w[i];
        }
        double t[6] = {0, 0, 0, 0, 0, 0};
        for (int i = 0; i < 7; ++i) {
            const auto& v = verts[tri.simplices[si][i]];
            for (int c = 0; c < 6; ++c) t[c] += (w[i] / wsum) * v[c];
        }
        double eta[8];
        for (int c = 0; c < 6; ++c) eta[c] = std::exp(t[c] * logB);
        const double h7 = B / (eta[0] * eta[0] * eta[0] * eta[1] * eta[1] *
                               eta[2] * eta[2] * eta[2] * eta[2] * eta[3] *
                               eta[3] * eta[3] * eta[4] * eta[4]);
        // log-uniform in eta7 and |eta8|: the integrand has inverse-sqrt
        // spikes at 0 that make uniform sampling heavy-tailed
        constexpr double kLogRange = 27.6;  // cutoff at ~1e-12 of the range
        eta[6] = h7 * std::exp(-rng01(seed, 8, j) * kLogRange);
        const double s2 = eta[2] * eta[3] * eta[4] * eta[5] * eta[6];
        const double h8 = B / (eta[0] * eta[1] * s2 * s2);
        const double sgn = rng01(seed, 9, j) < 0.5 ? -1.0 : 1.0;
        eta[7] = sgn * h8 * std::exp(-rng01(seed, 10, j) * kLogRange);
        std::array<double, 8> ed;
        std::copy(eta, eta + 8, ed.begin());
        double prod6 = 1;
        for (int c = 0; c < 6; ++c) prod6 *= eta[c];
        const double val = prod6 * (eta[6] * kLogRange) *
                           (2 * std::fabs(eta[7]) * kLogRange) *
                           v1_real(ed, B);
        sum += val;
        sumsq += val * val;
    }
    const double mean = sum / samples;
    const double var =
        std::max(0.0, sumsq / samples - mean * mean) / samples;
    const double scale = tv * std::pow(logB, 6);
    return {scale * mean, scale * std::sqrt(var)};
}

}  // namespace a5a1

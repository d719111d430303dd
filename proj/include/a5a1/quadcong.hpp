#pragma once

#include "a5a1/arith.hpp"

namespace a5a1 {

// ρ² ≡ a (mod q), (ρ, q) = 1
struct CongruenceInstance {
    i64 a = 0;
    u64 q = 1;
    Factored q_factored;

    CongruenceInstance(i64 a_, u64 q_) : a(a_), q(q_), q_factored(factor(q_)) {}
    CongruenceInstance(i64 a_, Factored qf)
        : a(a_), q(static_cast<u64>(qf.n)), q_factored(std::move(qf)) {}
};

// Exhaustive count; total in a (works for (a,q) > 1 as well).
u64 count_brute(const CongruenceInstance& inst);

// {a/2^v} · ∏_{p|h odd} (1 + (a/p)) for q = 2^v h. Requires (a,q) = 1.
u64 count_formula(const CongruenceInstance& inst);

// All ρ in [1,q] with (ρ,q)=1, ρ² ≡ a (mod q), ascending.
// For q = 1 returns {0}, the single residue class.
// Requires (a,q) = 1.
std::vector<u64> sqrt_mod(i64 a, const Factored& q_factored);

// N(a mod q, q) for every residue a, by one pass over the units mod q.
// Serves as a bulk oracle and as the fast path for tiny moduli.
std::vector<u32> count_table(u64 q);

// N(a, q) with automatic routing: (a,q) > 1 gives 0, small q goes through a
// cached table, larger q through the multiplicative formula.
u64 count_n(i64 a, u64 q);

}  // namespace a5a1

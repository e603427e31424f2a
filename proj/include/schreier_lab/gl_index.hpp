#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "schreier_lab/coeff_vector.hpp"
#include "schreier_lab/errors.hpp"
#include "schreier_lab/index_set.hpp"
#include "schreier_lab/norms.hpp"
#include "schreier_lab/schreier.hpp"

namespace schreier_lab {

struct truncated_gl_index {
    std::size_t value = 0;
    int_set witness;  // positions J
    std::int64_t K = 0;
};

namespace detail {
// Greedy covering number of a sorted vector of positive integers.
inline std::size_t tau1_sorted(const std::vector<std::int64_t>& a) {
    std::size_t count = 0, pos = 0;
    while (pos < a.size()) {
        const std::int64_t left = static_cast<std::int64_t>(a.size() - pos);
        pos += static_cast<std::size_t>(std::min(a[pos], left));
        ++count;
    }
    return count;
}
}  // namespace detail

// Maximum of tau1(M(J)) over J within {1..K} with N(J) admissible. Only J with N(J) maximal in
// {1..K} are visited (tau1 is monotone), grouped by their first position j1, which fixes
// |J| = min(n_{j1}, K - j1 + 1). A first position is skipped when tau1(M({j1..K})) cannot beat
// the incumbent. Ties keep the lexicographically smallest candidate.
inline truncated_gl_index gl_index_truncated(const index_set& m, const index_set& n, std::int64_t K) {
    if (K < 1) throw invalid_input("truncation K must be positive");
    if (m.length() < K || n.length() < K)
        throw truncation_error("index sets must be materialized through K = " + std::to_string(K));
    std::vector<std::int64_t> mv(static_cast<std::size_t>(K)), nv(static_cast<std::size_t>(K));
    for (std::int64_t j = 1; j <= K; ++j) {
        mv[static_cast<std::size_t>(j - 1)] = m.nth(j);
        nv[static_cast<std::size_t>(j - 1)] = n.nth(j);
    }
    truncated_gl_index best;
    best.K = K;
    std::vector<std::int64_t> best_j;
    for (std::int64_t j1 = 1; j1 <= K; ++j1) {
        std::vector<std::int64_t> tail(mv.begin() + (j1 - 1), mv.end());
        const std::size_t bound = detail::tau1_sorted(tail);
        if (!best_j.empty() && bound <= best.value) continue;
        const std::int64_t size = std::min(nv[static_cast<std::size_t>(j1 - 1)], K - j1 + 1);
        const std::int64_t pool = K - j1;
        const std::int64_t pick = size - 1;
        // Combinations of pick positions among j1+1..K in lexicographic order.
        std::vector<std::int64_t> comb(static_cast<std::size_t>(pick));
        for (std::int64_t t = 0; t < pick; ++t) comb[static_cast<std::size_t>(t)] = t;
        std::vector<std::int64_t> sel;
        while (true) {
            sel.assign(1, mv[static_cast<std::size_t>(j1 - 1)]);
            for (auto c : comb) sel.push_back(mv[static_cast<std::size_t>(j1 + c)]);
            const std::size_t v = detail::tau1_sorted(sel);
            if (best_j.empty() || v > best.value) {
                best.value = v;
                best_j.assign(1, j1);
                for (auto c : comb) best_j.push_back(j1 + 1 + c);
                if (v == bound) break;
            }
            std::int64_t t = pick - 1;
            while (t >= 0 && comb[static_cast<std::size_t>(t)] == pool - pick + t) --t;
            if (t < 0) break;
            ++comb[static_cast<std::size_t>(t)];
            for (std::int64_t u = t + 1; u < pick; ++u) comb[static_cast<std::size_t>(u)] = comb[static_cast<std::size_t>(u - 1)] + 1;
        }
    }
    best.witness = int_set::from_elements(best_j);
    return best;
}

// True iff a_i >= b_i for i = 1..K.
inline bool is_spread_of(const index_set& a, const index_set& b, std::int64_t K) {
    if (a.length() < K || b.length() < K)
        throw truncation_error("index sets must be materialized through K = " + std::to_string(K));
    for (std::int64_t j = 1; j <= K; ++j)
        if (a.nth(j) < b.nth(j)) return false;
    return true;
}

using theta_map = std::map<std::int64_t, std::int64_t>;

struct fiber_stats {
    std::size_t max_fiber = 0;
    std::size_t max_fiber_tau = 0;
};

// Largest fiber of theta, and the largest tau1 of a preimage of a window set.
inline fiber_stats theta_fiber_stats(const theta_map& theta, const std::vector<int_set>& window) {
    fiber_stats out;
    std::map<std::int64_t, std::size_t> sizes;
    for (const auto& [x, y] : theta) {
        if (x < 1 || y < 1) throw invalid_input("theta maps positive integers to positive integers");
        out.max_fiber = std::max(out.max_fiber, ++sizes[y]);
    }
    for (const auto& f : window) {
        std::vector<std::int64_t> pre;
        for (const auto& [x, y] : theta)
            if (f.contains(y)) pre.push_back(x);
        out.max_fiber_tau = std::max(out.max_fiber_tau, tau1(int_set::from_elements(pre)).count);
    }
    return out;
}

struct domination_bound {
    std::size_t gamma = 0;  // truncated index
    double C = 0.0;         // gamma for B_p, gamma^{1/p} for S_p
};

inline domination_bound domination_constant(const index_set& m, const index_set& n, std::int64_t K, const exponent& p,
                                            space_kind space) {
    if (space == space_kind::bp) require_bp_exponent(p);
    domination_bound d;
    d.gamma = gl_index_truncated(m, n, K).value;
    d.C = space == space_kind::bp ? double(d.gamma) : std::pow(double(d.gamma), 1.0 / p.value());
    return d;
}

template <class S>
struct domination_check {
    S lhs_pow{}, rhs_pow{};  // p-th powers of the two norms
    double lhs = 0, rhs = 0, C = 0;
    std::size_t gamma = 0;
    bool holds = false;
};

// Compares ||sum a_j e_{n_j}|| with C ||sum a_j e_{m_j}||. Exact mode compares p-th powers:
// lhs^p <= gamma rhs^p for S_p and lhs^p <= gamma^p rhs^p for B_p.
template <class S>
domination_check<S> check_domination(const index_set& m, const index_set& n, std::int64_t K, const exponent& p,
                                     space_kind space, const std::vector<S>& coeffs) {
    if (static_cast<std::int64_t>(coeffs.size()) > K) throw invalid_input("more coefficients than the truncation K");
    const domination_bound d = domination_constant(m, n, K, p, space);
    std::vector<std::pair<std::int64_t, S>> ye, xe;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        ye.emplace_back(n.nth(static_cast<std::int64_t>(j + 1)), coeffs[j]);
        xe.emplace_back(m.nth(static_cast<std::int64_t>(j + 1)), coeffs[j]);
    }
    const auto y = coeff_vector<S>::from_entries(std::move(ye));
    const auto x = coeff_vector<S>::from_entries(std::move(xe));
    domination_check<S> out;
    out.gamma = d.gamma;
    out.C = d.C;
    const auto ly = space == space_kind::sp ? schreier_norm(y, p) : baernstein_norm(y, p);
    const auto lx = space == space_kind::sp ? schreier_norm(x, p) : baernstein_norm(x, p);
    out.lhs_pow = ly.value_pow;
    out.rhs_pow = lx.value_pow;
    out.lhs = ly.value;
    out.rhs = lx.value;
    if constexpr (is_exact_v<S>) {
        const rational factor = space == space_kind::sp ? rational(d.gamma) : rational(ipow(big_int(d.gamma), p.integer()));
        out.holds = out.lhs_pow <= factor * out.rhs_pow;
    } else {
        out.holds = out.lhs <= d.C * out.rhs * (1 + float_tolerance) + float_tolerance;
    }
    return out;
}

}  // namespace schreier_lab

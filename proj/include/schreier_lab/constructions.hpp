#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "schreier_lab/coeff_vector.hpp"
#include "schreier_lab/errors.hpp"
#include "schreier_lab/gl_index.hpp"
#include "schreier_lab/index_set.hpp"
#include "schreier_lab/norms.hpp"
#include "schreier_lab/schreier.hpp"

namespace schreier_lab {

// ---------------------------------------------------------------------------------------------
// Flat vectors over chains of maximal Schreier sets

inline void require_maximal_chain(const chain& c) {
    validate_chain(c);
    for (const auto& f : c)
        if (!is_maximal_schreier(f)) throw invalid_input("flat vectors need maximal sets, got " + f.str());
}

// |F|^{-1/p} on each block for S_p, |F|^{-1} for B_p.
// Exact S_p vectors exist only when every |F| is a perfect p-th power; use flat_weights otherwise.
template <class S>
coeff_vector<S> flat_vector(const chain& c, const exponent& p, space_kind space) {
    require_maximal_chain(c);
    if (space == space_kind::bp) require_bp_exponent(p);
    std::vector<value_run<S>> runs;
    for (const auto& f : c) {
        const std::int64_t size = f.size();
        S v;
        if (space == space_kind::bp || p.value() == 1.0) {
            v = S(1) / S(size);
        } else if constexpr (is_exact_v<S>) {
            const unsigned q = p.integer();
            const auto root = static_cast<std::int64_t>(std::llround(std::pow(double(size), 1.0 / q)));
            if (ipow(big_int(root), q) != big_int(size))
                throw unsupported_exponent("flat S_p vector entries are irrational; use flat_weights");
            v = S(1) / S(root);
        } else {
            v = std::pow(double(size), -1.0 / p.value());
        }
        runs.push_back(value_run<S>{f.min(), size, v});
    }
    return coeff_vector<S>::from_runs(std::move(runs));
}

// Entrywise p-th powers of the S_p flat vector: 1/|F| on each block.
template <class S>
coeff_vector<S> flat_weights(const chain& c) {
    require_maximal_chain(c);
    std::vector<value_run<S>> runs;
    for (const auto& f : c) runs.push_back(value_run<S>{f.min(), f.size(), S(1) / S(f.size())});
    return coeff_vector<S>::from_runs(std::move(runs));
}

// ---------------------------------------------------------------------------------------------
// Interval partition G_1 < F_2 < G_2 < F_3 < ...

struct mpb_partition {
    std::size_t n_max = 0;
    std::vector<big_set> F, G, J;  // 0-based: F[n-1] is F_n

    const big_set& f(std::size_t n) const { return at(F, n); }
    const big_set& g(std::size_t n) const { return at(G, n); }
    const big_set& j(std::size_t n) const { return at(J, n); }

private:
    const big_set& at(const std::vector<big_set>& v, std::size_t n) const {
        if (n < 1 || n > n_max) throw truncation_error("partition materialized through n = " + std::to_string(n_max));
        return v[n - 1];
    }
};

// F_1 is empty; F_{n+1} takes the next |F_1|+|G_1|+...+|F_n|+|G_n| integers; G_n packs n maximal
// intervals starting right after F_n, so G_n = [c, c 2^n - 1] for its first element c.
inline mpb_partition make_mpb_partition(std::size_t n_max) {
    if (n_max < 1) throw invalid_input("n_max must be positive");
    mpb_partition part;
    part.n_max = n_max;
    big_int next = 1;  // smallest unused integer
    for (std::size_t n = 1; n <= n_max; ++n) {
        big_set f;
        if (n > 1) {
            const big_int size = next - 1;
            f = big_set::range(next, big_int(next + size - 1));
            next += size;
        }
        const big_int c = next;
        const big_int end = (c << n) - 1;
        big_set g = big_set::range(c, end);
        next = end + 1;
        part.J.push_back(f.unite(g));
        part.F.push_back(std::move(f));
        part.G.push_back(std::move(g));
    }
    return part;
}

struct partition_report {
    bool successive = true;
    bool sizes = true;       // |F_n| = sum over m < n of |F_m| + |G_m|
    bool g_structure = true; // G_n is n successive maximal intervals and tau1(G_n) = n
    bool ok() const { return successive && sizes && g_structure; }
};

inline partition_report verify_partition(const mpb_partition& part) {
    partition_report rep;
    big_int expected_next = 1, before = 0;
    for (std::size_t n = 1; n <= part.n_max; ++n) {
        const big_set& f = part.f(n);
        const big_set& g = part.g(n);
        if (n == 1 ? !f.empty() : f.size() != before) rep.sizes = false;
        for (const big_set* s : {&f, &g}) {
            if (s->empty()) continue;
            if (s->intervals().size() != 1 || s->min() != expected_next) rep.successive = false;
            expected_next = s->max() + 1;
        }
        before += f.size() + g.size();
        // Rebuild G_n from its own maximal blocks.
        big_int s = g.min();
        for (std::size_t k = 0; k < n; ++k) s *= 2;
        if (s - 1 != g.max()) rep.g_structure = false;
        const auto cert = tau1(g);
        if (cert.count != n || !verify_certificate(cert)) rep.g_structure = false;
        for (const auto& blk : cert.chain)
            if (!is_maximal_schreier(blk)) rep.g_structure = false;
    }
    return rep;
}

// Union of J_n over n in N with n <= through.
inline big_index_set l_set(const mpb_partition& part, index_set n, std::int64_t through) {
    if (through < 1) throw invalid_input("through must be positive");
    n.ensure_through(through);
    big_set out;
    for (const auto& [lo, hi] : n.prefix().intervals())
        for (std::int64_t k = lo; k <= hi && k <= through; ++k) {
            const auto& jn = part.j(static_cast<std::size_t>(k));
            for (const auto& [a, b] : jn.intervals()) out.push_back_interval(a, b);
        }
    return big_index_set::explicit_prefix(std::move(out), index_rule::mpb_l);
}

// The L set over every element of N's materialized prefix that the partition covers.
inline big_index_set l_set_available(const mpb_partition& part, const index_set& n) {
    big_set out;
    for (const auto& [lo, hi] : n.prefix().intervals())
        for (std::int64_t k = lo; k <= hi && k <= static_cast<std::int64_t>(part.n_max); ++k)
            for (const auto& [a, b] : part.j(static_cast<std::size_t>(k)).intervals()) out.push_back_interval(a, b);
    return big_index_set::explicit_prefix(std::move(out), index_rule::mpb_l);
}

struct lemma63_result {
    std::int64_t m = 0;
    big_set J;            // positions of G_m inside L_M
    big_set lm_selected;  // L_M(J) = G_m
    big_set ln_selected;  // L_N(J)
    std::size_t tau = 0;  // tau1(L_M(J))
};

// J = positions of G_m in L_M. Both tau1(L_M(J)) = m and L_N(J) admissible are re-checked.
inline lemma63_result lemma63_witness(const mpb_partition& part, index_set m_set, index_set n_set, std::int64_t m) {
    if (m < 2) throw invalid_input("lemma63_witness needs m >= 2");
    m_set.ensure_through(m);
    n_set.ensure_through(m);
    if (!m_set.prefix().contains(m)) throw invalid_input(std::to_string(m) + " is not in M");
    if (n_set.prefix().contains(m)) throw invalid_input(std::to_string(m) + " belongs to N");
    if (static_cast<std::size_t>(m) > part.n_max) throw truncation_error("partition does not reach J_m");

    const big_index_set lm = l_set(part, m_set, m);
    const big_set& gm = part.g(static_cast<std::size_t>(m));
    lemma63_result out;
    out.m = m;
    const big_int first = lm.prefix().rank_of(big_int(gm.min() - 1)) + 1;
    out.J = big_set::range(first, big_int(first + gm.size() - 1));

    const big_index_set ln = l_set_available(part, n_set);
    if (ln.length() < out.J.max())
        throw truncation_error("L_N is not materialized through position " + out.J.max().str() +
                               "; extend N or the partition");
    out.lm_selected = select(lm, out.J);
    out.ln_selected = select(ln, out.J);
    out.tau = tau1(out.lm_selected).count;
    if (out.tau != static_cast<std::size_t>(m) || !is_schreier(out.ln_selected))
        throw std::logic_error("L-set witness failed re-verification for m = " + std::to_string(m));
    return out;
}

// Witnesses for every m in (M \ N) within {2..window}; the largest m is a certified lower bound
// for the truncated index of (L_M, L_N).
inline std::vector<lemma63_result> verify_corollary64(const mpb_partition& part, index_set m_set, index_set n_set,
                                                      std::int64_t window) {
    m_set.ensure_through(window);
    n_set.ensure_through(window);
    std::vector<lemma63_result> out;
    for (std::int64_t m = 2; m <= window; ++m)
        if (m_set.prefix().contains(m) && !n_set.prefix().contains(m))
            out.push_back(lemma63_witness(part, m_set, n_set, m));
    return out;
}

// ---------------------------------------------------------------------------------------------
// Extremal family for the l_p / sup / S_1 inequality

// 2^-k on [1, 2^{k+1}), then 2^-n on [2^n, 2^{n+1}) for k < n <= T.
template <class S>
coeff_vector<S> jameson_extremal(unsigned k, unsigned T) {
    if (T <= k) throw invalid_input("jameson_extremal needs T > k");
    if (T > 61) throw invalid_input("jameson_extremal indices exceed 64 bits");
    auto two_pow_neg = [](unsigned e) {
        if constexpr (is_exact_v<S>) return S(rational(1, ipow(big_int(2), e)));
        else return std::ldexp(1.0, -static_cast<int>(e));
    };
    std::vector<value_run<S>> runs;
    runs.push_back({1, (std::int64_t(1) << (k + 1)) - 1, two_pow_neg(k)});
    for (unsigned n = k + 1; n <= T; ++n) runs.push_back({std::int64_t(1) << n, std::int64_t(1) << n, two_pow_neg(n)});
    return coeff_vector<S>::from_runs(std::move(runs));
}

// ||x||_p^p / (||x||_inf^{p-1} ||x||_{S_1}).
inline double jameson_ratio(const float_vector& x, const exponent& p) {
    if (x.empty()) return 0.0;
    const double num = lp_norm_pow(x, p);
    const double den = std::pow(sup_norm(x), p.value() - 1.0) * schreier_norm(x, exponent(1u)).value;
    return num / den;
}

inline double jameson_upper_constant(double p) {
    const double h = std::pow(2.0, p - 1.0);
    return (3.0 * h - 2.0) / (h - 1.0);
}
inline double jameson_lower_constant(double p) {
    const double h = std::pow(2.0, p - 1.0);
    return (2.0 * h - 1.0) / (h - 1.0);
}

// ---------------------------------------------------------------------------------------------
// Block sequences

using block_sequence = std::vector<float_vector>;

inline void validate_blocks(const block_sequence& blocks) {
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        if (blocks[k].empty()) throw invalid_input("blocks must be non-zero");
        if (k > 0 && !(blocks[k - 1].max_index() < blocks[k].min_index()))
            throw invalid_input("blocks must have successive supports");
    }
}

inline double space_norm(const float_vector& x, const exponent& p, space_kind space) {
    return space == space_kind::sp ? schreier_norm(x, p).value : baernstein_norm(x, p).value;
}

struct subsequence_selection {
    std::vector<std::size_t> indices;  // 1-based positions in the block list
    bool shortfall = false;            // the list ran out before the recursion could continue
    double C = 0.0;
};

inline double delta_k(double eps, const exponent& p, std::size_t k) {
    return std::min(0.5, eps / (std::ldexp(1.0, static_cast<int>(k)) * p.value() * std::pow(2.0, p.value() - 1.0)));
}

// Greedy subsequence for domination by the unit vector basis of c_0 (S_p) or l_p (B_p), C = (1+eps)^{1/p}.
// S_p: ||u_{j_{k+1}}||_inf^p <= eps / max supp u_{j_k}.
// B_p: ||u_i||_inf <= delta_k / max supp u_{j_k} for every i >= j_{k+1}.
inline subsequence_selection dominated_subsequence(const block_sequence& blocks, const exponent& p, space_kind space,
                                                   double eps, std::size_t max_terms = 0) {
    if (!(eps > 0)) throw invalid_input("eps must be positive");
    if (space == space_kind::bp) require_bp_exponent(p);
    validate_blocks(blocks);
    if (blocks.empty()) throw invalid_input("no blocks");
    std::vector<double> sup(blocks.size());
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        if (!close_rel(space_norm(blocks[k], p, space), 1.0)) throw invalid_input("blocks must be normalized");
        sup[k] = sup_norm(blocks[k]);
    }
    if (space == space_kind::bp)
        for (std::size_t k = 1; k < sup.size(); ++k)
            if (!(sup[k] < sup[k - 1])) throw cannot_select("sup norms must decrease strictly along the blocks");

    std::vector<double> tail_max(sup.size() + 1, 0.0);
    for (std::size_t k = sup.size(); k-- > 0;) tail_max[k] = std::max(tail_max[k + 1], sup[k]);

    subsequence_selection sel;
    sel.C = std::pow(1.0 + eps, 1.0 / p.value());
    sel.indices.push_back(1);
    while (max_terms == 0 || sel.indices.size() < max_terms) {
        const std::size_t cur = sel.indices.back() - 1;
        const double reach = double(blocks[cur].max_index());
        const std::size_t k = sel.indices.size();
        std::size_t next = 0;
        for (std::size_t j = cur + 1; j < blocks.size() && next == 0; ++j) {
            const bool ok = space == space_kind::sp ? std::pow(sup[j], p.value()) <= eps / reach
                                                    : tail_max[j] <= delta_k(eps, p, k) / reach;
            if (ok) next = j + 1;
        }
        if (next == 0) {
            sel.shortfall = true;
            break;
        }
        sel.indices.push_back(next);
    }
    return sel;
}

struct doubling_result {
    block_sequence u;              // normalized group sums
    std::vector<double> v_norm;    // ||v_n||
    std::vector<double> u_sup;     // ||u_n||_inf
    std::vector<double> lower;     // 2^{(n-1)/p} delta (S_p) or 2^{n-1} delta (B_p)
    double delta = 0.0;            // smallest sup norm among the input blocks used
};

// v_n = w_{2^{n-1}} + ... + w_{2^n - 1}, u_n = v_n / ||v_n||, for every complete dyadic group.
inline doubling_result doubling_blocks(const block_sequence& blocks, space_kind space, const exponent& p) {
    if (space == space_kind::bp) require_bp_exponent(p);
    validate_blocks(blocks);
    if (blocks.empty()) throw invalid_input("doubling_blocks needs at least one block");
    std::size_t groups = 0;
    while ((std::size_t(1) << (groups + 1)) - 1 <= blocks.size()) ++groups;
    const std::size_t used = (std::size_t(1) << groups) - 1;
    doubling_result out;
    out.delta = sup_norm(blocks[0]);
    for (std::size_t k = 0; k < used; ++k) {
        if (!close_rel(space_norm(blocks[k], p, space), 1.0)) throw invalid_input("blocks must be normalized");
        out.delta = std::min(out.delta, sup_norm(blocks[k]));
    }
    for (std::size_t n = 1; n <= groups; ++n) {
        float_vector v;
        for (std::size_t j = (std::size_t(1) << (n - 1)); j < (std::size_t(1) << n); ++j) v = v + blocks[j - 1];
        const double nv = space_norm(v, p, space);
        out.v_norm.push_back(nv);
        out.u.push_back(v.scaled(1.0 / nv));
        out.u_sup.push_back(sup_norm(out.u.back()));
        const double grow = space == space_kind::sp ? std::pow(2.0, double(n - 1) / p.value()) : std::ldexp(1.0, int(n - 1));
        out.lower.push_back(grow * out.delta);
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// Almost disjoint families on the node-labelled binary tree

struct almost_disjoint_family {
    std::size_t depth = 0;
    std::vector<std::string> codes;     // code words of length depth
    std::vector<index_set> branches;    // node labels along each branch, root first
};

// Root is node 1, children of v are 2v and 2v+1. A branch with code word b_1...b_d visits
// 1, 2+b_1, 2(2+b_1)+b_2, ..., so two branches share exactly the root and their common-prefix nodes.
inline almost_disjoint_family make_almost_disjoint_family(std::size_t count, std::size_t depth) {
    if (depth < 1 || depth > 60) throw invalid_input("depth must be in 1..60");
    if (count < 1 || count > (std::size_t(1) << depth)) throw invalid_input("count exceeds 2^depth");
    almost_disjoint_family fam;
    fam.depth = depth;
    const std::uint64_t top = (std::uint64_t(1) << depth) - 1;
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t word = count == 1 ? 0 : static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(i) * top) / (count - 1));
        std::string code;
        std::vector<std::int64_t> nodes{1};
        for (std::size_t b = depth; b-- > 0;) {
            const std::uint64_t bit = word >> b & 1u;
            code.push_back(bit ? '1' : '0');
            nodes.push_back(nodes.back() * 2 + static_cast<std::int64_t>(bit));
        }
        fam.codes.push_back(code);
        fam.branches.push_back(index_set::explicit_prefix(nodes));
    }
    return fam;
}

inline std::size_t common_prefix_nodes(const std::string& a, const std::string& b) {
    std::size_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    return k + 1;  // the root is always shared
}

}  // namespace schreier_lab

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "schreier_lab/coeff_vector.hpp"
#include "schreier_lab/errors.hpp"
#include "schreier_lab/interval_set.hpp"
#include "schreier_lab/scalar.hpp"
#include "schreier_lab/schreier.hpp"

namespace schreier_lab {

template <class S>
struct norm_result {
    space_kind space = space_kind::sp;
    exponent p;
    arith_mode mode = scalar_ops<S>::mode;
    S value_pow{};        // p-th power of the norm
    double value = 0.0;   // the norm itself
    int_set witness_set;  // S_p witness; empty for the zero vector
    chain witness_chain;  // B_p witness; empty for the zero vector
    bool zero = false;
};

enum class bp_strategy { automatic, explicit_dp, monotone };

// Largest support accepted by the general O(n^2 log n) Baernstein evaluator.
inline constexpr std::int64_t explicit_bp_limit = 4096;
// Largest support accepted by the evaluator for vectors with non-increasing moduli.
inline constexpr std::int64_t monotone_bp_limit = std::int64_t(1) << 25;

inline void require_bp_exponent(const exponent& p) {
    if (!(p.value() > 1.0)) throw unsupported_exponent("Baernstein norms need p > 1, got " + p.str());
}

namespace detail {

inline big_int widen(int128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    big_int r = static_cast<std::uint64_t>(u >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(u);
    return neg ? big_int(-r) : r;
}
inline const big_int& widen(const big_int& v) { return v; }

inline int128 narrow128(const big_int& v) {
    int128 r = 0;
    big_int rest = v;
    const std::uint64_t lo = static_cast<std::uint64_t>(rest & big_int(std::numeric_limits<std::uint64_t>::max()));
    rest >>= 64;
    const std::uint64_t hi = rest.convert_to<std::uint64_t>();
    r = static_cast<int128>((static_cast<unsigned __int128>(hi) << 64) | lo);
    return r;
}

// v -> v^p with the exponent decoded once.
template <class T>
class power_fn {
public:
    explicit power_fn(const exponent& p) : real_(p.value()) {
        if constexpr (std::is_same_v<T, double>) {
            if (p.is_integer()) k_ = p.integer();
            else if (2 * real_ == std::floor(2 * real_) && real_ < 64) { k_ = static_cast<unsigned>(real_); half_ = true; }
            else general_ = true;
        } else {
            k_ = p.integer();
        }
    }
    T operator()(const T& v) const {
        if constexpr (std::is_same_v<T, double>) {
            if (general_) return std::pow(v, real_);
            const T base = k_ == 1 ? v : k_ == 2 ? v * v : k_ == 3 ? v * v * v : ipow(v, k_);
            return half_ ? base * std::sqrt(v) : base;
        } else {
            return k_ == 2 ? T(v * v) : k_ == 3 ? T(v * v * v) : ipow(v, k_);
        }
    }

private:
    double real_;
    unsigned k_ = 1;
    bool half_ = false, general_ = false;
};

template <class T>
bool same_value(const T& a, const T& b) {
    if constexpr (std::is_same_v<T, double>) {
        return std::fabs(a - b) <= 1e-12 * std::max({1.0, std::fabs(a), std::fabs(b)});
    } else {
        return a == b;
    }
}

// Runs kernel on integer-scaled moduli (exact mode) or doubles (float mode) and converts the
// kernel's p-th power sum back: values are scaled by the lcm D of denominators, so sums scale by D^pw.
// Integer kernels use 128-bit accumulators when total^pw * terms stays below 2^125.
template <class S, class Kernel>
S run_scaled(const std::vector<S>& vals, const std::vector<std::int64_t>& counts, unsigned pw, std::int64_t terms,
             Kernel&& kernel) {
    if constexpr (!is_exact_v<S>) {
        return kernel(vals);
    } else {
        big_int denom = 1;
        for (const auto& v : vals) {
            const big_int d = boost::multiprecision::denominator(v);
            denom = denom / boost::multiprecision::gcd(denom, d) * d;
        }
        std::vector<big_int> a;
        a.reserve(vals.size());
        big_int total = 0;
        for (std::size_t k = 0; k < vals.size(); ++k) {
            const rational m = scalar_ops<rational>::abs(vals[k]);
            a.push_back(boost::multiprecision::numerator(m) * (denom / boost::multiprecision::denominator(m)));
            total += a.back() * counts[k];
        }
        const big_int dp = ipow(denom, pw);
        const big_int bound = ipow(total, pw) * big_int(std::max<std::int64_t>(terms, 1));
        if (bound < (big_int(1) << 125)) {
            std::vector<int128> small;
            small.reserve(a.size());
            for (const auto& x : a) small.push_back(narrow128(x));
            return rational(widen(kernel(small)), dp);
        }
        return rational(kernel(a), dp);
    }
}

template <class S>
S sum_pow_over(const coeff_vector<S>& x, const int_set& f, const exponent& p, bool block_sum) {
    S acc = 0;
    for (const auto& r : x.runs()) {
        const int_set part = f.intersect(int_set::range(r.first, r.last()));
        if (part.empty()) continue;
        const S m = scalar_ops<S>::abs(r.value);
        acc += (block_sum ? m : scalar_ops<S>::pow(m, p)) * S(part.size());
    }
    return acc;
}

}  // namespace detail

// Sum over f of |x|^p, i.e. mu_p(x,f)^p.
template <class S>
S mu_p_pow(const coeff_vector<S>& x, const int_set& f, const exponent& p) {
    if (!is_schreier(f)) throw invalid_input("mu_p needs a Schreier set, got " + f.str());
    return detail::sum_pow_over(x, f, p, false);
}

template <class S>
double mu_p(const coeff_vector<S>& x, const int_set& f, const exponent& p) {
    return pth_root(to_double(mu_p_pow(x, f, p)), p);
}

// Sum over f of |x|.
template <class S>
S block_abs_sum(const coeff_vector<S>& x, const int_set& f) {
    return detail::sum_pow_over(x, f, exponent(1u), true);
}

// beta_p(x,c)^p = sum over blocks of (block sum of |x|)^p.
template <class S>
S beta_p_pow(const coeff_vector<S>& x, const chain& c, const exponent& p) {
    require_bp_exponent(p);
    validate_chain(c);
    S acc = 0;
    for (const auto& f : c) acc += scalar_ops<S>::pow(block_abs_sum(x, f), p);
    return acc;
}

template <class S>
double beta_p(const coeff_vector<S>& x, const chain& c, const exponent& p) {
    return pth_root(to_double(beta_p_pow(x, c, p)), p);
}

template <class S>
S lp_norm_pow(const coeff_vector<S>& x, const exponent& p) {
    S acc = 0;
    for (const auto& r : x.runs()) acc += scalar_ops<S>::pow(scalar_ops<S>::abs(r.value), p) * S(r.count);
    return acc;
}

template <class S>
double lp_norm(const coeff_vector<S>& x, const exponent& p) {
    return pth_root(to_double(lp_norm_pow(x, p)), p);
}

template <class S>
S sup_norm(const coeff_vector<S>& x) {
    S best = 0;
    for (const auto& r : x.runs()) best = std::max<S>(best, scalar_ops<S>::abs(r.value));
    return best;
}

// ---------------------------------------------------------------------------------------------
// Schreier norm
//
// With weights w = |x|^p, the norm's p-th power is the largest sum of w over an admissible set.
// For a set with minimum m the best completion takes the m-1 heaviest later weights. Inside one
// run [a,b] of constant weight v, with R the multiset of weights after b, the value for minimum m
// is v + max_j { (m-1-j) v + R(j) } over j in [max(0, 2m-1-b), min(m-1, |R|)], R(j) the sum of the
// j heaviest. That is piecewise linear in m with breaks only where the j-range meets a
// breakpoint of R, so a handful of candidate minima per run suffices.

template <class S>
norm_result<S> schreier_norm(const coeff_vector<S>& x, const exponent& p) {
    using ops = scalar_ops<S>;
    norm_result<S> res;
    res.space = space_kind::sp;
    res.p = p;
    if (x.empty()) {
        res.zero = true;
        return res;
    }
    const auto w = x.powered(p).runs();
    const std::size_t nr = w.size();

    std::vector<std::size_t> later;  // runs after the current one, heaviest first, ties by position
    auto heavier = [&](std::size_t u, std::size_t v) {
        if (w[u].value != w[v].value) return w[u].value > w[v].value;
        return u < v;
    };

    bool have = false;
    S best = 0;
    std::int64_t best_m = 0, best_in_run = 0, best_j = 0;
    std::size_t best_run = 0;
    std::vector<std::size_t> best_later;

    std::vector<std::int64_t> cum;  // cum[t] = elements in the t heaviest later runs
    std::vector<S> csum;

    for (std::size_t kk = nr; kk-- > 0;) {
        if (kk + 1 < nr) later.insert(std::upper_bound(later.begin(), later.end(), kk + 1, heavier), kk + 1);
        cum.assign(1, 0);
        csum.assign(1, S(0));
        for (std::size_t t : later) {
            cum.push_back(cum.back() + w[t].count);
            csum.push_back(csum.back() + w[t].value * S(w[t].count));
        }
        const std::int64_t tot = cum.back();
        auto rsum = [&](std::int64_t j) -> S {
            const auto t = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), j) - cum.begin()) - 1;
            if (t >= later.size()) return csum.back();
            return csum[t] + w[later[t]].value * S(j - cum[t]);
        };
        const std::int64_t a = w[kk].first, b = w[kk].last();
        const S v = w[kk].value;

        // Returns (value, j, in-run extras) for minimum m.
        auto eval = [&](std::int64_t m, S& val, std::int64_t& jbest, std::int64_t& inrun) {
            const std::int64_t want = m - 1, room = b - m;
            const std::int64_t lo = std::max<std::int64_t>(0, want - room), hi = std::min<std::int64_t>(want, tot);
            if (lo > hi) {
                val = v * S(1 + room) + csum.back();
                jbest = tot;
                inrun = room;
                return;
            }
            bool first = true;
            auto consider = [&](std::int64_t j) {
                if (j < lo || j > hi) return;
                const S cand = v * S(1 + want - j) + rsum(j);
                if (first || cand > val || (cand == val && j < jbest)) {
                    val = cand;
                    jbest = j;
                    first = false;
                }
            };
            consider(lo);
            consider(hi);
            for (std::int64_t c : cum) consider(c);
            inrun = want - jbest;
        };

        std::vector<std::int64_t> cands{a, b, (b + 1) / 2, (b + 1) / 2 + 1, b / 2};
        for (std::int64_t q : cum)
            for (std::int64_t m : {q, q + 1, q + 2, (q + 1 + b) / 2, (q + 1 + b) / 2 + 1, (q + 1 + b) / 2 - 1, (q + 2 + b) / 2})
                cands.push_back(m);
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        // Runs are scanned right to left, so ties move the witness to the smaller minimum.
        for (auto it = cands.rbegin(); it != cands.rend(); ++it) {
            const std::int64_t m = *it;
            if (m < a || m > b) continue;
            S val;
            std::int64_t j = 0, inrun = 0;
            eval(m, val, j, inrun);
            if (!have || val > best || (val == best && m < best_m)) {
                have = true;
                best = val;
                best_m = m;
                best_j = j;
                best_in_run = inrun;
                best_run = kk;
                best_later = later;
            }
        }
    }

    int_set f;
    f.push_back_interval(best_m, best_m + best_in_run);
    std::vector<std::pair<std::int64_t, std::int64_t>> extra;
    std::int64_t left = best_j;
    for (std::size_t t : best_later) {
        if (left == 0) break;
        const std::int64_t take = std::min(left, w[t].count);
        extra.emplace_back(w[t].first, w[t].first + take - 1);
        left -= take;
    }
    (void)best_run;
    f = f.unite(int_set::from_intervals(extra));
    res.value_pow = best;
    res.value = pth_root(to_double(best), p);
    res.witness_set = std::move(f);
    (void)ops::exact;
    return res;
}

// Schreier norm p-th power computed directly from precomputed weights |x|^p.
template <class S>
norm_result<S> schreier_norm_from_weights(const coeff_vector<S>& weights, const exponent& p) {
    norm_result<S> r = schreier_norm(weights, exponent(1u));
    r.p = p;
    r.value = pth_root(to_double(r.value_pow), p);
    return r;
}

// ---------------------------------------------------------------------------------------------
// Baernstein norm

namespace detail {

// Support in rank order: idx[r] is the index of the r-th support element, a[r] its scaled modulus.
template <class T>
struct bp_blocks {
    T value{};
    std::vector<std::vector<std::int64_t>> blocks;  // rank lists
};

// Ranks strictly between i and t holding the k largest values; ties go to smaller ranks.
template <class T>
std::vector<std::int64_t> fill_ranks(const std::vector<T>& a, std::int64_t i, std::int64_t t, std::int64_t k) {
    std::vector<std::int64_t> mid;
    for (std::int64_t r = i + 1; r < t; ++r) mid.push_back(r);
    if (static_cast<std::int64_t>(mid.size()) > k) {
        std::stable_sort(mid.begin(), mid.end(), [&](std::int64_t u, std::int64_t v) { return a[u] > a[v]; });
        mid.resize(static_cast<std::size_t>(k));
        std::sort(mid.begin(), mid.end());
    }
    return mid;
}

// Exact DP over first/last block elements. For fixed endpoints the best block fills the
// remaining |F| - 2 slots with the largest intermediate moduli.
template <class T>
bp_blocks<T> bp_explicit_kernel(const std::vector<std::int64_t>& idx, const std::vector<T>& a, const exponent& p) {
    const std::int64_t n = static_cast<std::int64_t>(a.size());
    const power_fn<T> pw(p);
    std::vector<T> best(n), W(n + 1, T(0));
    for (std::int64_t i = n - 1; i >= 0; --i) {
        T b = pw(a[i]) + W[i + 1];
        const std::int64_t f = idx[i];
        if (f >= 2) {
            const std::int64_t k = f - 2;
            std::priority_queue<T, std::vector<T>, std::greater<T>> heap;
            T top = 0;
            for (std::int64_t t = i + 1; t < n; ++t) {
                if (t - 1 > i && k > 0) {
                    heap.push(a[t - 1]);
                    top += a[t - 1];
                    if (static_cast<std::int64_t>(heap.size()) > k) {
                        top -= heap.top();
                        heap.pop();
                    }
                }
                const T cand = pw(T(a[i] + a[t] + top)) + W[t + 1];
                if (cand > b) b = cand;
            }
        }
        best[i] = b;
        W[i] = std::max(W[i + 1], b);
    }

    bp_blocks<T> out;
    out.value = W[0];
    std::int64_t i = 0;
    T target = W[0];
    while (i < n && target > T(0)) {
        std::int64_t s = i;
        while (!same_value(best[s], target)) ++s;
        std::vector<std::int64_t> chosen;
        std::int64_t chosen_t = -1;
        auto offer = [&](std::int64_t t, std::vector<std::int64_t> blk) {
            if (chosen_t < 0 || blk < chosen) {
                chosen = std::move(blk);
                chosen_t = t;
            }
        };
        if (same_value(T(pw(a[s]) + W[s + 1]), target)) offer(s, {s});
        if (idx[s] >= 2) {
            const std::int64_t k = idx[s] - 2;
            for (std::int64_t t = s + 1; t < n; ++t) {
                auto mid = fill_ranks(a, s, t, k);
                T sum = a[s] + a[t];
                for (auto r : mid) sum += a[r];
                if (!same_value(T(pw(sum) + W[t + 1]), target)) continue;
                std::vector<std::int64_t> blk{s};
                blk.insert(blk.end(), mid.begin(), mid.end());
                blk.push_back(t);
                offer(t, std::move(blk));
            }
        }
        out.blocks.push_back(std::move(chosen));
        i = chosen_t + 1;
        target = W[i];
    }
    return out;
}

template <class T>
struct mono_run {
    std::int64_t r0;   // first rank
    std::int64_t cnt;  // ranks in the run
    std::int64_t s0;   // index of the first rank
    T a;               // scaled modulus
    T P0;              // prefix sum before r0
};

// Covering DP for non-increasing moduli. An optimal chain then partitions the support into
// consecutive rank blocks [r, q) with q - r <= idx(r), so V(r) = max_q (P(q) - P(r))^p + V(q).
// Only few q need inspection: the longest and second longest admissible block, a singleton, and
// boundaries in the closure L of the breakpoints under the maps that make a block end exactly
// at a given boundary. Every V(r) is exact, which lets the witness scan all q.
template <class T>
struct mono_out {
    T value{};
    std::vector<std::pair<std::int64_t, std::int64_t>> blocks;  // rank ranges [r, q)
};

template <class T>
mono_out<T> bp_monotone_kernel(const std::vector<mono_run<T>>& runs, std::int64_t n, const exponent& p) {
    const power_fn<T> pw(p);
    const T ptot = runs.back().P0 + runs.back().a * T(runs.back().cnt);
    auto run_of = [&](std::int64_t r) -> std::size_t {
        auto it = std::upper_bound(runs.begin(), runs.end(), r, [](std::int64_t v, const mono_run<T>& m) { return v < m.r0; });
        return static_cast<std::size_t>(it - runs.begin()) - 1;
    };
    auto P = [&](std::int64_t r) -> T {
        if (r >= n) return ptot;
        const auto& m = runs[run_of(r)];
        return m.P0 + m.a * T(r - m.r0);
    };
    auto idx = [&](std::int64_t r) -> std::int64_t {
        const auto& m = runs[run_of(r)];
        return m.s0 + (r - m.r0);
    };
    // r + idx(r) is strictly increasing in r; find r with r + idx(r) == key.
    auto solve_key = [&](std::int64_t key) -> std::int64_t {
        std::size_t lo = 0, hi = runs.size();
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if (runs[mid].r0 + runs[mid].s0 <= key) lo = mid;
            else hi = mid;
        }
        const auto& m = runs[lo];
        const std::int64_t d = key - (m.r0 + m.s0);
        if (d < 0 || d % 2 != 0 || d / 2 >= m.cnt) return -1;
        return m.r0 + d / 2;
    };

    std::set<std::pair<std::int64_t, bool>> seen;
    std::vector<std::pair<std::int64_t, bool>> stack{{0, false}, {n, false}};
    for (std::size_t k = 1; k < runs.size(); ++k) {
        stack.emplace_back(runs[k].r0, false);
        stack.emplace_back(runs[k].r0 - 1, false);
    }
    std::set<std::int64_t> lset;
    while (!stack.empty()) {
        auto [wv, after_step] = stack.back();
        stack.pop_back();
        if (wv < 0 || !seen.insert({wv, after_step}).second) continue;
        lset.insert(wv);
        for (std::int64_t key : {wv, wv + 1}) {
            const std::int64_t u = solve_key(key);
            if (u >= 0 && u < wv) stack.emplace_back(u, false);
        }
        if (wv - 1 >= 0 && (!after_step || idx(wv - 1) == 1)) stack.emplace_back(wv - 1, true);
    }
    const std::vector<std::int64_t> L(lset.begin(), lset.end());

    std::vector<T> PL(L.size());
    for (std::size_t i = 0; i < L.size(); ++i) PL[i] = P(L[i]);

    std::vector<T> V(static_cast<std::size_t>(n) + 1, T(0));
    std::size_t kh = runs.size() - 1;  // run holding the far end; moves left as r decreases
    auto prefix_at = [&](std::int64_t q) -> T {
        if (q >= n) return ptot;
        while (runs[kh].r0 > q) --kh;
        return runs[kh].P0 + runs[kh].a * T(q - runs[kh].r0);
    };
    std::size_t li = L.size();  // first L element beyond hi
    for (std::size_t k = runs.size(); k-- > 0;) {
        const auto& m = runs[k];
        const T next_p = k + 1 < runs.size() ? runs[k + 1].P0 : ptot;
        for (std::int64_t r = m.r0 + m.cnt - 1; r >= m.r0; --r) {
            const T pr = m.P0 + m.a * T(r - m.r0);
            const std::int64_t reach = r + m.s0 + (r - m.r0);
            const std::int64_t hi = std::min(n, reach);
            const T p1 = r + 1 < m.r0 + m.cnt ? T(pr + m.a) : next_p;
            T v = pw(T(p1 - pr)) + V[r + 1];
            if (hi > r + 1) {
                const T c = pw(T(prefix_at(hi) - pr)) + V[hi];
                if (c > v) v = c;
            }
            if (reach - 1 > r + 1 && reach - 1 <= hi) {
                const T c = pw(T(prefix_at(reach - 1) - pr)) + V[reach - 1];
                if (c > v) v = c;
            }
            while (li > 0 && L[li - 1] > hi) --li;
            for (std::size_t i = li; i-- > 0 && L[i] > r + 1;) {
                const T c = pw(T(PL[i] - pr)) + V[L[i]];
                if (c > v) v = c;
            }
            V[r] = v;
        }
    }

    mono_out<T> out;
    out.value = V[0];
    // Smallest optimal q at each step gives the lexicographically smallest chain.
    std::int64_t r = 0;
    std::size_t kr = 0;  // run holding rank q - 1
    T pq = 0;            // P(q) while scanning
    while (r < n) {
        const T pr = pq;
        const std::int64_t hi = std::min(n, r + idx(r));
        std::int64_t q = r;
        do {
            while (kr + 1 < runs.size() && runs[kr + 1].r0 <= q) ++kr;
            pq += runs[kr].a;
            ++q;
        } while (q < hi && !same_value(T(pw(T(pq - pr)) + V[q]), V[r]));
        out.blocks.emplace_back(r, q);
        r = q;
    }
    return out;
}

}  // namespace detail

template <class S>
norm_result<S> baernstein_norm(const coeff_vector<S>& x, const exponent& p, bp_strategy strategy = bp_strategy::automatic) {
    require_bp_exponent(p);
    norm_result<S> res;
    res.space = space_kind::bp;
    res.p = p;
    if (x.empty()) {
        res.zero = true;
        return res;
    }
    const auto ax = x.abs();
    const std::int64_t n = ax.support_size();
    const unsigned pw = is_exact_v<S> ? p.integer() : 1u;
    if (strategy == bp_strategy::automatic)
        strategy = ax.abs_nonincreasing() ? bp_strategy::monotone : bp_strategy::explicit_dp;

    std::vector<S> vals;
    std::vector<std::int64_t> counts;
    for (const auto& r : ax.runs()) {
        vals.push_back(r.value);
        counts.push_back(r.count);
    }

    if (strategy == bp_strategy::monotone) {
        if (!ax.abs_nonincreasing()) throw invalid_input("monotone evaluator needs non-increasing moduli");
        if (n > monotone_bp_limit) throw invalid_input("support too large for the Baernstein evaluator");
        std::vector<std::pair<std::int64_t, std::int64_t>> blocks;
        res.value_pow = detail::run_scaled<S>(vals, counts, pw, n, [&](const auto& a) {
            using T = typename std::decay_t<decltype(a)>::value_type;
            std::vector<detail::mono_run<T>> runs;
            std::int64_t r0 = 0;
            T acc = 0;
            for (std::size_t k = 0; k < a.size(); ++k) {
                runs.push_back({r0, counts[k], ax.runs()[k].first, a[k], acc});
                r0 += counts[k];
                acc += a[k] * T(counts[k]);
            }
            auto out = detail::bp_monotone_kernel<T>(runs, n, p);
            blocks = std::move(out.blocks);
            return out.value;
        });
        // Ranks map to indices run by run.
        const auto& rr = ax.runs();
        std::vector<std::int64_t> starts;
        std::int64_t acc = 0;
        for (const auto& r : rr) {
            starts.push_back(acc);
            acc += r.count;
        }
        for (const auto& [lo, hi] : blocks) {
            int_set f;
            for (std::size_t k = 0; k < rr.size(); ++k) {
                const std::int64_t a0 = std::max(lo, starts[k]);
                const std::int64_t b0 = std::min(hi, starts[k] + rr[k].count);
                if (a0 < b0) f.push_back_interval(rr[k].first + (a0 - starts[k]), rr[k].first + (b0 - 1 - starts[k]));
            }
            res.witness_chain.push_back(std::move(f));
        }
    } else {
        if (n > explicit_bp_limit) throw invalid_input("support too large for the general Baernstein evaluator");
        std::vector<std::int64_t> idx;
        std::vector<S> rank_vals;
        for (const auto& r : ax.runs())
            for (std::int64_t k = 0; k < r.count; ++k) {
                idx.push_back(r.first + k);
                rank_vals.push_back(r.value);
            }
        std::vector<std::int64_t> ones(rank_vals.size(), 1);
        std::vector<std::vector<std::int64_t>> blocks;
        res.value_pow = detail::run_scaled<S>(rank_vals, ones, pw, n, [&](const auto& a) {
            using T = typename std::decay_t<decltype(a)>::value_type;
            auto out = detail::bp_explicit_kernel<T>(idx, a, p);
            blocks = std::move(out.blocks);
            return out.value;
        });
        for (const auto& blk : blocks) {
            std::vector<std::int64_t> e;
            for (auto r : blk) e.push_back(idx[static_cast<std::size_t>(r)]);
            res.witness_chain.push_back(int_set::from_elements(std::move(e)));
        }
    }
    res.value = pth_root(to_double(res.value_pow), p);
    return res;
}

// ---------------------------------------------------------------------------------------------
// Exhaustive references

template <class S>
struct oracle_value {
    S value_pow{};
    double value = 0.0;
};

namespace detail {

template <class T>
void oracle_chains(const std::vector<std::int64_t>& e, const std::vector<T>& subset_sum, std::uint32_t from, const T& acc,
                   const power_fn<T>& pw, T& best) {
    const std::uint32_t n = static_cast<std::uint32_t>(e.size());
    for (std::uint32_t i = from; i < n; ++i) {
        const std::uint32_t tail_bits = n - i - 1;
        const std::uint32_t tail = tail_bits == 0 ? 0u : ((1u << tail_bits) - 1u) << (i + 1);
        std::uint32_t sub = 0;
        while (true) {
            if (static_cast<std::int64_t>(__builtin_popcount(sub)) + 1 <= e[i]) {
                const std::uint32_t mask = sub | (1u << i);
                const T val = acc + pw(subset_sum[mask]);
                if (val > best) best = val;
                const std::uint32_t last = 31u - static_cast<std::uint32_t>(__builtin_clz(mask));
                oracle_chains(e, subset_sum, last + 1, val, pw, best);
            }
            if (sub == tail) break;
            sub = (sub - tail) & tail;
        }
    }
}

}  // namespace detail

// Maximum of mu_p over all Schreier subsets of the support, or of beta_p over all chains in it.
template <class S>
oracle_value<S> oracle_norm(const coeff_vector<S>& x, const exponent& p, space_kind space) {
    if (space == space_kind::bp) require_bp_exponent(p);
    const int_set supp = x.support();
    require_oracle_size(static_cast<std::size_t>(supp.size()), "oracle_norm");
    const auto e = supp.elements();
    const std::uint32_t n = static_cast<std::uint32_t>(e.size());
    std::vector<S> vals;
    for (auto i : e) vals.push_back(space == space_kind::sp ? scalar_ops<S>::pow(scalar_ops<S>::abs(x.at(i)), p) : x.at(i));
    std::vector<std::int64_t> ones(vals.size(), 1);
    const unsigned pw = (space == space_kind::bp && is_exact_v<S>) ? p.integer() : 1u;
    oracle_value<S> out;
    out.value_pow = detail::run_scaled<S>(vals, ones, pw, std::int64_t(n) + 1, [&](const auto& a) {
        using T = typename std::decay_t<decltype(a)>::value_type;
        std::vector<T> subset_sum(std::size_t(1) << n, T(0));
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            const std::uint32_t low = static_cast<std::uint32_t>(__builtin_ctz(mask));
            T v = a[low];
            if constexpr (std::is_same_v<T, double>) v = std::fabs(v);
            subset_sum[mask] = subset_sum[mask & (mask - 1)] + v;
        }
        T best = 0;
        if (space == space_kind::sp) {
            for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
                const std::uint32_t low = static_cast<std::uint32_t>(__builtin_ctz(mask));
                if (__builtin_popcount(mask) <= e[low] && subset_sum[mask] > best) best = subset_sum[mask];
            }
        } else {
            detail::oracle_chains<T>(e, subset_sum, 0, T(0), detail::power_fn<T>(p), best);
        }
        return best;
    });
    out.value = pth_root(to_double(out.value_pow), p);
    return out;
}

// ---------------------------------------------------------------------------------------------

// n-th output coordinate is the signed sum of x over the n-th set.
template <class S>
coeff_vector<S> sigma_operator(const coeff_vector<S>& x, const std::vector<int_set>& sets) {
    for (std::size_t k = 0; k < sets.size(); ++k) {
        if (sets[k].empty()) throw invalid_input("block sets must be non-empty");
        if (!is_schreier(sets[k])) throw invalid_input("block set " + sets[k].str() + " is not admissible");
        if (k > 0 && !(sets[k - 1].max() < sets[k].min())) throw invalid_input("block sets are not successive");
    }
    std::vector<std::pair<std::int64_t, S>> out;
    for (std::size_t k = 0; k < sets.size(); ++k) {
        S acc = 0;
        for (const auto& r : x.runs()) {
            const int_set part = sets[k].intersect(int_set::range(r.first, r.last()));
            if (!part.empty()) acc += r.value * S(part.size());
        }
        out.emplace_back(static_cast<std::int64_t>(k + 1), acc);
    }
    return coeff_vector<S>::from_entries(std::move(out));
}

// |x| sorted decreasingly onto indices 1..|supp x|.
template <class S>
coeff_vector<S> decreasing_rearrangement(const coeff_vector<S>& x) {
    auto runs = x.abs().runs();
    std::stable_sort(runs.begin(), runs.end(), [](const auto& a, const auto& b) { return a.value > b.value; });
    std::int64_t next = 1;
    for (auto& r : runs) {
        r.first = next;
        next += r.count;
    }
    return coeff_vector<S>::from_runs(std::move(runs));
}

}  // namespace schreier_lab

#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "schreier_lab/errors.hpp"
#include "schreier_lab/interval_set.hpp"

namespace schreier_lab {

template <class I>
using basic_chain = std::vector<interval_set<I>>;
using chain = basic_chain<std::int64_t>;
using big_chain = basic_chain<big_int>;

inline constexpr std::size_t default_oracle_bound = 14;

// Element bound for exhaustive oracles; SCHREIER_LAB_ORACLE_BOUND overrides the default.
inline std::size_t oracle_bound() {
    if (const char* env = std::getenv("SCHREIER_LAB_ORACLE_BOUND")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v <= 30) return v;
    }
    return default_oracle_bound;
}

inline void require_oracle_size(std::size_t n, const char* what) {
    const std::size_t b = oracle_bound();
    if (n > b)
        throw oracle_limit(std::string(what) + ": " + std::to_string(n) + " elements exceed the oracle bound " +
                           std::to_string(b));
}

template <class I>
void require_positive(const interval_set<I>& f) {
    if (!f.empty() && f.min() < 1) throw invalid_input("set elements must be positive integers: " + f.str());
}

template <class I>
bool is_schreier(const interval_set<I>& f) {
    require_positive(f);
    return f.empty() || f.size() <= f.min();
}

template <class I>
bool is_maximal_schreier(const interval_set<I>& f) {
    if (!is_schreier(f)) throw invalid_input("set is not a Schreier set: " + f.str());
    return !f.empty() && f.size() == f.min();
}

// True iff g is a spread of f: the i-th element of f is at most the i-th element of g for every i.
template <class I>
bool is_spread(const interval_set<I>& f, const interval_set<I>& g) {
    if (f.size() != g.size()) throw invalid_input("spread comparison needs sets of equal size");
    const auto& a = f.intervals();
    const auto& b = g.intervals();
    std::size_t i = 0, j = 0;
    I off_a = 0, off_b = 0;
    // On each aligned piece both sequences increase by one per step, so the first pair decides the piece.
    while (i < a.size() && j < b.size()) {
        const I x = a[i].first + off_a;
        const I y = b[j].first + off_b;
        if (x > y) return false;
        const I left_a = a[i].second - x + 1;
        const I left_b = b[j].second - y + 1;
        const I step = left_a < left_b ? left_a : left_b;
        off_a += step;
        off_b += step;
        if (off_a > a[i].second - a[i].first) { ++i; off_a = 0; }
        if (off_b > b[j].second - b[j].first) { ++j; off_b = 0; }
    }
    return true;
}

template <class I>
bool is_successive(const interval_set<I>& a, const interval_set<I>& b) {
    return a.empty() || b.empty() || a.max() < b.min();
}

// Throws invalid_input unless c is a non-empty list of non-empty, admissible, successive sets.
template <class I>
void validate_chain(const basic_chain<I>& c) {
    if (c.empty()) throw invalid_input("a Schreier chain must contain at least one set");
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k].empty()) throw invalid_input("Schreier chains never contain the empty set");
        if (!is_schreier(c[k])) throw invalid_input("chain set " + c[k].str() + " is not admissible");
        if (k > 0 && !(c[k - 1].max() < c[k].min()))
            throw invalid_input("chain sets " + c[k - 1].str() + " and " + c[k].str() + " are not successive");
    }
}

template <class I>
interval_set<I> chain_union(const basic_chain<I>& c) {
    interval_set<I> u;
    for (const auto& f : c)
        for (const auto& [lo, hi] : f.intervals()) u.push_back_interval(lo, hi);
    return u;
}

template <class I>
struct covering_certificate {
    std::size_t count = 0;
    basic_chain<I> chain;  // empty iff covered is empty
    interval_set<I> covered;
};

// Greedy cover: cut the first min(min(rest), |rest|) elements of the remainder, repeatedly.
template <class I>
covering_certificate<I> tau1(const interval_set<I>& a) {
    require_positive(a);
    covering_certificate<I> cert;
    cert.covered = a;
    interval_set<I> rest = a;
    while (!rest.empty()) {
        const I k = rest.min() < rest.size() ? rest.min() : rest.size();
        cert.chain.push_back(rest.take_first(k));
        rest = rest.drop_first(k);
    }
    cert.count = cert.chain.size();
    return cert;
}

// Re-checks a certificate from scratch: valid chain, covers the set, all blocks but the last maximal.
template <class I>
bool verify_certificate(const covering_certificate<I>& cert) {
    if (cert.covered.empty()) return cert.count == 0 && cert.chain.empty();
    if (cert.chain.size() != cert.count) return false;
    try {
        validate_chain(cert.chain);
    } catch (const invalid_input&) {
        return false;
    }
    for (std::size_t k = 0; k + 1 < cert.chain.size(); ++k)
        if (!is_maximal_schreier(cert.chain[k])) return false;
    return cert.covered.subset_of(chain_union(cert.chain));
}

namespace detail {
inline std::size_t min_cover(const std::vector<std::int64_t>& e, std::size_t pos) {
    if (pos == e.size()) return 0;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::size_t end = pos; end < e.size(); ++end) {
        if (static_cast<std::int64_t>(end - pos + 1) > e[pos]) break;
        const std::size_t rest = min_cover(e, end + 1);
        if (rest + 1 < best) best = rest + 1;
    }
    return best;
}
}  // namespace detail

// Exhaustive reference: every chain of subsets covering a splits its sorted elements into consecutive blocks.
inline std::size_t tau1_oracle(const int_set& a) {
    require_positive(a);
    require_oracle_size(static_cast<std::size_t>(a.size()), "tau1_oracle");
    return detail::min_cover(a.elements(), 0);
}

// Visits every Schreier subset of s, including the empty set, in increasing bitmask order.
template <class Visitor>
void enumerate_schreier_subsets(const int_set& s, Visitor&& visit) {
    require_positive(s);
    require_oracle_size(static_cast<std::size_t>(s.size()), "enumerate_schreier_subsets");
    const auto e = s.elements();
    const std::uint32_t n = static_cast<std::uint32_t>(e.size());
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<std::int64_t> pick;
        for (std::uint32_t b = 0; b < n; ++b)
            if (mask >> b & 1u) pick.push_back(e[b]);
        if (pick.empty() || static_cast<std::int64_t>(pick.size()) <= pick.front())
            visit(int_set::from_elements(std::move(pick)));
    }
}

inline std::vector<int_set> schreier_subsets(const int_set& s) {
    std::vector<int_set> out;
    enumerate_schreier_subsets(s, [&](const int_set& f) { out.push_back(f); });
    return out;
}

namespace detail {
template <class Visitor>
void chains_from(const std::vector<std::int64_t>& e, std::size_t from, chain& cur, Visitor& visit) {
    const std::uint32_t n = static_cast<std::uint32_t>(e.size());
    for (std::uint32_t i = static_cast<std::uint32_t>(from); i < n; ++i) {
        const std::uint32_t tail_bits = n - i - 1;
        const std::uint32_t tail = tail_bits == 0 ? 0u : ((1u << tail_bits) - 1u) << (i + 1);
        // Submasks of the tail, smallest first via the complement walk.
        std::uint32_t sub = 0;
        while (true) {
            if (static_cast<std::int64_t>(__builtin_popcount(sub)) + 1 <= e[i]) {
                std::vector<std::int64_t> pick{e[i]};
                std::uint32_t last = i;
                for (std::uint32_t b = i + 1; b < n; ++b)
                    if (sub >> b & 1u) { pick.push_back(e[b]); last = b; }
                cur.push_back(int_set::from_elements(std::move(pick)));
                visit(static_cast<const chain&>(cur));
                chains_from(e, last + 1, cur, visit);
                cur.pop_back();
            }
            if (sub == tail) break;
            sub = (sub - tail) & tail;
        }
    }
}
}  // namespace detail

// Visits every Schreier chain whose union lies in s, each exactly once.
template <class Visitor>
void enumerate_chains(const int_set& s, Visitor&& visit) {
    require_positive(s);
    require_oracle_size(static_cast<std::size_t>(s.size()), "enumerate_chains");
    const auto e = s.elements();
    chain cur;
    detail::chains_from(e, 0, cur, visit);
}

inline std::vector<chain> chains_in(const int_set& s) {
    std::vector<chain> out;
    enumerate_chains(s, [&](const chain& c) { out.push_back(c); });
    return out;
}

// count successive maximal Schreier intervals, the first being [start, 2 start).
template <class I>
basic_chain<I> maximal_chain_from(const I& start, std::size_t count) {
    if (start < 1) throw invalid_input("maximal_chain_from needs start >= 1");
    if (count < 1) throw invalid_input("maximal_chain_from needs count >= 1");
    basic_chain<I> c;
    I s = start;
    for (std::size_t k = 0; k < count; ++k) {
        if constexpr (std::is_integral_v<I>) {
            if (s > std::numeric_limits<I>::max() / 2) throw invalid_input("maximal chain exceeds 64-bit indices");
        }
        c.push_back(interval_set<I>::range(s, I(2 * s - 1)));
        s = 2 * s;
    }
    return c;
}

}  // namespace schreier_lab

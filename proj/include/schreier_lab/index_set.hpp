#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "schreier_lab/errors.hpp"
#include "schreier_lab/interval_set.hpp"

namespace schreier_lab {

enum class index_rule { explicit_prefix, arithmetic, doubling_odd, doubling_even, union_of, mpb_l };

inline const char* to_string(index_rule r) {
    switch (r) {
        case index_rule::explicit_prefix: return "explicit";
        case index_rule::arithmetic: return "arithmetic";
        case index_rule::doubling_odd: return "doubling-odd";
        case index_rule::doubling_even: return "doubling-even";
        case index_rule::union_of: return "union";
        case index_rule::mpb_l: return "mpb-L";
    }
    return "explicit";
}

// Strictly increasing sequence of positive integers known through a materialized prefix.
// Generator rules extend on request; explicit prefixes never extrapolate.
template <class I>
class basic_index_set {
public:
    basic_index_set() = default;

    static basic_index_set explicit_prefix(interval_set<I> prefix, index_rule tag = index_rule::explicit_prefix) {
        if (!prefix.empty() && prefix.min() < 1) throw invalid_input("index sets contain positive integers only");
        basic_index_set s;
        s.rule_ = tag;
        s.prefix_ = std::move(prefix);
        return s;
    }

    static basic_index_set explicit_prefix(const std::vector<I>& elems) {
        for (std::size_t k = 1; k < elems.size(); ++k)
            if (!(elems[k - 1] < elems[k])) throw invalid_input("index set prefix must be strictly increasing");
        return explicit_prefix(interval_set<I>::from_elements(elems));
    }

    // {a, a+d, a+2d, ...}
    static basic_index_set arithmetic(const I& a, const I& d, const I& length = 0) {
        if (a < 1 || d < 1) throw invalid_input("arithmetic index sets need a >= 1 and d >= 1");
        basic_index_set s;
        s.rule_ = index_rule::arithmetic;
        s.a_ = a;
        s.d_ = d;
        s.ensure(length);
        return s;
    }

    // {2m - 1 : m in base}
    static basic_index_set doubling_odd(const basic_index_set& base) { return derived(index_rule::doubling_odd, {base}); }
    // {2m : m in base}
    static basic_index_set doubling_even(const basic_index_set& base) { return derived(index_rule::doubling_even, {base}); }

    static basic_index_set union_of(const basic_index_set& a, const basic_index_set& b) {
        return derived(index_rule::union_of, {a, b});
    }

    index_rule rule() const { return rule_; }
    const interval_set<I>& prefix() const { return prefix_; }
    const std::vector<basic_index_set>& children() const { return children_; }
    const I& start() const { return a_; }
    const I& step() const { return d_; }
    I length() const { return prefix_.size(); }

    // Extends the materialized prefix to at least len elements, or throws truncation_error.
    void ensure(const I& len) {
        if (prefix_.size() >= len) return;
        switch (rule_) {
            case index_rule::explicit_prefix:
            case index_rule::mpb_l:
                throw truncation_error("index set prefix has " + str(prefix_.size()) + " elements, " + str(len) +
                                       " requested");
            case index_rule::arithmetic: {
                const I have = prefix_.size();
                if (d_ == 1) {
                    prefix_.push_back_interval(I(a_ + have), I(a_ + len - 1));
                } else {
                    for (I k = have; k < len; ++k) prefix_.push_back_interval(I(a_ + k * d_), I(a_ + k * d_));
                }
                return;
            }
            case index_rule::doubling_odd:
            case index_rule::doubling_even:
                children_[0].ensure(len);
                rebuild();
                return;
            case index_rule::union_of: {
                // The first len elements of a union come from the first len of each part.
                for (auto& c : children_) {
                    try {
                        c.ensure(len);
                    } catch (const truncation_error&) {
                    }
                }
                rebuild();
                if (prefix_.size() < len)
                    throw truncation_error("union index set cannot materialize " + str(len) + " elements");
                return;
            }
        }
    }

    // Extends until every element <= bound is known.
    void ensure_through(const I& bound) {
        I len = prefix_.size();
        while (prefix_.empty() || prefix_.max() < bound) {
            len = len < 1 ? I(1) : I(len * 2);
            ensure(len);
        }
    }

    I nth(const I& j) const {
        if (j < 1) throw invalid_input("positions are 1-based");
        if (j > prefix_.size())
            throw truncation_error("position " + str(j) + " beyond materialized prefix of " + str(prefix_.size()));
        return prefix_.nth(j);
    }

    std::string label() const {
        switch (rule_) {
            case index_rule::arithmetic: return "arithmetic(" + str(a_) + "," + str(d_) + ")";
            case index_rule::doubling_odd: return "2(" + children_[0].label() + ")-1";
            case index_rule::doubling_even: return "2(" + children_[0].label() + ")";
            case index_rule::union_of: return children_[0].label() + "+" + children_[1].label();
            default: return to_string(rule_);
        }
    }

private:
    static std::string str(const I& v) {
        if constexpr (std::is_integral_v<I>) return std::to_string(v);
        else return v.str();
    }

    static basic_index_set derived(index_rule r, std::vector<basic_index_set> kids) {
        basic_index_set s;
        s.rule_ = r;
        s.children_ = std::move(kids);
        s.rebuild();
        return s;
    }

    void rebuild() {
        interval_set<I> out;
        if (rule_ == index_rule::doubling_odd || rule_ == index_rule::doubling_even) {
            const I shift = rule_ == index_rule::doubling_odd ? I(1) : I(0);
            for (const auto& [lo, hi] : children_[0].prefix_.intervals())
                for (I m = lo; m <= hi; ++m) out.push_back_interval(I(2 * m - shift), I(2 * m - shift));
        } else if (rule_ == index_rule::union_of) {
            // Only elements up to the smaller materialized maximum are certain.
            const auto& pa = children_[0].prefix_;
            const auto& pb = children_[1].prefix_;
            if (!pa.empty() && !pb.empty()) {
                const I cap = pa.max() < pb.max() ? pa.max() : pb.max();
                out = pa.unite(pb).intersect(interval_set<I>::range(I(1), cap));
            }
        }
        prefix_ = std::move(out);
    }

    index_rule rule_ = index_rule::explicit_prefix;
    interval_set<I> prefix_;
    I a_ = 1, d_ = 1;
    std::vector<basic_index_set> children_;
};

using index_set = basic_index_set<std::int64_t>;
using big_index_set = basic_index_set<big_int>;

// {m_j : j in J}
template <class I>
interval_set<I> select(const basic_index_set<I>& m, const interval_set<I>& j) {
    if (j.empty()) return {};
    if (j.min() < 1) throw invalid_input("positions are 1-based");
    if (j.max() > m.length())
        throw truncation_error("selection reaches position beyond the materialized prefix");
    interval_set<I> out;
    for (const auto& [lo, hi] : j.intervals()) {
        const auto part = m.prefix().slice(lo, hi);
        for (const auto& [a, b] : part.intervals()) out.push_back_interval(a, b);
    }
    return out;
}

}  // namespace schreier_lab

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "schreier_lab/errors.hpp"
#include "schreier_lab/scalar.hpp"

namespace schreier_lab {

// Finite set of integers stored as sorted, disjoint, non-adjacent closed intervals.
// I is std::int64_t for ordinary inputs and big_int for the sets of the interval partition.
template <class I>
class interval_set {
public:
    using value_type = I;
    using interval = std::pair<I, I>;

    interval_set() = default;

    static interval_set from_elements(std::vector<I> elems) {
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
        interval_set s;
        for (const I& e : elems) s.push_back_interval(e, e);
        return s;
    }

    // Intervals may overlap or arrive in any order; empty intervals (lo > hi) are dropped.
    static interval_set from_intervals(std::vector<interval> iv) {
        iv.erase(std::remove_if(iv.begin(), iv.end(), [](const interval& x) { return x.first > x.second; }), iv.end());
        std::sort(iv.begin(), iv.end());
        interval_set s;
        for (const auto& [lo, hi] : iv) s.push_back_interval(lo, hi);
        return s;
    }

    static interval_set range(const I& lo, const I& hi) {
        interval_set s;
        if (lo <= hi) s.push_back_interval(lo, hi);
        return s;
    }

    const std::vector<interval>& intervals() const { return iv_; }
    bool empty() const { return iv_.empty(); }
    const I& size() const { return size_; }
    const I& min() const {
        if (empty()) throw invalid_input("min of empty set");
        return iv_.front().first;
    }
    const I& max() const {
        if (empty()) throw invalid_input("max of empty set");
        return iv_.back().second;
    }

    bool contains(const I& x) const {
        auto it = std::upper_bound(iv_.begin(), iv_.end(), x, [](const I& v, const interval& p) { return v < p.first; });
        if (it == iv_.begin()) return false;
        --it;
        return x <= it->second;
    }

    // k-th smallest element, 1-based.
    I nth(const I& k) const {
        if (k < 1 || k > size_) throw truncation_error("rank out of range");
        I left = k;
        for (const auto& [lo, hi] : iv_) {
            const I len = hi - lo + 1;
            if (left <= len) return lo + left - 1;
            left -= len;
        }
        throw truncation_error("rank out of range");
    }

    // Number of elements <= x.
    I rank_of(const I& x) const {
        I r = 0;
        for (const auto& [lo, hi] : iv_) {
            if (x < lo) break;
            r += (x < hi ? x : hi) - lo + 1;
        }
        return r;
    }

    // Elements with ranks in [k_lo, k_hi], 1-based inclusive.
    interval_set slice(const I& k_lo, const I& k_hi) const {
        interval_set out;
        if (k_lo > k_hi) return out;
        if (k_lo < 1 || k_hi > size_) throw truncation_error("slice beyond materialized elements");
        I before = 0;
        for (const auto& [lo, hi] : iv_) {
            const I len = hi - lo + 1;
            const I first_rank = before + 1;
            const I last_rank = before + len;
            before = last_rank;
            if (last_rank < k_lo) continue;
            if (first_rank > k_hi) break;
            const I a = k_lo > first_rank ? I(lo + (k_lo - first_rank)) : lo;
            const I b = k_hi < last_rank ? I(lo + (k_hi - first_rank)) : hi;
            out.push_back_interval(a, b);
        }
        return out;
    }

    interval_set take_first(const I& k) const { return k >= size_ ? *this : slice(I(1), k); }
    interval_set drop_first(const I& k) const { return k >= size_ ? interval_set{} : slice(I(k + 1), size_); }

    interval_set unite(const interval_set& o) const {
        std::vector<interval> all = iv_;
        all.insert(all.end(), o.iv_.begin(), o.iv_.end());
        return from_intervals(std::move(all));
    }

    interval_set intersect(const interval_set& o) const {
        interval_set out;
        std::size_t i = 0, j = 0;
        while (i < iv_.size() && j < o.iv_.size()) {
            const I lo = std::max(iv_[i].first, o.iv_[j].first);
            const I hi = std::min(iv_[i].second, o.iv_[j].second);
            if (lo <= hi) out.push_back_interval(lo, hi);
            if (iv_[i].second < o.iv_[j].second) ++i;
            else ++j;
        }
        return out;
    }

    interval_set minus(const interval_set& o) const {
        interval_set out;
        std::size_t j = 0;
        for (auto [lo, hi] : iv_) {
            while (j < o.iv_.size() && o.iv_[j].second < lo) ++j;
            std::size_t k = j;
            I cur = lo;
            while (k < o.iv_.size() && o.iv_[k].first <= hi) {
                if (o.iv_[k].first > cur) out.push_back_interval(cur, I(o.iv_[k].first - 1));
                if (o.iv_[k].second >= cur) cur = o.iv_[k].second + 1;
                if (cur > hi) break;
                ++k;
            }
            if (cur <= hi) out.push_back_interval(cur, hi);
        }
        return out;
    }

    bool subset_of(const interval_set& o) const { return intersect(o).size_ == size_; }

    std::vector<I> elements() const {
        std::vector<I> out;
        for (const auto& [lo, hi] : iv_)
            for (I x = lo; x <= hi; ++x) out.push_back(x);
        return out;
    }

    template <class F>
    void for_each(F&& f) const {
        for (const auto& [lo, hi] : iv_)
            for (I x = lo; x <= hi; ++x) f(x);
    }

    friend bool operator==(const interval_set& a, const interval_set& b) { return a.iv_ == b.iv_; }
    friend bool operator!=(const interval_set& a, const interval_set& b) { return !(a == b); }

    // Lexicographic order of the increasing element lists.
    friend bool operator<(const interval_set& a, const interval_set& b) { return compare(a, b) < 0; }

    static int compare(const interval_set& a, const interval_set& b) {
        std::size_t i = 0, j = 0;
        I pa = 0, pb = 0;
        bool has_a = !a.iv_.empty(), has_b = !b.iv_.empty();
        if (has_a) pa = a.iv_[0].first;
        if (has_b) pb = b.iv_[0].first;
        while (has_a && has_b) {
            if (pa != pb) return pa < pb ? -1 : 1;
            // Both interval tails coincide up to the shorter end.
            const I end = std::min(a.iv_[i].second, b.iv_[j].second);
            if (a.iv_[i].second == end) {
                ++i;
                has_a = i < a.iv_.size();
                if (has_a) pa = a.iv_[i].first;
            } else {
                pa = end + 1;
            }
            if (b.iv_[j].second == end) {
                ++j;
                has_b = j < b.iv_.size();
                if (has_b) pb = b.iv_[j].first;
            } else {
                pb = end + 1;
            }
        }
        if (has_a == has_b) return 0;
        return has_a ? 1 : -1;
    }

    std::string str() const {
        std::string s = "{";
        bool first = true;
        for (const auto& [lo, hi] : iv_) {
            if (!first) s += ",";
            first = false;
            if (lo == hi) s += to_str(lo);
            else s += to_str(lo) + ".." + to_str(hi);
        }
        return s + "}";
    }

    // Appends [lo, hi]; requires lo to exceed every stored element.
    void push_back_interval(const I& lo, const I& hi) {
        if (lo > hi) return;
        if (!iv_.empty() && lo <= iv_.back().second + 1) {
            if (hi > iv_.back().second) {
                size_ += hi - iv_.back().second;
                iv_.back().second = hi;
            }
            return;
        }
        iv_.emplace_back(lo, hi);
        size_ += hi - lo + 1;
    }

private:
    static std::string to_str(const I& v) {
        if constexpr (std::is_integral_v<I>) return std::to_string(v);
        else return v.str();
    }

    std::vector<interval> iv_;
    I size_ = 0;
};

using int_set = interval_set<std::int64_t>;
using big_set = interval_set<big_int>;

inline big_set to_big(const int_set& s) {
    big_set out;
    for (const auto& [lo, hi] : s.intervals()) out.push_back_interval(big_int(lo), big_int(hi));
    return out;
}

// Throws truncation_error if an element does not fit in 64 bits.
inline int_set to_small(const big_set& s) {
    int_set out;
    const big_int lim = std::numeric_limits<std::int64_t>::max();
    for (const auto& [lo, hi] : s.intervals()) {
        if (hi > lim) throw truncation_error("set element exceeds 64-bit range");
        out.push_back_interval(lo.convert_to<std::int64_t>(), hi.convert_to<std::int64_t>());
    }
    return out;
}

}  // namespace schreier_lab

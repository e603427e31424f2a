#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "schreier_lab/errors.hpp"
#include "schreier_lab/interval_set.hpp"
#include "schreier_lab/scalar.hpp"

namespace schreier_lab {

// A maximal stretch of consecutive indices carrying one value.
template <class S>
struct value_run {
    std::int64_t first = 1;
    std::int64_t count = 1;
    S value{};

    std::int64_t last() const { return first + count - 1; }
    friend bool operator==(const value_run& a, const value_run& b) {
        return a.first == b.first && a.count == b.count && a.value == b.value;
    }
};

// Finitely supported sequence indexed from 1, run-length encoded.
// Invariants: runs sorted and disjoint, no zero values, adjacent runs never mergeable.
template <class S>
class coeff_vector {
public:
    using scalar = S;
    using run = value_run<S>;
    using ops = scalar_ops<S>;

    coeff_vector() = default;

    static coeff_vector from_runs(std::vector<run> runs) {
        std::sort(runs.begin(), runs.end(), [](const run& a, const run& b) { return a.first < b.first; });
        coeff_vector v;
        for (auto& r : runs) {
            if (r.first < 1) throw invalid_input("vector indices must be positive");
            if (r.count < 1) throw invalid_input("run length must be positive");
            if (!v.runs_.empty() && r.first <= v.runs_.back().last())
                throw invalid_input("duplicate vector index " + std::to_string(r.first));
            if (ops::is_zero(r.value)) continue;
            v.append(std::move(r));
        }
        return v;
    }

    static coeff_vector from_entries(std::vector<std::pair<std::int64_t, S>> entries) {
        std::vector<run> runs;
        runs.reserve(entries.size());
        for (auto& [i, x] : entries) runs.push_back(run{i, 1, std::move(x)});
        return from_runs(std::move(runs));
    }

    // Dense values at indices 1..n.
    static coeff_vector dense(const std::vector<S>& values) {
        std::vector<run> runs;
        for (std::size_t k = 0; k < values.size(); ++k)
            runs.push_back(run{static_cast<std::int64_t>(k + 1), 1, values[k]});
        return from_runs(std::move(runs));
    }

    // value on every element of f.
    static coeff_vector constant_on(const int_set& f, const S& value) {
        std::vector<run> runs;
        for (const auto& [lo, hi] : f.intervals()) runs.push_back(run{lo, hi - lo + 1, value});
        return from_runs(std::move(runs));
    }

    const std::vector<run>& runs() const { return runs_; }
    bool empty() const { return runs_.empty(); }

    std::int64_t support_size() const {
        std::int64_t n = 0;
        for (const auto& r : runs_) n += r.count;
        return n;
    }

    int_set support() const {
        int_set s;
        for (const auto& r : runs_) s.push_back_interval(r.first, r.last());
        return s;
    }

    std::int64_t min_index() const {
        if (empty()) throw invalid_input("empty vector has no support");
        return runs_.front().first;
    }
    std::int64_t max_index() const {
        if (empty()) throw invalid_input("empty vector has no support");
        return runs_.back().last();
    }

    S at(std::int64_t i) const {
        auto it = std::upper_bound(runs_.begin(), runs_.end(), i, [](std::int64_t v, const run& r) { return v < r.first; });
        if (it == runs_.begin()) return S(0);
        --it;
        return i <= it->last() ? it->value : S(0);
    }

    std::vector<std::pair<std::int64_t, S>> entries() const {
        std::vector<std::pair<std::int64_t, S>> out;
        for (const auto& r : runs_)
            for (std::int64_t k = 0; k < r.count; ++k) out.emplace_back(r.first + k, r.value);
        return out;
    }

    // True iff |x| is non-increasing along the support.
    bool abs_nonincreasing() const {
        for (std::size_t k = 1; k < runs_.size(); ++k)
            if (ops::abs(runs_[k].value) > ops::abs(runs_[k - 1].value)) return false;
        return true;
    }

    coeff_vector abs() const {
        coeff_vector out;
        for (const auto& r : runs_) out.append(run{r.first, r.count, ops::abs(r.value)});
        return out;
    }

    coeff_vector scaled(const S& c) const {
        if (ops::is_zero(c)) return {};
        coeff_vector out;
        for (const auto& r : runs_) out.append(run{r.first, r.count, S(r.value * c)});
        return out;
    }

    // Entrywise |x|^p.
    coeff_vector powered(const exponent& p) const {
        coeff_vector out;
        for (const auto& r : runs_) out.append(run{r.first, r.count, ops::pow(ops::abs(r.value), p)});
        return out;
    }

    coeff_vector restricted(const int_set& f) const {
        coeff_vector out;
        for (const auto& r : runs_) {
            const int_set part = f.intersect(int_set::range(r.first, r.last()));
            for (const auto& [lo, hi] : part.intervals()) out.append(run{lo, hi - lo + 1, r.value});
        }
        return out;
    }

    friend coeff_vector operator+(const coeff_vector& a, const coeff_vector& b) { return combine(a, b, false); }
    friend coeff_vector operator-(const coeff_vector& a, const coeff_vector& b) { return combine(a, b, true); }
    friend bool operator==(const coeff_vector& a, const coeff_vector& b) { return a.runs_ == b.runs_; }

    template <class T>
    coeff_vector<T> convert() const {
        std::vector<value_run<T>> out;
        for (const auto& r : runs_) out.push_back(value_run<T>{r.first, r.count, convert_scalar<T>(r.value)});
        return coeff_vector<T>::from_runs(std::move(out));
    }

private:
    template <class T>
    static T convert_scalar(const S& v) {
        if constexpr (std::is_same_v<T, S>) return v;
        else if constexpr (std::is_same_v<T, double>) return to_double(v);
        else return T(v);
    }

    // Appends a run beyond the current support, merging with the last run when contiguous and equal.
    void append(run r) {
        if (ops::is_zero(r.value)) return;
        if (!runs_.empty() && runs_.back().last() + 1 == r.first && runs_.back().value == r.value) {
            runs_.back().count += r.count;
            return;
        }
        runs_.push_back(std::move(r));
    }

    static coeff_vector combine(const coeff_vector& a, const coeff_vector& b, bool subtract) {
        std::vector<std::int64_t> cuts;
        for (const auto* v : {&a, &b})
            for (const auto& r : v->runs_) {
                cuts.push_back(r.first);
                cuts.push_back(r.last() + 1);
            }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        coeff_vector out;
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            const S va = a.at(cuts[k]);
            const S vb = b.at(cuts[k]);
            const S v = subtract ? S(va - vb) : S(va + vb);
            out.append(run{cuts[k], cuts[k + 1] - cuts[k], v});
        }
        return out;
    }

    template <class>
    friend class coeff_vector;

    std::vector<run> runs_;
};

using exact_vector = coeff_vector<rational>;
using float_vector = coeff_vector<double>;

}  // namespace schreier_lab

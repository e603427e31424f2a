#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "schreier_lab/coeff_vector.hpp"
#include "schreier_lab/constructions.hpp"
#include "schreier_lab/errors.hpp"
#include "schreier_lab/gl_index.hpp"
#include "schreier_lab/index_set.hpp"
#include "schreier_lab/norms.hpp"
#include "schreier_lab/schreier.hpp"

namespace schreier_lab::io {

using json = nlohmann::json;  // std::map objects, so keys come out sorted

inline json parse_json(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw invalid_input(std::string("cannot parse ") + what + ": " + e.what());
    }
}

// Scalars arrive as JSON numbers or strings ("3/4", "-1.5"). Exact mode reads the literal text.
template <class S>
S parse_scalar(const json& v) {
    std::string text;
    if (v.is_string()) text = v.get<std::string>();
    else if (v.is_number()) text = v.dump();
    else throw invalid_input("expected a number, got " + v.dump());
    if constexpr (is_exact_v<S>) {
        return parse_rational(text);
    } else {
        if (v.is_number()) return v.get<double>();
        const auto slash = text.find('/');
        if (slash != std::string::npos) return to_double(parse_rational(text));
        try {
            std::size_t used = 0;
            const double d = std::stod(text, &used);
            if (used != text.size()) throw invalid_input("not a number: '" + text + "'");
            return d;
        } catch (const std::logic_error&) {
            throw invalid_input("not a number: '" + text + "'");
        }
    }
}

inline std::int64_t parse_index(const json& v) {
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        try {
            std::size_t used = 0;
            const long long k = std::stoll(s, &used);
            if (used == s.size()) return k;
        } catch (const std::logic_error&) {
        }
    }
    throw invalid_input("expected an integer index, got " + v.dump());
}

// Dense array [x_1, x_2, ...] or sparse object {"index": value}.
template <class S>
coeff_vector<S> parse_vector(const json& v) {
    if (v.is_array()) {
        std::vector<S> vals;
        for (const auto& e : v) vals.push_back(parse_scalar<S>(e));
        return coeff_vector<S>::dense(vals);
    }
    if (v.is_object()) {
        std::vector<std::pair<std::int64_t, S>> entries;
        for (const auto& [k, e] : v.items()) entries.emplace_back(parse_index(json(k)), parse_scalar<S>(e));
        return coeff_vector<S>::from_entries(std::move(entries));
    }
    throw invalid_input("a vector is a JSON array or an index->value object");
}

template <class S>
coeff_vector<S> parse_vector(const std::string& text) {
    return parse_vector<S>(parse_json(text, "vector"));
}

template <class S>
coeff_vector<S> parse_vector(const char* text) {
    return parse_vector<S>(std::string(text));
}

// [1,2,3] lists elements; [[lo,hi],...] lists closed intervals.
inline int_set parse_set(const json& v) {
    if (!v.is_array()) throw invalid_input("a set is a JSON array");
    std::vector<std::pair<std::int64_t, std::int64_t>> ivs;
    for (const auto& e : v) {
        if (e.is_array()) {
            if (e.size() != 2) throw invalid_input("intervals are [lo, hi] pairs");
            ivs.emplace_back(parse_index(e[0]), parse_index(e[1]));
            if (ivs.back().first > ivs.back().second) throw invalid_input("interval with lo > hi");
        } else {
            const auto k = parse_index(e);
            ivs.emplace_back(k, k);
        }
    }
    int_set s = int_set::from_intervals(ivs);
    require_positive(s);
    return s;
}

inline int_set parse_set(const std::string& text) { return parse_set(parse_json(text, "set")); }
inline int_set parse_set(const char* text) { return parse_set(std::string(text)); }

// Rules: all, even, odd, arith:a:d, or a JSON array giving an explicit prefix.
inline index_set parse_index_set(const std::string& text) {
    if (text == "all") return index_set::arithmetic(1, 1);
    if (text == "even") return index_set::arithmetic(2, 2);
    if (text == "odd") return index_set::arithmetic(1, 2);
    if (text.rfind("arith:", 0) == 0) {
        const auto colon = text.find(':', 6);
        if (colon == std::string::npos) throw invalid_input("arith rule is arith:a:d");
        try {
            return index_set::arithmetic(std::stoll(text.substr(6, colon - 6)), std::stoll(text.substr(colon + 1)));
        } catch (const std::logic_error&) {
            throw invalid_input("arith rule is arith:a:d");
        }
    }
    const json v = parse_json(text, "index set");
    if (!v.is_array()) throw invalid_input("index set must be a rule name or a JSON array");
    std::vector<std::int64_t> elems;
    for (const auto& e : v) elems.push_back(parse_index(e));
    return index_set::explicit_prefix(elems);
}

// Small sets print as element lists; anything large prints as [lo, hi] intervals.
inline constexpr std::int64_t element_list_limit = 64;

inline json to_json(const int_set& s) {
    json out = json::array();
    if (s.size() <= element_list_limit) {
        s.for_each([&](std::int64_t k) { out.push_back(k); });
    } else {
        for (const auto& [lo, hi] : s.intervals()) out.push_back(json::array({lo, hi}));
    }
    return out;
}

// Big integers are strings so no reader truncates them.
inline json to_json(const big_set& s) {
    json out = json::array();
    for (const auto& [lo, hi] : s.intervals()) out.push_back(json::array({lo.str(), hi.str()}));
    return out;
}

inline json to_json(const chain& c) {
    json out = json::array();
    for (const auto& f : c) out.push_back(to_json(f));
    return out;
}

template <class S>
json scalar_json(const S& v) {
    if constexpr (is_exact_v<S>) return format_rational(v);
    else return v;
}

template <class S>
json to_json(const coeff_vector<S>& x) {
    json out = json::object();
    for (const auto& r : x.runs())
        for (std::int64_t k = 0; k < r.count; ++k) out[std::to_string(r.first + k)] = scalar_json(r.value);
    return out;
}

template <class S>
json to_json(const norm_result<S>& r) {
    json out;
    out["space"] = to_string(r.space);
    out["p"] = r.p.str();
    out["mode"] = to_string(r.mode);
    out["value"] = r.value;
    out["value_pow"] = scalar_json(r.value_pow);
    out["zero"] = r.zero;
    out["witness"] = r.space == space_kind::sp ? to_json(r.witness_set) : to_json(r.witness_chain);
    return out;
}

inline json to_json(const covering_certificate<std::int64_t>& c) {
    return json{{"count", c.count}, {"chain", to_json(c.chain)}, {"covered", to_json(c.covered)}};
}

inline json to_json(const index_set& s) {
    return json{{"rule", s.label()}, {"prefix", to_json(s.prefix())}};
}

inline json to_json(const truncated_gl_index& g, const index_set& m, const index_set& n) {
    return json{{"value", g.value},
                {"K", g.K},
                {"witness", to_json(g.witness)},
                {"M_selected", to_json(select(m, g.witness))},
                {"N_selected", to_json(select(n, g.witness))},
                {"certificate", "lower bound at truncation K"}};
}

inline json to_json(const mpb_partition& part) {
    json out;
    out["n_max"] = part.n_max;
    // F and G hold one [lo, hi] pair per level; F_1 is empty and prints as [].
    json fs = json::array(), gs = json::array();
    json rows = json::array();
    for (std::size_t n = 1; n <= part.n_max; ++n) {
        const json f = to_json(part.f(n));
        fs.push_back(f.empty() ? json::array() : f[0]);
        gs.push_back(to_json(part.g(n))[0]);
        rows.push_back(json{{"n", n},
                            {"F", to_json(part.f(n))},
                            {"G", to_json(part.g(n))},
                            {"size_F", part.f(n).size().str()},
                            {"size_G", part.g(n).size().str()},
                            {"tau1_G", tau1(part.g(n)).count}});
    }
    out["F"] = std::move(fs);
    out["G"] = std::move(gs);
    out["rows"] = std::move(rows);
    return out;
}

inline json to_json(const lemma63_result& w) {
    return json{{"m", w.m},
                {"J", to_json(w.J)},
                {"L_M_selected", to_json(w.lm_selected)},
                {"L_N_selected", to_json(w.ln_selected)},
                {"tau1", w.tau}};
}

}  // namespace schreier_lab::io

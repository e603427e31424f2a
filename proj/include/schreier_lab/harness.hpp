#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "schreier_lab/constructions.hpp"
#include "schreier_lab/gl_index.hpp"
#include "schreier_lab/json_io.hpp"
#include "schreier_lab/norms.hpp"
#include "schreier_lab/schreier.hpp"

namespace schreier_lab::harness {

using io::json;

// One verified statement. `claim` names the inequality or identity so a failure is self-describing.
struct check_record {
    std::string id;
    std::string claim;
    std::string input;
    std::string expected;
    std::string observed;
    bool pass = false;
};

struct suite_options {
    std::uint64_t seed = 1;
    unsigned threads = 0;                // 0 = hardware concurrency; never affects report bytes
    std::size_t max_support = 9;         // norm-oracle random supports
    std::size_t exhaustive_window = 7;   // norm-oracle {0,+-1} sweep
    std::size_t count = 0;               // random instances per parameter; 0 = suite default
    std::size_t m_max = 20;              // lemma22 chain lengths
    unsigned k_max = 10;                 // jameson extremal family
    std::size_t n_max = 25;              // mpb
    std::int64_t window = 8;             // corollary64
    std::int64_t K_max = 12;             // domination and gl-bounds truncation
};

struct suite_report {
    std::string suite;
    json params;
    std::vector<check_record> records;
    double seconds = 0.0;

    std::size_t failures() const {
        return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.pass; }));
    }
    bool ok() const { return failures() == 0; }

    // Timing is excluded so equal seeds give equal bytes.
    json to_json() const {
        json recs = json::array();
        for (const auto& r : records)
            recs.push_back(json{{"id", r.id},
                                {"claim", r.claim},
                                {"input", r.input},
                                {"expected", r.expected},
                                {"observed", r.observed},
                                {"pass", r.pass}});
        return json{{"suite", suite},
                    {"params", params},
                    {"records", std::move(recs)},
                    {"summary", json{{"checks", records.size()}, {"failures", failures()}}}};
    }

    std::string json_text() const { return to_json().dump(1) + "\n"; }

    std::string csv() const {
        auto quote = [](const std::string& s) {
            std::string q = "\"";
            for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
            return q + "\"";
        };
        std::ostringstream out;
        out << "id,claim,pass,expected,observed,input\n";
        for (const auto& r : records)
            out << quote(r.id) << ',' << quote(r.claim) << ',' << (r.pass ? "PASS" : "FAIL") << ','
                << quote(r.expected) << ',' << quote(r.observed) << ',' << quote(r.input) << '\n';
        return out.str();
    }
};

using job = std::function<std::vector<check_record>(std::mt19937_64&)>;

// Runs jobs on a pool. Job k always sees the generator seeded from (seed, suite, k), and results are
// concatenated in job order, so output is independent of scheduling and thread count.
inline std::vector<check_record> run_jobs(const std::vector<job>& jobs, const std::string& suite, std::uint64_t seed,
                                          unsigned threads) {
    std::vector<std::vector<check_record>> results(jobs.size());
    std::atomic<std::size_t> next{0};
    const std::uint32_t tag = static_cast<std::uint32_t>(std::accumulate(
        suite.begin(), suite.end(), std::uint32_t(0), [](std::uint32_t h, char c) { return h * 131u + std::uint8_t(c); }));
    auto worker = [&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) {
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), tag,
                              static_cast<std::uint32_t>(k)};
            std::mt19937_64 rng(seq);
            try {
                results[k] = jobs[k](rng);
            } catch (const std::exception& e) {
                results[k] = {check_record{"job-" + std::to_string(k), "job completes", "", "no exception",
                                           std::string("threw: ") + e.what(), false}};
            }
        }
    };
    unsigned n = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs.size(), 1)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    std::vector<check_record> out;
    for (auto& r : results)
        for (auto& c : r) out.push_back(std::move(c));
    return out;
}

namespace detail {

inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Uniform on {-4..4} minus 0.
inline rational exact_entry(std::mt19937_64& rng) {
    const std::int64_t v = uniform(rng, 1, 8);
    return rational(v <= 4 ? v - 5 : v - 4);
}

inline double float_entry(std::mt19937_64& rng) {
    double v = 0.0;
    while (v == 0.0) v = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
    return v;
}

inline std::vector<std::int64_t> sample_support(std::mt19937_64& rng, std::size_t size, std::int64_t window) {
    std::vector<std::int64_t> all(static_cast<std::size_t>(window));
    std::iota(all.begin(), all.end(), 1);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(std::min(size, all.size()));
    std::sort(all.begin(), all.end());
    return all;
}

template <class S>
coeff_vector<S> random_vector(std::mt19937_64& rng, std::size_t max_support, std::int64_t window) {
    const auto size = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_support)));
    std::vector<std::pair<std::int64_t, S>> e;
    for (auto i : sample_support(rng, size, window)) {
        if constexpr (is_exact_v<S>) e.emplace_back(i, exact_entry(rng));
        else e.emplace_back(i, float_entry(rng));
    }
    return coeff_vector<S>::from_entries(std::move(e));
}

// Strictly increasing prefix with a random start in 1..6 and gaps in 1..4.
inline std::vector<std::int64_t> random_prefix(std::mt19937_64& rng, std::int64_t len) {
    std::vector<std::int64_t> out;
    std::int64_t v = uniform(rng, 1, 6);
    for (std::int64_t k = 0; k < len; ++k) {
        out.push_back(v);
        v += uniform(rng, 1, 4);
    }
    return out;
}

template <class S>
std::string digest(const coeff_vector<S>& x) {
    std::string s = "{";
    bool first = true;
    for (const auto& r : x.runs()) {
        if (!first) s += ",";
        first = false;
        s += std::to_string(r.first);
        if (r.count > 1) s += ".." + std::to_string(r.last());
        s += ":" + (is_exact_v<S> ? scalar_ops<S>::str(r.value) : format_double(to_double(r.value)));
    }
    return s + "}";
}

inline std::string digest(const std::vector<std::int64_t>& v) {
    std::string s = "[";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
    return s + "]";
}

template <class S>
std::string show(const S& v) {
    if constexpr (is_exact_v<S>) return format_rational(v);
    else return format_double(v);
}

// Counts failures over a batch and keeps the first offending input.
struct tally {
    std::size_t checks = 0, failures = 0;
    std::string first_failure;
    void add(bool ok, const std::string& what) {
        ++checks;
        if (!ok && failures++ == 0) first_failure = what;
    }
    check_record record(std::string id, std::string claim, std::string input) const {
        return check_record{std::move(id), std::move(claim), std::move(input), "0 mismatches",
                            std::to_string(failures) + " mismatches in " + std::to_string(checks) +
                                (failures ? "; first: " + first_failure : ""),
                            failures == 0};
    }
};

struct norm_config {
    space_kind space;
    unsigned p;
    std::string name() const { return std::string(to_string(space)) + std::to_string(p); }
};

inline const std::vector<norm_config>& norm_configs() {
    static const std::vector<norm_config> c{
        {space_kind::sp, 1}, {space_kind::sp, 2}, {space_kind::sp, 3}, {space_kind::bp, 2}, {space_kind::bp, 3}};
    return c;
}

// Fast norm against the exhaustive oracle, plus re-evaluation of the returned witness.
template <class S>
bool oracle_agrees(const coeff_vector<S>& x, const norm_config& cfg, std::string& why) {
    const exponent p(cfg.p);
    const auto o = oracle_norm(x, p, cfg.space);
    S fast{}, witness{};
    if (cfg.space == space_kind::sp) {
        const auto r = schreier_norm(x, p);
        fast = r.value_pow;
        witness = r.zero ? S(0) : mu_p_pow(x, r.witness_set, p);
    } else {
        const auto r = baernstein_norm(x, p);
        fast = r.value_pow;
        witness = r.zero ? S(0) : beta_p_pow(x, r.witness_chain, p);
    }
    const bool ok = is_exact_v<S> ? (fast == o.value_pow && witness == fast)
                                  : (close_rel(to_double(fast), to_double(o.value_pow)) &&
                                     close_rel(to_double(witness), to_double(fast)));
    if (!ok) why = digest(x) + " fast " + show(fast) + " oracle " + show(o.value_pow) + " witness " + show(witness);
    return ok;
}

}  // namespace detail

// ---------------------------------------------------------------------------------------------
// Suites

inline suite_report suite_norm_oracle(const suite_options& o) {
    const std::size_t count = o.count ? o.count : 500;
    const std::size_t w = o.exhaustive_window;
    std::vector<job> jobs;
    for (const auto& cfg : detail::norm_configs())
        for (bool exact : {true, false})
            jobs.push_back([cfg, exact, w](std::mt19937_64&) {
                detail::tally t;
                std::size_t total = 1;
                for (std::size_t k = 0; k < w; ++k) total *= 3;
                for (std::size_t code = 0; code < total; ++code) {
                    std::vector<std::pair<std::int64_t, rational>> e;
                    std::size_t c = code;
                    for (std::size_t i = 1; i <= w; ++i, c /= 3)
                        if (c % 3) e.emplace_back(static_cast<std::int64_t>(i), rational(c % 3 == 1 ? 1 : -1));
                    const auto x = exact_vector::from_entries(std::move(e));
                    std::string why;
                    const bool ok = exact ? detail::oracle_agrees(x, cfg, why)
                                          : detail::oracle_agrees(x.convert<double>(), cfg, why);
                    t.add(ok, why);
                }
                return std::vector<check_record>{t.record("exhaustive-" + cfg.name() + (exact ? "-exact" : "-float"),
                                                          "fast norm equals exhaustive oracle",
                                                          "all {0,+-1} vectors on {1.." + std::to_string(w) + "}")};
            });
    const std::size_t ms = o.max_support;
    for (const auto& cfg : detail::norm_configs())
        for (std::size_t i = 0; i < count; ++i)
            jobs.push_back([cfg, i, ms](std::mt19937_64& rng) {
                std::vector<check_record> out;
                const std::int64_t window = static_cast<std::int64_t>(2 * ms);
                const auto xe = detail::random_vector<rational>(rng, ms, window);
                const auto xf = detail::random_vector<double>(rng, ms, window);
                std::string why;
                bool ok = detail::oracle_agrees(xe, cfg, why);
                out.push_back({"random-" + cfg.name() + "-exact-" + std::to_string(i), "fast norm equals exhaustive oracle",
                               detail::digest(xe), "equal", ok ? "equal" : why, ok});
                why.clear();
                ok = detail::oracle_agrees(xf, cfg, why);
                out.push_back({"random-" + cfg.name() + "-float-" + std::to_string(i),
                               "fast norm equals exhaustive oracle within 1e-9", detail::digest(xf), "equal",
                               ok ? "equal" : why, ok});
                return out;
            });
    suite_report rep;
    rep.suite = "norm-oracle";
    rep.params = json{{"seed", o.seed}, {"count", count}, {"max_support", ms}, {"exhaustive_window", w}};
    rep.records = run_jobs(jobs, rep.suite, o.seed, o.threads);
    return rep;
}

inline suite_report suite_tau_oracle(const suite_options& o) {
    const std::size_t count = o.count ? o.count : 10000;
    std::vector<job> jobs;
    auto check = [](const int_set& a, detail::tally& t) {
        const auto cert = tau1(a);
        const std::size_t ref = tau1_oracle(a);
        t.add(cert.count == ref && verify_certificate(cert),
              a.str() + " greedy " + std::to_string(cert.count) + " oracle " + std::to_string(ref));
    };
    for (std::int64_t lo = 0; lo < 512; lo += 64)
        jobs.push_back([lo, check](std::mt19937_64&) {
            detail::tally t;
            for (std::int64_t mask = lo; mask < lo + 64; ++mask) {
                std::vector<std::int64_t> e;
                for (std::int64_t i = 0; i < 9; ++i)
                    if (mask >> i & 1) e.push_back(i + 1);
                check(int_set::from_elements(e), t);
            }
            return std::vector<check_record>{t.record("exhaustive-" + std::to_string(lo / 64),
                                                      "greedy covering number equals exhaustive minimum",
                                                      "subsets of {1..9} with masks " + std::to_string(lo) + ".." +
                                                          std::to_string(lo + 63))};
        });
    const std::size_t batch = 500;
    for (std::size_t b = 0; b * batch < count; ++b)
        jobs.push_back([b, batch, count, check](std::mt19937_64& rng) {
            detail::tally t;
            const std::size_t n = std::min(batch, count - b * batch);
            for (std::size_t k = 0; k < n; ++k) {
                std::vector<std::int64_t> e;
                for (std::int64_t i = 1; i <= 12; ++i)
                    if (detail::uniform(rng, 0, 1)) e.push_back(i);
                check(int_set::from_elements(e), t);
            }
            return std::vector<check_record>{t.record("random-" + std::to_string(b),
                                                      "greedy covering number equals exhaustive minimum",
                                                      std::to_string(n) + " random subsets of {1..12}")};
        });
    suite_report rep;
    rep.suite = "tau-oracle";
    rep.params = json{{"seed", o.seed}, {"count", count}};
    rep.records = run_jobs(jobs, rep.suite, o.seed, o.threads);
    return rep;
}

// Flat vectors over m successive maximal sets starting at s:
// 1 <= ||x||_{S_p}^p <= 2 and m <= ||x||_{B_p}^p <= 2^p m.
inline suite_report suite_lemma22(const suite_options& o) {
    std::vector<job> jobs;
    const std::vector<std::int64_t> starts{1, 2, 3, 5, 8};
    for (auto s : starts)
        for (std::size_t m = 1; m <= o.m_max; ++m)
            jobs.push_back([s, m](std::mt19937_64&) {
                std::vector<check_record> out;
                const chain c = maximal_chain_from<std::int64_t>(s, m);
                const std::string in = "start " + std::to_string(s) + ", " + std::to_string(m) + " maximal sets";
                const std::string id = "s" + std::to_string(s) + "-m" + std::to_string(m);
                const rational mm(static_cast<std::int64_t>(m));
                for (unsigned p : {1u, 2u, 3u}) {
                    const auto r = schreier_norm_from_weights(flat_weights<rational>(c), exponent(p));
                    const bool ok = r.value_pow >= 1 && r.value_pow <= 2;
                    out.push_back({id + "-sp" + std::to_string(p), "flat vector: 1 <= ||x||_{S_p}^p <= 2", in, "[1, 2]",
                                   format_rational(r.value_pow), ok});
                }
                for (unsigned p : {2u, 3u}) {
                    const auto r = baernstein_norm(flat_vector<rational>(c, exponent(p), space_kind::bp), exponent(p));
                    const rational hi = mm * rational(ipow(big_int(2), p));
                    const bool ok = r.value_pow >= mm && r.value_pow <= hi;
                    out.push_back({id + "-bp" + std::to_string(p), "flat vector: m <= ||x||_{B_p}^p <= 2^p m", in,
                                   "[" + format_rational(mm) + ", " + format_rational(hi) + "]",
                                   format_rational(r.value_pow), ok});
                }
                const exponent p15 = exponent::from_double(1.5);
                const double tol = float_tolerance;
                {
                    const double v = schreier_norm(flat_vector<double>(c, p15, space_kind::sp), p15).value;
                    const double hi = std::pow(2.0, 1.0 / 1.5);
                    const bool ok = v >= 1.0 - tol && v <= hi * (1 + tol);
                    out.push_back({id + "-sp1.5", "flat vector: 1 <= ||x||_{S_p} <= 2^{1/p}", in,
                                   "[1, " + format_double(hi) + "]", format_double(v), ok});
                }
                {
                    const double v = baernstein_norm(flat_vector<double>(c, p15, space_kind::bp), p15).value;
                    const double lo = std::pow(double(m), 1.0 / 1.5);
                    const bool ok = v >= lo * (1 - tol) && v <= 2 * lo * (1 + tol);
                    out.push_back({id + "-bp1.5", "flat vector: m^{1/p} <= ||x||_{B_p} <= 2 m^{1/p}", in,
                                   "[" + format_double(lo) + ", " + format_double(2 * lo) + "]", format_double(v), ok});
                }
                return out;
            });
    suite_report rep;
    rep.suite = "lemma22";
    rep.params = json{{"seed", o.seed}, {"m_max", o.m_max}, {"starts", starts}};
    rep.records = run_jobs(jobs, rep.suite, o.seed, o.threads);
    return rep;
}

inline suite_report suite_jameson(const suite_options& o) {
    const std::size_t count = o.count ? o.count : 10000;
    const std::vector<double> ps{1.5, 2.0, 3.0};
    const std::size_t batch = 500;
    std::vector<job> jobs;
    for (double pv : ps)
        for (std::size_t b = 0; b * batch < count; ++b)
            jobs.push_back([pv, b, batch, count](std::mt19937_64& rng) {
                const exponent p = exponent::from_double(pv);
                const double bound = jameson_upper_constant(pv);
                const std::size_t n = std::min(batch, count - b * batch);
                detail::tally t;
                double worst = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const auto x = detail::random_vector<double>(rng, 24, 48);
                    const double r = jameson_ratio(x, p);
                    worst = std::max(worst, r);
                    t.add(r <= bound * (1 + float_tolerance), detail::digest(x) + " ratio " + format_double(r));
                }
                auto rec = t.record("upper-p" + format_double(pv) + "-" + std::to_string(b),
                                    "||x||_p^p <= K ||x||_inf^{p-1} ||x||_{S_1}",
                                    std::to_string(n) + " random vectors, support <= 24 in {1..48}");
                rec.expected = "ratio <= " + format_double(bound);
                rec.observed = "max ratio " + format_double(worst) + "; " + rec.observed;
                return std::vector<check_record>{rec};
            });
    // Extremal family: ratio >= (2^p-1)/(2^{p-1}-1) - 2^{1-k} - tail with the dropped geometric tail
    // 2^{(k-T)(p-1)+p-1}/(2^{p-1}-1), increasing in k. Exact at p = 2, floating elsewhere.
    const unsigned k_max = o.k_max;
    jobs.push_back([k_max](std::mt19937_64&) {
        std::vector<check_record> out;
        const exponent p(2u);
        rational prev = 0;
        for (unsigned k = 1; k <= k_max; ++k) {
            const unsigned T = k + 20;
            const auto x = jameson_extremal<rational>(k, T);
            const rational ratio = lp_norm_pow(x, p) / (sup_norm(x) * schreier_norm(x, exponent(1u)).value_pow);
            const rational tail(2, ipow(big_int(2), T - k));
            const rational lower = rational(3) - rational(2, ipow(big_int(2), k)) - tail;
            const bool ok = ratio >= lower && ratio > prev;
            out.push_back({"extremal-p2-k" + std::to_string(k),
                           "extremal ratio >= 3 - 2^{1-k} - 2^{k-T+1}, increasing in k",
                           "k " + std::to_string(k) + ", T " + std::to_string(T), ">= " + format_rational(lower),
                           format_rational(ratio) + " (" + format_double(to_double(ratio)) + ")", ok});
            prev = ratio;
        }
        return out;
    });
    for (double pv : {1.5, 3.0})
        jobs.push_back([k_max, pv](std::mt19937_64&) {
            std::vector<check_record> out;
            const exponent p = exponent::from_double(pv);
            const double h = std::pow(2.0, pv - 1.0);
            double prev = 0.0;
            for (unsigned k = 1; k <= k_max; ++k) {
                const unsigned T = k + 20;
                const double ratio = jameson_ratio(jameson_extremal<double>(k, T), p);
                const double tail = std::pow(2.0, (double(k) - double(T)) * (pv - 1.0) + pv - 1.0) / (h - 1.0);
                const double lower = jameson_lower_constant(pv) - std::ldexp(1.0, 1 - int(k)) - tail;
                const bool ok = ratio >= lower * (1 - float_tolerance) && ratio > prev;
                out.push_back({"extremal-p" + format_double(pv) + "-k" + std::to_string(k),
                               "extremal ratio >= (2^p-1)/(2^{p-1}-1) - 2^{1-k} - tail, increasing in k",
                               "k " + std::to_string(k) + ", T " + std::to_string(T), ">= " + format_double(lower),
                               format_double(ratio), ok});
                prev = ratio;
            }
            return out;
        });
    // The admissible window for the best constant at each p.
    for (double pv : ps)
        jobs.push_back([pv](std::mt19937_64&) {
            const double lo = jameson_lower_constant(pv), hi = jameson_upper_constant(pv);
            const double seen = jameson_ratio(jameson_extremal<double>(10, 30), exponent::from_double(pv));
            const bool ok = lo <= hi && seen <= hi * (1 + float_tolerance);
            return std::vector<check_record>{{"window-p" + format_double(pv), "best constant K_p lies in [lower, upper]",
                                              "extremal k 10, T 30",
                                              "[" + format_double(lo) + ", " + format_double(hi) + "]",
                                              "extremal ratio " + format_double(seen), ok}};
        });
    suite_report rep;
    rep.suite = "jameson";
    rep.params = json{{"seed", o.seed}, {"count", count}, {"p", ps}, {"k_max", k_max}};
    rep.records = run_jobs(jobs, rep.suite, o.seed, o.threads);
    return rep;
}

namespace detail {
// Random successive admissible sets inside {1..window}.
inline std::vector<int_set> random_blocks(std::mt19937_64& rng, std::int64_t window) {
    std::vector<int_set> sets;
    std::int64_t pos = uniform(rng, 1, 4);
    while (pos <= window) {
        const std::int64_t room = std::min(pos, window - pos + 1);
        const std::int64_t size = uniform(rng, 1, room);
        std::vector<std::int64_t> e{pos};
        const std::int64_t span = std::min(window - pos, 2 * size);
        auto rest = sample_support(rng, static_cast<std::size_t>(size - 1), span);
        for (auto r : rest) e.push_back(pos + r);
        sets.push_back(int_set::from_elements(e));
        pos = sets.back().max() + 1 + uniform(rng, 0, 2);
    }
    return sets;
}
}  // namespace detail

inline suite_report suite_sigma(const suite_options& o) {
    const std::size_t count = o.count ? o.count : 1000;
    std::vector<job> jobs;
    for (std::size_t i = 0; i < count; ++i)
        jobs.push_back([i](std::mt19937_64& rng) {
            std::vector<check_record> out;
            const auto x = detail::random_vector<rational>(rng, 16, 32);
            const auto sets = detail::random_blocks(rng, 32);
            const auto y = sigma_operator(x, sets);
            std::string in = detail::digest(x) + " C=";
            for (const auto& s : sets) in += s.str();
            for (unsigned pv : {2u, 3u}) {
                const exponent p(pv);
                const rational lhs = lp_norm_pow(y, p);
                const rational rhs = baernstein_norm(x, p).value_pow;
                out.push_back({"pair" + std::to_string(i) + "-p" + std::to_string(pv),
                               "||Sigma_C x||_p^p <= ||x||_{B_p}^p", in, "<= " + format_rational(rhs),
                               format_rational(lhs), lhs <= rhs});
            }
            return out;
        });
    suite_report rep;
    rep.suite = "sigma";
    rep.params = json{{"seed", o.seed}, {"count", count}};
    rep.records = run_jobs(jobs, rep.suite, o.seed, o.threads);
    return rep;
}

inline suite_report suite_domination(const suite_options& o) {
    const std::size_t count = o.count ? o.count : 50;
    const std::int64_t K_max = o.K_max;
    std::vector<job> jobs;
    for (std::size_t i = 0; i < count; ++i)
        jobs.push_back([i, K_max](std::mt19937_64& rng) {
            std::vector<check_record> out;
            const std::int64_t K = static_cast<std::int64_t>(i % static_cast<std::size_t>(K_max)) + 1;
            const auto mv = detail::random_prefix(rng, K), nv = detail::random_prefix(rng, K);
            const auto m = index_set::explicit_prefix(mv), n = index_set::explicit_prefix(nv);
            const std::string in = "M " + detail::digest(mv) + " N " + detail::digest(nv) + " K " + std::to_string(K);
            for (const auto& cfg : detail::norm_configs()) {
                const exponent p(cfg.p);
                bool ok = true;
                rational worst = 0;
                std::size_t gamma = 0;
                for (int t = 0; t < 100; ++t) {
                    std::vector<rational> a;
                    for (std::int64_t j = 0; j < K; ++j) a.push_back(detail::exact_entry(rng));
                    const auto c = check_domination(m, n, K, p, cfg.space, a);
                    gamma = c.gamma;
                    ok = ok && c.holds;
                    worst = std::max(worst, rational(c.lhs_pow / c.rhs_pow));
                }
                const std::string bound = cfg.space == space_kind::sp
                                              ? std::to_string(gamma)
                                              : format_rational(rational(ipow(big_int(gamma), cfg.p)));
                out.push_back({"pair" + std::to_string(i) + "-" + cfg.name(),
                               "||sum a_j e_{n_j}||^p <= C^p ||sum a_j e_{m_j}||^p with C from the truncated index", in,
                               "ratio of p-th powers <= " + bound, "max " + format_rational(worst) + " over 100 vectors",
                               ok});
            }
            return out;
        });
    suite_report rep;
    rep.suite = "domination";
    rep.params = json{{"seed", o.seed}, {"count", count}, {"K_max", K_max}};
    rep.records = run_jobs(jobs, rep.suite, o.seed, o.threads);
    return rep;
}

inline suite_report suite_mpb(const suite_options& o) {
    const std::size_t n_max = o.n_max;
    std::vector<job> jobs{[n_max](std::mt19937_64&) {
        std::vector<check_record> out;
        const auto part = make_mpb_partition(n_max);
        const auto rep = verify_partition(part);
        out.push_back({"partition", "intervals successive, |F_n| recursion, G_n = n maximal sets",
                       "n_max " + std::to_string(n_max), "all invariants",
                       std::string("successive ") + (rep.successive ? "yes" : "no") + ", sizes " +
                           (rep.sizes ? "yes" : "no") + ", G structure " + (rep.g_structure ? "yes" : "no"),
                       rep.ok()});
        big_int before = 0;
        for (std::size_t n = 1; n <= n_max; ++n) {
            const auto cert = tau1(part.g(n));
            const bool size_ok = n == 1 ? part.f(n).empty() : part.f(n).size() == before;
            before += part.f(n).size() + part.g(n).size();
            out.push_back({"n" + std::to_string(n), "tau1(G_n) = n and |F_n| = sum of earlier sizes",
                           "G_n " + part.g(n).str(), "tau1 " + std::to_string(n),
                           "tau1 " + std::to_string(cert.count) + ", |F_n| " + part.f(n).size().str(),
                           cert.count == n && verify_certificate(cert) && size_ok});
        }
        return out;
    }};
    suite_report rep;
    rep.suite = "mpb";
    rep.params = json{{"seed", o.seed}, {"n_max", n_max}};
    rep.records = run_jobs(jobs, rep.suite, o.seed, o.threads);
    return rep;
}

inline suite_report suite_corollary64(const suite_options& o) {
    const std::size_t count = o.count ? o.count : 20;
    const std::int64_t window = o.window;
    if (window < 2) throw invalid_input("window must be at least 2");
    // N and M each get one element just past the window, so the partition must reach window + 3.
    const auto part = std::make_shared<const mpb_partition>(make_mpb_partition(static_cast<std::size_t>(window + 3)));
    std::vector<job> jobs;
    for (std::size_t i = 0; i < count; ++i)
        jobs.push_back([i, window, part](std::mt19937_64& rng) {
            std::vector<check_record> out;
            std::vector<std::int64_t> mv, nv;
            const std::int64_t forced = detail::uniform(rng, 2, window);
            for (std::int64_t k = 1; k <= window; ++k) {
                const bool in_m = k == forced || detail::uniform(rng, 0, 1);
                const bool in_n = k != forced && detail::uniform(rng, 0, 1);
                if (in_m) mv.push_back(k);
                if (in_n) nv.push_back(k);
            }
            mv.push_back(window + detail::uniform(rng, 1, 3));
            nv.push_back(window + detail::uniform(rng, 1, 3));
            const std::string in = "M " + detail::digest(mv) + " N " + detail::digest(nv);
            const auto ws = verify_corollary64(*part, index_set::explicit_prefix(mv), index_set::explicit_prefix(nv), window);
            std::size_t expected = 0;
            for (auto k : mv)
                if (k >= 2 && k <= window && !std::binary_search(nv.begin(), nv.end(), k)) ++expected;
            out.push_back({"pair" + std::to_string(i), "one witness per m in (M \\ N) within the window", in,
                           std::to_string(expected) + " witnesses", std::to_string(ws.size()) + " witnesses",
                           ws.size() == expected});
            for (const auto& w : ws) {
                const bool ok = tau1(w.lm_selected).count == static_cast<std::size_t>(w.m) && is_schreier(w.ln_selected) &&
                                w.lm_selected == part->g(static_cast<std::size_t>(w.m));
                out.push_back({"pair" + std::to_string(i) + "-m" + std::to_string(w.m),
                               "tau1(L_M(J)) = m and L_N(J) admissible", in, "tau1 " + std::to_string(w.m) + ", admissible",
                               "tau1 " + std::to_string(tau1(w.lm_selected).count) + ", " +
                                   (is_schreier(w.ln_selected) ? "admissible" : "not admissible"),
                               ok});
            }
            return out;
        });
    suite_report rep;
    rep.suite = "corollary64";
    rep.params = json{{"seed", o.seed}, {"count", count}, {"window", window}};
    rep.records = run_jobs(jobs, rep.suite, o.seed, o.threads);
    return rep;
}

// Truncated indices for M, M' = 2M - 1, M'' = 2M, at every K up to K_max.
inline suite_report suite_gl_bounds(const suite_options& o) {
    const std::size_t count = o.count ? o.count : 200;
    const std::int64_t K_max = o.K_max;
    std::vector<job> jobs;
    for (std::size_t i = 0; i < count; ++i)
        jobs.push_back([i, K_max](std::mt19937_64& rng) {
            const auto mv = detail::random_prefix(rng, K_max);
            const auto m = index_set::explicit_prefix(mv);
            const auto m1 = index_set::doubling_odd(m), m2 = index_set::doubling_even(m);
            const auto u = index_set::union_of(m1, m2);
            struct bound {
                const char* name;
                const index_set *a, *b;
                std::size_t limit;
                bool equal;
            };
            const bound bounds[] = {{"(M, M'+M'') <= 3", &m, &u, 3, false},  {"(M'+M'', M) <= 2", &u, &m, 2, false},
                                    {"(M'', M) = 1", &m2, &m, 1, true},      {"(M'', M') = 1", &m2, &m1, 1, true},
                                    {"(M, M'') <= 2", &m, &m2, 2, false},    {"(M', M'') <= 2", &m1, &m2, 2, false}};
            bool ok = true;
            std::string observed;
            for (const auto& b : bounds) {
                std::size_t prev = 0, worst = 0;
                for (std::int64_t K = 1; K <= K_max; ++K) {
                    const std::size_t v = gl_index_truncated(*b.a, *b.b, K).value;
                    if (v < prev || v > b.limit || (b.equal && v != b.limit)) ok = false;
                    prev = v;
                    worst = std::max(worst, v);
                }
                observed += std::string(observed.empty() ? "" : "; ") + b.name + ": " + std::to_string(worst);
            }
            return std::vector<check_record>{{"M" + std::to_string(i),
                                              "doubling index bounds, monotone in K",
                                              "M " + detail::digest(mv), "all six bounds for K <= " + std::to_string(K_max),
                                              observed, ok}};
        });
    suite_report rep;
    rep.suite = "gl-bounds";
    rep.params = json{{"seed", o.seed}, {"count", count}, {"K_max", K_max}};
    rep.records = run_jobs(jobs, rep.suite, o.seed, o.threads);
    return rep;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"norm-oracle", "tau-oracle", "lemma22",  "jameson",  "domination",
                                                "sigma",       "mpb",        "corollary64", "gl-bounds"};
    return names;
}

inline suite_report run_suite(const std::string& name, const suite_options& o) {
    const auto t0 = std::chrono::steady_clock::now();
    suite_report rep;
    if (name == "norm-oracle") rep = suite_norm_oracle(o);
    else if (name == "tau-oracle") rep = suite_tau_oracle(o);
    else if (name == "lemma22") rep = suite_lemma22(o);
    else if (name == "jameson") rep = suite_jameson(o);
    else if (name == "domination") rep = suite_domination(o);
    else if (name == "sigma") rep = suite_sigma(o);
    else if (name == "mpb") rep = suite_mpb(o);
    else if (name == "corollary64") rep = suite_corollary64(o);
    else if (name == "gl-bounds") rep = suite_gl_bounds(o);
    else throw invalid_input("unknown suite '" + name + "'");
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// <out>/<suite>.json and .csv are deterministic; wall time goes to <suite>.timing.json.
inline void write_report(const suite_report& rep, const std::filesystem::path& out) {
    std::filesystem::create_directories(out);
    auto put = [&](const std::string& file, const std::string& text) {
        std::ofstream f(out / file, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (out / file).string());
        f << text;
    };
    put(rep.suite + ".json", rep.json_text());
    put(rep.suite + ".csv", rep.csv());
    put(rep.suite + ".timing.json", json{{"suite", rep.suite}, {"seconds", rep.seconds}}.dump() + "\n");
}

}  // namespace schreier_lab::harness

// Command-line front end: norms, coverings, truncated indices, constructions and verification suites.
//
// Exit codes: 0 ok, 1 a verification check failed, 2 bad input, 3 truncation, 4 oracle limit.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "schreier_lab/constructions.hpp"
#include "schreier_lab/gl_index.hpp"
#include "schreier_lab/harness.hpp"
#include "schreier_lab/json_io.hpp"
#include "schreier_lab/norms.hpp"

namespace sl = schreier_lab;
using sl::io::json;

namespace {

constexpr int exit_failed = 1, exit_input = 2, exit_truncation = 3, exit_oracle = 4;

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

sl::space_kind parse_space(const std::string& s) { return s == "bp" ? sl::space_kind::bp : sl::space_kind::sp; }

sl::bp_strategy parse_strategy(const std::string& s) {
    if (s == "explicit") return sl::bp_strategy::explicit_dp;
    if (s == "monotone") return sl::bp_strategy::monotone;
    return sl::bp_strategy::automatic;
}

template <class S>
json norm_json(const std::string& vec, const sl::exponent& p, sl::space_kind space, const std::string& strategy,
               bool oracle) {
    const auto x = sl::io::parse_vector<S>(vec);
    json out = space == sl::space_kind::sp ? sl::io::to_json(sl::schreier_norm(x, p))
                                           : sl::io::to_json(sl::baernstein_norm(x, p, parse_strategy(strategy)));
    if (oracle) {
        const auto o = sl::oracle_norm(x, p, space);
        out["oracle_value"] = o.value;
        out["oracle_value_pow"] = sl::io::scalar_json(o.value_pow);
    }
    return out;
}

sl::index_set materialize(const std::string& text, std::int64_t K) {
    auto s = sl::io::parse_index_set(text);
    s.ensure(K);
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Schreier-family norms, covering numbers and index certificates"};
    app.require_subcommand(1);

    // norm
    std::string space = "sp", p_text = "1", mode = "exact", vec, strategy = "auto";
    bool with_oracle = false;
    auto* norm = app.add_subcommand("norm", "S_p or B_p norm of a finitely supported vector, with witness");
    norm->add_option("--space", space, "sp or bp")->check(CLI::IsMember({"sp", "bp"}));
    norm->add_option("--p", p_text, "exponent, rational or decimal, >= 1");
    norm->add_option("--mode", mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
    norm->add_option("--vec", vec, "JSON array [x1,x2,...] or object {\"index\": value}")->required();
    norm->add_option("--strategy", strategy, "B_p algorithm: auto, explicit or monotone")
        ->check(CLI::IsMember({"auto", "explicit", "monotone"}));
    norm->add_flag("--oracle", with_oracle, "also run the exhaustive reference");

    // tau
    std::string set_text;
    auto* tau = app.add_subcommand("tau", "Schreier covering number with a covering chain");
    tau->add_option("--set", set_text, "JSON array of elements or [lo,hi] intervals")->required();
    tau->add_flag("--oracle", with_oracle, "also run the exhaustive reference");

    // glindex
    std::string m_text, n_text;
    std::int64_t K = 10;
    auto* gl = app.add_subcommand("glindex", "truncated index of a pair of increasing sequences");
    gl->add_option("--M", m_text, "all, even, odd, arith:a:d or a JSON prefix")->required();
    gl->add_option("--N", n_text, "all, even, odd, arith:a:d or a JSON prefix")->required();
    gl->add_option("--K", K, "truncation")->check(CLI::Range(1, 30));

    // construct
    auto* construct = app.add_subcommand("construct", "explicit objects");
    construct->require_subcommand(1);
    std::size_t n_max = 5;
    auto* c_mpb = construct->add_subcommand("mpb", "interval partition G_1 < F_2 < G_2 < ...");
    c_mpb->add_option("--n", n_max, "number of levels")->check(CLI::Range(1, 200));

    std::int64_t start = 1;
    std::size_t blocks = 3;
    auto* c_flat = construct->add_subcommand("flat", "flat vector over successive maximal Schreier sets");
    c_flat->add_option("--start", start, "minimum of the first set")->check(CLI::PositiveNumber);
    c_flat->add_option("--count", blocks, "number of sets")->check(CLI::Range(1, 40));
    c_flat->add_option("--p", p_text, "exponent");
    c_flat->add_option("--space", space, "sp or bp")->check(CLI::IsMember({"sp", "bp"}));
    c_flat->add_option("--mode", mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));

    unsigned jk = 3, jT = 8;
    auto* c_jam = construct->add_subcommand("jameson", "extremal family for the l_p / sup / S_1 inequality");
    c_jam->add_option("--k", jk, "flat level")->check(CLI::Range(1, 60));
    c_jam->add_option("--T", jT, "truncation, T > k")->check(CLI::Range(2, 61));
    c_jam->add_option("--p", p_text, "exponent");

    std::int64_t window = 8;
    auto* c_cor = construct->add_subcommand("witnesses", "divergence witnesses for L_M against L_N");
    c_cor->add_option("--M", m_text, "JSON prefix or rule")->required();
    c_cor->add_option("--N", n_text, "JSON prefix or rule")->required();
    c_cor->add_option("--window", window, "largest m considered")->check(CLI::Range(2, 40));
    c_cor->add_option("--n", n_max, "partition levels (default window + 3)");

    std::size_t fam_count = 4, depth = 3;
    auto* c_ad = construct->add_subcommand("almost-disjoint", "branches of the node-labelled binary tree");
    c_ad->add_option("--count", fam_count, "number of branches")->check(CLI::PositiveNumber);
    c_ad->add_option("--depth", depth, "levels below the root")->check(CLI::Range(1, 60));

    // verify
    std::string suite;
    sl::harness::suite_options opts;
    std::string out_dir = "reports";
    auto* verify = app.add_subcommand("verify", "run a verification suite and write reports");
    verify->add_option("suite", suite, "suite name or 'all'")->required();
    verify->add_option("--seed", opts.seed, "random seed");
    verify->add_option("--threads", opts.threads, "worker threads, 0 = all cores");
    verify->add_option("--out", out_dir, "report directory");
    verify->add_option("--count", opts.count, "random instances per parameter");
    verify->add_option("--max-support", opts.max_support, "norm-oracle support bound")->check(CLI::Range(1, 14));
    verify->add_option("--m", opts.m_max, "lemma22 chain length bound")->check(CLI::Range(1, 22));
    verify->add_option("--k-max", opts.k_max, "jameson extremal levels")->check(CLI::Range(1, 40));
    verify->add_option("--n-max", opts.n_max, "mpb levels")->check(CLI::Range(1, 200));
    verify->add_option("--window", opts.window, "corollary64 window")->check(CLI::Range(2, 30));
    verify->add_option("--K", opts.K_max, "truncation bound")->check(CLI::Range(1, 14));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_input;
    }

    try {
        if (*norm) {
            const auto p = sl::exponent::parse(p_text);
            emit(mode == "exact" ? norm_json<sl::rational>(vec, p, parse_space(space), strategy, with_oracle)
                                 : norm_json<double>(vec, p, parse_space(space), strategy, with_oracle));
        } else if (*tau) {
            const auto a = sl::io::parse_set(set_text);
            json out = sl::io::to_json(sl::tau1(a));
            out["verified"] = sl::verify_certificate(sl::tau1(a));
            if (with_oracle) out["oracle_count"] = sl::tau1_oracle(a);
            emit(out);
        } else if (*gl) {
            const auto m = materialize(m_text, K), n = materialize(n_text, K);
            json out = sl::io::to_json(sl::gl_index_truncated(m, n, K), m, n);
            out["M"] = sl::io::to_json(m);
            out["N"] = sl::io::to_json(n);
            emit(out);
        } else if (*c_mpb) {
            const auto part = sl::make_mpb_partition(n_max);
            json out = sl::io::to_json(part);
            out["verified"] = sl::verify_partition(part).ok();
            emit(out);
        } else if (*c_flat) {
            const auto p = sl::exponent::parse(p_text);
            const auto c = sl::maximal_chain_from<std::int64_t>(start, blocks);
            json out{{"chain", sl::io::to_json(c)}, {"space", space}, {"p", p.str()}};
            if (mode == "float") {
                const auto x = sl::flat_vector<double>(c, p, parse_space(space));
                out["vector"] = sl::io::to_json(x);
                out["norm"] = space == "sp" ? sl::io::to_json(sl::schreier_norm(x, p))
                                            : sl::io::to_json(sl::baernstein_norm(x, p));
            } else if (space == "sp" && p.integer() > 1) {
                // Entries |F|^{-1/p} are irrational; report the weights |x|^p instead.
                const auto w = sl::flat_weights<sl::rational>(c);
                out["weights"] = sl::io::to_json(w);
                out["norm"] = sl::io::to_json(sl::schreier_norm_from_weights(w, p));
            } else {
                const auto x = sl::flat_vector<sl::rational>(c, p, parse_space(space));
                out["vector"] = sl::io::to_json(x);
                out["norm"] = space == "sp" ? sl::io::to_json(sl::schreier_norm(x, p))
                                            : sl::io::to_json(sl::baernstein_norm(x, p));
            }
            emit(out);
        } else if (*c_jam) {
            const auto p = sl::exponent::parse(p_text);
            const auto x = sl::jameson_extremal<double>(jk, jT);
            json runs = json::array();
            for (const auto& r : x.runs())
                runs.push_back(json{{"first", r.first}, {"count", r.count}, {"value", r.value}});
            emit(json{{"k", jk},
                      {"T", jT},
                      {"p", p.str()},
                      {"runs", runs},
                      {"ratio", sl::jameson_ratio(x, p)},
                      {"lower_constant", sl::jameson_lower_constant(p.value())},
                      {"upper_constant", sl::jameson_upper_constant(p.value())}});
        } else if (*c_cor) {
            const auto m = sl::io::parse_index_set(m_text), n = sl::io::parse_index_set(n_text);
            const std::size_t levels = c_cor->count("--n") ? n_max : static_cast<std::size_t>(window + 3);
            const auto part = sl::make_mpb_partition(levels);
            json ws = json::array();
            for (const auto& w : sl::verify_corollary64(part, m, n, window)) ws.push_back(sl::io::to_json(w));
            emit(json{{"window", window}, {"levels", levels}, {"witnesses", ws}});
        } else if (*c_ad) {
            const auto fam = sl::make_almost_disjoint_family(fam_count, depth);
            json branches = json::array();
            for (std::size_t k = 0; k < fam.codes.size(); ++k)
                branches.push_back(json{{"code", fam.codes[k]}, {"nodes", sl::io::to_json(fam.branches[k].prefix())}});
            emit(json{{"depth", depth}, {"branches", branches}});
        } else if (*verify) {
            const auto& names = sl::harness::suite_names();
            std::vector<std::string> todo;
            if (suite == "all") todo = names;
            else todo.push_back(suite);
            bool ok = true;
            json summary = json::array();
            for (const auto& name : todo) {
                const auto rep = sl::harness::run_suite(name, opts);
                sl::harness::write_report(rep, out_dir);
                ok = ok && rep.ok();
                summary.push_back(json{{"suite", name}, {"checks", rep.records.size()}, {"failures", rep.failures()}});
                for (const auto& r : rep.records)
                    if (!r.pass) std::cerr << name << ": " << r.id << " violates " << r.claim << ": " << r.observed << "\n";
            }
            emit(json{{"suites", summary}, {"out", out_dir}, {"ok", ok}});
            return ok ? 0 : exit_failed;
        }
    } catch (const sl::truncation_error& e) {
        std::cerr << "truncation: " << e.what() << "\n";
        return exit_truncation;
    } catch (const sl::oracle_limit& e) {
        std::cerr << "oracle limit: " << e.what() << "\n";
        return exit_oracle;
    } catch (const sl::invalid_input& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return exit_input;
    } catch (const sl::unsupported_exponent& e) {
        std::cerr << "unsupported exponent: " << e.what() << "\n";
        return exit_input;
    }
    return 0;
}

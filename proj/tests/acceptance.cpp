// Runs every verification suite at full size and prints one PASS/FAIL line per criterion.
// Usage: acceptance [report-dir]

#include <cstdio>
#include <functional>
#include <map>

#include "schreier_lab/harness.hpp"

using namespace schreier_lab;
using namespace schreier_lab::harness;

namespace {

constexpr std::uint64_t seed = 20240101;
constexpr double norm_oracle_budget_s = 30.0;
constexpr double tau_oracle_budget_s = 20.0;
constexpr double full_run_budget_s = 120.0;
static_assert(float_tolerance == 1e-9, "float comparisons are pinned at 1e-9 relative");

struct criterion {
    int number;
    std::string label;
    std::vector<std::string> suites;
    std::function<bool(const check_record&)> selects{};  // empty = every record
    double budget_s = 0.0;  // 0 = no per-criterion budget
};

bool starts_with(const std::string& s, const char* prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

int main(int argc, char** argv) {
    suite_options opts;
    opts.seed = seed;

    std::map<std::string, suite_report> reports;
    double total_s = 0.0;
    for (const auto& name : suite_names()) {
        reports[name] = run_suite(name, opts);
        total_s += reports[name].seconds;
        if (argc > 1) write_report(reports[name], argv[1]);
    }

    const std::vector<criterion> criteria{
        {1, "norm oracle equivalence", {"norm-oracle"}, {}, norm_oracle_budget_s},
        {2, "greedy covering number equals exhaustive search", {"tau-oracle"}, {}, tau_oracle_budget_s},
        {3, "flat vector bounds", {"lemma22"}},
        {4, "l_p / sup / S_1 upper constant", {"jameson"},
         [](const check_record& r) { return starts_with(r.id, "upper-"); }},
        {5, "extremal family approaches the lower constant", {"jameson"},
         [](const check_record& r) { return !starts_with(r.id, "upper-"); }},
        {6, "sigma contraction", {"sigma"}},
        {7, "domination through the truncated index", {"domination"}},
        {8, "doubling bounds on truncated indices", {"gl-bounds"}},
        {9, "interval partition and L-set witnesses", {"mpb", "corollary64"}},
    };

    bool all_ok = true;
    for (const auto& c : criteria) {
        std::size_t checks = 0, failures = 0;
        double seconds = 0.0;
        std::string first_failure;
        for (const auto& s : c.suites) {
            const auto& rep = reports.at(s);
            seconds += rep.seconds;
            for (const auto& r : rep.records) {
                if (c.selects && !c.selects(r)) continue;
                ++checks;
                if (!r.pass) {
                    ++failures;
                    if (first_failure.empty()) first_failure = s + "/" + r.id + ": " + r.observed;
                }
            }
        }
        const bool in_budget = c.budget_s == 0.0 || seconds < c.budget_s;
        const bool ok = checks > 0 && failures == 0 && in_budget;
        all_ok = all_ok && ok;
        std::printf("%s criterion %d: %s (%zu records, %zu failing, %.2f s%s)\n", ok ? "PASS" : "FAIL", c.number,
                    c.label.c_str(), checks, failures, seconds,
                    c.budget_s > 0 ? (" of " + format_double(c.budget_s) + " s budget").c_str() : "");
        if (!first_failure.empty()) std::printf("  first failure: %s\n", first_failure.c_str());
    }

    // Reproducibility: same seed, different thread count, identical report bytes.
    suite_options other = opts;
    other.threads = opts.threads == 1 ? 3 : 1;
    std::vector<std::string> differing;
    for (const auto& name : suite_names()) {
        const auto again = run_suite(name, other);
        if (again.json_text() != reports[name].json_text() || again.csv() != reports[name].csv())
            differing.push_back(name);
    }
    const bool ok10 = total_s < full_run_budget_s && differing.empty();
    all_ok = all_ok && ok10;
    std::printf("%s criterion 10: full suite in %.2f s of %.0f s budget, reports %s\n", ok10 ? "PASS" : "FAIL", total_s,
                full_run_budget_s, differing.empty() ? "byte-identical across thread counts" : "differ");
    for (const auto& d : differing) std::printf("  non-reproducible: %s\n", d.c_str());
    return all_ok ? 0 : 1;
}

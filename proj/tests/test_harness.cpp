#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "schreier_lab/harness.hpp"
#include "schreier_lab/json_io.hpp"

using namespace schreier_lab;
using namespace schreier_lab::harness;

namespace {

suite_options small_options(std::uint64_t seed, unsigned threads) {
    suite_options o;
    o.seed = seed;
    o.threads = threads;
    o.count = 40;
    o.m_max = 6;
    o.k_max = 4;
    o.n_max = 8;
    o.window = 5;
    o.K_max = 8;
    return o;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST(Harness, ReportBytesIgnoreThreadCount) {
    for (const std::string suite : {"tau-oracle", "sigma", "domination", "gl-bounds"}) {
        const auto one = run_suite(suite, small_options(7, 1));
        const auto three = run_suite(suite, small_options(7, 3));
        EXPECT_TRUE(one.ok()) << suite;
        EXPECT_EQ(one.json_text(), three.json_text()) << suite;
        EXPECT_EQ(one.csv(), three.csv()) << suite;
    }
}

TEST(Harness, SeedChangesRandomInputs) {
    const auto a = run_suite("sigma", small_options(1, 1));
    const auto b = run_suite("sigma", small_options(2, 1));
    EXPECT_NE(a.json_text(), b.json_text());
}

TEST(Harness, EverySuiteRunsSmall) {
    for (const auto& name : suite_names()) {
        const auto rep = run_suite(name, small_options(3, 2));
        EXPECT_EQ(rep.suite, name);
        EXPECT_FALSE(rep.records.empty()) << name;
        EXPECT_TRUE(rep.ok()) << name << ": " << rep.json_text();
    }
    EXPECT_THROW(run_suite("nonsense", suite_options{}), invalid_input);
}

TEST(Harness, ExceptionsBecomeFailingRecords) {
    std::vector<job> jobs{[](std::mt19937_64&) { return std::vector<check_record>{{"a", "c", "", "", "", true}}; },
                          [](std::mt19937_64&) -> std::vector<check_record> { throw invalid_input("boom"); }};
    const auto recs = run_jobs(jobs, "x", 1, 2);
    ASSERT_EQ(recs.size(), 2u);
    EXPECT_TRUE(recs[0].pass);
    EXPECT_FALSE(recs[1].pass);
    EXPECT_EQ(recs[1].id, "job-1");
    EXPECT_NE(recs[1].observed.find("boom"), std::string::npos);
}

TEST(Harness, JobGeneratorsDependOnIndexOnly) {
    std::vector<job> jobs;
    for (int k = 0; k < 6; ++k)
        jobs.push_back([](std::mt19937_64& rng) {
            return std::vector<check_record>{{std::to_string(rng()), "", "", "", "", true}};
        });
    const auto a = run_jobs(jobs, "s", 5, 1), b = run_jobs(jobs, "s", 5, 4), c = run_jobs(jobs, "t", 5, 1);
    for (std::size_t k = 0; k < jobs.size(); ++k) {
        EXPECT_EQ(a[k].id, b[k].id);
        EXPECT_NE(a[k].id, c[k].id);
    }
}

TEST(Harness, WritesReportFiles) {
    const auto dir = std::filesystem::temp_directory_path() / "schreier_lab_report_test";
    std::filesystem::remove_all(dir);
    auto rep = run_suite("mpb", small_options(1, 1));
    write_report(rep, dir);
    EXPECT_EQ(slurp(dir / "mpb.json"), rep.json_text());
    EXPECT_EQ(slurp(dir / "mpb.csv"), rep.csv());
    const auto timing = json::parse(slurp(dir / "mpb.timing.json"));
    EXPECT_EQ(timing["suite"], "mpb");
    EXPECT_TRUE(timing["seconds"].is_number());
    const auto doc = json::parse(slurp(dir / "mpb.json"));
    EXPECT_FALSE(doc.contains("seconds"));
    EXPECT_EQ(doc["summary"]["failures"], 0);
    std::filesystem::remove_all(dir);
}

TEST(Harness, CsvQuotesFields) {
    suite_report rep;
    rep.records.push_back({"id", "a \"quoted\", claim", "in", "ex", "ob", false});
    EXPECT_EQ(rep.csv(), "id,claim,pass,expected,observed,input\n\"id\",\"a \"\"quoted\"\", claim\",FAIL,\"ex\",\"ob\",\"in\"\n");
    EXPECT_EQ(rep.failures(), 1u);
}

TEST(JsonIo, VectorsDenseAndSparse) {
    const auto x = io::parse_vector<rational>("[\"3/4\", 0, -1.5]");
    EXPECT_EQ(x, exact_vector::from_entries({{1, rational(3, 4)}, {3, rational(-3, 2)}}));
    const auto y = io::parse_vector<rational>("{\"10\": 1, \"2\": \"1/3\"}");
    EXPECT_EQ(y, exact_vector::from_entries({{2, rational(1, 3)}, {10, rational(1)}}));
    EXPECT_EQ(io::parse_vector<rational>(io::to_json(y).dump()), y);
    const auto f = io::parse_vector<double>("[0.5, \"1/4\"]");
    EXPECT_EQ(f, float_vector::from_entries({{1, 0.5}, {2, 0.25}}));
    EXPECT_THROW(io::parse_vector<rational>("[1, "), invalid_input);
    EXPECT_THROW(io::parse_vector<rational>("{\"0\": 1}"), invalid_input);
    EXPECT_THROW(io::parse_vector<rational>("[true]"), invalid_input);
    EXPECT_THROW(io::parse_vector<double>("[\"1.5x\"]"), invalid_input);
    EXPECT_THROW(io::parse_vector<rational>("3"), invalid_input);
}

TEST(JsonIo, SetsRoundTrip) {
    EXPECT_EQ(io::parse_set("[3, [5, 7]]"), int_set::from_elements({3, 5, 6, 7}));
    EXPECT_EQ(io::to_json(int_set::from_elements({1, 2})).dump(), "[1,2]");
    const auto big = int_set::range(10, 200);
    EXPECT_EQ(io::to_json(big).dump(), "[[10,200]]");
    EXPECT_EQ(io::parse_set(io::to_json(big).dump()), big);
    EXPECT_THROW(io::parse_set("[0]"), invalid_input);
    EXPECT_THROW(io::parse_set("[[4, 2]]"), invalid_input);
    EXPECT_THROW(io::parse_set("[[1, 2, 3]]"), invalid_input);
    EXPECT_EQ(io::to_json(big_set::range(big_int(1) << 70, (big_int(1) << 70) + 1)).dump(),
              "[[\"1180591620717411303424\",\"1180591620717411303425\"]]");
}

TEST(JsonIo, IndexSetRules) {
    auto all = io::parse_index_set("all");
    all.ensure(3);
    EXPECT_EQ(all.nth(3), 3);
    auto odd = io::parse_index_set("odd");
    odd.ensure(3);
    EXPECT_EQ(odd.nth(3), 5);
    auto ar = io::parse_index_set("arith:4:3");
    ar.ensure(2);
    EXPECT_EQ(ar.nth(2), 7);
    EXPECT_EQ(io::parse_index_set("[2, 5, 9]").nth(3), 9);
    EXPECT_THROW(io::parse_index_set("[5, 2]"), invalid_input);
    EXPECT_THROW(io::parse_index_set("arith:x"), invalid_input);
    EXPECT_THROW(io::parse_index_set("primes"), invalid_input);
}

TEST(JsonIo, NormResultShape) {
    const auto r = baernstein_norm(exact_vector::dense({rational(1), rational(1), rational(1)}), exponent(2u));
    const auto j = io::to_json(r);
    EXPECT_EQ(j["value_pow"], "5");
    EXPECT_EQ(j["witness"].dump(), "[[1],[2,3]]");
    EXPECT_EQ(j["zero"], false);
    const auto s = io::to_json(schreier_norm(exact_vector{}, exponent(1u)));
    EXPECT_EQ(s["zero"], true);
    EXPECT_EQ(s["witness"].dump(), "[]");
}

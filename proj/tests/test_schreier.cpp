#include <gtest/gtest.h>

#include <cstdlib>
#include <map>
#include <set>
#include <random>

#include "schreier_lab/schreier.hpp"

using namespace schreier_lab;

namespace {

int_set S(std::vector<std::int64_t> e) { return int_set::from_elements(std::move(e)); }

// Reference covering number: shortest chain of admissible subsets of {1..8} whose union contains a.
// Searches every chain directly, with no reduction to blocks of a.
std::size_t brute_tau(std::uint32_t uncovered, int lo, std::map<std::pair<std::uint32_t, int>, std::size_t>& memo) {
    if (uncovered == 0) return 0;
    if (lo > 8) return 99;
    const auto key = std::make_pair(uncovered, lo);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::size_t best = 99;
    for (std::uint32_t f = 1; f < (1u << 8); ++f) {
        const int mn = __builtin_ctz(f) + 1, mx = 32 - __builtin_clz(f);
        if (mn < lo || __builtin_popcount(f) > mn) continue;
        if ((f & uncovered) == 0) continue;
        best = std::min(best, 1 + brute_tau(uncovered & ~f, mx + 1, memo));
    }
    return memo[key] = best;
}

}  // namespace

TEST(SchreierSets, AdmissibilityExamples) {
    EXPECT_TRUE(is_schreier(int_set()));
    EXPECT_FALSE(is_schreier(S({1, 2})));
    EXPECT_TRUE(is_schreier(S({3, 5, 9})));
    EXPECT_THROW(is_schreier(S({0, 4})), invalid_input);
}

TEST(SchreierSets, MaximalExamples) {
    EXPECT_TRUE(is_maximal_schreier(S({1})));
    EXPECT_TRUE(is_maximal_schreier(S({3, 4, 5})));
    EXPECT_FALSE(is_maximal_schreier(S({3, 4})));
    EXPECT_FALSE(is_maximal_schreier(int_set()));
    EXPECT_THROW(is_maximal_schreier(S({1, 2})), invalid_input);
}

TEST(SchreierSets, SpreadExamples) {
    EXPECT_TRUE(is_spread(S({1, 2}), S({2, 5})));
    EXPECT_FALSE(is_spread(S({2, 5}), S({2, 4})));
    EXPECT_TRUE(is_spread(int_set(), int_set()));
    EXPECT_THROW(is_spread(S({1}), S({1, 2})), invalid_input);
}

TEST(SchreierSets, SpreadingClosure) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 2000; ++t) {
        std::vector<std::int64_t> f, g;
        const std::int64_t size = 1 + rng() % 6;
        std::int64_t a = size + rng() % 4, b = a + rng() % 3;
        for (std::int64_t k = 0; k < size; ++k) {
            f.push_back(a);
            g.push_back(b);
            a += 1 + rng() % 3;
            b = std::max(b + 1, a) + rng() % 3;
        }
        const auto F = S(f), G = S(g);
        ASSERT_TRUE(is_spread(F, G));
        if (is_schreier(F)) {
            EXPECT_TRUE(is_schreier(G));
        }
    }
}

TEST(SchreierChains, Validation) {
    EXPECT_NO_THROW(validate_chain(chain{S({1}), S({2, 3})}));
    EXPECT_THROW(validate_chain(chain{}), invalid_input);
    EXPECT_THROW(validate_chain(chain{S({2, 3}), S({3})}), invalid_input);
    EXPECT_THROW(validate_chain(chain{S({1, 2})}), invalid_input);
    EXPECT_THROW(validate_chain(chain{S({1}), int_set()}), invalid_input);
}

TEST(Tau1, Examples) {
    EXPECT_EQ(tau1(int_set()).count, 0u);
    const auto c = tau1(S({1, 2, 3}));
    EXPECT_EQ(c.count, 2u);
    EXPECT_EQ(c.chain, (chain{S({1}), S({2, 3})}));
    EXPECT_TRUE(verify_certificate(c));
    EXPECT_EQ(tau1_oracle(S({2, 3})), 1u);
    EXPECT_EQ(tau1_oracle(S({1, 2, 3})), 2u);
    EXPECT_EQ(tau1_oracle(S({1, 2, 3, 4, 5, 6})), tau1(S({1, 2, 3, 4, 5, 6})).count);
}

TEST(Tau1, GreedyEqualsChainSearchOnAllSubsetsOf1To8) {
    std::map<std::pair<std::uint32_t, int>, std::size_t> memo;
    for (std::uint32_t mask = 0; mask < (1u << 8); ++mask) {
        std::vector<std::int64_t> e;
        for (int b = 0; b < 8; ++b)
            if (mask >> b & 1u) e.push_back(b + 1);
        const auto a = S(e);
        const auto cert = tau1(a);
        ASSERT_EQ(cert.count, brute_tau(mask, 1, memo)) << a.str();
        ASSERT_EQ(tau1_oracle(a), cert.count) << a.str();
        ASSERT_TRUE(verify_certificate(cert)) << a.str();
    }
}

TEST(Tau1, MonotoneUnderInclusion) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 3000; ++t) {
        std::vector<std::int64_t> big, small;
        for (std::int64_t k = 1; k <= 30; ++k)
            if (rng() % 2) {
                big.push_back(k);
                if (rng() % 2) small.push_back(k);
            }
        EXPECT_LE(tau1(S(small)).count, tau1(S(big)).count);
    }
}

TEST(Tau1, CertificatesAreSound) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 2000; ++t) {
        std::vector<std::pair<std::int64_t, std::int64_t>> iv;
        std::int64_t pos = 1 + rng() % 5;
        for (int k = 0; k < 4; ++k) {
            const std::int64_t len = rng() % 40;
            iv.emplace_back(pos, pos + len);
            pos += len + 2 + rng() % 50;
        }
        const auto a = int_set::from_intervals(iv);
        const auto cert = tau1(a);
        ASSERT_TRUE(verify_certificate(cert));
        EXPECT_EQ(cert.chain.size(), cert.count);
        EXPECT_TRUE(chain_union(cert.chain).subset_of(a));
    }
}

TEST(Tau1, MaximalSetsAndChains) {
    EXPECT_EQ(tau1(int_set::range(7, 13)).count, 1u);
    for (std::int64_t s : {1, 2, 3, 7})
        for (std::size_t n = 1; n <= 12; ++n)
            EXPECT_EQ(tau1(chain_union(maximal_chain_from<std::int64_t>(s, n))).count, n);
}

TEST(Tau1, CertificateRejectsTampering) {
    auto cert = tau1(S({1, 2, 3}));
    cert.count = 1;
    EXPECT_FALSE(verify_certificate(cert));
    cert = tau1(S({1, 2, 3}));
    cert.chain.pop_back();
    cert.count = 1;
    EXPECT_FALSE(verify_certificate(cert));
}

TEST(Enumeration, SchreierSubsets) {
    EXPECT_EQ(schreier_subsets(S({1, 2})), (std::vector<int_set>{int_set(), S({1}), S({2})}));
    EXPECT_EQ(schreier_subsets(int_set()), std::vector<int_set>{int_set()});
    EXPECT_EQ(schreier_subsets(S({2, 3})).size(), 4u);
}

TEST(Enumeration, Chains) {
    const auto c = chains_in(S({1, 2, 3}));
    EXPECT_EQ(c.size(), 9u);
    std::set<chain> unique(c.begin(), c.end());
    EXPECT_EQ(unique.size(), 9u);
    for (const auto& x : c) EXPECT_NO_THROW(validate_chain(x));
    EXPECT_EQ(chains_in(S({1})), std::vector<chain>{chain{S({1})}});
    EXPECT_TRUE(chains_in(int_set()).empty());
}

TEST(Enumeration, OracleBound) {
    const auto big = int_set::range(1, 15);
    EXPECT_THROW(tau1_oracle(big), oracle_limit);
    EXPECT_THROW(chains_in(big), oracle_limit);
    ::setenv("SCHREIER_LAB_ORACLE_BOUND", "16", 1);
    EXPECT_EQ(tau1_oracle(big), tau1(big).count);
    ::unsetenv("SCHREIER_LAB_ORACLE_BOUND");
}

TEST(MaximalChain, Examples) {
    EXPECT_EQ(maximal_chain_from<std::int64_t>(1, 1), chain{S({1})});
    EXPECT_EQ(maximal_chain_from<std::int64_t>(3, 2), (chain{S({3, 4, 5}), int_set::range(6, 11)}));
    EXPECT_EQ(maximal_chain_from<std::int64_t>(2, 1), chain{S({2, 3})});
    EXPECT_THROW(maximal_chain_from<std::int64_t>(0, 1), invalid_input);
}

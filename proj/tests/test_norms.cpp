#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "schreier_lab/norms.hpp"

using namespace schreier_lab;

namespace {

int_set S(std::vector<std::int64_t> e) { return int_set::from_elements(std::move(e)); }

exact_vector dense(std::vector<std::int64_t> v) {
    std::vector<rational> r(v.begin(), v.end());
    return exact_vector::dense(r);
}

rational rpow(rational v, unsigned p) {
    rational out = 1;
    for (unsigned k = 0; k < p; ++k) out *= v;
    return out;
}

// Test-local references written directly from the definitions: every admissible subset of the
// support for S_p, every chain of admissible sets inside the support for B_p.
struct brute {
    std::vector<std::int64_t> idx;
    std::vector<rational> val;  // |x| at idx

    explicit brute(const exact_vector& x) {
        for (const auto& [i, v] : x.entries()) {
            idx.push_back(i);
            val.push_back(v < 0 ? rational(-v) : v);
        }
    }

    bool admissible(std::uint32_t mask) const {
        if (!mask) return true;
        return __builtin_popcount(mask) <= idx[__builtin_ctz(mask)];
    }

    rational sp(unsigned p, std::vector<int_set>* argmax = nullptr) const {
        rational best = 0;
        std::vector<int_set> arg;
        for (std::uint32_t m = 0; m < (1u << idx.size()); ++m) {
            if (!admissible(m)) continue;
            rational s = 0;
            std::vector<std::int64_t> e;
            for (std::size_t b = 0; b < idx.size(); ++b)
                if (m >> b & 1u) {
                    s += rpow(val[b], p);
                    e.push_back(idx[b]);
                }
            if (s > best) {
                best = s;
                arg.clear();
            }
            if (s == best) arg.push_back(S(e));
        }
        if (argmax) *argmax = arg;
        return best;
    }

    // Best over chains whose first set starts at position >= from.
    void bp_rec(std::size_t from, unsigned p, rational acc, chain& cur, rational& best, std::vector<chain>& arg) const {
        if (acc > best) {
            best = acc;
            arg.clear();
        }
        if (acc == best && !cur.empty()) arg.push_back(cur);
        const std::size_t n = idx.size();
        for (std::uint32_t m = 1; m < (1u << n); ++m) {
            if (static_cast<std::size_t>(__builtin_ctz(m)) < from || !admissible(m)) continue;
            rational s = 0;
            std::vector<std::int64_t> e;
            for (std::size_t b = 0; b < n; ++b)
                if (m >> b & 1u) {
                    s += val[b];
                    e.push_back(idx[b]);
                }
            cur.push_back(S(e));
            bp_rec(static_cast<std::size_t>(32 - __builtin_clz(m)), p, acc + rpow(s, p), cur, best, arg);
            cur.pop_back();
        }
    }

    rational bp(unsigned p, std::vector<chain>* argmax = nullptr) const {
        rational best = 0;
        std::vector<chain> arg;
        chain cur;
        bp_rec(0, p, 0, cur, best, arg);
        if (argmax) *argmax = arg;
        return best;
    }
};

exact_vector random_exact(std::mt19937_64& rng, int max_support, std::int64_t window, bool nonneg = false) {
    std::vector<std::pair<std::int64_t, rational>> e;
    std::vector<std::int64_t> pool(static_cast<std::size_t>(window));
    std::iota(pool.begin(), pool.end(), 1);
    std::shuffle(pool.begin(), pool.end(), rng);
    const int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_support));
    for (int k = 0; k < n; ++k) {
        std::int64_t v = 1 + static_cast<std::int64_t>(rng() % 4);
        if (!nonneg && rng() % 2) v = -v;
        e.emplace_back(pool[static_cast<std::size_t>(k)], rational(v));
    }
    return exact_vector::from_entries(std::move(e));
}

// Non-increasing |x| with gaps between support runs.
exact_vector random_decreasing(std::mt19937_64& rng, int runs, std::int64_t max_run) {
    std::vector<value_run<rational>> r;
    std::int64_t pos = 1 + static_cast<std::int64_t>(rng() % 5);
    std::int64_t v = 40;
    for (int k = 0; k < runs; ++k) {
        const std::int64_t len = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(max_run));
        r.push_back({pos, len, rational(rng() % 2 ? v : -v)});
        pos += len + static_cast<std::int64_t>(rng() % 3);
        v = std::max<std::int64_t>(1, v - 1 - static_cast<std::int64_t>(rng() % 6));
    }
    return exact_vector::from_runs(r);
}

std::string show(const exact_vector& x) {
    std::string s;
    for (const auto& [i, v] : x.entries()) s += std::to_string(i) + ":" + format_rational(v) + " ";
    return s;
}

}  // namespace

TEST(Seminorms, Examples) {
    const auto x = dense({1, 1, 1});
    EXPECT_EQ(mu_p_pow(x, int_set(), exponent(2u)), 0);
    EXPECT_EQ(mu_p_pow(x, S({2, 3}), exponent(1u)), 2);
    EXPECT_THROW(mu_p_pow(x, S({1, 2}), exponent(1u)), invalid_input);
    EXPECT_EQ(beta_p_pow(exact_vector::dense({rational(1)}), chain{S({1})}, exponent(2u)), 1);
    EXPECT_EQ(beta_p_pow(x, chain{S({1}), S({2, 3})}, exponent(2u)), 5);
    EXPECT_DOUBLE_EQ(beta_p(x, chain{S({1}), S({2, 3})}, exponent(2u)), std::sqrt(5.0));
    EXPECT_THROW(beta_p_pow(x, chain{S({1})}, exponent(1u)), unsupported_exponent);
}

TEST(Seminorms, SingleSetChainEqualsMu1) {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 300; ++t) {
        const auto x = random_exact(rng, 8, 16);
        const std::int64_t a = 1 + static_cast<std::int64_t>(rng() % 8);
        const auto f = int_set::range(a, a + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(a)));
        for (unsigned p : {2u, 3u}) EXPECT_EQ(beta_p_pow(x, chain{f}, exponent(p)), rpow(mu_p_pow(x, f, exponent(1u)), p));
    }
}

TEST(SimpleNorms, Examples) {
    EXPECT_EQ(lp_norm_pow(dense({1}), exponent(3u)), 1);
    EXPECT_DOUBLE_EQ(lp_norm(dense({1, 1, 1}), exponent(2u)), std::sqrt(3.0));
    EXPECT_EQ(lp_norm_pow(exact_vector(), exponent(2u)), 0);
    EXPECT_EQ(sup_norm(exact_vector::from_entries({{5, rational(1)}})), 1);
    EXPECT_EQ(sup_norm(exact_vector::from_entries({{2, rational(3)}, {7, rational(-4)}})), 4);
    EXPECT_EQ(sup_norm(exact_vector()), 0);
}

TEST(SchreierNorm, Examples) {
    for (std::int64_t n : {1, 4, 100}) {
        const auto e = exact_vector::from_entries({{n, rational(1)}});
        const auto r = schreier_norm(e, exponent(2u));
        EXPECT_EQ(r.value_pow, 1);
        EXPECT_EQ(r.witness_set, S({n}));
    }
    const auto r = schreier_norm(dense({1, 1, 1}), exponent(1u));
    EXPECT_EQ(r.value_pow, 2);
    EXPECT_EQ(r.witness_set, S({2, 3}));
    const auto z = schreier_norm(exact_vector(), exponent(1u));
    EXPECT_TRUE(z.zero);
    EXPECT_EQ(z.value_pow, 0);
    EXPECT_TRUE(z.witness_set.empty());
}

TEST(BaernsteinNorm, Examples) {
    const auto e = exact_vector::from_entries({{6, rational(1)}});
    const auto r1 = baernstein_norm(e, exponent(3u));
    EXPECT_EQ(r1.value_pow, 1);
    EXPECT_EQ(r1.witness_chain, chain{S({6})});
    const auto r = baernstein_norm(dense({1, 1, 1}), exponent(2u));
    EXPECT_EQ(r.value_pow, 5);
    EXPECT_DOUBLE_EQ(r.value, std::sqrt(5.0));
    EXPECT_EQ(r.witness_chain, (chain{S({1}), S({2, 3})}));
    EXPECT_THROW(baernstein_norm(dense({1}), exponent(1u)), unsupported_exponent);
    const auto z = baernstein_norm(exact_vector(), exponent(2u));
    EXPECT_TRUE(z.zero);
    EXPECT_TRUE(z.witness_chain.empty());
}

TEST(Oracle, Examples) {
    EXPECT_EQ(oracle_norm(dense({1, 1, 1}), exponent(1u), space_kind::sp).value_pow, 2);
    EXPECT_EQ(oracle_norm(dense({1, 1, 1}), exponent(2u), space_kind::bp).value_pow, 5);
    EXPECT_EQ(oracle_norm(exact_vector::from_entries({{9, rational(1)}}), exponent(3u), space_kind::bp).value_pow, 1);
    EXPECT_THROW(oracle_norm(exact_vector::constant_on(int_set::range(1, 15), rational(1)), exponent(1u), space_kind::sp),
                 oracle_limit);
}

TEST(SchreierNorm, MatchesBruteForceWithLexSmallestWitness) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 400; ++t) {
        const auto x = random_exact(rng, 8, 14);
        const brute b(x);
        for (unsigned p : {1u, 2u, 3u}) {
            std::vector<int_set> arg;
            const rational ref = b.sp(p, &arg);
            const auto r = schreier_norm(x, exponent(p));
            ASSERT_EQ(r.value_pow, ref) << show(x);
            ASSERT_EQ(r.witness_set, *std::min_element(arg.begin(), arg.end()));
            ASSERT_EQ(r.value_pow, oracle_norm(x, exponent(p), space_kind::sp).value_pow);
        }
    }
}

TEST(BaernsteinNorm, MatchesBruteForceWithLexSmallestWitness) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 250; ++t) {
        const auto x = random_exact(rng, 7, 12);
        const brute b(x);
        for (unsigned p : {2u, 3u}) {
            std::vector<chain> arg;
            const rational ref = b.bp(p, &arg);
            for (auto strategy : {bp_strategy::automatic, bp_strategy::explicit_dp}) {
                const auto r = baernstein_norm(x, exponent(p), strategy);
                ASSERT_EQ(r.value_pow, ref) << show(x);
                ASSERT_EQ(r.witness_chain, *std::min_element(arg.begin(), arg.end())) << show(x);
            }
        }
    }
}

TEST(BaernsteinNorm, MonotonePathAgreesWithExplicitDp) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 300; ++t) {
        const auto x = random_decreasing(rng, 1 + static_cast<int>(rng() % 8), 1 + static_cast<std::int64_t>(rng() % 12));
        ASSERT_TRUE(x.abs_nonincreasing());
        for (unsigned p : {2u, 3u}) {
            const auto m = baernstein_norm(x, exponent(p), bp_strategy::monotone);
            const auto e = baernstein_norm(x, exponent(p), bp_strategy::explicit_dp);
            ASSERT_EQ(m.value_pow, e.value_pow) << show(x);
            ASSERT_EQ(m.witness_chain, e.witness_chain) << show(x);
            ASSERT_EQ(beta_p_pow(x, m.witness_chain, exponent(p)), m.value_pow);
        }
        const auto xf = x.convert<double>();
        const auto mf = baernstein_norm(xf, exponent::from_double(1.5), bp_strategy::monotone);
        const auto ef = baernstein_norm(xf, exponent::from_double(1.5), bp_strategy::explicit_dp);
        ASSERT_TRUE(close_rel(mf.value, ef.value)) << show(x);
    }
    EXPECT_THROW(baernstein_norm(dense({1, 2}), exponent(2u), bp_strategy::monotone), invalid_input);
}

TEST(BaernsteinNorm, DecreasingVectorsAttainOnCoveringChain) {
    // Some optimal chain covers the whole support when x >= 0 is non-increasing.
    std::mt19937_64 rng(8);
    for (int t = 0; t < 150; ++t) {
        auto x = random_decreasing(rng, 1 + static_cast<int>(rng() % 4), 3).abs();
        if (x.support_size() > 8) continue;
        for (unsigned p : {2u, 3u}) {
            std::vector<chain> arg;
            brute(x).bp(p, &arg);
            const auto supp = x.support();
            const bool covered = std::any_of(arg.begin(), arg.end(), [&](const chain& c) { return chain_union(c) == supp; });
            EXPECT_TRUE(covered) << show(x);
        }
    }
}

TEST(Norms, FloatModeTracksExactMode) {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 300; ++t) {
        const auto x = random_exact(rng, 9, 20);
        const auto xf = x.convert<double>();
        for (unsigned p : {1u, 2u, 3u}) {
            EXPECT_TRUE(close_rel(schreier_norm(xf, exponent(p)).value, schreier_norm(x, exponent(p)).value));
            if (p > 1) {
                EXPECT_TRUE(close_rel(baernstein_norm(xf, exponent(p)).value, baernstein_norm(x, exponent(p)).value));
            }
        }
        const exponent h = exponent::from_double(2.5);
        EXPECT_TRUE(close_rel(schreier_norm(xf, h).value, oracle_norm(xf, h, space_kind::sp).value));
        EXPECT_TRUE(close_rel(baernstein_norm(xf, h).value, oracle_norm(xf, h, space_kind::bp).value));
    }
}

TEST(Norms, HomogeneityAndTriangleInequality) {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 300; ++t) {
        const auto x = random_exact(rng, 9, 20), y = random_exact(rng, 9, 20);
        const rational c(-3, 2);
        for (unsigned p : {1u, 2u, 3u}) {
            const exponent e(p);
            const rational cp = rpow(rational(3, 2), p);
            EXPECT_EQ(schreier_norm(x.scaled(c), e).value_pow, cp * schreier_norm(x, e).value_pow);
            EXPECT_LE(schreier_norm(x + y, e).value,
                      (schreier_norm(x, e).value + schreier_norm(y, e).value) * (1 + 1e-12));
            if (p == 1) continue;
            EXPECT_EQ(baernstein_norm(x.scaled(c), e).value_pow, cp * baernstein_norm(x, e).value_pow);
            EXPECT_LE(baernstein_norm(x + y, e).value,
                      (baernstein_norm(x, e).value + baernstein_norm(y, e).value) * (1 + 1e-12));
        }
    }
}

TEST(Norms, UnconditionalAndMonotone) {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 300; ++t) {
        const auto x = random_exact(rng, 10, 20);
        std::vector<std::pair<std::int64_t, rational>> flipped, bigger;
        for (const auto& [i, v] : x.entries()) {
            flipped.emplace_back(i, rng() % 2 ? rational(-v) : v);
            bigger.emplace_back(i, v * rational(1 + static_cast<std::int64_t>(rng() % 3)));
        }
        const auto xs = exact_vector::from_entries(flipped), xb = exact_vector::from_entries(bigger);
        for (unsigned p : {1u, 2u, 3u}) {
            const exponent e(p);
            EXPECT_EQ(schreier_norm(xs, e).value_pow, schreier_norm(x, e).value_pow);
            EXPECT_LE(schreier_norm(x, e).value_pow, schreier_norm(xb, e).value_pow);
            if (p == 1) continue;
            EXPECT_EQ(baernstein_norm(xs, e).value_pow, baernstein_norm(x, e).value_pow);
            EXPECT_LE(baernstein_norm(x, e).value_pow, baernstein_norm(xb, e).value_pow);
        }
    }
}

TEST(Norms, OrderingBetweenNorms) {
    std::mt19937_64 rng(14);
    for (int t = 0; t < 300; ++t) {
        const auto x = random_exact(rng, 10, 24);
        const rational s1 = schreier_norm(x, exponent(1u)).value_pow;
        for (unsigned p : {1u, 2u, 3u}) EXPECT_LE(rpow(sup_norm(x), p), schreier_norm(x, exponent(p)).value_pow);
        for (unsigned p : {2u, 3u}) EXPECT_GE(baernstein_norm(x, exponent(p)).value_pow, rpow(s1, p));
    }
}

TEST(Norms, AdmissibleSupport) {
    // With supp x admissible and x >= 0, the B_p norm is the plain sum and the S_p norm is the l_p norm.
    std::mt19937_64 rng(15);
    for (int t = 0; t < 300; ++t) {
        const std::int64_t a = 2 + static_cast<std::int64_t>(rng() % 10);
        std::vector<std::pair<std::int64_t, rational>> e;
        for (std::int64_t k = 0; k < a; ++k)
            if (rng() % 2 || k == 0) e.emplace_back(a + 2 * k, rational(1 + static_cast<std::int64_t>(rng() % 5), 2));
        const auto x = exact_vector::from_entries(e);
        ASSERT_TRUE(is_schreier(x.support()));
        rational sum = 0;
        for (const auto& [i, v] : x.entries()) sum += v;
        EXPECT_EQ(schreier_norm(x, exponent(1u)).value_pow, sum);
        for (unsigned p : {2u, 3u}) {
            EXPECT_EQ(baernstein_norm(x, exponent(p)).value_pow, rpow(sum, p));
            EXPECT_EQ(schreier_norm(x, exponent(p)).value_pow, lp_norm_pow(x, exponent(p)));
        }
    }
}

TEST(Sigma, Examples) {
    EXPECT_EQ(sigma_operator(dense({1, 1}), {S({1}), S({2})}), dense({1, 1}));
    EXPECT_TRUE(sigma_operator(exact_vector::from_entries({{2, rational(1)}, {3, rational(-1)}}), {S({2, 3})}).empty());
    EXPECT_EQ(sigma_operator(dense({1, 1, 1}), {S({1}), S({2, 3})}), dense({1, 2}));
    EXPECT_THROW(sigma_operator(dense({1}), {S({2, 3}), S({3})}), invalid_input);
    EXPECT_THROW(sigma_operator(dense({1}), {S({1, 2})}), invalid_input);
}

TEST(Sigma, ContractionIntoLp) {
    std::mt19937_64 rng(16);
    for (int t = 0; t < 400; ++t) {
        const auto x = random_exact(rng, 12, 24);
        std::vector<int_set> sets;
        std::int64_t pos = 1 + static_cast<std::int64_t>(rng() % 3);
        while (pos <= 24) {
            const std::int64_t size = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(pos));
            std::vector<std::int64_t> e{pos};
            for (std::int64_t k = 1; k < size; ++k) e.push_back(pos + k + static_cast<std::int64_t>(rng() % 2) * k);
            sets.push_back(S(e));
            pos = sets.back().max() + 1 + static_cast<std::int64_t>(rng() % 3);
        }
        const auto y = sigma_operator(x, sets);
        for (unsigned p : {2u, 3u}) EXPECT_LE(lp_norm_pow(y, exponent(p)), baernstein_norm(x, exponent(p)).value_pow);
    }
}

TEST(Rearrangement, Examples) {
    const auto x = exact_vector::from_entries({{5, rational(3)}, {2, rational(-1)}});
    EXPECT_EQ(decreasing_rearrangement(x), dense({3, 1}));
    EXPECT_EQ(decreasing_rearrangement(dense({1})), dense({1}));
    EXPECT_EQ(decreasing_rearrangement(exact_vector::constant_on(int_set::range(4, 7), rational(1, 4))),
              exact_vector::constant_on(int_set::range(1, 4), rational(1, 4)));
}

TEST(Rearrangement, DecreasingOrderMinimizesSchreierNorm) {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 300; ++t) {
        const auto x = decreasing_rearrangement(random_exact(rng, 10, 10, true));
        auto e = x.entries();
        std::vector<rational> vals;
        for (auto& [i, v] : e) vals.push_back(v);
        std::shuffle(vals.begin(), vals.end(), rng);
        const auto permuted = exact_vector::dense(vals);
        for (unsigned p : {1u, 2u, 3u})
            EXPECT_LE(schreier_norm(x, exponent(p)).value_pow, schreier_norm(permuted, exponent(p)).value_pow);
    }
}

TEST(Norms, LongRunsStayExact) {
    // x = 1/n on [n, 2n) for n = 2^k: every maximal interval has S_1 mass 1.
    auto build = [](int levels) {
        std::vector<value_run<rational>> runs;
        for (std::int64_t n = 1; n < (std::int64_t(1) << levels); n *= 2) runs.push_back({n, n, rational(1, n)});
        return exact_vector::from_runs(runs);
    };
    const auto x = build(21);
    EXPECT_EQ(schreier_norm(x, exponent(1u)).value_pow, 1);
    const auto b = baernstein_norm(x, exponent(2u));
    EXPECT_EQ(b.value_pow, 21);
    EXPECT_EQ(beta_p_pow(x, b.witness_chain, exponent(2u)), 21);
    const auto huge = build(31);
    EXPECT_EQ(schreier_norm(huge, exponent(1u)).value_pow, 1);
    EXPECT_THROW(baernstein_norm(huge, exponent(2u)), invalid_input);
}

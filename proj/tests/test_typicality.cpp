#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "ncl/rng.hpp"
#include "ncl/typicality.hpp"

using namespace ncl;
using helpers::bits;
using helpers::pairs;

TEST_CASE("uniform sources make every sequence typical") {
    const TypicalSpec spec{helpers::uniform(bits()), 5, 1e-9};
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Sequence s;
        for (int j = 0; j < 5; ++j) s.push_back(static_cast<int>(rng.next_u64() % 2));
        CHECK(is_typical(s, spec));
    }
    CHECK(typical_set(spec).size() == 32);

    const TypicalSpec three{helpers::uniform(bits()), 3, 1e-9};
    CHECK(typical_set(three).size() == 8);
}

TEST_CASE("degenerate source admits only the point sequence") {
    const Pmf point(bits(), {1.0, 0.0});
    const TypicalSpec spec{point, 5, 0.05};
    CHECK(is_typical(Sequence(5, 0), spec));
    CHECK_FALSE(is_typical({0, 0, 1, 0, 0}, spec)); // zero-probability symbol
    const auto set = typical_set(spec);
    REQUIRE(set.size() == 1);
    CHECK(set[0] == Sequence(5, 0));
}

TEST_CASE("skewed binary source: exactly the single-zero sequences at n=4") {
    const Pmf p(bits(), {0.25, 0.75});
    const TypicalSpec spec{p, 4, 0.15};

    // oracle: exhaustive evaluation of the criterion over all 16 sequences
    const double h = -(0.25 * std::log(0.25) + 0.75 * std::log(0.75));
    int oracle_count = 0;
    for (int r = 0; r < 16; ++r) {
        const Sequence s = seq_unrank(static_cast<std::uint64_t>(r), 4, 2);
        double lp = 0.0;
        for (int v : s) lp += std::log(v == 0 ? 0.25 : 0.75);
        if (std::abs(-lp / 4 - h) <= 0.15) ++oracle_count;
    }
    CHECK(oracle_count == 4);

    const auto set = typical_set(spec);
    REQUIRE(set.size() == 4);
    for (const auto& s : set) {
        int zeros = 0;
        for (int v : s) zeros += (v == 0) ? 1 : 0;
        CHECK(zeros == 1);
        CHECK(is_typical(s, spec));
    }
    // lexicographic order
    for (std::size_t i = 1; i < set.size(); ++i) CHECK(seq_rank(set[i - 1], 2) < seq_rank(set[i], 2));
}

TEST_CASE("typical_set respects the enumeration guard") {
    const TypicalSpec spec{helpers::uniform(bits()), 30, 0.1};
    CHECK_THROWS_AS(typical_set(spec, 1 << 20), Error);
}

TEST_CASE("conditionally typical sets") {
    const DetFunction id = helpers::identity_fn(bits());
    const DetFunction andf = helpers::and_fn();

    SUBCASE("injective f: exactly the preimage, always typical") {
        const CondTypicalSpec spec{helpers::uniform(bits()), id, {1, 0, 1}, 0.0};
        const auto set = cond_typical_set(spec, 3);
        REQUIRE(set.size() == 1);
        CHECK(set[0] == Sequence{1, 0, 1});
    }

    SUBCASE("uniform conditional: all preimage sequences at delta = 0") {
        for (int n : {1, 2, 3, 4}) {
            const CondTypicalSpec spec{helpers::uniform(pairs()), andf, Sequence(n, 0), 0.0};
            const auto set = cond_typical_set(spec, n);
            CHECK(set.size() == static_cast<std::size_t>(std::pow(3, n)));
            for (const auto& s : set) CHECK(is_cond_typical(s, spec));
        }
    }

    SUBCASE("skewed source over the AND preimages, brute force") {
        const Pmf skew(pairs(), {0.1, 0.2, 0.3, 0.4});
        const CondTypicalSpec spec{skew, andf, {0, 0}, 0.2};

        // oracle: evaluate the criterion over the 9 preimage pairs directly
        const double c0 = 0.1 / 0.6, c1 = 0.2 / 0.6, c2 = 0.3 / 0.6;
        const double cond[3] = {c0, c1, c2};
        const double hclass = -(c0 * std::log(c0) + c1 * std::log(c1) + c2 * std::log(c2));
        std::vector<Sequence> oracle;
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                const double lp = std::log(cond[a]) + std::log(cond[b]);
                if (std::abs(-lp / 2 - hclass) <= 0.2) oracle.push_back({a, b});
            }
        }
        const auto set = cond_typical_set(spec, 2);
        CHECK(set == oracle);
        CHECK(cond_typical_count(spec, 2) == oracle.size());
        // subset of the exact preimage
        for (const auto& s : set) {
            for (int v : s) CHECK(v <= 2);
        }
    }

    SUBCASE("empty preimage") {
        const DetFunction to_zero(bits(), bits(), {0, 0});
        const CondTypicalSpec spec{helpers::uniform(bits()), to_zero, {1}, 0.5};
        CHECK_THROWS_AS(cond_typical_set(spec, 1), Error);
    }

    SUBCASE("first-k enumeration matches the full set") {
        const Pmf skew(pairs(), {0.1, 0.2, 0.3, 0.4});
        const CondTypicalSpec spec{skew, andf, {0, 0, 0}, 0.3};
        const auto full = cond_typical_set(spec, 3);
        const auto first = cond_typical_ranks_first(spec, 3, 4);
        REQUIRE(first.size() == std::min<std::size_t>(4, full.size()));
        for (std::size_t i = 0; i < first.size(); ++i) {
            CHECK(first[i] == seq_rank(full[i], 4));
        }
    }
}

TEST_CASE("aep bounds") {
    const TypicalSpec spec{helpers::uniform(bits()), 10, 0.1};
    const AepBounds bounds = aep_bounds(spec, 0.05);
    CHECK(bounds.card_upper == doctest::Approx(std::exp(10 * (std::log(2.0) + 0.1))).epsilon(1e-12));
    CHECK(bounds.card_upper == doctest::Approx(2784.0).epsilon(1e-3));
    CHECK(typical_set(spec).size() == 1024);
    CHECK(1024.0 <= bounds.card_upper);

    // vacuous bound at huge delta
    const AepBounds vac = aep_bounds({Pmf(bits(), {0.3, 0.7}), 6, 50.0}, 0.0);
    CHECK(vac.card_upper >= std::pow(2.0, 6));

    // degenerate source, count 1 <= e^{n delta}
    const Pmf point(bits(), {1.0, 0.0});
    CHECK(typical_set({point, 5, 0.01}).size() == 1);
    CHECK(1.0 <= std::exp(5 * 0.01));
}

TEST_CASE("enumerated counts satisfy the exact upper bound") {
    const std::vector<Pmf> pmfs{Pmf(bits(), {0.25, 0.75}), Pmf(bits(), {0.1, 0.9}),
                                Pmf(pairs(), {0.1, 0.2, 0.3, 0.4}),
                                helpers::uniform(bits())};
    for (const Pmf& p : pmfs) {
        const double h = entropy(p);
        for (int n : {2, 5, 9, 16}) {
            if (std::pow(p.size(), n) > (1 << 24)) continue;
            for (double delta : {0.02, 0.1, 0.3}) {
                const auto count = typical_set({p, n, delta}).size();
                CHECK(static_cast<double>(count) <= std::exp(n * (h + delta)) * (1.0 + 1e-9));
            }
        }
    }
}

TEST_CASE("typical mass grows with n at fixed absolute delta") {
    // exact binomial masses as the baseline, Monte Carlo within 3 sigma
    const double delta = 0.15;
    for (const auto& probs : {std::vector<double>{0.25, 0.75}, std::vector<double>{0.1, 0.9}}) {
        const Pmf p(bits(), probs);
        const double h = entropy(p);
        const double s0 = -std::log(p[0]);
        const double s1 = -std::log(p[1]);

        double previous_exact = 0.0;
        for (int n : {8, 16, 32, 64}) {
            // exact mass: sum the binomial law over the typical zero-counts
            double exact = 0.0;
            double log_choose = 0.0; // log C(n, j) built incrementally
            for (int j = 0; j <= n; ++j) {
                if (j > 0) log_choose += std::log(static_cast<double>(n - j + 1) / j);
                const double surprisal = (j * s0 + (n - j) * s1) / n;
                if (std::abs(surprisal - h) <= delta) {
                    exact += std::exp(log_choose + j * std::log(p[0]) + (n - j) * std::log(p[1]));
                }
            }
            CHECK(exact >= previous_exact - 1e-12);
            previous_exact = exact;

            // Monte Carlo agreement
            const int trials = 100000;
            Rng rng(1234 + static_cast<std::uint64_t>(n));
            int hits = 0;
            const TypicalSpec spec{p, n, delta};
            Sequence s(static_cast<std::size_t>(n));
            for (int t = 0; t < trials; ++t) {
                for (int j = 0; j < n; ++j) {
                    s[static_cast<std::size_t>(j)] = rng.uniform() < p[0] ? 0 : 1;
                }
                if (is_typical(s, spec)) ++hits;
            }
            const double estimate = static_cast<double>(hits) / trials;
            const double sigma = std::sqrt(exact * (1.0 - exact) / trials);
            CHECK(std::abs(estimate - exact) <= 3.5 * sigma + 1e-9);
        }
    }
}

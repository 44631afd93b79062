#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "ncl/coding.hpp"
#include "ncl/infomeasures.hpp"

using namespace ncl;
using helpers::bits;
using helpers::pairs;

TEST_CASE("lemma_code_size") {
    CHECK(lemma_code_size(0.5, 7, 0.5) == 1);  // e^0
    CHECK(lemma_code_size(0.3, 9, 0.5) == 0);  // floor of sub-unity
    CHECK(lemma_code_size(0.8, 10, 0.5) == 20); // floor(e^3)
}

TEST_CASE("rate at or below H(X|f(X)) is refused") {
    const auto inst = helpers::and_bsc(0.1);
    const double h = typical_input_rate(inst).h_x_given_y;
    CHECK_THROWS_WITH_AS(build_feinstein_code(inst, 2, 0.1, h), doctest::Contains("RATE_TOO_HIGH"),
                         Error);
    CHECK_THROWS_AS(build_feinstein_code(inst, 2, 0.1, h - 0.1), Error);
}

TEST_CASE("noiseless identity at n=1 yields one singleton region per symbol") {
    const DetFunction id = helpers::identity_fn(bits());
    const auto inst = NoisyComputationInstance(helpers::uniform(bits()), id, fn_as_channel(id));
    // H(X|f(X)) = 0; ask for |A| = 2 codewords
    const FeinsteinCode code = build_feinstein_code(inst, 1, 0.1, std::log(2.5));
    CHECK(code.target_m == 2);
    REQUIRE(code.achieved_m() == 2);
    CHECK_FALSE(code.exhausted);
    for (std::size_t i = 0; i < code.entries.size(); ++i) {
        REQUIRE(code.entries[i].region.size() == 1);
        CHECK(code.entries[i].region[0] == seq_rank(code.entries[i].codeword, 2));
    }
    CHECK(exact_max_error(code, inst, 0.0) == 0.0);
    CHECK(regions_disjoint(code));
}

TEST_CASE("noiseless AND at n=2 packs all four codewords with zero error") {
    const DetFunction f = helpers::and_fn();
    const auto inst = NoisyComputationInstance(helpers::uniform(pairs()), f, fn_as_channel(f));
    const double h = typical_input_rate(inst).h_x_given_y;
    FeinsteinOptions opts;
    opts.delta_y = 10.0; // admit every candidate codeword
    const FeinsteinCode code = build_feinstein_code(inst, 2, 0.01, h + std::log(4.5) / 2, opts);
    REQUIRE(code.achieved_m() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(code.entries[i].codeword == seq_unrank(i, 2, 2));
        REQUIRE(code.entries[i].region.size() == 1);
        CHECK(code.entries[i].region[0] == i);
    }
    CHECK(exact_max_error(code, inst, 0.0) == 0.0);
    CHECK(exact_max_error(code, inst, 0.0, /*strict=*/true) == 0.0);
    CHECK(regions_disjoint(code));
}

TEST_CASE("identity with bsc(0.1) at n=10 achieves at least two codewords") {
    const auto inst = helpers::identity_bsc(0.1);
    const double b = typical_input_rate(inst).b;
    const FeinsteinCode code = build_feinstein_code(inst, 10, 0.2, 0.5 * b);
    CHECK(code.achieved_m() >= 2);
    CHECK(regions_disjoint(code));
    // full verification by exact summation over region complements
    const double err = exact_max_error(code, inst, 0.0);
    CHECK(err > 0.0);
    CHECK(err <= 0.2);
}

TEST_CASE("exact_max_error trivial cases") {
    const auto inst = helpers::identity_bsc(0.1);
    // single codeword whose region is all of C^n: complement mass 0
    FeinsteinCode full;
    full.n = 3;
    full.epsilon = 0.5;
    full.target_m = 1;
    CodeEntry entry;
    entry.codeword = {0, 0, 0};
    for (std::uint64_t r = 0; r < 8; ++r) entry.region.push_back(r);
    full.entries.push_back(entry);
    CHECK(exact_max_error(full, inst, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("strict mode covers atypical members on a non-decomposable device") {
    // device rows differ inside the preimage class of 0: symbol 10 is far
    // noisier than 00/01, and its conditional probability (0.1) keeps it
    // atypical at small delta
    const Pmf source(pairs(), {0.45, 0.45, 0.1, 0.0});
    const DMChannel F(pairs(), bits(), {{0.99, 0.01}, {0.99, 0.01}, {0.55, 0.45}, {0.01, 0.99}});
    const auto inst = NoisyComputationInstance(source, helpers::and_fn(), F);

    FeinsteinOptions opts;
    opts.delta_y = 10.0;
    opts.verify_delta = 0.05;
    const double h = typical_input_rate(inst).h_x_given_y;
    const FeinsteinCode code = build_feinstein_code(inst, 2, 0.35, h + std::log(1.5) / 2, opts);
    REQUIRE(code.achieved_m() >= 1);

    const double typical_only = exact_max_error(code, inst, 0.05);
    const double strict = exact_max_error(code, inst, 0.05, /*strict=*/true);
    CHECK(strict >= typical_only);
}

TEST_CASE("greedy construction is deterministic") {
    const auto inst = helpers::and_bsc(0.05);
    FeinsteinOptions opts;
    opts.delta_y = 10.0;
    const double h = typical_input_rate(inst).h_x_given_y;
    const FeinsteinCode a = build_feinstein_code(inst, 5, 0.25, h + std::log(16.5) / 5, opts);
    const FeinsteinCode b = build_feinstein_code(inst, 5, 0.25, h + std::log(16.5) / 5, opts);
    CHECK(a == b);
    CHECK(a.achieved_m() == 16);
}

TEST_CASE("exhaustion is flagged and the partial code is returned") {
    const auto inst = helpers::identity_bsc(0.1);
    // demand far more codewords than n=4 can hold at epsilon=0.2
    const FeinsteinCode code = build_feinstein_code(inst, 4, 0.2, std::log(2.0));
    CHECK(code.target_m > code.achieved_m());
    CHECK(code.exhausted);
    CHECK(code.achieved_m() >= 1);
    CHECK(exact_max_error(code, inst, 0.0) <= 0.2);
}

TEST_CASE("lemma existence at desk scale: achieved m reaches the lemma size") {
    const auto inst = helpers::identity_bsc(0.1);
    const double b = typical_input_rate(inst).b;
    const double rate = 0.5 * b;
    int n0 = -1;
    for (int n : {4, 8, 12}) {
        const std::uint64_t demanded = lemma_code_size(rate, n, 0.0);
        const FeinsteinCode code = build_feinstein_code(inst, n, 0.2, rate);
        INFO("n=", n, " lemma=", demanded, " achieved=", code.achieved_m());
        CHECK(exact_max_error(code, inst, 0.0) <= 0.2);
        if (code.achieved_m() >= demanded && n0 < 0) n0 = n;
    }
    REQUIRE(n0 >= 0);
    CHECK(n0 <= 12);
    MESSAGE("lemma existence holds from n0 = ", n0);
}

TEST_CASE("serialization round trip is bit exact") {
    const auto inst = helpers::identity_bsc(0.1);
    const double b = typical_input_rate(inst).b;
    const FeinsteinCode code = build_feinstein_code(inst, 8, 0.2, 0.5 * b);
    REQUIRE(code.achieved_m() >= 1);

    const std::string text = serialize_code(code, inst);
    const FeinsteinCode parsed = parse_code(text, inst);
    CHECK(parsed == code);
    CHECK(serialize_code(parsed, inst) == text);

    // an awkward epsilon still round-trips exactly
    FeinsteinCode odd = code;
    odd.epsilon = 0.1 + 0.2 / 3.0;
    const FeinsteinCode odd_parsed = parse_code(serialize_code(odd, inst), inst);
    CHECK(odd_parsed.epsilon == odd.epsilon);

    CHECK_THROWS_AS(parse_code("not a code file", inst), Error);
    CHECK_THROWS_AS(parse_code("ncl-code v1\nn x\n", inst), Error);
}

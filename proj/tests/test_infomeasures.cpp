#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "ncl/infomeasures.hpp"
#include "ncl/rng.hpp"

using namespace ncl;
using helpers::bits;
using helpers::pairs;

namespace {

// random instance generator for property tests: alphabets up to 4 symbols
struct RandomInstance {
    explicit RandomInstance(std::uint64_t seed) : rng(seed) {}

    Rng rng;

    Alphabet alphabet(int size, const char* prefix) {
        std::vector<std::string> labels;
        for (int i = 0; i < size; ++i) labels.push_back(std::string(prefix) + std::to_string(i));
        return Alphabet(labels);
    }

    Pmf pmf(const Alphabet& a) {
        std::vector<double> w(static_cast<std::size_t>(a.size()));
        double sum = 0.0;
        for (double& v : w) {
            v = -std::log(std::max(rng.uniform(), 1e-12));
            sum += v;
        }
        double partial = 0.0;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            w[i] /= sum;
            partial += w[i];
        }
        w.back() = std::max(0.0, 1.0 - partial); // sums to 1 up to the last ulp
        return Pmf(a, w);
    }

    DetFunction fn(const Alphabet& domain, const Alphabet& codomain) {
        std::vector<int> table(static_cast<std::size_t>(domain.size()));
        // force at least one preimage for symbol 0 so images are nonempty
        for (std::size_t i = 0; i < table.size(); ++i) {
            table[i] = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(codomain.size()));
        }
        return DetFunction(domain, codomain, table);
    }

    DMChannel channel(const Alphabet& in, const Alphabet& out) {
        std::vector<std::vector<double>> rows;
        for (int x = 0; x < in.size(); ++x) {
            std::vector<double> row(static_cast<std::size_t>(out.size()));
            double sum = 0.0;
            for (double& v : row) {
                v = -std::log(std::max(rng.uniform(), 1e-12));
                sum += v;
            }
            double partial = 0.0;
            for (std::size_t i = 0; i + 1 < row.size(); ++i) {
                row[i] /= sum;
                partial += row[i];
            }
            row.back() = std::max(0.0, 1.0 - partial);
            rows.push_back(std::move(row));
        }
        return DMChannel(in, out, rows);
    }

    NoisyComputationInstance instance(int na, int nb, int nc) {
        const Alphabet a = alphabet(na, "a");
        const Alphabet b = alphabet(nb, "b");
        const Alphabet c = alphabet(nc, "c");
        const Pmf source = pmf(a);
        return NoisyComputationInstance(source, fn(a, b), channel(a, c));
    }
};

} // namespace

TEST_CASE("entropy spot values") {
    CHECK(entropy(helpers::uniform(bits())) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(entropy(Pmf(bits(), {1.0, 0.0})) == 0.0);

    // oracle: direct high-precision evaluation of -sum p ln p
    const double oracle = -(0.25 * std::log(0.25) + 0.75 * std::log(0.75));
    CHECK(oracle == doctest::Approx(0.562335).epsilon(1e-6));
    CHECK(entropy(Pmf(bits(), {0.25, 0.75})) == doctest::Approx(oracle).epsilon(1e-15));
}

TEST_CASE("joint_yz of identity and bsc") {
    const auto inst = helpers::identity_bsc(0.1);
    const JointPmf j = joint_yz(inst.source, inst.f, inst.F);
    // hand multiplication of the 2x2 case
    CHECK(j.prob(0, 0) == doctest::Approx(0.45).epsilon(1e-15));
    CHECK(j.prob(0, 1) == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(j.prob(1, 0) == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(j.prob(1, 1) == doctest::Approx(0.45).epsilon(1e-15));

    // row marginal equals the pushforward of the source
    const Pmf rows = j.row_marginal();
    CHECK(rows[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("joint_yz of a noiseless cascade forces z = y") {
    const DetFunction f = helpers::and_fn();
    const auto inst = NoisyComputationInstance(helpers::uniform(pairs()), f, fn_as_channel(f));
    const JointPmf j = joint_yz(inst.source, inst.f, inst.F);
    CHECK(j.prob(0, 0) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(j.prob(1, 1) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(j.prob(0, 1) == 0.0);
    CHECK(j.prob(1, 0) == 0.0);
}

TEST_CASE("uniform-noise device makes the joint a product") {
    const auto inst = helpers::and_uniform_noise();
    const JointPmf j = joint_yz(inst.source, inst.f, inst.F);
    const Pmf rows = j.row_marginal();
    const Pmf cols = j.col_marginal();
    for (int y = 0; y < 2; ++y) {
        for (int z = 0; z < 2; ++z) {
            CHECK(j.prob(y, z) == doctest::Approx(rows[y] * cols[z]).epsilon(1e-12));
        }
    }
    CHECK(mutual_information(j) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("conditional entropy and mutual information on canonical joints") {
    // independent uniform bits
    const JointPmf indep(bits(), bits(), {{0.25, 0.25}, {0.25, 0.25}});
    CHECK(conditional_entropy(indep) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(mutual_information(indep) == doctest::Approx(0.0).epsilon(1e-12));

    // perfectly correlated bits
    const JointPmf corr(bits(), bits(), {{0.5, 0.0}, {0.0, 0.5}});
    CHECK(conditional_entropy(corr) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(mutual_information(corr) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    // identity + bsc(0.1): closed form ln 2 - H2(0.1)
    const auto inst = helpers::identity_bsc(0.1);
    const JointPmf j = joint_yz(inst.source, inst.f, inst.F);
    const double closed = std::log(2.0) - helpers::h2(0.1);
    CHECK(closed == doctest::Approx(0.368064).epsilon(1e-6));
    CHECK(mutual_information(j) == doctest::Approx(closed).epsilon(1e-12));
}

TEST_CASE("typical input rate spot values") {
    // noiseless injective device reveals x, so b = H(X)
    const auto noiseless = NoisyComputationInstance(
        helpers::uniform(bits()), helpers::identity_fn(bits()), fn_as_channel(helpers::identity_fn(bits())));
    CHECK(typical_input_rate(noiseless).b == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    // uniform-noise device: independence forces I = 0, b = H(X|f(X))
    const RateReport indep = typical_input_rate(helpers::and_uniform_noise());
    CHECK(indep.i_yz == doctest::Approx(0.0).epsilon(1e-10));
    const double oracle_hxy = 0.75 * std::log(3.0);
    CHECK(oracle_hxy == doctest::Approx(0.823959).epsilon(1e-6));
    CHECK(indep.b == doctest::Approx(oracle_hxy).epsilon(1e-12));

    // AND after bsc(0.1): closed form H(X) - [H(Y) + H2(0.1) - H2(0.3)]
    const RateReport composed = typical_input_rate(helpers::and_bsc(0.1));
    const double oracle = std::log(4.0) - (helpers::h2(0.25) + helpers::h2(0.1) - helpers::h2(0.3));
    CHECK(oracle == doctest::Approx(1.109741).epsilon(1e-6));
    CHECK(composed.b == doctest::Approx(oracle).epsilon(1e-9));

    // identity/bsc(0.1): b = ln 2 - H2(0.1)
    const RateReport id = typical_input_rate(helpers::identity_bsc(0.1));
    CHECK(id.b == doctest::Approx(std::log(2.0) - helpers::h2(0.1)).epsilon(1e-12));
}

TEST_CASE("definition identity holds on random instances") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        RandomInstance gen(seed);
        const int na = 2 + static_cast<int>(gen.rng.next_u64() % 3);
        const int nb = 2 + static_cast<int>(gen.rng.next_u64() % 3);
        const int nc = 2 + static_cast<int>(gen.rng.next_u64() % 3);
        const auto inst = gen.instance(na, nb, nc);
        const RateReport r = typical_input_rate(inst);
        CHECK(std::abs(r.b - (r.h_x - r.h_y_given_z)) <= 1e-12);
        CHECK(std::abs(r.b - (r.h_x_given_y + r.i_yz)) <= 1e-10);
        CHECK(r.b <= r.h_x + 1e-12);
        CHECK(r.i_yz >= -1e-12);
        CHECK(r.h_x >= 0.0);
        CHECK(r.h_x <= std::log(static_cast<double>(na)) + 1e-12);
    }
}

TEST_CASE("data processing along the cascade") {
    for (std::uint64_t seed = 1000; seed < 1050; ++seed) {
        RandomInstance gen(seed);
        const auto inst = gen.instance(4, 3, 3);
        const RateReport r = typical_input_rate(inst);
        // I(X; F(X)) from the (X, Z) joint
        std::vector<std::vector<double>> xz;
        for (int x = 0; x < inst.source.size(); ++x) {
            std::vector<double> row;
            for (int z = 0; z < inst.F.output().size(); ++z) {
                row.push_back(inst.source[x] * inst.F.prob(x, z));
            }
            xz.push_back(std::move(row));
        }
        const JointPmf jxz(inst.source.alphabet(), inst.F.output(), xz);
        CHECK(r.i_yz <= mutual_information(jxz) + 1e-10);
    }
}

TEST_CASE("bijective f reduces b to channel mutual information") {
    for (std::uint64_t seed = 2000; seed < 2020; ++seed) {
        RandomInstance gen(seed);
        const Alphabet a = gen.alphabet(3, "a");
        const Pmf source = gen.pmf(a);
        const DMChannel F = gen.channel(a, gen.alphabet(3, "c"));
        const auto inst = NoisyComputationInstance(source, helpers::identity_fn(a), F);
        const RateReport r = typical_input_rate(inst);

        std::vector<std::vector<double>> xz;
        for (int x = 0; x < 3; ++x) {
            std::vector<double> row;
            for (int z = 0; z < 3; ++z) row.push_back(source[x] * F.prob(x, z));
            xz.push_back(std::move(row));
        }
        CHECK(r.b == doctest::Approx(mutual_information(JointPmf(a, F.output(), xz))).epsilon(1e-10));
    }
}

TEST_CASE("reverse posterior") {
    // symmetric case: posterior equals the channel
    const ReversePosterior sym = reverse_posterior(helpers::uniform(bits()), bsc(0.1));
    CHECK(sym.undefined_rows.empty());
    CHECK((*sym.rows[0])[0] == doctest::Approx(0.9).epsilon(1e-12));
    CHECK((*sym.rows[0])[1] == doctest::Approx(0.1).epsilon(1e-12));

    // degenerate source: every defined row is a point mass
    const ReversePosterior point = reverse_posterior(Pmf(bits(), {1.0, 0.0}), bsc(0.1));
    for (const auto& row : point.rows) {
        REQUIRE(row.has_value());
        CHECK((*row)[0] == doctest::Approx(1.0).epsilon(1e-12));
    }

    // hand Bayes: P(x=0 | z=0) = 0.225 / 0.3
    const ReversePosterior skew = reverse_posterior(Pmf(bits(), {0.25, 0.75}), bsc(0.1));
    CHECK((*skew.rows[0])[0] == doctest::Approx(0.75).epsilon(1e-12));

    // zero marginal: output symbol never produced
    const DMChannel half(bits(), Alphabet({"u", "v"}), {{1.0, 0.0}, {1.0, 0.0}});
    const ReversePosterior undef = reverse_posterior(helpers::uniform(bits()), half);
    CHECK(undef.undefined_rows == std::vector<int>{1});
    CHECK_THROWS_AS(undef.as_channel(), Error);
}

TEST_CASE("block conditional factorizes into the single-letter cascade") {
    // exact blockwise P(z^n | y^n) against the product of cascade rows,
    // n <= 3, on fixed and random instances
    auto check_factorization = [](const NoisyComputationInstance& inst, int n) {
        const DMChannel cas = cascade_channel(inst.source, inst.f, inst.F);
        const int na = inst.source.size();
        const int nb = inst.f.codomain().size();
        const int nc = inst.F.output().size();
        const auto pow_int = [](int b, int e) {
            std::uint64_t v = 1;
            for (int i = 0; i < e; ++i) v *= static_cast<std::uint64_t>(b);
            return v;
        };
        // blockwise joint P(y^n, z^n) by full enumeration over x^n
        std::vector<std::vector<double>> joint(pow_int(nb, n),
                                               std::vector<double>(pow_int(nc, n), 0.0));
        for (std::uint64_t xr = 0; xr < pow_int(na, n); ++xr) {
            const Sequence xs = seq_unrank(xr, n, na);
            double px = 1.0;
            for (int s : xs) px *= inst.source[s];
            if (px == 0.0) continue;
            const std::uint64_t yr = seq_rank(apply_block(inst.f, xs), nb);
            for (std::uint64_t zr = 0; zr < pow_int(nc, n); ++zr) {
                const Sequence zs = seq_unrank(zr, n, nc);
                double pz = 1.0;
                for (int j = 0; j < n; ++j) pz *= inst.F.prob(xs[static_cast<std::size_t>(j)],
                                                              zs[static_cast<std::size_t>(j)]);
                joint[yr][zr] += px * pz;
            }
        }
        for (std::uint64_t yr = 0; yr < pow_int(nb, n); ++yr) {
            double py = 0.0;
            for (double v : joint[yr]) py += v;
            if (py <= 1e-14) continue;
            const Sequence ys = seq_unrank(yr, n, nb);
            for (std::uint64_t zr = 0; zr < pow_int(nc, n); ++zr) {
                const Sequence zs = seq_unrank(zr, n, nc);
                double product = 1.0;
                for (int j = 0; j < n; ++j) {
                    product *= cas.prob(ys[static_cast<std::size_t>(j)], zs[static_cast<std::size_t>(j)]);
                }
                CHECK(joint[yr][zr] / py == doctest::Approx(product).epsilon(1e-10));
            }
        }
    };

    check_factorization(helpers::and_bsc(0.1), 2);
    check_factorization(helpers::and_bsc(0.1), 3);
    check_factorization(helpers::identity_bsc(0.2), 3);
    for (std::uint64_t seed = 3000; seed < 3005; ++seed) {
        RandomInstance gen(seed);
        check_factorization(gen.instance(3, 2, 2), 3);
    }
}

#include "ncl/infomeasures.hpp"

#include <cmath>

namespace ncl {

JointPmf::JointPmf(Alphabet row, Alphabet col, std::vector<std::vector<double>> probs)
    : row_(std::move(row)), col_(std::move(col)), probs_(std::move(probs)) {
    if (probs_.size() != static_cast<std::size_t>(row_.size())) {
        throw Error(Errc::validation_error, "joint pmf row count mismatch");
    }
    double total = 0.0;
    for (const auto& r : probs_) {
        if (r.size() != static_cast<std::size_t>(col_.size())) {
            throw Error(Errc::validation_error, "joint pmf column count mismatch");
        }
        for (double v : r) {
            if (v < 0.0) throw Error(Errc::negative_prob, "joint pmf entry is negative");
            total += v;
        }
    }
    if (std::abs(total - 1.0) > kProbTolerance) {
        throw Error(Errc::bad_sum, "joint pmf sums to " + std::to_string(total));
    }
}

Pmf JointPmf::row_marginal() const {
    std::vector<double> m(static_cast<std::size_t>(row_.size()), 0.0);
    for (int r = 0; r < row_.size(); ++r) {
        for (int c = 0; c < col_.size(); ++c) m[static_cast<std::size_t>(r)] += prob(r, c);
    }
    return Pmf(row_, std::move(m));
}

Pmf JointPmf::col_marginal() const {
    std::vector<double> m(static_cast<std::size_t>(col_.size()), 0.0);
    for (int r = 0; r < row_.size(); ++r) {
        for (int c = 0; c < col_.size(); ++c) m[static_cast<std::size_t>(c)] += prob(r, c);
    }
    return Pmf(col_, std::move(m));
}

double entropy_of(std::span<const double> probs) {
    double h = 0.0;
    for (double p : probs) {
        if (p > 0.0) h -= p * std::log(p);
    }
    return h;
}

double entropy(const Pmf& p) { return entropy_of(p.probs()); }

double entropy(const JointPmf& joint) {
    double h = 0.0;
    for (const auto& row : joint.probs()) h += entropy_of(row);
    return h;
}

JointPmf joint_yz(const Pmf& px, const DetFunction& f, const DMChannel& F) {
    if (f.domain() != px.alphabet() || F.input() != px.alphabet()) {
        throw Error(Errc::alphabet_mismatch, "source, f and F must share the input alphabet");
    }
    std::vector<std::vector<double>> probs(
        static_cast<std::size_t>(f.codomain().size()),
        std::vector<double>(static_cast<std::size_t>(F.output().size()), 0.0));
    for (int x = 0; x < px.size(); ++x) {
        const double p = px[x];
        if (p == 0.0) continue;
        auto& row = probs[static_cast<std::size_t>(f(x))];
        for (int z = 0; z < F.output().size(); ++z) row[static_cast<std::size_t>(z)] += p * F.prob(x, z);
    }
    return JointPmf(f.codomain(), F.output(), std::move(probs));
}

double conditional_entropy(const JointPmf& joint) {
    return entropy(joint) - entropy(joint.col_marginal());
}

double mutual_information(const JointPmf& joint) {
    return entropy(joint.row_marginal()) + entropy(joint.col_marginal()) - entropy(joint);
}

RateReport typical_input_rate(const NoisyComputationInstance& inst) {
    RateReport report;
    report.h_x = entropy(inst.source);

    const JointPmf yz = joint_yz(inst.source, inst.f, inst.F);
    report.h_y = entropy(yz.row_marginal());
    report.h_y_given_z = entropy(yz) - entropy(yz.col_marginal());
    report.i_yz = mutual_information(yz);

    // H(X | f(X)) computed directly over the preimage classes, so the
    // identity check against h_x - h_y does not reuse the same path.
    double h_x_given_y = 0.0;
    for (int y : inst.f.image()) {
        double mass = 0.0;
        for (int x : inst.f.preimage(y)) mass += inst.source[x];
        if (mass <= 0.0) continue;
        double h = 0.0;
        for (int x : inst.f.preimage(y)) {
            const double q = inst.source[x] / mass;
            if (q > 0.0) h -= q * std::log(q);
        }
        h_x_given_y += mass * h;
    }
    report.h_x_given_y = h_x_given_y;

    report.b = report.h_x - report.h_y_given_z;
    return report;
}

ReversePosterior reverse_posterior(const Pmf& px, const DMChannel& F) {
    if (F.input() != px.alphabet()) {
        throw Error(Errc::alphabet_mismatch, "source and channel input alphabets differ");
    }
    ReversePosterior rp{F.output(), px.alphabet(), {}, {}};
    rp.rows.resize(static_cast<std::size_t>(F.output().size()));
    for (int z = 0; z < F.output().size(); ++z) {
        double marginal = 0.0;
        for (int x = 0; x < px.size(); ++x) marginal += px[x] * F.prob(x, z);
        if (marginal <= 0.0) {
            rp.undefined_rows.push_back(z);
            continue;
        }
        std::vector<double> row(static_cast<std::size_t>(px.size()), 0.0);
        for (int x = 0; x < px.size(); ++x) row[static_cast<std::size_t>(x)] = px[x] * F.prob(x, z) / marginal;
        rp.rows[static_cast<std::size_t>(z)] = std::move(row);
    }
    return rp;
}

DMChannel ReversePosterior::as_channel() const {
    if (!undefined_rows.empty()) {
        throw Error(Errc::zero_marginal,
                    "output symbol '" + input.label(undefined_rows.front()) +
                        "' has zero marginal probability");
    }
    std::vector<std::vector<double>> matrix;
    matrix.reserve(rows.size());
    for (const auto& row : rows) matrix.push_back(*row);
    return DMChannel(input, output, std::move(matrix));
}

DMChannel cascade_channel(const Pmf& px, const DetFunction& f, const DMChannel& F) {
    const JointPmf yz = joint_yz(px, f, F);
    const Pmf py = yz.row_marginal();
    std::vector<std::vector<double>> matrix(
        static_cast<std::size_t>(f.codomain().size()),
        std::vector<double>(static_cast<std::size_t>(F.output().size()), 0.0));
    for (int y = 0; y < f.codomain().size(); ++y) {
        const bool in_image = !f.preimage(y).empty();
        if (py[y] <= 0.0) {
            if (in_image) {
                throw Error(Errc::zero_marginal,
                            "image symbol '" + f.codomain().label(y) + "' has zero probability");
            }
            // y unreachable: park the row on an arbitrary point mass so the
            // matrix stays stochastic; no caller conditions on it.
            matrix[static_cast<std::size_t>(y)][0] = 1.0;
            continue;
        }
        for (int z = 0; z < F.output().size(); ++z) {
            matrix[static_cast<std::size_t>(y)][static_cast<std::size_t>(z)] = yz.prob(y, z) / py[y];
        }
    }
    return DMChannel(f.codomain(), F.output(), std::move(matrix));
}

} // namespace ncl

#pragma once

#include <optional>
#include <vector>

#include "ncl/model.hpp"

namespace ncl {

// All quantities in this module are in nats; 0*ln 0 is taken as 0 throughout.

// Joint distribution over rowAlphabet x colAlphabet. Entries must be
// nonnegative and sum to 1 within kProbTolerance.
class JointPmf {
  public:
    JointPmf(Alphabet row, Alphabet col, std::vector<std::vector<double>> probs);

    const Alphabet& row_alphabet() const { return row_; }
    const Alphabet& col_alphabet() const { return col_; }
    double prob(int r, int c) const {
        return probs_.at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(c));
    }
    const std::vector<std::vector<double>>& probs() const { return probs_; }

    Pmf row_marginal() const;
    Pmf col_marginal() const;

  private:
    Alphabet row_;
    Alphabet col_;
    std::vector<std::vector<double>> probs_;
};

double entropy(const Pmf& p);
double entropy(const JointPmf& joint);

// Entropy of a raw weight vector (weights >= 0, summing to anything close to
// a probability mass); shared by the exact and clipped evaluation paths.
double entropy_of(std::span<const double> probs);

// Hookup of (Y, Z) = (f(X), F(X)): P(y,z) = sum over x in f^-1(y) of
// P_X(x) * F(z|x).
JointPmf joint_yz(const Pmf& px, const DetFunction& f, const DMChannel& F);

// H(row | col) = H(joint) - H(col marginal)
double conditional_entropy(const JointPmf& joint);
// I(row; col) = H(row) + H(col) - H(joint), clamped at >= 0 only by algebra
double mutual_information(const JointPmf& joint);

// Everything typical_input_rate derives, all in nats/symbol.
// b = h_x - h_y_given_z, and independently b = h_x_given_y + i_yz.
struct RateReport {
    double h_x = 0.0;
    double h_y = 0.0;
    double h_x_given_y = 0.0;
    double h_y_given_z = 0.0;
    double i_yz = 0.0;
    double b = 0.0;
};

RateReport typical_input_rate(const NoisyComputationInstance& inst);

// Bayes posterior P(x|z). Output symbols with zero marginal probability get
// no fabricated row: they stay disengaged and are listed in undefined_rows.
struct ReversePosterior {
    Alphabet input;  // C
    Alphabet output; // A
    std::vector<std::optional<std::vector<double>>> rows;
    std::vector<int> undefined_rows;

    // Throws ZERO_MARGINAL if any row is undefined.
    DMChannel as_channel() const;
};

ReversePosterior reverse_posterior(const Pmf& px, const DMChannel& F);

// The induced single-letter channel from Y = f(X) to Z = F(X) (the cascade
// of the reverse function channel with F). Under the i.i.d./memoryless
// instantiation the block conditional P(z^n | y^n) factorizes into a product
// of these rows, because the x_j are conditionally independent given y^n;
// tests check this against blockwise enumeration for n <= 3. Throws
// ZERO_MARGINAL when some y in the image has zero probability.
DMChannel cascade_channel(const Pmf& px, const DetFunction& f, const DMChannel& F);

} // namespace ncl

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncl/model.hpp"

namespace ncl {

// One code entry: the codeword y^n identifying the input class
// A_i^n = (f^n)^{-1}(y_i), and its decision region as sorted lexicographic
// ranks of z-sequences.
struct CodeEntry {
    Sequence codeword;
    std::vector<std::uint64_t> region;

    bool operator==(const CodeEntry&) const = default;
};

// [M, n, epsilon] code for a noisy computation: pairwise distinct codewords,
// pairwise disjoint regions, verified max error <= epsilon.
struct FeinsteinCode {
    int n = 0;
    double epsilon = 0.0;
    std::uint64_t target_m = 0;
    bool exhausted = false;
    std::vector<CodeEntry> entries;

    std::uint64_t achieved_m() const { return entries.size(); }

    bool operator==(const FeinsteinCode&) const = default;
};

struct FeinsteinOptions {
    // Typicality slack restricting candidate codewords y^n; defaults to
    // 0.1 * H(P_Y). The free slack parameters of the construction are
    // deliberately exposed rather than pinned.
    std::optional<double> delta_y;
    // Conditional-typicality slack used when verifying per-input errors on
    // instances whose device is not constant on preimage classes; defaults
    // to 0.1 * H(X|f(X)).
    std::optional<double> verify_delta;
    std::uint64_t guard = std::uint64_t(1) << 24;
};

// floor(e^{n (rate_r - h_x_given_fx)}), floored at 0.
std::uint64_t lemma_code_size(double rate_r, int n, double h_x_given_fx);

// Greedy maximal-code construction on the induced cascade channel P(z|y).
//
// Candidates y^n are scanned in lexicographic order restricted to typical
// sequences of the pushforward P_Y. A candidate's region is built from its
// maximum-likelihood z-sequences: z^n in decreasing conditional probability
// P(z^n|y^n) (ties lexicographic), with previously claimed z-sequences
// removed, until the region reaches conditional mass 1 - epsilon. The
// candidate is accepted iff P(region^c | y^n) <= epsilon, i.e. iff the
// claimed part of the space holds conditional mass at most epsilon; skipped
// candidates claim nothing and are not retried. Construction stops at
// target_m = lemma_code_size(rate_r, n, H(X|f(X))) accepted codewords or at
// exhaustion (exhausted flag set, code still returned).
//
// Every returned code is verified: when the device rows vary inside a
// preimage class, acceptance additionally checks the per-input error of all
// conditionally typical members, so exact_max_error(code) <= epsilon holds
// for the returned object.
FeinsteinCode build_feinstein_code(const NoisyComputationInstance& inst, int n, double epsilon,
                                   double rate_r, const FeinsteinOptions& opts = {});

// Exact maximal error of the code: max over entries i and over inputs
// x^n in A_i^n (all of them in strict mode, only conditionally typical ones
// otherwise) of 1 - P(region_i | x^n), computed by exact summation.
double exact_max_error(const FeinsteinCode& code, const NoisyComputationInstance& inst,
                       double delta, bool strict = false,
                       std::uint64_t guard = std::uint64_t(1) << 24);

bool regions_disjoint(const FeinsteinCode& code);

// Text serialization: n, epsilon and per-entry codeword, region size and
// region members, one '.'-joined sequence per line. Bit-exact round-trip.
std::string serialize_code(const FeinsteinCode& code, const NoisyComputationInstance& inst);
FeinsteinCode parse_code(const std::string& text, const NoisyComputationInstance& inst);

} // namespace ncl

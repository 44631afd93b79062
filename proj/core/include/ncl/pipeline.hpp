#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ncl/coding.hpp"
#include "ncl/model.hpp"

namespace ncl {

// A source together with the function computed on it; used for both the
// outer pair (X', g) and the inner pair (X, f).
struct SourceFunction {
    Pmf source;
    DetFunction fn;
};

// H(X | g(X)) for a per-symbol function, computed over the preimage classes.
double conditional_entropy_given_fn(const Pmf& source, const DetFunction& fn);

struct BlockLengths {
    int k = 0;
    int n = 0;
    double gamma = 0.0;
    bool outer_injective = false;
};

// Smallest k <= k_max admitting an integer n with
// gamma < n/k < gamma + delta2 / H(X|f(X)), gamma = H(X'|g(X')) / H(X|f(X)).
// Throws DEGENERATE_GAMMA when f is injective on the support (classical
// channel coding; use the plain Feinstein code path instead) and NO_PAIR
// when no k <= k_max works. gamma = 0 (injective g) returns the minimal
// pair with the outer_injective flag set.
BlockLengths choose_block_lengths(const SourceFunction& outer, const SourceFunction& inner,
                                  double delta2, int k_max);

// One encoded message: a typical k-sequence of X', its codeword slot, and
// the code entry whose input class holds it.
struct EncoderEntry {
    std::uint64_t xprime_rank;
    std::uint64_t x_rank;
    std::int32_t entry;
};

struct PipelineDiagnostics {
    std::uint64_t nu1_max = 0; // largest group of typical k-sequences
    std::uint64_t nu2_min = 0; // smallest conditionally typical slot count
    std::uint64_t nu3 = 0;     // number of groups (used codewords)
    std::uint64_t m = 0;       // codewords available
};

// The reliable-computation model end to end: injective typical-sequence
// encoder U, the noisy device, and the two-stage decoder (region -> y_i ->
// V). Immutable after construction.
struct ReliablePipeline {
    SourceFunction outer;
    NoisyComputationInstance inst;
    int k = 0;
    int n = 0;
    double delta = 0.0;
    double gamma = 0.0;
    FeinsteinCode code;

    std::vector<EncoderEntry> encoder;       // sorted by xprime_rank
    std::vector<std::uint64_t> decoder_v;    // used entry index -> g-value rank
    std::unordered_map<std::uint64_t, std::int32_t> region_owner;
    PipelineDiagnostics diagnostics;

    // typicality tables for the outer source
    std::vector<double> xprime_surprisal;
    std::vector<bool> xprime_zero;
    double h_xprime = 0.0;

    const EncoderEntry* find_message(std::uint64_t xprime_rank) const;
    bool xprime_typical(const Sequence& xprime) const;
};

// Builds U and V: (a) typical k-sequences of X' grouped by their g^k value,
// (b) groups in decreasing probability (ties lexicographic) assigned to code
// entries in construction order, (c) group members mapped injectively, both
// sides in lexicographic order, onto the conditionally typical sequences of
// the entry's input class, (d) decoder V sends the entry's codeword to the
// group's g-value. delta is the typicality slack for both the outer
// sequences and the conditional slots.
ReliablePipeline build_pipeline(const SourceFunction& outer, const NoisyComputationInstance& inst,
                                int n, int k, FeinsteinCode code, double delta,
                                std::uint64_t guard = std::uint64_t(1) << 24);

enum class RunOutcome { correct, wrong_decode, no_region, rejected_atypical };

struct RunResult {
    RunOutcome outcome = RunOutcome::rejected_atypical;
    Sequence truth_gvalue;
    Sequence decoded_gvalue; // empty when no region claimed the output
    bool correct = false;
};

// Encode, run the device once (seeded), decode.
RunResult run_once(const ReliablePipeline& p, const Sequence& xprime_seq, std::uint64_t seed);

// The true quantities satisfy 0 <= avg <= max <= 1; the avg estimate is
// Monte Carlo and can drift above an exact max by sampling noise within
// ci_halfwidth.
struct ErrorEstimate {
    double avg_error = 0.0;
    double max_message_error = 0.0;
    long trials = 0;
    long rejected_atypical = 0;
    std::uint64_t seed = 0;
    double ci_halfwidth = 0.0; // Wilson 95% on avg_error
    bool max_is_exact = false;
};

// Draws x'^k i.i.d. from the outer source, skipping atypical draws.
// avg_error is Monte Carlo over accepted draws; max_message_error is the
// exact per-message value whenever |C|^n is inside the enumeration guard
// (and the summation budget), the max per-group empirical error otherwise.
// Deterministic given (pipeline, trials, seed).
ErrorEstimate simulate(const ReliablePipeline& p, long trials, std::uint64_t seed);

// Exact per-message error profile from region masses; available when the
// summation fits the budget.
struct ExactErrorProfile {
    bool available = false;
    double max_error = 0.0;
    double avg_error = 0.0; // weighted by the typical-conditioned source law
};

ExactErrorProfile exact_error_profile(const ReliablePipeline& p,
                                      std::uint64_t op_budget = std::uint64_t(1) << 28);

// Smallest Pe in [0,1] (bisection, tolerance 1e-9) satisfying
//   H(X') - H(X'|g(X')) - gamma * I(f(X);F(X)) <= H2(Pe)/k + Pe ln|B'| ,
// 0 when the left side is nonpositive. All entropies in nats.
double converse_bound(double h_xprime, double h_xprime_given_g, double gamma, double i_f_F,
                      int k, int out_alphabet_size);

struct SweepRowSpec {
    int k = 0;
    int n = 0;
    std::optional<double> epsilon; // per-row override of the code epsilon
};

struct SweepConfig {
    SourceFunction outer;
    NoisyComputationInstance inst;
    std::vector<SweepRowSpec> schedule;

    // Rate-targeted alternative to an explicit schedule: k(n) is the integer
    // closest to rate_target * n / H(X'), clamped to the encoder admissible
    // range k <= n / gamma.
    std::optional<double> rate_target;
    std::vector<int> n_list;

    double epsilon = 0.2;
    double delta = 0.0; // 0 -> default_delta of each enumerated source
    std::optional<double> code_delta_y;
    long trials = 100000;
    std::uint64_t seed = 0;
    std::uint64_t guard = std::uint64_t(1) << 24;
};

struct SweepRow {
    int k = 0;
    int n = 0;
    double r_nats = 0.0;
    double capacity_estimate = 0.0;
    double avg_error = 0.0;
    double max_error = 0.0;
    double converse_lower_bound = 0.0;
    long trials = 0;
    std::uint64_t seed = 0;
    std::string status; // "ok" or the error code that stopped the row
    bool max_is_exact = false;
};

// Builds code + pipeline and simulates for every row; per-row failures are
// recorded in the row and the sweep continues. R = k H(X') / n.
std::vector<SweepRow> rate_error_sweep(const SweepConfig& config);

// CSV with exactly the row schema, header included, LF line endings.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);
std::string sweep_to_json(const std::vector<SweepRow>& rows);

} // namespace ncl

#pragma once

#include <stdexcept>
#include <string>

namespace ncl {

// Every failure mode the library reports. The names double as the stable
// machine-readable codes printed by the CLI.
enum class Errc {
    negative_prob,
    bad_sum,
    bad_row_sum,
    bad_p,
    partial_table,
    unknown_symbol,
    alphabet_mismatch,
    zero_marginal,
    zero_prob_symbol,
    no_convergence,
    alphabet_too_large,
    too_large,
    empty_preimage,
    rate_too_high,
    degenerate_gamma,
    no_pair,
    too_few_codewords,
    group_overflow,
    no_accepted_trials,
    rate_above_encoder_limit,
    parse_error,
    schema_error,
    validation_error,
};

const char* errc_name(Errc code);

// True for conditions where the request is well formed but cannot be
// satisfied (exit code 3 in the CLI); false for malformed input (exit 2).
bool errc_is_infeasibility(Errc code);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

} // namespace ncl

#include "ncl/error.hpp"

namespace ncl {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::negative_prob: return "NEGATIVE_PROB";
        case Errc::bad_sum: return "BAD_SUM";
        case Errc::bad_row_sum: return "BAD_ROW_SUM";
        case Errc::bad_p: return "BAD_P";
        case Errc::partial_table: return "PARTIAL_TABLE";
        case Errc::unknown_symbol: return "UNKNOWN_SYMBOL";
        case Errc::alphabet_mismatch: return "ALPHABET_MISMATCH";
        case Errc::zero_marginal: return "ZERO_MARGINAL";
        case Errc::zero_prob_symbol: return "ZERO_PROB_SYMBOL";
        case Errc::no_convergence: return "NO_CONVERGENCE";
        case Errc::alphabet_too_large: return "ALPHABET_TOO_LARGE";
        case Errc::too_large: return "TOO_LARGE";
        case Errc::empty_preimage: return "EMPTY_PREIMAGE";
        case Errc::rate_too_high: return "RATE_TOO_HIGH";
        case Errc::degenerate_gamma: return "DEGENERATE_GAMMA";
        case Errc::no_pair: return "NO_PAIR";
        case Errc::too_few_codewords: return "TOO_FEW_CODEWORDS";
        case Errc::group_overflow: return "GROUP_OVERFLOW";
        case Errc::no_accepted_trials: return "NO_ACCEPTED_TRIALS";
        case Errc::rate_above_encoder_limit: return "RATE_ABOVE_ENCODER_LIMIT";
        case Errc::parse_error: return "PARSE_ERROR";
        case Errc::schema_error: return "SCHEMA_ERROR";
        case Errc::validation_error: return "VALIDATION_ERROR";
    }
    return "UNKNOWN";
}

bool errc_is_infeasibility(Errc code) {
    switch (code) {
        case Errc::no_convergence:
        case Errc::alphabet_too_large:
        case Errc::too_large:
        case Errc::empty_preimage:
        case Errc::rate_too_high:
        case Errc::degenerate_gamma:
        case Errc::no_pair:
        case Errc::too_few_codewords:
        case Errc::group_overflow:
        case Errc::no_accepted_trials:
        case Errc::rate_above_encoder_limit:
        case Errc::zero_marginal:
            return true;
        default:
            return false;
    }
}

} // namespace ncl

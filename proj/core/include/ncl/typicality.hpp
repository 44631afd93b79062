#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ncl/infomeasures.hpp"
#include "ncl/model.hpp"

namespace ncl {

inline constexpr std::uint64_t kEnumerationGuard = std::uint64_t(1) << 24;

// Comparisons against delta absorb this much floating-point rounding, so the
// exact boundary cases (uniform sources, uniform conditionals) land inside
// the set even at delta = 0.
inline constexpr double kTypicalitySlop = 1e-12;

// Weak (entropy) typicality: |-(1/n) ln p(x^n) - H| <= delta.
struct TypicalSpec {
    Pmf pmf;
    int n;
    double delta;
};

// Default slack is relative, 0.1 * H(pmf), which keeps the sets
// nondegenerate across sources of different entropy.
double default_delta(const Pmf& pmf);

// A sequence containing a zero-probability symbol is never typical.
bool is_typical(const Sequence& xseq, const TypicalSpec& spec);

// All typical sequences in lexicographic order. Throws TOO_LARGE when
// |A|^n exceeds the guard (callers must fall back to sampling).
std::vector<Sequence> typical_set(const TypicalSpec& spec, std::uint64_t guard = kEnumerationGuard);

// Same set as lexicographic ranks; the compact form large enumerations use.
std::vector<std::uint64_t> typical_ranks(const TypicalSpec& spec,
                                         std::uint64_t guard = kEnumerationGuard);

// Conditional typicality given a specific y-sequence: x^n must satisfy
// f(x^n) = y^n and |-(1/n) ln P(x^n|y^n) - (1/n) sum_j H(X|Y=y_j)| <= delta.
// Centering on the sequence-specific conditional entropy (rather than the
// averaged H(X|Y)) is what makes uniform preimage classes exactly typical at
// delta = 0.
struct CondTypicalSpec {
    Pmf source;
    DetFunction f;
    Sequence yseq;
    double delta;
};

bool is_cond_typical(const Sequence& xseq, const CondTypicalSpec& spec);

// All conditionally typical x-sequences, lexicographic. Throws
// EMPTY_PREIMAGE when some y_j has no preimage, TOO_LARGE past the guard.
std::vector<Sequence> cond_typical_set(const CondTypicalSpec& spec, int n,
                                       std::uint64_t guard = kEnumerationGuard);

// Number of conditionally typical sequences, without materializing them
// (still O(preimage product) time).
std::uint64_t cond_typical_count(const CondTypicalSpec& spec, int n,
                                 std::uint64_t guard = kEnumerationGuard);

// First max_count conditionally typical x-sequences in lexicographic order,
// as ranks over the source alphabet.
std::vector<std::uint64_t> cond_typical_ranks_first(const CondTypicalSpec& spec, int n,
                                                    std::uint64_t max_count,
                                                    std::uint64_t guard = kEnumerationGuard);

// AEP cardinality bounds for the typical set. card_upper holds for every n;
// card_lower = (1 - 2 epsilon) e^{n(H-delta)} only for n large.
struct AepBounds {
    double card_upper;
    double card_lower;
    std::string note;
};

AepBounds aep_bounds(const TypicalSpec& spec, double epsilon);

} // namespace ncl

#include "ncl/typicality.hpp"

#include <cmath>

namespace ncl {

namespace {

// -ln p per symbol, with negative infinity encoded as a miss flag.
struct SurprisalTable {
    std::vector<double> value;
    std::vector<bool> zero;

    explicit SurprisalTable(const Pmf& pmf) {
        value.resize(static_cast<std::size_t>(pmf.size()), 0.0);
        zero.resize(static_cast<std::size_t>(pmf.size()), false);
        for (int i = 0; i < pmf.size(); ++i) {
            if (pmf[i] > 0.0) {
                value[static_cast<std::size_t>(i)] = -std::log(pmf[i]);
            } else {
                zero[static_cast<std::size_t>(i)] = true;
            }
        }
    }
};

std::uint64_t checked_pow(std::uint64_t base, int exp, std::uint64_t guard) {
    std::uint64_t v = 1;
    for (int i = 0; i < exp; ++i) {
        if (v > guard / base) return guard + 1;
        v *= base;
    }
    return v;
}

} // namespace

double default_delta(const Pmf& pmf) { return 0.1 * entropy(pmf); }

bool is_typical(const Sequence& xseq, const TypicalSpec& spec) {
    if (spec.n < 1 || static_cast<int>(xseq.size()) != spec.n) {
        throw Error(Errc::validation_error, "sequence length does not match spec");
    }
    const SurprisalTable table(spec.pmf);
    double total = 0.0;
    for (int s : xseq) {
        if (s < 0 || s >= spec.pmf.size()) {
            throw Error(Errc::unknown_symbol, "sequence symbol index out of range");
        }
        if (table.zero[static_cast<std::size_t>(s)]) return false;
        total += table.value[static_cast<std::size_t>(s)];
    }
    const double h = entropy(spec.pmf);
    return std::abs(total / spec.n - h) <= spec.delta + kTypicalitySlop;
}

std::vector<std::uint64_t> typical_ranks(const TypicalSpec& spec, std::uint64_t guard) {
    if (spec.n < 1) throw Error(Errc::validation_error, "block length must be >= 1");
    const int a = spec.pmf.size();
    const std::uint64_t space = checked_pow(static_cast<std::uint64_t>(a), spec.n, guard);
    if (space > guard) {
        throw Error(Errc::too_large, "|A|^n exceeds the enumeration guard");
    }
    const SurprisalTable table(spec.pmf);
    const double h = entropy(spec.pmf);
    const double bound = spec.delta + kTypicalitySlop;

    std::vector<std::uint64_t> result;
    Sequence seq(static_cast<std::size_t>(spec.n), 0);
    std::vector<double> prefix(static_cast<std::size_t>(spec.n) + 1, 0.0);
    std::vector<int> prefix_zero(static_cast<std::size_t>(spec.n) + 1, 0);

    // depth-first odometer over all sequences keeps prefix sums incremental
    int depth = 0;
    while (true) {
        if (depth == spec.n) {
            if (prefix_zero[static_cast<std::size_t>(depth)] == 0 &&
                std::abs(prefix[static_cast<std::size_t>(depth)] / spec.n - h) <= bound) {
                result.push_back(seq_rank(seq, a));
            }
            --depth;
            while (depth >= 0 && seq[static_cast<std::size_t>(depth)] == a - 1) --depth;
            if (depth < 0) break;
            ++seq[static_cast<std::size_t>(depth)];
        }
        const int s = seq[static_cast<std::size_t>(depth)];
        prefix[static_cast<std::size_t>(depth) + 1] =
            prefix[static_cast<std::size_t>(depth)] + table.value[static_cast<std::size_t>(s)];
        prefix_zero[static_cast<std::size_t>(depth) + 1] =
            prefix_zero[static_cast<std::size_t>(depth)] + (table.zero[static_cast<std::size_t>(s)] ? 1 : 0);
        ++depth;
        if (depth < spec.n) seq[static_cast<std::size_t>(depth)] = 0;
    }
    return result;
}

std::vector<Sequence> typical_set(const TypicalSpec& spec, std::uint64_t guard) {
    std::vector<Sequence> result;
    for (std::uint64_t rank : typical_ranks(spec, guard)) {
        result.push_back(seq_unrank(rank, spec.n, spec.pmf.size()));
    }
    return result;
}

namespace {

// Per-position machinery shared by the conditional enumeration and count:
// for position j, the class members of y_j with their conditional surprisal
// -ln P(x|y_j), plus the class conditional entropy H(X|Y=y_j).
struct CondPosition {
    std::vector<int> members;
    std::vector<double> surprisal;
    std::vector<bool> zero;
    double class_entropy = 0.0;
};

std::vector<CondPosition> cond_positions(const CondTypicalSpec& spec, int n) {
    if (n < 1 || static_cast<int>(spec.yseq.size()) != n) {
        throw Error(Errc::validation_error, "y-sequence length does not match n");
    }
    std::vector<CondPosition> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int y : spec.yseq) {
        if (y < 0 || y >= spec.f.codomain().size()) {
            throw Error(Errc::unknown_symbol, "y-sequence symbol index out of range");
        }
        const auto& cls = spec.f.preimage(y);
        if (cls.empty()) {
            throw Error(Errc::empty_preimage,
                        "symbol '" + spec.f.codomain().label(y) + "' has no preimage");
        }
        CondPosition pos;
        double mass = 0.0;
        for (int x : cls) mass += spec.source[x];
        for (int x : cls) {
            pos.members.push_back(x);
            const double q = mass > 0.0 ? spec.source[x] / mass : 0.0;
            if (q > 0.0) {
                pos.surprisal.push_back(-std::log(q));
                pos.zero.push_back(false);
                pos.class_entropy += -q * std::log(q);
            } else {
                pos.surprisal.push_back(0.0);
                pos.zero.push_back(true);
            }
        }
        out.push_back(std::move(pos));
    }
    return out;
}

// Visit receives (choice vector, deviation from the sequence conditional
// entropy) for every zero-free leaf; returning false stops the walk.
template <typename Visit>
void cond_walk(const std::vector<CondPosition>& positions, int n, std::uint64_t guard, Visit&& visit) {
    std::uint64_t product = 1;
    double center = 0.0;
    for (const auto& pos : positions) {
        if (product > guard / pos.members.size()) {
            throw Error(Errc::too_large, "preimage product exceeds the enumeration guard");
        }
        product *= pos.members.size();
        center += pos.class_entropy;
    }
    center /= n;

    Sequence choice(static_cast<std::size_t>(n), 0);
    std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<int> prefix_zero(static_cast<std::size_t>(n) + 1, 0);
    int depth = 0;
    while (true) {
        if (depth == n) {
            if (prefix_zero[static_cast<std::size_t>(depth)] == 0) {
                if (!visit(choice, std::abs(prefix[static_cast<std::size_t>(depth)] / n - center))) {
                    return;
                }
            }
            --depth;
            while (depth >= 0 &&
                   choice[static_cast<std::size_t>(depth)] ==
                       static_cast<int>(positions[static_cast<std::size_t>(depth)].members.size()) - 1) {
                --depth;
            }
            if (depth < 0) break;
            ++choice[static_cast<std::size_t>(depth)];
        }
        const auto& pos = positions[static_cast<std::size_t>(depth)];
        const int c = choice[static_cast<std::size_t>(depth)];
        prefix[static_cast<std::size_t>(depth) + 1] =
            prefix[static_cast<std::size_t>(depth)] + pos.surprisal[static_cast<std::size_t>(c)];
        prefix_zero[static_cast<std::size_t>(depth) + 1] =
            prefix_zero[static_cast<std::size_t>(depth)] + (pos.zero[static_cast<std::size_t>(c)] ? 1 : 0);
        ++depth;
        if (depth < n) choice[static_cast<std::size_t>(depth)] = 0;
    }
}

} // namespace

bool is_cond_typical(const Sequence& xseq, const CondTypicalSpec& spec) {
    const int n = static_cast<int>(spec.yseq.size());
    if (static_cast<int>(xseq.size()) != n) return false;
    const auto positions = cond_positions(spec, n);
    double total = 0.0;
    double center = 0.0;
    for (int j = 0; j < n; ++j) {
        const auto& pos = positions[static_cast<std::size_t>(j)];
        center += pos.class_entropy;
        int local = -1;
        for (std::size_t i = 0; i < pos.members.size(); ++i) {
            if (pos.members[i] == xseq[static_cast<std::size_t>(j)]) {
                local = static_cast<int>(i);
                break;
            }
        }
        if (local < 0) return false; // f(x_j) != y_j
        if (pos.zero[static_cast<std::size_t>(local)]) return false;
        total += pos.surprisal[static_cast<std::size_t>(local)];
    }
    center /= n;
    return std::abs(total / n - center) <= spec.delta + kTypicalitySlop;
}

namespace {

Sequence choice_to_x(const std::vector<CondPosition>& positions, const Sequence& choice, int n) {
    Sequence x(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        x[static_cast<std::size_t>(j)] =
            positions[static_cast<std::size_t>(j)].members[static_cast<std::size_t>(
                choice[static_cast<std::size_t>(j)])];
    }
    return x;
}

} // namespace

std::vector<Sequence> cond_typical_set(const CondTypicalSpec& spec, int n, std::uint64_t guard) {
    const auto positions = cond_positions(spec, n);
    std::vector<Sequence> result;
    const double bound = spec.delta + kTypicalitySlop;
    cond_walk(positions, n, guard, [&](const Sequence& choice, double deviation) {
        if (deviation <= bound) result.push_back(choice_to_x(positions, choice, n));
        return true;
    });
    return result;
}

std::uint64_t cond_typical_count(const CondTypicalSpec& spec, int n, std::uint64_t guard) {
    const auto positions = cond_positions(spec, n);
    std::uint64_t count = 0;
    const double bound = spec.delta + kTypicalitySlop;
    cond_walk(positions, n, guard, [&](const Sequence&, double deviation) {
        if (deviation <= bound) ++count;
        return true;
    });
    return count;
}

std::vector<std::uint64_t> cond_typical_ranks_first(const CondTypicalSpec& spec, int n,
                                                    std::uint64_t max_count, std::uint64_t guard) {
    const auto positions = cond_positions(spec, n);
    std::vector<std::uint64_t> result;
    const double bound = spec.delta + kTypicalitySlop;
    const int base = spec.source.size();
    cond_walk(positions, n, guard, [&](const Sequence& choice, double deviation) {
        if (deviation <= bound) {
            result.push_back(seq_rank(choice_to_x(positions, choice, n), base));
            if (result.size() >= max_count) return false;
        }
        return true;
    });
    return result;
}

AepBounds aep_bounds(const TypicalSpec& spec, double epsilon) {
    const double h = entropy(spec.pmf);
    AepBounds bounds;
    bounds.card_upper = std::exp(spec.n * (h + spec.delta));
    bounds.card_lower = (1.0 - 2.0 * epsilon) * std::exp(spec.n * (h - spec.delta));
    bounds.note = "card_lower valid for n large";
    return bounds;
}

} // namespace ncl

#include "ncl/coding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include "ncl/infomeasures.hpp"
#include "ncl/typicality.hpp"

namespace ncl {

namespace {

constexpr double kErrSlop = 1e-12;

std::uint64_t checked_pow(std::uint64_t base, int exp, std::uint64_t guard) {
    std::uint64_t v = 1;
    for (int i = 0; i < exp; ++i) {
        if (v > guard / base) return guard + 1;
        v *= base;
    }
    return v;
}

// True when every row of F is constant on each preimage class of f, i.e.
// the device depends on x only through f(x). For such instances the
// conditional error given x equals the cascade error given y = f(x).
bool device_constant_on_classes(const NoisyComputationInstance& inst) {
    for (int y : inst.f.image()) {
        const auto& cls = inst.f.preimage(y);
        for (std::size_t i = 1; i < cls.size(); ++i) {
            for (int z = 0; z < inst.F.output().size(); ++z) {
                if (inst.F.prob(cls[0], z) != inst.F.prob(cls[i], z)) return false;
            }
        }
    }
    return true;
}

// Every member of the class A^n = product of preimages of y^n, with no
// typicality filter; strict verification quantifies over all of them.
std::vector<Sequence> full_class(const DetFunction& f, const Sequence& yseq,
                                 std::uint64_t guard) {
    std::uint64_t total = 1;
    for (int y : yseq) {
        const auto& cls = f.preimage(y);
        if (cls.empty()) throw Error(Errc::empty_preimage, "codeword symbol without preimage");
        if (total > guard / cls.size()) {
            throw Error(Errc::too_large, "preimage product exceeds the enumeration guard");
        }
        total *= cls.size();
    }
    const int n = static_cast<int>(yseq.size());
    std::vector<Sequence> out;
    out.reserve(total);
    Sequence choice(static_cast<std::size_t>(n), 0);
    while (true) {
        Sequence x(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            x[static_cast<std::size_t>(j)] =
                f.preimage(yseq[static_cast<std::size_t>(j)])[static_cast<std::size_t>(
                    choice[static_cast<std::size_t>(j)])];
        }
        out.push_back(std::move(x));
        int j = n - 1;
        while (j >= 0 &&
               choice[static_cast<std::size_t>(j)] + 1 ==
                   static_cast<int>(f.preimage(yseq[static_cast<std::size_t>(j)]).size())) {
            choice[static_cast<std::size_t>(j)] = 0;
            --j;
        }
        if (j < 0) break;
        ++choice[static_cast<std::size_t>(j)];
    }
    return out;
}

// P(region | x^n) by exact summation over the region members.
double region_mass_given_x(const std::vector<std::uint64_t>& region, const Sequence& xseq,
                           const DMChannel& F, int n) {
    const int nc = F.output().size();
    double mass = 0.0;
    for (std::uint64_t rank : region) {
        double p = 1.0;
        std::uint64_t r = rank;
        for (int j = n - 1; j >= 0 && p > 0.0; --j) {
            const int z = static_cast<int>(r % static_cast<std::uint64_t>(nc));
            r /= static_cast<std::uint64_t>(nc);
            p *= F.prob(xseq[static_cast<std::size_t>(j)], z);
        }
        mass += p;
    }
    return mass;
}

} // namespace

std::uint64_t lemma_code_size(double rate_r, int n, double h_x_given_fx) {
    const double exponent = n * (rate_r - h_x_given_fx);
    if (exponent >= 43.0) return std::uint64_t(1) << 62; // beyond any desk-scale code
    const double m = std::floor(std::exp(exponent));
    return m <= 0.0 ? 0 : static_cast<std::uint64_t>(m);
}

FeinsteinCode build_feinstein_code(const NoisyComputationInstance& inst, int n, double epsilon,
                                   double rate_r, const FeinsteinOptions& opts) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw Error(Errc::validation_error, "epsilon must lie in (0, 1)");
    }
    if (n < 1) throw Error(Errc::validation_error, "block length must be >= 1");

    const RateReport rates = typical_input_rate(inst);
    const double h_x_given_fx = rates.h_x_given_y;
    if (rate_r <= h_x_given_fx + 1e-15) {
        throw Error(Errc::rate_too_high,
                    "rate " + std::to_string(rate_r) + " does not exceed H(X|f(X)) = " +
                        std::to_string(h_x_given_fx));
    }
    const std::uint64_t target_m = lemma_code_size(rate_r, n, h_x_given_fx);

    const int nb = inst.f.codomain().size();
    const int nc = inst.F.output().size();
    if (checked_pow(static_cast<std::uint64_t>(nb), n, opts.guard) > opts.guard ||
        checked_pow(static_cast<std::uint64_t>(nc), n, opts.guard) > opts.guard) {
        throw Error(Errc::too_large, "|B|^n or |C|^n exceeds the enumeration guard");
    }
    const std::uint64_t z_space = checked_pow(static_cast<std::uint64_t>(nc), n, opts.guard);

    const JointPmf yz = joint_yz(inst.source, inst.f, inst.F);
    const Pmf py = yz.row_marginal();
    const double delta_y = opts.delta_y ? *opts.delta_y : default_delta(py);
    const std::vector<Sequence> candidates = typical_set({py, n, delta_y}, opts.guard);

    // cascade rows P(z|y); rows for zero-mass y are never visited because
    // typical candidates contain no zero-probability symbol
    std::vector<std::vector<double>> cascade(static_cast<std::size_t>(nb));
    for (int y = 0; y < nb; ++y) {
        if (py[y] <= 0.0) continue;
        auto& row = cascade[static_cast<std::size_t>(y)];
        row.resize(static_cast<std::size_t>(nc));
        for (int z = 0; z < nc; ++z) row[static_cast<std::size_t>(z)] = yz.prob(y, z) / py[y];
    }

    const bool decomposable = device_constant_on_classes(inst);
    const double verify_delta = opts.verify_delta ? *opts.verify_delta : 0.1 * h_x_given_fx;

    std::vector<bool> claimed(z_space, false);
    std::vector<std::uint64_t> claimed_list;

    FeinsteinCode code;
    code.n = n;
    code.epsilon = epsilon;
    code.target_m = target_m;

    std::vector<double> mass(z_space);
    std::vector<std::uint32_t> order(z_space);

    for (const Sequence& cand : candidates) {
        if (code.entries.size() >= target_m) break;

        // the unclaimed universe must still hold mass 1 - epsilon; this is
        // exact for the capture below, which can take everything unclaimed.
        // Walking the claimed list with an early exit keeps rejected
        // candidates cheap once the space saturates.
        double claimed_mass = 0.0;
        bool rejected = false;
        for (std::uint64_t rank : claimed_list) {
            double p = 1.0;
            std::uint64_t r = rank;
            for (int j = n - 1; j >= 0 && p > 0.0; --j) {
                const int z = static_cast<int>(r % static_cast<std::uint64_t>(nc));
                r /= static_cast<std::uint64_t>(nc);
                p *= cascade[static_cast<std::size_t>(cand[static_cast<std::size_t>(j)])]
                            [static_cast<std::size_t>(z)];
            }
            claimed_mass += p;
            if (claimed_mass > epsilon + kErrSlop) {
                rejected = true;
                break;
            }
        }
        if (rejected) continue;

        // conditional masses P(z^n | cand), built position by position
        mass.assign(z_space, 1.0);
        std::uint64_t width = 1;
        for (int j = 0; j < n; ++j) {
            const auto& row = cascade[static_cast<std::size_t>(cand[static_cast<std::size_t>(j)])];
            const std::uint64_t next_width = width * static_cast<std::uint64_t>(nc);
            for (std::uint64_t r = next_width; r-- > 0;) {
                mass[r] = mass[r / static_cast<std::uint64_t>(nc)] * row[r % static_cast<std::uint64_t>(nc)];
            }
            width = next_width;
        }

        // maximum-likelihood capture: unclaimed z-sequences in decreasing
        // conditional probability (ties lexicographic) until the region
        // reaches mass 1 - epsilon
        std::iota(order.begin(), order.end(), 0u);
        std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            if (mass[a] != mass[b]) return mass[a] > mass[b];
            return a < b;
        });
        std::vector<std::uint64_t> region;
        double region_mass = 0.0;
        for (std::uint32_t idx : order) {
            if (region_mass >= 1.0 - epsilon - kErrSlop) break;
            if (claimed[idx]) continue;
            region.push_back(idx);
            region_mass += mass[idx];
        }
        if (1.0 - region_mass > epsilon + kErrSlop) continue;

        if (!decomposable) {
            // the cascade averages the device over the class; check every
            // conditionally typical input individually
            const auto members =
                cond_typical_set({inst.source, inst.f, cand, verify_delta}, n, opts.guard);
            bool ok = true;
            for (const Sequence& x : members) {
                if (1.0 - region_mass_given_x(region, x, inst.F, n) > epsilon + kErrSlop) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
        }

        std::sort(region.begin(), region.end());
        for (std::uint64_t r : region) claimed[r] = true;
        claimed_list.insert(claimed_list.end(), region.begin(), region.end());
        code.entries.push_back(CodeEntry{cand, std::move(region)});
    }

    code.exhausted = code.entries.size() < target_m;
    return code;
}

double exact_max_error(const FeinsteinCode& code, const NoisyComputationInstance& inst,
                       double delta, bool strict, std::uint64_t guard) {
    const int nc = inst.F.output().size();
    if (checked_pow(static_cast<std::uint64_t>(nc), code.n, guard) > guard) {
        throw Error(Errc::too_large, "|C|^n exceeds the enumeration guard");
    }
    const bool decomposable = device_constant_on_classes(inst);
    double worst = 0.0;
    for (const CodeEntry& entry : code.entries) {
        std::vector<Sequence> inputs;
        if (decomposable) {
            // all members of the class see the same channel law; one
            // representative suffices
            Sequence rep;
            rep.reserve(entry.codeword.size());
            for (int y : entry.codeword) {
                const auto& cls = inst.f.preimage(y);
                if (cls.empty()) {
                    throw Error(Errc::empty_preimage, "codeword symbol without preimage");
                }
                rep.push_back(cls.front());
            }
            inputs.push_back(std::move(rep));
        } else if (strict) {
            inputs = full_class(inst.f, entry.codeword, guard);
        } else {
            inputs = cond_typical_set({inst.source, inst.f, entry.codeword, delta}, code.n, guard);
        }
        for (const Sequence& x : inputs) {
            worst = std::max(worst, 1.0 - region_mass_given_x(entry.region, x, inst.F, code.n));
        }
    }
    return worst;
}

bool regions_disjoint(const FeinsteinCode& code) {
    std::vector<std::uint64_t> all;
    for (const auto& entry : code.entries) {
        all.insert(all.end(), entry.region.begin(), entry.region.end());
    }
    std::sort(all.begin(), all.end());
    return std::adjacent_find(all.begin(), all.end()) == all.end();
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

long long parse_ll(const std::string& text, const char* what) {
    try {
        return std::stoll(text);
    } catch (const std::exception&) {
        throw Error(Errc::parse_error, std::string("bad ") + what + " value '" + text + "'");
    }
}

double parse_dbl(const std::string& text, const char* what) {
    try {
        return std::stod(text);
    } catch (const std::exception&) {
        throw Error(Errc::parse_error, std::string("bad ") + what + " value '" + text + "'");
    }
}

} // namespace

std::string serialize_code(const FeinsteinCode& code, const NoisyComputationInstance& inst) {
    const Alphabet& b = inst.f.codomain();
    const Alphabet& c = inst.F.output();
    std::string out;
    out += "ncl-code v1\n";
    out += "n " + std::to_string(code.n) + "\n";
    out += "epsilon " + fmt_double(code.epsilon) + "\n";
    out += "target_m " + std::to_string(code.target_m) + "\n";
    out += "exhausted " + std::string(code.exhausted ? "1" : "0") + "\n";
    out += "entries " + std::to_string(code.entries.size()) + "\n";
    for (const auto& entry : code.entries) {
        out += "codeword " + seq_to_labels(entry.codeword, b) + "\n";
        out += "region " + std::to_string(entry.region.size()) + "\n";
        for (std::uint64_t rank : entry.region) {
            out += seq_to_labels(seq_unrank(rank, code.n, c.size()), c) + "\n";
        }
    }
    return out;
}

FeinsteinCode parse_code(const std::string& text, const NoisyComputationInstance& inst) {
    std::istringstream in(text);
    std::string line;
    auto next_line = [&](const char* what) -> std::string {
        if (!std::getline(in, line)) {
            throw Error(Errc::parse_error, std::string("unexpected end of file, expected ") + what);
        }
        return line;
    };
    auto expect_field = [&](const std::string& l, const std::string& key) -> std::string {
        if (l.rfind(key + " ", 0) != 0) {
            throw Error(Errc::parse_error, "expected '" + key + "' line, got '" + l + "'");
        }
        return l.substr(key.size() + 1);
    };

    if (next_line("header") != "ncl-code v1") {
        throw Error(Errc::parse_error, "not an ncl-code v1 file");
    }
    FeinsteinCode code;
    code.n = static_cast<int>(parse_ll(expect_field(next_line("n"), "n"), "n"));
    code.epsilon = parse_dbl(expect_field(next_line("epsilon"), "epsilon"), "epsilon");
    code.target_m =
        static_cast<std::uint64_t>(parse_ll(expect_field(next_line("target_m"), "target_m"), "target_m"));
    code.exhausted = expect_field(next_line("exhausted"), "exhausted") == "1";
    const std::size_t entries = static_cast<std::size_t>(
        parse_ll(expect_field(next_line("entries"), "entries"), "entries"));

    const Alphabet& b = inst.f.codomain();
    const Alphabet& c = inst.F.output();
    for (std::size_t i = 0; i < entries; ++i) {
        CodeEntry entry;
        entry.codeword = seq_from_labels(expect_field(next_line("codeword"), "codeword"), b);
        if (static_cast<int>(entry.codeword.size()) != code.n) {
            throw Error(Errc::parse_error, "codeword length does not match n");
        }
        const std::size_t count = static_cast<std::size_t>(
            parse_ll(expect_field(next_line("region"), "region"), "region"));
        entry.region.reserve(count);
        for (std::size_t j = 0; j < count; ++j) {
            const Sequence z = seq_from_labels(next_line("region member"), c);
            if (static_cast<int>(z.size()) != code.n) {
                throw Error(Errc::parse_error, "region member length does not match n");
            }
            entry.region.push_back(seq_rank(z, c.size()));
        }
        code.entries.push_back(std::move(entry));
    }
    return code;
}

} // namespace ncl

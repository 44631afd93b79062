#include "ncl/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "ncl/capacity.hpp"
#include "ncl/infomeasures.hpp"
#include "ncl/rng.hpp"
#include "ncl/typicality.hpp"

namespace ncl {

namespace {

constexpr double kEntropyFloor = 1e-12;

double binary_entropy(double p) {
    double h = 0.0;
    if (p > 0.0) h -= p * std::log(p);
    if (p < 1.0) h -= (1.0 - p) * std::log(1.0 - p);
    return h;
}

std::uint64_t checked_pow(std::uint64_t base, int exp, std::uint64_t guard) {
    std::uint64_t v = 1;
    for (int i = 0; i < exp; ++i) {
        if (v > guard / base) return guard + 1;
        v *= base;
    }
    return v;
}

} // namespace

double conditional_entropy_given_fn(const Pmf& source, const DetFunction& fn) {
    if (fn.domain() != source.alphabet()) {
        throw Error(Errc::alphabet_mismatch, "source and function domain differ");
    }
    double h = 0.0;
    for (int y : fn.image()) {
        double mass = 0.0;
        for (int x : fn.preimage(y)) mass += source[x];
        if (mass <= 0.0) continue;
        double hy = 0.0;
        for (int x : fn.preimage(y)) {
            const double q = source[x] / mass;
            if (q > 0.0) hy -= q * std::log(q);
        }
        h += mass * hy;
    }
    return h;
}

BlockLengths choose_block_lengths(const SourceFunction& outer, const SourceFunction& inner,
                                  double delta2, int k_max) {
    if (!(delta2 > 0.0)) throw Error(Errc::validation_error, "delta2 must be positive");
    if (k_max < 1) throw Error(Errc::validation_error, "k_max must be >= 1");

    const double h_inner = conditional_entropy_given_fn(inner.source, inner.fn);
    if (h_inner <= kEntropyFloor) {
        throw Error(Errc::degenerate_gamma,
                    "H(X|f(X)) = 0: f is injective on the support, which is classical channel "
                    "coding; use a plain Feinstein code instead");
    }
    const double h_outer = conditional_entropy_given_fn(outer.source, outer.fn);
    const double gamma = h_outer / h_inner;
    const double width = delta2 / h_inner;

    if (gamma <= kEntropyFloor) {
        // injective outer function: any n/k in (0, width) works; report the
        // minimal pair and flag the regime
        const int k = static_cast<int>(std::floor(1.0 / width)) + 1;
        if (k > k_max) throw Error(Errc::no_pair, "no k <= k_max fits 1/k < delta2/H(X|f(X))");
        return BlockLengths{k, 1, 0.0, true};
    }

    for (int k = 1; k <= k_max; ++k) {
        const double lower = gamma * k;
        const double upper = (gamma + width) * k;
        const int n = static_cast<int>(std::floor(lower)) + 1;
        if (static_cast<double>(n) > lower && static_cast<double>(n) < upper) {
            return BlockLengths{k, n, gamma, false};
        }
    }
    throw Error(Errc::no_pair, "no (k, n) with k <= k_max satisfies the ratio window");
}

const EncoderEntry* ReliablePipeline::find_message(std::uint64_t xprime_rank) const {
    auto it = std::lower_bound(encoder.begin(), encoder.end(), xprime_rank,
                               [](const EncoderEntry& e, std::uint64_t r) { return e.xprime_rank < r; });
    if (it == encoder.end() || it->xprime_rank != xprime_rank) return nullptr;
    return &*it;
}

bool ReliablePipeline::xprime_typical(const Sequence& xprime) const {
    double total = 0.0;
    for (int s : xprime) {
        if (s < 0 || s >= outer.source.size()) {
            throw Error(Errc::unknown_symbol, "sequence symbol index out of range");
        }
        if (xprime_zero[static_cast<std::size_t>(s)]) return false;
        total += xprime_surprisal[static_cast<std::size_t>(s)];
    }
    return std::abs(total / k - h_xprime) <= delta + kTypicalitySlop;
}

ReliablePipeline build_pipeline(const SourceFunction& outer, const NoisyComputationInstance& inst,
                                int n, int k, FeinsteinCode code, double delta,
                                std::uint64_t guard) {
    if (n < 1 || k < 1) throw Error(Errc::validation_error, "k and n must be >= 1");
    if (code.n != n) throw Error(Errc::validation_error, "code block length does not match n");
    if (outer.fn.domain() != outer.source.alphabet()) {
        throw Error(Errc::alphabet_mismatch, "outer source and g domain differ");
    }

    const double h_inner = conditional_entropy_given_fn(inst.source, inst.f);
    if (h_inner <= kEntropyFloor) {
        throw Error(Errc::degenerate_gamma,
                    "H(X|f(X)) = 0: f is injective on the support, which is classical channel "
                    "coding; the pipeline does not apply");
    }
    const double h_outer = conditional_entropy_given_fn(outer.source, outer.fn);
    if (h_outer <= kEntropyFloor) {
        throw Error(Errc::degenerate_gamma,
                    "H(X'|g(X')) = 0: g is injective on the support, which is classical channel "
                    "coding; the pipeline does not apply");
    }
    const double gamma = h_outer / h_inner;

    // encoding constraint R <= H(X')/gamma, i.e. k * gamma <= n
    if (static_cast<double>(k) * gamma > static_cast<double>(n) + 1e-9) {
        throw Error(Errc::rate_above_encoder_limit,
                    "R = k H(X')/n exceeds H(X')/gamma (k*gamma = " +
                        std::to_string(k * gamma) + " > n = " + std::to_string(n) + ")");
    }

    ReliablePipeline p{outer, inst, k, n, delta, gamma, std::move(code), {}, {}, {}, {}, {}, {}, 0.0};

    p.h_xprime = entropy(outer.source);
    p.xprime_surprisal.resize(static_cast<std::size_t>(outer.source.size()), 0.0);
    p.xprime_zero.resize(static_cast<std::size_t>(outer.source.size()), false);
    for (int s = 0; s < outer.source.size(); ++s) {
        if (outer.source[s] > 0.0) {
            p.xprime_surprisal[static_cast<std::size_t>(s)] = -std::log(outer.source[s]);
        } else {
            p.xprime_zero[static_cast<std::size_t>(s)] = true;
        }
    }

    // (a) typical k-sequences of X' grouped by g^k value
    const std::vector<std::uint64_t> typical =
        typical_ranks({outer.source, k, delta}, guard);
    if (typical.empty()) throw Error(Errc::no_accepted_trials, "no typical outer sequences");

    struct Group {
        std::uint64_t gvalue = 0;
        double prob = 0.0;
        std::vector<std::uint64_t> members; // lexicographic
    };
    std::map<std::uint64_t, Group> groups_by_value;
    const int a_out = outer.source.size();
    const int b_out = outer.fn.codomain().size();
    for (std::uint64_t rank : typical) {
        std::uint64_t gvalue = 0;
        double prob = 1.0;
        std::uint64_t r = rank;
        // digits are MSB-first; walking them LSB-first mirrors the base
        std::uint64_t weight = 1;
        std::uint64_t gv = 0;
        for (int j = 0; j < k; ++j) {
            const int x = static_cast<int>(r % static_cast<std::uint64_t>(a_out));
            r /= static_cast<std::uint64_t>(a_out);
            prob *= outer.source[x];
            gv += weight * static_cast<std::uint64_t>(outer.fn(x));
            weight *= static_cast<std::uint64_t>(b_out);
        }
        gvalue = gv;
        auto& group = groups_by_value[gvalue];
        group.gvalue = gvalue;
        group.prob += prob;
        group.members.push_back(rank);
    }

    // (b) groups by decreasing probability, ties lexicographic on the value
    std::vector<const Group*> order;
    order.reserve(groups_by_value.size());
    for (const auto& [value, group] : groups_by_value) order.push_back(&group);
    std::stable_sort(order.begin(), order.end(), [](const Group* a, const Group* b) {
        if (a->prob != b->prob) return a->prob > b->prob;
        return a->gvalue < b->gvalue;
    });

    const std::uint64_t nu3 = order.size();
    if (nu3 > p.code.entries.size()) {
        throw Error(Errc::too_few_codewords,
                    std::to_string(nu3) + " groups but only " +
                        std::to_string(p.code.entries.size()) + " codewords");
    }

    // (c) members onto conditionally typical slots, both sides lexicographic
    p.diagnostics.nu3 = nu3;
    p.diagnostics.m = p.code.entries.size();
    p.diagnostics.nu2_min = ~std::uint64_t(0);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Group& group = *order[i];
        const CodeEntry& entry = p.code.entries[i];
        const CondTypicalSpec spec{inst.source, inst.f, entry.codeword, delta};
        const std::uint64_t nu2 = cond_typical_count(spec, n, guard);
        const std::uint64_t nu1 = group.members.size();
        p.diagnostics.nu1_max = std::max(p.diagnostics.nu1_max, nu1);
        p.diagnostics.nu2_min = std::min(p.diagnostics.nu2_min, nu2);
        if (nu1 > nu2) {
            throw Error(Errc::group_overflow,
                        "group of size " + std::to_string(nu1) + " exceeds the " +
                            std::to_string(nu2) + " conditionally typical slots of its class");
        }
        const std::vector<std::uint64_t> slots = cond_typical_ranks_first(spec, n, nu1, guard);
        for (std::size_t j = 0; j < group.members.size(); ++j) {
            p.encoder.push_back(EncoderEntry{group.members[j], slots[j], static_cast<std::int32_t>(i)});
        }
        // (d) decoder V
        p.decoder_v.push_back(group.gvalue);
    }
    std::sort(p.encoder.begin(), p.encoder.end(),
              [](const EncoderEntry& a, const EncoderEntry& b) { return a.xprime_rank < b.xprime_rank; });

    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::uint64_t z : p.code.entries[i].region) {
            p.region_owner.emplace(z, static_cast<std::int32_t>(i));
        }
    }
    return p;
}

RunResult run_once(const ReliablePipeline& p, const Sequence& xprime_seq, std::uint64_t seed) {
    if (static_cast<int>(xprime_seq.size()) != p.k) {
        throw Error(Errc::validation_error, "input length does not match k");
    }
    RunResult result;
    result.truth_gvalue = apply_block(p.outer.fn, xprime_seq);
    if (!p.xprime_typical(xprime_seq)) {
        result.outcome = RunOutcome::rejected_atypical;
        return result;
    }
    const std::uint64_t xprime_rank = seq_rank(xprime_seq, p.outer.source.size());
    const EncoderEntry* message = p.find_message(xprime_rank);
    if (message == nullptr) {
        // typical but unencoded cannot happen by construction
        throw Error(Errc::validation_error, "typical sequence missing from the encoder");
    }
    const Sequence xseq = seq_unrank(message->x_rank, p.n, p.inst.source.size());
    const Sequence zseq = sample_block(p.inst.F, xseq, seed);
    const std::uint64_t z_rank = seq_rank(zseq, p.inst.F.output().size());
    auto it = p.region_owner.find(z_rank);
    if (it == p.region_owner.end()) {
        result.outcome = RunOutcome::no_region;
        return result;
    }
    result.decoded_gvalue =
        seq_unrank(p.decoder_v[static_cast<std::size_t>(it->second)], p.k, p.outer.fn.codomain().size());
    result.correct = result.decoded_gvalue == result.truth_gvalue;
    result.outcome = result.correct ? RunOutcome::correct : RunOutcome::wrong_decode;
    return result;
}

ExactErrorProfile exact_error_profile(const ReliablePipeline& p, std::uint64_t op_budget) {
    ExactErrorProfile profile;
    const int nc = p.inst.F.output().size();
    if (checked_pow(static_cast<std::uint64_t>(nc), p.n, std::uint64_t(1) << 24) >
        (std::uint64_t(1) << 24)) {
        return profile;
    }

    // when the device is constant on preimage classes, every member of an
    // entry's class sees the same region mass
    bool decomposable = true;
    for (int y : p.inst.f.image()) {
        const auto& cls = p.inst.f.preimage(y);
        for (std::size_t i = 1; i < cls.size() && decomposable; ++i) {
            for (int z = 0; z < nc; ++z) {
                if (p.inst.F.prob(cls[0], z) != p.inst.F.prob(cls[i], z)) {
                    decomposable = false;
                    break;
                }
            }
        }
    }

    std::uint64_t cost = 0;
    if (decomposable) {
        for (const auto& entry : p.code.entries) cost += entry.region.size() * static_cast<std::uint64_t>(p.n);
    } else {
        for (const auto& msg : p.encoder) {
            cost += p.code.entries[static_cast<std::size_t>(msg.entry)].region.size() *
                    static_cast<std::uint64_t>(p.n);
        }
    }
    if (cost > op_budget) return profile;

    auto region_mass = [&](const std::vector<std::uint64_t>& region, const Sequence& xseq) {
        double mass = 0.0;
        for (std::uint64_t rank : region) {
            double prod = 1.0;
            std::uint64_t r = rank;
            for (int j = p.n - 1; j >= 0 && prod > 0.0; --j) {
                const int z = static_cast<int>(r % static_cast<std::uint64_t>(nc));
                r /= static_cast<std::uint64_t>(nc);
                prod *= p.inst.F.prob(xseq[static_cast<std::size_t>(j)], z);
            }
            mass += prod;
        }
        return mass;
    };

    std::vector<double> entry_error(p.code.entries.size(), -1.0); // decomposable cache
    double weighted = 0.0;
    double total_weight = 0.0;
    const int a_out = p.outer.source.size();
    for (const auto& msg : p.encoder) {
        double err;
        if (decomposable && entry_error[static_cast<std::size_t>(msg.entry)] >= 0.0) {
            err = entry_error[static_cast<std::size_t>(msg.entry)];
        } else {
            const Sequence xseq = seq_unrank(msg.x_rank, p.n, p.inst.source.size());
            err = 1.0 -
                  region_mass(p.code.entries[static_cast<std::size_t>(msg.entry)].region, xseq);
            if (decomposable) entry_error[static_cast<std::size_t>(msg.entry)] = err;
        }
        double prob = 1.0;
        std::uint64_t r = msg.xprime_rank;
        for (int j = 0; j < p.k; ++j) {
            prob *= p.outer.source[static_cast<int>(r % static_cast<std::uint64_t>(a_out))];
            r /= static_cast<std::uint64_t>(a_out);
        }
        weighted += prob * err;
        total_weight += prob;
        profile.max_error = std::max(profile.max_error, err);
    }
    profile.avg_error = total_weight > 0.0 ? weighted / total_weight : 0.0;
    profile.available = true;
    return profile;
}

ErrorEstimate simulate(const ReliablePipeline& p, long trials, std::uint64_t seed) {
    if (trials < 1) throw Error(Errc::validation_error, "trials must be >= 1");

    const int a_out = p.outer.source.size();
    const int b_out = p.outer.fn.codomain().size();
    const int nc = p.inst.F.output().size();
    const int na = p.inst.source.size();

    long accepted = 0;
    long rejected = 0;
    long errors = 0;
    std::vector<long> group_trials(p.decoder_v.size(), 0);
    std::vector<long> group_errors(p.decoder_v.size(), 0);

    Sequence xprime(static_cast<std::size_t>(p.k));
    Sequence xseq(static_cast<std::size_t>(p.n));
    for (long t = 0; t < trials; ++t) {
        Rng rng(substream_seed(seed, static_cast<std::uint64_t>(t)));
        double surprisal = 0.0;
        bool has_zero = false;
        std::uint64_t xprime_rank = 0;
        std::uint64_t truth_rank = 0;
        for (int j = 0; j < p.k; ++j) {
            const int s = rng.categorical(p.outer.source.probs());
            xprime[static_cast<std::size_t>(j)] = s;
            if (p.xprime_zero[static_cast<std::size_t>(s)]) has_zero = true;
            surprisal += p.xprime_surprisal[static_cast<std::size_t>(s)];
            xprime_rank = xprime_rank * static_cast<std::uint64_t>(a_out) + static_cast<std::uint64_t>(s);
            truth_rank =
                truth_rank * static_cast<std::uint64_t>(b_out) + static_cast<std::uint64_t>(p.outer.fn(s));
        }
        if (has_zero || std::abs(surprisal / p.k - p.h_xprime) > p.delta + kTypicalitySlop) {
            ++rejected;
            continue;
        }
        ++accepted;
        const EncoderEntry* message = p.find_message(xprime_rank);
        if (message == nullptr) {
            throw Error(Errc::validation_error, "typical sequence missing from the encoder");
        }
        std::uint64_t r = message->x_rank;
        for (int j = p.n - 1; j >= 0; --j) {
            xseq[static_cast<std::size_t>(j)] = static_cast<int>(r % static_cast<std::uint64_t>(na));
            r /= static_cast<std::uint64_t>(na);
        }
        std::uint64_t z_rank = 0;
        for (int j = 0; j < p.n; ++j) {
            const int z = rng.categorical(p.inst.F.row(xseq[static_cast<std::size_t>(j)]));
            z_rank = z_rank * static_cast<std::uint64_t>(nc) + static_cast<std::uint64_t>(z);
        }
        ++group_trials[static_cast<std::size_t>(message->entry)];
        bool correct = false;
        auto it = p.region_owner.find(z_rank);
        if (it != p.region_owner.end()) {
            correct = p.decoder_v[static_cast<std::size_t>(it->second)] == truth_rank;
        }
        if (!correct) {
            ++errors;
            ++group_errors[static_cast<std::size_t>(message->entry)];
        }
    }

    if (accepted == 0) throw Error(Errc::no_accepted_trials, "every draw was atypical");

    ErrorEstimate estimate;
    estimate.trials = trials;
    estimate.rejected_atypical = rejected;
    estimate.seed = seed;
    estimate.avg_error = static_cast<double>(errors) / static_cast<double>(accepted);

    const double z95 = 1.959963984540054;
    const double nn = static_cast<double>(accepted);
    const double ph = estimate.avg_error;
    estimate.ci_halfwidth =
        z95 * std::sqrt(ph * (1.0 - ph) / nn + z95 * z95 / (4.0 * nn * nn)) / (1.0 + z95 * z95 / nn);

    const ExactErrorProfile profile = exact_error_profile(p);
    if (profile.available) {
        estimate.max_message_error = profile.max_error;
        estimate.max_is_exact = true;
    } else {
        double worst = 0.0;
        for (std::size_t g = 0; g < group_trials.size(); ++g) {
            if (group_trials[g] > 0) {
                worst = std::max(worst, static_cast<double>(group_errors[g]) /
                                            static_cast<double>(group_trials[g]));
            }
        }
        estimate.max_message_error = worst;
        estimate.max_is_exact = false;
    }
    return estimate;
}

double converse_bound(double h_xprime, double h_xprime_given_g, double gamma, double i_f_F,
                      int k, int out_alphabet_size) {
    if (k < 1) throw Error(Errc::validation_error, "k must be >= 1");
    const double lhs = h_xprime - h_xprime_given_g - gamma * i_f_F;
    if (lhs <= 0.0) return 0.0;

    const double log_b = std::log(static_cast<double>(out_alphabet_size));
    auto rhs = [&](double pe) { return binary_entropy(pe) / k + pe * log_b; };

    // rhs increases up to pe* = B^k / (B^k + 1) and rhs(pe*) >= ln B >= lhs,
    // so the smallest solution lies in [0, pe*]
    const double bk = std::pow(static_cast<double>(out_alphabet_size), k);
    const double peak = bk / (bk + 1.0);
    if (rhs(peak) < lhs) return 1.0; // inconsistent inputs; saturate
    double lo = 0.0;
    double hi = peak;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        if (rhs(mid) >= lhs) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::vector<SweepRow> rate_error_sweep(const SweepConfig& config) {
    const RateReport rates = typical_input_rate(config.inst);
    const double h_xprime = entropy(config.outer.source);
    const double h_xprime_given_g = conditional_entropy_given_fn(config.outer.source, config.outer.fn);
    const double h_inner = rates.h_x_given_y;
    const double gamma = h_inner > kEntropyFloor ? h_xprime_given_g / h_inner : 0.0;

    const CapacityResult cap =
        capacity_iid(config.inst.f, config.inst.F, CapacityOptions{32, 10000, 1e-10, config.seed});

    std::vector<SweepRowSpec> schedule = config.schedule;
    if (schedule.empty()) {
        if (!config.rate_target || config.n_list.empty()) {
            throw Error(Errc::validation_error, "sweep needs a schedule or a rate target with n values");
        }
        for (int n : config.n_list) {
            int k = static_cast<int>(std::llround(*config.rate_target * n / h_xprime));
            k = std::max(k, 1);
            if (gamma > kEntropyFloor) {
                const int k_limit =
                    std::max(1, static_cast<int>(std::floor(static_cast<double>(n) / gamma + 1e-9)));
                k = std::min(k, k_limit);
            }
            schedule.push_back(SweepRowSpec{k, n, std::nullopt});
        }
    }

    std::vector<SweepRow> rows;
    for (std::size_t idx = 0; idx < schedule.size(); ++idx) {
        const SweepRowSpec& spec = schedule[idx];
        SweepRow row;
        row.k = spec.k;
        row.n = spec.n;
        row.r_nats = spec.k * h_xprime / spec.n;
        row.capacity_estimate = cap.value;
        row.trials = config.trials;
        row.seed = substream_seed(config.seed, idx);
        row.converse_lower_bound =
            converse_bound(h_xprime, h_xprime_given_g, gamma, rates.i_yz, spec.k,
                           config.outer.fn.codomain().size());
        row.avg_error = std::nan("");
        row.max_error = std::nan("");
        row.status = "ok";
        try {
            const double delta =
                config.delta > 0.0 ? config.delta : default_delta(config.outer.source);

            // count the groups first so the code can be sized to them
            const std::vector<std::uint64_t> typical =
                typical_ranks({config.outer.source, spec.k, delta}, config.guard);
            std::map<std::uint64_t, bool> gvalues;
            const int a_out = config.outer.source.size();
            const int b_out = config.outer.fn.codomain().size();
            for (std::uint64_t rank : typical) {
                std::uint64_t r = rank;
                std::uint64_t gv = 0;
                std::uint64_t weight = 1;
                for (int j = 0; j < spec.k; ++j) {
                    const int x = static_cast<int>(r % static_cast<std::uint64_t>(a_out));
                    r /= static_cast<std::uint64_t>(a_out);
                    gv += weight * static_cast<std::uint64_t>(config.outer.fn(x));
                    weight *= static_cast<std::uint64_t>(b_out);
                }
                gvalues[gv] = true;
            }
            const std::uint64_t nu3 = gvalues.size();

            const double rate_r = h_inner + std::log(static_cast<double>(nu3) + 0.5) / spec.n;
            FeinsteinOptions opts;
            opts.delta_y = config.code_delta_y;
            opts.guard = config.guard;
            const double eps = spec.epsilon ? *spec.epsilon : config.epsilon;
            FeinsteinCode code = build_feinstein_code(config.inst, spec.n, eps, rate_r, opts);

            ReliablePipeline pipeline =
                build_pipeline(config.outer, config.inst, spec.n, spec.k, std::move(code), delta,
                               config.guard);
            const ErrorEstimate estimate = simulate(pipeline, config.trials, row.seed);
            row.avg_error = estimate.avg_error;
            row.max_error = estimate.max_message_error;
            row.max_is_exact = estimate.max_is_exact;
        } catch (const Error& e) {
            row.status = errc_name(e.code());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::string out = "k,n,R_nats,capacity_estimate,avg_error,max_error,converse_lower_bound,trials,seed\n";
    for (const auto& row : rows) {
        out += std::to_string(row.k) + "," + std::to_string(row.n) + "," + fmt_double(row.r_nats) +
               "," + fmt_double(row.capacity_estimate) + "," + fmt_double(row.avg_error) + "," +
               fmt_double(row.max_error) + "," + fmt_double(row.converse_lower_bound) + "," +
               std::to_string(row.trials) + "," + std::to_string(row.seed) + "\n";
    }
    return out;
}

std::string sweep_to_json(const std::vector<SweepRow>& rows) {
    std::string out = "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (i > 0) out += ",";
        out += "\n  {\"k\": " + std::to_string(row.k) + ", \"n\": " + std::to_string(row.n) +
               ", \"R_nats\": " + fmt_double(row.r_nats) +
               ", \"capacity_estimate\": " + fmt_double(row.capacity_estimate) +
               ", \"avg_error\": " + (std::isnan(row.avg_error) ? "null" : fmt_double(row.avg_error)) +
               ", \"max_error\": " + (std::isnan(row.max_error) ? "null" : fmt_double(row.max_error)) +
               ", \"max_is_exact\": " + (row.max_is_exact ? "true" : "false") +
               ", \"converse_lower_bound\": " + fmt_double(row.converse_lower_bound) +
               ", \"trials\": " + std::to_string(row.trials) +
               ", \"seed\": " + std::to_string(row.seed) + ", \"status\": \"" + row.status + "\"}";
    }
    out += "\n]\n";
    return out;
}

} // namespace ncl

// Command-line front end: loads an instance file and runs one analysis per
// invocation. Identical invocations (same files, flags, seed) produce
// byte-identical output artifacts.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncl/capacity.hpp"
#include "ncl/coding.hpp"
#include "ncl/infomeasures.hpp"
#include "ncl/instance.hpp"
#include "ncl/pipeline.hpp"
#include "ncl/typicality.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kLn2 = 0.6931471805599453;

struct CommonOpts {
    std::string instance_path;
    std::optional<int> n;
    std::optional<int> k;
    std::optional<double> epsilon;
    std::optional<double> delta;
    std::optional<double> rate;
    std::optional<long> trials;
    std::optional<std::uint64_t> seed;
    std::string units = "nats";
    std::string output = "json";
    std::string out_path;
};

double display(double nats, const std::string& units) {
    return units == "bits" ? nats / kLn2 : nats;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ncl::Error(ncl::Errc::validation_error, "cannot write '" + out_path + "'");
    out << text;
}

long resolved_trials(const CommonOpts& opts, const ncl::InstanceConfig& config) {
    if (opts.trials) return *opts.trials;
    if (config.params.trials) return *config.params.trials;
    return 10000;
}

std::uint64_t resolved_seed(const CommonOpts& opts, const ncl::InstanceConfig& config,
                            bool randomized) {
    if (randomized) {
        const char* require = std::getenv("NCL_REQUIRE_SEED");
        if (require != nullptr && std::string(require) == "1" && !opts.seed) {
            throw ncl::Error(ncl::Errc::validation_error,
                             "NCL_REQUIRE_SEED=1: this command needs an explicit --seed");
        }
    }
    if (opts.seed) return *opts.seed;
    if (config.params.seed) return *config.params.seed;
    return 0;
}

double resolved_epsilon(const CommonOpts& opts, const ncl::InstanceConfig& config) {
    if (opts.epsilon) return *opts.epsilon;
    if (config.params.epsilon) return *config.params.epsilon;
    return 0.2;
}

std::optional<double> resolved_delta(const CommonOpts& opts, const ncl::InstanceConfig& config) {
    if (opts.delta) return opts.delta;
    if (config.params.delta) return config.params.delta;
    return std::nullopt;
}

// Sizes the code to the number of message groups the pipeline will need.
ncl::FeinsteinCode build_code_for_pipeline(const ncl::InstanceConfig& config,
                                           const ncl::NoisyComputationInstance& inst, int n, int k,
                                           double epsilon, double delta,
                                           std::optional<double> code_delta_y) {
    const ncl::SourceFunction outer = config.outer();
    const auto typical = ncl::typical_ranks({outer.source, k, delta});
    std::map<std::uint64_t, bool> gvalues;
    const int a_out = outer.source.size();
    const int b_out = outer.fn.codomain().size();
    for (std::uint64_t rank : typical) {
        std::uint64_t r = rank;
        std::uint64_t gv = 0;
        std::uint64_t weight = 1;
        for (int j = 0; j < k; ++j) {
            const int x = static_cast<int>(r % static_cast<std::uint64_t>(a_out));
            r /= static_cast<std::uint64_t>(a_out);
            gv += weight * static_cast<std::uint64_t>(outer.fn(x));
            weight *= static_cast<std::uint64_t>(b_out);
        }
        gvalues[gv] = true;
    }
    const ncl::RateReport rates = ncl::typical_input_rate(inst);
    const double rate_r =
        rates.h_x_given_y + std::log(static_cast<double>(gvalues.size()) + 0.5) / n;
    ncl::FeinsteinOptions code_opts;
    code_opts.delta_y = code_delta_y;
    return ncl::build_feinstein_code(inst, n, epsilon, rate_r, code_opts);
}

int cmd_rate(const CommonOpts& opts) {
    const ncl::InstanceConfig config = ncl::parse_instance(opts.instance_path);
    const ncl::RateReport r = ncl::typical_input_rate(config.instance());

    std::printf("typical input rate (units: %s)\n", opts.units.c_str());
    std::printf("  H(X)          = %.9g\n", display(r.h_x, opts.units));
    std::printf("  H(f(X))       = %.9g\n", display(r.h_y, opts.units));
    std::printf("  H(X|f(X))     = %.9g\n", display(r.h_x_given_y, opts.units));
    std::printf("  H(f(X)|F(X))  = %.9g\n", display(r.h_y_given_z, opts.units));
    std::printf("  I(f(X);F(X))  = %.9g\n", display(r.i_yz, opts.units));
    std::printf("  B             = %.9g\n", display(r.b, opts.units));

    ordered_json j;
    j["command"] = "rate";
    j["units"] = "nats";
    j["h_x"] = r.h_x;
    j["h_y"] = r.h_y;
    j["h_x_given_y"] = r.h_x_given_y;
    j["h_y_given_z"] = r.h_y_given_z;
    j["i_yz"] = r.i_yz;
    j["b"] = r.b;
    if (!opts.out_path.empty()) emit(j.dump(2) + "\n", opts.out_path);
    return 0;
}

int cmd_capacity(const CommonOpts& opts) {
    const ncl::InstanceConfig config = ncl::parse_instance(opts.instance_path);
    ncl::CapacityOptions copts;
    copts.seed = resolved_seed(opts, config, true);
    const ncl::CapacityResult result = ncl::capacity_iid(config.f, config.F, copts);

    std::printf("typical input capacity, i.i.d. lower bound (units: %s)\n", opts.units.c_str());
    std::printf("  value     = %.9g\n", display(result.value, opts.units));
    std::printf("  argmax    =");
    for (int i = 0; i < result.argmax.size(); ++i) {
        std::printf(" %s:%.9g", result.argmax.alphabet().label(i).c_str(), result.argmax[i]);
    }
    std::printf("\n  restarts  = %d\n  converged = %s\n", result.restarts_used,
                result.converged ? "true" : "false");

    ordered_json j;
    j["command"] = "capacity";
    j["label"] = "iid lower bound";
    j["units"] = "nats";
    j["value"] = result.value;
    ordered_json argmax = ordered_json::object();
    for (int i = 0; i < result.argmax.size(); ++i) {
        argmax[result.argmax.alphabet().label(i)] = result.argmax[i];
    }
    j["argmax"] = argmax;
    j["restarts_used"] = result.restarts_used;
    j["converged"] = result.converged;
    if (!opts.out_path.empty()) emit(j.dump(2) + "\n", opts.out_path);
    return 0;
}

int cmd_code(const CommonOpts& opts) {
    const ncl::InstanceConfig config = ncl::parse_instance(opts.instance_path);
    const ncl::NoisyComputationInstance inst = config.instance();
    if (!opts.n) throw ncl::Error(ncl::Errc::validation_error, "--n is required");
    if (!opts.rate) throw ncl::Error(ncl::Errc::validation_error, "--rate is required (nats/symbol)");
    const double epsilon = resolved_epsilon(opts, config);

    ncl::FeinsteinOptions fopts;
    fopts.delta_y = resolved_delta(opts, config);
    const ncl::FeinsteinCode code =
        ncl::build_feinstein_code(inst, *opts.n, epsilon, *opts.rate, fopts);

    const ncl::RateReport rates = ncl::typical_input_rate(inst);
    const double max_err = ncl::exact_max_error(code, inst, 0.1 * rates.h_x_given_y);
    const bool disjoint = ncl::regions_disjoint(code);

    std::printf("feinstein code: n=%d epsilon=%.9g target_m=%llu achieved_m=%llu%s\n", code.n,
                code.epsilon, static_cast<unsigned long long>(code.target_m),
                static_cast<unsigned long long>(code.achieved_m()),
                code.exhausted ? " (exhausted)" : "");
    std::printf("  verified max error = %.9g (<= epsilon: %s)\n", max_err,
                max_err <= code.epsilon ? "yes" : "NO");
    std::printf("  regions disjoint   = %s\n", disjoint ? "yes" : "NO");

    emit(ncl::serialize_code(code, inst), opts.out_path);
    return (max_err <= code.epsilon && disjoint) ? 0 : 3;
}

int cmd_verify(const CommonOpts& opts, const std::string& code_path) {
    const ncl::InstanceConfig config = ncl::parse_instance(opts.instance_path);
    const ncl::NoisyComputationInstance inst = config.instance();

    std::ifstream in(code_path);
    if (!in) throw ncl::Error(ncl::Errc::parse_error, "cannot open '" + code_path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const ncl::FeinsteinCode code = ncl::parse_code(buffer.str(), inst);

    const ncl::RateReport rates = ncl::typical_input_rate(inst);
    const double delta = opts.delta ? *opts.delta : 0.1 * rates.h_x_given_y;
    const double max_err = ncl::exact_max_error(code, inst, delta);
    const bool disjoint = ncl::regions_disjoint(code);
    const bool round_trip = ncl::serialize_code(code, inst) == buffer.str();

    std::printf("code file: %s\n", code_path.c_str());
    std::printf("  entries            = %llu\n", static_cast<unsigned long long>(code.achieved_m()));
    std::printf("  verified max error = %.9g (epsilon %.9g)\n", max_err, code.epsilon);
    std::printf("  regions disjoint   = %s\n", disjoint ? "yes" : "NO");
    std::printf("  round trip exact   = %s\n", round_trip ? "yes" : "NO");
    const bool ok = max_err <= code.epsilon && disjoint;
    std::printf("%s\n", ok ? "VERIFIED" : "FAILED");
    return ok ? 0 : 3;
}

int cmd_pipeline(const CommonOpts& opts) {
    const ncl::InstanceConfig config = ncl::parse_instance(opts.instance_path);
    const ncl::NoisyComputationInstance inst = config.instance();
    if (!opts.n || !opts.k) {
        throw ncl::Error(ncl::Errc::validation_error, "--n and --k are required");
    }
    const double epsilon = resolved_epsilon(opts, config);
    const ncl::SourceFunction outer = config.outer();
    const double delta = resolved_delta(opts, config).value_or(ncl::default_delta(outer.source));
    const std::uint64_t seed = resolved_seed(opts, config, true);
    const long trials = resolved_trials(opts, config);

    ncl::FeinsteinCode code =
        build_code_for_pipeline(config, inst, *opts.n, *opts.k, epsilon, delta, resolved_delta(opts, config));
    const ncl::ReliablePipeline pipeline =
        ncl::build_pipeline(outer, inst, *opts.n, *opts.k, std::move(code), delta);
    const ncl::ErrorEstimate estimate = ncl::simulate(pipeline, trials, seed);

    std::printf("pipeline k=%d n=%d gamma=%.9g\n", pipeline.k, pipeline.n, pipeline.gamma);
    std::printf("  nu1_max=%llu nu2_min=%llu nu3=%llu m=%llu\n",
                static_cast<unsigned long long>(pipeline.diagnostics.nu1_max),
                static_cast<unsigned long long>(pipeline.diagnostics.nu2_min),
                static_cast<unsigned long long>(pipeline.diagnostics.nu3),
                static_cast<unsigned long long>(pipeline.diagnostics.m));
    std::printf("  avg_error=%.9g max_message_error=%.9g%s ci95=%.3g\n", estimate.avg_error,
                estimate.max_message_error, estimate.max_is_exact ? " (exact)" : "",
                estimate.ci_halfwidth);
    std::printf("  trials=%ld rejected_atypical=%ld seed=%llu\n", estimate.trials,
                estimate.rejected_atypical, static_cast<unsigned long long>(estimate.seed));

    ordered_json j;
    j["command"] = "pipeline";
    j["k"] = pipeline.k;
    j["n"] = pipeline.n;
    j["gamma"] = pipeline.gamma;
    j["nu1_max"] = pipeline.diagnostics.nu1_max;
    j["nu2_min"] = pipeline.diagnostics.nu2_min;
    j["nu3"] = pipeline.diagnostics.nu3;
    j["m"] = pipeline.diagnostics.m;
    j["avg_error"] = estimate.avg_error;
    j["max_message_error"] = estimate.max_message_error;
    j["max_is_exact"] = estimate.max_is_exact;
    j["ci_halfwidth"] = estimate.ci_halfwidth;
    j["trials"] = estimate.trials;
    j["rejected_atypical"] = estimate.rejected_atypical;
    j["seed"] = estimate.seed;
    if (!opts.out_path.empty()) emit(j.dump(2) + "\n", opts.out_path);
    return 0;
}

int cmd_sweep(const CommonOpts& opts, const std::vector<int>& n_list,
              const std::string& schedule_text) {
    const ncl::InstanceConfig config = ncl::parse_instance(opts.instance_path);

    ncl::SweepConfig sweep{config.outer(), config.instance(), {}, {}, {}, 0.2, 0.0,
                           std::nullopt, 10000, 0, std::uint64_t(1) << 24};
    sweep.epsilon = resolved_epsilon(opts, config);
    if (auto d = resolved_delta(opts, config)) sweep.delta = *d;
    sweep.code_delta_y = resolved_delta(opts, config);
    sweep.trials = resolved_trials(opts, config);
    sweep.seed = resolved_seed(opts, config, true);

    if (!schedule_text.empty()) {
        std::istringstream in(schedule_text);
        std::string item;
        while (std::getline(in, item, ',')) {
            const std::size_t colon = item.find(':');
            if (colon == std::string::npos) {
                throw ncl::Error(ncl::Errc::validation_error,
                                 "--schedule items must look like k:n");
            }
            ncl::SweepRowSpec row;
            row.k = std::stoi(item.substr(0, colon));
            row.n = std::stoi(item.substr(colon + 1));
            sweep.schedule.push_back(row);
        }
    } else {
        if (!opts.rate || n_list.empty()) {
            throw ncl::Error(ncl::Errc::validation_error,
                             "sweep needs --schedule or --rate with --n values");
        }
        sweep.rate_target = *opts.rate;
        sweep.n_list = n_list;
    }

    const std::vector<ncl::SweepRow> rows = ncl::rate_error_sweep(sweep);
    emit(opts.output == "json" ? ncl::sweep_to_json(rows) : ncl::sweep_to_csv(rows),
         opts.out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"noisy computation analysis toolkit"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    CommonOpts opts;
    std::vector<int> n_list;
    std::string schedule_text;
    std::string code_path;

    auto add_common = [&](CLI::App* cmd, bool needs_instance = true) {
        auto* inst = cmd->add_option("--instance", opts.instance_path, "instance file (JSON)");
        if (needs_instance) inst->required();
        cmd->add_option("--epsilon", [&](const CLI::results_t& r) {
            opts.epsilon = std::stod(r[0]); return true; }, "error bound for code construction");
        cmd->add_option("--delta", [&](const CLI::results_t& r) {
            opts.delta = std::stod(r[0]); return true; }, "typicality slack (nats)");
        cmd->add_option("--rate", [&](const CLI::results_t& r) {
            opts.rate = std::stod(r[0]); return true; }, "rate in nats/symbol");
        cmd->add_option("--trials", [&](const CLI::results_t& r) {
            opts.trials = std::stol(r[0]); return true; }, "Monte Carlo trials");
        cmd->add_option("--seed", [&](const CLI::results_t& r) {
            opts.seed = std::stoull(r[0]); return true; }, "random seed");
        cmd->add_option("--units", opts.units, "nats or bits")
            ->check(CLI::IsMember({"nats", "bits"}));
        cmd->add_option("--output", opts.output, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--out", opts.out_path, "output file path");
    };

    CLI::App* rate = app.add_subcommand("rate", "typical input rate of the instance");
    add_common(rate);

    CLI::App* capacity = app.add_subcommand("capacity", "typical input capacity (i.i.d. lower bound)");
    add_common(capacity);

    CLI::App* code = app.add_subcommand("code", "build, verify and serialize a Feinstein code");
    add_common(code);
    code->add_option("--n", [&](const CLI::results_t& r) {
        opts.n = std::stoi(r[0]); return true; }, "block length")->required();

    CLI::App* verify = app.add_subcommand("verify", "re-check a serialized code");
    add_common(verify);
    verify->add_option("codefile", code_path, "serialized code file")->required();

    CLI::App* pipeline = app.add_subcommand("pipeline", "build and simulate the reliable pipeline");
    add_common(pipeline);
    pipeline->add_option("--n", [&](const CLI::results_t& r) {
        opts.n = std::stoi(r[0]); return true; }, "inner block length")->required();
    pipeline->add_option("--k", [&](const CLI::results_t& r) {
        opts.k = std::stoi(r[0]); return true; }, "outer block length")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "rate/error sweep over (k, n) rows");
    add_common(sweep);
    sweep->add_option("--n", n_list, "block lengths for rate-targeted rows");
    sweep->add_option("--schedule", schedule_text, "explicit rows as k:n[,k:n...]");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code_ = app.exit(e);
        return code_ == 0 ? 0 : 2;
    }

    try {
        if (rate->parsed()) return cmd_rate(opts);
        if (capacity->parsed()) return cmd_capacity(opts);
        if (code->parsed()) return cmd_code(opts);
        if (verify->parsed()) return cmd_verify(opts, code_path);
        if (pipeline->parsed()) return cmd_pipeline(opts);
        if (sweep->parsed()) return cmd_sweep(opts, n_list, schedule_text);
    } catch (const ncl::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return ncl::errc_is_infeasibility(e.code()) ? 3 : 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}

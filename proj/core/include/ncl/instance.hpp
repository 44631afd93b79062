#pragma once

#include <map>
#include <optional>
#include <string>

#include "ncl/model.hpp"
#include "ncl/pipeline.hpp"

namespace ncl {

// Parsed instance file. Schema (JSON):
//   {"alphabets": {name: [labels]},
//    "source": {"alphabet": name, "probs": [...]},
//    "f": {"domain": name, "codomain": name, "table": {label: label}},
//    "g": {... optional},
//    "F": {"input": name, "output": name, "rows": [[...]]},
//    "outer_source": {... optional},
//    "params": {delta, delta2, epsilon, seed, trials, units}}
struct InstanceParams {
    std::optional<double> delta;
    std::optional<double> delta2;
    std::optional<double> epsilon;
    std::optional<std::uint64_t> seed;
    std::optional<long> trials;
    std::optional<std::string> units;
};

struct InstanceConfig {
    std::map<std::string, Alphabet> alphabets;
    Pmf source;
    DetFunction f;
    DMChannel F;
    std::optional<Pmf> outer_source;
    std::optional<DetFunction> g;
    InstanceParams params;

    NoisyComputationInstance instance() const { return NoisyComputationInstance(source, f, F); }

    // Outer pair for the pipeline; defaults to the inner pair when the file
    // declares no g / outer_source.
    SourceFunction outer() const {
        return SourceFunction{outer_source ? *outer_source : source, g ? *g : f};
    }
};

// Throws PARSE_ERROR on malformed JSON, SCHEMA_ERROR on missing/unknown
// structure, VALIDATION_ERROR (or the model's own codes) on bad numbers;
// messages name the offending field.
InstanceConfig parse_instance(const std::string& path);
InstanceConfig parse_instance_text(const std::string& text, const std::string& origin = "<memory>");

} // namespace ncl

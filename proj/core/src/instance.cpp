#include "ncl/instance.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ncl {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& field, const std::string& what) {
    throw Error(Errc::schema_error, "field '" + field + "': " + what);
}

const json& require(const json& obj, const std::string& field, const std::string& context) {
    auto it = obj.find(field);
    if (it == obj.end()) schema_error(context.empty() ? field : context + "." + field, "missing");
    return *it;
}

Alphabet lookup_alphabet(const std::map<std::string, Alphabet>& alphabets, const json& name,
                         const std::string& field) {
    if (!name.is_string()) schema_error(field, "must be an alphabet name");
    auto it = alphabets.find(name.get<std::string>());
    if (it == alphabets.end()) {
        schema_error(field, "references undeclared alphabet '" + name.get<std::string>() + "'");
    }
    return it->second;
}

std::vector<double> number_list(const json& arr, const std::string& field) {
    if (!arr.is_array()) schema_error(field, "must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : arr) {
        if (!v.is_number()) schema_error(field, "must contain numbers only");
        out.push_back(v.get<double>());
    }
    return out;
}

Pmf parse_source(const std::map<std::string, Alphabet>& alphabets, const json& obj,
                 const std::string& context) {
    if (!obj.is_object()) schema_error(context, "must be an object");
    Alphabet alphabet = lookup_alphabet(alphabets, require(obj, "alphabet", context), context + ".alphabet");
    std::vector<double> probs = number_list(require(obj, "probs", context), context + ".probs");
    try {
        return Pmf(std::move(alphabet), std::move(probs));
    } catch (const Error& e) {
        throw Error(Errc::validation_error, context + ".probs: " + e.what());
    }
}

DetFunction parse_function(const std::map<std::string, Alphabet>& alphabets, const json& obj,
                           const std::string& context) {
    if (!obj.is_object()) schema_error(context, "must be an object");
    Alphabet domain = lookup_alphabet(alphabets, require(obj, "domain", context), context + ".domain");
    Alphabet codomain =
        lookup_alphabet(alphabets, require(obj, "codomain", context), context + ".codomain");
    const json& table = require(obj, "table", context);
    if (!table.is_object()) schema_error(context + ".table", "must map labels to labels");
    std::vector<int> map(static_cast<std::size_t>(domain.size()), -1);
    for (const auto& [from, to] : table.items()) {
        if (!to.is_string()) schema_error(context + ".table." + from, "must be a label");
        if (!domain.contains(from)) {
            schema_error(context + ".table." + from, "label not in the domain alphabet");
        }
        if (!codomain.contains(to.get<std::string>())) {
            schema_error(context + ".table." + from, "image label not in the codomain alphabet");
        }
        map[static_cast<std::size_t>(domain.index(from))] = codomain.index(to.get<std::string>());
    }
    try {
        return DetFunction(std::move(domain), std::move(codomain), std::move(map));
    } catch (const Error& e) {
        throw Error(Errc::validation_error, context + ".table: " + e.what());
    }
}

DMChannel parse_channel(const std::map<std::string, Alphabet>& alphabets, const json& obj,
                        const std::string& context) {
    if (!obj.is_object()) schema_error(context, "must be an object");
    Alphabet input = lookup_alphabet(alphabets, require(obj, "input", context), context + ".input");
    Alphabet output = lookup_alphabet(alphabets, require(obj, "output", context), context + ".output");
    const json& rows = require(obj, "rows", context);
    if (!rows.is_array()) schema_error(context + ".rows", "must be an array of rows");
    std::vector<std::vector<double>> matrix;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        matrix.push_back(number_list(rows[i], context + ".rows[" + std::to_string(i) + "]"));
    }
    try {
        return DMChannel(std::move(input), std::move(output), std::move(matrix));
    } catch (const Error& e) {
        throw Error(Errc::validation_error, context + ".rows: " + e.what());
    }
}

} // namespace

InstanceConfig parse_instance_text(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::parse_error, origin + ": " + e.what());
    }
    if (!root.is_object()) throw Error(Errc::schema_error, "top level must be an object");

    const json& alphabet_obj = require(root, "alphabets", "");
    if (!alphabet_obj.is_object()) schema_error("alphabets", "must map names to label arrays");
    std::map<std::string, Alphabet> alphabets;
    for (const auto& [name, labels] : alphabet_obj.items()) {
        if (!labels.is_array()) schema_error("alphabets." + name, "must be an array of labels");
        std::vector<std::string> symbols;
        for (const auto& l : labels) {
            if (!l.is_string()) schema_error("alphabets." + name, "labels must be strings");
            symbols.push_back(l.get<std::string>());
        }
        try {
            alphabets.emplace(name, Alphabet(std::move(symbols)));
        } catch (const Error& e) {
            throw Error(Errc::validation_error, "alphabets." + name + ": " + e.what());
        }
    }

    Pmf source = parse_source(alphabets, require(root, "source", ""), "source");
    DetFunction f = parse_function(alphabets, require(root, "f", ""), "f");
    DMChannel F = parse_channel(alphabets, require(root, "F", ""), "F");

    std::optional<Pmf> outer_source;
    if (root.contains("outer_source")) {
        outer_source = parse_source(alphabets, root["outer_source"], "outer_source");
    }
    std::optional<DetFunction> g;
    if (root.contains("g")) g = parse_function(alphabets, root["g"], "g");

    InstanceParams params;
    if (root.contains("params")) {
        const json& p = root["params"];
        if (!p.is_object()) schema_error("params", "must be an object");
        auto number = [&](const char* key) -> std::optional<double> {
            if (!p.contains(key)) return std::nullopt;
            if (!p[key].is_number()) schema_error(std::string("params.") + key, "must be a number");
            return p[key].get<double>();
        };
        params.delta = number("delta");
        params.delta2 = number("delta2");
        params.epsilon = number("epsilon");
        if (auto v = number("seed")) params.seed = static_cast<std::uint64_t>(*v);
        if (auto v = number("trials")) params.trials = static_cast<long>(*v);
        if (p.contains("units")) {
            if (!p["units"].is_string()) schema_error("params.units", "must be a string");
            params.units = p["units"].get<std::string>();
        }
    }

    InstanceConfig config{std::move(alphabets), std::move(source), std::move(f), std::move(F),
                          std::move(outer_source), std::move(g), std::move(params)};
    if (config.f.domain() != config.source.alphabet()) {
        throw Error(Errc::validation_error, "f.domain: does not match the source alphabet");
    }
    if (config.F.input() != config.source.alphabet()) {
        throw Error(Errc::validation_error, "F.input: does not match the source alphabet");
    }
    if (config.g && config.outer_source &&
        config.g->domain() != config.outer_source->alphabet()) {
        throw Error(Errc::validation_error, "g.domain: does not match the outer source alphabet");
    }
    if (config.g && !config.outer_source && config.g->domain() != config.source.alphabet()) {
        throw Error(Errc::validation_error,
                    "g.domain: no outer_source given, so g must act on the source alphabet");
    }
    return config;
}

InstanceConfig parse_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::parse_error, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_instance_text(buffer.str(), path);
}

} // namespace ncl

#include "intrisk/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace intrisk {
namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

json parse_json_file(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::vector<double> number_array(const json& node, const std::string& context) {
    if (!node.is_array()) {
        throw InputError(context + ": expected an array of numbers");
    }
    std::vector<double> out;
    out.reserve(node.size());
    for (const auto& v : node) {
        if (!v.is_number()) {
            throw InputError(context + ": entry " + std::to_string(out.size()) +
                             " is not a number");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

double number_field(const json& node, const std::string& key, const std::string& context) {
    if (!node.contains(key) || !node.at(key).is_number()) {
        throw InputError(context + ": missing numeric field \"" + key + "\"");
    }
    return node.at(key).get<double>();
}

const json& array_field(const json& node, const std::string& key, const std::string& context) {
    if (!node.contains(key) || !node.at(key).is_array()) {
        throw InputError(context + ": missing array field \"" + key + "\"");
    }
    return node.at(key);
}

ScenarioFile load_scenarios_json(const std::string& path) {
    const json root = parse_json_file(path);
    if (!root.contains("probabilities")) {
        throw InputError(path + ": missing \"probabilities\"");
    }
    ScenarioSpace space = [&] {
        try {
            return ScenarioSpace(number_array(root["probabilities"], path + ": probabilities"));
        } catch (const StructuralError& e) {
            throw InputError(path + ": probabilities: " + e.what());
        }
    }();

    ScenarioFile file{space, {}, {}};
    if (root.contains("positions")) {
        if (!root["positions"].is_object()) {
            throw InputError(path + ": \"positions\" must be an object");
        }
        for (const auto& [name, node] : root["positions"].items()) {
            const std::string context = path + ": positions." + name;
            try {
                file.positions.emplace(
                    name,
                    Position(number_field(node, "initial_value", context),
                             Payoff(number_array(array_field(node, "payoff", context),
                                                 context + ".payoff"))));
            } catch (const StructuralError& e) {
                throw InputError(context + ": " + e.what());
            }
        }
    }
    if (root.contains("assets")) {
        if (!root["assets"].is_object()) {
            throw InputError(path + ": \"assets\" must be an object");
        }
        for (const auto& [name, node] : root["assets"].items()) {
            const std::string context = path + ": assets." + name;
            try {
                file.assets.emplace(
                    name,
                    EligibleAsset(number_field(node, "initial_price", context),
                                  Payoff(number_array(array_field(node, "payoff", context),
                                                      context + ".payoff"))));
            } catch (const StructuralError& e) {
                throw InputError(context + ": " + e.what());
            }
        }
    }
    for (const auto& [name, position] : file.positions) {
        if (position.payoff().size() != file.space.size()) {
            throw InputError(path + ": positions." + name + ": payoff length " +
                             std::to_string(position.payoff().size()) + " does not match " +
                             std::to_string(file.space.size()) + " scenarios");
        }
    }
    for (const auto& [name, asset] : file.assets) {
        if (asset.payoff().size() != file.space.size()) {
            throw InputError(path + ": assets." + name + ": payoff length does not match "
                             "scenario count");
        }
    }
    return file;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else if (c != '\r') {
            current += c;
        }
    }
    fields.push_back(current);
    for (std::string& f : fields) {
        const auto begin = f.find_first_not_of(" \t");
        const auto end = f.find_last_not_of(" \t");
        f = begin == std::string::npos ? std::string() : f.substr(begin, end - begin + 1);
    }
    return fields;
}

double parse_number(const std::string& text, const std::string& context) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || text.empty()) {
        throw InputError(context + ": \"" + text + "\" is not a number");
    }
    return value;
}

ScenarioFile load_scenarios_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open file: " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw InputError(path + ": empty file");
    }
    const std::vector<std::string> header = split_csv_line(line);
    if (header.size() < 3 || header[0] != "scenario" || header[1] != "probability") {
        throw InputError(path + ": line 1: header must start with "
                         "\"scenario,probability,<name>...\"");
    }
    const std::vector<std::string> names(header.begin() + 2, header.end());

    std::vector<double> probabilities;
    std::vector<std::vector<double>> columns(names.size());
    int line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = split_csv_line(line);
        const std::string context = path + ": line " + std::to_string(line_number);
        if (fields.size() != header.size()) {
            throw InputError(context + ": expected " + std::to_string(header.size()) +
                             " fields, got " + std::to_string(fields.size()));
        }
        probabilities.push_back(parse_number(fields[1], context + ": probability"));
        for (std::size_t c = 0; c < names.size(); ++c) {
            columns[c].push_back(parse_number(fields[c + 2], context + ": " + names[c]));
        }
    }
    if (probabilities.empty()) {
        throw InputError(path + ": no scenario rows");
    }

    // Initial values live in the sidecar config next to the CSV.
    std::filesystem::path sidecar(path);
    sidecar.replace_extension(".meta.json");
    const json meta = parse_json_file(sidecar.string());

    ScenarioFile file{[&] {
                          try {
                              return ScenarioSpace(probabilities);
                          } catch (const StructuralError& e) {
                              throw InputError(path + ": probabilities: " + e.what());
                          }
                      }(),
                      {},
                      {}};
    for (std::size_t c = 0; c < names.size(); ++c) {
        const std::string& name = names[c];
        const bool is_position = meta.contains("positions") && meta["positions"].contains(name);
        const bool is_asset = meta.contains("assets") && meta["assets"].contains(name);
        if (!is_position && !is_asset) {
            throw InputError(sidecar.string() + ": column \"" + name +
                             "\" is declared neither under \"positions\" nor \"assets\"");
        }
        try {
            if (is_position) {
                file.positions.emplace(
                    name, Position(number_field(meta["positions"][name], "initial_value",
                                                sidecar.string() + ": positions." + name),
                                   Payoff(columns[c])));
            } else {
                file.assets.emplace(
                    name, EligibleAsset(number_field(meta["assets"][name], "initial_price",
                                                     sidecar.string() + ": assets." + name),
                                        Payoff(columns[c])));
            }
        } catch (const StructuralError& e) {
            throw InputError(path + ": column \"" + name + "\": " + e.what());
        }
    }
    return file;
}

}  // namespace

ScenarioFile load_scenarios(const std::string& path) {
    if (std::filesystem::path(path).extension() == ".csv") {
        return load_scenarios_csv(path);
    }
    return load_scenarios_json(path);
}

AcceptanceSet load_acceptance_set(const std::string& path, const ScenarioSpace& space,
                                  std::optional<double> alpha_override) {
    const json root = parse_json_file(path);
    if (!root.contains("kind") || !root["kind"].is_string()) {
        throw InputError(path + ": missing string field \"kind\"");
    }
    const std::string kind = root["kind"].get<std::string>();
    try {
        if (kind == "var" || kind == "es") {
            double alpha = alpha_override ? *alpha_override
                                          : number_field(root, "alpha", path);
            return kind == "var" ? AcceptanceSet::value_at_risk(space, alpha)
                                 : AcceptanceSet::expected_shortfall(space, alpha);
        }
        if (kind == "generator") {
            if (!root.contains("generators") || !root["generators"].is_array()) {
                throw InputError(path + ": missing array field \"generators\"");
            }
            std::vector<DualMeasure> generators;
            for (std::size_t j = 0; j < root["generators"].size(); ++j) {
                generators.emplace_back(
                    space, number_array(root["generators"][j],
                                        path + ": generators[" + std::to_string(j) + "]"));
            }
            std::vector<double> bounds =
                number_array(root.contains("bounds") ? root["bounds"] : json::array(),
                             path + ": bounds");
            return AcceptanceSet::generator_convex(space, std::move(generators),
                                                   std::move(bounds));
        }
    } catch (const Error& e) {
        if (dynamic_cast<const InputError*>(&e)) throw;
        throw InputError(path + ": " + e.what());
    }
    throw InputError(path + ": unknown kind \"" + kind +
                     "\" (expected \"var\", \"es\" or \"generator\")");
}

std::vector<DualMeasure> load_dual_sample(const std::string& path, const ScenarioSpace& space) {
    const json root = parse_json_file(path);
    if (!root.contains("measures") || !root["measures"].is_array()) {
        throw InputError(path + ": missing array field \"measures\"");
    }
    std::vector<DualMeasure> measures;
    for (std::size_t j = 0; j < root["measures"].size(); ++j) {
        try {
            measures.emplace_back(space,
                                  number_array(root["measures"][j],
                                               path + ": measures[" + std::to_string(j) + "]"));
        } catch (const StructuralError& e) {
            throw InputError(path + ": measures[" + std::to_string(j) + "]: " + e.what());
        }
    }
    return measures;
}

std::string report_to_json(const RiskReport& report) {
    json j;
    j["intrinsic"] = report.intrinsic.value;
    if (report.monetary.finite) {
        j["monetary"] = report.monetary.value;
    } else {
        j["monetary"] = report.monetary.value > 0.0 ? "inf" : "-inf";
    }
    j["capital"] = {{"intrinsic", report.capital_intrinsic}};
    if (std::isfinite(report.capital_traditional)) {
        j["capital"]["traditional"] = report.capital_traditional;
    } else {
        j["capital"]["traditional"] = "inf";
    }

    j["altered"]["intrinsic"] = {
        {"initial_value", report.altered_intrinsic.initial_value()},
        {"payoff", report.altered_intrinsic.payoff().values()},
    };
    if (report.altered_traditional) {
        j["altered"]["traditional"] = {
            {"initial_value", report.altered_traditional->initial_value()},
            {"payoff", report.altered_traditional->payoff().values()},
        };
    } else {
        j["altered"]["traditional"] = nullptr;
    }

    j["returns"]["intrinsic"] = report.return_intrinsic.values();
    if (report.return_traditional) {
        j["returns"]["traditional"] = report.return_traditional->values();
    } else {
        j["returns"]["traditional"] = nullptr;
    }

    j["sharpe"]["intrinsic"] =
        report.sharpe_intrinsic.defined ? json(report.sharpe_intrinsic.value) : json(nullptr);
    j["sharpe"]["traditional"] =
        report.sharpe_traditional.defined ? json(report.sharpe_traditional.value) : json(nullptr);

    json method;
    switch (report.intrinsic.method) {
        case IntrinsicMethod::bisection: method = "bisection"; break;
        case IntrinsicMethod::conic_closed_form: method = "conic_closed_form"; break;
        case IntrinsicMethod::dual: method = "dual"; break;
    }
    j["certificates"] = {
        {"intrinsic",
         {{"method", method},
          {"bracket", {report.intrinsic.bracket_lo, report.intrinsic.bracket_hi}}}},
    };
    if (report.monetary.finite) {
        j["certificates"]["monetary"] = {
            {"finite", true},
            {"bracket", {report.monetary.bracket_lo, report.monetary.bracket_hi}},
            {"scale", report.monetary.scale},
        };
    } else {
        j["certificates"]["monetary"] = {
            {"finite", false},
            {"expansion_limit", report.monetary.expansion_limit},
            {"asset_interior", report.monetary.asset_interior},
        };
    }
    return j.dump(2);
}

ParsedReport parse_report_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("report JSON: ") + e.what());
    }
    ParsedReport parsed;
    parsed.intrinsic = j.at("intrinsic").get<double>();
    if (j.at("monetary").is_string()) {
        parsed.monetary_finite = false;
        parsed.monetary = j["monetary"] == "inf"
                              ? std::numeric_limits<double>::infinity()
                              : -std::numeric_limits<double>::infinity();
    } else {
        parsed.monetary = j["monetary"].get<double>();
    }
    parsed.capital_intrinsic = j.at("capital").at("intrinsic").get<double>();
    if (j["capital"]["traditional"].is_number()) {
        parsed.capital_traditional = j["capital"]["traditional"].get<double>();
    } else {
        parsed.capital_traditional = std::numeric_limits<double>::infinity();
    }
    parsed.altered_intrinsic =
        j.at("altered").at("intrinsic").at("payoff").get<std::vector<double>>();
    if (!j["altered"]["traditional"].is_null()) {
        parsed.altered_traditional =
            j["altered"]["traditional"]["payoff"].get<std::vector<double>>();
    }
    parsed.return_intrinsic = j.at("returns").at("intrinsic").get<std::vector<double>>();
    if (!j["returns"]["traditional"].is_null()) {
        parsed.return_traditional = j["returns"]["traditional"].get<std::vector<double>>();
    }
    return parsed;
}

}  // namespace intrisk

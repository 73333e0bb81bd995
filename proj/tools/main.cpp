#include <cmath>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "intrisk/duality.hpp"
#include "intrisk/errors.hpp"
#include "intrisk/intrinsic.hpp"
#include "intrisk/io.hpp"
#include "intrisk/monetary.hpp"
#include "intrisk/properties.hpp"
#include "intrisk/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitToleranceBreach = 4;

struct CommonOptions {
    std::string scenarios_path;
    std::string set_path;
    std::string position_name;
    std::string asset_name;
    std::string benchmark_name;
    std::string measures_path;
    std::string format = "table";
    std::optional<double> alpha;
    std::uint64_t seed = 42;
    double tolerance = 1e-6;        // dual-check gap threshold
    double props_tolerance = 1e-8;  // property-suite comparison tolerance
    int trials = 1000;
};

struct LoadedInstance {
    intrisk::ScenarioFile file;
    intrisk::AcceptanceSet set;
    intrisk::Position position;
    intrisk::EligibleAsset asset;
    intrisk::EligibleAsset benchmark;
};

LoadedInstance load_instance(const CommonOptions& options) {
    intrisk::ScenarioFile file = intrisk::load_scenarios(options.scenarios_path);
    intrisk::AcceptanceSet set =
        intrisk::load_acceptance_set(options.set_path, file.space, options.alpha);

    const auto position_it = file.positions.find(options.position_name);
    if (position_it == file.positions.end()) {
        throw intrisk::InputError("position \"" + options.position_name +
                                  "\" not found in " + options.scenarios_path);
    }
    const auto asset_it = file.assets.find(options.asset_name);
    if (asset_it == file.assets.end()) {
        throw intrisk::InputError("asset \"" + options.asset_name + "\" not found in " +
                                  options.scenarios_path);
    }
    const std::string benchmark_name =
        options.benchmark_name.empty() ? options.asset_name : options.benchmark_name;
    const auto benchmark_it = file.assets.find(benchmark_name);
    if (benchmark_it == file.assets.end()) {
        throw intrisk::InputError("benchmark asset \"" + benchmark_name + "\" not found in " +
                                  options.scenarios_path);
    }

    intrisk::Position position = position_it->second;
    intrisk::EligibleAsset asset = asset_it->second;
    intrisk::EligibleAsset benchmark = benchmark_it->second;
    return LoadedInstance{std::move(file), std::move(set), std::move(position), std::move(asset),
                          std::move(benchmark)};
}

void print_payoff_row(std::ostream& out, const std::string& label,
                      const std::vector<double>& values) {
    out << std::left << std::setw(22) << label;
    for (double v : values) out << std::setw(12) << v;
    out << "\n";
}

void print_report_table(const intrisk::RiskReport& report) {
    std::cout << std::setprecision(6) << std::fixed;
    std::cout << std::left << std::setw(22) << "" << std::setw(14) << "intrinsic"
              << "traditional\n";
    std::cout << std::setw(22) << "risk" << std::setw(14) << report.intrinsic.value;
    if (report.monetary.finite) {
        std::cout << report.monetary.value;
    } else {
        std::cout << (report.monetary.value > 0 ? "inf" : "-inf");
    }
    std::cout << "\n";
    std::cout << std::setw(22) << "capital required" << std::setw(14)
              << report.capital_intrinsic;
    if (std::isfinite(report.capital_traditional)) {
        std::cout << report.capital_traditional;
    } else {
        std::cout << "inf";
    }
    std::cout << "\n";
    std::cout << std::setw(22) << "initial value" << std::setw(14)
              << report.altered_intrinsic.initial_value();
    if (report.altered_traditional) {
        std::cout << report.altered_traditional->initial_value();
    } else {
        std::cout << "-";
    }
    std::cout << "\n";
    print_payoff_row(std::cout, "altered payoff", report.altered_intrinsic.payoff().values());
    if (report.altered_traditional) {
        print_payoff_row(std::cout, "  (traditional)",
                         report.altered_traditional->payoff().values());
    }
    print_payoff_row(std::cout, "return", report.return_intrinsic.values());
    if (report.return_traditional) {
        print_payoff_row(std::cout, "  (traditional)", report.return_traditional->values());
    }
    std::cout << std::setw(22) << "sharpe";
    if (report.sharpe_intrinsic.defined) {
        std::cout << std::setw(14) << report.sharpe_intrinsic.value;
    } else {
        std::cout << std::setw(14) << "undefined";
    }
    if (report.sharpe_traditional.defined) {
        std::cout << report.sharpe_traditional.value;
    } else {
        std::cout << "undefined";
    }
    std::cout << "\n";
}

int run_intrinsic(const CommonOptions& options) {
    const LoadedInstance inst = load_instance(options);
    const intrisk::IntrinsicRisk r =
        intrisk::intrinsic_risk(inst.set, inst.asset, inst.position);
    if (options.format == "json") {
        std::cout << "{\n  \"intrinsic\": " << std::setprecision(17) << r.value
                  << ",\n  \"capital\": " << inst.position.initial_value() * r.value
                  << ",\n  \"bracket\": [" << r.bracket_lo << ", " << r.bracket_hi << "]\n}\n";
    } else {
        std::cout << std::setprecision(10) << "intrinsic risk  " << r.value << "\n"
                  << "capital         " << inst.position.initial_value() * r.value << "\n";
    }
    return kExitOk;
}

int run_monetary(const CommonOptions& options) {
    const LoadedInstance inst = load_instance(options);
    const intrisk::MonetaryRisk rho =
        intrisk::monetary_risk(inst.set, inst.asset, inst.position.payoff());
    if (options.format == "json") {
        std::cout << "{\n  \"monetary\": ";
        if (rho.finite) {
            std::cout << std::setprecision(17) << rho.value;
        } else {
            std::cout << (rho.value > 0 ? "\"inf\"" : "\"-inf\"");
        }
        std::cout << ",\n  \"finite\": " << (rho.finite ? "true" : "false") << "\n}\n";
    } else {
        std::cout << std::setprecision(10) << "monetary risk   ";
        if (rho.finite) {
            std::cout << rho.value;
        } else {
            std::cout << (rho.value > 0 ? "inf" : "-inf");
        }
        std::cout << "\n";
    }
    return kExitOk;
}

int run_compare(const CommonOptions& options) {
    const LoadedInstance inst = load_instance(options);
    const intrisk::RiskReport report =
        intrisk::build_report(inst.set, inst.asset, inst.position, inst.benchmark);
    if (options.format == "json") {
        std::cout << intrisk::report_to_json(report) << "\n";
    } else {
        print_report_table(report);
    }
    return kExitOk;
}

int run_dual_check(const CommonOptions& options) {
    const LoadedInstance inst = load_instance(options);
    std::vector<intrisk::DualMeasure> measures;
    if (!options.measures_path.empty()) {
        measures = intrisk::load_dual_sample(options.measures_path, inst.file.space);
    } else {
        measures = intrisk::dual_sample(inst.set, options.seed);
    }
    const double primal = intrisk::intrinsic_risk(inst.set, inst.asset, inst.position).value;
    const double dual = intrisk::intrinsic_dual(inst.set, inst.asset, inst.position, measures);
    const double gap = std::abs(primal - dual);
    if (options.format == "json") {
        std::cout << "{\n  \"primal\": " << std::setprecision(17) << primal
                  << ",\n  \"dual\": " << dual << ",\n  \"gap\": " << gap
                  << ",\n  \"measures\": " << measures.size() << "\n}\n";
    } else {
        std::cout << std::setprecision(12) << "primal (bisection)  " << primal << "\n"
                  << "dual   (sampled)    " << dual << "\n"
                  << "gap                 " << gap << "  over " << measures.size()
                  << " measures\n";
    }
    return gap <= options.tolerance ? kExitOk : kExitToleranceBreach;
}

int run_props(const CommonOptions& options) {
    const auto results = intrisk::props::run_property_suite(options.seed, options.trials,
                                                            options.props_tolerance);
    bool all_ok = true;
    if (options.format == "json") {
        std::cout << "[\n";
        for (std::size_t i = 0; i < results.size(); ++i) {
            const auto& r = results[i];
            std::cout << "  {\"property\": \"" << r.name << "\", \"trials\": " << r.trials
                      << ", \"violations\": " << r.violations << ", \"worst_gap\": "
                      << std::setprecision(17) << r.worst_gap << "}"
                      << (i + 1 < results.size() ? "," : "") << "\n";
        }
        std::cout << "]\n";
    } else {
        std::cout << std::left << std::setw(28) << "property" << std::setw(9) << "trials"
                  << std::setw(12) << "violations" << "result\n";
    }
    for (const auto& r : results) {
        if (options.format != "json") {
            std::cout << std::left << std::setw(28) << r.name << std::setw(9) << r.trials
                      << std::setw(12) << r.violations
                      << (r.violations == 0 ? "pass" : "FAIL") << "\n";
        }
        if (r.violations != 0) all_ok = false;
    }
    return all_ok ? kExitOk : kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scenario-based intrinsic and traditional risk measurement"};
    app.require_subcommand(1);

    CommonOptions options;
    const auto add_common = [&](CLI::App* cmd, bool needs_files, double* tolerance) {
        if (needs_files) {
            cmd->add_option("--scenarios", options.scenarios_path, "Scenario file (JSON or CSV)")
                ->required();
            cmd->add_option("--set", options.set_path, "Acceptance-set config (JSON)")
                ->required();
            cmd->add_option("--position", options.position_name, "Position name")->required();
            cmd->add_option("--asset", options.asset_name, "Eligible asset name")->required();
            cmd->add_option("--alpha", options.alpha, "Override the config's alpha level");
        }
        cmd->add_option("--format", options.format, "Output format: table or json")
            ->check(CLI::IsMember({"table", "json"}));
        cmd->add_option("--seed", options.seed, "Seed for randomised procedures");
        cmd->add_option("--tol", *tolerance, "Tolerance for checks");
    };

    CLI::App* intrinsic_cmd =
        app.add_subcommand("intrinsic", "Smallest fraction to sell and reinvest");
    add_common(intrinsic_cmd, true, &options.tolerance);

    CLI::App* monetary_cmd =
        app.add_subcommand("monetary", "Smallest capital to add via the eligible asset");
    add_common(monetary_cmd, true, &options.tolerance);

    CLI::App* compare_cmd =
        app.add_subcommand("compare", "Full intrinsic-vs-traditional report");
    add_common(compare_cmd, true, &options.tolerance);
    compare_cmd->add_option("--benchmark", options.benchmark_name,
                            "Benchmark asset for Sharpe ratios (default: the eligible asset)");

    CLI::App* dual_cmd =
        app.add_subcommand("dual-check", "Compare segment bisection with the dual bound");
    add_common(dual_cmd, true, &options.tolerance);
    dual_cmd->add_option("--measures", options.measures_path,
                         "Dual-sample file {\"measures\": [[..],..]} (default: generated)");

    CLI::App* props_cmd =
        app.add_subcommand("props", "Run the invariant suite on seeded random instances");
    add_common(props_cmd, false, &options.props_tolerance);
    props_cmd->add_option("--trials", options.trials, "Trials per property");

    CLI11_PARSE(app, argc, argv);

    try {
        if (intrinsic_cmd->parsed()) return run_intrinsic(options);
        if (monetary_cmd->parsed()) return run_monetary(options);
        if (compare_cmd->parsed()) return run_compare(options);
        if (dual_cmd->parsed()) return run_dual_check(options);
        if (props_cmd->parsed()) return run_props(options);
    } catch (const intrisk::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const intrisk::PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const intrisk::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and instance counts are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "intrisk/duality.hpp"
#include "intrisk/intrinsic.hpp"
#include "intrisk/monetary.hpp"
#include "intrisk/properties.hpp"
#include "intrisk/report.hpp"

using namespace intrisk;

namespace {

struct Gate {
    int failures = 0;

    void report(int index, const std::string& label, bool pass, const std::string& detail,
                double seconds, double budget_seconds) {
        const bool in_budget = seconds < budget_seconds;
        const bool ok = pass && in_budget;
        if (!ok) ++failures;
        std::printf("%s  criterion %d: %s (%s; %.2fs of %.0fs budget)\n", ok ? "PASS" : "FAIL",
                    index, label.c_str(), detail.c_str(), seconds, budget_seconds);
        std::fflush(stdout);
    }
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(clock::now() - start_).count();
    }

private:
    using clock = std::chrono::steady_clock;
    clock::time_point start_ = clock::now();
};

std::string format_gap(double gap) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "worst gap %.3g", gap);
    return buffer;
}

// Criterion 1: translation-chain values 1/2 and 2/3 from the closed formula,
// reproduced by bisection on a constructed value-at-risk instance.
void criterion_translation_chain(Gate& gate) {
    Stopwatch timer;
    bool pass = true;
    double worst = 0.0;

    pass &= intrinsic_of_intermediate(0.75, 0.5) == 0.5;
    pass &= intrinsic_of_intermediate(0.75, 0.25) == 2.0 / 3.0;

    const ScenarioSpace space = ScenarioSpace::uniform(4);
    const AcceptanceSet var = AcceptanceSet::value_at_risk(space, 0.25);
    const EligibleAsset cash(1.0, Payoff::constant(4, 1.0));
    const Position x(1.0, Payoff{{-3.0, -3.0, 1.0, 2.0}});

    const double r = intrinsic_risk(var, cash, x).value;
    worst = std::abs(r - 0.75);
    pass &= worst <= 1e-8;

    const double at_half = intrinsic_risk(var, cash, mix(x, cash, 0.5)).value;
    const double at_quarter = intrinsic_risk(var, cash, mix(x, cash, 0.25)).value;
    worst = std::max(worst, std::abs(at_half - 0.5));
    worst = std::max(worst, std::abs(at_quarter - 2.0 / 3.0));
    pass &= std::abs(at_half - 0.5) <= 1e-8;
    pass &= std::abs(at_quarter - 2.0 / 3.0) <= 1e-8;
    pass &= std::abs(at_half - intrinsic_of_intermediate(r, 0.5)) <= 1e-8;
    pass &= std::abs(at_quarter - intrinsic_of_intermediate(r, 0.25)) <= 1e-8;

    gate.report(1, "translation chain reproduces 1/2 and 2/3", pass, format_gap(worst),
                timer.seconds(), 1.0);
}

// Criterion 2: averaging two acceptable disjoint indicator losses yields
// intrinsic risk 1/(X_0 + Y_0 + 1).
void criterion_var_counterexample(Gate& gate) {
    Stopwatch timer;
    const ScenarioSpace space = ScenarioSpace::uniform(4);
    const AcceptanceSet var = AcceptanceSet::value_at_risk(space, 0.25);
    const EligibleAsset cash(1.0, Payoff::constant(4, 1.0));

    const Position x(1.0, Payoff{{-1.0, 0.0, 0.0, 0.0}});
    const Position y(1.0, Payoff{{0.0, -1.0, 0.0, 0.0}});
    const Position average(1.0, Payoff{{-0.5, -0.5, 0.0, 0.0}});

    const double r_x = intrinsic_risk(var, cash, x).value;
    const double r_y = intrinsic_risk(var, cash, y).value;
    const double r_avg = intrinsic_risk(var, cash, average).value;
    const double gap = std::abs(r_avg - 1.0 / 3.0);
    const bool pass = r_x == 0.0 && r_y == 0.0 && gap <= 1e-8;
    gate.report(2, "disjoint indicator losses average to risk 1/3", pass, format_gap(gap),
                timer.seconds(), 1.0);
}

// Criterion 3: segment bisection equals the conic closed form on 1000 seeded
// instances per set kind.
void criterion_conic_representation(Gate& gate) {
    Stopwatch timer;
    double worst = 0.0;
    int checked = 0;
    for (const props::SetFamily family : {props::SetFamily::var, props::SetFamily::es}) {
        props::Rng rng(family == props::SetFamily::var ? 0xC0FFEE : 0xBEEF);
        for (int trial = 0; trial < 1000; ++trial) {
            const props::Instance inst = props::random_instance(rng, family);
            const double bisected = intrinsic_risk(inst.set, inst.asset, inst.position).value;
            const MonetaryRisk rho = monetary_risk(inst.set, inst.asset, inst.position.payoff());
            const double closed =
                intrinsic_conic_closed_form(inst.set, inst.position, rho).value;
            worst = std::max(worst, std::abs(bisected - closed));
            ++checked;
        }
    }
    gate.report(3, "conic closed form matches bisection on 2000 instances",
                worst <= 1e-8 && checked == 2000, format_gap(worst), timer.seconds(), 30.0);
}

// Criterion 4: dual representation against the primal bisection.
void criterion_dual_primal(Gate& gate) {
    Stopwatch timer;
    bool pass = true;
    double worst_es = 0.0;
    double worst_generator = 0.0;

    {
        props::Rng rng(0xE5);
        props::InstanceOptions options;
        options.max_scenarios = 12;  // full vertex enumeration
        for (int trial = 0; trial < 200; ++trial) {
            const props::Instance inst = props::random_instance(rng, props::SetFamily::es,
                                                                options);
            const auto vertices = coherent_dual_set(inst.set);
            const double primal = intrinsic_risk(inst.set, inst.asset, inst.position).value;
            const double dual = intrinsic_dual(inst.set, inst.asset, inst.position, vertices);
            worst_es = std::max(worst_es, std::abs(primal - dual));
        }
        pass &= worst_es <= 1e-6;
    }

    {
        props::Rng rng(0x6E);
        for (int trial = 0; trial < 100; ++trial) {
            const props::Instance inst =
                props::random_instance(rng, props::SetFamily::generator);
            const auto sample = dual_sample(inst.set, 0x5A11 + std::uint64_t(trial), 10000);
            const double primal = intrinsic_risk(inst.set, inst.asset, inst.position).value;
            const double dual = intrinsic_dual(inst.set, inst.asset, inst.position, sample);
            pass &= dual <= primal + 1e-9;  // one-sided
            worst_generator = std::max(worst_generator, primal - dual);
        }
        pass &= worst_generator <= 5e-3;
    }

    gate.report(4, "dual representation agrees with the primal",
                pass,
                "ES " + format_gap(worst_es) + ", generator " + format_gap(worst_generator),
                timer.seconds(), 60.0);
}

// Criterion 5: the intrinsic action spends less capital and earns the same
// returns on cones.
void criterion_efficiency(Gate& gate) {
    Stopwatch timer;
    bool pass = true;
    double worst_capital = 0.0;
    double worst_return = 0.0;
    double worst_sharpe = 0.0;

    props::Rng rng(0xEFF1);
    props::InstanceOptions options;
    options.force_unacceptable = true;
    constexpr props::SetFamily kFamilies[] = {props::SetFamily::var, props::SetFamily::es,
                                              props::SetFamily::generator};
    for (int trial = 0; trial < 300; ++trial) {
        const props::SetFamily family = kFamilies[trial % 3];
        const props::Instance inst = props::random_instance(rng, family, options);
        if (inst.set.accepts(inst.position.payoff())) continue;
        const EligibleAsset benchmark(
            rng.uniform(0.5, 2.0),
            [&] {
                std::vector<double> values(inst.space.size());
                for (double& v : values) v = rng.uniform(0.2, 3.0);
                return Payoff(values);
            }());
        const RiskReport report = build_report(inst.set, inst.asset, inst.position, benchmark);

        worst_capital =
            std::max(worst_capital, report.capital_intrinsic - report.capital_traditional);
        pass &= report.capital_intrinsic <= report.capital_traditional + 1e-9;

        if (family != props::SetFamily::generator && report.return_traditional) {
            for (std::size_t i = 0; i < inst.space.size(); ++i) {
                const double gap =
                    std::abs(report.return_intrinsic[i] - (*report.return_traditional)[i]);
                worst_return = std::max(worst_return, gap);
                pass &= gap <= 1e-10;
            }
            if (report.sharpe_intrinsic.defined && report.sharpe_traditional.defined) {
                const double gap =
                    std::abs(report.sharpe_intrinsic.value - report.sharpe_traditional.value);
                worst_sharpe = std::max(worst_sharpe, gap);
                pass &= gap <= 1e-8;
            }
        }
    }

    char detail[128];
    std::snprintf(detail, sizeof detail,
                  "capital slack %.3g, return gap %.3g, sharpe gap %.3g", worst_capital,
                  worst_return, worst_sharpe);
    gate.report(5, "intrinsic action needs less capital at equal returns", pass, detail,
                timer.seconds(), 30.0);
}

// Criterion 6: the structural property suite at 1000 instances per property.
void criterion_property_suite(Gate& gate) {
    Stopwatch timer;
    const auto results = props::run_property_suite(0x9E3779B9, 1000, 1e-8);
    bool pass = true;
    std::string detail;
    for (const auto& r : results) {
        if (r.violations != 0) {
            pass = false;
            if (!detail.empty()) detail += ", ";
            detail += r.name + " x" + std::to_string(r.violations);
        }
    }
    if (detail.empty()) {
        detail = std::to_string(results.size()) + " properties, zero violations";
    }
    gate.report(6, "property suites hold at 1000 seeded instances each", pass, detail,
                timer.seconds(), 120.0);
}

// Criterion 7: boundary asset, constant loss: infinite traditional risk and
// intrinsic risk exactly one.
void criterion_infinity_linkage(Gate& gate) {
    Stopwatch timer;
    const ScenarioSpace space = ScenarioSpace::uniform(4);
    const AcceptanceSet var = AcceptanceSet::value_at_risk(space, 0.25);
    const EligibleAsset boundary(1.0, Payoff{{1.0, 1.0, 0.0, 0.0}});
    const Position constant_loss(3.0, Payoff::constant(4, -3.0));

    const MonetaryRisk rho = monetary_risk(var, boundary, constant_loss.payoff());
    const double r = intrinsic_risk(var, boundary, constant_loss).value;
    const bool pass = !rho.finite && rho.value > 0.0 && !rho.asset_interior && r == 1.0 &&
                      !is_interior(var, boundary.payoff());
    gate.report(7, "boundary asset links infinite monetary risk to intrinsic one", pass,
                "intrinsic " + std::to_string(r), timer.seconds(), 5.0);
}

}  // namespace

int main() {
    Gate gate;
    criterion_translation_chain(gate);
    criterion_var_counterexample(gate);
    criterion_conic_representation(gate);
    criterion_dual_primal(gate);
    criterion_efficiency(gate);
    criterion_property_suite(gate);
    criterion_infinity_linkage(gate);

    if (gate.failures == 0) {
        std::printf("all acceptance criteria satisfied\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", gate.failures);
    return 1;
}

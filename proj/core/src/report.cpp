#include "intrisk/report.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace intrisk {
namespace {

Payoff per_unit_return(const Payoff& payoff, double initial_value) {
    std::vector<double> out(payoff.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = payoff[i] / initial_value;
    return Payoff(std::move(out));
}

}  // namespace

SharpeRatio sharpe_ratio(const ScenarioSpace& space, const Payoff& returns,
                         const EligibleAsset& benchmark) {
    if (returns.size() != space.size() || benchmark.payoff().size() != space.size()) {
        throw StructuralError("sharpe_ratio: dimension mismatch");
    }
    std::vector<double> excess(space.size());
    for (std::size_t i = 0; i < excess.size(); ++i) {
        excess[i] = returns[i] - benchmark.payoff()[i] / benchmark.initial_price();
    }
    const Payoff excess_payoff{excess};
    const double mean = expectation(space, excess_payoff);
    double variance = 0.0;
    double magnitude = 0.0;
    for (std::size_t i = 0; i < excess.size(); ++i) {
        const double centered = excess[i] - mean;
        variance += space.probability(i) * centered * centered;
        magnitude = std::max(magnitude, std::abs(excess[i]));
    }
    const double stddev = std::sqrt(std::max(variance, 0.0));
    // A numerically constant excess return has no meaningful ratio; flag it
    // instead of dividing by rounding noise.
    if (stddev <= 1e-12 * std::max({1.0, std::abs(mean), magnitude})) {
        return SharpeRatio{std::numeric_limits<double>::quiet_NaN(), false};
    }
    return SharpeRatio{mean / stddev, true};
}

RiskReport build_report(const AcceptanceSet& set, const EligibleAsset& s, const Position& x,
                        const EligibleAsset& benchmark) {
    const MonetaryRisk rho = monetary_risk(set, s, x.payoff());
    const IntrinsicRisk r = set.flags().conic ? intrinsic_conic_closed_form(set, x, rho)
                                              : intrinsic_risk(set, s, x);

    RiskReport report{
        .intrinsic = r,
        .monetary = rho,
        .capital_intrinsic = x.initial_value() * r.value,
        .capital_traditional = 0.0,
        .altered_intrinsic = altered_position(x, s, r),
        .altered_traditional = std::nullopt,
        .return_intrinsic = Payoff::constant(x.payoff().size(), 0.0),
        .return_traditional = std::nullopt,
        .sharpe_intrinsic = SharpeRatio{},
        .sharpe_traditional = SharpeRatio{},
    };
    report.return_intrinsic = per_unit_return(report.altered_intrinsic.payoff(), x.initial_value());
    report.sharpe_intrinsic = sharpe_ratio(set.space(), report.return_intrinsic, benchmark);

    if (rho.finite || rho.value < 0.0) {
        // The traditional action only ever adds capital: (rho)^+ keeps
        // acceptable positions untouched.
        const double required = rho.finite ? std::max(rho.value, 0.0) : 0.0;
        report.capital_traditional = required;
        const double units = required / s.initial_price();
        std::vector<double> altered(x.payoff().size());
        for (std::size_t i = 0; i < altered.size(); ++i) {
            altered[i] = x.payoff()[i] + units * s.payoff()[i];
        }
        const double total_value = x.initial_value() + required;
        report.altered_traditional = Position(total_value, Payoff(std::move(altered)));
        report.return_traditional =
            per_unit_return(report.altered_traditional->payoff(), total_value);
        report.sharpe_traditional =
            sharpe_ratio(set.space(), *report.return_traditional, benchmark);
    } else {
        report.capital_traditional = std::numeric_limits<double>::infinity();
        report.sharpe_traditional =
            SharpeRatio{std::numeric_limits<double>::quiet_NaN(), false};
    }
    return report;
}

}  // namespace intrisk

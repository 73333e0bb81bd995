#pragma once

#include <optional>

#include "intrisk/acceptance.hpp"
#include "intrisk/intrinsic.hpp"
#include "intrisk/monetary.hpp"
#include "intrisk/scenario.hpp"

namespace intrisk {

/// Mean excess return over a benchmark divided by its standard deviation.
/// `defined` is false when the excess return is (numerically) constant; the
/// value is then a quiet NaN rather than a fabricated number.
struct SharpeRatio {
    double value = 0.0;
    bool defined = false;
};

/// Side-by-side record of the intrinsic and traditional de-risking actions.
///
/// capital_intrinsic = X_0 * R is the monetary reading of the intrinsic
/// fraction (the amount actually reinvested); capital_traditional = (rho)^+ is
/// the external capital the traditional action requires. The traditional
/// altered position (X_0 + (rho)^+, X_T + ((rho)^+/S_0) S_T) and its return
/// are absent when the traditional risk is +inf.
struct RiskReport {
    IntrinsicRisk intrinsic;
    MonetaryRisk monetary;
    double capital_intrinsic = 0.0;
    double capital_traditional = 0.0;
    Position altered_intrinsic;
    std::optional<Position> altered_traditional;
    Payoff return_intrinsic;
    std::optional<Payoff> return_traditional;
    SharpeRatio sharpe_intrinsic;
    SharpeRatio sharpe_traditional;
};

SharpeRatio sharpe_ratio(const ScenarioSpace& space, const Payoff& returns,
                         const EligibleAsset& benchmark);

/// Populate the full comparison. On conic sets the intrinsic leg is derived
/// from the traditional one through the closed form, which keeps the two
/// altered positions on the exact algebraic relation the comparison reports;
/// on non-conic sets it falls back to segment bisection.
RiskReport build_report(const AcceptanceSet& set, const EligibleAsset& s, const Position& x,
                        const EligibleAsset& benchmark);

}  // namespace intrisk

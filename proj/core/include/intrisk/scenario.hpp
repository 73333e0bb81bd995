#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "intrisk/errors.hpp"

namespace intrisk {

/// Finite probability space: N scenarios with nonnegative weights that sum to one.
///
/// Weights must sum to 1 within 1e-12; they are then renormalised by the exact
/// computed sum so that downstream functionals never see drift introduced by
/// file-format rounding. Zero-weight scenarios are permitted but flagged; they
/// never affect probabilistic functionals.
class ScenarioSpace {
public:
    explicit ScenarioSpace(std::vector<double> probabilities);

    static ScenarioSpace uniform(std::size_t scenario_count);

    std::size_t size() const noexcept { return probabilities_.size(); }
    const std::vector<double>& probabilities() const noexcept { return probabilities_; }
    double probability(std::size_t scenario) const { return probabilities_.at(scenario); }
    bool has_zero_weight_scenarios() const noexcept { return has_zero_weight_; }

private:
    std::vector<double> probabilities_;
    bool has_zero_weight_ = false;
};

/// Random variable at maturity: one finite terminal value per scenario.
class Payoff {
public:
    explicit Payoff(std::vector<double> values);

    static Payoff constant(std::size_t scenario_count, double value);

    std::size_t size() const noexcept { return values_.size(); }
    const std::vector<double>& values() const noexcept { return values_; }
    double operator[](std::size_t scenario) const { return values_[scenario]; }

    bool nonnegative() const noexcept;
    double max_abs() const noexcept;

    /// Entrywise payoff + shift (the payoff of adding `shift` units of cash).
    Payoff shifted(double shift) const;
    /// Entrywise multiple of the payoff.
    Payoff scaled(double factor) const;

private:
    std::vector<double> values_;
};

/// A held position: strictly positive initial value paired with its payoff.
class Position {
public:
    Position(double initial_value, Payoff payoff);

    double initial_value() const noexcept { return initial_value_; }
    const Payoff& payoff() const noexcept { return payoff_; }

private:
    double initial_value_;
    Payoff payoff_;
};

/// Reinvestment vehicle: strictly positive price and nonnegative payoff.
/// Acceptability under a particular acceptance set is a pairing-time check,
/// performed by the operations that combine asset and set, not here.
class EligibleAsset {
public:
    EligibleAsset(double initial_price, Payoff payoff);

    double initial_price() const noexcept { return initial_price_; }
    const Payoff& payoff() const noexcept { return payoff_; }

private:
    double initial_price_;
    Payoff payoff_;
};

/// Expectation of the payoff under the space's own probabilities,
/// accumulated with compensated summation.
double expectation(const ScenarioSpace& space, const Payoff& payoff);

/// Expectation under an explicit weight vector of matching length.
double expectation_under(std::span<const double> weights, const Payoff& payoff);

/// P[payoff < threshold] with strict inequality; ties at the threshold count
/// as not-below.
double probability_below(const ScenarioSpace& space, const Payoff& payoff, double threshold);

/// Sell the fraction `lambda` of the position and reinvest the proceeds in the
/// asset: returns (X_0, (1-lambda)*X_T + lambda*(X_0/S_0)*S_T). The initial
/// value is unchanged; lambda must lie in [0, 1].
Position mix(const Position& x, const EligibleAsset& s, double lambda);

/// All probability levels exactly attainable as event masses on this space
/// (sums over scenario subsets, deduplicated, sorted ascending). On finite
/// spaces only these levels are "grid-aligned"; probability constraints at
/// other levels cannot be hit exactly. Exponential in N, so N is capped at 20.
std::vector<double> attainable_probability_levels(const ScenarioSpace& space);

}  // namespace intrisk

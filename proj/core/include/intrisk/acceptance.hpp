#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "intrisk/scenario.hpp"

namespace intrisk {

/// Probability vector absolutely continuous w.r.t. a base scenario space:
/// nonnegative weights summing to one, with zero weight wherever the base
/// probability is zero.
class DualMeasure {
public:
    DualMeasure(const ScenarioSpace& space, std::vector<double> weights);

    std::size_t size() const noexcept { return weights_.size(); }
    const std::vector<double>& weights() const noexcept { return weights_; }
    double operator[](std::size_t scenario) const { return weights_[scenario]; }

private:
    std::vector<double> weights_;
};

enum class SetKind {
    value_at_risk,
    expected_shortfall,
    generator_convex,
    from_risk,
};

/// Declared structural properties of an acceptance set. Monotonicity is
/// definitional and always true; the remaining flags drive which operations
/// are admissible on the set.
struct SetFlags {
    bool monotone = true;
    bool conic = false;
    bool convex = false;
    bool closed = false;
    bool contains_zero = false;
};

using RiskFunctional = std::function<double(const Payoff&)>;

/// Declared analytic properties of a wrapped risk functional; they determine
/// the flags of the induced acceptance set {rho <= 0}.
struct RiskTraits {
    bool positively_homogeneous = false;
    bool convex = false;
    bool closed = true;
};

/// Membership predicate over payoffs with declared structural flags.
///
/// Four kinds are supported:
///  - value_at_risk(alpha):      accepts payoffs with P[X < 0] <= alpha,
///                               alpha in (0, 1/2); closed cone, not convex.
///  - expected_shortfall(alpha): accepts payoffs whose lower-tail average of
///                               mass alpha is >= 0; closed convex cone.
///  - generator_convex:          accepts payoffs with E_{Q_j}[X] >= c_j for
///                               every generator; closed and convex, conic
///                               exactly when every bound is zero.
///  - from_risk:                 accepts payoffs with rho(X) <= 0 for a
///                               wrapped risk functional.
///
/// Every construction verifies non-triviality by probing large positive and
/// negative constants: the set must accept some payoff and reject some payoff.
class AcceptanceSet {
public:
    static AcceptanceSet value_at_risk(ScenarioSpace space, double alpha);
    static AcceptanceSet expected_shortfall(ScenarioSpace space, double alpha);
    static AcceptanceSet generator_convex(ScenarioSpace space,
                                          std::vector<DualMeasure> generators,
                                          std::vector<double> bounds);
    static AcceptanceSet from_risk(ScenarioSpace space, RiskFunctional risk, RiskTraits traits);

    SetKind kind() const noexcept { return kind_; }
    const SetFlags& flags() const noexcept { return flags_; }
    const ScenarioSpace& space() const noexcept { return space_; }

    /// Probability level; value_at_risk and expected_shortfall kinds only.
    double alpha() const;
    /// Generators and bounds; generator_convex kind only.
    const std::vector<DualMeasure>& generators() const;
    const std::vector<double>& bounds() const;
    /// Evaluate the wrapped functional; from_risk kind only.
    double wrapped_risk(const Payoff& payoff) const;

    bool accepts(const Payoff& payoff) const;

private:
    AcceptanceSet(SetKind kind, ScenarioSpace space);

    SetKind kind_;
    ScenarioSpace space_;
    SetFlags flags_;
    double alpha_ = 0.0;
    std::vector<DualMeasure> generators_;
    std::vector<double> bounds_;
    RiskFunctional risk_;
};

/// Membership test; strict about dimensions, tolerant of 1e-12 boundary noise
/// in the direction of acceptance (closed-set semantics under floating point).
bool is_acceptable(const AcceptanceSet& set, const Payoff& payoff);

/// Explicit interior test: searches for eps > 0 with payoff - eps*1 acceptable,
/// halving eps from the payoff's magnitude down to 1e-10 relative. Returns the
/// largest certificate found, or nullopt if the payoff is not interior at that
/// resolution. Requires a closed set.
std::optional<double> interior_certificate(const AcceptanceSet& set, const Payoff& payoff);

bool is_interior(const AcceptanceSet& set, const Payoff& payoff);

/// Acceptance set induced by a risk functional: {X | rho(X) <= 0}. The conic
/// and convex flags are derived from the declared traits. Construction fails
/// if the induced set is trivial.
AcceptanceSet acceptance_from_risk(ScenarioSpace space, RiskFunctional risk, RiskTraits traits);

/// Discrete lower-tail expected shortfall at level alpha in (0, 1): the
/// negative average of the worst outcomes holding exactly mass alpha, with the
/// atom at the alpha-boundary split fractionally. Coherent and positively
/// homogeneous on finite spaces.
double expected_shortfall(const ScenarioSpace& space, const Payoff& payoff, double alpha);

/// Expectation of the payoff under a dual measure on the same space.
double expectation(const ScenarioSpace& space, const Payoff& payoff, const DualMeasure& measure);

}  // namespace intrisk

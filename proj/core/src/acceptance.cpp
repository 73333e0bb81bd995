#include "intrisk/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace intrisk {
namespace {

// Closed-set slack applied to membership comparisons.
constexpr double kProbabilityTol = 1e-12;
constexpr double kConstraintTol = 1e-12;

void require_dimension(const ScenarioSpace& space, const Payoff& payoff, const char* what) {
    if (space.size() != payoff.size()) {
        throw StructuralError(std::string(what) + ": payoff dimension " +
                              std::to_string(payoff.size()) + " does not match space dimension " +
                              std::to_string(space.size()));
    }
}

// Non-triviality per the acceptance-set axioms: some sufficiently large
// constant must be accepted and some sufficiently negative one rejected.
void verify_nontrivial(const AcceptanceSet& set) {
    static constexpr double kProbes[] = {1.0, 1e3, 1e6, 1e9};
    const std::size_t n = set.space().size();
    bool accepts_some = false;
    bool rejects_some = false;
    for (double k : kProbes) {
        if (!accepts_some && set.accepts(Payoff::constant(n, k))) accepts_some = true;
        if (!rejects_some && !set.accepts(Payoff::constant(n, -k))) rejects_some = true;
        if (accepts_some && rejects_some) break;
    }
    if (!accepts_some) {
        throw StructuralError("acceptance set rejects every probed positive constant; "
                              "violates non-triviality");
    }
    if (!rejects_some) {
        throw StructuralError("acceptance set accepts every probed negative constant; "
                              "violates non-triviality");
    }
}

}  // namespace

DualMeasure::DualMeasure(const ScenarioSpace& space, std::vector<double> weights)
    : weights_(std::move(weights)) {
    if (weights_.size() != space.size()) {
        throw StructuralError("dual measure dimension " + std::to_string(weights_.size()) +
                              " does not match space dimension " + std::to_string(space.size()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        double& w = weights_[i];
        if (!std::isfinite(w) || w < 0.0) {
            throw StructuralError("dual measure weights must be finite and nonnegative");
        }
        if (space.probability(i) == 0.0) {
            if (w > 1e-12) {
                throw StructuralError("dual measure puts mass " + std::to_string(w) +
                                      " on zero-probability scenario " + std::to_string(i) +
                                      "; must be absolutely continuous");
            }
            w = 0.0;
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw StructuralError("dual measure weights must sum to one within 1e-12 (got " +
                              std::to_string(sum) + ")");
    }
    for (double& w : weights_) w /= sum;
}

AcceptanceSet::AcceptanceSet(SetKind kind, ScenarioSpace space)
    : kind_(kind), space_(std::move(space)) {}

AcceptanceSet AcceptanceSet::value_at_risk(ScenarioSpace space, double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) {
        throw DomainError("value-at-risk level must lie in (0, 1/2) (got " +
                          std::to_string(alpha) + ")");
    }
    AcceptanceSet set(SetKind::value_at_risk, std::move(space));
    set.alpha_ = alpha;
    set.flags_ = SetFlags{.monotone = true,
                          .conic = true,
                          .convex = false,
                          .closed = true,
                          .contains_zero = true};
    verify_nontrivial(set);
    return set;
}

AcceptanceSet AcceptanceSet::expected_shortfall(ScenarioSpace space, double alpha) {
    // The tail average is coherent for any level in (0, 1); the (0, 1/2) cap
    // only applies to the value-at-risk probability constraint.
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("expected-shortfall level must lie in (0, 1) (got " +
                          std::to_string(alpha) + ")");
    }
    AcceptanceSet set(SetKind::expected_shortfall, std::move(space));
    set.alpha_ = alpha;
    set.flags_ = SetFlags{.monotone = true,
                          .conic = true,
                          .convex = true,
                          .closed = true,
                          .contains_zero = true};
    verify_nontrivial(set);
    return set;
}

AcceptanceSet AcceptanceSet::generator_convex(ScenarioSpace space,
                                              std::vector<DualMeasure> generators,
                                              std::vector<double> bounds) {
    if (generators.empty()) {
        throw StructuralError("generator set needs at least one generator");
    }
    if (generators.size() != bounds.size()) {
        throw StructuralError("generator set needs one bound per generator");
    }
    for (const DualMeasure& g : generators) {
        if (g.size() != space.size()) {
            throw StructuralError("generator dimension does not match space dimension");
        }
    }
    for (double c : bounds) {
        if (!std::isfinite(c)) throw StructuralError("generator bounds must be finite");
    }
    AcceptanceSet set(SetKind::generator_convex, std::move(space));
    set.generators_ = std::move(generators);
    set.bounds_ = std::move(bounds);
    const bool all_zero = std::all_of(set.bounds_.begin(), set.bounds_.end(),
                                      [](double c) { return c == 0.0; });
    const bool zero_ok = std::all_of(set.bounds_.begin(), set.bounds_.end(),
                                     [](double c) { return c <= kConstraintTol; });
    set.flags_ = SetFlags{.monotone = true,
                          .conic = all_zero,
                          .convex = true,
                          .closed = true,
                          .contains_zero = zero_ok};
    verify_nontrivial(set);
    return set;
}

AcceptanceSet AcceptanceSet::from_risk(ScenarioSpace space, RiskFunctional risk,
                                       RiskTraits traits) {
    if (!risk) {
        throw StructuralError("from_risk needs a callable risk functional");
    }
    AcceptanceSet set(SetKind::from_risk, std::move(space));
    set.risk_ = std::move(risk);
    const bool zero_in =
        set.risk_(Payoff::constant(set.space_.size(), 0.0)) <= kConstraintTol;
    set.flags_ = SetFlags{.monotone = true,
                          .conic = traits.positively_homogeneous,
                          .convex = traits.convex,
                          .closed = traits.closed,
                          .contains_zero = zero_in};
    verify_nontrivial(set);
    return set;
}

double AcceptanceSet::alpha() const {
    if (kind_ != SetKind::value_at_risk && kind_ != SetKind::expected_shortfall) {
        throw PreconditionError("alpha is defined for value-at-risk and expected-shortfall sets");
    }
    return alpha_;
}

const std::vector<DualMeasure>& AcceptanceSet::generators() const {
    if (kind_ != SetKind::generator_convex) {
        throw PreconditionError("generators are defined for generator sets only");
    }
    return generators_;
}

const std::vector<double>& AcceptanceSet::bounds() const {
    if (kind_ != SetKind::generator_convex) {
        throw PreconditionError("bounds are defined for generator sets only");
    }
    return bounds_;
}

double AcceptanceSet::wrapped_risk(const Payoff& payoff) const {
    if (kind_ != SetKind::from_risk) {
        throw PreconditionError("wrapped_risk is defined for from_risk sets only");
    }
    return risk_(payoff);
}

bool AcceptanceSet::accepts(const Payoff& payoff) const {
    require_dimension(space_, payoff, "is_acceptable");
    switch (kind_) {
        case SetKind::value_at_risk:
            return probability_below(space_, payoff, 0.0) <= alpha_ + kProbabilityTol;
        case SetKind::expected_shortfall: {
            const double scale = std::max(1.0, payoff.max_abs());
            return intrisk::expected_shortfall(space_, payoff, alpha_) <= kConstraintTol * scale;
        }
        case SetKind::generator_convex: {
            for (std::size_t j = 0; j < generators_.size(); ++j) {
                if (expectation_under(generators_[j].weights(), payoff) <
                    bounds_[j] - kConstraintTol) {
                    return false;
                }
            }
            return true;
        }
        case SetKind::from_risk: {
            const double scale = std::max(1.0, payoff.max_abs());
            return risk_(payoff) <= kConstraintTol * scale;
        }
    }
    return false;
}

bool is_acceptable(const AcceptanceSet& set, const Payoff& payoff) {
    return set.accepts(payoff);
}

std::optional<double> interior_certificate(const AcceptanceSet& set, const Payoff& payoff) {
    if (!set.flags().closed) {
        throw PreconditionError("interior test requires a closed acceptance set");
    }
    require_dimension(set.space(), payoff, "is_interior");
    const double scale = std::max(1.0, payoff.max_abs());
    for (double eps = scale; eps >= 1e-10 * scale; eps *= 0.5) {
        if (set.accepts(payoff.shifted(-eps))) return eps;
    }
    return std::nullopt;
}

bool is_interior(const AcceptanceSet& set, const Payoff& payoff) {
    return interior_certificate(set, payoff).has_value();
}

AcceptanceSet acceptance_from_risk(ScenarioSpace space, RiskFunctional risk, RiskTraits traits) {
    return AcceptanceSet::from_risk(std::move(space), std::move(risk), traits);
}

double expected_shortfall(const ScenarioSpace& space, const Payoff& payoff, double alpha) {
    require_dimension(space, payoff, "expected_shortfall");
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("expected-shortfall level must lie in (0, 1) (got " +
                          std::to_string(alpha) + ")");
    }
    std::vector<std::size_t> order(space.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return payoff[a] < payoff[b]; });

    double consumed = 0.0;
    double tail_sum = 0.0;
    for (std::size_t i : order) {
        const double p = space.probability(i);
        if (p <= 0.0) continue;
        const double take = std::min(p, alpha - consumed);
        if (take <= 0.0) break;
        tail_sum += take * payoff[i];
        consumed += take;
        if (consumed >= alpha) break;
    }
    return -tail_sum / alpha;
}

double expectation(const ScenarioSpace& space, const Payoff& payoff, const DualMeasure& measure) {
    require_dimension(space, payoff, "expectation");
    if (measure.size() != space.size()) {
        throw StructuralError("expectation: measure dimension does not match space dimension");
    }
    return expectation_under(measure.weights(), payoff);
}

}  // namespace intrisk

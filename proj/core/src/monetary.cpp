#include "intrisk/monetary.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace intrisk {
namespace {

constexpr int kMaxDoublings = 60;

Payoff add_units(const Payoff& x_T, const Payoff& s_T, double units) {
    std::vector<double> out(x_T.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = x_T[i] + units * s_T[i];
    }
    return Payoff(std::move(out));
}

}  // namespace

MonetaryRisk monetary_risk(const AcceptanceSet& set, const EligibleAsset& s, const Payoff& x_T) {
    if (s.payoff().size() != x_T.size()) {
        throw StructuralError("monetary_risk: asset and position payoff dimensions differ");
    }
    if (!s.payoff().nonnegative()) {
        throw PreconditionError("monetary_risk: eligible asset payoff must be nonnegative");
    }
    if (!set.accepts(s.payoff())) {
        throw PreconditionError("monetary_risk: eligible asset payoff is not acceptable "
                                "under the given set");
    }

    const double s0 = s.initial_price();
    const auto member = [&](double m) { return set.accepts(add_units(x_T, s.payoff(), m / s0)); };

    MonetaryRisk result;
    result.scale = std::max({1.0, x_T.max_abs(), s0});

    // Initial step sized so one unit of expansion can plausibly clear the
    // worst scenario loss.
    const double s_max = *std::max_element(s.payoff().values().begin(), s.payoff().values().end());
    double step = result.scale;
    if (s_max > 0.0) step = std::max(step, x_T.max_abs() * s0 / s_max);

    double lo;
    double hi;
    if (member(0.0)) {
        // Already acceptable: expand downward for the lower bracket.
        hi = 0.0;
        lo = -step;
        int doublings = 0;
        while (member(lo)) {
            hi = lo;
            lo *= 2.0;
            if (++doublings > kMaxDoublings) {
                result.finite = false;
                result.value = -std::numeric_limits<double>::infinity();
                result.expansion_limit = -lo / 2.0;
                result.asset_interior = is_interior(set, s.payoff());
                return result;
            }
        }
    } else {
        lo = 0.0;
        hi = step;
        int doublings = 0;
        while (!member(hi)) {
            lo = hi;
            hi *= 2.0;
            if (++doublings > kMaxDoublings) {
                const bool interior = is_interior(set, s.payoff());
                if (!interior) {
                    result.finite = false;
                    result.value = std::numeric_limits<double>::infinity();
                    result.expansion_limit = hi / 2.0;
                    result.asset_interior = false;
                    return result;
                }
                throw StructuralError("monetary_risk: bracket expansion exhausted although the "
                                      "asset payoff is interior; instance is numerically "
                                      "degenerate");
            }
        }
    }

    const double tol = 1e-10 * result.scale;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at floating-point resolution
        if (member(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    assert(member(hi) && !member(lo));

    result.value = hi;
    result.finite = true;
    result.bracket_lo = lo;
    result.bracket_hi = hi;
    return result;
}

double value_at_risk(const ScenarioSpace& space, const Payoff& x_T, double alpha) {
    if (space.size() != x_T.size()) {
        throw StructuralError("value_at_risk: payoff dimension does not match space dimension");
    }
    if (!(alpha > 0.0 && alpha < 0.5)) {
        throw DomainError("value-at-risk level must lie in (0, 1/2) (got " +
                          std::to_string(alpha) + ")");
    }

    // Positive-mass scenario values, ascending.
    std::vector<std::pair<double, double>> atoms;  // (value, mass)
    atoms.reserve(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (space.probability(i) > 0.0) atoms.emplace_back(x_T[i], space.probability(i));
    }
    std::sort(atoms.begin(), atoms.end());

    // Upper alpha-quantile: the largest value v with P[X < v] <= alpha. Mass
    // exactly at the level counts as <= (ties resolve toward the larger value).
    double upper_quantile = atoms.front().first;
    double mass_below = 0.0;
    for (const auto& [value, mass] : atoms) {
        if (mass_below <= alpha + 1e-12) {
            upper_quantile = value;
        } else {
            break;
        }
        mass_below += mass;
    }
    return -upper_quantile;
}

double monetary_from_intrinsic(const Position& x, double r) {
    if (!(r >= 0.0 && r <= 1.0)) {
        throw DomainError("intrinsic risk fraction must lie in [0, 1] (got " +
                          std::to_string(r) + ")");
    }
    if (r == 1.0) {
        return std::numeric_limits<double>::infinity();
    }
    return x.initial_value() * r / (1.0 - r);
}

}  // namespace intrisk

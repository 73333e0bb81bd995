#pragma once

#include "intrisk/acceptance.hpp"
#include "intrisk/scenario.hpp"

namespace intrisk {

/// Traditional risk value inf{m : X_T + (m/S_0) S_T acceptable} together with
/// its computational certificate.
///
/// When `finite` is true, `value` equals `bracket_hi`, the left-most capital
/// amount passing membership within tolerance, and `bracket_lo` is the largest
/// probed amount that failed. When `finite` is false and `value` is +inf, the
/// bracket expansion exhausted its schedule without finding an acceptable
/// shift and the asset payoff was independently confirmed non-interior
/// (`asset_interior` false, `expansion_limit` the largest amount probed).
/// A -inf verdict (every probed downward shift stayed acceptable, possible
/// only for assets with zero-mass support) is reported the same way with
/// `value` = -inf.
struct MonetaryRisk {
    double value = 0.0;
    bool finite = true;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    /// Per-instance tolerance scale max(1, ||X_T||_inf, S_0).
    double scale = 1.0;
    /// Largest |m| probed before declaring an infinite verdict.
    double expansion_limit = 0.0;
    /// Interiority of the asset payoff, evaluated for infinite verdicts.
    bool asset_interior = false;
};

/// Smallest capital invested in S that makes x_T acceptable. Bracketing by
/// geometric expansion (factor 2, at most 60 doublings of the instance scale)
/// followed by bisection to 1e-10 * scale. Membership along m is monotone
/// because S_T >= 0 and the set is monotone. Requires the asset payoff to be
/// acceptable under `set`.
MonetaryRisk monetary_risk(const AcceptanceSet& set, const EligibleAsset& s, const Payoff& x_T);

/// inf{m : P[X_T + m < 0] <= alpha} computed exactly by sorting scenario
/// values and accumulating probability mass; the negative of the upper
/// alpha-quantile, with ties at the quantile resolved toward the larger value.
/// alpha must lie in (0, 1/2).
double value_at_risk(const ScenarioSpace& space, const Payoff& x_T, double alpha);

/// Traditional risk recovered from an intrinsic risk fraction on a conic set:
/// X_0 * r / (1 - r). Returns +inf at r = 1, mirroring the correspondence
/// between intrinsic risk 1 and infinite traditional risk.
double monetary_from_intrinsic(const Position& x, double r);

}  // namespace intrisk

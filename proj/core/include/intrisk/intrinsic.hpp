#pragma once

#include "intrisk/acceptance.hpp"
#include "intrisk/monetary.hpp"
#include "intrisk/scenario.hpp"

namespace intrisk {

enum class IntrinsicMethod {
    bisection,
    conic_closed_form,
    dual,
};

/// Intrinsic risk: the smallest fraction of a position to sell and reinvest
/// in the eligible asset so that the mixed payoff is acceptable. Always a
/// dimensionless number in [0, 1]; it is 0 exactly when the payoff is already
/// acceptable (closed sets) and 1 exactly when only the full swap helps.
///
/// `bracket_lo`/`bracket_hi` certify the boundary: the mixed payoff is
/// unacceptable at bracket_lo and acceptable at bracket_hi = value.
struct IntrinsicRisk {
    double value = 0.0;
    IntrinsicMethod method = IntrinsicMethod::bisection;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

/// Segment bisection for inf{lambda in [0,1] : mix(x, s, lambda) acceptable},
/// to absolute tolerance 1e-10 in lambda. Valid because the acceptable lambdas
/// form the up-interval [R, 1] on closed sets that are conic, or convex and
/// containing zero; those flags are required and the failing one is named in
/// the error. The asset payoff must be nonnegative and acceptable.
IntrinsicRisk intrinsic_risk(const AcceptanceSet& set, const EligibleAsset& s, const Position& x);

/// Closed form on closed conic sets: (rho)^+ / (X_0 + (rho)^+), the removable-
/// singularity form, with an infinite traditional risk mapping to exactly 1.
/// `rho` must come from the same set and asset.
IntrinsicRisk intrinsic_conic_closed_form(const AcceptanceSet& set, const Position& x,
                                          const MonetaryRisk& rho);

/// Risk of the intermediate position X^{alpha,S} expressed through the risk of
/// the original position: (r_x - alpha) / (1 - alpha) for 0 <= alpha <= r_x,
/// where r_x > 0 is the intrinsic risk of the original (unacceptable) position.
double intrinsic_of_intermediate(double r_x, double alpha);

/// Upper bound (rho)^+ / (X_0 + (rho)^+) valid on closed convex sets that
/// contain zero; coincides with the intrinsic risk on cones, and is generally
/// strict otherwise.
double convex_upper_bound(const AcceptanceSet& set, const Position& x, const MonetaryRisk& rho);

/// The de-risked position mix(x, s, r.value): same initial value, payoff moved
/// onto the acceptance boundary when r.value lies strictly between 0 and 1.
Position altered_position(const Position& x, const EligibleAsset& s, const IntrinsicRisk& r);

}  // namespace intrisk

#include "intrisk/intrinsic.hpp"

#include <cassert>
#include <cmath>
#include <string>

namespace intrisk {
namespace {

constexpr double kLambdaTol = 1e-10;

void require_segment_preconditions(const AcceptanceSet& set, const EligibleAsset& s) {
    const SetFlags& f = set.flags();
    if (!f.closed) {
        throw PreconditionError("intrinsic_risk requires a closed acceptance set "
                                "(closed flag is false)");
    }
    if (!f.conic && !(f.convex && f.contains_zero)) {
        if (!f.convex) {
            throw PreconditionError("intrinsic_risk requires a conic or convex acceptance set "
                                    "(conic and convex flags are false)");
        }
        throw PreconditionError("intrinsic_risk on a non-conic convex set requires zero to be "
                                "acceptable (contains_zero flag is false)");
    }
    if (!s.payoff().nonnegative()) {
        throw PreconditionError("intrinsic_risk: eligible asset payoff must be nonnegative");
    }
    if (!set.accepts(s.payoff())) {
        throw PreconditionError("intrinsic_risk: eligible asset payoff is not acceptable under "
                                "the given set");
    }
}

}  // namespace

IntrinsicRisk intrinsic_risk(const AcceptanceSet& set, const EligibleAsset& s, const Position& x) {
    require_segment_preconditions(set, s);
    const auto member = [&](double lambda) { return set.accepts(mix(x, s, lambda).payoff()); };

    if (member(0.0)) {
        return IntrinsicRisk{0.0, IntrinsicMethod::bisection, 0.0, 0.0};
    }
    if (!member(1.0)) {
        // Ruled out by the well-definedness conditions checked above.
        throw StructuralError("intrinsic_risk: full swap into the eligible asset is not "
                              "acceptable; set flags are inconsistent with the membership "
                              "predicate");
    }

    double lo = 0.0;
    double hi = 1.0;
    while (hi - lo > kLambdaTol) {
        const double mid = 0.5 * (lo + hi);
        if (member(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }

#ifndef NDEBUG
    // The acceptable lambdas must form the up-interval [R, 1].
    for (int k = 1; k <= 8; ++k) {
        const double probe = hi + (1.0 - hi) * double(k) / 8.0;
        assert(member(probe));
    }
#endif

    return IntrinsicRisk{hi, IntrinsicMethod::bisection, lo, hi};
}

IntrinsicRisk intrinsic_conic_closed_form(const AcceptanceSet& set, const Position& x,
                                          const MonetaryRisk& rho) {
    const SetFlags& f = set.flags();
    if (!f.conic) {
        throw PreconditionError("conic closed form requires a conic acceptance set "
                                "(conic flag is false)");
    }
    if (!f.closed) {
        throw PreconditionError("conic closed form requires a closed acceptance set "
                                "(closed flag is false)");
    }
    if (!rho.finite) {
        // +inf traditional risk corresponds to intrinsic risk exactly 1; the
        // -inf direction has no positive part and yields 0.
        const double value = rho.value > 0.0 ? 1.0 : 0.0;
        return IntrinsicRisk{value, IntrinsicMethod::conic_closed_form, value, value};
    }
    const double positive_part = std::max(rho.value, 0.0);
    const double value = positive_part / (x.initial_value() + positive_part);
    return IntrinsicRisk{value, IntrinsicMethod::conic_closed_form, value, value};
}

double intrinsic_of_intermediate(double r_x, double alpha) {
    if (!(r_x > 0.0 && r_x <= 1.0)) {
        throw PreconditionError("intrinsic_of_intermediate applies to unacceptable positions "
                                "(needs intrinsic risk in (0, 1], got " + std::to_string(r_x) +
                                ")");
    }
    if (alpha < 0.0 || alpha > r_x) {
        throw DomainError("intermediate fraction must lie in [0, intrinsic risk] (got " +
                          std::to_string(alpha) + ")");
    }
    if (alpha >= 1.0) {
        throw DomainError("intermediate fraction must be strictly below one");
    }
    const double value = (r_x - alpha) / (1.0 - alpha);
    return std::min(std::max(value, 0.0), 1.0);
}

double convex_upper_bound(const AcceptanceSet& set, const Position& x, const MonetaryRisk& rho) {
    const SetFlags& f = set.flags();
    if (!f.convex || !f.closed || !f.contains_zero) {
        throw PreconditionError("convex upper bound requires a closed convex acceptance set "
                                "containing zero");
    }
    if (!rho.finite && rho.value > 0.0) {
        return 1.0;
    }
    const double positive_part = rho.finite ? std::max(rho.value, 0.0) : 0.0;
    return positive_part / (x.initial_value() + positive_part);
}

Position altered_position(const Position& x, const EligibleAsset& s, const IntrinsicRisk& r) {
    return mix(x, s, r.value);
}

}  // namespace intrisk

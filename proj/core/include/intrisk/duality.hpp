#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "intrisk/acceptance.hpp"
#include "intrisk/scenario.hpp"

namespace intrisk {

/// Support value alpha(Q, A) = inf over acceptable payoffs of E_Q. On conic
/// sets it can only be 0 or -inf. `witness` carries the attaining payoff when
/// the infimum is finite, or a recession direction (an acceptable-improving
/// ray along which E_Q decreases without bound) when it is -inf; it is absent
/// when no explicit certificate was recovered. The minimal penalty function of
/// the classical convex duality is the negative: alpha_min(Q, A) = -alpha(Q, A).
struct PenaltyValue {
    double value = 0.0;
    bool finite = true;
    std::optional<Payoff> witness;
};

/// Penalty for a dual measure on a closed convex set.
///  - expected_shortfall(alpha): 0 when the density of q w.r.t. the base
///    probabilities stays <= 1/alpha on every positive-mass scenario, else
///    -inf with an explicit acceptable witness of negative Q-expectation.
///  - generator_convex: value of the finite linear program
///    inf{ sum q_i y_i : E_{Q_j}[y] >= c_j for all j }, solved by enumerating
///    basic feasible multiplier supports; unboundedness (-inf) is detected by
///    dual infeasibility and certified by a recession-direction search.
/// Other kinds are rejected.
PenaltyValue penalty(const AcceptanceSet& set, const DualMeasure& q);

/// The classical minimal penalty sup over acceptable payoffs of E_Q[-X],
/// derived from the infimum form: alpha_min(Q, A) = -alpha(Q, A). It is +inf
/// where the support value is -inf.
double minimal_penalty(const AcceptanceSet& set, const DualMeasure& q);

/// Separation-based membership on closed convex sets: the payoff is declared
/// outside the set iff some sampled measure satisfies
/// penalty(Q) > E_Q[payoff] + 1e-9. Never separates genuinely acceptable
/// payoffs; completeness depends on the sample.
bool membership_via_separation(const AcceptanceSet& set, const Payoff& payoff,
                               std::span<const DualMeasure> measures);

/// Dual representation of the intrinsic risk on closed convex sets containing
/// zero: sup over sampled Q of
///   (alpha(Q,A) - E_Q[X_T])^+ / ((X_0/S_0) E_Q[S_T] - E_Q[X_T]),
/// skipping measures with penalty -inf and those whose denominator is below
/// 1e-12 (there the numerator's positive part necessarily vanishes). Exact
/// when the sample contains the vertices of the effective dual region.
double intrinsic_dual(const AcceptanceSet& set, const EligibleAsset& s, const Position& x,
                      std::span<const DualMeasure> measures);

/// Vertices of the coherent dual set {Q : alpha(Q, A) = 0} for conic convex
/// sets. For expected_shortfall(alpha) these are the vertices of
/// {q : 0 <= q_i <= p_i/alpha, sum q = 1}, enumerated exactly for N <= 12
/// (a SizeError beyond that points to the sampling mode); for conic
/// generator sets they are the generators themselves.
std::vector<DualMeasure> coherent_dual_set(const AcceptanceSet& set);

/// Default dual sample for the set: the exact vertex enumeration where it is
/// available, augmented with seeded random measures (greedy polytope fills and
/// Dirichlet draws). For generator sets the sample concentrates on the
/// generator hull, the effective domain of the penalty, plus plain simplex
/// draws. Deterministic under a fixed seed.
std::vector<DualMeasure> dual_sample(const AcceptanceSet& set, std::uint64_t seed,
                                     std::size_t count = 10000);

}  // namespace intrisk

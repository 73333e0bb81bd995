#include "intrisk/duality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <utility>

namespace intrisk {
namespace {

constexpr double kSeparationTol = 1e-9;
constexpr double kDenominatorGuard = 1e-12;
constexpr double kResidualTol = 1e-9;
constexpr double kMultiplierTol = 1e-12;
constexpr std::size_t kVertexEnumerationCap = 12;

void require_convex_closed(const AcceptanceSet& set, const char* what) {
    if (!set.flags().convex) {
        throw PreconditionError(std::string(what) + " requires a convex acceptance set "
                                "(convex flag is false)");
    }
    if (!set.flags().closed) {
        throw PreconditionError(std::string(what) + " requires a closed acceptance set "
                                "(closed flag is false)");
    }
}

void require_dual_kind(const AcceptanceSet& set, const char* what) {
    if (set.kind() != SetKind::expected_shortfall && set.kind() != SetKind::generator_convex) {
        throw PreconditionError(std::string(what) + " is implemented for expected-shortfall "
                                "and generator sets");
    }
}

// --- expected shortfall: density characterisation of the dual polytope ------

// Scenario with the worst density violation q_i/p_i > 1/alpha, if any.
std::optional<std::size_t> es_density_violation(const ScenarioSpace& space, double alpha,
                                                std::span<const double> q) {
    const double cap = 1.0 / alpha;
    std::optional<std::size_t> worst;
    double worst_ratio = cap * (1.0 + 1e-12);
    for (std::size_t i = 0; i < space.size(); ++i) {
        const double p = space.probability(i);
        if (p <= 0.0) continue;
        const double ratio = q[i] / p;
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            worst = i;
        }
    }
    return worst;
}

// Acceptable payoff with strictly negative Q-expectation, certifying that the
// penalty is -inf: loss of one on the violating scenario, compensated
// elsewhere so the alpha-tail average is exactly zero.
Payoff es_infeasibility_witness(const ScenarioSpace& space, double alpha, std::size_t violating) {
    const double p = space.probability(violating);
    // A violation q_i > p_i/alpha forces p_i < alpha because q_i <= 1.
    const double lift = p / (alpha - p);
    std::vector<double> values(space.size(), lift);
    values[violating] = -1.0;
    return Payoff(std::move(values));
}

// --- generator sets: the penalty LP through its dual ------------------------
//
// inf{ q.y : E_{Q_j}[y] >= c_j } over free y equals, by LP duality,
// max{ c.mu : sum_j mu_j Q_j = q, mu >= 0 }, and the multiplier polytope is
// bounded (the equality forces sum mu = 1). The maximum sits at a basic
// feasible solution, so enumerating generator supports is exhaustive. An
// infeasible multiplier system means the primal is unbounded below.
class GeneratorDual {
public:
    explicit GeneratorDual(const AcceptanceSet& set)
        : space_(&set.space()), generators_(&set.generators()), bounds_(&set.bounds()) {
        const std::size_t J = generators_->size();
        if (J > 16) {
            throw SizeError("generator penalty enumerates multiplier supports; supported only "
                            "for at most 16 generators");
        }
        for (unsigned mask = 1; mask < (1u << J); ++mask) {
            add_basis(mask);
        }
    }

    PenaltyValue evaluate(std::span<const double> q) const {
        const std::size_t n = space_->size();
        double best = -std::numeric_limits<double>::infinity();
        bool feasible = false;
        std::vector<double> mu;
        std::vector<double> z;
        for (const Basis& basis : bases_) {
            const std::size_t k = basis.support.size();
            // Least-squares multipliers through the cached QR factors.
            z.assign(k, 0.0);
            for (std::size_t c = 0; c < k; ++c) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += basis.q_columns[c][i] * q[i];
                z[c] = dot;
            }
            mu.assign(k, 0.0);
            for (std::size_t c = k; c-- > 0;) {
                double v = z[c];
                for (std::size_t d = c + 1; d < k; ++d) v -= basis.r[c][d] * mu[d];
                mu[c] = v / basis.r[c][c];
            }
            bool ok = true;
            for (double m : mu) {
                if (m < -kMultiplierTol) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            // Exact-solution check: the support must reproduce q.
            double residual = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double reconstructed = 0.0;
                for (std::size_t c = 0; c < k; ++c) {
                    reconstructed += (*generators_)[basis.support[c]].weights()[i] * mu[c];
                }
                residual = std::max(residual, std::abs(reconstructed - q[i]));
            }
            if (residual > kResidualTol) continue;
            double value = 0.0;
            for (std::size_t c = 0; c < k; ++c) value += (*bounds_)[basis.support[c]] * mu[c];
            if (!feasible || value > best) {
                best = value;
                feasible = true;
            }
        }
        if (feasible) {
            return PenaltyValue{best, true, std::nullopt};
        }
        return PenaltyValue{-std::numeric_limits<double>::infinity(), false,
                            recession_witness(q)};
    }

private:
    struct Basis {
        std::vector<std::size_t> support;
        std::vector<std::vector<double>> q_columns;  // orthonormal, one per support entry
        std::vector<std::vector<double>> r;          // upper-triangular k x k
    };

    void add_basis(unsigned mask) {
        const std::size_t n = space_->size();
        Basis basis;
        for (std::size_t j = 0; j < generators_->size(); ++j) {
            if (mask & (1u << j)) basis.support.push_back(j);
        }
        const std::size_t k = basis.support.size();
        if (k > n) return;
        basis.q_columns.assign(k, std::vector<double>(n, 0.0));
        basis.r.assign(k, std::vector<double>(k, 0.0));
        for (std::size_t c = 0; c < k; ++c) {
            std::vector<double> v = (*generators_)[basis.support[c]].weights();
            for (std::size_t p = 0; p < c; ++p) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += basis.q_columns[p][i] * v[i];
                basis.r[p][c] = dot;
                for (std::size_t i = 0; i < n; ++i) v[i] -= dot * basis.q_columns[p][i];
            }
            double norm = 0.0;
            for (double vi : v) norm += vi * vi;
            norm = std::sqrt(norm);
            if (norm < 1e-10) return;  // dependent support; covered by smaller ones
            basis.r[c][c] = norm;
            for (std::size_t i = 0; i < n; ++i) basis.q_columns[c][i] = v[i] / norm;
        }
        bases_.push_back(std::move(basis));
    }

    // Direction d with E_{Q_j}[d] >= 0 for all generators and q.d < 0: loss on
    // one scenario lifted elsewhere just enough to stay generator-feasible.
    std::optional<Payoff> recession_witness(std::span<const double> q) const {
        const std::size_t n = space_->size();
        std::optional<Payoff> best;
        double best_objective = -kMultiplierTol;
        for (std::size_t i = 0; i < n; ++i) {
            double max_weight = 0.0;
            for (const DualMeasure& g : *generators_) {
                max_weight = std::max(max_weight, g.weights()[i]);
            }
            if (1.0 - max_weight <= 1e-12) continue;
            const double lift = max_weight / (1.0 - max_weight);
            double objective = -q[i] + lift * (1.0 - q[i]);
            if (objective < best_objective) {
                std::vector<double> d(n, lift);
                d[i] = -1.0;
                best_objective = objective;
                best = Payoff(std::move(d));
            }
        }
        return best;
    }

    const ScenarioSpace* space_;
    const std::vector<DualMeasure>* generators_;
    const std::vector<double>* bounds_;
    std::vector<Basis> bases_;
};

PenaltyValue es_penalty(const AcceptanceSet& set, std::span<const double> q) {
    const auto violation = es_density_violation(set.space(), set.alpha(), q);
    if (!violation) {
        // The infimum 0 is attained at the zero payoff, which sits in every
        // expected-shortfall acceptance set.
        return PenaltyValue{0.0, true, Payoff::constant(set.space().size(), 0.0)};
    }
    return PenaltyValue{-std::numeric_limits<double>::infinity(), false,
                        es_infeasibility_witness(set.space(), set.alpha(), *violation)};
}

// --- expected shortfall dual polytope vertices -------------------------------

std::vector<std::vector<double>> es_polytope_vertices(const ScenarioSpace& space, double alpha) {
    const std::size_t n = space.size();
    if (n > kVertexEnumerationCap) {
        throw SizeError("expected-shortfall vertex enumeration supports N <= 12; use "
                        "dual_sample for random sampling beyond that");
    }
    std::vector<double> caps(n);
    unsigned zero_mask = 0;
    for (std::size_t i = 0; i < n; ++i) {
        caps[i] = space.probability(i) / alpha;
        if (caps[i] <= 0.0) zero_mask |= (1u << i);
    }

    std::vector<std::vector<double>> vertices;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (mask & zero_mask) continue;
        double at_cap = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) at_cap += caps[i];
        }
        if (at_cap > 1.0 + 1e-12) continue;
        const double remainder = 1.0 - at_cap;
        if (std::abs(remainder) <= 1e-12) {
            std::vector<double> v(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (1u << i)) v[i] = caps[i];
            }
            vertices.push_back(std::move(v));
            continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (mask & (1u << j)) continue;
            if (caps[j] <= remainder + 1e-12) continue;
            std::vector<double> v(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (1u << i)) v[i] = caps[i];
            }
            v[j] = remainder;
            vertices.push_back(std::move(v));
        }
    }

    std::sort(vertices.begin(), vertices.end());
    std::vector<std::vector<double>> unique;
    for (auto& v : vertices) {
        if (!unique.empty()) {
            bool same = true;
            for (std::size_t i = 0; i < n; ++i) {
                if (std::abs(v[i] - unique.back()[i]) > 1e-12) {
                    same = false;
                    break;
                }
            }
            if (same) continue;
        }
        unique.push_back(std::move(v));
    }
    return unique;
}

std::vector<double> dirichlet_draw(std::mt19937_64& engine, std::size_t n,
                                   const ScenarioSpace& space) {
    std::exponential_distribution<double> exp_dist(1.0);
    std::vector<double> q(n, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (space.probability(i) <= 0.0) continue;  // absolute continuity
        q[i] = exp_dist(engine);
        total += q[i];
    }
    for (double& w : q) w /= total;
    return q;
}

}  // namespace

PenaltyValue penalty(const AcceptanceSet& set, const DualMeasure& q) {
    require_convex_closed(set, "penalty");
    require_dual_kind(set, "penalty");
    if (q.size() != set.space().size()) {
        throw StructuralError("penalty: measure dimension does not match space dimension");
    }
    if (set.kind() == SetKind::expected_shortfall) {
        return es_penalty(set, q.weights());
    }
    return GeneratorDual(set).evaluate(q.weights());
}

double minimal_penalty(const AcceptanceSet& set, const DualMeasure& q) {
    return -penalty(set, q).value;
}

bool membership_via_separation(const AcceptanceSet& set, const Payoff& payoff,
                               std::span<const DualMeasure> measures) {
    require_convex_closed(set, "membership_via_separation");
    require_dual_kind(set, "membership_via_separation");
    std::optional<GeneratorDual> generator_dual;
    if (set.kind() == SetKind::generator_convex) generator_dual.emplace(set);

    for (const DualMeasure& q : measures) {
        double support_value;
        if (set.kind() == SetKind::expected_shortfall) {
            if (es_density_violation(set.space(), set.alpha(), q.weights())) continue;
            support_value = 0.0;
        } else {
            const PenaltyValue pv = generator_dual->evaluate(q.weights());
            if (!pv.finite) continue;
            support_value = pv.value;
        }
        if (support_value > expectation_under(q.weights(), payoff) + kSeparationTol) {
            return false;  // separating functional found
        }
    }
    return true;
}

double intrinsic_dual(const AcceptanceSet& set, const EligibleAsset& s, const Position& x,
                      std::span<const DualMeasure> measures) {
    require_convex_closed(set, "intrinsic_dual");
    require_dual_kind(set, "intrinsic_dual");
    if (!set.flags().contains_zero) {
        throw PreconditionError("intrinsic_dual requires an acceptance set containing zero "
                                "(contains_zero flag is false)");
    }
    if (!s.payoff().nonnegative()) {
        throw PreconditionError("intrinsic_dual: eligible asset payoff must be nonnegative");
    }
    if (!set.accepts(s.payoff())) {
        throw PreconditionError("intrinsic_dual: eligible asset payoff is not acceptable under "
                                "the given set");
    }
    if (x.payoff().size() != set.space().size() || s.payoff().size() != set.space().size()) {
        throw StructuralError("intrinsic_dual: dimension mismatch");
    }

    std::optional<GeneratorDual> generator_dual;
    if (set.kind() == SetKind::generator_convex) generator_dual.emplace(set);

    const double units = x.initial_value() / s.initial_price();
    double best = 0.0;
    for (const DualMeasure& q : measures) {
        double support_value;
        if (set.kind() == SetKind::expected_shortfall) {
            if (es_density_violation(set.space(), set.alpha(), q.weights())) continue;
            support_value = 0.0;
        } else {
            const PenaltyValue pv = generator_dual->evaluate(q.weights());
            if (!pv.finite) continue;
            support_value = pv.value;
        }
        const double expected_position = expectation_under(q.weights(), x.payoff());
        const double expected_asset = expectation_under(q.weights(), s.payoff());
        const double numerator = support_value - expected_position;
        if (numerator <= 0.0) continue;
        const double denominator = units * expected_asset - expected_position;
        // A vanishing denominator forces a non-positive numerator, so the
        // guard never discards a contributing measure.
        if (denominator <= kDenominatorGuard) continue;
        best = std::max(best, numerator / denominator);
    }
    return std::min(best, 1.0);
}

std::vector<DualMeasure> coherent_dual_set(const AcceptanceSet& set) {
    if (!set.flags().conic || !set.flags().convex) {
        throw PreconditionError("coherent_dual_set requires a conic convex acceptance set");
    }
    if (set.kind() == SetKind::expected_shortfall) {
        std::vector<DualMeasure> out;
        for (auto& v : es_polytope_vertices(set.space(), set.alpha())) {
            out.emplace_back(set.space(), std::move(v));
        }
        return out;
    }
    if (set.kind() == SetKind::generator_convex) {
        // All bounds are zero here, so the dual set is the generator hull and
        // its vertices are among the generators themselves.
        return set.generators();
    }
    throw PreconditionError("coherent_dual_set is implemented for expected-shortfall and "
                            "generator sets");
}

std::vector<DualMeasure> dual_sample(const AcceptanceSet& set, std::uint64_t seed,
                                     std::size_t count) {
    require_convex_closed(set, "dual_sample");
    require_dual_kind(set, "dual_sample");
    const std::size_t n = set.space().size();
    std::mt19937_64 engine(seed);
    std::vector<DualMeasure> sample;

    if (set.kind() == SetKind::expected_shortfall) {
        if (n <= kVertexEnumerationCap) {
            return coherent_dual_set(set);
        }
        // Beyond exact enumeration: random vertices by greedy capacity fills,
        // interleaved with convex mixtures for interior coverage.
        const double alpha = set.alpha();
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::uniform_real_distribution<double> mix_weight(0.0, 1.0);
        while (sample.size() < count) {
            std::shuffle(order.begin(), order.end(), engine);
            std::vector<double> q(n, 0.0);
            double remaining = 1.0;
            for (std::size_t i : order) {
                if (remaining <= 0.0) break;
                const double cap = set.space().probability(i) / alpha;
                const double take = std::min(cap, remaining);
                q[i] = take;
                remaining -= take;
            }
            sample.emplace_back(set.space(), std::move(q));
            if (sample.size() >= 2 && sample.size() < count && sample.size() % 2 == 0) {
                const double w = mix_weight(engine);
                const auto& a = sample[sample.size() - 1].weights();
                const auto& b = sample[sample.size() - 2].weights();
                std::vector<double> mixed(n);
                for (std::size_t i = 0; i < n; ++i) mixed[i] = w * a[i] + (1.0 - w) * b[i];
                sample.emplace_back(set.space(), std::move(mixed));
            }
        }
        sample.resize(count, sample.front());
        return sample;
    }

    // Generator sets: the penalty is finite only on the generator hull, so the
    // sample is the generators, seeded mixtures of them, and plain simplex
    // draws for the separating side.
    const std::vector<DualMeasure>& generators = set.generators();
    sample.insert(sample.end(), generators.begin(), generators.end());
    std::exponential_distribution<double> exp_dist(1.0);
    while (sample.size() < count) {
        if (sample.size() % 4 == 3) {
            sample.emplace_back(set.space(), dirichlet_draw(engine, n, set.space()));
            continue;
        }
        std::vector<double> weights(generators.size());
        double total = 0.0;
        for (double& w : weights) {
            w = exp_dist(engine);
            total += w;
        }
        std::vector<double> q(n, 0.0);
        for (std::size_t j = 0; j < generators.size(); ++j) {
            const double w = weights[j] / total;
            for (std::size_t i = 0; i < n; ++i) q[i] += w * generators[j].weights()[i];
        }
        sample.emplace_back(set.space(), std::move(q));
    }
    sample.resize(count, sample.front());
    return sample;
}

}  // namespace intrisk

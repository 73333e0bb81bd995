#include "intrisk/properties.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>

#include "intrisk/duality.hpp"
#include "intrisk/intrinsic.hpp"
#include "intrisk/monetary.hpp"

namespace intrisk::props {
namespace {

struct Check {
    int trials = 0;
    int violations = 0;
    double worst = 0.0;

    void record(bool ok, double gap) {
        ++trials;
        if (!ok) {
            ++violations;
            worst = std::max(worst, gap);
        }
    }
};

Payoff random_payoff(Rng& rng, std::size_t n, double lo, double hi) {
    std::vector<double> values(n);
    for (double& v : values) v = rng.uniform(lo, hi);
    return Payoff(std::move(values));
}

SetFamily cycle_family(std::span<const SetFamily> families, int index) {
    return families[std::size_t(index) % families.size()];
}

}  // namespace

double Rng::uniform(double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return dist(engine_);
}

int Rng::uniform_int(int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    return dist(engine_);
}

Instance random_instance(Rng& rng, SetFamily family, const InstanceOptions& options) {
    const int n = rng.uniform_int(options.min_scenarios, options.max_scenarios);

    // Uniform weights a third of the time, otherwise random positive masses.
    std::vector<double> weights(static_cast<std::size_t>(n));
    if (rng.uniform_int(0, 2) == 0) {
        std::fill(weights.begin(), weights.end(), 1.0);
    } else {
        for (double& w : weights) w = rng.uniform(0.05, 1.0);
    }
    double total = 0.0;
    for (double w : weights) total += w;
    for (double& w : weights) w /= total;
    ScenarioSpace space{weights};

    auto make_set = [&]() -> AcceptanceSet {
        switch (family) {
            case SetFamily::var:
                return AcceptanceSet::value_at_risk(space, rng.uniform(0.05, 0.45));
            case SetFamily::es:
                return AcceptanceSet::expected_shortfall(space, rng.uniform(0.05, 0.45));
            case SetFamily::generator: {
                const int generator_count = rng.uniform_int(2, 3);
                std::vector<DualMeasure> generators;
                std::vector<double> bounds;
                for (int j = 0; j < generator_count; ++j) {
                    std::vector<double> g(static_cast<std::size_t>(n));
                    double g_total = 0.0;
                    for (std::size_t i = 0; i < g.size(); ++i) {
                        g[i] = space.probability(i) > 0.0 ? rng.uniform(0.01, 1.0) : 0.0;
                        g_total += g[i];
                    }
                    for (double& w : g) w /= g_total;
                    generators.emplace_back(space, std::move(g));
                    bounds.push_back(rng.uniform(-2.0, -0.05));
                }
                return AcceptanceSet::generator_convex(space, std::move(generators),
                                                       std::move(bounds));
            }
        }
        throw DomainError("unknown set family");
    };
    AcceptanceSet set = make_set();

    // Asset payoff bounded away from zero keeps it interior for all families.
    EligibleAsset asset(rng.uniform(0.5, 2.0), random_payoff(rng, static_cast<std::size_t>(n), 0.2, 3.0));

    Position position(rng.uniform(0.5, 20.0), random_payoff(rng, static_cast<std::size_t>(n), -10.0, 10.0));
    if (options.force_unacceptable) {
        for (int attempt = 0; attempt < 64 && set.accepts(position.payoff()); ++attempt) {
            Payoff candidate = random_payoff(rng, static_cast<std::size_t>(n), -10.0, 10.0);
            if (set.accepts(candidate)) {
                candidate = candidate.shifted(-candidate.max_abs() - rng.uniform(0.5, 3.0));
            }
            position = Position(position.initial_value(), std::move(candidate));
        }
    }
    return Instance{std::move(space), std::move(set), std::move(asset), std::move(position)};
}

std::vector<PropertyResult> run_property_suite(std::uint64_t seed, int trials_per_property,
                                               double tolerance) {
    std::vector<PropertyResult> results;
    constexpr SetFamily kAll[] = {SetFamily::var, SetFamily::es, SetFamily::generator};
    constexpr SetFamily kConic[] = {SetFamily::var, SetFamily::es};
    constexpr SetFamily kConvex[] = {SetFamily::es, SetFamily::generator};

    // Relevance: positive risk exactly for unacceptable payoffs (closed sets).
    {
        Rng rng(seed ^ 0x01);
        Check check;
        for (int t = 0; t < trials_per_property; ++t) {
            const Instance inst = random_instance(rng, cycle_family(kAll, t));
            const bool acceptable = inst.set.accepts(inst.position.payoff());
            const double r = intrinsic_risk(inst.set, inst.asset, inst.position).value;
            const bool in_range = r >= 0.0 && r <= 1.0;
            check.record(in_range && (acceptable ? r == 0.0 : r > 0.0),
                         acceptable ? r : 1.0);
        }
        results.push_back({"relevance", check.trials, check.violations, check.worst});
    }

    // Boundary: the altered payoff sits on the acceptance boundary.
    {
        Rng rng(seed ^ 0x02);
        Check check;
        int t = 0;
        while (check.trials < trials_per_property) {
            const Instance inst =
                random_instance(rng, cycle_family(kAll, t++), {.force_unacceptable = true});
            const double r = intrinsic_risk(inst.set, inst.asset, inst.position).value;
            if (r < 1e-6 || r > 1.0 - 1e-6) continue;
            const double delta = 1e-8;
            const bool above = inst.set.accepts(mix(inst.position, inst.asset, r + delta).payoff());
            const bool below = inst.set.accepts(mix(inst.position, inst.asset, r - delta).payoff());
            check.record(above && !below, 1.0);
        }
        results.push_back({"boundary", check.trials, check.violations, check.worst});
    }

    // Up-set: every sampled fraction above the risk stays acceptable.
    {
        Rng rng(seed ^ 0x03);
        Check check;
        for (int t = 0; t < trials_per_property; ++t) {
            const Instance inst =
                random_instance(rng, cycle_family(kAll, t), {.force_unacceptable = true});
            const double r = intrinsic_risk(inst.set, inst.asset, inst.position).value;
            bool ok = true;
            for (int k = 0; k <= 20; ++k) {
                const double lambda = r + (1.0 - r) * double(k) / 20.0;
                if (!inst.set.accepts(mix(inst.position, inst.asset, lambda).payoff())) {
                    ok = false;
                    break;
                }
            }
            check.record(ok, 1.0);
        }
        results.push_back({"up-set", check.trials, check.violations, check.worst});
    }

    // Interior linkage: interior assets keep the risk below one on conic sets;
    // a boundary asset pins the constant-loss position at exactly one.
    {
        Rng rng(seed ^ 0x04);
        Check check;
        for (int t = 0; t < trials_per_property; ++t) {
            const Instance inst =
                random_instance(rng, cycle_family(kConic, t), {.force_unacceptable = true});
            const bool interior = is_interior(inst.set, inst.asset.payoff());
            const double r = intrinsic_risk(inst.set, inst.asset, inst.position).value;
            check.record(interior && r < 1.0, interior ? r : 0.0);
        }
        {
            // Constructed boundary-asset instance.
            ScenarioSpace space = ScenarioSpace::uniform(4);
            AcceptanceSet set = AcceptanceSet::value_at_risk(space, 0.25);
            EligibleAsset boundary_asset(1.0, Payoff{{1.0, 1.0, 0.0, 0.0}});
            Position constant_loss(3.0, Payoff::constant(4, -3.0));
            const double r = intrinsic_risk(set, boundary_asset, constant_loss).value;
            check.record(!is_interior(set, boundary_asset.payoff()) && r == 1.0, r);
        }
        results.push_back({"interior-linkage", check.trials, check.violations, check.worst});
    }

    // Monotonicity, element-wise order.
    {
        Rng rng(seed ^ 0x05);
        Check check;
        for (int t = 0; t < trials_per_property; ++t) {
            const Instance inst = random_instance(rng, cycle_family(kAll, t));
            std::vector<double> raised(inst.position.payoff().values());
            for (double& v : raised) v += rng.uniform(0.0, 3.0);
            const Position dominating(inst.position.initial_value() + rng.uniform(0.0, 3.0),
                                      Payoff(std::move(raised)));
            const double r_low = intrinsic_risk(inst.set, inst.asset, inst.position).value;
            const double r_high = intrinsic_risk(inst.set, inst.asset, dominating).value;
            check.record(r_high <= r_low + tolerance, r_high - r_low);
        }
        results.push_back({"monotonicity-elementwise", check.trials, check.violations,
                           check.worst});
    }

    // Monotonicity, return-wise order (conic sets).
    {
        Rng rng(seed ^ 0x06);
        Check check;
        for (int t = 0; t < trials_per_property; ++t) {
            const Instance inst = random_instance(rng, cycle_family(kConic, t));
            const double x0 = rng.uniform(0.5, 20.0);
            std::vector<double> scaled(inst.space.size());
            for (std::size_t i = 0; i < scaled.size(); ++i) {
                scaled[i] = x0 * (inst.position.payoff()[i] / inst.position.initial_value() +
                                  rng.uniform(0.0, 1.0));
            }
            const Position dominating(x0, Payoff(std::move(scaled)));
            const double r_low = intrinsic_risk(inst.set, inst.asset, inst.position).value;
            const double r_high = intrinsic_risk(inst.set, inst.asset, dominating).value;
            check.record(r_high <= r_low + tolerance, r_high - r_low);
        }
        results.push_back({"monotonicity-returnwise", check.trials, check.violations,
                           check.worst});
    }

    // Quasi-convexity in positions (convex sets).
    {
        Rng rng(seed ^ 0x07);
        Check check;
        for (int t = 0; t < trials_per_property; ++t) {
            const Instance inst = random_instance(rng, cycle_family(kConvex, t));
            const Position other(rng.uniform(0.5, 20.0),
                                 random_payoff(rng, inst.space.size(), -10.0, 10.0));
            const double weight = rng.uniform(0.0, 1.0);
            std::vector<double> mixed(inst.space.size());
            for (std::size_t i = 0; i < mixed.size(); ++i) {
                mixed[i] = weight * inst.position.payoff()[i] + (1.0 - weight) * other.payoff()[i];
            }
            const Position combination(
                weight * inst.position.initial_value() + (1.0 - weight) * other.initial_value(),
                Payoff(std::move(mixed)));
            const double r_x = intrinsic_risk(inst.set, inst.asset, inst.position).value;
            const double r_y = intrinsic_risk(inst.set, inst.asset, other).value;
            const double r_mix = intrinsic_risk(inst.set, inst.asset, combination).value;
            const double bound = std::max(r_x, r_y);
            check.record(r_mix <= bound + tolerance, r_mix - bound);
        }
        results.push_back({"quasiconvexity-positions", check.trials, check.violations,
                           check.worst});
    }

    // Quasi-convexity in assets (convex sets, same-priced assets).
    {
        Rng rng(seed ^ 0x08);
        Check check;
        for (int t = 0; t < trials_per_property; ++t) {
            const Instance inst = random_instance(rng, cycle_family(kConvex, t));
            const double price = inst.asset.initial_price();
            const EligibleAsset second(price, random_payoff(rng, inst.space.size(), 0.2, 3.0));
            const double weight = rng.uniform(0.0, 1.0);
            std::vector<double> mixed(inst.space.size());
            for (std::size_t i = 0; i < mixed.size(); ++i) {
                mixed[i] =
                    weight * inst.asset.payoff()[i] + (1.0 - weight) * second.payoff()[i];
            }
            const EligibleAsset combination(price, Payoff(std::move(mixed)));
            const double r_1 = intrinsic_risk(inst.set, inst.asset, inst.position).value;
            const double r_2 = intrinsic_risk(inst.set, second, inst.position).value;
            const double r_mix = intrinsic_risk(inst.set, combination, inst.position).value;
            const double bound = std::max(r_1, r_2);
            check.record(r_mix <= bound + tolerance, r_mix - bound);
        }
        results.push_back({"quasiconvexity-assets", check.trials, check.violations, check.worst});
    }

    // Scale invariance on cones.
    {
        Rng rng(seed ^ 0x09);
        Check check;
        constexpr double kFactors[] = {0.1, 3.0, 100.0};
        for (int t = 0; t < trials_per_property; ++t) {
            const Instance inst = random_instance(rng, cycle_family(kConic, t));
            const double r = intrinsic_risk(inst.set, inst.asset, inst.position).value;
            bool ok = true;
            double gap = 0.0;
            for (double factor : kFactors) {
                const Position scaled(factor * inst.position.initial_value(),
                                      inst.position.payoff().scaled(factor));
                const double r_scaled = intrinsic_risk(inst.set, inst.asset, scaled).value;
                gap = std::max(gap, std::abs(r_scaled - r));
                if (std::abs(r_scaled - r) > tolerance) ok = false;
            }
            check.record(ok, gap);
        }
        results.push_back({"scale-invariance", check.trials, check.violations, check.worst});
    }

    // S-additivity of the traditional measure.
    {
        Rng rng(seed ^ 0x0a);
        Check check;
        constexpr double kUnits[] = {-1.0, 0.5, 2.0};
        for (int t = 0; t < trials_per_property; ++t) {
            const Instance inst = random_instance(rng, cycle_family(kAll, t));
            const MonetaryRisk rho = monetary_risk(inst.set, inst.asset, inst.position.payoff());
            bool ok = rho.finite;
            double gap = 0.0;
            for (double k : kUnits) {
                if (!ok) break;
                std::vector<double> shifted(inst.space.size());
                for (std::size_t i = 0; i < shifted.size(); ++i) {
                    shifted[i] = inst.position.payoff()[i] + k * inst.asset.payoff()[i];
                }
                const MonetaryRisk rho_shifted =
                    monetary_risk(inst.set, inst.asset, Payoff(std::move(shifted)));
                const double expected = rho.value - k * inst.asset.initial_price();
                gap = std::max(gap, std::abs(rho_shifted.value - expected));
                if (!rho_shifted.finite ||
                    std::abs(rho_shifted.value - expected) > tolerance * rho.scale) {
                    ok = false;
                }
            }
            check.record(ok, gap);
        }
        results.push_back({"s-additivity", check.trials, check.violations, check.worst});
    }

    // Positive homogeneity of the traditional measure on cones.
    {
        Rng rng(seed ^ 0x0b);
        Check check;
        constexpr double kFactors[] = {0.5, 2.0, 10.0};
        for (int t = 0; t < trials_per_property; ++t) {
            const Instance inst = random_instance(rng, cycle_family(kConic, t));
            const MonetaryRisk rho = monetary_risk(inst.set, inst.asset, inst.position.payoff());
            bool ok = rho.finite;
            double gap = 0.0;
            for (double factor : kFactors) {
                if (!ok) break;
                const MonetaryRisk rho_scaled = monetary_risk(
                    inst.set, inst.asset, inst.position.payoff().scaled(factor));
                const double expected = factor * rho.value;
                const double scale = std::max(1.0, factor) * rho.scale;
                gap = std::max(gap, std::abs(rho_scaled.value - expected));
                if (!rho_scaled.finite || std::abs(rho_scaled.value - expected) > tolerance * scale) {
                    ok = false;
                }
            }
            check.record(ok, gap);
        }
        results.push_back({"positive-homogeneity", check.trials, check.violations, check.worst});
    }

    return results;
}

}  // namespace intrisk::props

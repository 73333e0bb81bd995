#include <doctest.h>

#include <cmath>
#include <random>

#include "intrisk/acceptance.hpp"
#include "intrisk/monetary.hpp"
#include "oracles.hpp"

using namespace intrisk;

namespace {

Payoff random_payoff(std::mt19937_64& engine, std::size_t n, double lo = -10.0,
                     double hi = 10.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> values(n);
    for (double& v : values) v = dist(engine);
    return Payoff(std::move(values));
}

double mass_at_or_below(const ScenarioSpace& space, const Payoff& payoff, double threshold) {
    double sum = 0.0;
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (payoff[i] <= threshold) sum += space.probability(i);
    }
    return sum;
}

}  // namespace

TEST_CASE("set constructors enforce level domains and declare flags") {
    const ScenarioSpace space = ScenarioSpace::uniform(4);

    CHECK_THROWS_AS(AcceptanceSet::value_at_risk(space, 0.5), DomainError);
    CHECK_THROWS_AS(AcceptanceSet::value_at_risk(space, 0.0), DomainError);
    CHECK_THROWS_AS(AcceptanceSet::expected_shortfall(space, 1.0), DomainError);

    const AcceptanceSet var = AcceptanceSet::value_at_risk(space, 0.25);
    CHECK(var.flags().monotone);
    CHECK(var.flags().conic);
    CHECK_FALSE(var.flags().convex);
    CHECK(var.flags().closed);
    CHECK(var.flags().contains_zero);

    const AcceptanceSet es = AcceptanceSet::expected_shortfall(space, 0.5);
    CHECK(es.flags().conic);
    CHECK(es.flags().convex);

    const DualMeasure q(space, {0.5, 0.5, 0.0, 0.0});
    const AcceptanceSet half_space = AcceptanceSet::generator_convex(space, {q}, {-1.0});
    CHECK(half_space.flags().convex);
    CHECK_FALSE(half_space.flags().conic);
    CHECK(half_space.flags().contains_zero);

    const AcceptanceSet cone = AcceptanceSet::generator_convex(space, {q}, {0.0});
    CHECK(cone.flags().conic);

    const AcceptanceSet sized = AcceptanceSet::generator_convex(space, {q}, {0.5});
    CHECK_FALSE(sized.flags().contains_zero);
}

TEST_CASE("dual measures must be probabilities absolutely continuous in the base") {
    const ScenarioSpace space({0.5, 0.5, 0.0});
    CHECK_THROWS_AS(DualMeasure(space, {0.7, 0.4, 0.0}), StructuralError);   // sums to 1.1
    CHECK_THROWS_AS(DualMeasure(space, {-0.1, 1.1, 0.0}), StructuralError);  // negative
    CHECK_THROWS_AS(DualMeasure(space, {0.5, 0.3, 0.2}), StructuralError);   // mass on null set
    CHECK_NOTHROW(DualMeasure(space, {0.3, 0.7, 0.0}));
}

TEST_CASE("value-at-risk membership counts strictly negative mass") {
    const ScenarioSpace space = ScenarioSpace::uniform(4);
    const AcceptanceSet var = AcceptanceSet::value_at_risk(space, 0.25);

    CHECK_FALSE(is_acceptable(var, Payoff{{-10.0, -2.0, 1.0, 5.0}}));  // half the mass below zero
    CHECK(is_acceptable(var, Payoff{{-8.0, 0.0, 3.0, 7.0}}));          // exactly one loss scenario
    CHECK(is_acceptable(var, Payoff::constant(4, 1e9)));
    CHECK_FALSE(is_acceptable(var, Payoff::constant(4, -1e9)));
    CHECK_THROWS_AS(is_acceptable(var, Payoff{{1.0, 2.0}}), StructuralError);
}

TEST_CASE("expected shortfall matches the variational oracle") {
    const ScenarioSpace space = ScenarioSpace::uniform(4);
    const Payoff payoff{{-10.0, -2.0, 1.0, 5.0}};

    CHECK(expected_shortfall(space, payoff, 0.5) == doctest::Approx(6.0));
    CHECK(expected_shortfall(space, payoff, 0.5) ==
          doctest::Approx(oracles::es_variational(space, payoff, 0.5)));

    std::mt19937_64 engine(31);
    std::uniform_real_distribution<double> level(0.05, 0.95);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + trial % 10;
        const ScenarioSpace random_space = ScenarioSpace::uniform(n);
        const Payoff x = random_payoff(engine, n);
        const double alpha = level(engine);
        CHECK(std::abs(expected_shortfall(random_space, x, alpha) -
                       oracles::es_variational(random_space, x, alpha)) <= 1e-10);
    }

    // Zero-weight scenarios never enter the tail, however extreme.
    const ScenarioSpace padded({0.25, 0.25, 0.25, 0.25, 0.0});
    CHECK(expected_shortfall(padded, Payoff{{-10.0, -2.0, 1.0, 5.0, -999.0}}, 0.5) ==
          doctest::Approx(6.0));
}

TEST_CASE("expected shortfall membership agrees with its statistic") {
    const ScenarioSpace space = ScenarioSpace::uniform(4);
    const AcceptanceSet es = AcceptanceSet::expected_shortfall(space, 0.5);

    std::mt19937_64 engine(77);
    for (int trial = 0; trial < 300; ++trial) {
        const Payoff x = random_payoff(engine, 4);
        const double statistic = expected_shortfall(space, x, 0.5);
        if (std::abs(statistic) <= 1e-9) continue;  // boundary band
        CHECK(is_acceptable(es, x) == (statistic < 0.0));
    }
}

TEST_CASE("interior test returns explicit certificates") {
    const ScenarioSpace space = ScenarioSpace::uniform(4);
    const AcceptanceSet var = AcceptanceSet::value_at_risk(space, 0.25);

    SUBCASE("positive constants are interior") {
        const auto cert = interior_certificate(var, Payoff::constant(4, 0.7));
        REQUIRE(cert.has_value());
        CHECK(is_acceptable(var, Payoff::constant(4, 0.7).shifted(-*cert)));
    }

    SUBCASE("zero-value mass above the level blocks interiority") {
        // Acceptable, but every uniform downward shift pushes half the mass
        // strictly negative.
        const Payoff flat_floor{{0.0, 0.0, 1.0, 2.0}};
        CHECK(is_acceptable(var, flat_floor));
        CHECK_FALSE(is_interior(var, flat_floor));
    }

    SUBCASE("zero payoff is never interior in a cone") {
        CHECK_FALSE(is_interior(var, Payoff::constant(4, 0.0)));
    }

    SUBCASE("random payoffs match the closed-form characterisation") {
        std::mt19937_64 engine(13);
        for (int trial = 0; trial < 300; ++trial) {
            const Payoff x = random_payoff(engine, 4, -2.0, 2.0);
            const double at_or_below = mass_at_or_below(space, x, 0.0);
            const double min_abs_nonzero = [&] {
                double m = 1.0;
                for (double v : x.values()) {
                    if (v != 0.0) m = std::min(m, std::abs(v));
                }
                return m;
            }();
            if (min_abs_nonzero < 1e-9) continue;  // below the search resolution
            CHECK(is_interior(var, x) == (at_or_below <= 0.25 + 1e-12));
        }
    }
}

TEST_CASE("acceptance_from_risk wraps functionals faithfully") {
    const ScenarioSpace space = ScenarioSpace::uniform(4);

    SUBCASE("value-at-risk functional reproduces the probability set") {
        const AcceptanceSet direct = AcceptanceSet::value_at_risk(space, 0.25);
        const AcceptanceSet wrapped = acceptance_from_risk(
            space, [&](const Payoff& x) { return value_at_risk(space, x, 0.25); },
            RiskTraits{.positively_homogeneous = true, .convex = false, .closed = true});
        CHECK(wrapped.flags().conic);
        CHECK_FALSE(wrapped.flags().convex);

        std::mt19937_64 engine(5);
        for (int trial = 0; trial < 1000; ++trial) {
            const Payoff x = random_payoff(engine, 4);
            CHECK(is_acceptable(direct, x) == is_acceptable(wrapped, x));
        }
    }

    SUBCASE("constant positive risk violates non-triviality") {
        CHECK_THROWS_AS(acceptance_from_risk(
                            space, [](const Payoff&) { return 1.0; }, RiskTraits{}),
                        StructuralError);
    }

    SUBCASE("negative expectation induces the expectation half-space") {
        const AcceptanceSet half_space = acceptance_from_risk(
            space, [&](const Payoff& x) { return -expectation(space, x); },
            RiskTraits{.positively_homogeneous = true, .convex = true, .closed = true});
        std::mt19937_64 engine(6);
        for (int trial = 0; trial < 300; ++trial) {
            const Payoff x = random_payoff(engine, 4);
            const double mean = oracles::direct_expectation(space, x);
            if (std::abs(mean) <= 1e-9) continue;
            CHECK(is_acceptable(half_space, x) == (mean > 0.0));
        }
    }
}

TEST_CASE("declared flags are honest on random payoffs") {
    const ScenarioSpace space = ScenarioSpace::uniform(4);
    const AcceptanceSet var = AcceptanceSet::value_at_risk(space, 0.25);
    const AcceptanceSet es = AcceptanceSet::expected_shortfall(space, 0.3);
    const DualMeasure q1(space, {0.4, 0.3, 0.2, 0.1});
    const DualMeasure q2(space, {0.1, 0.2, 0.3, 0.4});
    const AcceptanceSet generator =
        AcceptanceSet::generator_convex(space, {q1, q2}, {-0.5, -0.25});
    const AcceptanceSet* sets[] = {&var, &es, &generator};

    std::mt19937_64 engine(17);

    SUBCASE("monotonicity: adding a nonnegative payoff preserves acceptance") {
        for (int trial = 0; trial < 1000; ++trial) {
            const AcceptanceSet& set = *sets[trial % 3];
            const Payoff base = random_payoff(engine, 4);
            if (!is_acceptable(set, base)) continue;
            const Payoff bonus = random_payoff(engine, 4, 0.0, 5.0);
            std::vector<double> lifted(4);
            for (std::size_t i = 0; i < 4; ++i) lifted[i] = base[i] + bonus[i];
            CHECK(is_acceptable(set, Payoff(lifted)));
        }
    }

    SUBCASE("conic flag: scaling preserves value-at-risk acceptance exactly") {
        for (int trial = 0; trial < 500; ++trial) {
            const Payoff base = random_payoff(engine, 4);
            const bool in = is_acceptable(var, base);
            for (double factor : {0.1, 1.0, 10.0}) {
                CHECK(is_acceptable(var, base.scaled(factor)) == in);
            }
        }
    }

    SUBCASE("convex flag: combinations of acceptable payoffs stay acceptable") {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int trial = 0; trial < 1000; ++trial) {
            const AcceptanceSet& set = trial % 2 == 0 ? es : generator;
            const Payoff a = random_payoff(engine, 4);
            const Payoff b = random_payoff(engine, 4);
            if (!is_acceptable(set, a) || !is_acceptable(set, b)) continue;
            const double w = unit(engine);
            std::vector<double> combined(4);
            for (std::size_t i = 0; i < 4; ++i) combined[i] = w * a[i] + (1.0 - w) * b[i];
            CHECK(is_acceptable(set, Payoff(combined)));
        }
    }

    SUBCASE("value-at-risk is not convex: disjoint indicator losses") {
        const Payoff loss_a{{-1.0, 0.0, 0.0, 0.0}};
        const Payoff loss_b{{0.0, -1.0, 0.0, 0.0}};
        CHECK(is_acceptable(var, loss_a));
        CHECK(is_acceptable(var, loss_b));
        std::vector<double> half_sum(4);
        for (std::size_t i = 0; i < 4; ++i) half_sum[i] = 0.5 * (loss_a[i] + loss_b[i]);
        CHECK_FALSE(is_acceptable(var, Payoff(half_sum)));
    }
}

TEST_CASE("risk-to-set correspondence holds for both named measures") {
    const ScenarioSpace space = ScenarioSpace::uniform(8);
    std::mt19937_64 engine(23);

    const AcceptanceSet var = AcceptanceSet::value_at_risk(space, 0.25);
    const AcceptanceSet var_wrapped = acceptance_from_risk(
        space, [&](const Payoff& x) { return value_at_risk(space, x, 0.25); },
        RiskTraits{.positively_homogeneous = true, .convex = false, .closed = true});
    const AcceptanceSet es = AcceptanceSet::expected_shortfall(space, 0.3);
    const AcceptanceSet es_wrapped = acceptance_from_risk(
        space, [&](const Payoff& x) { return expected_shortfall(space, x, 0.3); },
        RiskTraits{.positively_homogeneous = true, .convex = true, .closed = true});

    for (int trial = 0; trial < 1000; ++trial) {
        const Payoff x = random_payoff(engine, 8);
        CHECK(is_acceptable(var, x) == is_acceptable(var_wrapped, x));
        CHECK(is_acceptable(es, x) == is_acceptable(es_wrapped, x));
    }
}

TEST_CASE("expectation under a dual measure") {
    const ScenarioSpace space = ScenarioSpace::uniform(4);
    const DualMeasure q(space, {0.5, 0.5, 0.0, 0.0});
    CHECK(expectation(space, Payoff{{-10.0, -2.0, 1.0, 5.0}}, q) == doctest::Approx(-6.0));
    CHECK_THROWS_AS(expectation(space, Payoff{{1.0, 2.0}}, q), StructuralError);
}

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

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

}  // namespace

TEST_CASE("value_at_risk is the negative upper quantile") {
    const ScenarioSpace uniform4 = ScenarioSpace::uniform(4);
    const Payoff demo{{-10.0, -2.0, 1.0, 5.0}};

    CHECK(value_at_risk(uniform4, demo, 0.25) == doctest::Approx(2.0));
    CHECK(value_at_risk(uniform4, demo, 0.25) ==
          doctest::Approx(oracles::var_breakpoint_scan(uniform4, demo, 0.25)));

    // No losses: the measure cannot be positive.
    CHECK(value_at_risk(uniform4, Payoff{{0.0, 1.0, 2.0, 3.0}}, 0.25) <= 0.0);

    // Degenerate distribution.
    CHECK(value_at_risk(uniform4, Payoff::constant(4, -7.5), 0.25) == doctest::Approx(7.5));
    CHECK(value_at_risk(uniform4, Payoff::constant(4, -7.5), 0.45) == doctest::Approx(7.5));

    CHECK_THROWS_AS(value_at_risk(uniform4, demo, 0.5), DomainError);
    CHECK_THROWS_AS(value_at_risk(uniform4, demo, -0.1), DomainError);

    // Mass exactly at the level resolves toward the larger value.
    const ScenarioSpace skewed({0.25, 0.75});
    CHECK(value_at_risk(skewed, Payoff{{-5.0, 3.0}}, 0.25) == doctest::Approx(-3.0));

    // Zero-weight scenarios never move the quantile.
    const ScenarioSpace padded({0.25, 0.25, 0.25, 0.25, 0.0});
    CHECK(value_at_risk(padded, Payoff{{-10.0, -2.0, 1.0, 5.0, -999.0}}, 0.25) ==
          doctest::Approx(2.0));
}

TEST_CASE("value_at_risk agrees with the breakpoint scan on random instances") {
    std::mt19937_64 engine(41);
    std::uniform_real_distribution<double> level(0.05, 0.45);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + trial % 11;
        std::vector<double> weights(n);
        double total = 0.0;
        for (double& w : weights) {
            w = 0.05 + std::abs(std::uniform_real_distribution<double>(0.0, 1.0)(engine));
            total += w;
        }
        for (double& w : weights) w /= total;
        const ScenarioSpace space(weights);
        const Payoff x = random_payoff(engine, n);
        const double alpha = level(engine);
        CHECK(value_at_risk(space, x, alpha) ==
              doctest::Approx(oracles::var_breakpoint_scan(space, x, alpha)).epsilon(1e-12));
    }
}

TEST_CASE("monetary risk by bracketing matches the closed forms") {
    const oracles::DemoInstance demo;
    const AcceptanceSet var = AcceptanceSet::value_at_risk(demo.space, 0.25);
    const AcceptanceSet es = AcceptanceSet::expected_shortfall(demo.space, 0.5);

    SUBCASE("value-at-risk instance") {
        const MonetaryRisk rho = monetary_risk(var, demo.asset, demo.position.payoff());
        REQUIRE(rho.finite);
        CHECK(std::abs(rho.value - 2.0) <= 1e-9);
        CHECK(rho.bracket_hi - rho.bracket_lo <= 1e-9 * rho.scale);
    }

    SUBCASE("acceptable payoff has nonpositive risk") {
        const MonetaryRisk rho = monetary_risk(var, demo.asset, Payoff{{-8.0, 0.0, 3.0, 7.0}});
        REQUIRE(rho.finite);
        CHECK(rho.value <= 1e-9);
    }

    SUBCASE("expected-shortfall instance reproduces the tail average") {
        const MonetaryRisk rho = monetary_risk(es, demo.asset, demo.position.payoff());
        REQUIRE(rho.finite);
        CHECK(std::abs(rho.value - 6.0) <= 1e-8);
        CHECK(std::abs(rho.value -
                       oracles::es_variational(demo.space, demo.position.payoff(), 0.5)) <= 1e-8);
    }

    SUBCASE("unacceptable asset payoff is rejected") {
        const DualMeasure q(demo.space, {0.25, 0.25, 0.25, 0.25});
        const AcceptanceSet sized =
            AcceptanceSet::generator_convex(demo.space, {q}, {0.5});
        const EligibleAsset small(1.0, Payoff::constant(4, 0.1));  // E[S_T] = 0.1 < 0.5
        CHECK_THROWS_AS(monetary_risk(sized, small, demo.position.payoff()),
                        PreconditionError);
    }
}

TEST_CASE("monetary risk agrees with value_at_risk under scaled riskless assets") {
    std::mt19937_64 engine(59);
    std::uniform_real_distribution<double> level(0.05, 0.45);
    std::uniform_real_distribution<double> rate(0.5, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 3 + trial % 9;
        const ScenarioSpace space = ScenarioSpace::uniform(n);
        const double alpha = level(engine);
        const AcceptanceSet var = AcceptanceSet::value_at_risk(space, alpha);
        const double s0 = rate(engine);
        const double r = rate(engine);
        const EligibleAsset asset(s0, Payoff::constant(n, r * s0));
        const Payoff x = random_payoff(engine, n);
        const MonetaryRisk rho = monetary_risk(var, asset, x);
        REQUIRE(rho.finite);
        CHECK(std::abs(rho.value - value_at_risk(space, x, alpha) / r) <= 1e-9 * rho.scale);
    }
}

TEST_CASE("infinite verdicts carry their witnesses") {
    const ScenarioSpace space = ScenarioSpace::uniform(4);
    const AcceptanceSet var = AcceptanceSet::value_at_risk(space, 0.25);

    SUBCASE("boundary asset cannot rescue a constant loss") {
        const EligibleAsset boundary(1.0, Payoff{{1.0, 1.0, 0.0, 0.0}});
        const MonetaryRisk rho = monetary_risk(var, boundary, Payoff::constant(4, -3.0));
        CHECK_FALSE(rho.finite);
        CHECK(rho.value == std::numeric_limits<double>::infinity());
        CHECK_FALSE(rho.asset_interior);
        CHECK(rho.expansion_limit > 1e15);
    }

    SUBCASE("thin-support asset leaves riskless payoffs infinitely acceptable") {
        const EligibleAsset thin(1.0, Payoff{{0.0, 0.0, 0.0, 1.0}});
        const MonetaryRisk rho = monetary_risk(var, thin, Payoff::constant(4, 1.0));
        CHECK_FALSE(rho.finite);
        CHECK(rho.value == -std::numeric_limits<double>::infinity());
    }
}

TEST_CASE("monetary_from_intrinsic inverts the conic representation") {
    const Position x(10.0, Payoff{{-10.0, -2.0, 1.0, 5.0}});
    CHECK(monetary_from_intrinsic(x, 1.0 / 6.0) == doctest::Approx(2.0));
    CHECK(monetary_from_intrinsic(x, 0.0) == 0.0);
    CHECK(monetary_from_intrinsic(Position(1.0, Payoff{{1.0}}), 0.5) == doctest::Approx(1.0));
    CHECK(monetary_from_intrinsic(x, 1.0) == std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(monetary_from_intrinsic(x, 1.2), DomainError);
    CHECK_THROWS_AS(monetary_from_intrinsic(x, -0.1), DomainError);
}

TEST_CASE("S-additivity and positive homogeneity on random instances") {
    std::mt19937_64 engine(67);
    std::uniform_real_distribution<double> level(0.05, 0.45);
    std::uniform_real_distribution<double> price(0.5, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 3 + trial % 9;
        const ScenarioSpace space = ScenarioSpace::uniform(n);
        const AcceptanceSet set =
            trial % 2 == 0 ? AcceptanceSet::value_at_risk(space, level(engine))
                           : AcceptanceSet::expected_shortfall(space, level(engine));
        const EligibleAsset asset(price(engine), random_payoff(engine, n, 0.2, 3.0));
        const Payoff x = random_payoff(engine, n);
        const MonetaryRisk rho = monetary_risk(set, asset, x);
        REQUIRE(rho.finite);

        for (double k : {-1.0, 0.5, 2.0}) {
            std::vector<double> shifted(n);
            for (std::size_t i = 0; i < n; ++i) shifted[i] = x[i] + k * asset.payoff()[i];
            const MonetaryRisk rho_shifted = monetary_risk(set, asset, Payoff(shifted));
            REQUIRE(rho_shifted.finite);
            CHECK(std::abs(rho_shifted.value - (rho.value - k * asset.initial_price())) <=
                  1e-8 * rho.scale);
        }

        for (double factor : {0.5, 2.0, 10.0}) {
            const MonetaryRisk rho_scaled = monetary_risk(set, asset, x.scaled(factor));
            REQUIRE(rho_scaled.finite);
            CHECK(std::abs(rho_scaled.value - factor * rho.value) <=
                  1e-8 * std::max(1.0, factor) * rho.scale);
        }
    }
}

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "intrisk/acceptance.hpp"
#include "intrisk/scenario.hpp"

namespace intrisk::props {

/// Deterministic generator for random desk-scale instances.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi);
    int uniform_int(int lo, int hi);
    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
};

enum class SetFamily { var, es, generator };

struct InstanceOptions {
    int min_scenarios = 4;
    int max_scenarios = 12;
    /// Force the position payoff to be unacceptable under the generated set.
    bool force_unacceptable = false;
};

/// One random instance: space, set, interior eligible asset, position.
struct Instance {
    ScenarioSpace space;
    AcceptanceSet set;
    EligibleAsset asset;
    Position position;
};

Instance random_instance(Rng& rng, SetFamily family, const InstanceOptions& options = {});

struct PropertyResult {
    std::string name;
    int trials = 0;
    int violations = 0;
    /// Largest violation magnitude observed (0 when the property held).
    double worst_gap = 0.0;
};

/// Run the structural invariant suite on seeded random instances: relevance,
/// boundary, up-set, the interior linkage, both monotonicity orders,
/// quasi-convexity in positions and in assets, scale invariance, S-additivity
/// and positive homogeneity. Deterministic under a fixed seed.
std::vector<PropertyResult> run_property_suite(std::uint64_t seed, int trials_per_property,
                                               double tolerance);

}  // namespace intrisk::props

#include "intrisk/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace intrisk {
namespace {

// Neumaier-compensated accumulator; keeps probability-scale sums exact to the
// last bit even for adversarial orderings.
class CompensatedSum {
public:
    void add(double term) {
        const double t = sum_ + term;
        if (std::abs(sum_) >= std::abs(term)) {
            compensation_ += (sum_ - t) + term;
        } else {
            compensation_ += (term - t) + sum_;
        }
        sum_ = t;
    }

    double result() const { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

void require_same_dimension(std::size_t space_n, std::size_t payoff_n, const char* what) {
    if (space_n != payoff_n) {
        throw StructuralError(std::string(what) + ": dimension mismatch (" +
                              std::to_string(space_n) + " vs " + std::to_string(payoff_n) + ")");
    }
}

}  // namespace

ScenarioSpace::ScenarioSpace(std::vector<double> probabilities)
    : probabilities_(std::move(probabilities)) {
    if (probabilities_.empty()) {
        throw StructuralError("scenario space needs at least one scenario");
    }
    for (double p : probabilities_) {
        if (!std::isfinite(p)) {
            throw StructuralError("scenario probabilities must be finite");
        }
        if (p < 0.0) {
            throw StructuralError("scenario probabilities must be nonnegative");
        }
    }
    CompensatedSum total;
    for (double p : probabilities_) total.add(p);
    const double sum = total.result();
    if (std::abs(sum - 1.0) > 1e-12) {
        throw StructuralError("scenario probabilities must sum to one within 1e-12 (got " +
                              std::to_string(sum) + ")");
    }
    for (double& p : probabilities_) p /= sum;
    has_zero_weight_ = std::any_of(probabilities_.begin(), probabilities_.end(),
                                   [](double p) { return p == 0.0; });
}

ScenarioSpace ScenarioSpace::uniform(std::size_t scenario_count) {
    if (scenario_count == 0) {
        throw StructuralError("scenario space needs at least one scenario");
    }
    return ScenarioSpace(std::vector<double>(scenario_count, 1.0 / double(scenario_count)));
}

Payoff::Payoff(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw StructuralError("payoff needs at least one scenario value");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw StructuralError("payoff values must be finite");
        }
    }
}

Payoff Payoff::constant(std::size_t scenario_count, double value) {
    return Payoff(std::vector<double>(scenario_count, value));
}

bool Payoff::nonnegative() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0.0; });
}

double Payoff::max_abs() const noexcept {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

Payoff Payoff::shifted(double shift) const {
    std::vector<double> out(values_);
    for (double& v : out) v += shift;
    return Payoff(std::move(out));
}

Payoff Payoff::scaled(double factor) const {
    std::vector<double> out(values_);
    for (double& v : out) v *= factor;
    return Payoff(std::move(out));
}

Position::Position(double initial_value, Payoff payoff)
    : initial_value_(initial_value), payoff_(std::move(payoff)) {
    if (!(initial_value_ > 0.0) || !std::isfinite(initial_value_)) {
        throw StructuralError("position initial value must be strictly positive");
    }
}

EligibleAsset::EligibleAsset(double initial_price, Payoff payoff)
    : initial_price_(initial_price), payoff_(std::move(payoff)) {
    if (!(initial_price_ > 0.0) || !std::isfinite(initial_price_)) {
        throw StructuralError("eligible asset price must be strictly positive");
    }
    if (!payoff_.nonnegative()) {
        throw StructuralError("eligible asset payoff must be nonnegative in every scenario");
    }
}

double expectation(const ScenarioSpace& space, const Payoff& payoff) {
    require_same_dimension(space.size(), payoff.size(), "expectation");
    return expectation_under(space.probabilities(), payoff);
}

double expectation_under(std::span<const double> weights, const Payoff& payoff) {
    require_same_dimension(weights.size(), payoff.size(), "expectation");
    CompensatedSum acc;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc.add(weights[i] * payoff[i]);
    }
    return acc.result();
}

double probability_below(const ScenarioSpace& space, const Payoff& payoff, double threshold) {
    require_same_dimension(space.size(), payoff.size(), "probability_below");
    CompensatedSum acc;
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (payoff[i] < threshold) acc.add(space.probability(i));
    }
    return acc.result();
}

Position mix(const Position& x, const EligibleAsset& s, double lambda) {
    require_same_dimension(x.payoff().size(), s.payoff().size(), "mix");
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw DomainError("mix fraction must lie in [0, 1] (got " + std::to_string(lambda) + ")");
    }
    const double units = x.initial_value() / s.initial_price();
    std::vector<double> out(x.payoff().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = (1.0 - lambda) * x.payoff()[i] + lambda * (units * s.payoff()[i]);
    }
    return Position(x.initial_value(), Payoff(std::move(out)));
}

std::vector<double> attainable_probability_levels(const ScenarioSpace& space) {
    if (space.size() > 20) {
        throw SizeError("attainable_probability_levels enumerates scenario subsets; "
                        "supported only for N <= 20");
    }
    std::vector<double> levels{0.0};
    levels.reserve(std::size_t{1} << space.size());
    for (double p : space.probabilities()) {
        const std::size_t n = levels.size();
        for (std::size_t i = 0; i < n; ++i) {
            levels.push_back(levels[i] + p);
        }
    }
    std::sort(levels.begin(), levels.end());
    std::vector<double> unique;
    unique.reserve(levels.size());
    for (double v : levels) {
        if (unique.empty() || v - unique.back() > 1e-12) unique.push_back(v);
    }
    return unique;
}

}  // namespace intrisk

#include "tbell/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tbell {

DynamicsParams::DynamicsParams(double omega) : omega_(omega) {
    if (!std::isfinite(omega) || omega <= 0.0) {
        throw std::invalid_argument("omega must be finite and positive");
    }
}

double DynamicsParams::period() const { return 2.0 * std::numbers::pi / omega_; }

Propagator::Propagator(double dt, const DynamicsParams& params)
    : cos_(std::cos(params.omega() * dt)), sin_(std::sin(params.omega() * dt)) {}

TwoLevelState initial_state(InitialPhase phase, double t0, const DynamicsParams& params) {
    const double angle = params.omega() * (t0 - phase.t_prime);
    return {{std::cos(angle), 0.0}, {std::sin(angle), 0.0}};
}

TwoLevelState propagate(const TwoLevelState& state, double dt, const DynamicsParams& params) {
    return Propagator(dt, params)(state);
}

double expectation_q(const TwoLevelState& state) {
    const double norm = state.norm_squared();
    if (norm == 0.0) {
        throw std::domain_error("degenerate state");
    }
    return (abs_squared(state.c_plus) - abs_squared(state.c_minus)) / norm;
}

Trajectory measured_trajectory(InitialPhase phase, std::span<const double> times,
                               std::span<const Outcome> outcomes, const DynamicsParams& params) {
    if (times.empty()) {
        throw std::invalid_argument("at least one measurement time is required");
    }
    if (times.size() != outcomes.size()) {
        throw std::invalid_argument("outcome count mismatch");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
            throw std::invalid_argument("times not ascending");
        }
    }

    Trajectory out;
    out.records.reserve(times.size());
    TwoLevelState state = TwoLevelState::plus();
    double now = phase.t_prime;
    for (std::size_t i = 0; i < times.size(); ++i) {
        state = propagate(state, times[i] - now, params);
        now = times[i];
        const double p = state.norm_squared() == 0.0 ? 0.0 : born_probability(state, outcomes[i]);
        out.records.push_back({times[i], outcomes[i], p, 1.0 - p});
        state = collapse(state, outcomes[i]);
    }
    out.final_state = state;
    return out;
}

}  // namespace tbell

// dynamics.hpp - two-level kernel: Rabi propagation, projective collapse and
// the sequential-measurement recursion.
#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace tbell {

// Tolerance for the closed-form kernel identities.
inline constexpr double kKernelTolerance = 1e-12;

// Dichotomic outcome of an occupation measurement: Q = P+ - P-.
enum class Outcome : int { plus = 1, minus = -1 };

constexpr int value(Outcome q) { return static_cast<int>(q); }
constexpr Outcome opposite(Outcome q) { return q == Outcome::plus ? Outcome::minus : Outcome::plus; }
inline constexpr Outcome kOutcomes[] = {Outcome::plus, Outcome::minus};

// |z|^2 without the hypot call libstdc++ makes in std::norm.
constexpr double abs_squared(std::complex<double> z) { return z.real() * z.real() + z.imag() * z.imag(); }

// Amplitudes on the {|+>, |->} basis. Collapsed states are kept unnormalized,
// so the squared norm doubles as the probability of the recorded history.
struct TwoLevelState {
    std::complex<double> c_plus{1.0, 0.0};
    std::complex<double> c_minus{0.0, 0.0};

    static TwoLevelState plus() { return {{1.0, 0.0}, {0.0, 0.0}}; }
    static TwoLevelState minus() { return {{0.0, 0.0}, {1.0, 0.0}}; }
    static TwoLevelState zero() { return {{0.0, 0.0}, {0.0, 0.0}}; }

    double norm_squared() const { return abs_squared(c_plus) + abs_squared(c_minus); }
    double weight(Outcome q) const { return q == Outcome::plus ? abs_squared(c_plus) : abs_squared(c_minus); }

    bool operator==(const TwoLevelState&) const = default;
};

class DynamicsParams {
public:
    // Throws std::invalid_argument unless omega is finite and positive.
    explicit DynamicsParams(double omega);

    double omega() const { return omega_; }
    // Period of the amplitudes (the observable Q repeats after half of it).
    double period() const;

private:
    double omega_;
};

// t' : an instant at which the system was in |+>.
struct InitialPhase {
    double t_prime{0.0};
};

struct MeasurementRecord {
    double time{0.0};
    Outcome outcome{Outcome::plus};
    double pre_probability{0.0};
    double disturbance{1.0};
};

struct Trajectory {
    std::vector<MeasurementRecord> records;
    TwoLevelState final_state;
};

// Real rotation U(dt) = [[cos w dt, -sin w dt], [sin w dt, cos w dt]] with the
// trig factors evaluated once, for repeated application over a phase grid.
class Propagator {
public:
    Propagator(double dt, const DynamicsParams& params);

    TwoLevelState operator()(const TwoLevelState& s) const {
        return {cos_ * s.c_plus - sin_ * s.c_minus, sin_ * s.c_plus + cos_ * s.c_minus};
    }

private:
    double cos_;
    double sin_;
};

TwoLevelState initial_state(InitialPhase phase, double t0, const DynamicsParams& params);

TwoLevelState propagate(const TwoLevelState& state, double dt, const DynamicsParams& params);

// (|c+|^2 - |c-|^2) / (|c+|^2 + |c-|^2). Throws std::domain_error("degenerate state")
// on the zero state.
double expectation_q(const TwoLevelState& state);

// <psi|P_q|psi> / <psi|psi>. Throws std::domain_error("degenerate state") on the zero state.
inline double born_probability(const TwoLevelState& state, Outcome outcome) {
    const double norm = state.norm_squared();
    if (norm == 0.0) {
        throw std::domain_error("degenerate state");
    }
    return state.weight(outcome) / norm;
}

// P_q |psi>, left unnormalized.
inline TwoLevelState collapse(const TwoLevelState& state, Outcome outcome) {
    if (outcome == Outcome::plus) {
        return {state.c_plus, {0.0, 0.0}};
    }
    return {{0.0, 0.0}, state.c_minus};
}

// Starts from |+> at t' and alternates free evolution and collapse at each
// measurement time. Once an impossible outcome has been recorded the state is
// zero; later records then carry probability 0 and disturbance 1.
// Throws std::invalid_argument on empty input, mismatched lengths or
// decreasing times ("times not ascending").
Trajectory measured_trajectory(InitialPhase phase, std::span<const double> times,
                               std::span<const Outcome> outcomes, const DynamicsParams& params);

// q1 q2 ... qN <psi(tN+)|psi(tN+)>.
inline double trajectory_product(std::span<const MeasurementRecord> records, const TwoLevelState& final_state) {
    int sign = 1;
    for (const auto& r : records) {
        sign *= value(r.outcome);
    }
    return sign * final_state.norm_squared();
}

}  // namespace tbell

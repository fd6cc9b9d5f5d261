// correlators.hpp - two-time correlation functions of Q.
//
// Two independent routes are provided: the closed forms K = cos 2w(t1 - t2)
// and K_eps = A_eps K, and a brute-force oracle that averages measured
// two-time trajectories over the free phase t' with the distinguishability
// selection applied to the first outcome.
#pragma once

#include <string_view>

#include "tbell/dynamics.hpp"

namespace tbell {

class SelectionPolicy {
public:
    // Throws std::invalid_argument unless 0 <= epsilon <= 1.
    explicit SelectionPolicy(double epsilon = 0.0, bool select_both = false);

    double epsilon() const { return epsilon_; }
    // Also filter on the second outcome (exploratory; off by default).
    bool select_both() const { return select_both_; }

    // Inclusive: an outcome whose probability equals epsilon is kept.
    bool retains(double probability) const { return probability >= epsilon_; }

private:
    double epsilon_;
    bool select_both_;
};

struct CorrelationRequest {
    CorrelationRequest(double t1, double t2, DynamicsParams params, SelectionPolicy policy = SelectionPolicy{});

    double t1;  // canonicalized so that t1 <= t2
    double t2;
    DynamicsParams params;
    SelectionPolicy policy;
};

enum class QuadratureScheme {
    uniform_midpoint,  // midpoint cells, split where the selection mask flips
    gauss_legendre,    // 4-point Gauss-Legendre cells, split likewise
    plain_midpoint,    // midpoint cells, no splitting (first-order at the mask jumps)
};

QuadratureScheme parse_scheme(std::string_view name);
std::string_view scheme_name(QuadratureScheme scheme);

struct QuadratureConfig {
    // Throws std::invalid_argument when n_nodes < 16.
    explicit QuadratureConfig(int n_nodes = 10000, QuadratureScheme scheme = QuadratureScheme::uniform_midpoint);

    int n_nodes;
    QuadratureScheme scheme;
};

double k_analytic(double t1, double t2, const DynamicsParams& params);

// A_eps = (2 sqrt(eps (1 - eps)) + arccos(2 eps - 1)) / pi.
double selection_factor(const SelectionPolicy& policy);

double k_selective_analytic(const CorrelationRequest& req);

// Phase average over one period of t' of sum over retained q1 and all q2 of
// q1 q2 |psi(t2+)|^2. Deterministic: the summation order is fixed.
double k_oracle(const CorrelationRequest& req, const QuadratureConfig& quad = QuadratureConfig{});

// 1 - <psi(t1)|P_q|psi(t1)> for the state prepared by `phase`.
double disturbance(InitialPhase phase, double t1, Outcome outcome, const DynamicsParams& params);

}  // namespace tbell

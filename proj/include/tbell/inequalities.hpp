// inequalities.hpp - temporal Bell inequalities built from two-time correlators.
#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tbell/correlators.hpp"

namespace tbell {

struct InequalityTerm {
    int i;  // 1-based time indices, i != j
    int j;
    double kappa;
};

// dK = sum kappa_ij K(t_i, t_j) (optionally |dK|) against the classical bound B.
class InequalitySpec {
public:
    // Throws std::invalid_argument on n_times < 3, out-of-range or equal
    // indices, or a repeated (i, j) pair.
    InequalitySpec(int n_times, std::vector<InequalityTerm> terms, double bound, bool abs_mode, std::string name = "custom");

    // |K12 + K23 + K34 - K14| <= 2
    static InequalitySpec paz4();
    // -K12 - K23 - K13 <= 1
    static InequalitySpec santos_minus();
    // -K13 + K12 + K23 <= 1
    static InequalitySpec santos_plus();
    // "paz4", "santos-minus" or "santos-plus".
    static InequalitySpec preset(std::string_view name);

    int n_times() const { return n_times_; }
    std::span<const InequalityTerm> terms() const { return terms_; }
    double bound() const { return bound_; }
    bool abs_mode() const { return abs_mode_; }
    const std::string& name() const { return name_; }

private:
    int n_times_;
    std::vector<InequalityTerm> terms_;
    double bound_;
    bool abs_mode_;
    std::string name_;
};

struct SearchConfig {
    int grid_points = 4096;  // scan of w t over (0, pi]
    double tol = 1e-9;       // golden-section bracket, in units of w t
};

struct SolveConfig {
    double tol = 1e-9;  // bisection tolerance in epsilon
    SearchConfig search{};
};

struct ViolationReport {
    double delta_k_max = 0.0;     // unselected maximum of dK
    double argmax_spacing = 0.0;  // stationary spacing t (physical time) of the maximum
    double a_epsilon = 1.0;
    double delta_b_max = 0.0;     // (A_eps dK_max - B) / B
    bool violated = false;
};

// Selective combination using K_eps. Throws std::invalid_argument with
// "time count mismatch" on wrong arity and "times not ascending" when times
// decrease.
double delta_k(const InequalitySpec& spec, std::span<const double> times, const DynamicsParams& params,
               const SelectionPolicy& policy);

// dK at t_i = (i - 1) * spacing. Throws std::invalid_argument("invalid spacing")
// unless spacing > 0.
double delta_k_stationary(const InequalitySpec& spec, double spacing, const DynamicsParams& params,
                          const SelectionPolicy& policy);

// Grid scan of the stationary spacing over one period of K followed by a
// golden-section refinement around every grid-local maximum. Ties go to the
// smallest spacing.
ViolationReport maximize_violation(const InequalitySpec& spec, const DynamicsParams& params,
                                   const SelectionPolicy& policy, const SearchConfig& search = {});

struct GeneralMaximum {
    double delta_k_max = 0.0;
    std::vector<double> gaps;  // physical-time gaps t_{i+1} - t_i
};

// Maximum of the unselected dK over independent gaps (no stationarity):
// nested grid with `grid_per_axis` points per gap in w t over (0, pi], then
// cyclic coordinate refinement by golden section.
GeneralMaximum maximize_violation_general(const InequalitySpec& spec, const DynamicsParams& params,
                                          int grid_per_axis = 128, double tol = 1e-10);

// Root eps* of A_eps = B / dK_max; inequality violations exist iff eps < eps*.
// Throws std::domain_error("inequality never violated") when dK_max < B.
double epsilon_threshold(const InequalitySpec& spec, const DynamicsParams& params, const SolveConfig& solve = {});

// Effective Rabi frequency of an atom in a resonant cavity holding n photons.
double jaynes_cummings_frequency(double rabi, int n);

}  // namespace tbell

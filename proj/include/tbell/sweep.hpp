// sweep.hpp - command implementations behind the `tbell` CLI.
//
// Every command returns plain data (tables, reports); formatting and the
// exit-code contract live in run().
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tbell/correlators.hpp"
#include "tbell/inequalities.hpp"

namespace tbell::cli {

enum class OutputFormat { csv, json_lines };

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;

struct RunConfig {
    std::optional<double> omega;
    std::optional<double> rabi;
    std::optional<int> photons;  // --n

    std::string preset;               // empty: command default
    std::string terms;                // custom spec "i,j,kappa;..." (overrides preset)
    int n_times = 3;
    double bound = 1.0;
    bool abs_mode = false;

    double epsilon = 0.0;
    double eps_min = 0.0;
    double eps_max = 1.0;
    int eps_steps = 101;

    std::optional<double> t_min;
    std::optional<double> t_max;
    std::optional<int> t_steps;

    int nodes = 10000;
    std::string scheme = "uniform-midpoint";
    bool select_both = false;
    bool physical_time = false;
    std::uint64_t seed = 0;  // reserved for a sampling mode
    int threads = 0;         // 0: TBELL_THREADS / hardware

    double t1 = 0.0;
    double t2 = 0.0;
    double t_prime = 0.0;
    std::vector<double> times;
    std::vector<int> outcomes;

    std::string out;  // empty: stdout
    OutputFormat format = OutputFormat::csv;

    // Throws std::invalid_argument unless exactly one of omega / (rabi, n) is set.
    DynamicsParams dynamics() const;
    InequalitySpec inequality(const std::string& fallback_preset) const;
    SelectionPolicy policy(double eps) const { return SelectionPolicy{eps, select_both}; }
    QuadratureConfig quadrature() const { return QuadratureConfig{nodes, parse_scheme(scheme)}; }
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// 17 significant digits, so values survive a text round trip.
std::string format_number(double x);
void write_table(const Table& table, OutputFormat format, std::ostream& os);

// Free Q(t) and the stationary dK_-(t) over w t (default [0, 4 pi], 1201 points).
Table cmd_fig1(const RunConfig& config);

// Fractional violation dB_max versus epsilon for the Paz and Santos inequalities.
Table cmd_fig2(const RunConfig& config);

struct ValidationReport {
    Table cells;  // epsilon, omega_tau, k_oracle, k_selective, deviation, tolerance
    double max_deviation = 0.0;
    double worst_epsilon = 0.0;
    double worst_omega_tau = 0.0;
    bool pass = true;
};

// k_oracle against A_eps K over an (epsilon, lag) grid.
ValidationReport cmd_validate(const RunConfig& config);

struct ThresholdReport {
    std::string name;
    double epsilon_star = 0.0;
    double delta_k_max = 0.0;
    double argmax = 0.0;  // w t unless physical_time
    double a_at_threshold = 0.0;
};

ThresholdReport cmd_threshold(const RunConfig& config);

// Single K query at (t1, t2, epsilon): analytic, selective and oracle values.
Table cmd_correlate(const RunConfig& config);

// Measurement records for --times / --outcomes with running norm and product.
Table cmd_trajectory(const RunConfig& config);

// Parses argv, dispatches the subcommand and writes results. Returns an exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tbell::cli

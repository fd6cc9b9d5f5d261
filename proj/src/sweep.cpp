#include "tbell/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "tbell/parallel.hpp"

namespace tbell::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> linspace(double lo, double hi, int steps) {
    if (steps < 1) {
        throw std::invalid_argument("grid sizes must be positive");
    }
    if (steps == 1) {
        return {lo};
    }
    std::vector<double> xs(static_cast<std::size_t>(steps));
    const double step = (hi - lo) / (steps - 1);
    for (int k = 0; k < steps; ++k) {
        xs[static_cast<std::size_t>(k)] = k + 1 == steps ? hi : lo + k * step;
    }
    return xs;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (!item.empty()) {
            parts.push_back(item);
        }
    }
    return parts;
}

double parse_double(const std::string& s) {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used != s.size()) {
        throw std::invalid_argument("not a number: " + s);
    }
    return x;
}

}  // namespace

DynamicsParams RunConfig::dynamics() const {
    const bool jc = rabi.has_value() || photons.has_value();
    if (omega.has_value() == jc) {
        throw std::invalid_argument("give exactly one of --omega or --rabi with --n");
    }
    if (omega) {
        return DynamicsParams{*omega};
    }
    if (!rabi || !photons) {
        throw std::invalid_argument("--rabi and --n must be given together");
    }
    return DynamicsParams{jaynes_cummings_frequency(*rabi, *photons)};
}

InequalitySpec RunConfig::inequality(const std::string& fallback_preset) const {
    if (terms.empty()) {
        return InequalitySpec::preset(preset.empty() ? fallback_preset : preset);
    }
    std::vector<InequalityTerm> parsed;
    for (const auto& item : split(terms, ';')) {
        const auto fields = split(item, ',');
        if (fields.size() != 3) {
            throw std::invalid_argument("terms are written as i,j,kappa;...");
        }
        parsed.push_back({std::stoi(fields[0]), std::stoi(fields[1]), parse_double(fields[2])});
    }
    return InequalitySpec{n_times, std::move(parsed), bound, abs_mode, "custom"};
}

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_table(const Table& table, OutputFormat format, std::ostream& os) {
    if (format == OutputFormat::csv) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            os << (c ? "," : "") << table.columns[c];
        }
        os << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                os << (c ? "," : "") << format_number(row[c]);
            }
            os << '\n';
        }
        return;
    }
    for (const auto& row : table.rows) {
        os << '{';
        for (std::size_t c = 0; c < row.size(); ++c) {
            os << (c ? "," : "") << '"' << table.columns[c] << "\":";
            // JSON has no literals for non-finite numbers.
            if (std::isfinite(row[c])) {
                os << format_number(row[c]);
            } else {
                os << "null";
            }
        }
        os << "}\n";
    }
}

Table cmd_fig1(const RunConfig& config) {
    const DynamicsParams params = config.dynamics();
    const InequalitySpec spec = config.inequality("santos-minus");
    if (spec.name() != "santos-minus") {
        throw std::invalid_argument("fig1 plots the santos-minus inequality");
    }
    const SelectionPolicy policy = config.policy(config.epsilon);
    const auto axis = linspace(config.t_min.value_or(0.0), config.t_max.value_or(4.0 * kPi), config.t_steps.value_or(1201));

    Table table{{config.physical_time ? "t" : "omega_t", "q_free", "delta_k_minus", "bound"}, {}};
    table.rows.resize(axis.size());
    parallel_for(axis.size(), config.threads, [&](std::size_t k) {
        const double t = config.physical_time ? axis[k] : axis[k] / params.omega();
        const double q_free = expectation_q(propagate(TwoLevelState::plus(), t, params));
        const std::vector<double> times{0.0, t, 2.0 * t};
        table.rows[k] = {axis[k], q_free, delta_k(spec, times, params, policy), spec.bound()};
    });
    return table;
}

Table cmd_fig2(const RunConfig& config) {
    const DynamicsParams params = config.dynamics();
    std::vector<std::pair<std::string, InequalitySpec>> columns;
    if (config.preset.empty() && config.terms.empty()) {
        columns.emplace_back("delta_b_max_paz", InequalitySpec::paz4());
        columns.emplace_back("delta_b_max_santos", InequalitySpec::santos_minus());
    } else {
        const InequalitySpec spec = config.inequality("");
        const std::string label = spec.name() == "paz4" ? "delta_b_max_paz"
                                  : spec.name().rfind("santos", 0) == 0 ? "delta_b_max_santos"
                                                                         : "delta_b_max_custom";
        columns.emplace_back(label, spec);
    }
    const auto eps = linspace(config.eps_min, config.eps_max, config.eps_steps);

    Table table{{"epsilon"}, {}};
    for (const auto& c : columns) {
        table.columns.push_back(c.first);
    }
    table.rows.resize(eps.size());
    parallel_for(eps.size(), config.threads, [&](std::size_t k) {
        std::vector<double> row{eps[k]};
        for (const auto& c : columns) {
            row.push_back(maximize_violation(c.second, params, config.policy(eps[k])).delta_b_max);
        }
        table.rows[k] = std::move(row);
    });
    return table;
}

ValidationReport cmd_validate(const RunConfig& config) {
    const DynamicsParams params = config.dynamics();
    const QuadratureConfig quad = config.quadrature();
    const auto eps = linspace(config.eps_min, config.eps_max, config.eps_steps);
    // Lags in w tau over [0, pi]: one period of K.
    const auto lags = linspace(config.t_min.value_or(0.0), config.t_max.value_or(kPi), config.t_steps.value_or(256));
    const double eps_step = eps.size() > 1 ? (config.eps_max - config.eps_min) / (eps.size() - 1) : 0.0;

    ValidationReport report;
    report.cells.columns = {"epsilon", config.physical_time ? "tau" : "omega_tau", "k_oracle", "k_selective",
                            "deviation", "tolerance"};
    report.cells.rows.resize(eps.size() * lags.size());
    parallel_for(report.cells.rows.size(), config.threads, [&](std::size_t cell) {
        const double e = eps[cell / lags.size()];
        const double lag = lags[cell % lags.size()];
        const double tau = config.physical_time ? lag : lag / params.omega();
        const CorrelationRequest req(0.0, tau, params, config.policy(e));
        const double oracle = k_oracle(req, quad);
        const double analytic = k_selective_analytic(req);
        // Near eps = 1 the retained phase window shrinks below a quadrature cell.
        const bool near_boundary = 1.0 - e <= eps_step * (1.0 + 1e-9) && e < 1.0;
        const double tol = near_boundary ? 1e-3 : 1e-6;
        report.cells.rows[cell] = {e, lag, oracle, analytic, std::abs(oracle - analytic), tol};
    });

    for (const auto& row : report.cells.rows) {
        if (row[4] > report.max_deviation || std::isnan(row[4])) {
            report.max_deviation = row[4];
            report.worst_epsilon = row[0];
            report.worst_omega_tau = row[1];
        }
        if (!(row[4] <= row[5])) {
            report.pass = false;
        }
    }
    return report;
}

ThresholdReport cmd_threshold(const RunConfig& config) {
    const DynamicsParams params = config.dynamics();
    const InequalitySpec spec = config.inequality("santos-minus");
    const ViolationReport unselected = maximize_violation(spec, params, SelectionPolicy{0.0});
    ThresholdReport report;
    report.name = spec.name();
    report.epsilon_star = epsilon_threshold(spec, params);
    report.delta_k_max = unselected.delta_k_max;
    report.argmax = config.physical_time ? unselected.argmax_spacing : unselected.argmax_spacing * params.omega();
    report.a_at_threshold = selection_factor(SelectionPolicy{report.epsilon_star});
    return report;
}

Table cmd_correlate(const RunConfig& config) {
    const DynamicsParams params = config.dynamics();
    const CorrelationRequest req(config.t1, config.t2, params, config.policy(config.epsilon));
    return {{"t1", "t2", "epsilon", "a_epsilon", "k", "k_selective", "k_oracle"},
            {{req.t1, req.t2, config.epsilon, selection_factor(req.policy), k_analytic(req.t1, req.t2, params),
              k_selective_analytic(req), k_oracle(req, config.quadrature())}}};
}

Table cmd_trajectory(const RunConfig& config) {
    const DynamicsParams params = config.dynamics();
    if (config.times.size() != config.outcomes.size()) {
        throw std::invalid_argument("--times and --outcomes must have the same length");
    }
    std::vector<Outcome> outcomes;
    for (const int q : config.outcomes) {
        if (q != 1 && q != -1) {
            throw std::invalid_argument("outcomes must be +1 or -1");
        }
        outcomes.push_back(q == 1 ? Outcome::plus : Outcome::minus);
    }
    const Trajectory full = measured_trajectory(InitialPhase{config.t_prime}, config.times, outcomes, params);

    Table table{{"time", "outcome", "pre_probability", "disturbance", "norm_squared", "q_product"}, {}};
    for (std::size_t i = 0; i < full.records.size(); ++i) {
        const auto prefix = measured_trajectory(InitialPhase{config.t_prime}, std::span(config.times).first(i + 1),
                                                std::span(outcomes).first(i + 1), params);
        const auto& r = full.records[i];
        table.rows.push_back({r.time, static_cast<double>(value(r.outcome)), r.pre_probability, r.disturbance,
                              prefix.final_state.norm_squared(),
                              trajectory_product(prefix.records, prefix.final_state)});
    }
    return table;
}

namespace {

int emit(const Table& table, const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (config.out.empty()) {
        write_table(table, config.format, out);
        return kExitOk;
    }
    std::ofstream file(config.out, std::ios::binary);
    if (!file) {
        err << "error: cannot open output file " << config.out << '\n';
        return kExitConfig;
    }
    write_table(table, config.format, file);
    file.flush();
    if (!file) {
        err << "error: failed writing " << config.out << '\n';
        return kExitConfig;
    }
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Temporal Bell inequalities for a two-level system under projective measurement", "tbell"};
    app.set_config("--config", "", "flat key = value file; command-line flags take precedence");
    app.config_formatter(std::make_shared<CLI::ConfigINI>());
    app.require_subcommand(1);

    RunConfig cfg;
    double omega = 0.0;
    double rabi = 0.0;
    int photons = 0;
    double t_min = 0.0;
    double t_max = 0.0;
    int t_steps = 0;
    std::string format = "csv";
    std::string outcomes;
    std::string times;

    auto* omega_opt = app.add_option("--omega", omega, "angular frequency of the two-level oscillation");
    auto* rabi_opt = app.add_option("--rabi", rabi, "Rabi frequency (Jaynes-Cummings mode, with --n)");
    auto* n_opt = app.add_option("--n", photons, "cavity photon number (Jaynes-Cummings mode)");
    app.add_option("--preset", cfg.preset, "inequality preset")
        ->check(CLI::IsMember({"paz4", "santos-minus", "santos-plus"}));
    app.add_option("--terms", cfg.terms, "custom inequality terms i,j,kappa;...");
    app.add_option("--n-times", cfg.n_times, "number of times in a custom inequality");
    app.add_option("--bound", cfg.bound, "classical bound of a custom inequality");
    app.add_flag("--abs", cfg.abs_mode, "wrap a custom inequality in an absolute value");
    app.add_option("--epsilon", cfg.epsilon, "distinguishability threshold")->check(CLI::Range(0.0, 1.0));
    app.add_option("--eps-min", cfg.eps_min)->check(CLI::Range(0.0, 1.0));
    app.add_option("--eps-max", cfg.eps_max)->check(CLI::Range(0.0, 1.0));
    app.add_option("--eps-steps", cfg.eps_steps)->check(CLI::PositiveNumber);
    auto* t_min_opt = app.add_option("--t-min", t_min, "axis start (w t unless --physical-time)");
    auto* t_max_opt = app.add_option("--t-max", t_max, "axis end (w t unless --physical-time)");
    auto* t_steps_opt = app.add_option("--t-steps", t_steps, "axis points")->check(CLI::PositiveNumber);
    app.add_option("--nodes", cfg.nodes, "phase quadrature nodes")->check(CLI::Range(16, 100000000));
    app.add_option("--scheme", cfg.scheme, "phase quadrature scheme")
        ->check(CLI::IsMember({"uniform-midpoint", "gauss-legendre", "plain-midpoint"}));
    app.add_option("--out", cfg.out, "output file (default stdout)");
    app.add_option("--format", format, "csv or json-lines")->check(CLI::IsMember({"csv", "json-lines"}));
    app.add_option("--seed", cfg.seed, "reserved for the sampling mode");
    app.add_flag("--select-both", cfg.select_both, "also select on the second outcome (exploratory)");
    app.add_flag("--physical-time", cfg.physical_time, "time axes in units of 1/omega instead of w t");
    app.add_option("--t1", cfg.t1, "first correlation time");
    app.add_option("--t2", cfg.t2, "second correlation time");
    app.add_option("--t-prime", cfg.t_prime, "instant at which the system was in |+>");
    app.add_option("--times", times, "comma-separated measurement times");
    app.add_option("--outcomes", outcomes, "comma-separated outcomes (+1/-1)");

    auto* fig1 = app.add_subcommand("fig1", "Q(t) and the stationary dK_-(t) over w t");
    auto* fig2 = app.add_subcommand("fig2", "maximal fractional violation versus epsilon");
    auto* validate = app.add_subcommand("validate", "phase-average oracle against A_eps K");
    auto* threshold = app.add_subcommand("threshold", "distinguishability threshold eps* of an inequality");
    auto* correlate = app.add_subcommand("correlate", "single K_eps(t1, t2) query");
    auto* trajectory = app.add_subcommand("trajectory", "measurement records of one outcome history");
    for (auto* sub : {fig1, fig2, validate, threshold, correlate, trajectory}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        if (*omega_opt) cfg.omega = omega;
        if (*rabi_opt) cfg.rabi = rabi;
        if (*n_opt) cfg.photons = photons;
        if (*t_min_opt) cfg.t_min = t_min;
        if (*t_max_opt) cfg.t_max = t_max;
        if (*t_steps_opt) cfg.t_steps = t_steps;
        if (!cfg.omega && !cfg.rabi && !cfg.photons) cfg.omega = 1.0;
        cfg.format = format == "csv" ? OutputFormat::csv : OutputFormat::json_lines;
        for (const auto& s : split(times, ',')) cfg.times.push_back(parse_double(s));
        for (const auto& s : split(outcomes, ',')) cfg.outcomes.push_back(static_cast<int>(parse_double(s)));
        if (cfg.eps_min > cfg.eps_max) {
            throw std::invalid_argument("--eps-min must not exceed --eps-max");
        }
        (void)cfg.dynamics();
        (void)cfg.quadrature();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        if (*fig1) {
            return emit(cmd_fig1(cfg), cfg, out, err);
        }
        if (*fig2) {
            return emit(cmd_fig2(cfg), cfg, out, err);
        }
        if (*correlate) {
            return emit(cmd_correlate(cfg), cfg, out, err);
        }
        if (*trajectory) {
            return emit(cmd_trajectory(cfg), cfg, out, err);
        }
        if (*validate) {
            const ValidationReport report = cmd_validate(cfg);
            if (!cfg.out.empty()) {
                if (const int rc = emit(report.cells, cfg, out, err); rc != kExitOk) {
                    return rc;
                }
            }
            out << "cells=" << report.cells.rows.size() << " max_deviation=" << format_number(report.max_deviation)
                << " worst_epsilon=" << format_number(report.worst_epsilon)
                << " worst_omega_tau=" << format_number(report.worst_omega_tau) << ' '
                << (report.pass ? "PASS" : "FAIL") << '\n';
            if (!report.pass) {
                err << "validation failed: worst cell epsilon=" << format_number(report.worst_epsilon)
                    << " omega_tau=" << format_number(report.worst_omega_tau)
                    << " deviation=" << format_number(report.max_deviation) << '\n';
                return kExitFailure;
            }
            return kExitOk;
        }
        if (*threshold) {
            const ThresholdReport r = cmd_threshold(cfg);
            Table table{{"epsilon_star", "delta_k_max", cfg.physical_time ? "argmax_t" : "argmax_omega_t",
                         "a_epsilon_star"},
                        {{r.epsilon_star, r.delta_k_max, r.argmax, r.a_at_threshold}}};
            return emit(table, cfg, out, err);
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitConfig;
}

}  // namespace tbell::cli

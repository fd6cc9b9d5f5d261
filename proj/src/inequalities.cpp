#include "tbell/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>
#include <utility>

#include "tbell/numerics.hpp"

namespace tbell {

InequalitySpec::InequalitySpec(int n_times, std::vector<InequalityTerm> terms, double bound, bool abs_mode,
                               std::string name)
    : n_times_(n_times), terms_(std::move(terms)), bound_(bound), abs_mode_(abs_mode), name_(std::move(name)) {
    if (n_times_ < 3) {
        throw std::invalid_argument("an inequality needs at least 3 measurement times");
    }
    if (!(bound_ > 0.0) || !std::isfinite(bound_)) {
        throw std::invalid_argument("the classical bound must be positive and finite");
    }
    std::set<std::pair<int, int>> seen;
    for (const auto& t : terms_) {
        if (t.i < 1 || t.i > n_times_ || t.j < 1 || t.j > n_times_ || t.i == t.j) {
            throw std::invalid_argument("term indices must be distinct and within [1, n_times]");
        }
        if (!seen.emplace(t.i, t.j).second) {
            throw std::invalid_argument("duplicate (i, j) term");
        }
        if (!std::isfinite(t.kappa)) {
            throw std::invalid_argument("coefficients must be finite");
        }
    }
}

InequalitySpec InequalitySpec::paz4() {
    return {4, {{1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}, {1, 4, -1.0}}, 2.0, true, "paz4"};
}

InequalitySpec InequalitySpec::santos_minus() {
    return {3, {{1, 2, -1.0}, {2, 3, -1.0}, {1, 3, -1.0}}, 1.0, false, "santos-minus"};
}

InequalitySpec InequalitySpec::santos_plus() {
    return {3, {{1, 3, -1.0}, {1, 2, 1.0}, {2, 3, 1.0}}, 1.0, false, "santos-plus"};
}

InequalitySpec InequalitySpec::preset(std::string_view name) {
    if (name == "paz4") return paz4();
    if (name == "santos-minus") return santos_minus();
    if (name == "santos-plus") return santos_plus();
    throw std::invalid_argument("unknown inequality preset: " + std::string(name));
}

double delta_k(const InequalitySpec& spec, std::span<const double> times, const DynamicsParams& params,
               const SelectionPolicy& policy) {
    if (times.size() != static_cast<std::size_t>(spec.n_times())) {
        throw std::invalid_argument("time count mismatch");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (times[i] < times[i - 1]) {
            throw std::invalid_argument("times not ascending");
        }
    }
    double sum = 0.0;
    for (const auto& term : spec.terms()) {
        const CorrelationRequest req(times[term.i - 1], times[term.j - 1], params, policy);
        sum += term.kappa * k_selective_analytic(req);
    }
    return spec.abs_mode() ? std::abs(sum) : sum;
}

double delta_k_stationary(const InequalitySpec& spec, double spacing, const DynamicsParams& params,
                          const SelectionPolicy& policy) {
    if (!(spacing > 0.0) || !std::isfinite(spacing)) {
        throw std::invalid_argument("invalid spacing");
    }
    std::vector<double> times(static_cast<std::size_t>(spec.n_times()));
    for (std::size_t i = 0; i < times.size(); ++i) {
        times[i] = static_cast<double>(i) * spacing;
    }
    return delta_k(spec, times, params, policy);
}

ViolationReport maximize_violation(const InequalitySpec& spec, const DynamicsParams& params,
                                   const SelectionPolicy& policy, const SearchConfig& search) {
    if (search.grid_points < 3 || !(search.tol > 0.0)) {
        throw std::invalid_argument("search needs >= 3 grid points and a positive tolerance");
    }
    const double pi = std::numbers::pi;
    const double omega = params.omega();
    const double a_eps = selection_factor(policy);
    // A_1 = 0 flattens the selective objective; its argmax is then taken from
    // the unselected one, which shares it for every other epsilon.
    const SelectionPolicy objective_policy = a_eps > 0.0 ? policy : SelectionPolicy{0.0};
    auto objective = [&](double wt) { return delta_k_stationary(spec, wt / omega, params, objective_policy); };

    const auto n = static_cast<std::size_t>(search.grid_points);
    const double step = pi / static_cast<double>(n);
    std::vector<double> values(n);
    for (std::size_t k = 0; k < n; ++k) {
        values[k] = objective(static_cast<double>(k + 1) * step);
    }
    const double grid_best = *std::max_element(values.begin(), values.end());
    double coeff_scale = 1.0;
    for (const auto& t : spec.terms()) {
        coeff_scale += std::abs(t.kappa);
    }
    // Refinement can only gain O(step^2) over a grid value.
    const double margin = 1e-3 * coeff_scale;

    double best_x = 0.0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        // The objective has period pi in w t, so the grid is cyclic.
        const double prev = values[(k + n - 1) % n];
        const double next = values[(k + 1) % n];
        if (values[k] < prev || values[k] < next || values[k] < grid_best - margin) {
            continue;
        }
        const double centre = static_cast<double>(k + 1) * step;
        auto [x, v] = numerics::golden_section_maximize(objective, centre - step, centre + step, search.tol);
        if (x > pi) x -= pi;
        if (x <= 0.0) x += pi;
        const double tie = 1e-12 * (1.0 + std::abs(v));
        if (v > best_value + tie || (std::abs(v - best_value) <= tie && x < best_x)) {
            best_value = std::max(v, best_value);
            best_x = x;
        }
    }

    ViolationReport report;
    report.argmax_spacing = best_x / omega;
    report.delta_k_max = delta_k_stationary(spec, report.argmax_spacing, params, SelectionPolicy{0.0});
    report.a_epsilon = a_eps;
    report.delta_b_max = (a_eps * report.delta_k_max - spec.bound()) / spec.bound();
    report.violated = report.delta_b_max > 0.0;
    return report;
}

GeneralMaximum maximize_violation_general(const InequalitySpec& spec, const DynamicsParams& params,
                                          int grid_per_axis, double tol) {
    if (grid_per_axis < 2) {
        throw std::invalid_argument("grid_per_axis must be >= 2");
    }
    const double pi = std::numbers::pi;
    const double omega = params.omega();
    const std::size_t axes = static_cast<std::size_t>(spec.n_times() - 1);
    const SelectionPolicy unselected{0.0};
    std::vector<double> times(axes + 1);
    auto objective = [&](const std::vector<double>& wt_gaps) {
        times[0] = 0.0;
        for (std::size_t a = 0; a < axes; ++a) {
            times[a + 1] = times[a] + wt_gaps[a] / omega;
        }
        return delta_k(spec, times, params, unselected);
    };

    const double step = pi / grid_per_axis;
    std::vector<int> index(axes, 1);
    std::vector<double> gaps(axes, step);
    std::vector<double> best_gaps = gaps;
    double best = -std::numeric_limits<double>::infinity();
    while (true) {
        for (std::size_t a = 0; a < axes; ++a) {
            gaps[a] = index[a] * step;
        }
        const double v = objective(gaps);
        if (v > best) {
            best = v;
            best_gaps = gaps;
        }
        std::size_t a = 0;
        while (a < axes && ++index[a] > grid_per_axis) {
            index[a] = 1;
            ++a;
        }
        if (a == axes) {
            break;
        }
    }

    gaps = best_gaps;
    for (int sweep = 0; sweep < 1000; ++sweep) {
        const double before = best;
        for (std::size_t a = 0; a < axes; ++a) {
            const double centre = gaps[a];
            auto along = [&](double x) {
                gaps[a] = x;
                return objective(gaps);
            };
            const double lo = std::max(centre - step, 1e-3 * step);
            const auto ext = numerics::golden_section_maximize(along, lo, centre + step, tol);
            if (ext.value > best) {
                best = ext.value;
                gaps[a] = ext.x;
            } else {
                gaps[a] = centre;
            }
        }
        if (best - before <= 1e-15) {
            break;
        }
    }

    GeneralMaximum out;
    out.delta_k_max = best;
    out.gaps.reserve(axes);
    for (const double g : gaps) {
        out.gaps.push_back(g / omega);
    }
    return out;
}

double epsilon_threshold(const InequalitySpec& spec, const DynamicsParams& params, const SolveConfig& solve) {
    const ViolationReport unselected = maximize_violation(spec, params, SelectionPolicy{0.0}, solve.search);
    const double target = spec.bound() / unselected.delta_k_max;
    if (!(unselected.delta_k_max > 0.0) || target > 1.0 + 1e-12) {
        throw std::domain_error("inequality never violated");
    }
    if (target >= 1.0) {
        return 0.0;
    }
    return numerics::bisect_root([&](double eps) { return selection_factor(SelectionPolicy{eps}) - target; }, 0.0,
                                 1.0, solve.tol);
}

double jaynes_cummings_frequency(double rabi, int n) {
    if (!(rabi > 0.0) || !std::isfinite(rabi)) {
        throw std::invalid_argument("Rabi frequency must be positive");
    }
    if (n < 0) {
        throw std::invalid_argument("photon number must be nonnegative");
    }
    return rabi * std::sqrt(static_cast<double>(n) + 1.0);
}

}  // namespace tbell

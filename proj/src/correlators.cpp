#include "tbell/correlators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "tbell/numerics.hpp"

namespace tbell {

SelectionPolicy::SelectionPolicy(double epsilon, bool select_both) : epsilon_(epsilon), select_both_(select_both) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("epsilon must lie in [0, 1]");
    }
}

CorrelationRequest::CorrelationRequest(double t1_, double t2_, DynamicsParams params_, SelectionPolicy policy_)
    : t1(std::min(t1_, t2_)), t2(std::max(t1_, t2_)), params(params_), policy(policy_) {
    if (!std::isfinite(t1) || !std::isfinite(t2)) {
        throw std::invalid_argument("correlation times must be finite");
    }
}

QuadratureScheme parse_scheme(std::string_view name) {
    if (name == "uniform-midpoint") return QuadratureScheme::uniform_midpoint;
    if (name == "gauss-legendre") return QuadratureScheme::gauss_legendre;
    if (name == "plain-midpoint") return QuadratureScheme::plain_midpoint;
    throw std::invalid_argument("unknown quadrature scheme: " + std::string(name));
}

std::string_view scheme_name(QuadratureScheme scheme) {
    switch (scheme) {
        case QuadratureScheme::uniform_midpoint: return "uniform-midpoint";
        case QuadratureScheme::gauss_legendre: return "gauss-legendre";
        case QuadratureScheme::plain_midpoint: return "plain-midpoint";
    }
    return "unknown";
}

QuadratureConfig::QuadratureConfig(int n_nodes_, QuadratureScheme scheme_) : n_nodes(n_nodes_), scheme(scheme_) {
    if (n_nodes < 16) {
        throw std::invalid_argument("quadrature needs at least 16 nodes");
    }
}

double k_analytic(double t1, double t2, const DynamicsParams& params) {
    // K has period pi/w in the lag.
    const double phase = std::remainder(params.omega() * (t2 - t1), std::numbers::pi);
    return std::cos(2.0 * phase);
}

double selection_factor(const SelectionPolicy& policy) {
    const double eps = policy.epsilon();
    return (2.0 * std::sqrt(eps * (1.0 - eps)) + std::acos(2.0 * eps - 1.0)) / std::numbers::pi;
}

double k_selective_analytic(const CorrelationRequest& req) {
    return selection_factor(req.policy) * k_analytic(req.t1, req.t2, req.params);
}

namespace {

struct PhaseSample {
    std::array<bool, 2> keep{};  // indexed like kOutcomes
    double value = 0.0;
};

// Integrand of the phase average at a given t', built from the kernel
// operations: evolve |+> from t' to t1, branch on q1, evolve over the lag,
// branch on q2, and weight each history by its product q1 q2 |psi|^2.
class PhaseIntegrand {
public:
    explicit PhaseIntegrand(const CorrelationRequest& req)
        : req_(req), lag_(req.t2 - req.t1, req.params) {}

    PhaseSample operator()(double t_prime) const {
        PhaseSample out;
        const TwoLevelState at_t1 = propagate(TwoLevelState::plus(), req_.t1 - t_prime, req_.params);
        for (std::size_t b = 0; b < 2; ++b) {
            const Outcome q1 = kOutcomes[b];
            out.keep[b] = req_.policy.retains(born_probability(at_t1, q1));
            if (!out.keep[b]) {
                continue;
            }
            const TwoLevelState after_first = collapse(at_t1, q1);
            if (after_first.norm_squared() == 0.0) {
                continue;
            }
            const TwoLevelState at_t2 = lag_(after_first);
            for (const Outcome q2 : kOutcomes) {
                if (req_.policy.select_both() && !req_.policy.retains(born_probability(at_t2, q2))) {
                    continue;
                }
                const std::array<MeasurementRecord, 2> records{
                    MeasurementRecord{req_.t1, q1, 0.0, 0.0}, MeasurementRecord{req_.t2, q2, 0.0, 0.0}};
                out.value += trajectory_product(records, collapse(at_t2, q2));
            }
        }
        return out;
    }

    double value(double t_prime) const { return (*this)(t_prime).value; }

    bool keeps(double t_prime, std::size_t b) const {
        const TwoLevelState at_t1 = propagate(TwoLevelState::plus(), req_.t1 - t_prime, req_.params);
        return req_.policy.retains(born_probability(at_t1, kOutcomes[b]));
    }

private:
    const CorrelationRequest& req_;
    Propagator lag_;
};

double integrate_piece(const PhaseIntegrand& g, QuadratureScheme scheme, double a, double b) {
    if (scheme == QuadratureScheme::gauss_legendre) {
        return boost::math::quadrature::gauss<double, 4>::integrate([&](double t) { return g.value(t); }, a, b);
    }
    return (b - a) * g.value(0.5 * (a + b));
}

}  // namespace

double k_oracle(const CorrelationRequest& req, const QuadratureConfig& quad) {
    const PhaseIntegrand g(req);
    const double period = req.params.period();
    const std::size_t cells = quad.scheme == QuadratureScheme::gauss_legendre
                                  ? static_cast<std::size_t>(quad.n_nodes / 4)
                                  : static_cast<std::size_t>(quad.n_nodes);
    const double h = period / static_cast<double>(cells);
    auto midpoint = [&](std::size_t k) { return (static_cast<double>(k) + 0.5) * h; };

    std::vector<PhaseSample> probes(cells);
    for (std::size_t k = 0; k < cells; ++k) {
        probes[k] = g(midpoint(k));
    }

    // Points where a first-outcome selection flips, grouped by owning cell.
    std::vector<std::vector<double>> splits(cells);
    if (quad.scheme != QuadratureScheme::plain_midpoint) {
        const double tol = period * 1e-15;
        for (std::size_t k = 0; k < cells; ++k) {
            const std::size_t next = (k + 1) % cells;
            const double lo = midpoint(k);
            const double hi = lo + h;
            for (std::size_t b = 0; b < 2; ++b) {
                if (probes[k].keep[b] == probes[next].keep[b]) {
                    continue;
                }
                const double flip = numerics::bisect_flip([&](double t) { return g.keeps(t, b); }, lo, hi, tol);
                if (flip < static_cast<double>(k + 1) * h) {
                    splits[k].push_back(flip);
                } else {
                    splits[next].push_back(next == 0 ? flip - period : flip);
                }
            }
        }
    }

    double total = 0.0;
    for (std::size_t k = 0; k < cells; ++k) {
        const double lo = static_cast<double>(k) * h;
        const double hi = lo + h;
        if (splits[k].empty()) {
            total += quad.scheme == QuadratureScheme::gauss_legendre ? integrate_piece(g, quad.scheme, lo, hi)
                                                                     : h * probes[k].value;
            continue;
        }
        auto& cuts = splits[k];
        std::sort(cuts.begin(), cuts.end());
        double left = lo;
        for (const double cut : cuts) {
            const double right = std::clamp(cut, left, hi);
            total += integrate_piece(g, quad.scheme, left, right);
            left = right;
        }
        total += integrate_piece(g, quad.scheme, left, hi);
    }
    return total / period;
}

double disturbance(InitialPhase phase, double t1, Outcome outcome, const DynamicsParams& params) {
    const TwoLevelState at_t1 = propagate(TwoLevelState::plus(), t1 - phase.t_prime, params);
    return 1.0 - born_probability(at_t1, outcome);
}

}  // namespace tbell

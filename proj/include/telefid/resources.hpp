// Trade-offs between prior information, shared entanglement and classical
// communication in the standard qubit protocol.
#pragma once

#include <algorithm>
#include <array>
#include <span>
#include <cmath>
#include <stdexcept>

#include "telefid/core.hpp"
#include "telefid/distributions.hpp"
#include "telefid/fidelity.hpp"

namespace telefid {

/// Probabilities of the four Bell-measurement outcomes.
struct BellOutcomeDistribution {
    double p_phi_plus = 0.25;
    double p_phi_minus = 0.25;
    double p_psi_plus = 0.25;
    double p_psi_minus = 0.25;

    [[nodiscard]] std::array<double, 4> as_array() const {
        return {p_phi_plus, p_phi_minus, p_psi_plus, p_psi_minus};
    }
};

/// Smallest pure-state concurrence C' whose average fidelity under `dist` equals
/// the uniform-ensemble fidelity (2 + C_target)/3 of a state with concurrence
/// C_target. Pure-state fidelity is 1 - (1 - C) <sin^2>/2, hence
///   C' = max{0, 1 - 2 (1 - C_target) / (3 <sin^2>)}.
[[nodiscard]] inline double required_entanglement(double c_target, const InputDistribution& dist) {
    if (!(c_target >= 0.0 && c_target <= 1.0)) {
        throw std::invalid_argument("target concurrence must lie in [0, 1]");
    }
    const double s2 = sin2_stats(dist).mean;
    if (s2 <= 0.0) {
        return 0.0;
    }
    return std::clamp(1.0 - 2.0 * (1.0 - c_target) / (3.0 * s2), 0.0, 1.0);
}

namespace detail {
inline void check_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 0.5)) {
        throw std::invalid_argument("Schmidt weight alpha must lie in [0, 1/2]");
    }
}
}  // namespace detail

/// Outcome probabilities for one input direction with shared state
/// sqrt(alpha)|01> - sqrt(1-alpha)|10>. Independent of phi.
[[nodiscard]] inline BellOutcomeDistribution bell_probabilities_pointwise(double alpha, const BlochDirection& dir) {
    detail::check_alpha(alpha);
    const double c2 = std::cos(0.5 * dir.theta) * std::cos(0.5 * dir.theta);
    const double s2 = std::sin(0.5 * dir.theta) * std::sin(0.5 * dir.theta);
    const double phi = 0.5 * (alpha * c2 + (1.0 - alpha) * s2);
    const double psi = 0.5 * (alpha * s2 + (1.0 - alpha) * c2);
    return BellOutcomeDistribution{phi, phi, psi, psi};
}

/// Outcome probabilities averaged over the ensemble:
///   p(phi+-) = (1 + (2 alpha - 1) <cos theta>) / 4,  p(psi+-) = 1/2 - p(phi+-).
[[nodiscard]] inline BellOutcomeDistribution bell_probabilities_averaged(double alpha, const InputDistribution& dist) {
    detail::check_alpha(alpha);
    const double m1 = std::visit(overloaded{
                                     [](const Uniform&) { return 0.0; },
                                     [](const PolarCap& cap) { return 1.0 - 0.5 * cap.one_minus_cos(); },
                                     [](const VonMisesFisher& v) { return vmf::mean_cos(v.kappa()); },
                                 },
                                 dist);
    const double phi = 0.25 * (1.0 + (2.0 * alpha - 1.0) * m1);
    const double psi = 0.5 - phi;
    return BellOutcomeDistribution{phi, phi, psi, psi};
}

/// Shannon entropy in bits, with 0 log 0 = 0.
[[nodiscard]] inline double shannon_entropy_bits(std::span<const double> probabilities) {
    double h = 0.0;
    for (double p : probabilities) {
        if (p < 0.0) {
            throw std::invalid_argument("probabilities must be non-negative");
        }
        if (p > 0.0) {
            h -= p * std::log2(p);
        }
    }
    return h;
}

/// Classical-communication cost of faithfully sending the Bell outcome.
[[nodiscard]] inline double cc_cost(const BellOutcomeDistribution& outcomes) {
    const auto p = outcomes.as_array();
    return shannon_entropy_bits(p);
}

}  // namespace telefid

// Qubit teleportation fidelity under the standard protocol.
//
// For a diagonal correlation tensor T the protocol maps an input with Bloch
// vector a to fidelity f(a) = (1 - a^T T a) / 2. Writing d_i = t_i - t3,
//
//   f = (1 - t3 - sin^2(theta) B(phi)) / 2,   B = d1 cos^2 phi + d2 sin^2 phi,
//
// so for any azimuthally uniform ensemble
//
//   F   = (1 - t3 - <sin^2> (d1 + d2)/2) / 2
//   D^2 = ( <B^2> Var(sin^2) + <sin^2>^2 (d1 - d2)^2 / 8 ) / 4
//
// with <B^2> = (3 d1^2 + 3 d2^2 + 2 d1 d2) / 8. Both terms of D^2 are
// non-negative, which keeps the deviation accurate when it is near zero.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "telefid/core.hpp"
#include "telefid/distributions.hpp"

namespace telefid {

[[nodiscard]] inline double pointwise_fidelity(const CorrelationTensor& T, const BlochDirection& dir) {
    const double s2 = std::sin(dir.theta) * std::sin(dir.theta);
    const double c2 = std::cos(dir.theta) * std::cos(dir.theta);
    const double cp2 = std::cos(dir.phi) * std::cos(dir.phi);
    const double sp2 = std::sin(dir.phi) * std::sin(dir.phi);
    return 0.5 * (1.0 - T.t1() * s2 * cp2 - T.t2() * s2 * sp2 - T.t3() * c2);
}

[[nodiscard]] inline FidelityStats fidelity_stats(const CorrelationTensor& T, const InputDistribution& dist) {
    const Sin2Stats s = sin2_stats(dist);
    const double d1 = T.t1() - T.t3();
    const double d2 = T.t2() - T.t3();
    const double mean = 0.5 * (1.0 - T.t3() - s.mean * 0.5 * (d1 + d2));
    const double b2 = (3.0 * d1 * d1 + 3.0 * d2 * d2 + 2.0 * d1 * d2) / 8.0;
    const double var = 0.25 * (b2 * s.variance + s.mean * s.mean * (d1 - d2) * (d1 - d2) / 8.0);
    return FidelityStats{mean, var + mean * mean, std::sqrt(std::max(0.0, var))};
}

[[nodiscard]] inline double average_fidelity(const CorrelationTensor& T, const InputDistribution& dist) {
    return fidelity_stats(T, dist).mean;
}

[[nodiscard]] inline double fidelity_second_moment(const CorrelationTensor& T, const InputDistribution& dist) {
    return fidelity_stats(T, dist).second_moment;
}

/// Average fidelity of the measure-sigma_z / prepare-the-observed-pole strategy,
/// 1 - <sin^2 theta>/2. Equals 2/3 for the uniform ensemble.
[[nodiscard]] inline double classical_fidelity(const InputDistribution& dist) {
    return 1.0 - 0.5 * sin2_stats(dist).mean;
}

/// Uniform-ensemble classical fidelity 2/(d+1) for d = 2.
inline constexpr double uniform_classical_fidelity = 2.0 / 3.0;

/// Prior information carried by an ensemble: absolute and fractional excess of
/// the classical fidelity over its uniform value.
struct InfoMeasure {
    double absolute = 0.0;
    double fractional = 0.0;
};

[[nodiscard]] inline InfoMeasure prior_information(const InputDistribution& dist) {
    const double excess = classical_fidelity(dist) - uniform_classical_fidelity;
    return InfoMeasure{excess, excess / uniform_classical_fidelity};
}

/// Strictly above the classical fidelity of the ensemble.
[[nodiscard]] inline bool is_nonclassical(double fidelity, const InputDistribution& dist) {
    return fidelity > classical_fidelity(dist);
}

[[nodiscard]] inline bool is_nonclassical(const CorrelationTensor& T, const InputDistribution& dist) {
    return is_nonclassical(average_fidelity(T, dist), dist);
}

/// Werner mixing p* with (1 + p*)/2 = F_cl(dist). Werner fidelity is
/// ensemble-independent, so this is 2 F_cl - 1. Wide caps (theta0 > pi/2)
/// have F_cl < 2/3 and give p* < 1/3.
[[nodiscard]] inline double werner_threshold(const InputDistribution& dist) {
    return 2.0 * classical_fidelity(dist) - 1.0;
}

/// Werner concurrence (3 p* - 1)/2 at the threshold.
[[nodiscard]] inline double werner_critical_concurrence(const InputDistribution& dist) {
    return 0.5 * (3.0 * werner_threshold(dist) - 1.0);
}

/// Root of `excess(p) = 0` on [lo, hi] for an increasing `excess`, by bisection.
[[nodiscard]] inline double bisect_increasing(const std::function<double(double)>& excess, double lo, double hi,
                                              double tol = 1e-12) {
    double flo = excess(lo);
    double fhi = excess(hi);
    if (flo > 0.0) {
        return lo;
    }
    if (fhi < 0.0) {
        throw std::domain_error("no crossing in the bisection bracket");
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (excess(mid) > 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Smallest p in [lo, hi] at which the tensor family T(p) reaches the classical
/// fidelity of `dist`. The family's average fidelity must be non-decreasing in p.
[[nodiscard]] inline double nonclassical_threshold(const std::function<CorrelationTensor(double)>& family,
                                                   const InputDistribution& dist, double lo, double hi) {
    const double fcl = classical_fidelity(dist);
    return bisect_increasing([&](double p) { return average_fidelity(family(p), dist) - fcl; }, lo, hi);
}

/// Correlation tensor of the rank-3 Bell-diagonal slice with weights (p, (1-p)/2, (1-p)/2).
[[nodiscard]] inline CorrelationTensor bd_rank3_slice_tensor(double p) {
    return CorrelationTensor(1.0 - 2.0 * p, -p, -p);
}

/// Critical p for the rank-3 Bell-diagonal slice q = (1 - p)/2 under a polar cap:
/// (4 + c + c^2) / (8 - c - c^2), c = cos theta0.
[[nodiscard]] inline double bd_rank3_threshold(const InputDistribution& dist) {
    const auto* cap = std::get_if<PolarCap>(&dist);
    if (cap == nullptr) {
        throw std::invalid_argument("closed-form rank-3 threshold is defined for the polar cap only");
    }
    const double c = cap->cos_theta0();
    return (4.0 + c + c * c) / (8.0 - c - c * c);
}

/// Same threshold for any ensemble, found by bisection on [1/3, 1].
[[nodiscard]] inline double bd_rank3_slice_threshold(const InputDistribution& dist) {
    return nonclassical_threshold(bd_rank3_slice_tensor, dist, 1.0 / 3.0, 1.0);
}

/// Closed forms for pure states sqrt(alpha)|01> - sqrt(1-alpha)|10> with
/// concurrence C, in the form they are usually quoted. These are an independent
/// algebraic route to fidelity_stats for T = -diag(C, C, 1).
namespace closed_form {

[[nodiscard]] inline double pure_fidelity_uniform(double C) { return (2.0 + C) / 3.0; }
[[nodiscard]] inline double pure_deviation_uniform(double C) { return (1.0 - C) / (3.0 * std::sqrt(5.0)); }

[[nodiscard]] inline double pure_fidelity_cap(double C, double theta0) {
    const double c = std::cos(theta0);
    return 1.0 - (1.0 - C) * (2.0 + c) * (1.0 - c) / 6.0;
}

[[nodiscard]] inline double pure_deviation_cap(double C, double theta0) {
    const double c = std::cos(theta0);
    return (1.0 - C) / (6.0 * std::sqrt(5.0)) * (1.0 - c) * std::sqrt(4.0 * c * c + 7.0 * c + 4.0);
}

[[nodiscard]] inline double pure_fidelity_vmf(double C, double kappa) {
    return 1.0 + (1.0 - C) / (kappa * kappa) * (1.0 - kappa / std::tanh(kappa));
}

[[nodiscard]] inline double pure_deviation_vmf(double C, double kappa) {
    const double x = 1.0 - kappa / std::tanh(kappa);
    return (1.0 - C) / (kappa * kappa) * std::sqrt(2.0 * kappa * kappa + 6.0 * x - x * x);
}

[[nodiscard]] inline double average_fidelity_cap(const CorrelationTensor& T, double theta0) {
    const double c = std::cos(theta0);
    return 0.5 * (1.0 - (2.0 + c) * (1.0 - c) / 6.0 * (T.t1() + T.t2()) - T.t3() / 3.0 * (1.0 + c + c * c));
}

[[nodiscard]] inline double average_fidelity_vmf(const CorrelationTensor& T, double kappa) {
    const double kc = kappa / std::tanh(kappa);
    const double k2 = kappa * kappa;
    return 0.5 * (1.0 - (T.t1() + T.t2()) / k2 * (kc - 1.0) - T.t3() / k2 * ((2.0 + k2) - 2.0 * kc));
}

[[nodiscard]] inline double average_fidelity_uniform(const CorrelationTensor& T) {
    return 0.5 * (1.0 - (T.t1() + T.t2() + T.t3()) / 3.0);
}

[[nodiscard]] inline double classical_fidelity_cap(double theta0) {
    const double c = std::cos(theta0);
    return 1.0 - (2.0 + c) * (1.0 - c) / 6.0;
}

[[nodiscard]] inline double classical_fidelity_vmf(double kappa) {
    return 1.0 + (1.0 - kappa / std::tanh(kappa)) / (kappa * kappa);
}

[[nodiscard]] inline double werner_threshold_cap(double theta0) {
    const double c = std::cos(theta0);
    return 1.0 - (2.0 + c) * (1.0 - c) / 3.0;
}

[[nodiscard]] inline double werner_threshold_vmf(double kappa) {
    return 1.0 + 2.0 * (1.0 - kappa / std::tanh(kappa)) / (kappa * kappa);
}

}  // namespace closed_form

}  // namespace telefid

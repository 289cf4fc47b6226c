// Qutrit teleportation under restricted-latitude input ensembles.
//
// With shared state sqrt(a)|00> + sqrt(b)|11> + sqrt(c)|22>, c = 1 - a - b,
// the standard protocol gives
//
//   f = S4 + 2 K (|x|^2 |y|^2 + |z|^2 (|x|^2 + |y|^2)),
//   S4 = |x|^4 + |y|^4 + |z|^4,  K = sqrt(a)(sqrt(b) + sqrt(c)) + sqrt(bc).
//
// Because |x|^2 + |y|^2 + |z|^2 = 1 the bracket equals (1 - S4)/2, so
// f = K + (1 - K) S4 and every ensemble average is fixed by <S4>.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "telefid/compare.hpp"
#include "telefid/core.hpp"
#include "telefid/distributions.hpp"
#include "telefid/fidelity.hpp"
#include "telefid/monte_carlo.hpp"
#include "telefid/quadrature.hpp"
#include "telefid/rng.hpp"

namespace telefid {

/// Schmidt weights (a, b, 1 - a - b) of a two-qutrit pure resource.
class QutritSharedState {
public:
    QutritSharedState(double a, double b) : a_(a), b_(b) {
        if (!(a >= 0.0 && b >= 0.0 && a + b <= 1.0 + 1e-12)) {
            throw std::invalid_argument("qutrit Schmidt weights need a, b >= 0 and a + b <= 1");
        }
    }

    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double b() const noexcept { return b_; }
    [[nodiscard]] double c() const noexcept { return std::max(0.0, 1.0 - a_ - b_); }

    /// K = sqrt(a)(sqrt(b) + sqrt(c)) + sqrt(b c); 1 for the maximally entangled state, 0 for a product.
    [[nodiscard]] double coherence() const noexcept {
        return std::sqrt(a_) * (std::sqrt(b_) + std::sqrt(c())) + std::sqrt(b_ * c());
    }

private:
    double a_;
    double b_;
};

[[nodiscard]] inline double fourth_power_sum(const QutritInput& in) {
    const double x2 = std::norm(in.x);
    const double y2 = std::norm(in.y);
    const double z2 = std::norm(in.z);
    return x2 * x2 + y2 * y2 + z2 * z2;
}

[[nodiscard]] inline double qutrit_pointwise_fidelity(const QutritSharedState& s, const QutritInput& in) {
    const double x2 = std::norm(in.x);
    const double y2 = std::norm(in.y);
    const double z2 = std::norm(in.z);
    return x2 * x2 + y2 * y2 + z2 * z2 + 2.0 * s.coherence() * (x2 * y2 + z2 * (x2 + y2));
}

// ---------------------------------------------------------------------------
// Ensemble averages
// ---------------------------------------------------------------------------

namespace detail {

inline void check_theta4(double theta4_max) {
    if (!(theta4_max > 0.0 && theta4_max <= pi)) {
        throw std::invalid_argument("theta4_max must lie in (0, pi]");
    }
}

/// Nested Gauss-Legendre integral of g(input) dOmega over the chart with
/// theta4 <= theta4_max. g does not depend on phi, which contributes 2 pi.
template <class G>
double integrate_chart(G&& g, double theta4_max, std::size_t order) {
    const auto& rule = quadrature::gauss_legendre(order);
    auto node = [&](std::size_t i, double hi) { return 0.5 * hi * (1.0 + rule.nodes[i]); };
    double total = 0.0;
    for (std::size_t i4 = 0; i4 < order; ++i4) {
        const double t4 = node(i4, theta4_max);
        const double s4 = std::sin(t4);
        const double w4 = rule.weights[i4] * 0.5 * theta4_max * std::pow(s4, 4);
        for (std::size_t i3 = 0; i3 < order; ++i3) {
            const double t3 = node(i3, pi);
            const double s34 = std::sin(t3) * s4;
            const double w3 = rule.weights[i3] * 0.5 * pi * std::pow(std::sin(t3), 3);
            for (std::size_t i2 = 0; i2 < order; ++i2) {
                const double t2 = node(i2, pi);
                const double s234 = std::sin(t2) * s34;
                const double w2 = rule.weights[i2] * 0.5 * pi * std::pow(std::sin(t2), 2);
                for (std::size_t i1 = 0; i1 < order; ++i1) {
                    const double t1 = node(i1, pi);
                    const double w1 = rule.weights[i1] * 0.5 * pi * std::sin(t1);
                    const QutritInput in{{std::sin(t1) * s234, 0.0},
                                         {std::cos(t1) * s234, std::cos(t2) * s34},
                                         {std::cos(t3) * s4, std::cos(t4)}};
                    total += w4 * w3 * w2 * w1 * g(in);
                }
            }
        }
    }
    return 2.0 * pi * total;
}

}  // namespace detail

/// V(theta4_max) = int dOmega; pi^3 at theta4_max = pi.
[[nodiscard]] inline double qutrit_measure_volume(double theta4_max, std::size_t order = 24) {
    detail::check_theta4(theta4_max);
    return detail::integrate_chart([](const QutritInput&) { return 1.0; }, theta4_max, order);
}

/// Monte Carlo estimate of <S4> under the restricted measure.
[[nodiscard]] inline Estimate qutrit_mean_fourth_power(double theta4_max, std::uint64_t samples, std::uint64_t seed) {
    detail::check_theta4(theta4_max);
    if (samples == 0) {
        throw std::invalid_argument("sample count must be positive");
    }
    const RunningMoments m = parallel_accumulate<RunningMoments>(samples, seed, [&](Rng& rng, std::uint64_t count) {
        RunningMoments acc;
        for (std::uint64_t i = 0; i < count; ++i) {
            acc.push(fourth_power_sum(sample_qutrit_input(theta4_max, rng)));
        }
        return acc;
    });
    return {m.mean(), m.standard_error()};
}

/// Monte Carlo average fidelity: mean of the pointwise fidelity over N draws.
[[nodiscard]] inline Estimate qutrit_average_fidelity(const QutritSharedState& s, double theta4_max,
                                                      std::uint64_t samples, std::uint64_t seed) {
    detail::check_theta4(theta4_max);
    if (samples == 0) {
        throw std::invalid_argument("sample count must be positive");
    }
    const RunningMoments m = parallel_accumulate<RunningMoments>(samples, seed, [&](Rng& rng, std::uint64_t count) {
        RunningMoments acc;
        for (std::uint64_t i = 0; i < count; ++i) {
            acc.push(qutrit_pointwise_fidelity(s, sample_qutrit_input(theta4_max, rng)));
        }
        return acc;
    });
    return {m.mean(), m.standard_error()};
}

/// Average fidelity from a previously estimated <S4> (common random inputs
/// across many shared states).
[[nodiscard]] inline Estimate qutrit_average_fidelity(const QutritSharedState& s, const Estimate& mean_s4) {
    const double k = s.coherence();
    return {k + (1.0 - k) * mean_s4.value, (1.0 - k) * mean_s4.standard_error};
}

/// Nested-quadrature average fidelity (1/V) int dOmega f.
[[nodiscard]] inline double qutrit_average_fidelity_quadrature(const QutritSharedState& s, double theta4_max,
                                                               std::size_t order = 24) {
    detail::check_theta4(theta4_max);
    const double num =
        detail::integrate_chart([&](const QutritInput& in) { return qutrit_pointwise_fidelity(s, in); }, theta4_max,
                                order);
    return num / qutrit_measure_volume(theta4_max, order);
}

/// Classical baseline: the a = 1 (product resource) reduction, i.e. measure in
/// the computational basis and prepare the observed basis state. Equals <S4>.
[[nodiscard]] inline Estimate qutrit_classical_fidelity(double theta4_max, std::uint64_t samples,
                                                        std::uint64_t seed) {
    return qutrit_average_fidelity(QutritSharedState(1.0, 0.0), theta4_max, samples, seed);
}

[[nodiscard]] inline double qutrit_classical_fidelity_quadrature(double theta4_max, std::size_t order = 24) {
    return qutrit_average_fidelity_quadrature(QutritSharedState(1.0, 0.0), theta4_max, order);
}

/// Uniform-ensemble classical fidelity 2/(d+1) for d = 3.
inline constexpr double qutrit_uniform_classical_fidelity = 0.5;

// ---------------------------------------------------------------------------
// Dimensional advantage
// ---------------------------------------------------------------------------

/// How random pure shared states are drawn.
enum class SchmidtSampling {
    /// Schmidt weights uniform: alpha ~ U[0, 1/2] (qubits), (a, b, c) ~ uniform simplex (qutrits).
    UniformWeights,
    /// Haar-random pure state on C^d (x) C^d.
    Haar,
};

namespace detail {

inline double sample_qubit_alpha(SchmidtSampling convention, Rng& rng) {
    const double v = uniform01(rng);
    if (convention == SchmidtSampling::UniformWeights) {
        return 0.5 * v;
    }
    // Smaller Schmidt weight of a Haar 2x2 state has density 6 (1 - 2 alpha)^2 on [0, 1/2].
    return 0.5 * (1.0 - std::cbrt(1.0 - v));
}

inline double gaussian(Rng& rng) {
    // Box-Muller on our own uniforms keeps the stream platform independent.
    const double u1 = 1.0 - uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
}

inline QutritSharedState sample_qutrit_weights(SchmidtSampling convention, Rng& rng) {
    if (convention == SchmidtSampling::UniformWeights) {
        const double e1 = -std::log(1.0 - uniform01(rng));
        const double e2 = -std::log(1.0 - uniform01(rng));
        const double e3 = -std::log(1.0 - uniform01(rng));
        const double sum = e1 + e2 + e3;
        return QutritSharedState(e1 / sum, e2 / sum);
    }
    Eigen::Matrix3cd g;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            g(i, j) = std::complex<double>(gaussian(rng), gaussian(rng));
        }
    }
    const Eigen::Matrix3cd rho = g * g.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(rho, Eigen::EigenvaluesOnly);
    Eigen::Vector3d ev = solver.eigenvalues().cwiseMax(0.0);
    ev /= ev.sum();
    return QutritSharedState(ev(0), std::min(ev(1), 1.0 - ev(0)));
}

}  // namespace detail

/// Percentage enhancement of the ensemble-mean fidelity over the classical
/// bound, eta_d = (<F>_d - F_cl)/F_cl * 100, with qubit and qutrit input
/// ensembles matched in fractional prior information I_f.
struct AdvantageReport {
    int dim = 2;
    double info_fraction = 0.0;      // I_f shared by both dimensions
    double ensemble_parameter = 0.0;  // theta0 (qubit cap) or theta4_max (qutrit)
    Estimate classical_fidelity;
    Estimate mean_fidelity;
    Estimate eta_percent;
    std::uint64_t states = 0;
    std::uint64_t samples_per_state = 0;
};

/// Qubit side at a given I_f: polar cap with F_cl = (2/3)(1 + I_f); each
/// state's average fidelity is exact, so only the M state draws are random.
[[nodiscard]] inline AdvantageReport qubit_advantage(double info_fraction, std::uint64_t states, std::uint64_t seed,
                                                     SchmidtSampling convention = SchmidtSampling::UniformWeights) {
    if (states == 0) {
        throw std::invalid_argument("state count must be positive");
    }
    const double fcl = uniform_classical_fidelity * (1.0 + info_fraction);
    const MatchedPair pair = match_by_classical_fidelity(fcl);
    const InputDistribution cap = PolarCap(pair.theta0_star);
    const RunningMoments m = parallel_accumulate<RunningMoments>(states, seed, [&](Rng& rng, std::uint64_t count) {
        RunningMoments acc;
        for (std::uint64_t i = 0; i < count; ++i) {
            const double alpha = detail::sample_qubit_alpha(convention, rng);
            acc.push(average_fidelity(correlation_tensor(PureSchmidt(alpha)), cap));
        }
        return acc;
    });
    AdvantageReport r;
    r.dim = 2;
    r.info_fraction = info_fraction;
    r.ensemble_parameter = pair.theta0_star;
    r.classical_fidelity = {classical_fidelity(cap), 0.0};
    r.mean_fidelity = {m.mean(), m.standard_error()};
    r.eta_percent = {(m.mean() - r.classical_fidelity.value) / r.classical_fidelity.value * 100.0,
                     m.standard_error() / r.classical_fidelity.value * 100.0};
    r.states = states;
    return r;
}

/// Qutrit side: inputs restricted to theta4 <= theta4_max. <S4> is estimated
/// once from N inputs and shared by all M states (f is linear in S4).
[[nodiscard]] inline AdvantageReport qutrit_advantage(double theta4_max, std::uint64_t states,
                                                      std::uint64_t samples_per_state, std::uint64_t seed,
                                                      SchmidtSampling convention = SchmidtSampling::UniformWeights) {
    if (states == 0) {
        throw std::invalid_argument("state count must be positive");
    }
    const Estimate s4 = qutrit_mean_fourth_power(theta4_max, samples_per_state, seed);
    const RunningMoments k =
        parallel_accumulate<RunningMoments>(states, seed ^ 0x9e3779b97f4a7c15ULL, [&](Rng& rng, std::uint64_t count) {
            RunningMoments acc;
            for (std::uint64_t i = 0; i < count; ++i) {
                acc.push(detail::sample_qutrit_weights(convention, rng).coherence());
            }
            return acc;
        });
    // <F> = <K> + (1 - <K>) S4 and F_cl = S4, so eta = <K> (1 - S4) / S4 * 100.
    const double kbar = k.mean();
    const double s = s4.value;
    AdvantageReport r;
    r.dim = 3;
    r.info_fraction = (s - qutrit_uniform_classical_fidelity) / qutrit_uniform_classical_fidelity;
    r.ensemble_parameter = theta4_max;
    r.classical_fidelity = s4;
    r.mean_fidelity = {kbar + (1.0 - kbar) * s, std::hypot(k.standard_error() * (1.0 - s), (1.0 - kbar) * s4.standard_error)};
    const double eta = kbar * (1.0 - s) / s * 100.0;
    const double d_k = (1.0 - s) / s * 100.0;
    const double d_s = -kbar / (s * s) * 100.0;
    r.eta_percent = {eta, std::hypot(d_k * k.standard_error(), d_s * s4.standard_error)};
    r.states = states;
    r.samples_per_state = samples_per_state;
    return r;
}

/// eta_d for d = 2 or 3 at the I_f of the qutrit ensemble theta4 <= theta4_max.
[[nodiscard]] inline AdvantageReport dimensional_advantage(int dim, double theta4_max, std::uint64_t states,
                                                           std::uint64_t samples_per_state, std::uint64_t seed,
                                                           SchmidtSampling convention = SchmidtSampling::UniformWeights) {
    if (dim != 2 && dim != 3) {
        throw std::invalid_argument("dimension must be 2 or 3");
    }
    const AdvantageReport qutrit = qutrit_advantage(theta4_max, states, samples_per_state, seed, convention);
    if (dim == 3) {
        return qutrit;
    }
    AdvantageReport qubit = qubit_advantage(qutrit.info_fraction, states, seed, convention);
    // Propagate the uncertainty of the matched I_f into eta_2.
    const double di = 2.0 * qutrit.classical_fidelity.standard_error;
    if (di > 0.0) {
        const double up = qubit_advantage(qutrit.info_fraction + di, states, seed, convention).eta_percent.value;
        const double dn = qubit_advantage(qutrit.info_fraction - di, states, seed, convention).eta_percent.value;
        qubit.eta_percent.standard_error = std::hypot(qubit.eta_percent.standard_error, 0.5 * (up - dn));
    }
    qubit.samples_per_state = samples_per_state;
    return qubit;
}

}  // namespace telefid

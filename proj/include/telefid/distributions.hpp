// Input ensembles on the Bloch sphere and on the qutrit state manifold.
//
// Every qubit ensemble here is azimuthally uniform, so all averages reduce to
// moments of u = cos(theta). The moment table and the sin^2 statistics are
// evaluated in forms that stay accurate at the degenerate ends (tiny caps,
// kappa -> 0, large kappa).
#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <complex>
#include <stdexcept>
#include <variant>

#include "telefid/core.hpp"
#include "telefid/quadrature.hpp"
#include "telefid/rng.hpp"

namespace telefid {

struct Uniform {};

/// Uniform density on the cap theta <= theta0. theta0 = 0 is accepted as the
/// point-mass limit for moment-based quantities; density() rejects it.
class PolarCap {
public:
    explicit PolarCap(double theta0) : theta0_(theta0) {
        if (!(theta0 >= 0.0 && theta0 <= pi)) {
            throw std::invalid_argument("polar cap angle must lie in [0, pi]");
        }
        const double s = std::sin(0.5 * theta0);
        one_minus_cos_ = 2.0 * s * s;
        cos_ = 1.0 - one_minus_cos_;
    }

    [[nodiscard]] double theta0() const noexcept { return theta0_; }
    [[nodiscard]] double cos_theta0() const noexcept { return cos_; }
    /// 1 - cos(theta0) without cancellation.
    [[nodiscard]] double one_minus_cos() const noexcept { return one_minus_cos_; }

private:
    double theta0_;
    double cos_;
    double one_minus_cos_;
};

/// p(theta, phi) = kappa / (4 pi sinh kappa) exp(kappa cos theta).
class VonMisesFisher {
public:
    explicit VonMisesFisher(double kappa) : kappa_(kappa) {
        if (!(kappa >= 0.0 && std::isfinite(kappa))) {
            throw std::invalid_argument("von Mises-Fisher concentration must be finite and >= 0");
        }
    }

    [[nodiscard]] double kappa() const noexcept { return kappa_; }

private:
    double kappa_;
};

using InputDistribution = std::variant<Uniform, PolarCap, VonMisesFisher>;

[[nodiscard]] inline std::string to_string(const InputDistribution& dist) {
    return std::visit(overloaded{
                          [](const Uniform&) { return std::string("uniform"); },
                          [](const PolarCap& c) { return "cap(theta0=" + std::to_string(c.theta0()) + ")"; },
                          [](const VonMisesFisher& v) { return "vmf(kappa=" + std::to_string(v.kappa()) + ")"; },
                      },
                      dist);
}

namespace vmf {

// Below this kappa the closed forms lose digits to cancellation; power series take over.
inline constexpr double series_cutoff = 0.1;
inline constexpr double moment_series_cutoff = 2.0;

/// <cos theta> = coth(kappa) - 1/kappa.
[[nodiscard]] inline double mean_cos(double kappa) {
    if (kappa < series_cutoff) {
        const double k2 = kappa * kappa;
        // kappa coth kappa = sum 2^{2n} B_{2n} kappa^{2n} / (2n)!
        return kappa * (1.0 / 3.0 + k2 * (-1.0 / 45.0 + k2 * (2.0 / 945.0 + k2 * (-1.0 / 4725.0 + k2 * (2.0 / 93555.0)))));
    }
    return 1.0 / std::tanh(kappa) - 1.0 / kappa;
}

/// (kappa coth kappa - 1) / kappa^2, the recurring combination in the vMF closed forms.
[[nodiscard]] inline double coth_term(double kappa) {
    if (kappa < series_cutoff) {
        const double k2 = kappa * kappa;
        return 1.0 / 3.0 + k2 * (-1.0 / 45.0 + k2 * (2.0 / 945.0 + k2 * (-1.0 / 4725.0 + k2 * (2.0 / 93555.0))));
    }
    return mean_cos(kappa) / kappa;
}

}  // namespace vmf

// ---------------------------------------------------------------------------
// Density
// ---------------------------------------------------------------------------

[[nodiscard]] inline double density(const InputDistribution& dist, const BlochDirection& dir) {
    return std::visit(
        overloaded{
            [](const Uniform&) { return 1.0 / (4.0 * pi); },
            [&](const PolarCap& cap) {
                if (cap.theta0() == 0.0) {
                    throw std::domain_error("degenerate polar cap has no density");
                }
                return dir.theta <= cap.theta0() ? 1.0 / (2.0 * pi * cap.one_minus_cos()) : 0.0;
            },
            [&](const VonMisesFisher& v) {
                const double k = v.kappa();
                if (k == 0.0) {
                    return 1.0 / (4.0 * pi);
                }
                // kappa e^{kappa (u - 1)} / (2 pi (1 - e^{-2 kappa})), overflow-free form.
                const double u = std::cos(dir.theta);
                return k * std::exp(k * (u - 1.0)) / (2.0 * pi * -std::expm1(-2.0 * k));
            },
        },
        dist);
}

// ---------------------------------------------------------------------------
// Moments of cos(theta)
// ---------------------------------------------------------------------------

/// <cos^k theta> for k = 0..4.
struct MomentTable {
    std::array<double, 5> m{1.0, 0.0, 0.0, 0.0, 0.0};

    [[nodiscard]] double operator[](std::size_t k) const { return m.at(k); }
};

namespace detail {

inline MomentTable vmf_moments_series(double kappa) {
    // int_{-1}^{1} u^k e^{kappa u} du = sum_n kappa^n / n! * 2/(k+n+1) over k+n even.
    std::array<double, 5> s{};
    double term = 1.0;
    for (int n = 0; n < 60; ++n) {
        if (n > 0) {
            term *= kappa / n;
        }
        for (int k = 0; k < 5; ++k) {
            if ((k + n) % 2 == 0) {
                s[k] += term * 2.0 / (k + n + 1);
            }
        }
        if (term < 1e-20) {
            break;
        }
    }
    MomentTable t;
    for (int k = 0; k < 5; ++k) {
        t.m[k] = s[k] / s[0];
    }
    t.m[0] = 1.0;
    return t;
}

inline MomentTable vmf_moments_recursion(double kappa) {
    // Integration by parts: M_k = [k even ? 1 : coth kappa] - (k / kappa) M_{k-1}.
    const double coth = 1.0 / std::tanh(kappa);
    MomentTable t;
    for (int k = 1; k < 5; ++k) {
        t.m[k] = (k % 2 == 0 ? 1.0 : coth) - (k / kappa) * t.m[k - 1];
    }
    return t;
}

}  // namespace detail

[[nodiscard]] inline MomentTable cos_moments(const InputDistribution& dist) {
    return std::visit(
        overloaded{
            [](const Uniform&) { return MomentTable{{1.0, 0.0, 1.0 / 3.0, 0.0, 1.0 / 5.0}}; },
            [](const PolarCap& cap) {
                // (1 - c^{k+1}) / ((k+1)(1 - c)) = (1 + c + ... + c^k) / (k+1)
                const double c = cap.cos_theta0();
                MomentTable t;
                double partial = 1.0;
                double power = 1.0;
                for (int k = 1; k < 5; ++k) {
                    power *= c;
                    partial += power;
                    t.m[k] = partial / (k + 1);
                }
                return t;
            },
            [](const VonMisesFisher& v) {
                const double k = v.kappa();
                if (k < vmf::moment_series_cutoff) {
                    return detail::vmf_moments_series(k);
                }
                return detail::vmf_moments_recursion(k);
            },
        },
        dist);
}

/// Mean and variance of sin^2(theta) under the ensemble. These two numbers
/// determine every azimuthally-averaged qubit fidelity statistic.
struct Sin2Stats {
    double mean = 0.0;
    double variance = 0.0;
};

[[nodiscard]] inline Sin2Stats sin2_stats(const InputDistribution& dist) {
    return std::visit(
        overloaded{
            [](const Uniform&) { return Sin2Stats{2.0 / 3.0, 4.0 / 45.0}; },
            [](const PolarCap& cap) {
                const double c = cap.cos_theta0();
                const double omc = cap.one_minus_cos();
                return Sin2Stats{omc * (2.0 + c) / 3.0, omc * omc * (4.0 * c * c + 7.0 * c + 4.0) / 45.0};
            },
            [](const VonMisesFisher& v) {
                const double k = v.kappa();
                const double mean = 2.0 * vmf::coth_term(k);
                if (k < vmf::moment_series_cutoff) {
                    const MomentTable t = detail::vmf_moments_series(k);
                    const double s4 = 1.0 - 2.0 * t[2] + t[4];
                    return Sin2Stats{mean, s4 - mean * mean};
                }
                // 4 (2 kappa^2 - 6 y - y^2) / kappa^4 with y = kappa coth kappa - 1
                const double y = k * vmf::mean_cos(k);
                const double k2 = k * k;
                return Sin2Stats{mean, 4.0 * (2.0 * k2 - 6.0 * y - y * y) / (k2 * k2)};
            },
        },
        dist);
}

// ---------------------------------------------------------------------------
// Mean polar angle
// ---------------------------------------------------------------------------

/// <theta> over the ensemble.
[[nodiscard]] inline double mean_polar_angle(const InputDistribution& dist) {
    return std::visit(
        overloaded{
            [](const Uniform&) { return 0.5 * pi; },
            [](const PolarCap& cap) {
                const double t = cap.theta0();
                if (t == 0.0) {
                    return 0.0;
                }
                if (t < 0.5) {
                    // sin t - t cos t = sum_n (-1)^(n+1) 2n t^(2n+1) / (2n+1)!
                    double num = 0.0;
                    double power = t;
                    double fact = 1.0;
                    for (int n = 1; n <= 10; ++n) {
                        power *= t * t;
                        fact *= (2.0 * n) * (2.0 * n + 1.0);
                        num += (n % 2 ? 1.0 : -1.0) * 2.0 * n * power / fact;
                    }
                    return num / cap.one_minus_cos();
                }
                return (std::sin(t) - t * cap.cos_theta0()) / cap.one_minus_cos();
            },
            [](const VonMisesFisher& v) {
                const double k = v.kappa();
                if (k == 0.0) {
                    return 0.5 * pi;
                }
                // Weight sin(theta) e^{kappa (cos theta - 1)}; negligible beyond ~9/sqrt(kappa).
                const double upper = std::min(pi, 12.0 / std::sqrt(k));
                auto weight = [k](double th) { return std::sin(th) * std::exp(k * (std::cos(th) - 1.0)); };
                const double norm = quadrature::integrate_composite(weight, 0.0, upper, 8, 48);
                const double first =
                    quadrature::integrate_composite([&](double th) { return th * weight(th); }, 0.0, upper, 8, 48);
                return first / norm;
            },
        },
        dist);
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

/// One draw from the ensemble.
[[nodiscard]] inline BlochDirection sample(const InputDistribution& dist, Rng& rng) {
    const double v = uniform01(rng);
    const double phi = 2.0 * pi * uniform01(rng);
    const double u = std::visit(overloaded{
                                    [&](const Uniform&) { return 1.0 - 2.0 * v; },
                                    [&](const PolarCap& cap) { return 1.0 - cap.one_minus_cos() * v; },
                                    [&](const VonMisesFisher& vm) {
                                        const double k = vm.kappa();
                                        if (k == 0.0) {
                                            return 1.0 - 2.0 * v;
                                        }
                                        // exact inverse CDF of cos(theta)
                                        return 1.0 + std::log1p(v * std::expm1(-2.0 * k)) / k;
                                    },
                                },
                                dist);
    return BlochDirection{std::acos(std::clamp(u, -1.0, 1.0)), phi};
}

// ---------------------------------------------------------------------------
// Qutrit inputs
// ---------------------------------------------------------------------------

namespace detail {

/// int_0^theta sin^k(t) dt for k = 1..4. Small angles use forms free of
/// cancellation so that the sampler resolves the low-theta tail.
inline double sin_power_integral(int k, double theta) {
    const double s = std::sin(0.5 * theta);
    const double omc = 2.0 * s * s;
    const double t2 = theta * theta;
    auto horner = [t2](const auto& coeffs) {
        double acc = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
            acc = acc * t2 + *it;
        }
        return acc;
    };
    switch (k) {
        case 1:
            return omc;
        case 2:
            if (theta < 0.5) {
                static constexpr std::array<double, 10> c{1.0 / 3,         -1.0 / 15,           2.0 / 315,
                                                          -1.0 / 2835,     2.0 / 155925,        -2.0 / 6081075,
                                                          4.0 / 638512875, -1.0 / 10854718875., 2.0 / 1856156927625.,
                                                          -2.0 / 194896477400625.};
                return theta * t2 * horner(c);
            }
            return 0.5 * (theta - std::sin(theta) * std::cos(theta));
        case 3:
            // 2/3 - c + c^3/3 = (1 - c)^2 (2 + c) / 3
            return omc * omc * (3.0 - omc) / 3.0;
        case 4:
            if (theta < 0.5) {
                static constexpr std::array<double, 10> c{1.0 / 5,           -2.0 / 21,      1.0 / 45,
                                                          -34.0 / 10395,     62.0 / 184275,  -4.0 / 155925,
                                                          5461.0 / 3618239625., -514.0 / 7279046775.,
                                                          146.0 / 54273594375., -5084.0 / 59768253069525.};
                return theta * t2 * t2 * horner(c);
            }
            return 3.0 * theta / 8.0 - std::sin(2.0 * theta) / 4.0 + std::sin(4.0 * theta) / 32.0;
        default:
            throw std::invalid_argument("unsupported sine power");
    }
}

/// Solve int_0^theta sin^k = target on [0, upper] by Newton steps kept inside a
/// shrinking bisection bracket; terminates at bracket width 1e-12.
inline double invert_sin_power(int k, double target, double upper) {
    if (k == 1) {
        return std::acos(std::clamp(1.0 - target, -1.0, 1.0));
    }
    double lo = 0.0;
    double hi = upper;
    double theta = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double f = sin_power_integral(k, theta) - target;
        if (f > 0.0) {
            hi = theta;
        } else {
            lo = theta;
        }
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, theta)) {
            break;
        }
        const double deriv = std::pow(std::sin(theta), k);
        double next = deriv > 0.0 ? theta - f / deriv : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        if (std::abs(next - theta) <= 2.0 * std::numeric_limits<double>::epsilon() * theta) {
            theta = next;
            break;
        }
        theta = next;
    }
    return theta;
}

}  // namespace detail

/// Pure qutrit drawn from the measure
///   dOmega = dphi dth1 dth2 dth3 dth4 sin th1 sin^2 th2 sin^3 th3 sin^4 th4
/// with th4 <= theta4_max, mapped through the hyperspherical chart
///   x = e^{i phi} sin th1 sin th2 sin th3 sin th4
///   y = cos th1 sin th2 sin th3 sin th4 + i cos th2 sin th3 sin th4
///   z = cos th3 sin th4 + i cos th4.
/// theta4_max = pi is the Haar-uniform pure qutrit.
[[nodiscard]] inline QutritInput sample_qutrit_input(double theta4_max, Rng& rng) {
    if (!(theta4_max > 0.0 && theta4_max <= pi)) {
        throw std::invalid_argument("theta4_max must lie in (0, pi]");
    }
    std::array<double, 4> th{};
    for (int k = 1; k <= 3; ++k) {
        const double total = detail::sin_power_integral(k, pi);
        th[k - 1] = detail::invert_sin_power(k, uniform01(rng) * total, pi);
    }
    const double total4 = detail::sin_power_integral(4, theta4_max);
    th[3] = detail::invert_sin_power(4, uniform01(rng) * total4, theta4_max);
    const double phi = 2.0 * pi * uniform01(rng);

    const double s4 = std::sin(th[3]);
    const double s34 = std::sin(th[2]) * s4;
    const double s234 = std::sin(th[1]) * s34;
    const double s1234 = std::sin(th[0]) * s234;
    return QutritInput{
        std::complex<double>(std::cos(phi) * s1234, std::sin(phi) * s1234),
        std::complex<double>(std::cos(th[0]) * s234, std::cos(th[1]) * s34),
        std::complex<double>(std::cos(th[2]) * s4, std::cos(th[3])),
    };
}

}  // namespace telefid

// Domain types shared by the qubit and qutrit teleportation calculators.
#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>

namespace telefid {

inline constexpr double pi = std::numbers::pi;

/// Diagonal correlation matrix diag(t1, t2, t3) of a two-qubit state,
/// t_i = Tr(sigma_i (x) sigma_i rho). This is all the standard protocol sees.
class CorrelationTensor {
public:
    constexpr CorrelationTensor() = default;
    CorrelationTensor(double t1, double t2, double t3) : t_{t1, t2, t3} {
        for (double t : t_) {
            if (!(std::abs(t) <= 1.0 + 1e-12)) {
                throw std::invalid_argument("correlation tensor entries must lie in [-1, 1]");
            }
        }
    }

    [[nodiscard]] constexpr double t1() const noexcept { return t_[0]; }
    [[nodiscard]] constexpr double t2() const noexcept { return t_[1]; }
    [[nodiscard]] constexpr double t3() const noexcept { return t_[2]; }
    [[nodiscard]] constexpr double operator[](std::size_t i) const { return t_[i]; }

    friend constexpr bool operator==(const CorrelationTensor&, const CorrelationTensor&) = default;

private:
    std::array<double, 3> t_{0.0, 0.0, 0.0};
};

/// Input direction on the Bloch sphere. theta in [0, pi], phi in [0, 2 pi).
struct BlochDirection {
    double theta = 0.0;
    double phi = 0.0;

    [[nodiscard]] std::array<double, 3> bloch_vector() const noexcept {
        const double s = std::sin(theta);
        return {s * std::cos(phi), s * std::sin(phi), std::cos(theta)};
    }
};

// ---------------------------------------------------------------------------
// Shared-state families
// ---------------------------------------------------------------------------

/// sqrt(alpha)|01> - sqrt(1-alpha)|10>, alpha in [0, 1/2].
struct PureSchmidt {
    double alpha = 0.5;

    explicit PureSchmidt(double a) : alpha(a) {
        if (!(a >= 0.0 && a <= 0.5)) {
            throw std::invalid_argument("Schmidt weight alpha must lie in [0, 1/2]");
        }
    }

    /// Schmidt weight with the requested concurrence.
    static PureSchmidt from_concurrence(double c) {
        if (!(c >= 0.0 && c <= 1.0)) {
            throw std::invalid_argument("concurrence must lie in [0, 1]");
        }
        // alpha = (1 - sqrt(1 - C^2)) / 2, written to avoid cancellation at small C.
        const double root = std::sqrt((1.0 - c) * (1.0 + c));
        return PureSchmidt{0.5 * c * c / (1.0 + root)};
    }
};

/// p |psi-><psi-| + (1 - p) I/4.
struct Werner {
    double p = 1.0;

    explicit Werner(double prob) : p(prob) {
        if (!(prob >= 0.0 && prob <= 1.0)) {
            throw std::invalid_argument("Werner mixing p must lie in [0, 1]");
        }
    }
};

/// Mixture of Bell states. Weights are kept sorted descending and are
/// attached, in that order, to |psi->, |psi+>, |phi+>, |phi->.
class BellDiagonal {
public:
    explicit BellDiagonal(std::array<double, 4> weights) : w_(weights) {
        double sum = 0.0;
        for (double w : w_) {
            if (!(w >= 0.0)) {
                throw std::invalid_argument("Bell-diagonal weights must be non-negative");
            }
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-12) {
            throw std::invalid_argument("Bell-diagonal weights must sum to 1");
        }
        std::sort(w_.begin(), w_.end(), std::greater<>());
    }

    /// Rank-3 state with weights (p, q, 1 - p - q).
    static BellDiagonal rank3(double p, double q) {
        // Rounding in 1 - p - q must not trip the sign check.
        const double r = 1.0 - p - q;
        return BellDiagonal({p, q, r < 0.0 && r > -1e-14 ? 0.0 : r, 0.0});
    }

    /// The q = (1 - p)/2 slice of the rank-3 family.
    static BellDiagonal rank3_symmetric(double p) { return rank3(p, 0.5 * (1.0 - p)); }

    [[nodiscard]] const std::array<double, 4>& weights() const noexcept { return w_; }
    [[nodiscard]] double max_weight() const noexcept { return w_[0]; }

private:
    std::array<double, 4> w_;
};

using StateFamily = std::variant<PureSchmidt, Werner, BellDiagonal>;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

/// C_alpha = 2 sqrt(alpha (1 - alpha)).
[[nodiscard]] inline double schmidt_concurrence(double alpha) {
    return 2.0 * std::sqrt(alpha * (1.0 - alpha));
}

[[nodiscard]] inline double concurrence(const StateFamily& family) {
    return std::visit(
        overloaded{
            [](const PureSchmidt& s) { return schmidt_concurrence(s.alpha); },
            [](const Werner& w) { return std::max(0.0, 0.5 * (3.0 * w.p - 1.0)); },
            [](const BellDiagonal& bd) { return std::max(0.0, 2.0 * bd.max_weight() - 1.0); },
        },
        family);
}

[[nodiscard]] inline CorrelationTensor correlation_tensor(const StateFamily& family) {
    return std::visit(
        overloaded{
            [](const PureSchmidt& s) {
                const double c = schmidt_concurrence(s.alpha);
                return CorrelationTensor(-c, -c, -1.0);
            },
            [](const Werner& w) { return CorrelationTensor(-w.p, -w.p, -w.p); },
            [](const BellDiagonal& bd) {
                // psi- -> (-1,-1,-1), psi+ -> (1,1,-1), phi+ -> (1,-1,1), phi- -> (-1,1,1)
                const auto& w = bd.weights();
                return CorrelationTensor(-w[0] + w[1] + w[2] - w[3],
                                         -w[0] + w[1] - w[2] + w[3],
                                         -w[0] - w[1] + w[2] + w[3]);
            },
        },
        family);
}

// ---------------------------------------------------------------------------
// Fidelity statistics
// ---------------------------------------------------------------------------

/// First two moments of the pointwise fidelity over an input ensemble.
struct FidelityStats {
    double mean = 0.0;
    double second_moment = 0.0;
    double deviation = 0.0;
};

/// Pure qutrit x|0> + y|1> + z|2>.
struct QutritInput {
    std::complex<double> x;
    std::complex<double> y;
    std::complex<double> z;

    [[nodiscard]] double norm_squared() const noexcept { return std::norm(x) + std::norm(y) + std::norm(z); }
};

[[nodiscard]] inline std::string to_string(const StateFamily& family) {
    return std::visit(overloaded{
                          [](const PureSchmidt& s) { return "pure(alpha=" + std::to_string(s.alpha) + ")"; },
                          [](const Werner& w) { return "werner(p=" + std::to_string(w.p) + ")"; },
                          [](const BellDiagonal& bd) {
                              const auto& w = bd.weights();
                              return "bd(" + std::to_string(w[0]) + "," + std::to_string(w[1]) + "," +
                                     std::to_string(w[2]) + "," + std::to_string(w[3]) + ")";
                          },
                      },
                      family);
}

}  // namespace telefid

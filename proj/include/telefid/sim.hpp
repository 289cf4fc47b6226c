// Dense state simulation of the standard teleportation protocol.
//
// Alice measures (input, her half of the resource) in the Bell basis and Bob
// applies the correction that would be exact for the maximally entangled
// resource (|psi-> for qubits, sum_j |jj>/sqrt 3 for qutrits). Outcome
// probabilities are computed exactly for every run and one outcome is drawn.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "telefid/core.hpp"
#include "telefid/distributions.hpp"
#include "telefid/monte_carlo.hpp"
#include "telefid/qutrit.hpp"
#include "telefid/rng.hpp"

namespace telefid::sim {

using cd = std::complex<double>;

/// One execution of the protocol.
template <class Input>
struct ProtocolRun {
    Input input;
    int bell_outcome = 0;
    double output_fidelity = 0.0;
};

/// Result of a simulated ensemble.
///
/// `run` summarizes the per-run fidelity |<in|out>|^2 of the drawn outcome.
/// `input` summarizes the outcome-averaged fidelity of each sampled input; its
/// mean equals the run mean in expectation and its spread is the fidelity
/// deviation over the input ensemble.
struct EstimatorReport {
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    Estimate run;
    Estimate input;
    double deviation = 0.0;
    double deviation_standard_error = 0.0;
    std::vector<double> outcome_frequencies;
};

namespace detail {

/// Draws an index from a discrete distribution.
template <std::size_t N>
int draw_outcome(const std::array<double, N>& probs, Rng& rng) {
    double total = 0.0;
    for (double p : probs) {
        total += p;
    }
    const double r = uniform01(rng) * total;
    double acc = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
        acc += probs[k];
        if (r < acc) {
            return static_cast<int>(k);
        }
    }
    for (std::size_t k = N; k-- > 0;) {
        if (probs[k] > 0.0) {
            return static_cast<int>(k);
        }
    }
    return 0;
}

template <std::size_t Outcomes>
struct Accumulator {
    RunningMoments run;
    RunningMoments input;
    std::array<std::uint64_t, Outcomes> counts{};

    void merge(const Accumulator& other) {
        run.merge(other.run);
        input.merge(other.input);
        for (std::size_t k = 0; k < Outcomes; ++k) {
            counts[k] += other.counts[k];
        }
    }
};

template <std::size_t Outcomes>
EstimatorReport make_report(const Accumulator<Outcomes>& acc, std::uint64_t seed) {
    EstimatorReport r;
    r.samples = acc.run.count();
    r.seed = seed;
    r.run = {acc.run.mean(), acc.run.standard_error()};
    r.input = {acc.input.mean(), acc.input.standard_error()};
    r.deviation = acc.input.deviation();
    r.deviation_standard_error = acc.input.deviation_standard_error();
    r.outcome_frequencies.resize(Outcomes);
    for (std::size_t k = 0; k < Outcomes; ++k) {
        r.outcome_frequencies[k] = static_cast<double>(acc.counts[k]) / static_cast<double>(r.samples);
    }
    return r;
}

inline void check_samples(std::uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("sample count must be positive");
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Qubits
// ---------------------------------------------------------------------------

/// Two-qubit density operator of a shared-state family, basis index 2a + b
/// (a = Alice, b = Bob).
[[nodiscard]] inline Eigen::Matrix4cd shared_density(const StateFamily& family) {
    const double r = 1.0 / std::sqrt(2.0);
    // Bell vectors in the order psi-, psi+, phi+, phi- (the BellDiagonal role order).
    const std::array<Eigen::Vector4cd, 4> bell{
        Eigen::Vector4cd(0, r, -r, 0),
        Eigen::Vector4cd(0, r, r, 0),
        Eigen::Vector4cd(r, 0, 0, r),
        Eigen::Vector4cd(r, 0, 0, -r),
    };
    return std::visit(overloaded{
                          [&](const PureSchmidt& s) -> Eigen::Matrix4cd {
                              const Eigen::Vector4cd psi(0, std::sqrt(s.alpha), -std::sqrt(1.0 - s.alpha), 0);
                              return psi * psi.adjoint();
                          },
                          [&](const Werner& w) -> Eigen::Matrix4cd {
                              return w.p * bell[0] * bell[0].adjoint() +
                                     (1.0 - w.p) / 4.0 * Eigen::Matrix4cd::Identity();
                          },
                          [&](const BellDiagonal& bd) -> Eigen::Matrix4cd {
                              Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
                              for (int k = 0; k < 4; ++k) {
                                  rho += bd.weights()[k] * bell[k] * bell[k].adjoint();
                              }
                              return rho;
                          },
                      },
                      family);
}

/// Outcome probabilities and conditional fidelities for one input.
struct QubitOutcomes {
    std::array<double, 4> probability{};
    std::array<double, 4> fidelity{};

    [[nodiscard]] double averaged_fidelity() const {
        double f = 0.0;
        for (int k = 0; k < 4; ++k) {
            f += probability[k] * fidelity[k];
        }
        return f;
    }
};

/// Standard qubit protocol for a fixed shared state.
class QubitProtocol {
public:
    explicit QubitProtocol(const StateFamily& family) : QubitProtocol(shared_density(family)) {}

    explicit QubitProtocol(const Eigen::Matrix4cd& rho) : rho_(rho) {
        const double r = 1.0 / std::sqrt(2.0);
        // Bell basis on (input, Alice), index 2i + a, ordered phi+, phi-, psi+, psi-.
        bell_ = {Eigen::Vector4cd(r, 0, 0, r), Eigen::Vector4cd(r, 0, 0, -r), Eigen::Vector4cd(0, r, r, 0),
                 Eigen::Vector4cd(0, r, -r, 0)};
        const Eigen::Vector4cd singlet(0, r, -r, 0);
        // V_k = 2 <B_k|_{in,A} (. (x) |psi->_{A,B}); Bob's correction is V_k^dagger.
        for (int k = 0; k < 4; ++k) {
            Eigen::Matrix2cd v = Eigen::Matrix2cd::Zero();
            for (int i = 0; i < 2; ++i) {
                for (int a = 0; a < 2; ++a) {
                    for (int b = 0; b < 2; ++b) {
                        v(b, i) += 2.0 * std::conj(bell_[k](2 * i + a)) * singlet(2 * a + b);
                    }
                }
            }
            map_[k] = v;
        }
    }

    [[nodiscard]] static Eigen::Vector2cd input_state(const BlochDirection& dir) {
        return {cd(std::cos(0.5 * dir.theta), 0.0), std::polar(std::sin(0.5 * dir.theta), dir.phi)};
    }

    [[nodiscard]] QubitOutcomes outcomes(const BlochDirection& dir) const {
        const Eigen::Vector2cd in = input_state(dir);
        QubitOutcomes out;
        for (int k = 0; k < 4; ++k) {
            // c_a = sum_i conj(B_k[i, a]) in_i; Bob's unnormalized state is K rho K^dagger, K = c^T (x) I.
            const cd c0 = std::conj(bell_[k](0)) * in(0) + std::conj(bell_[k](2)) * in(1);
            const cd c1 = std::conj(bell_[k](1)) * in(0) + std::conj(bell_[k](3)) * in(1);
            Eigen::Matrix<cd, 2, 4> kraus;
            kraus << c0, 0, c1, 0, 0, c0, 0, c1;
            const Eigen::Matrix2cd bob = kraus * rho_ * kraus.adjoint();
            const double p = bob.trace().real();
            out.probability[k] = p;
            if (p > 0.0) {
                const Eigen::Vector2cd target = map_[k] * in;
                out.fidelity[k] = (target.adjoint() * bob * target)(0, 0).real() / p;
            }
        }
        return out;
    }

    [[nodiscard]] ProtocolRun<BlochDirection> run(const BlochDirection& dir, Rng& rng) const {
        const QubitOutcomes o = outcomes(dir);
        const int k = detail::draw_outcome(o.probability, rng);
        return {dir, k, o.fidelity[k]};
    }

private:
    Eigen::Matrix4cd rho_;
    std::array<Eigen::Vector4cd, 4> bell_;
    std::array<Eigen::Matrix2cd, 4> map_;
};

[[nodiscard]] inline EstimatorReport simulate_qubit(const StateFamily& shared, const InputDistribution& dist,
                                                    std::uint64_t samples, std::uint64_t seed) {
    detail::check_samples(samples);
    const QubitProtocol protocol(shared);
    using Acc = detail::Accumulator<4>;
    const Acc acc = parallel_accumulate<Acc>(samples, seed, [&](Rng& rng, std::uint64_t count) {
        Acc a;
        for (std::uint64_t i = 0; i < count; ++i) {
            const BlochDirection dir = sample(dist, rng);
            const QubitOutcomes o = protocol.outcomes(dir);
            const int k = detail::draw_outcome(o.probability, rng);
            a.run.push(o.fidelity[k]);
            a.input.push(o.averaged_fidelity());
            ++a.counts[k];
        }
        return a;
    });
    return detail::make_report(acc, seed);
}

/// Measure sigma_z, send the bit, prepare the observed pole state.
[[nodiscard]] inline EstimatorReport simulate_classical(const InputDistribution& dist, std::uint64_t samples,
                                                        std::uint64_t seed) {
    detail::check_samples(samples);
    using Acc = detail::Accumulator<2>;
    const Acc acc = parallel_accumulate<Acc>(samples, seed, [&](Rng& rng, std::uint64_t count) {
        Acc a;
        for (std::uint64_t i = 0; i < count; ++i) {
            const BlochDirection dir = sample(dist, rng);
            const double p0 = std::cos(0.5 * dir.theta) * std::cos(0.5 * dir.theta);
            const std::array<double, 2> probs{p0, 1.0 - p0};
            const int k = detail::draw_outcome(probs, rng);
            a.run.push(k == 0 ? p0 : 1.0 - p0);
            a.input.push(p0 * p0 + (1.0 - p0) * (1.0 - p0));
            ++a.counts[k];
        }
        return a;
    });
    return detail::make_report(acc, seed);
}

// ---------------------------------------------------------------------------
// Qutrits
// ---------------------------------------------------------------------------

/// Standard qutrit protocol with shared state sqrt(a)|00> + sqrt(b)|11> + sqrt(1-a-b)|22>.
class QutritProtocol {
public:
    explicit QutritProtocol(const QutritSharedState& s) {
        const std::array<double, 3> lambda{s.a(), s.b(), s.c()};
        shared_.setZero();
        for (int j = 0; j < 3; ++j) {
            shared_(3 * j + j) = std::sqrt(lambda[j]);
        }
        // Weyl-Bell basis |B_{mn}> = sum_j w^{jn} |j>|j+m> / sqrt 3, index 3i + a.
        const cd omega = std::polar(1.0, 2.0 * pi / 3.0);
        for (int m = 0; m < 3; ++m) {
            for (int n = 0; n < 3; ++n) {
                Eigen::Matrix<cd, 9, 1> v = Eigen::Matrix<cd, 9, 1>::Zero();
                for (int j = 0; j < 3; ++j) {
                    v(3 * j + (j + m) % 3) = std::pow(omega, j * n) / std::sqrt(3.0);
                }
                bell_[3 * m + n] = v;
            }
        }
        Eigen::Matrix<cd, 9, 1> max_ent = Eigen::Matrix<cd, 9, 1>::Zero();
        for (int j = 0; j < 3; ++j) {
            max_ent(3 * j + j) = 1.0 / std::sqrt(3.0);
        }
        for (int k = 0; k < 9; ++k) {
            Eigen::Matrix3cd v = Eigen::Matrix3cd::Zero();
            for (int i = 0; i < 3; ++i) {
                for (int al = 0; al < 3; ++al) {
                    for (int bo = 0; bo < 3; ++bo) {
                        v(bo, i) += 3.0 * std::conj(bell_[k](3 * i + al)) * max_ent(3 * al + bo);
                    }
                }
            }
            map_[k] = v;
        }
    }

    struct Outcomes {
        std::array<double, 9> probability{};
        std::array<double, 9> fidelity{};

        [[nodiscard]] double averaged_fidelity() const {
            double f = 0.0;
            for (int k = 0; k < 9; ++k) {
                f += probability[k] * fidelity[k];
            }
            return f;
        }
    };

    [[nodiscard]] Outcomes outcomes(const QutritInput& q) const {
        const Eigen::Vector3cd in(q.x, q.y, q.z);
        Outcomes out;
        for (int k = 0; k < 9; ++k) {
            Eigen::Vector3cd bob = Eigen::Vector3cd::Zero();
            for (int al = 0; al < 3; ++al) {
                cd coeff = 0.0;
                for (int i = 0; i < 3; ++i) {
                    coeff += std::conj(bell_[k](3 * i + al)) * in(i);
                }
                for (int bo = 0; bo < 3; ++bo) {
                    bob(bo) += coeff * shared_(3 * al + bo);
                }
            }
            const double p = bob.squaredNorm();
            out.probability[k] = p;
            if (p > 0.0) {
                const Eigen::Vector3cd target = map_[k] * in;
                out.fidelity[k] = std::norm(target.dot(bob)) / p;
            }
        }
        return out;
    }

private:
    Eigen::Matrix<cd, 9, 1> shared_;
    std::array<Eigen::Matrix<cd, 9, 1>, 9> bell_;
    std::array<Eigen::Matrix3cd, 9> map_;
};

[[nodiscard]] inline EstimatorReport simulate_qutrit(const QutritSharedState& shared, double theta4_max,
                                                     std::uint64_t samples, std::uint64_t seed) {
    detail::check_samples(samples);
    const QutritProtocol protocol(shared);
    using Acc = detail::Accumulator<9>;
    const Acc acc = parallel_accumulate<Acc>(samples, seed, [&](Rng& rng, std::uint64_t count) {
        Acc acc_local;
        for (std::uint64_t i = 0; i < count; ++i) {
            const QutritInput in = sample_qutrit_input(theta4_max, rng);
            const auto o = protocol.outcomes(in);
            const int k = detail::draw_outcome(o.probability, rng);
            acc_local.run.push(o.fidelity[k]);
            acc_local.input.push(o.averaged_fidelity());
            ++acc_local.counts[k];
        }
        return acc_local;
    });
    return detail::make_report(acc, seed);
}

}  // namespace telefid::sim

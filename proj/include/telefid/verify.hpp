// Self-check suite: closed forms against direct quadrature, and the dense
// simulator against closed forms. Output is a deterministic text report.
#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "telefid/telefid.hpp"

namespace telefid::verify {

struct Options {
    std::uint64_t seed = 20240611;
    std::uint64_t samples = 200000;
    double sigma_band = 4.0;
};

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double limit = 0.0;
    bool passed = false;
};

/// Direct 2-D quadrature of g(dir) * density(dir) * sin(theta) over the support.
template <class G>
double sphere_average(G&& g, const InputDistribution& dist) {
    double upper = pi;
    if (const auto* cap = std::get_if<PolarCap>(&dist)) {
        upper = cap->theta0();
    } else if (const auto* v = std::get_if<VonMisesFisher>(&dist)) {
        if (v->kappa() > 1.0) {
            upper = std::min(pi, 40.0 / std::sqrt(v->kappa()));
        }
    }
    const auto& phi_rule = quadrature::gauss_legendre(16);
    auto ring = [&](double theta) {
        double sum = 0.0;
        for (std::size_t j = 0; j < phi_rule.nodes.size(); ++j) {
            const double phi = pi * (1.0 + phi_rule.nodes[j]);
            const BlochDirection dir{theta, phi};
            sum += phi_rule.weights[j] * pi * g(dir) * density(dist, dir);
        }
        return sum * std::sin(theta);
    };
    return quadrature::integrate_composite(ring, 0.0, upper, 16, 64);
}

inline std::vector<CheckResult> run_checks(const Options& opt) {
    std::vector<CheckResult> out;
    auto add = [&](std::string name, double residual, double limit) {
        out.push_back({std::move(name), residual, limit, std::abs(residual) <= limit});
    };

    const std::vector<std::pair<std::string, InputDistribution>> dists{
        {"uniform", Uniform{}},
        {"cap(pi/3)", PolarCap(pi / 3.0)},
        {"cap(2.5)", PolarCap(2.5)},
        {"vmf(0.3)", VonMisesFisher(0.3)},
        {"vmf(10)", VonMisesFisher(10.0)},
    };
    const std::vector<std::pair<std::string, CorrelationTensor>> tensors{
        {"pure(C=0.5)", correlation_tensor(PureSchmidt::from_concurrence(0.5))},
        {"werner(0.6)", correlation_tensor(Werner(0.6))},
        {"bd(0.5,0.3)", correlation_tensor(BellDiagonal::rank3(0.5, 0.3))},
        {"diag(0.3,-0.7,0.2)", CorrelationTensor(0.3, -0.7, 0.2)},
    };

    for (const auto& [dn, dist] : dists) {
        add("normalization " + dn, sphere_average([](const BlochDirection&) { return 1.0; }, dist) - 1.0, 1e-10);
        add("classical fidelity " + dn,
            classical_fidelity(dist) -
                sphere_average([](const BlochDirection& d) { return std::pow(std::cos(0.5 * d.theta), 4) +
                                                                    std::pow(std::sin(0.5 * d.theta), 4); },
                               dist),
            1e-10);
        for (const auto& [tn, T] : tensors) {
            const FidelityStats s = fidelity_stats(T, dist);
            const double f = sphere_average([&](const BlochDirection& d) { return pointwise_fidelity(T, d); }, dist);
            const double f2 = sphere_average(
                [&](const BlochDirection& d) {
                    const double v = pointwise_fidelity(T, d);
                    return v * v;
                },
                dist);
            add("quadrature F " + tn + " " + dn, s.mean - f, 1e-10);
            add("quadrature F2 " + tn + " " + dn, s.second_moment - f2, 1e-10);
        }
    }

    add("qutrit volume", qutrit_measure_volume(pi) - pi * pi * pi, 1e-8);

    // Monte Carlo against closed forms; residuals are in standard errors.
    const double band = opt.sigma_band;
    std::uint64_t stream = 0;
    auto next_seed = [&] { return opt.seed + 7919 * ++stream; };
    const std::vector<std::pair<std::string, StateFamily>> families{
        {"pure(C=0.5)", PureSchmidt::from_concurrence(0.5)},
        {"werner(0.6)", Werner(0.6)},
        {"bd(0.5,0.3)", BellDiagonal::rank3(0.5, 0.3)},
    };
    for (const auto& [fname, family] : families) {
        for (const auto& [dn, dist] : dists) {
            const auto T = correlation_tensor(family);
            const FidelityStats exact = fidelity_stats(T, dist);
            const auto r = sim::simulate_qubit(family, dist, opt.samples, next_seed());
            const double se = std::max(r.run.standard_error, 1e-12);
            add("sim F " + fname + " " + dn, (r.run.value - exact.mean) / se, band);
            const double dse = std::max(r.deviation_standard_error, 1e-12);
            add("sim D " + fname + " " + dn, (r.deviation - exact.deviation) / dse, band);
        }
    }
    for (const auto& [dn, dist] : dists) {
        const auto r = sim::simulate_classical(dist, opt.samples, next_seed());
        add("sim classical " + dn, (r.run.value - classical_fidelity(dist)) / std::max(r.run.standard_error, 1e-12),
            band);
    }
    for (const auto& [a, b] : std::vector<std::pair<double, double>>{{1.0, 0.0}, {0.6, 0.3}, {0.2, 0.5}}) {
        for (double t4 : {pi / 4.0, pi}) {
            const QutritSharedState s(a, b);
            const auto r = sim::simulate_qutrit(s, t4, opt.samples, next_seed());
            char label[96];
            std::snprintf(label, sizeof label, "sim qutrit (%.2f,%.2f) theta4<=%.4f", a, b, t4);
            add(label,
                (r.run.value - qutrit_average_fidelity_quadrature(s, t4)) / std::max(r.run.standard_error, 1e-12),
                band);
        }
    }
    return out;
}

/// Writes one line per check and a summary; returns true when all pass.
inline bool run(const Options& opt, std::ostream& os) {
    const auto checks = run_checks(opt);
    std::size_t failed = 0;
    char line[256];
    std::snprintf(line, sizeof line, "# seed=%llu samples=%llu band=%.1f sigma\n",
                  static_cast<unsigned long long>(opt.seed), static_cast<unsigned long long>(opt.samples),
                  opt.sigma_band);
    os << line;
    for (const auto& c : checks) {
        std::snprintf(line, sizeof line, "%-4s %-52s residual=% .3e limit=%.1e\n", c.passed ? "PASS" : "FAIL",
                      c.name.c_str(), c.residual, c.limit);
        os << line;
        failed += c.passed ? 0 : 1;
    }
    std::snprintf(line, sizeof line, "# %zu checks, %zu failed\n", checks.size(), failed);
    os << line;
    return failed == 0;
}

}  // namespace telefid::verify

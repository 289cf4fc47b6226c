// Polar cap vs von Mises-Fisher at matched ensemble parameters.
#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "telefid/core.hpp"
#include "telefid/distributions.hpp"
#include "telefid/fidelity.hpp"

namespace telefid {

enum class MatchCriterion { MeanPolarAngle, ClassicalFidelity };

[[nodiscard]] inline std::string to_string(MatchCriterion c) {
    return c == MatchCriterion::MeanPolarAngle ? "mean_polar_angle" : "classical_fidelity";
}

/// A cap and a vMF ensemble sharing the value of one criterion functional.
struct MatchedPair {
    double theta0_star = pi;
    double kappa_star = 0.0;
    MatchCriterion criterion = MatchCriterion::MeanPolarAngle;
    double matched_value = 0.5 * pi;

    [[nodiscard]] InputDistribution cap() const { return PolarCap(theta0_star); }
    [[nodiscard]] InputDistribution vmf() const { return VonMisesFisher(kappa_star); }
};

/// Value of the matching functional for one ensemble.
[[nodiscard]] inline double criterion_value(MatchCriterion criterion, const InputDistribution& dist) {
    return criterion == MatchCriterion::MeanPolarAngle ? mean_polar_angle(dist) : classical_fidelity(dist);
}

inline constexpr double kappa_search_max = 1e3;

namespace detail {

/// Bisection for a monotone function on [lo, hi]. `increasing` gives the direction.
inline double bisect_monotone(const std::function<double(double)>& f, double target, double lo, double hi,
                              bool increasing) {
    for (int iter = 0; iter < 400; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        const bool below = f(mid) < target;
        if (below == increasing) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

/// theta0* and kappa* with <theta> equal to `target`, target in (0, pi/2].
[[nodiscard]] inline MatchedPair match_by_mean_angle(double target) {
    const double vmf_floor = mean_polar_angle(VonMisesFisher(kappa_search_max));
    if (!(target >= vmf_floor && target <= 0.5 * pi)) {
        throw std::out_of_range("mean polar angle target outside the attainable range [" + std::to_string(vmf_floor) +
                                ", pi/2]");
    }
    MatchedPair pair;
    pair.criterion = MatchCriterion::MeanPolarAngle;
    pair.matched_value = target;
    if (target == 0.5 * pi) {
        return pair;
    }
    pair.theta0_star = detail::bisect_monotone([](double t) { return mean_polar_angle(PolarCap(t)); }, target, 0.0,
                                               pi, true);
    pair.kappa_star = detail::bisect_monotone([](double k) { return mean_polar_angle(VonMisesFisher(k)); }, target,
                                              0.0, kappa_search_max, false);
    return pair;
}

/// theta0* and kappa* with classical fidelity equal to `target`, target in [2/3, 1).
/// The cap side solves (2 + c)(1 - c)/6 = 1 - target on the branch c in [0, 1];
/// at exactly 2/3 both members are taken to be uniform.
[[nodiscard]] inline MatchedPair match_by_classical_fidelity(double target) {
    const double vmf_ceiling = classical_fidelity(VonMisesFisher(kappa_search_max));
    if (!(target >= uniform_classical_fidelity && target <= vmf_ceiling && target < 1.0)) {
        throw std::out_of_range("classical fidelity target outside the attainable range [2/3, " +
                                std::to_string(vmf_ceiling) + "]");
    }
    MatchedPair pair;
    pair.criterion = MatchCriterion::ClassicalFidelity;
    pair.matched_value = target;
    if (target == uniform_classical_fidelity) {
        return pair;
    }
    const double x = 1.0 - target;
    // 1 - c = 12 x / (3 + sqrt(9 - 24 x)), theta0 = 2 asin(sqrt((1 - c)/2))
    const double omc = 12.0 * x / (3.0 + std::sqrt(9.0 - 24.0 * x));
    pair.theta0_star = 2.0 * std::asin(std::sqrt(0.5 * omc));
    pair.kappa_star = detail::bisect_monotone([](double k) { return vmf::coth_term(k); }, x, 0.0, kappa_search_max,
                                              false);
    return pair;
}

[[nodiscard]] inline MatchedPair match(MatchCriterion criterion, double target) {
    return criterion == MatchCriterion::MeanPolarAngle ? match_by_mean_angle(target)
                                                       : match_by_classical_fidelity(target);
}

struct DeltaStats {
    double delta_f = 0.0;  // F(vMF) - F(cap)
    double delta_d = 0.0;  // D(vMF) - D(cap)
};

[[nodiscard]] inline DeltaStats delta_stats(const CorrelationTensor& T, const MatchedPair& pair) {
    const FidelityStats cap = fidelity_stats(T, pair.cap());
    const FidelityStats vmf = fidelity_stats(T, pair.vmf());
    return DeltaStats{vmf.mean - cap.mean, vmf.deviation - cap.deviation};
}

struct ComparisonRow {
    double matched_value = 0.0;
    double theta0_star = 0.0;
    double kappa_star = 0.0;
    double delta_f = 0.0;
    double delta_d = 0.0;
};

[[nodiscard]] inline std::vector<ComparisonRow> sweep_comparison(const CorrelationTensor& T, MatchCriterion criterion,
                                                                 std::span<const double> targets) {
    std::vector<ComparisonRow> rows;
    rows.reserve(targets.size());
    for (double target : targets) {
        const MatchedPair pair = match(criterion, target);
        const DeltaStats d = delta_stats(T, pair);
        rows.push_back({target, pair.theta0_star, pair.kappa_star, d.delta_f, d.delta_d});
    }
    return rows;
}

}  // namespace telefid

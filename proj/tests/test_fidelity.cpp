#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "telefid/fidelity.hpp"

using namespace telefid;

namespace {

std::vector<InputDistribution> sample_distributions() {
    return {Uniform{},          PolarCap(0.4),        PolarCap(pi / 3),       PolarCap(2.0),
            PolarCap(pi),       VonMisesFisher(1e-4), VonMisesFisher(0.7),    VonMisesFisher(3.0),
            VonMisesFisher(25.0)};
}

}  // namespace

TEST(PointwiseFidelity, Examples) {
    const CorrelationTensor singlet(-1, -1, -1);
    const auto werner = correlation_tensor(Werner(0.6));
    const double c = 0.3;
    const auto pure = correlation_tensor(PureSchmidt::from_concurrence(c));
    for (double th : {0.0, 0.3, 1.2, 2.8, pi}) {
        for (double ph : {0.0, 1.0, 4.0}) {
            const BlochDirection d{th, ph};
            EXPECT_NEAR(pointwise_fidelity(singlet, d), 1.0, 1e-15);
            EXPECT_NEAR(pointwise_fidelity(werner, d), 0.8, 1e-15);
            EXPECT_NEAR(pointwise_fidelity(pure, d), 1.0 - 0.5 * std::pow(std::sin(th), 2) * (1.0 - c), 1e-14);
        }
    }
}

TEST(PointwiseFidelity, MatchesBlochVectorForm) {
    const CorrelationTensor T(0.2, -0.5, 0.9);
    const BlochDirection d{1.1, 2.3};
    const auto a = d.bloch_vector();
    const double quad = T.t1() * a[0] * a[0] + T.t2() * a[1] * a[1] + T.t3() * a[2] * a[2];
    EXPECT_NEAR(pointwise_fidelity(T, d), 0.5 * (1.0 - quad), 1e-15);
}

TEST(AverageFidelity, Examples) {
    for (double c : {0.0, 0.25, 0.5, 0.9, 1.0}) {
        const auto T = correlation_tensor(PureSchmidt::from_concurrence(c));
        EXPECT_NEAR(average_fidelity(T, Uniform{}), (2.0 + c) / 3.0, 1e-14);
    }
    for (double p : {0.0, 0.3, 0.6, 1.0}) {
        for (const auto& d : sample_distributions()) {
            EXPECT_NEAR(average_fidelity(correlation_tensor(Werner(p)), d), 0.5 * (1.0 + p), 1e-15);
        }
    }
    const auto T = correlation_tensor(PureSchmidt::from_concurrence(0.5));
    EXPECT_NEAR(average_fidelity(T, PolarCap(pi / 3)), 1.0 - 0.5 * 2.5 * 0.5 / 6.0, 1e-14);
    EXPECT_NEAR(average_fidelity(T, PolarCap(pi / 3)), 0.895833333333333, 1e-14);
}

TEST(AverageFidelity, MatchesTwoDimensionalQuadrature) {
    std::mt19937_64 gen(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const CorrelationTensor T(u(gen), u(gen), u(gen));
        for (const auto& d : sample_distributions()) {
            const auto s = fidelity_stats(T, d);
            const double f = oracle::sphere_average([&](const BlochDirection& x) { return pointwise_fidelity(T, x); }, d);
            const double f2 = oracle::sphere_average(
                [&](const BlochDirection& x) { return std::pow(pointwise_fidelity(T, x), 2); }, d);
            EXPECT_NEAR(s.mean, f, 1e-10) << to_string(d);
            EXPECT_NEAR(s.second_moment, f2, 1e-10) << to_string(d);
            EXPECT_NEAR(fidelity_second_moment(T, d), s.second_moment, 0.0);
            EXPECT_NEAR(s.deviation * s.deviation, s.second_moment - s.mean * s.mean, 1e-14);
        }
    }
}

TEST(SecondMoment, Examples) {
    for (const auto& d : sample_distributions()) {
        EXPECT_NEAR(fidelity_second_moment(correlation_tensor(Werner(0.4)), d), 0.49, 1e-15);
        EXPECT_NEAR(fidelity_second_moment(CorrelationTensor(-1, -1, -1), d), 1.0, 1e-15);
    }
    const double c = 0.35;
    const auto s = fidelity_stats(correlation_tensor(PureSchmidt::from_concurrence(c)), Uniform{});
    EXPECT_NEAR(s.second_moment - s.mean * s.mean, std::pow((1 - c) / (3 * std::sqrt(5.0)), 2), 1e-15);
}

TEST(FidelityStats, Examples) {
    for (double c : {0.0, 0.4, 0.8}) {
        const auto T = correlation_tensor(PureSchmidt::from_concurrence(c));
        EXPECT_NEAR(fidelity_stats(T, PolarCap(pi)).deviation, (1 - c) / (3 * std::sqrt(5.0)), 1e-14);
    }
    for (double k : {0.0, 0.01, 1.0, 10.0, 400.0}) {
        EXPECT_EQ(fidelity_stats(correlation_tensor(Werner(0.7)), VonMisesFisher(k)).deviation, 0.0);
    }
    const auto T0 = correlation_tensor(PureSchmidt(0.0));
    EXPECT_NEAR(fidelity_stats(T0, VonMisesFisher(1e-7)).deviation, 1.0 / (3.0 * std::sqrt(5.0)), 1e-12);
    EXPECT_NEAR(1.0 / (3.0 * std::sqrt(5.0)), 0.14907, 1e-5);
}

TEST(FidelityStats, WernerIdenticalAcrossDistributions) {
    const auto T = correlation_tensor(Werner(0.45));
    const auto ref = fidelity_stats(T, Uniform{});
    for (const auto& d : sample_distributions()) {
        const auto s = fidelity_stats(T, d);
        EXPECT_EQ(s.mean, ref.mean);
        EXPECT_EQ(s.deviation, ref.deviation);
        EXPECT_EQ(s.second_moment, ref.second_moment);
    }
}

TEST(FidelityStats, LimitRecoveryOnTensorGrid) {
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            for (int k = 0; k < 10; ++k) {
                const CorrelationTensor T(-1 + 2 * i / 9.0, -1 + 2 * j / 9.0, -1 + 2 * k / 9.0);
                const double u = average_fidelity(T, Uniform{});
                ASSERT_NEAR(average_fidelity(T, PolarCap(pi)), u, 1e-8);
                ASSERT_NEAR(average_fidelity(T, VonMisesFisher(1e-8)), u, 1e-8);
                ASSERT_NEAR(average_fidelity(T, VonMisesFisher(0.0)), u, 1e-15);
                ASSERT_NEAR(fidelity_stats(T, PolarCap(pi)).deviation, fidelity_stats(T, Uniform{}).deviation, 1e-8);
                ASSERT_NEAR(average_fidelity(T, Uniform{}), closed_form::average_fidelity_uniform(T), 1e-15);
            }
        }
    }
}

TEST(FidelityStats, PureStateMonotoneTrends) {
    const auto T = correlation_tensor(PureSchmidt::from_concurrence(0.6));
    double prev_f = 2.0;
    double prev_d = -1.0;
    // F falls and D rises with the cap angle while the cap is at most a hemisphere.
    for (int i = 1; i <= 100; ++i) {
        const auto s = fidelity_stats(T, PolarCap(0.5 * pi * i / 100.0));
        EXPECT_LE(s.mean, prev_f);
        EXPECT_GE(s.deviation, prev_d);
        prev_f = s.mean;
        prev_d = s.deviation;
    }
    prev_f = -1.0;
    for (int i = 0; i <= 100; ++i) {
        const auto s = fidelity_stats(T, VonMisesFisher(0.2 * i));
        EXPECT_GE(s.mean, prev_f);
        prev_f = s.mean;
    }
    // Above the peak of D near kappa ~ 2 the deviation falls as kappa grows.
    prev_d = 1.0;
    for (int i = 0; i <= 100; ++i) {
        const double d = fidelity_stats(T, VonMisesFisher(3.0 + i)).deviation;
        EXPECT_LE(d, prev_d);
        prev_d = d;
    }
}

TEST(FidelityStats, PureStateNonMonotoneBeyondHemisphere) {
    // <sin^2> peaks at cos theta0 = -1/2, so F has a minimum at theta0 = 2 pi / 3.
    const auto T = correlation_tensor(PureSchmidt::from_concurrence(0.6));
    const double at_min = average_fidelity(T, PolarCap(2 * pi / 3));
    EXPECT_LT(at_min, average_fidelity(T, PolarCap(2 * pi / 3 - 0.1)));
    EXPECT_LT(at_min, average_fidelity(T, PolarCap(2 * pi / 3 + 0.1)));
}

TEST(ClosedForms, AgreeWithMomentRoute) {
    for (double c : {0.0, 0.3, 0.77, 1.0}) {
        const auto T = correlation_tensor(PureSchmidt::from_concurrence(c));
        for (double th : {0.2, 1.0, pi / 3, 2.0, 3.0}) {
            const auto s = fidelity_stats(T, PolarCap(th));
            EXPECT_NEAR(s.mean, closed_form::pure_fidelity_cap(c, th), 1e-14);
            EXPECT_NEAR(s.deviation, closed_form::pure_deviation_cap(c, th), 1e-14);
            EXPECT_NEAR(s.mean, closed_form::average_fidelity_cap(T, th), 1e-14);
        }
        for (double k : {0.5, 1.0, 2.5, 10.0, 60.0}) {
            const auto s = fidelity_stats(T, VonMisesFisher(k));
            EXPECT_NEAR(s.mean, closed_form::pure_fidelity_vmf(c, k), 1e-14);
            EXPECT_NEAR(s.deviation, closed_form::pure_deviation_vmf(c, k), 1e-13);
            EXPECT_NEAR(s.mean, closed_form::average_fidelity_vmf(T, k), 1e-14);
        }
        EXPECT_NEAR(fidelity_stats(T, Uniform{}).deviation, closed_form::pure_deviation_uniform(c), 1e-15);
        EXPECT_NEAR(average_fidelity(T, Uniform{}), closed_form::pure_fidelity_uniform(c), 1e-15);
    }
}

TEST(ClassicalFidelity, Examples) {
    EXPECT_DOUBLE_EQ(classical_fidelity(Uniform{}), 2.0 / 3.0);
    EXPECT_NEAR(classical_fidelity(PolarCap(pi / 2)), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(classical_fidelity(PolarCap(1e-9)), 1.0, 1e-15);
    EXPECT_EQ(classical_fidelity(PolarCap(0.0)), 1.0);
    EXPECT_NEAR(classical_fidelity(VonMisesFisher(10.0)), 0.91, 1e-9);
    for (double th : {0.3, 1.0, 2.5}) {
        EXPECT_NEAR(classical_fidelity(PolarCap(th)), closed_form::classical_fidelity_cap(th), 1e-15);
    }
    for (double k : {0.3, 3.0, 30.0}) {
        EXPECT_NEAR(classical_fidelity(VonMisesFisher(k)), closed_form::classical_fidelity_vmf(k), 1e-14);
    }
}

TEST(ClassicalFidelity, MatchesMeasurePrepareQuadrature) {
    for (const auto& d : sample_distributions()) {
        const double q = oracle::sphere_average(
            [](const BlochDirection& x) {
                const double p0 = std::pow(std::cos(0.5 * x.theta), 2);
                return p0 * p0 + (1 - p0) * (1 - p0);
            },
            d);
        EXPECT_NEAR(classical_fidelity(d), q, 1e-10) << to_string(d);
    }
}

TEST(PriorInformation, Examples) {
    const auto u = prior_information(Uniform{});
    EXPECT_NEAR(u.absolute, 0.0, 1e-15);
    EXPECT_NEAR(u.fractional, 0.0, 1e-15);
    EXPECT_NEAR(prior_information(PolarCap(1.112)).fractional, 0.16, 0.002);
    const auto z = prior_information(PolarCap(1e-9));
    EXPECT_NEAR(z.absolute, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(z.fractional, 0.5, 1e-15);
}

TEST(PriorInformation, NonNegativeUpToHemisphereAndForVmf) {
    for (int i = 0; i <= 100; ++i) {
        EXPECT_GE(prior_information(PolarCap(0.5 * pi * i / 100)).absolute, -1e-15);
        EXPECT_GE(prior_information(VonMisesFisher(0.5 * i)).absolute, 0.0);
    }
    EXPECT_LT(prior_information(PolarCap(2.5)).absolute, 0.0);
}

TEST(IsNonclassical, Examples) {
    EXPECT_TRUE(is_nonclassical(1.0, PolarCap(0.3)));
    EXPECT_FALSE(is_nonclassical(2.0 / 3.0, Uniform{}));
    const InputDistribution cap = PolarCap(pi / 3);
    EXPECT_TRUE(is_nonclassical(correlation_tensor(Werner(7.0 / 12.0 + 1e-9)), cap));
    EXPECT_FALSE(is_nonclassical(correlation_tensor(Werner(7.0 / 12.0 - 1e-9)), cap));
}

TEST(WernerThreshold, Examples) {
    const InputDistribution cap = PolarCap(pi / 3);
    EXPECT_NEAR(werner_threshold(cap), 7.0 / 12.0, 1e-12);
    EXPECT_NEAR(werner_critical_concurrence(cap), 3.0 / 8.0, 1e-12);
    EXPECT_NEAR(werner_threshold(Uniform{}), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(werner_threshold(VonMisesFisher(5.0)), 0.680, 0.002);
    EXPECT_NEAR(werner_threshold(VonMisesFisher(10.0)), 0.82, 1e-8);
    for (double k : {0.5, 5.0, 10.0, 50.0}) {
        const InputDistribution v = VonMisesFisher(k);
        EXPECT_NEAR(0.5 * (1 + werner_threshold(v)), classical_fidelity(v), 1e-15);
        EXPECT_NEAR(werner_threshold(v), closed_form::werner_threshold_vmf(k), 1e-14);
    }
    for (double th : {0.3, 1.0, 2.0}) {
        EXPECT_NEAR(werner_threshold(PolarCap(th)), closed_form::werner_threshold_cap(th), 1e-15);
    }
}

TEST(WernerThreshold, AgreesWithBisection) {
    for (const auto& d : sample_distributions()) {
        const double p = nonclassical_threshold([](double x) { return correlation_tensor(Werner(x)); }, d, 0.0, 1.0);
        EXPECT_NEAR(p, werner_threshold(d), 1e-11) << to_string(d);
    }
}

TEST(BdRank3Threshold, Examples) {
    const InputDistribution cap = PolarCap(pi / 3);
    EXPECT_NEAR(bd_rank3_threshold(cap), 19.0 / 29.0, 1e-12);
    EXPECT_NEAR(2 * bd_rank3_threshold(cap) - 1, 9.0 / 29.0, 1e-12);
    EXPECT_LT(9.0 / 29.0, werner_critical_concurrence(cap));
    EXPECT_NEAR(bd_rank3_threshold(PolarCap(pi)), 0.5, 1e-15);
    EXPECT_NEAR(average_fidelity(bd_rank3_slice_tensor(0.5), Uniform{}), 2.0 / 3.0, 1e-15);
    EXPECT_THROW((void)bd_rank3_threshold(Uniform{}), std::invalid_argument);
    EXPECT_THROW((void)bd_rank3_threshold(VonMisesFisher(2.0)), std::invalid_argument);
}

TEST(BdRank3Threshold, SliceTensorIsTheFamily) {
    for (double p : {0.4, 0.6, 0.9}) {
        const auto a = bd_rank3_slice_tensor(p);
        const auto b = correlation_tensor(BellDiagonal::rank3_symmetric(p));
        EXPECT_NEAR(a.t1(), b.t1(), 1e-15);
        EXPECT_NEAR(a.t2(), b.t2(), 1e-15);
        EXPECT_NEAR(a.t3(), b.t3(), 1e-15);
    }
}

TEST(BdRank3Threshold, ClosedFormAgreesWithBisection) {
    for (double th = 0.1; th < pi; th += 0.25) {
        const InputDistribution cap = PolarCap(th);
        EXPECT_NEAR(bd_rank3_threshold(cap), bd_rank3_slice_threshold(cap), 1e-11) << th;
    }
    // The general predicate also covers vMF.
    const double p = bd_rank3_slice_threshold(VonMisesFisher(4.0));
    EXPECT_NEAR(average_fidelity(bd_rank3_slice_tensor(p), VonMisesFisher(4.0)), classical_fidelity(VonMisesFisher(4.0)),
                1e-11);
}

TEST(Bisection, ErrorsWhenNoCrossing) {
    EXPECT_THROW((void)bisect_increasing([](double) { return -1.0; }, 0.0, 1.0), std::domain_error);
    EXPECT_EQ(bisect_increasing([](double) { return 1.0; }, 0.2, 1.0), 0.2);
}

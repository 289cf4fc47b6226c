#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "telefid/resources.hpp"

using namespace telefid;

TEST(RequiredEntanglement, Examples) {
    EXPECT_NEAR(required_entanglement(0.8, PolarCap(pi)), 0.8, 1e-15);
    EXPECT_EQ(required_entanglement(0.8, PolarCap(1e-3)), 0.0);
    EXPECT_EQ(required_entanglement(0.3, PolarCap(0.0)), 0.0);
    const double c = required_entanglement(0.8, PolarCap(pi / 3));
    EXPECT_NEAR(c, 1.0 - 2.0 * 0.2 / (2.5 * 0.5), 1e-14);
    EXPECT_NEAR(c, 0.68, 1e-14);
    EXPECT_NEAR(average_fidelity(correlation_tensor(PureSchmidt::from_concurrence(c)), PolarCap(pi / 3)), 2.8 / 3.0,
                1e-14);
    EXPECT_THROW((void)required_entanglement(1.5, Uniform{}), std::invalid_argument);
}

TEST(RequiredEntanglement, ReproducesUniformFidelityWhenPositive) {
    for (const InputDistribution d : {InputDistribution(VonMisesFisher(1.5)), InputDistribution(PolarCap(1.2))}) {
        for (double ct : {0.2, 0.6, 0.95}) {
            const double c = required_entanglement(ct, d);
            if (c > 0.0) {
                EXPECT_NEAR(average_fidelity(correlation_tensor(PureSchmidt::from_concurrence(c)), d),
                            (2.0 + ct) / 3.0, 1e-13);
            } else {
                EXPECT_GE(classical_fidelity(d), (2.0 + ct) / 3.0 - 1e-15);
            }
        }
    }
}

TEST(RequiredEntanglement, VmfFidelityIdentityForm) {
    for (double k : {0.5, 2.0, 6.0}) {
        for (double ct : {0.5, 0.9}) {
            const double want = std::max(0.0, 1.0 - k * k * (1.0 - ct) / (3.0 * (k / std::tanh(k) - 1.0)));
            EXPECT_NEAR(required_entanglement(ct, VonMisesFisher(k)), want, 1e-13);
        }
    }
}

TEST(RequiredEntanglement, NonIncreasingInPriorInformation) {
    double prev = 2.0;
    for (int i = 0; i <= 200; ++i) {
        const InputDistribution d = VonMisesFisher(0.1 * i);
        const double c = required_entanglement(0.7, d);
        EXPECT_LE(c, prev + 1e-15);
        prev = c;
    }
    prev = -1.0;
    for (int i = 1; i <= 100; ++i) {
        const double c = required_entanglement(0.7, PolarCap(0.5 * pi * i / 100));
        EXPECT_GE(c, prev - 1e-15);
        prev = c;
    }
}

TEST(BellPointwise, Examples) {
    for (double th : {0.0, 0.5, 2.0}) {
        const auto p = bell_probabilities_pointwise(0.5, BlochDirection{th, 0.3});
        for (double v : p.as_array()) {
            EXPECT_NEAR(v, 0.25, 1e-15);
        }
    }
    const auto z = bell_probabilities_pointwise(0.0, BlochDirection{0.0, 0.0});
    EXPECT_EQ(z.p_phi_plus, 0.0);
    EXPECT_EQ(z.p_phi_minus, 0.0);
    EXPECT_DOUBLE_EQ(z.p_psi_plus, 0.5);
    EXPECT_DOUBLE_EQ(z.p_psi_minus, 0.5);
    for (double a : {0.0, 0.2, 0.4}) {
        const auto e = bell_probabilities_pointwise(a, BlochDirection{pi / 2, 1.0});
        for (double v : e.as_array()) {
            EXPECT_NEAR(v, 0.25, 1e-15);
        }
    }
    EXPECT_THROW((void)bell_probabilities_pointwise(0.7, BlochDirection{}), std::invalid_argument);
}

TEST(BellAveraged, Examples) {
    for (double a : {0.0, 0.3, 0.5}) {
        for (double v : bell_probabilities_averaged(a, Uniform{}).as_array()) {
            EXPECT_NEAR(v, 0.25, 1e-15);
        }
        for (double v : bell_probabilities_averaged(0.5, PolarCap(0.1 + a)).as_array()) {
            EXPECT_NEAR(v, 0.25, 1e-15);
        }
    }
    const auto z = bell_probabilities_averaged(0.0, PolarCap(1e-8));
    EXPECT_NEAR(z.p_phi_plus, 0.0, 1e-15);
    EXPECT_NEAR(z.p_psi_plus, 0.5, 1e-15);
}

TEST(BellAveraged, MatchesQuadratureOfPointwise) {
    const std::vector<InputDistribution> dists{Uniform{}, PolarCap(0.6), PolarCap(2.2), VonMisesFisher(0.05),
                                               VonMisesFisher(4.0)};
    for (const auto& d : dists) {
        for (double a : {0.0, 0.15, 0.4}) {
            const auto avg = bell_probabilities_averaged(a, d).as_array();
            for (int k = 0; k < 4; ++k) {
                const double q = oracle::sphere_average(
                    [&](const BlochDirection& x) { return bell_probabilities_pointwise(a, x).as_array()[k]; }, d);
                EXPECT_NEAR(avg[k], q, 1e-10) << to_string(d) << " alpha=" << a << " k=" << k;
            }
        }
    }
}

TEST(CcCost, Examples) {
    EXPECT_DOUBLE_EQ(cc_cost(BellOutcomeDistribution{}), 2.0);
    EXPECT_DOUBLE_EQ(cc_cost(BellOutcomeDistribution{0.0, 0.0, 0.5, 0.5}), 1.0);
    EXPECT_LT(cc_cost(bell_probabilities_averaged(0.1, PolarCap(pi / 4))), 2.0);
    const std::vector<double> bad{0.5, -0.1};
    EXPECT_THROW((void)shannon_entropy_bits(bad), std::invalid_argument);
}

TEST(CcCost, BoundedByTwoWithEqualityOnlyInTrivialCases) {
    for (double a : {0.0, 0.1, 0.3, 0.49, 0.5}) {
        for (double th : {0.2, 1.0, 2.0, 3.0}) {
            const double h = cc_cost(bell_probabilities_averaged(a, PolarCap(th)));
            EXPECT_LE(h, 2.0 + 1e-15);
            if (a < 0.5) {
                EXPECT_LT(h, 2.0);
            } else {
                EXPECT_DOUBLE_EQ(h, 2.0);
            }
        }
        EXPECT_DOUBLE_EQ(cc_cost(bell_probabilities_averaged(a, Uniform{})), 2.0);
    }
}

TEST(CcCost, TrendsWithPriorKnowledge) {
    const double a = 0.2;
    double prev = 0.0;
    for (int i = 1; i <= 100; ++i) {
        const double h = cc_cost(bell_probabilities_averaged(a, PolarCap(pi * i / 100)));
        EXPECT_GT(h, prev);
        prev = h;
    }
    prev = 3.0;
    for (int i = 1; i <= 100; ++i) {
        const double h = cc_cost(bell_probabilities_averaged(a, VonMisesFisher(0.2 * i)));
        EXPECT_LT(h, prev);
        prev = h;
    }
}

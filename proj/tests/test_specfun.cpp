#include <gtest/gtest.h>

#include <cmath>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/digamma.hpp>

#include "genft/specfun.hpp"

using namespace genft;

namespace {

constexpr double euler_gamma = 0.57721566490153286061;

// Explicit alternating sum for L_s^{(lambda)}; kept here as an independent oracle only.
double laguerre_explicit(int s, double lam, double t) {
    double sum = 0.0;
    for (int j = 0; j <= s; ++j) {
        const double log_coef = std::lgamma(lam + s + 1) - std::lgamma(s - j + 1.0) - std::lgamma(lam + j + 1) -
                                std::lgamma(j + 1.0);
        const double term = std::exp(log_coef) * std::pow(t, j);
        sum += (j % 2 == 0 ? term : -term);
    }
    return sum;
}

}  // namespace

TEST(LogGamma, KnownValues) {
    EXPECT_NEAR(log_gamma(1.0), 0.0, 1e-15);
    EXPECT_NEAR(log_gamma(0.5), 0.5 * std::log(pi), 1e-14);
    EXPECT_NEAR(log_gamma(5.0), std::log(24.0), 1e-14);
}

TEST(LogGamma, RejectsNonPositive) {
    EXPECT_THROW(log_gamma(0.0), DomainError);
    EXPECT_THROW(log_gamma(-2.5), DomainError);
}

TEST(LogGamma, RecurrenceHolds) {
    for (double x = 0.1; x <= 50.0; x += 0.37) {
        const double lhs = std::exp(log_gamma(x + 1.0));
        const double rhs = x * std::exp(log_gamma(x));
        EXPECT_NEAR(lhs / rhs, 1.0, 1e-12) << x;
    }
}

TEST(Digamma, KnownValues) {
    EXPECT_NEAR(digamma(1.0), -euler_gamma, 1e-13);
    EXPECT_NEAR(digamma(2.0), 1.0 - euler_gamma, 1e-13);
    EXPECT_NEAR(digamma(0.75), -euler_gamma - 3.0 * std::log(2.0) + pi / 2.0, 1e-13);
    EXPECT_THROW(digamma(0.0), DomainError);
}

TEST(Digamma, MatchesFiniteDifferenceOfLogGamma) {
    for (double x : {0.75, 1.3, 4.0, 17.5}) {
        const double h = 1e-4 * x;
        const double fd = (log_gamma(x + h) - log_gamma(x - h)) / (2 * h);
        EXPECT_NEAR(digamma(x), fd, 1e-7) << x;
    }
}

TEST(Digamma, RecurrenceAndReferenceImplementation) {
    for (double x = 1e-3; x < 200.0; x *= 1.17) {
        EXPECT_NEAR(digamma(x + 1.0) - digamma(x) - 1.0 / x, 0.0, 1e-10 * std::max(1.0, 1.0 / x)) << x;
        EXPECT_NEAR(digamma(x), boost::math::digamma(x), 1e-12 * std::max(1.0, std::abs(boost::math::digamma(x))))
            << x;
    }
}

TEST(BesselJ, SpecialValues) {
    EXPECT_EQ(bessel_j(0.0, 0.0), 1.0);
    EXPECT_NEAR(bessel_j(0.5, pi), std::sqrt(2.0 / (pi * pi)) * std::sin(pi), 1e-15);
    EXPECT_NEAR(bessel_j(1.0, 3.8317060), 0.0, 1e-7);
    EXPECT_THROW(bessel_j(-1.0, 1.0), DomainError);
    EXPECT_THROW(bessel_j(-1.5, 1.0), DomainError);
}

TEST(BesselJ, HalfIntegerClosedForms) {
    for (double t = 0.01; t < 500.0; t *= 1.21) {
        const double amp = std::sqrt(2.0 / (pi * t));
        EXPECT_NEAR(bessel_j(0.5, t), amp * std::sin(t), 1e-13 * std::max(1.0, amp)) << t;
        EXPECT_NEAR(bessel_j(-0.5, t), amp * std::cos(t), 1e-13 * std::max(1.0, amp)) << t;
        EXPECT_NEAR(bessel_j(1.5, t), amp * (std::sin(t) / t - std::cos(t)), 1e-13 * std::max(1.0, amp / t)) << t;
    }
}

// Relative accuracy is measured against the oscillation envelope: near zeros the pointwise
// relative error is limited by the conditioning t|J'|/|J|, not by the algorithm.
TEST(BesselJ, AgreesWithStandardLibraryForNonNegativeOrders) {
    for (double nu = 0.0; nu < 30.0; nu += 0.731) {
        for (double t = 1e-3; t < 1e4; t *= 1.37) {
            const double expected = std::cyl_bessel_j(nu, t);
            const double amplitude = std::max(std::abs(expected), std::min(1.0, std::sqrt(2.0 / (pi * t))));
            if (std::abs(expected) < 1e-250) continue;
            EXPECT_NEAR(bessel_j(nu, t), expected, 1e-10 * amplitude) << nu << " " << t;
        }
    }
}

TEST(BesselJ, AgreesWithBoostForNegativeOrders) {
    for (double nu = -0.95; nu < 0.0; nu += 0.1) {
        for (double t = 1e-3; t < 1e4; t *= 1.29) {
            const double expected = boost::math::cyl_bessel_j(nu, t);
            const double amplitude = std::max(std::abs(expected), std::min(1.0, std::sqrt(2.0 / (pi * t))));
            EXPECT_NEAR(bessel_j(nu, t), expected, 1e-10 * amplitude) << nu << " " << t;
        }
    }
}

TEST(NormalizedBessel, LimitAndClosedForms) {
    for (double lam : {-0.9, -0.5, 0.0, 0.3, 2.0, 7.5}) EXPECT_EQ(normalized_bessel(BesselOrder(lam), 0.0), 1.0);
    for (double t = 1e-6; t < 200.0; t *= 1.7) {
        EXPECT_NEAR(normalized_bessel(BesselOrder(0.5), t), std::sin(t) / t, 1e-13) << t;
        EXPECT_NEAR(normalized_bessel(BesselOrder(-0.5), t), std::cos(t), 1e-13) << t;
    }
    EXPECT_THROW(BesselOrder(-1.0), DomainError);
}

TEST(NormalizedBessel, BoundedByOneForOrdersAboveMinusHalf) {
    for (double lam = -0.5; lam < 12.0; lam += 0.173) {
        const NormalizedBessel j{BesselOrder(lam)};
        for (double t = 0.0; t < 300.0; t += 0.0917) EXPECT_LE(std::abs(j(t)), 1.0 + 1e-13) << lam << " " << t;
    }
}

TEST(BesselJDerivative, TwoTermIdentityAndClosedForm) {
    const double h = 1e-5;
    const double fd = (bessel_j(1.0, 1.0 + h) - bessel_j(1.0, 1.0 - h)) / (2 * h);
    EXPECT_NEAR(bessel_j_derivative(1.0, 1.0), fd, 1e-8);

    const double t = pi / 2;
    const double closed = std::sqrt(2.0 / pi) * (std::cos(t) / std::sqrt(t) - 0.5 * std::sin(t) * std::pow(t, -1.5));
    EXPECT_NEAR(bessel_j_derivative(0.5, t), closed, 1e-14);

    EXPECT_THROW(bessel_j_derivative(0.5, 0.0), DomainError);
    EXPECT_NEAR(bessel_j_derivative(1.0, 0.0), 0.5, 0.0);
}

TEST(BesselJDerivative, VanishesAtFirstMaximumOfJ2) {
    // Locate the maximum of J_2 by golden-section search on the function values only.
    double lo = 2.0;
    double hi = 4.5;
    const double g = (std::sqrt(5.0) - 1) / 2;
    for (int i = 0; i < 200; ++i) {
        const double x1 = hi - g * (hi - lo);
        const double x2 = lo + g * (hi - lo);
        if (bessel_j(2.0, x1) > bessel_j(2.0, x2))
            hi = x2;
        else
            lo = x1;
    }
    EXPECT_NEAR(bessel_j_derivative(2.0, 0.5 * (lo + hi)), 0.0, 1e-7);
}

TEST(BesselJDerivative, MatchesCentralDifferencesOnGrid) {
    for (double nu = 0.2; nu < 10.0; nu += 0.9) {
        for (double t = 0.3; t < 80.0; t *= 1.6) {
            const double h = 1e-5 * std::max(1.0, t);
            const double fd = (bessel_j(nu, t + h) - bessel_j(nu, t - h)) / (2 * h);
            EXPECT_NEAR(bessel_j_derivative(nu, t), fd, 1e-6) << nu << " " << t;
        }
    }
}

TEST(Laguerre, LowDegreeValues) {
    EXPECT_EQ(laguerre(LaguerreIndex(0, 0.7), 3.3), 1.0);
    EXPECT_NEAR(laguerre(LaguerreIndex(1, 0.7), 3.3), 0.7 + 1 - 3.3, 1e-15);
    EXPECT_NEAR(laguerre(LaguerreIndex(2, 0.0), 2.0), -1.0, 1e-15);
    EXPECT_THROW(LaguerreIndex(-1, 0.0), DomainError);
    EXPECT_THROW(LaguerreIndex(1, -1.0), DomainError);
}

TEST(Laguerre, MatchesExplicitSum) {
    for (int s = 0; s <= 10; ++s)
        for (double lam : {-0.5, 0.0, 1.0, 3.7})
            for (double t : {0.0, 0.3, 1.0, 2.5, 6.0}) {
                const double ref = laguerre_explicit(s, lam, t);
                EXPECT_NEAR(laguerre(LaguerreIndex(s, lam), t), ref, 1e-10 * std::max(1.0, std::abs(ref)))
                    << s << " " << lam << " " << t;
            }
}

TEST(Laguerre, RecurrenceResidual) {
    for (double lam : {-0.3, 0.5, 4.0})
        for (double t : {0.2, 1.5, 9.0})
            for (int s = 1; s < 20; ++s) {
                const double prev = laguerre(LaguerreIndex(s - 1, lam), t);
                const double cur = laguerre(LaguerreIndex(s, lam), t);
                const double next = laguerre(LaguerreIndex(s + 1, lam), t);
                const double lhs = (s + 1) * next;
                const double rhs = (2.0 * s + lam + 1 - t) * cur - (s + lam) * prev;
                EXPECT_NEAR(lhs, rhs, 1e-10 * std::max({1.0, std::abs(lhs), std::abs(rhs)}));
            }
}

TEST(BesselZeros, KnownZerosAndOrdering) {
    auto& z1 = bessel_zeros(1.0);
    EXPECT_NEAR(z1[0], 3.8317059702075123, 1e-13);
    EXPECT_NEAR(z1[1], 7.0155866698156188, 1e-13);
    auto& zh = bessel_zeros(0.5);
    for (std::size_t m = 0; m < 200; ++m) EXPECT_NEAR(zh[m], pi * (m + 1), 1e-11 * (m + 1));
    auto& zn = bessel_zeros(-0.7);
    for (std::size_t m = 0; m < 50; ++m) {
        EXPECT_NEAR(boost::math::cyl_bessel_j(-0.7, zn[m]), 0.0, 1e-13);
        if (m > 0) EXPECT_GT(zn[m], zn[m - 1]);
    }
    EXPECT_EQ(zh.first_above(pi * 3.5), 3u);
}

TEST(BesselZeroWalker, AgreesWithTable) {
    for (double nu : {-0.3, 0.0, 1.5}) {
        auto& table = bessel_zeros(nu);
        const std::size_t m0 = table.first_above(40.0);
        BesselZeroWalker walker(nu, 40.0);
        for (std::size_t m = m0; m < m0 + 30; ++m) EXPECT_NEAR(walker.next(), table[m], 1e-12 * table[m]);
    }
    BesselZeroWalker far(0.5, 1e7);
    const double z = far.next();
    EXPECT_GT(z, 1e7);
    EXPECT_NEAR(std::remainder(z, pi), 0.0, 1e-7);
}

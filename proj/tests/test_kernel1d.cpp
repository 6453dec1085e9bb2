#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "genft/kernel1d.hpp"

using namespace genft;

TEST(KernelParams, Constraint) {
    EXPECT_NO_THROW(KernelParams(0.0, 2.0));
    EXPECT_NO_THROW(KernelParams(0.1, 1.0));
    EXPECT_THROW(KernelParams(0.0, 1.0), DomainError);
    EXPECT_THROW(KernelParams(-0.1, 2.0), DomainError);
    EXPECT_GT(KernelParams(0.05, 0.95).even_order(), -1.0);
}

TEST(KernelEven, Examples) {
    EXPECT_EQ(kernel_even({0.5, 1.0}, 0.0, 3.0), 1.0);
    EXPECT_EQ(kernel_even({0.5, 1.0}, 2.0, 0.0), 1.0);
    for (double xy : {0.3, 1.0, 4.0, 17.0}) {
        const double t = 2.0 * std::sqrt(xy);
        // Order (2k - 1)/a = 0 at k = 1/2, a = 1.
        EXPECT_NEAR(kernel_even({0.5, 1.0}, xy, 1.0), std::cyl_bessel_j(0.0, t), 1e-13);
        EXPECT_NEAR(kernel_even({1.0, 1.0}, -xy, 1.0), 2.0 * std::cyl_bessel_j(1.0, t) / t, 1e-13);
        EXPECT_NEAR(kernel_even({0.25, 1.0}, -xy, 1.0), std::cos(t), 1e-13);
    }
}

TEST(KernelGeneral, DunklAndClassicalCases) {
    for (double x : {-2.0, -0.5, 0.3, 1.7})
        for (double y : {-1.1, 0.4, 2.5}) {
            const auto b = kernel_general({0.0, 2.0}, x, y);
            EXPECT_NEAR(std::abs(b - std::polar(1.0, -x * y)), 0.0, 1e-13);
            for (double k : {0.25, 1.0, 2.5}) {
                const double xy = x * y;
                const double e = normalized_bessel(BesselOrder(k - 0.5), std::abs(xy));
                const double o = normalized_bessel(BesselOrder(k + 0.5), std::abs(xy));
                const auto g = kernel_general({k, 2.0}, x, y);
                EXPECT_NEAR(g.real(), e, 1e-13);
                EXPECT_NEAR(g.imag(), -xy / (2 * k + 1) * o, 1e-13);
                EXPECT_LE(std::abs(g), 1.0 + 1e-12);
            }
        }
    for (double a : {0.5, 1.0, 2.0, 3.0}) EXPECT_EQ(kernel_general({1.0, a}, 0.0, 5.0), std::complex<double>(1.0, 0.0));
}

TEST(KernelA1, BranchesAndConsistency) {
    for (double k : {0.1, 0.25, 0.44, 0.5, 1.0, 2.3})
        for (double xy : {-30.0, -4.0, -0.2, 1e-6, 0.2, 1.0, 4.0, 9.0, 30.0, 200.0}) {
            const double t = 2.0 * std::sqrt(std::abs(xy));
            const double sgn = xy > 0 ? 1.0 : -1.0;
            const double two_bessel = normalized_bessel(BesselOrder(2 * k - 1), t) -
                                      sgn * (t / 2) * (t / 2) / (2 * k * (2 * k + 1)) *
                                          normalized_bessel(BesselOrder(2 * k + 1), t);
            EXPECT_NEAR(kernel_a1(k, xy, 1.0), two_bessel, 1e-10) << k << ' ' << xy;
            EXPECT_NEAR(kernel_general({k, 1.0}, xy, 1.0).real(), two_bessel, 1e-10);
            EXPECT_NEAR(kernel_general({k, 1.0}, xy, 1.0).imag(), 0.0, 1e-12);
            if (xy < 0) EXPECT_LE(std::abs(kernel_a1(k, xy, 1.0)), 1.0);
        }
    // k = 1/4 closed form for xy > 0: 2 cos t - t^{-1} sin t.
    for (double t : {0.5, 2.0, 2.9646, 7.0}) {
        const double xy = t * t / 4;
        EXPECT_NEAR(kernel_a1(0.25, xy, 1.0), 2 * std::cos(t) - std::sin(t) / t, 1e-12);
    }
    EXPECT_EQ(kernel_a1(0.3, 0.0, 1.0), 1.0);
    EXPECT_NEAR(kernel_a1(0.3, 1e-14, 1.0), 1.0, 1e-6);
    EXPECT_NEAR(kernel_a1(0.3, -1e-14, 1.0), 1.0, 1e-6);
}

TEST(KernelA1, Symmetric) {
    for (double k : {0.3, 1.0})
        for (double x : {-2.0, 0.7, 3.0})
            for (double y : {-1.5, 0.2, 4.0}) {
                EXPECT_EQ(kernel_a1(k, x, y), kernel_a1(k, y, x));
                EXPECT_EQ(kernel_general({k, 1.5}, x, y), kernel_general({k, 1.5}, y, x));
            }
}

TEST(KernelSup, QuarterCase) {
    // Oracle: mpmath root of d/dt (2 cos t - sin t / t): t = 2.964635007768116, |value| = 2.028146109717125.
    const SweepResult r = kernel_sup(0.25);
    EXPECT_NEAR(r.sup, 2.028146109717125, 1e-12);
    EXPECT_NEAR(r.argmax, 2.964635007768116, 1e-10);
    EXPECT_TRUE(r.refined);
    EXPECT_NEAR(std::abs(kernel_a1_positive_slope(0.25, r.argmax)), 0.0, 1e-10);
    // Closed form check of the sup location: d/dt (2 cos t - sin t / t) = 0.
    const double t = r.argmax;
    EXPECT_NEAR(-2 * std::sin(t) - std::cos(t) / t + std::sin(t) / (t * t), 0.0, 1e-10);
}

TEST(KernelSup, BoundedByOneFromOneHalf) {
    for (double k : {0.5, 0.7, 1.0, 2.0}) EXPECT_LE(kernel_sup(k).sup, 1.0 + 1e-9) << k;
}

TEST(KernelSup, RefinementIsStable) {
    for (double k : {0.3, 0.25, 0.1}) {
        const SweepResult coarse = kernel_sup(k, 60.0, 3000);
        const SweepResult fine = kernel_sup(k, 60.0, 6000);
        EXPECT_NEAR(coarse.sup, fine.sup, 1e-6);
        double grid_max = 1.0;
        for (int i = 1; i <= 3000; ++i) grid_max = std::max(grid_max, std::abs(kernel_a1_positive(k, 0.02 * i)));
        EXPECT_GE(coarse.sup, grid_max);
    }
}

TEST(FindK0, ValueResidualAndMonotonicity) {
    const double k0 = find_k0(1e-6);
    EXPECT_NEAR(k0, 0.44, 0.01);
    // Oracle: scipy brentq over the first minimum of jvp-based g_k: 0.4389145874966.
    EXPECT_NEAR(k0, 0.4389145874966, 1e-9);
    const FirstMinimum m = first_minimum(k0);
    EXPECT_NEAR(m.value, -1.0, 1e-8);
    EXPECT_NEAR(m.t, 3.3835132545, 1e-7);
    double previous = -1e9;
    for (double k = 0.26; k < 0.5; k += 0.02) {
        const double v = first_minimum(k).value;
        EXPECT_GT(v, previous);
        previous = v;
    }
    EXPECT_NEAR(first_minimum(0.3).value, -1.6256577859172, 1e-10);
    EXPECT_THROW(find_k0(0.1), DomainError);
}

TEST(Classify, Cases) {
    const auto low = classify_boundedness(0.1);
    EXPECT_EQ(low.bound, KernelBound::unbounded);
    EXPECT_TRUE(low.growth_confirmed);
    EXPECT_EQ(classify_boundedness(0.3).bound, KernelBound::bounded_above_1);
    EXPECT_EQ(classify_boundedness(0.25).bound, KernelBound::bounded_above_1);
    EXPECT_EQ(classify_boundedness(0.45).bound, KernelBound::bounded_by_1);
    EXPECT_EQ(classify_boundedness(0.7).bound, KernelBound::bounded_by_1);
    EXPECT_STREQ(to_string(KernelBound::bounded_above_1), "bounded_above_1");
}

TEST(GrowthFit, EnvelopeExponent) {
    const GrowthFit fit = growth_exponent_fit(0.1);
    EXPECT_NEAR(fit.exponent, 0.30, 0.05);
    for (std::size_t i = 1; i < fit.sups.size(); ++i) EXPECT_GT(fit.sups[i], fit.sups[i - 1]);
    EXPECT_NEAR(growth_exponent_fit(0.2).exponent, 0.1, 0.05);
}

TEST(IntegralRepresentation, AgreesWithKernel) {
    for (double k : {0.7, 1.0, 3.0}) EXPECT_NEAR(integral_representation(k, 0.0, 4.0), 1.0, 1e-10);
    EXPECT_LE(integral_representation_check(0.5, 1.0, 1.0), 1e-8);
    EXPECT_LE(integral_representation_check(2.0, 1.0, -3.0), 1e-8);
    for (double k : {0.5, 0.75, 1.0, 1.6})
        for (double xy : {-5.0, -0.7, 0.3, 2.0, 8.0}) EXPECT_LE(integral_representation_check(k, xy, 1.0), 1e-8);
    EXPECT_THROW(integral_representation(0.4, 1.0, 1.0), DomainError);
}

TEST(ConjectureScan, ClassicalPathsAndWitness) {
    const auto points = conjecture_scan(default_conjecture_grid(), 100.0, 20000, 4);
    bool witness = false;
    for (const auto& p : points) {
        if ((p.a == 1.0 || p.a == 2.0) && p.condition) {
            EXPECT_LE(p.sup, 1.0 + 1e-6) << p.k << ' ' << p.a;
            EXPECT_FALSE(p.counterexample);
            EXPECT_FALSE(p.experimental);
        }
        if (p.a == 1.0 && p.k == 0.44) {
            EXPECT_FALSE(p.condition);
            EXPECT_TRUE(p.only_sufficient_witness);
            witness = true;
        }
        if (p.a == 1.0 && p.k == 0.1) EXPECT_FALSE(p.bounded);
        if (p.a != 1.0 && p.a != 2.0) EXPECT_TRUE(p.experimental);
    }
    EXPECT_TRUE(witness);
    const auto again = conjecture_scan(default_conjecture_grid(), 100.0, 20000, 1);
    for (std::size_t i = 0; i < points.size(); ++i) EXPECT_EQ(points[i].sup, again[i].sup);
}

TEST(HausdorffYoung, Constant) {
    EXPECT_EQ(hausdorff_young_constant(2.13, 2.0), 1.0);
    EXPECT_EQ(hausdorff_young_constant(1.0, 1.3), 1.0);
    EXPECT_DOUBLE_EQ(hausdorff_young_constant(2.13, 1.0), 2.13);
    EXPECT_THROW(hausdorff_young_constant(2.0, 2.5), DomainError);
    EXPECT_THROW(hausdorff_young_constant(0.5, 1.5), DomainError);
}

TEST(KernelProfile, Csv) {
    std::ostringstream os;
    write_kernel_csv(os, kernel_profile({0.25, 1.0}, 10.0, 4));
    EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "k,a,t,value");
    EXPECT_NE(os.str().find("0.25,1,0,1\n"), std::string::npos);
}

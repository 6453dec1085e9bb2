#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <thread>
#include <vector>

#include "genft/corpus.hpp"
#include "genft/transform.hpp"

using namespace genft;

namespace {
const std::vector<double> sample_rhos = {0.05, 0.2, 0.5, 0.8, 1.0, 1.5, 2.2, 3.0, 4.5, 6.0};
}

TEST(Normalization, Examples) {
    for (double a : {0.5, 1.0, 2.0, 3.0}) EXPECT_DOUBLE_EQ(normalization_b(0.0, a), 1.0);
    for (double lam : {-0.4, 0.0, 0.5, 1.0, 3.0})
        EXPECT_NEAR(normalization_b(lam, 2.0), 1.0 / (std::pow(2.0, lam) * std::tgamma(lam + 1)), 1e-15);
    EXPECT_NEAR(normalization_b(1.0, 1.0), 0.5, 1e-15);
    EXPECT_THROW(normalization_b(-1.0, 2.0), DomainError);
    EXPECT_THROW(normalization_b(0.0, 0.0), DomainError);
}

TEST(MeasureSpec, ReproducesNormalizationAndFlagsRelaxedDomain) {
    for (double lam : {-0.2, 0.3, 1.7})
        for (double a : {0.5, 1.0, 2.5}) {
            if (2 * lam + a <= 0) continue;
            const MeasureSpec m(lam, a);
            const double inv = std::pow(a, 2 * lam / a) * std::tgamma(2 * lam / a + 1);
            EXPECT_NEAR(m.b() * inv, 1.0, 1e-12);
        }
    EXPECT_TRUE(MeasureSpec(-0.2, 0.5).relaxed_domain());
    EXPECT_FALSE(MeasureSpec(-0.1, 0.5).relaxed_domain());
    EXPECT_THROW(MeasureSpec(-0.3, 0.5), DomainError);
}

TEST(WeightedNorm, Examples) {
    const MeasureSpec m(0.0, 2.0);
    EXPECT_NEAR(weighted_norm(corpus::gaussian(), 2.0, 0.0, m), std::sqrt(0.5), 1e-12);
    EXPECT_EQ(weighted_norm(zero_function(), 2.0, 0.0, m), 0.0);
    EXPECT_NEAR(weighted_norm(corpus::exponential(), 2.0, 0.0, m), 0.5, 1e-12);
}

TEST(WeightedNorm, AgainstGammaClosedForms) {
    // b int r^{beta p} e^{-p r} r^{2 lambda + a - 1} dr = b Gamma(s) / p^s with s = beta p + 2 lambda + a.
    for (double lam : {0.0, 0.5, 1.3})
        for (double a : {0.5, 1.0, 2.0})
            for (double beta : {0.0, 0.3, 1.1})
                for (double p : {1.0, 2.0, 3.5}) {
                    const MeasureSpec m(lam, a);
                    const double s = beta * p + 2 * lam + a;
                    const double expected = std::pow(m.b() * std::tgamma(s) / std::pow(p, s), 1.0 / p);
                    EXPECT_NEAR(weighted_norm(corpus::exponential(), p, beta, m) / expected, 1.0, 1e-10);
                }
}

TEST(WeightedNorm, DivergenceIsDetected) {
    const MeasureSpec m(0.0, 2.0);
    EXPECT_THROW(weighted_norm(corpus::gaussian(), 2.0, -1.5, m), DivergenceError);
    EXPECT_THROW(weighted_norm(corpus::power_decay(1.0), 2.0, 0.0, m), DivergenceError);
    // Without metadata the numeric tail test has to catch it.
    TestFunction slow = corpus::power_decay(1.0);
    slow.decay = Decay::unknown();
    EXPECT_THROW(weighted_norm(slow, 2.0, 0.0, m), DivergenceError);
}

TEST(Hankel, GaussianIsSelfReciprocalForEveryOrder) {
    for (double lam : {-0.5, 0.0, 0.5, 1.0, 2.5, 6.0})
        for (double rho : sample_rhos)
            EXPECT_NEAR(hankel(corpus::gaussian(), lam, rho), std::exp(-0.5 * rho * rho), 1e-10) << lam << " " << rho;
}

TEST(Hankel, ExponentialClosedForm) {
    for (double rho : sample_rhos)
        EXPECT_NEAR(hankel(corpus::exponential(), 0.0, rho), std::pow(1 + rho * rho, -1.5), 1e-10) << rho;
    for (double rho : {10.0, 40.0, 200.0})
        EXPECT_NEAR(hankel(corpus::exponential(), 0.0, rho) / std::pow(1 + rho * rho, -1.5), 1.0, 1e-8) << rho;
}

TEST(Hankel, LimitAtOrigin) {
    // b_lambda int e^{-r} r^{2 lambda + 1} dr = Gamma(2 lambda + 2) / (2^lambda Gamma(lambda + 1)).
    for (double lam : {0.0, 0.7, 2.0}) {
        const double expected = std::tgamma(2 * lam + 2) / (std::pow(2.0, lam) * std::tgamma(lam + 1));
        EXPECT_NEAR(hankel(corpus::exponential(), lam, 0.0), expected, 1e-10 * expected);
        EXPECT_NEAR(hankel(corpus::exponential(), lam, 1e-9), expected, 1e-8 * expected);
    }
}

TEST(HankelDeformed, ReducesToClassicalAtTwo) {
    for (const auto& f : corpus::radial_corpus())
        for (double lam : {0.0, 1.0})
            for (double rho : {0.3, 1.1, 2.7})
                EXPECT_NEAR(hankel_deformed(f, MeasureSpec(lam, 2.0), rho), hankel(f, lam, rho), 1e-9) << f.id;
}

TEST(HankelDeformed, DeformedGaussianIsFixed) {
    for (double a : {0.5, 2.0 / 3.0, 1.0, 1.5, 3.0})
        for (double lam : {0.0, 0.5, 1.0}) {
            const MeasureSpec m(lam, a);
            const TestFunction f = corpus::deformed_gaussian(a);
            for (double rho : sample_rhos)
                EXPECT_NEAR(hankel_deformed(f, m, rho), std::exp(-std::pow(rho, a) / a), 1e-8)
                    << a << " " << lam << " " << rho;
        }
}

TEST(HankelDeformed, KnownTransformsOfCorpus) {
    for (const auto& f : corpus::radial_corpus()) {
        if (!f.known_transform) continue;
        for (double a : {1.0, 2.0})
            for (double lam : {0.0, 0.5, 1.0})
                for (double rho : sample_rhos) {
                    const auto expected = f.known_transform(lam, a, rho);
                    if (!expected) continue;
                    EXPECT_NEAR(hankel_deformed(f, MeasureSpec(lam, a), rho), *expected, 1e-9)
                        << f.id << " " << a << " " << lam << " " << rho;
                }
    }
}

TEST(HankelDeformed, LimitAtOrigin) {
    const MeasureSpec m(0.5, 1.0);
    // b int e^{-r} r^{2 lambda + a - 1} dr = b Gamma(2 lambda + a).
    const double expected = m.b() * std::tgamma(2 * 0.5 + 1.0);
    EXPECT_NEAR(hankel_deformed(corpus::exponential(), m, 0.0), expected, 1e-10);
    EXPECT_NEAR(hankel_deformed(corpus::exponential(), m, 1e-10), expected, 1e-8);
}

TEST(HankelDeformed, FlatFunctionAtLargeArguments) {
    // High-precision references for e^{-r-1/r} at lambda = 0, a = 1/2; the reduced integrand vanishes
    // in floating point over a long head and oscillates rapidly beyond it.
    const MeasureSpec m(0.0, 0.5);
    const std::vector<std::pair<double, double>> ref = {{1000.0, 2.35647513804282881803874602652e-4},
                                                        {3000.0, 5.55433835056107212098708866229e-6},
                                                        {7000.0, -6.92664637392618096803059415763e-6},
                                                        {10000.0, 1.04738681403825775140527515062e-6}};
    for (const auto& [rho, expected] : ref)
        EXPECT_NEAR(hankel_deformed(corpus::flat_bump(), m, rho), expected, 1e-11) << rho;
}

TEST(ReduceToClassical, IdentityAtTwoAndExponentialAtOne) {
    const TestFunction f = corpus::exponential();
    const auto same = reduce_to_classical(f, MeasureSpec(0.7, 2.0));
    EXPECT_EQ(same.order, 0.7);
    EXPECT_EQ(same.g.id, f.id);
    const auto red = reduce_to_classical(f, MeasureSpec(0.7, 1.0));
    EXPECT_NEAR(red.order, 1.4, 1e-15);
    for (double s : {0.1, 0.8, 2.0, 5.0}) EXPECT_NEAR(red.g(s), std::exp(-0.5 * s * s), 1e-15);
}

TEST(ReduceToClassical, RoundTripRecoversFunction) {
    for (double a : {0.5, 2.0 / 3.0, 1.0, 3.0, 4.0}) {
        const MeasureSpec m(0.5, a);
        for (const auto& f : corpus::radial_corpus()) {
            const TestFunction back = expand_from_classical(reduce_to_classical(f, m).g, m);
            for (double r : {0.05, 0.3, 1.0, 2.2, 4.0})
                EXPECT_NEAR(back(r), f(r), 1e-12 * std::max(1.0, std::abs(f(r)))) << f.id << " " << a;
        }
    }
}

TEST(Plancherel, Examples) {
    for (double a : {0.5, 1.0, 2.0, 3.0})
        EXPECT_LE(plancherel_defect(corpus::deformed_gaussian(a), MeasureSpec(0.3, a)), 1e-8) << a;
    EXPECT_LE(plancherel_defect(corpus::gaussian(), MeasureSpec(1.0, 2.0)), 1e-8);
    EXPECT_EQ(plancherel_defect(zero_function(), MeasureSpec(1.0, 2.0)), 0.0);
}

TEST(Plancherel, CorpusOverParameterGrid) {
    HankelEngine engine;
    for (double a : {0.5, 1.0, 2.0, 3.0})
        for (double lam : {-0.2, 0.0, 0.75}) {
            if (2 * lam + a <= 0) continue;
            const MeasureSpec m(lam, a);
            for (const auto& f : corpus::radial_corpus()) {
                const double norm = weighted_norm(f, 2.0, 0.0, m);
                EXPECT_LE(plancherel_defect(f, m, engine), 1e-6 * norm) << f.id << " a=" << a << " lam=" << lam;
            }
        }
}

TEST(Involution, Examples) {
    HankelEngine engine;
    EXPECT_LE(involution_defect(corpus::gaussian(), MeasureSpec(0.0, 2.0), engine), 1e-7);
    EXPECT_LE(involution_defect(corpus::gaussian(), MeasureSpec(1.5, 2.0), engine), 1e-7);
    EXPECT_LE(involution_defect(corpus::exponential(), MeasureSpec(0.0, 2.0), engine), 1e-6);
    EXPECT_LE(involution_defect(corpus::r2_gaussian(), MeasureSpec(0.0, 2.0), engine), 1e-6);
}

TEST(TransformProperties, DilationCovariance) {
    HankelEngine engine;
    for (double a : {1.0, 2.0}) {
        const MeasureSpec m(0.5, a);
        const TestFunction f = corpus::poly_gaussian();
        for (double mu : {0.5, 2.0, 3.0}) {
            const TestFunction fm = dilate(f, mu);
            for (double rho : {0.4, 1.3, 2.9}) {
                const double lhs = engine.deformed(fm, m, rho).value;
                const double rhs = std::pow(mu, -(2 * 0.5 + a)) * engine.deformed(f, m, rho / mu).value;
                EXPECT_NEAR(lhs, rhs, 1e-7 * std::max(std::abs(rhs), 1e-3)) << a << " " << mu << " " << rho;
            }
        }
    }
}

TEST(TransformProperties, Linearity) {
    HankelEngine engine;
    const MeasureSpec m(0.25, 1.0);
    const TestFunction f = corpus::sech();
    const TestFunction g = corpus::r_exponential();
    TestFunction h;
    h.id = "lin";
    h.value = [&](double r) { return 2.0 * f(r) - 3.0 * g(r); };
    h.decay = Decay::exponential();
    h.scale = 3.0;
    for (double rho : {0.2, 1.0, 4.0}) {
        const double lhs = engine.deformed(h, m, rho).value;
        const double rhs = 2.0 * engine.deformed(f, m, rho).value - 3.0 * engine.deformed(g, m, rho).value;
        EXPECT_NEAR(lhs, rhs, 1e-9);
    }
}

TEST(TransformEngine, CacheIsConsistentUnderConcurrency) {
    HankelEngine engine;
    const MeasureSpec m(0.5, 1.0);
    const TestFunction f = corpus::sech();
    std::vector<double> serial;
    for (int i = 0; i < 16; ++i) serial.push_back(engine.deformed(f, m, 0.25 * (i + 1)).value);
    HankelEngine shared;
    std::vector<double> parallel(16);
    std::vector<std::thread> workers;
    for (int w = 0; w < 4; ++w)
        workers.emplace_back([&, w] {
            for (int i = w; i < 16; i += 4) parallel[i] = shared.deformed(f, m, 0.25 * (i + 1)).value;
        });
    for (auto& t : workers) t.join();
    EXPECT_EQ(serial, parallel);
    EXPECT_EQ(shared.cache_size(), 16u);
}

TEST(TransformCsv, HeaderAndRoundTripFormatting) {
    std::ostringstream os;
    write_transform_csv(os, {{0.1, 1.0 / 3.0, 1e-12}, {2.0, -0.25, 0.0}});
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    EXPECT_EQ(header, "rho,value,error_estimate");
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(std::stod(line.substr(line.find(',') + 1)), 1.0 / 3.0);
}

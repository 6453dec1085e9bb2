#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "genft/corpus.hpp"
#include "genft/gmclass.hpp"
#include "genft/pitt.hpp"

using namespace genft;

TEST(GMWitness, MonotoneCorpusCertified) {
    for (const TestFunction& f : corpus::monotone_corpus())
        for (double c : {2.0, std::exp(1.0), 4.0}) {
            const GMWitness w = gm_witness_search(f, c);
            EXPECT_LE(w.C, 1.0 / std::log(c) + 1e-6) << f.id << ' ' << c;
            EXPECT_LE(gm_defect(f, {1.0 / std::log(c), c, 0, 0, 0}), 1e-9) << f.id;
        }
}

TEST(GMDefect, Examples) {
    const double e = std::exp(1.0);
    EXPECT_LE(gm_defect(corpus::exponential(), {1.0, e, 0, 0, 0}), 1e-9);
    EXPECT_LE(gm_defect(corpus::power_decay(2.0), {2.0, 2.0, 0, 0, 0}, log_grid(0.01, 100.0, 41)), 0.0);
    // The variation of e^{-r}(1 + sin e^r)/2 grows like e^r while its mass decays.
    EXPECT_GT(gm_defect(corpus::oscillating_truncated(), {100.0, 2.0, 0, 0, 0}, log_grid(0.1, 9.5, 12)), 0.0);
}

TEST(GMDefect, ScaleInvariantWitness) {
    for (const TestFunction& f : corpus::monotone_corpus()) {
        const auto grid = log_grid(1e-2, 1e2, 31);
        const double c0 = gm_witness_search(f, 2.0, grid).C;
        const double c5 = gm_witness_search(scaled(f, 5.0), 2.0, grid).C;
        EXPECT_NEAR(c5, c0, 1e-9 * std::max(1.0, c0)) << f.id;
    }
}

TEST(TailVariation, OscillatingAgainstPartitionOracle) {
    // Oracle: partition sums of |df| with 2e7 points plus the jump at the cutoff.
    const TestFunction f = corpus::oscillating_truncated();
    EXPECT_NEAR(tail_variation(f, 1.0), 2.935522629, 1e-6);
    EXPECT_NEAR(tail_variation(f, 9.0), 0.318308638, 1e-6);
    EXPECT_NEAR(tail_variation(f, 9.99), 0.003193899, 1e-7);
}

TEST(GMClosure, PowerComposition) {
    for (auto [alpha, beta] : {std::pair{2.0, 0.5}, std::pair{0.5, 2.0}})
        for (const TestFunction& f : corpus::monotone_corpus()) {
            const GMWitness w = gm_witness_search(f, 2.0, log_grid(1e-2, 1e2, 41));
            const GMWitness cw = composed_witness(w, alpha, beta);
            EXPECT_DOUBLE_EQ(cw.C, w.C * beta);
            EXPECT_DOUBLE_EQ(cw.c, std::pow(2.0, 1.0 / beta));
            const TestFunction g = power_compose(f, alpha, beta);
            EXPECT_LE(gm_defect(g, cw, log_grid(cw.r_min, cw.r_max, 41)), 1e-9) << f.id << ' ' << beta;
        }
}

TEST(IntegralCondition, Examples) {
    const IntegralCondition ex = integral_condition(corpus::exponential(), 0.0, 2.0);
    EXPECT_TRUE(ex.finite);
    EXPECT_NEAR(ex.origin_part, 1.0 - 2.0 / std::exp(1.0), 1e-10);
    // sigma = 1/2: r^{1/2} |d r^{-1/2}| ~ r^{-1} is the critical logarithmic divergence.
    EXPECT_FALSE(integral_condition(corpus::power_decay(0.5), 0.0, 2.0).finite);
    TestFunction numeric = corpus::power_decay(0.5);
    numeric.decay = Decay::unknown();
    EXPECT_FALSE(integral_condition(numeric, 0.0, 2.0).finite);
    EXPECT_TRUE(integral_condition(corpus::power_decay(1.5), 0.0, 2.0).finite);
    EXPECT_TRUE(integral_condition(corpus::oscillating_truncated(), 0.0, 2.0).finite);
    EXPECT_THROW(integral_condition(corpus::exponential(), 0.0, 0.0), DomainError);
}

TEST(GMRange, Examples) {
    const GMRangeVerdict two = gm_pitt_range(2.0, 2.0, 0.0, 2.0, GMDirection::two_sided);
    EXPECT_DOUBLE_EQ(two.beta_lo, -0.5);
    EXPECT_DOUBLE_EQ(two.beta_hi, 1.0);
    EXPECT_DOUBLE_EQ(two.gamma(0.3), 0.3);
    EXPECT_TRUE(two.contains(-0.4));
    EXPECT_FALSE(two.contains(1.0));
    for (double lambda : {0.0, 0.5, 2.0})
        for (double a : {0.5, 1.0, 2.0})
            for (double p : {1.5, 2.0, 4.0}) {
                const GMRangeVerdict d = gm_pitt_range(p, p, lambda, a, GMDirection::direct);
                const GMRangeVerdict t = gm_pitt_range(p, p, lambda, a, GMDirection::two_sided);
                const double general_lo = (0.5 - 1.0 / p) * (2.0 * lambda + a);
                EXPECT_LT(d.beta_lo, general_lo) << lambda << ' ' << a << ' ' << p;
                EXPECT_EQ(d.beta_hi, t.beta_hi);
                EXPECT_NEAR(d.balance_residual(0.1, d.gamma(0.1)), 0.0, 1e-15);
                EXPECT_NEAR(d.balance_shift, (2.0 * lambda + a) * (1.0 - 2.0 / p), 1e-14);
            }
    const GMRangeVerdict r = gm_pitt_range(3.0, 1.5, 0.0, 2.0, GMDirection::reverse);
    EXPECT_TRUE(std::isinf(r.beta_hi));
    EXPECT_NEAR(r.beta_lo, -2.0 / 3.0 - 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(r.balance_residual(0.5, r.gamma(0.5)), 0.0, 1e-15);
    EXPECT_THROW(gm_pitt_range(3.0, 2.0, 0.0, 2.0, GMDirection::direct), DomainError);
    EXPECT_THROW(gm_pitt_range(2.0, 3.0, 0.0, 2.0, GMDirection::reverse), DomainError);
    EXPECT_THROW(gm_pitt_range(2.0, 3.0, 0.0, 2.0, GMDirection::two_sided), DomainError);
    EXPECT_THROW(gm_pitt_range(1.0, 2.0, 0.0, 2.0, GMDirection::direct), DomainError);
    EXPECT_STREQ(to_string(GMDirection::two_sided), "two-sided");
}

TEST(BoasSagher, PlancherelAndDilation) {
    HankelEngine engine;
    const BoasSagherResult plancherel = boas_sagher_check(corpus::exponential(), 2.0, 0.0, 0.0, 2.0, engine);
    for (double r : plancherel.ratio) EXPECT_NEAR(r, 1.0, 1e-7);
    EXPECT_TRUE(plancherel.converged);
    const BoasSagherResult half = boas_sagher_check(corpus::exponential(), 2.0, 0.5, 0.0, 2.0, engine);
    EXPECT_LE(half.dilation_spread, 1e-6);
    EXPECT_NEAR(half.sharp_bound, sharp_constant(0.5, 0.0, 2.0), 1e-14);
    EXPECT_LE(half.upper, half.sharp_bound);
    EXPECT_GT(half.lower, 0.0);
    const BoasSagherResult poly = boas_sagher_check(corpus::power_decay(3.0), 2.0, 0.2, 0.0, 2.0, engine);
    EXPECT_LE(poly.dilation_spread, 1e-6);
    EXPECT_LE(poly.upper, poly.sharp_bound);
    const BoasSagherResult neg = boas_sagher_check(corpus::exponential(), 2.0, -0.3, 0.0, 2.0, engine);
    EXPECT_LE(neg.dilation_spread, 1e-6);
    EXPECT_TRUE(std::isnan(neg.sharp_bound));
}

TEST(BoasSagher, Preconditions) {
    EXPECT_THROW(boas_sagher_check(corpus::exponential(), 2.0, 1.0, 0.0, 2.0), DomainError);
    EXPECT_THROW(boas_sagher_check(corpus::exponential(), 2.0, -0.5, 0.0, 2.0), DomainError);
    TestFunction signed_fn = corpus::gaussian();
    signed_fn.value = [](double r) { return (1.0 - r * r) * std::exp(-r * r); };
    EXPECT_THROW(boas_sagher_check(signed_fn, 2.0, 0.0, 0.0, 2.0), DomainError);
}

TEST(ConditionChain, HoldsOnExamples) {
    EXPECT_LE(remark_bound_check(corpus::exponential(), 2.0, 0.2, 0.0, 2.0), 0.0);
    EXPECT_LE(remark_bound_check(corpus::power_decay(3.0), 2.0, 0.2, 0.0, 2.0), 0.0);
    EXPECT_LE(remark_bound_check(corpus::sech(), 1.5, 0.3, 0.5, 1.0), 0.0);
    const ConditionChain chain = condition_chain(corpus::exponential(), 2.0, 0.2, 0.0, 2.0);
    EXPECT_DOUBLE_EQ(chain.C_sigma, chain.witness.C * std::pow(2.0, 0.5) * 2.0);
}

TEST(ConditionChain, InfiniteNormRejected) {
    // r^{-3/2} tail with beta = 0.9: r^{0.9} f is not square integrable against r dr.
    EXPECT_THROW(remark_bound_check(corpus::power_decay(1.5), 2.0, 0.9, 0.0, 2.0), DomainError);
    EXPECT_THROW(remark_bound_check(corpus::exponential(), 2.0, 1.2, 0.0, 2.0), DomainError);
}

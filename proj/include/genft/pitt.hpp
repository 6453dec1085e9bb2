#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "genft/errors.hpp"
#include "genft/parallel.hpp"
#include "genft/specfun.hpp"
#include "genft/test_function.hpp"
#include "genft/transform.hpp"

namespace genft {

/// Exponents and weights of ||rho^{-gamma} H_{lambda,a} f||_q <= c ||r^beta f||_p.
struct PittParams {
    double p = 2.0;
    double q = 2.0;
    double beta = 0.0;
    double gamma = 0.0;
    double lambda = 0.0;
    double a = 2.0;

    PittParams() = default;
    PittParams(double p_, double q_, double beta_, double gamma_, double lambda_, double a_)
        : p(p_), q(q_), beta(beta_), gamma(gamma_), lambda(lambda_), a(a_) {
        validate();
    }

    /// The L^2 case with gamma = beta.
    static PittParams l2(double beta, double lambda, double a) { return {2.0, 2.0, beta, beta, lambda, a}; }

    double p_prime() const { return p / (p - 1.0); }

    void validate() const {
        if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("p must lie in (1, inf)");
        if (!(q > 1.0) || !std::isfinite(q)) throw DomainError("q must lie in (1, inf)");
        if (!(a > 0.0)) throw DomainError("parameter a must be positive");
    }
};

/// Dimension, multiplicity value <k> and deformation a of the one-parameter family on R^d.
struct FkaParams {
    int d = 1;
    double k = 0.0;
    double a = 2.0;

    FkaParams() = default;
    FkaParams(int d_, double k_, double a_) : d(d_), k(k_), a(a_) { validate(); }

    double lambda_k() const { return 0.5 * d - 1.0 + k; }

    void validate() const {
        if (d < 1) throw DomainError("dimension must be positive");
        if (!(k >= 0.0)) throw DomainError("multiplicity value must be nonnegative");
        if (!(a > 0.0)) throw DomainError("parameter a must be positive");
        if (!(2.0 * lambda_k() + a > 0.0)) throw DomainError("requires 2 lambda_k + a > 0");
    }
};

enum class FailedCondition { none, balance, lower_bound, upper_bound, p_le_q };

inline const char* to_string(FailedCondition c) {
    switch (c) {
        case FailedCondition::none: return "none";
        case FailedCondition::balance: return "balance";
        case FailedCondition::lower_bound: return "lower-bound";
        case FailedCondition::upper_bound: return "upper-bound";
        case FailedCondition::p_le_q: return "p<=q";
    }
    return "?";
}

struct AdmissibilityVerdict {
    bool admissible = false;
    FailedCondition failed = FailedCondition::none;
};

/// Necessary and sufficient conditions for the weighted (p, q) inequality; reports the first failure.
inline AdmissibilityVerdict admissible(const PittParams& pp) {
    pp.validate();
    if (4.0 * pp.lambda + pp.a < 0.0) throw DomainError("admissibility requires 4 lambda + a >= 0");
    const double inv_pp = 1.0 / pp.p_prime();
    const double gap = inv_pp - 1.0 / pp.q;
    const double width = 2.0 * pp.lambda + pp.a;
    const double slack = 1e-12 * std::max({1.0, std::abs(pp.beta), std::abs(pp.gamma), width});
    auto fail = [](FailedCondition c) { return AdmissibilityVerdict{false, c}; };
    if (std::abs(pp.beta - pp.gamma - width * gap) > slack) return fail(FailedCondition::balance);
    const double lower = (0.5 - 1.0 / pp.p) * (2.0 * pp.lambda + 0.5 * pp.a) + 0.5 * pp.a * std::max(gap, 0.0);
    if (pp.beta < lower - slack) return fail(FailedCondition::lower_bound);
    if (!(pp.beta < width * inv_pp)) return fail(FailedCondition::upper_bound);
    if (pp.p > pp.q) return fail(FailedCondition::p_le_q);
    return {true, FailedCondition::none};
}

namespace detail {
/// ln c(beta, lambda, a) without range checks (also meaningful for small negative beta).
inline double log_sharp_constant(double beta, double lambda, double a) {
    const double mid = lambda + 0.5 * a;
    return -2.0 * beta / a * std::log(a) + log_gamma((mid - beta) / a) - log_gamma((mid + beta) / a);
}
}  // namespace detail

/// c(beta, lambda, a) = a^{-2 beta/a} Gamma((lambda + a/2 - beta)/a) / Gamma((lambda + a/2 + beta)/a).
inline double sharp_constant(double beta, double lambda, double a) {
    if (!(a > 0.0)) throw DomainError("parameter a must be positive");
    if (!(2.0 * lambda + a > 0.0)) throw DomainError("requires 2 lambda + a > 0");
    if (!(beta >= 0.0 && beta < lambda + 0.5 * a)) throw DomainError("beta must lie in [0, lambda + a/2)");
    if (beta == 0.0) return 1.0;
    return std::exp(detail::log_sharp_constant(beta, lambda, a));
}

/// The constant for the n-th spherical-harmonic layer: c(beta, lambda_k + n, a).
inline double sharp_constant_fka(double beta, const FkaParams& params, int n = 0) {
    params.validate();
    if (n < 0) throw DomainError("harmonic degree must be nonnegative");
    return sharp_constant(beta, params.lambda_k() + n, params.a);
}

/// |c(beta, lambda, a) - (a/2)^{-2 beta/a} c(2 beta/a, 2 lambda/a, 2)|.
inline double scaling_identity_defect(double beta, double lambda, double a) {
    const double lhs = sharp_constant(beta, lambda, a);
    if (a == 2.0) return 0.0;
    const double rhs = std::pow(0.5 * a, -2.0 * beta / a) * sharp_constant(2.0 * beta / a, 2.0 * lambda / a, 2.0);
    return std::abs(lhs - rhs);
}

/// (2/a)(psi(lambda/a + 1/2) + ln a): the right-hand factor of the logarithmic uncertainty inequality.
inline double log_up_constant(double lambda, double a) {
    return 2.0 / a * (digamma(lambda / a + 0.5) + std::log(a));
}

/// Richardson-extrapolated central difference of beta -> c^2(beta/2, lambda, a) at beta = 0.
inline double constant_slope_at_zero(double lambda, double a) {
    auto c2 = [&](double beta) { return std::exp(2.0 * detail::log_sharp_constant(0.5 * beta, lambda, a)); };
    auto central = [&](double h) { return (c2(h) - c2(-h)) / (2.0 * h); };
    const double h = 1e-3 * std::min(1.0, lambda + 0.5 * a);
    return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

/// |numeric slope + log_up_constant|: the slope of c^2(beta/2, lambda, a) at 0 is minus the logarithmic constant.
inline double derivative_link_defect(double lambda, double a) {
    return std::abs(constant_slope_at_zero(lambda, a) + log_up_constant(lambda, a));
}

struct QuotientResult {
    double value = 0.0;
    double numerator = 0.0;
    double denominator = 0.0;
    /// Relative error estimate of the quotient.
    double rel_error = 0.0;
    bool converged = false;
};

/// ||rho^{-gamma} H_{lambda,a} f||_q / ||r^beta f||_p with quadrature diagnostics.
inline QuotientResult pitt_quotient_result(const TestFunction& f, const PittParams& pp, HankelEngine& engine,
                                           double rel_tol = 1e-9) {
    pp.validate();
    const MeasureSpec m(pp.lambda, pp.a);
    const NormResult den = weighted_norm_result(f, pp.p, pp.beta, m, {1e-300, 0.1 * rel_tol});
    if (!(den.value > 0.0)) throw DegenerateInput("pitt_quotient: ||r^beta f||_p vanishes");
    const NormResult num = transform_norm_result(f, pp.q, pp.gamma, m, engine, {1e-300, rel_tol});
    QuotientResult out;
    out.numerator = num.value;
    out.denominator = den.value;
    out.value = num.value / den.value;
    out.rel_error = (num.value > 0.0 ? num.error_estimate / num.value : 0.0) + den.error_estimate / den.value;
    out.converged = num.converged && den.converged;
    return out;
}

inline double pitt_quotient(const TestFunction& f, const PittParams& pp, HankelEngine& engine) {
    const QuotientResult r = pitt_quotient_result(f, pp, engine);
    if (!r.converged) throw NumericalError("pitt_quotient: quadrature did not converge");
    return r.value;
}

inline double pitt_quotient(const TestFunction& f, const PittParams& pp) {
    HankelEngine engine;
    return pitt_quotient(f, pp, engine);
}

/// C-infinity step: 0 for x <= 0, 1 for x >= 1, built from e^{-1/x}.
inline double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double u = std::exp(-1.0 / x);
    const double v = std::exp(-1.0 / (1.0 - x));
    return u / (u + v);
}

/// Smooth window equal to 1 on [eps, 1/eps] and 0 outside (eps/2, 2/eps).
inline double probe_window(double r, double eps) {
    if (r < eps) return smooth_step((r - 0.5 * eps) / (0.5 * eps));
    if (r > 1.0 / eps) return smooth_step((2.0 / eps - r) * eps);
    return 1.0;
}

/// Near-extremal family r^{-(lambda + a/2) - beta} omega_eps(r) for the L^2 inequality.
inline TestFunction probe_function(double beta, double lambda, double a, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("probe width eps must lie in (0, 1)");
    const double alpha = lambda + 0.5 * a + beta;
    TestFunction f;
    f.id = "probe(" + detail::format_param(beta) + "," + detail::format_param(lambda) + "," +
           detail::format_param(a) + "," + detail::format_param(eps) + ")";
    f.value = [alpha, eps](double r) {
        const double w = probe_window(r, eps);
        return w == 0.0 ? 0.0 : w * std::pow(r, -alpha);
    };
    f.decay = Decay::compact(2.0 / eps, true);
    f.smoothness = Smoothness::schwartz0;
    f.support_start = 0.5 * eps;
    f.scale = eps;
    return f;
}

struct ProbeResult {
    double quotient = 0.0;
    /// quotient / c(beta, lambda, a).
    double ratio = 0.0;
    double rel_error = 0.0;
    bool converged = false;
    /// Number of tightened retries that were needed.
    int retries = 0;
};

/// Pitt quotient of the probe family at p = q = 2, gamma = beta, at relative accuracy 1e-6.
inline ProbeResult sharpness_probe_result(double beta, double lambda, double a, double eps) {
    if (!(beta > 0.0 && beta < lambda + 0.5 * a)) throw DomainError("probe requires 0 < beta < lambda + a/2");
    const double c = sharp_constant(beta, lambda, a);
    const TestFunction f = probe_function(beta, lambda, a, eps);
    ProbeResult out;
    TransformOptions options;
    options.tol = {1e-300, 1e-8};
    for (int attempt = 0; attempt < 3; ++attempt) {
        HankelEngine engine(options);
        const QuotientResult q = pitt_quotient_result(f, PittParams::l2(beta, lambda, a), engine, 1e-6);
        out.quotient = q.value;
        out.ratio = q.value / c;
        out.rel_error = q.rel_error;
        out.converged = q.converged;
        out.retries = attempt;
        if (q.converged) break;
        options.tol = options.tol.scaled(0.01);
        options.budget *= 4;
    }
    return out;
}

inline double sharpness_probe(double beta, double lambda, double a, double eps) {
    const ProbeResult r = sharpness_probe_result(beta, lambda, a, eps);
    if (!r.converged) throw NumericalError("sharpness_probe: quadrature did not converge after retries");
    return r.quotient;
}

struct ConstantRow {
    double beta;
    double lambda;
    double a;
    double c;
};

/// c(beta, lambda, a) over the product grid, skipping points outside [0, lambda + a/2).
inline std::vector<ConstantRow> constant_table(const std::vector<double>& betas, const std::vector<double>& lambdas,
                                               const std::vector<double>& as, unsigned threads = 0) {
    std::vector<ConstantRow> grid;
    for (double a : as)
        for (double lambda : lambdas)
            for (double beta : betas)
                if (a > 0.0 && 2.0 * lambda + a > 0.0 && beta >= 0.0 && beta < lambda + 0.5 * a)
                    grid.push_back({beta, lambda, a, 0.0});
    return parallel_map(
        grid,
        [](const ConstantRow& row) {
            ConstantRow out = row;
            out.c = sharp_constant(row.beta, row.lambda, row.a);
            return out;
        },
        threads);
}

inline void write_constant_csv(std::ostream& os, const std::vector<ConstantRow>& rows) {
    os << "beta,lambda,a,c\n";
    for (const auto& r : rows)
        os << format_number(r.beta) << ',' << format_number(r.lambda) << ',' << format_number(r.a) << ','
           << format_number(r.c) << '\n';
}

}  // namespace genft

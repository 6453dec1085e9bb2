#pragma once

#include <cmath>

#include "genft/errors.hpp"
#include "genft/fka1d.hpp"
#include "genft/pitt.hpp"
#include "genft/transform.hpp"

namespace genft {

struct LogUncertainty {
    /// int ln|x| |f|^2 d mu.
    double space = 0.0;
    /// int ln|y| |F f|^2 d mu.
    double frequency = 0.0;
    double norm2 = 0.0;
    /// (2/a)(psi(lambda_k/a + 1/2) + ln a) ||f||^2.
    double bound = 0.0;
    bool converged = false;

    double gap() const { return space + frequency - bound; }
};

inline LogUncertainty log_uncertainty(const ParityFunction& pf, const FkaParams& params, HankelEngine& engine) {
    detail::require_line(params);
    if (!pf.has_even && !pf.has_odd) throw DegenerateInput("log uncertainty of the zero function");
    const MeasureSpec m = detail::even_measure(params);
    const double dens = m.density_exponent();
    LogUncertainty out;
    const double n = fka_norm(pf, params);
    out.norm2 = n * n;
    out.bound = log_up_constant(params.lambda_k(), params.a) * out.norm2;
    // Both integrands change sign at 1, so accuracy is set relative to ||f||^2.
    const double abs_tol = 1e-11 * out.norm2 / m.b();
    const TestFunction profile = detail::line_profile(pf, 2.0);
    auto space = [&](double r) {
        const double v = profile(r);
        return v == 0.0 ? 0.0 : std::log(r) * v * v * std::pow(r, dens);
    };
    const LogAxisResult s = integrate_log_axis(space, {abs_tol, 1e-10}, profile.support_start);
    if (s.divergent) throw DivergenceError("log-weighted norm diverges");
    out.space = m.b() * s.value;
    auto weight = [dens](double rho) { return std::log(rho) * std::pow(rho, dens); };
    auto magnitude = [dens](double rho) { return std::max(1.0, std::abs(std::log(rho))) * std::pow(rho, dens); };
    auto sample = [&](double rho, double inner_abs) {
        return detail::fka_power_sample(pf, params, rho, 2.0, engine, inner_abs);
    };
    const TransformSideResult t = detail::transform_side_integral(sample, weight, magnitude, 2.0, {abs_tol, 1e-10});
    if (t.integral.divergent) throw DivergenceError("log-weighted transform norm diverges");
    out.frequency = m.b() * t.integral.value;
    out.converged = s.converged && t.integral.converged && t.inner_converged;
    return out;
}

/// LHS - RHS of the logarithmic uncertainty inequality (nonnegative up to quadrature error).
inline double log_up_gap(const ParityFunction& pf, const FkaParams& params, HankelEngine& engine) {
    const LogUncertainty u = log_uncertainty(pf, params, engine);
    if (!u.converged) throw NumericalError("log_up_gap: quadrature did not converge");
    return u.gap();
}

inline double log_up_gap(const ParityFunction& pf, const FkaParams& params) {
    HankelEngine engine;
    return log_up_gap(pf, params, engine);
}

/// || |x|^{a/2} f || || |y|^{a/2} F f || - ((2 lambda_k + a)/2) ||f||^2; zero exactly for f = C e^{-c|x|^a}.
inline double heisenberg_defect(const ParityFunction& pf, const FkaParams& params, HankelEngine& engine) {
    detail::require_line(params);
    const double a = params.a;
    const double space = fka_norm(pf, params, 0.5 * a);
    const double freq = fka_transform_norm(pf, params, 2.0, -0.5 * a, engine);
    const double n = fka_norm(pf, params);
    return space * freq - 0.5 * (2.0 * params.lambda_k() + a) * n * n;
}

inline double heisenberg_defect(const ParityFunction& pf, const FkaParams& params) {
    HankelEngine engine;
    return heisenberg_defect(pf, params, engine);
}

}  // namespace genft

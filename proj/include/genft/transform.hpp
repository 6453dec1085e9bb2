#pragma once

#include <charconv>
#include <cmath>
#include <map>
#include <mutex>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "genft/errors.hpp"
#include "genft/quadrature.hpp"
#include "genft/specfun.hpp"
#include "genft/test_function.hpp"

namespace genft {

/// b_{lambda,a} with b^{-1} = a^{2 lambda/a} Gamma(2 lambda/a + 1).
inline double normalization_b(double lambda, double a) {
    if (!(a > 0.0)) throw DomainError("parameter a must be positive");
    if (!(2.0 * lambda + a > 0.0)) throw DomainError("measure requires 2 lambda + a > 0");
    const double nu = 2.0 * lambda / a;
    return std::exp(-nu * std::log(a) - log_gamma(nu + 1.0));
}

/// The measure d nu_{lambda,a} = b_{lambda,a} r^{2 lambda + a - 1} dr on (0, inf).
class MeasureSpec {
public:
    MeasureSpec(double lambda, double a) : lambda_(lambda), a_(a), b_(normalization_b(lambda, a)) {}

    double lambda() const { return lambda_; }
    double a() const { return a_; }
    double b() const { return b_; }
    /// Exponent of r in the density.
    double density_exponent() const { return 2.0 * lambda_ + a_ - 1.0; }
    /// Order of the classical transform after the substitution r = (a/2)^{1/a} s^{2/a}.
    double reduced_order() const { return 2.0 * lambda_ / a_; }
    /// Set when 4 lambda + a < 0: accepted for L^2 statements, refused by the admissibility checks.
    bool relaxed_domain() const { return 4.0 * lambda_ + a_ < 0.0; }
    double density(double r) const { return b_ * std::pow(r, density_exponent()); }

private:
    double lambda_;
    double a_;
    double b_;
};

struct ReducedFunction {
    double order;
    TestFunction g;
};

namespace detail {

inline Decay map_decay(const Decay& d, double power, double kappa, double a) {
    Decay out = d;
    if (d.kind == DecayClass::power) out.exponent = d.exponent * power;
    if (d.kind == DecayClass::compact) out.support_end = std::pow(d.support_end / kappa, a / 2.0);
    return out;
}

}  // namespace detail

/// g(s) = f((a/2)^{1/a} s^{2/a}) and order 2 lambda / a, so that H_{lambda,a} f(rho) = H_{2 lambda/a} g(sqrt(2/a) rho^{a/2}).
inline ReducedFunction reduce_to_classical(const TestFunction& f, const MeasureSpec& m) {
    const double a = m.a();
    if (a == 2.0) return {m.lambda(), f};
    const double kappa = std::pow(0.5 * a, 1.0 / a);
    const double p = 2.0 / a;
    TestFunction g = f;
    g.id = f.id + "|sub" + detail::format_param(a);
    g.value = [v = f.value, kappa, p](double s) { return v(kappa * std::pow(s, p)); };
    if (f.derivative)
        g.derivative = [d = f.derivative, kappa, p](double s) {
            return d(kappa * std::pow(s, p)) * kappa * p * std::pow(s, p - 1.0);
        };
    g.decay = detail::map_decay(f.decay, p, kappa, a);
    g.origin_exponent = f.origin_exponent * p;
    g.support_start = f.support_start > 0.0 ? std::pow(f.support_start / kappa, a / 2.0) : 0.0;
    g.scale = std::pow(f.scale / kappa, a / 2.0);
    g.known_transform = nullptr;
    return {m.reduced_order(), g};
}

/// Inverse substitution: f(r) = g(sqrt(2/a) r^{a/2}).
inline TestFunction expand_from_classical(const TestFunction& g, const MeasureSpec& m) {
    const double a = m.a();
    if (a == 2.0) return g;
    const double c = std::sqrt(2.0 / a);
    TestFunction f = g;
    f.id = g.id + "|exp" + detail::format_param(a);
    f.value = [v = g.value, c, a](double r) { return v(c * std::pow(r, 0.5 * a)); };
    f.derivative = nullptr;
    f.origin_exponent = g.origin_exponent * a / 2.0;
    f.known_transform = nullptr;
    return f;
}

namespace detail {

/// Largest s0 such that g vanishes in floating point on (0, s0], found by bisection and confirmed on a
/// dense sample; 0 when g has no such head. Flat functions underflow near the origin, and skipping the
/// head spares the oscillatory integrator millions of empty panels at large transform variables.
inline double underflow_head(const TestFunction& g) {
    if (g.support_start > 0.0 || !(g.scale > 0.0)) return 0.0;
    double zero_at = 0.0;
    double nonzero_at = g.scale;
    if (g(nonzero_at) == 0.0) return 0.0;
    for (int k = 1; k <= 60; ++k) {
        const double s = g.scale * std::ldexp(1.0, -k);
        if (g(s) == 0.0) {
            zero_at = s;
            break;
        }
        nonzero_at = s;
    }
    if (zero_at == 0.0) return 0.0;
    for (int i = 0; i < 60 && nonzero_at - zero_at > 1e-12 * nonzero_at; ++i) {
        const double mid = 0.5 * (zero_at + nonzero_at);
        (g(mid) == 0.0 ? zero_at : nonzero_at) = mid;
    }
    for (int i = 1; i <= 256; ++i)
        if (g(zero_at * i / 256.0) != 0.0) return 0.0;
    return zero_at;
}

}  // namespace detail

struct TransformOptions {
    Tolerance tol{1e-12, 1e-10};
    std::size_t budget = default_evaluation_budget;
    bool cache = true;
};

/// Evaluates classical and deformed Hankel transforms; memoizes values per (function id, order, point).
class HankelEngine {
public:
    explicit HankelEngine(TransformOptions options = {}) : options_(options) {}

    const TransformOptions& options() const { return options_; }

    /// H_nu g(rho) = b_nu int_0^inf g(s) j_nu(rho s) s^{2 nu + 1} ds.
    QuadratureResult classical(const TestFunction& g, double nu, double rho) {
        return classical(g, nu, rho, options_.tol);
    }

    /// Same with an explicit tolerance (part of the cache key).
    QuadratureResult classical(const TestFunction& g, double nu, double rho, Tolerance tol) {
        if (!(nu > -1.0)) throw DomainError("Hankel order must exceed -1");
        if (!(rho >= 0.0)) throw DomainError("transform variable must be nonnegative");
        const Key key{g.id, nu, rho, tol.abs, tol.rel};
        if (options_.cache && !g.id.empty()) {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
        }
        const QuadratureResult r = compute_classical(g, nu, rho, tol);
        if (options_.cache && !g.id.empty()) {
            std::lock_guard<std::mutex> lock(mutex_);
            cache_.emplace(key, r);
        }
        return r;
    }

    /// H_{lambda,a} f(rho) through the reduction to the classical transform.
    QuadratureResult deformed(const TestFunction& f, const MeasureSpec& m, double rho) {
        return deformed(f, m, rho, options_.tol);
    }

    QuadratureResult deformed(const TestFunction& f, const MeasureSpec& m, double rho, Tolerance tol) {
        if (!(rho >= 0.0)) throw DomainError("transform variable must be nonnegative");
        if (m.a() == 2.0) return classical(f, m.lambda(), rho, tol);
        const ReducedFunction red = reduce_to_classical(f, m);
        const double theta = std::sqrt(2.0 / m.a()) * std::pow(rho, 0.5 * m.a());
        return classical(red.g, red.order, theta, tol);
    }

    std::size_t cache_size() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return cache_.size();
    }

private:
    struct Key {
        std::string id;
        double nu;
        double rho;
        double abs_tol;
        double rel_tol;
        bool operator<(const Key& o) const {
            return std::tie(id, nu, rho, abs_tol, rel_tol) < std::tie(o.id, o.nu, o.rho, o.abs_tol, o.rel_tol);
        }
    };

    QuadratureResult compute_classical(const TestFunction& g, double nu, double rho, Tolerance tol) const {
        const double b = normalization_b(nu, 2.0);
        const double power = 2.0 * nu + 1.0;
        const NormalizedBessel j{BesselOrder(nu)};
        IntegrandSpec spec;
        spec.decay = g.decay;
        if (g.decay.kind == DecayClass::power)
            spec.decay.exponent = g.decay.exponent + power - (rho > 0.0 ? nu + 0.5 : 0.0);
        if (rho > 0.0) spec.oscillation = Oscillation{nu, rho};
        spec.start = std::max(g.support_start, head_of(g));
        spec.lo_exponent = spec.start > 0.0 ? 0.0 : g.origin_exponent + power;
        spec.scale = g.scale;
        spec.budget = options_.budget;
        const auto& gv = g.value;
        auto integrand = [&](double s) {
            const double v = gv(s);
            if (v == 0.0) return 0.0;
            return b * v * j(rho * s) * std::pow(s, power);
        };
        return integrate_semi_infinite(integrand, spec, tol);
    }

    double head_of(const TestFunction& g) const {
        if (g.id.empty()) return detail::underflow_head(g);
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = heads_.find(g.id);
            if (it != heads_.end()) return it->second;
        }
        const double h = detail::underflow_head(g);
        std::lock_guard<std::mutex> lock(mutex_);
        heads_.emplace(g.id, h);
        return h;
    }

    TransformOptions options_;
    mutable std::mutex mutex_;
    mutable std::map<std::string, double> heads_;
    std::map<Key, QuadratureResult> cache_;
};

namespace detail {
inline double checked(const QuadratureResult& r, const char* what) {
    if (!r.converged)
        throw NumericalError(std::string(what) + ": quadrature did not converge (error estimate " +
                             std::to_string(r.error_estimate) + ")");
    return r.value;
}
}  // namespace detail

inline double hankel(const TestFunction& f, double lambda, double rho) {
    HankelEngine engine({TransformOptions{}.tol, default_evaluation_budget, false});
    return detail::checked(engine.classical(f, lambda, rho), "hankel");
}

inline double hankel_deformed(const TestFunction& f, const MeasureSpec& m, double rho) {
    HankelEngine engine({TransformOptions{}.tol, default_evaluation_budget, false});
    return detail::checked(engine.deformed(f, m, rho), "hankel_deformed");
}

/// The function rho -> H_{lambda,a} f(rho) as a TestFunction (values come from the engine).
inline TestFunction transformed(const TestFunction& f, const MeasureSpec& m, HankelEngine& engine) {
    TestFunction h;
    h.id = "H[" + detail::format_param(m.lambda()) + "," + detail::format_param(m.a()) + "](" + f.id + ")";
    // Values below their own error estimate are quadrature noise; reporting them as zero keeps
    // the far tail from feeding roundoff into outer integrals.
    h.value = [f, m, &engine](double rho) {
        const QuadratureResult r = engine.deformed(f, m, rho);
        return std::abs(r.value) <= r.error_estimate ? 0.0 : r.value;
    };
    h.decay = f.decay.kind == DecayClass::schwartz ? Decay::schwartz() : Decay::unknown();
    h.smoothness = f.smoothness;
    h.scale = 1.0 / f.scale;
    return h;
}

struct NormResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
};

namespace detail {

inline void check_weight_integrability(const TestFunction& f, double p, double beta, const MeasureSpec& m) {
    const double dens = m.density_exponent();
    if (f.support_start <= 0.0) {
        const double origin = beta * p + f.origin_exponent * p + dens;
        if (!(origin > -1.0)) throw DivergenceError("weighted norm diverges at the origin");
    }
    if (f.decay.kind == DecayClass::power && std::isfinite(f.decay.exponent)) {
        const double tail = beta * p + f.decay.exponent * p + dens;
        if (!(tail < -1.0)) throw DivergenceError("weighted norm diverges at infinity");
    }
}

}  // namespace detail

/// ||r^beta f||_{p, d nu_{lambda,a}} with its quadrature diagnostics.
inline NormResult weighted_norm_result(const TestFunction& f, double p, double beta, const MeasureSpec& m,
                                       Tolerance tol = {1e-300, 1e-12}) {
    if (!(p >= 1.0)) throw DomainError("norm exponent must be at least 1");
    detail::check_weight_integrability(f, p, beta, m);
    const double dens = m.density_exponent();
    auto integrand = [&](double r) {
        const double v = std::abs(f.value(r));
        if (v == 0.0) return 0.0;
        return std::pow(v, p) * std::pow(r, beta * p + dens);
    };
    const double hi = f.decay.kind == DecayClass::compact ? f.decay.support_end : std::numeric_limits<double>::infinity();
    if (!(hi > f.support_start)) return {0.0, 0.0, true};
    const LogAxisResult r = integrate_log_axis(integrand, tol, f.support_start, hi);
    if (r.divergent) throw DivergenceError("weighted norm integral does not converge");
    const double integral = m.b() * r.value;
    const double value = std::pow(std::max(integral, 0.0), 1.0 / p);
    const double err = integral > 0.0 ? value * m.b() * r.error_estimate / (p * integral) : 0.0;
    return {value, err, r.converged};
}

inline double weighted_norm(const TestFunction& f, double p, double beta, const MeasureSpec& m) {
    const NormResult r = weighted_norm_result(f, p, beta, m);
    if (!r.converged) throw NumericalError("weighted_norm: quadrature did not converge");
    return r.value;
}

/// |value|^q of one transform-side sample and a bound on the error of that power.
struct PowerSample {
    double power = 0.0;
    double uncertainty = 0.0;
    bool converged = true;
};

/// Power sample of a single transform value with its quadrature error.
inline PowerSample power_sample(const QuadratureResult& h, double q) {
    const double v = std::abs(h.value);
    PowerSample s;
    s.uncertainty = std::pow(v + h.error_estimate, q) - std::pow(v, q);
    s.converged = h.converged;
    // Values below their own error estimate are quadrature noise.
    s.power = v <= h.error_estimate ? 0.0 : std::pow(v, q);
    return s;
}

struct TransformSideResult {
    LogAxisResult integral;
    bool inner_converged = true;
};

namespace detail {

/// int_0^inf sample(rho, inner_abs).power * weight(rho) drho, where `magnitude` is a positive bound
/// on |weight| and `sample` returns |transform|^q given the absolute accuracy its values need.
/// The largest integrand per unit of ln rho seen so far sets that accuracy: transform values whose
/// contribution falls far below it only need absolute accuracy, which keeps the far tail, where the
/// transform is tiny and strongly cancelling, from demanding unattainable relative accuracy.
template <class Sample, class Weight, class Magnitude>
TransformSideResult transform_side_integral(Sample&& sample, Weight&& weight, Magnitude&& magnitude, double q,
                                            Tolerance tol) {
    TransformSideResult out;
    double peak = 0.0;
    auto integrand = [&](double rho) {
        const double mag = magnitude(rho);
        const double inner_abs = peak > 0.0 ? 1e-3 * tol.rel * std::pow(peak / (mag * rho), 1.0 / q) : 0.0;
        const PowerSample s = sample(rho, inner_abs);
        // An unconverged value is harmless when even its full error bar is negligible next to the peak.
        if (!s.converged && s.uncertainty * mag * rho > 1e-2 * tol.rel * peak) out.inner_converged = false;
        if (s.power == 0.0) return 0.0;
        peak = std::max(peak, s.power * mag * rho);
        return s.power * weight(rho);
    };
    out.integral = integrate_log_axis(integrand, tol);
    return out;
}

}  // namespace detail

/// ||rho^{-gamma} H_{lambda,a} f||_{q, d nu_{lambda,a}}.
inline NormResult transform_norm_result(const TestFunction& f, double q, double gamma, const MeasureSpec& m,
                                        HankelEngine& engine, Tolerance tol = {1e-300, 1e-9}) {
    if (!(q >= 1.0)) throw DomainError("norm exponent must be at least 1");
    const double exponent = -gamma * q + m.density_exponent();
    if (!(exponent > -1.0)) throw DivergenceError("transform-side weight is not integrable at the origin");
    auto weight = [exponent](double rho) { return std::pow(rho, exponent); };
    auto sample = [&](double rho, double inner_abs) {
        Tolerance inner = engine.options().tol;
        inner.abs = std::max(inner.abs, inner_abs);
        return power_sample(engine.deformed(f, m, rho, inner), q);
    };
    const TransformSideResult t = detail::transform_side_integral(sample, weight, weight, q, tol);
    if (t.integral.divergent) throw DivergenceError("transform-side norm integral does not converge");
    const double integral = m.b() * t.integral.value;
    const double value = std::pow(std::max(integral, 0.0), 1.0 / q);
    const double err = integral > 0.0 ? value * m.b() * t.integral.error_estimate / (q * integral) : 0.0;
    return {value, err, t.integral.converged && t.inner_converged};
}

inline double transform_norm(const TestFunction& f, double q, double gamma, const MeasureSpec& m, HankelEngine& engine) {
    const NormResult r = transform_norm_result(f, q, gamma, m, engine);
    if (!r.converged) throw NumericalError("transform_norm: quadrature did not converge");
    return r.value;
}

/// | ||H_{lambda,a} f||_2 - ||f||_2 |.
inline double plancherel_defect(const TestFunction& f, const MeasureSpec& m, HankelEngine& engine) {
    const double lhs = transform_norm(f, 2.0, 0.0, m, engine);
    const double rhs = weighted_norm(f, 2.0, 0.0, m);
    return std::abs(lhs - rhs);
}

inline double plancherel_defect(const TestFunction& f, const MeasureSpec& m) {
    HankelEngine engine;
    return plancherel_defect(f, m, engine);
}

inline std::vector<double> default_involution_grid() { return {0.1, 0.3, 0.7, 1.2, 2.0, 3.5, 5.0}; }

/// sup over the grid of |H_{lambda,a}(H_{lambda,a} f)(r) - f(r)|.
inline double involution_defect(const TestFunction& f, const MeasureSpec& m, HankelEngine& engine,
                                const std::vector<double>& grid = default_involution_grid()) {
    const TestFunction once = transformed(f, m, engine);
    // Inner values carry ~1e-12 absolute error spread over a wide rho range (a < 1), so the outer
    // integral cannot resolve below ~1e-9 and is not asked to.
    const Tolerance outer{1e-9, 1e-10};
    double worst = 0.0;
    for (double r : grid) {
        const QuadratureResult twice = engine.deformed(once, m, r, outer);
        if (!twice.converged) throw NumericalError("involution_defect: outer transform did not converge");
        worst = std::max(worst, std::abs(twice.value - f(r)));
    }
    return worst;
}

inline double involution_defect(const TestFunction& f, const MeasureSpec& m,
                                const std::vector<double>& grid = default_involution_grid()) {
    HankelEngine engine;
    return involution_defect(f, m, engine, grid);
}

/// Shortest round-trip decimal representation, independent of the global locale.
inline std::string format_number(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

struct TransformSample {
    double rho;
    double value;
    double error_estimate;
};

inline std::vector<TransformSample> sample_transform(const TestFunction& f, const MeasureSpec& m,
                                                     const std::vector<double>& rhos, HankelEngine& engine) {
    std::vector<TransformSample> out;
    out.reserve(rhos.size());
    for (double rho : rhos) {
        const QuadratureResult r = engine.deformed(f, m, rho);
        out.push_back({rho, r.value, r.error_estimate});
    }
    return out;
}

inline void write_transform_csv(std::ostream& os, const std::vector<TransformSample>& rows) {
    os << "rho,value,error_estimate\n";
    for (const auto& row : rows)
        os << format_number(row.rho) << ',' << format_number(row.value) << ',' << format_number(row.error_estimate)
           << '\n';
}

}  // namespace genft

#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <string>

#include "genft/quadrature.hpp"

namespace genft {

enum class Smoothness { schwartz0, schwartz, power_decay, gm_family };

/// Closed-form radial function on (0, inf) together with the metadata the integrators need.
struct TestFunction {
    /// Must identify the function uniquely within a run: transform caches key on it.
    std::string id;
    std::function<double(double)> value;
    /// Optional closed-form derivative (used for variation integrals).
    std::function<double(double)> derivative;
    Decay decay = Decay::schwartz();
    Smoothness smoothness = Smoothness::schwartz;
    /// f(r) ~ r^origin_exponent as r -> 0 (ignored when support_start > 0).
    double origin_exponent = 0.0;
    /// f vanishes on (0, support_start).
    double support_start = 0.0;
    /// Length scale beyond which the function is in its tail.
    double scale = 1.0;
    /// Optional closed-form deformed transform, (lambda, a, rho) -> value when known.
    std::function<std::optional<double>(double, double, double)> known_transform;

    double operator()(double r) const { return value(r); }

    double derivative_at(double r) const {
        if (derivative) return derivative(r);
        const double h = 1e-5 * std::max(r, 1e-3);
        if (r - 2 * h <= support_start) return (value(r + h) - value(r)) / h;
        return (8.0 * (value(r + h) - value(r - h)) - (value(r + 2 * h) - value(r - 2 * h))) / (12.0 * h);
    }
};

namespace detail {
inline std::string format_param(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}
}  // namespace detail

inline TestFunction zero_function() {
    TestFunction f;
    f.id = "zero";
    f.value = [](double) { return 0.0; };
    f.derivative = [](double) { return 0.0; };
    f.decay = Decay::compact(0.0);
    f.smoothness = Smoothness::schwartz0;
    f.known_transform = [](double, double, double) { return std::optional<double>(0.0); };
    return f;
}

/// r -> f(mu r).
inline TestFunction dilate(const TestFunction& f, double mu) {
    if (!(mu > 0.0)) throw DomainError("dilation factor must be positive");
    TestFunction g = f;
    g.id = f.id + "@dil" + detail::format_param(mu);
    g.value = [v = f.value, mu](double r) { return v(mu * r); };
    if (f.derivative) g.derivative = [d = f.derivative, mu](double r) { return mu * d(mu * r); };
    g.support_start = f.support_start / mu;
    g.scale = f.scale / mu;
    if (f.decay.kind == DecayClass::compact) g.decay.support_end = f.decay.support_end / mu;
    g.known_transform = nullptr;
    return g;
}

/// r -> c f(r).
inline TestFunction scaled(const TestFunction& f, double c) {
    TestFunction g = f;
    g.id = f.id + "*" + detail::format_param(c);
    g.value = [v = f.value, c](double r) { return c * v(r); };
    if (f.derivative) g.derivative = [d = f.derivative, c](double r) { return c * d(r); };
    if (f.known_transform)
        g.known_transform = [k = f.known_transform, c](double lam, double a, double rho) -> std::optional<double> {
            auto v = k(lam, a, rho);
            if (v) return c * *v;
            return std::nullopt;
        };
    return g;
}

}  // namespace genft

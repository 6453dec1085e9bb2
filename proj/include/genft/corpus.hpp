#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "genft/specfun.hpp"
#include "genft/test_function.hpp"

namespace genft::corpus {

/// e^{-r^2/2}: self-reciprocal under every classical Hankel transform.
inline TestFunction gaussian() {
    TestFunction f;
    f.id = "gauss";
    f.value = [](double r) { return std::exp(-0.5 * r * r); };
    f.derivative = [](double r) { return -r * std::exp(-0.5 * r * r); };
    f.scale = 2.0;
    f.known_transform = [](double, double a, double rho) -> std::optional<double> {
        if (a != 2.0) return std::nullopt;
        return std::exp(-0.5 * rho * rho);
    };
    return f;
}

/// r^2 e^{-r^2/2}; at a = 2 its transform is (2 lambda + 2 - rho^2) e^{-rho^2/2}.
inline TestFunction r2_gaussian() {
    TestFunction f;
    f.id = "r2gauss";
    f.value = [](double r) { return r * r * std::exp(-0.5 * r * r); };
    f.derivative = [](double r) { return (2.0 * r - r * r * r) * std::exp(-0.5 * r * r); };
    f.origin_exponent = 2.0;
    f.scale = 3.0;
    f.known_transform = [](double lam, double a, double rho) -> std::optional<double> {
        if (a != 2.0) return std::nullopt;
        return (2.0 * lam + 2.0 - rho * rho) * std::exp(-0.5 * rho * rho);
    };
    return f;
}

/// e^{-r}; at a = 2 its transform is Gamma(2 lambda + 2) / (2^lambda Gamma(lambda + 1)) (1 + rho^2)^{-lambda - 3/2}.
inline TestFunction exponential() {
    TestFunction f;
    f.id = "exp";
    f.value = [](double r) { return std::exp(-r); };
    f.derivative = [](double r) { return -std::exp(-r); };
    f.decay = Decay::exponential();
    f.smoothness = Smoothness::gm_family;
    f.scale = 2.0;
    f.known_transform = [](double lam, double a, double rho) -> std::optional<double> {
        if (a == 1.0) return std::exp(-rho);
        if (a != 2.0) return std::nullopt;
        const double c = std::exp(log_gamma(2 * lam + 2) - lam * std::log(2.0) - log_gamma(lam + 1));
        return c * std::pow(1.0 + rho * rho, -lam - 1.5);
    };
    return f;
}

/// e^{-2 r^2}.
inline TestFunction narrow_gaussian() {
    TestFunction f;
    f.id = "gauss2";
    f.value = [](double r) { return std::exp(-2.0 * r * r); };
    f.derivative = [](double r) { return -4.0 * r * std::exp(-2.0 * r * r); };
    f.scale = 1.0;
    f.known_transform = [](double lam, double a, double rho) -> std::optional<double> {
        if (a != 2.0) return std::nullopt;
        // Dilation of the self-reciprocal Gaussian by mu = 2.
        return std::pow(2.0, -(2 * lam + 2)) * std::exp(-rho * rho / 8.0);
    };
    return f;
}

/// (1 + r^2) e^{-r^2}.
inline TestFunction poly_gaussian() {
    TestFunction f;
    f.id = "polygauss";
    f.value = [](double r) { return (1.0 + r * r) * std::exp(-r * r); };
    f.derivative = [](double r) { return (2.0 * r - 2.0 * r * (1.0 + r * r)) * std::exp(-r * r); };
    f.scale = 2.5;
    return f;
}

/// e^{-r - 1/r}: flat at the origin (all derivatives vanish).
inline TestFunction flat_bump() {
    TestFunction f;
    f.id = "expflat";
    f.value = [](double r) { return r <= 0.0 ? 0.0 : std::exp(-r - 1.0 / r); };
    f.derivative = [](double r) { return r <= 0.0 ? 0.0 : (1.0 / (r * r) - 1.0) * std::exp(-r - 1.0 / r); };
    f.decay = Decay::exponential();
    f.smoothness = Smoothness::schwartz0;
    f.origin_exponent = 8.0;
    f.scale = 3.0;
    return f;
}

/// r e^{-r}.
inline TestFunction r_exponential() {
    TestFunction f;
    f.id = "rexp";
    f.value = [](double r) { return r * std::exp(-r); };
    f.derivative = [](double r) { return (1.0 - r) * std::exp(-r); };
    f.decay = Decay::exponential();
    f.origin_exponent = 1.0;
    f.scale = 3.0;
    return f;
}

/// 1 / cosh r.
inline TestFunction sech() {
    TestFunction f;
    f.id = "sech";
    f.value = [](double r) { return 1.0 / std::cosh(r); };
    f.derivative = [](double r) { return -std::tanh(r) / std::cosh(r); };
    f.decay = Decay::exponential();
    f.smoothness = Smoothness::gm_family;
    f.scale = 2.0;
    return f;
}

/// e^{-c r^a}; for c = 1/a it is fixed by H_{lambda,a} for every lambda.
inline TestFunction deformed_gaussian(double a, double c) {
    TestFunction f;
    f.id = "dgauss(" + detail::format_param(a) + "," + detail::format_param(c) + ")";
    f.value = [a, c](double r) { return std::exp(-c * std::pow(r, a)); };
    f.derivative = [a, c](double r) { return -c * a * std::pow(r, a - 1.0) * std::exp(-c * std::pow(r, a)); };
    f.decay = a >= 2.0 ? Decay::schwartz() : Decay::exponential();
    f.smoothness = Smoothness::gm_family;
    f.scale = std::pow(2.0 / c, 1.0 / a) * 1.5;
    f.known_transform = [a, c](double, double aa, double rho) -> std::optional<double> {
        if (aa != a || std::abs(c * a - 1.0) > 1e-15) return std::nullopt;
        return std::exp(-std::pow(rho, a) / a);
    };
    return f;
}

inline TestFunction deformed_gaussian(double a) { return deformed_gaussian(a, 1.0 / a); }

/// (1 + r)^{-p}, a monotone power-decay member of the GM class.
inline TestFunction power_decay(double p) {
    TestFunction f;
    f.id = "pow(" + detail::format_param(p) + ")";
    f.value = [p](double r) { return std::pow(1.0 + r, -p); };
    f.derivative = [p](double r) { return -p * std::pow(1.0 + r, -p - 1.0); };
    f.decay = Decay::power(-p);
    f.smoothness = Smoothness::gm_family;
    f.scale = 1.0;
    return f;
}

/// e^{-r}(1 + sin e^r)/2 on (0, 10]: nonnegative but with wildly growing variation.
inline TestFunction oscillating_truncated() {
    TestFunction f;
    f.id = "oscexp";
    f.value = [](double r) { return r > 10.0 ? 0.0 : 0.5 * std::exp(-r) * (1.0 + std::sin(std::exp(r))); };
    f.derivative = [](double r) {
        if (r > 10.0) return 0.0;
        return 0.5 * (-std::exp(-r) * (1.0 + std::sin(std::exp(r))) + std::cos(std::exp(r)));
    };
    f.decay = Decay::compact(10.0);
    f.smoothness = Smoothness::gm_family;
    f.scale = 1.0;
    return f;
}

/// Radial members used for Plancherel, involution and Pitt sweeps.
inline std::vector<TestFunction> radial_corpus() {
    return {gaussian(), r2_gaussian(), exponential(), narrow_gaussian(), poly_gaussian(),
            flat_bump(), r_exponential(), sech()};
}

/// Nonincreasing members vanishing at infinity.
inline std::vector<TestFunction> monotone_corpus() {
    return {exponential(), power_decay(2.0), power_decay(3.0), sech(), deformed_gaussian(2.0), gaussian()};
}

/// Radial member by id: the radial and monotone corpora, "oscexp", or "pow(p)" for any p > 0.
inline TestFunction by_id(const std::string& id) {
    for (const auto& list : {radial_corpus(), monotone_corpus()})
        for (const TestFunction& f : list)
            if (f.id == id) return f;
    if (id == "oscexp") return oscillating_truncated();
    if (id.size() > 5 && id.rfind("pow(", 0) == 0 && id.back() == ')') {
        const std::string inner = id.substr(4, id.size() - 5);
        std::size_t used = 0;
        double p = 0.0;
        try {
            p = std::stod(inner, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == inner.size() && p > 0.0) return power_decay(p);
    }
    throw DomainError("unknown test function: " + id);
}

}  // namespace genft::corpus

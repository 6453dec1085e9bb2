#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "genft/errors.hpp"
#include "genft/kernel1d.hpp"
#include "genft/parallel.hpp"
#include "genft/pitt.hpp"
#include "genft/quadrature.hpp"
#include "genft/specfun.hpp"
#include "genft/test_function.hpp"
#include "genft/transform.hpp"

namespace genft {

/// f(x) = even(|x|) + sign(x) odd(|x|) on the real line.
struct ParityFunction {
    std::string id;
    TestFunction even = zero_function();
    TestFunction odd = zero_function();
    bool has_even = false;
    bool has_odd = false;

    double operator()(double x) const {
        const double r = std::abs(x);
        double v = has_even ? even(r) : 0.0;
        if (has_odd && x != 0.0) v += x > 0.0 ? odd(r) : -odd(r);
        return v;
    }

    static ParityFunction from_even(const TestFunction& e) {
        ParityFunction pf;
        pf.id = e.id;
        pf.even = e;
        pf.has_even = true;
        return pf;
    }

    static ParityFunction from_odd(const TestFunction& o) {
        ParityFunction pf;
        pf.id = o.id;
        pf.odd = o;
        pf.has_odd = true;
        return pf;
    }

    static ParityFunction from_parts(std::string id, const TestFunction& e, const TestFunction& o) {
        ParityFunction pf;
        pf.id = std::move(id);
        pf.even = e;
        pf.odd = o;
        pf.has_even = pf.has_odd = true;
        return pf;
    }
};

/// Metadata shared by both parts of a decomposed function.
struct ParityHints {
    Decay decay = Decay::schwartz();
    double scale = 1.0;
};

/// f_e(r) = (f(r) + f(-r))/2 and f_o(r) = (f(r) - f(-r))/2. A part that vanishes to roundoff on a
/// dense sample is dropped. The odd part is assumed to vanish linearly at the origin.
inline ParityFunction parity_decompose(const std::string& id, std::function<double(double)> f, ParityHints hints = {}) {
    ParityFunction pf;
    pf.id = id;
    auto even = [f](double r) { return 0.5 * (f(r) + f(-r)); };
    auto odd = [f](double r) { return 0.5 * (f(r) - f(-r)); };
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int i = 0; i <= 400; ++i) {
        const double r = hints.scale * std::pow(10.0, -4.0 + 6.0 * i / 400.0);
        const double mass = std::abs(f(r)) + std::abs(f(-r));
        if (std::abs(even(r)) > 4.0 * eps * mass) pf.has_even = true;
        if (std::abs(odd(r)) > 4.0 * eps * mass) pf.has_odd = true;
    }
    auto part = [&](std::string suffix, std::function<double(double)> v, double origin) {
        TestFunction t;
        t.id = id + suffix;
        t.value = std::move(v);
        t.decay = hints.decay;
        t.scale = hints.scale;
        t.origin_exponent = origin;
        return t;
    };
    if (pf.has_even) pf.even = part("|e", even, 0.0);
    if (pf.has_odd) pf.odd = part("|o", odd, 1.0);
    return pf;
}

/// r -> f_o(r)/r, the function whose (lambda + 1) transform carries the odd branch.
inline TestFunction odd_over_r(const TestFunction& odd) {
    TestFunction g = odd;
    g.id = odd.id + "/r";
    g.value = [v = odd.value](double r) { return v(r) / r; };
    g.derivative = nullptr;
    g.origin_exponent = odd.origin_exponent - 1.0;
    if (odd.decay.kind == DecayClass::power) g.decay.exponent = odd.decay.exponent - 1.0;
    g.known_transform = nullptr;
    return g;
}

namespace detail {

inline void require_line(const FkaParams& params) {
    params.validate();
    if (params.d != 1) throw UnsupportedParameter("the full transform is implemented for d = 1 only");
}

inline MeasureSpec even_measure(const FkaParams& params) { return {params.lambda_k(), params.a}; }
inline MeasureSpec odd_measure(const FkaParams& params) { return {params.lambda_k() + 1.0, params.a}; }

/// Slower of two decay classes (used for functions built from both parts).
inline Decay slower_decay(const Decay& x, const Decay& y) {
    auto rank = [](const Decay& d) {
        switch (d.kind) {
            case DecayClass::compact: return 0;
            case DecayClass::schwartz: return 1;
            case DecayClass::exponential: return 2;
            case DecayClass::power: return 3;
            case DecayClass::unknown: return 4;
        }
        return 4;
    };
    if (x.kind == DecayClass::power && y.kind == DecayClass::power) return x.exponent > y.exponent ? x : y;
    if (x.kind == DecayClass::compact && y.kind == DecayClass::compact) return x.support_end > y.support_end ? x : y;
    return rank(x) >= rank(y) ? x : y;
}

/// The radial profile r -> ((|f(r)|^p + |f(-r)|^p)/2)^{1/p}, whose radial norm is the norm of f on the line.
inline TestFunction line_profile(const ParityFunction& pf, double p) {
    TestFunction h;
    h.id = pf.id + "|line" + format_param(p);
    h.value = [pf, p](double r) {
        const double u = std::abs(pf(r));
        const double v = std::abs(pf(-r));
        if (p == 2.0) return std::sqrt(0.5 * (u * u + v * v));
        return std::pow(0.5 * (std::pow(u, p) + std::pow(v, p)), 1.0 / p);
    };
    if (pf.has_even && pf.has_odd) {
        h.decay = slower_decay(pf.even.decay, pf.odd.decay);
        h.origin_exponent = std::min(pf.even.origin_exponent, pf.odd.origin_exponent);
        h.support_start = std::min(pf.even.support_start, pf.odd.support_start);
        h.scale = std::max(pf.even.scale, pf.odd.scale);
    } else {
        const TestFunction& only = pf.has_odd ? pf.odd : pf.even;
        h.decay = only.decay;
        h.origin_exponent = only.origin_exponent;
        h.support_start = only.support_start;
        h.scale = only.scale;
    }
    if (!pf.has_even && !pf.has_odd) h.decay = Decay::compact(0.0);
    return h;
}

/// The two radial transforms behind F f(+-rho): A = H_{lambda_k} f_e and G = H_{lambda_k+1}(f_o/r).
struct FkaParts {
    QuadratureResult even;
    QuadratureResult odd;
};

inline FkaParts fka_parts(const ParityFunction& pf, const FkaParams& params, double rho, HankelEngine& engine,
                          double inner_abs = 0.0) {
    FkaParts out;
    out.even.converged = out.odd.converged = true;
    Tolerance tol = engine.options().tol;
    tol.abs = std::max(tol.abs, inner_abs);
    if (pf.has_even) out.even = engine.deformed(pf.even, even_measure(params), rho, tol);
    if (pf.has_odd && rho > 0.0) {
        Tolerance odd_tol = tol;
        odd_tol.abs = std::max(engine.options().tol.abs, inner_abs / rho);
        out.odd = engine.deformed(odd_over_r(pf.odd), odd_measure(params), rho, odd_tol);
    }
    return out;
}

inline std::complex<double> odd_phase(double a) { return std::polar(1.0, -pi / a); }

/// Average over y = +-rho of |F f(y)|^q, with the propagated quadrature error.
inline PowerSample fka_power_sample(const ParityFunction& pf, const FkaParams& params, double rho, double q,
                                    HankelEngine& engine, double inner_abs) {
    const FkaParts parts = fka_parts(pf, params, rho, engine, inner_abs);
    const std::complex<double> odd = odd_phase(params.a) * (rho * parts.odd.value);
    const double err = parts.even.error_estimate + rho * parts.odd.error_estimate;
    PowerSample s;
    s.converged = parts.even.converged && parts.odd.converged;
    for (double sign : {1.0, -1.0}) {
        const double v = std::abs(parts.even.value + sign * odd);
        s.uncertainty += 0.5 * (std::pow(v + err, q) - std::pow(v, q));
        if (v > err) s.power += 0.5 * std::pow(v, q);
    }
    return s;
}

}  // namespace detail

struct FkaValue {
    std::complex<double> value;
    double error_estimate = 0.0;
    bool converged = false;
};

/// F_{k,a} f(y) = H_{lambda_k,a} f_e(rho) + e^{-i pi/a} sign(y) rho H_{lambda_k+1,a}(f_o/r)(rho), rho = |y|.
inline FkaValue fka_transform_result(const ParityFunction& pf, const FkaParams& params, double y, HankelEngine& engine) {
    detail::require_line(params);
    const double rho = std::abs(y);
    const detail::FkaParts parts = detail::fka_parts(pf, params, rho, engine);
    const double sign = y < 0.0 ? -1.0 : 1.0;
    FkaValue out;
    out.value = parts.even.value + sign * detail::odd_phase(params.a) * (rho * parts.odd.value);
    out.error_estimate = parts.even.error_estimate + rho * parts.odd.error_estimate;
    out.converged = parts.even.converged && parts.odd.converged;
    return out;
}

inline std::complex<double> fka_transform(const ParityFunction& pf, const FkaParams& params, double y,
                                          HankelEngine& engine) {
    const FkaValue v = fka_transform_result(pf, params, y, engine);
    if (!v.converged) throw NumericalError("fka_transform: quadrature did not converge");
    return v.value;
}

inline std::complex<double> fka_transform(const ParityFunction& pf, const FkaParams& params, double y) {
    HankelEngine engine;
    return fka_transform(pf, params, y, engine);
}

/// || |x|^beta f ||_{p, d mu_{k,a}} with d mu_{k,a} = (b_{lambda_k,a}/2) |x|^{2 lambda_k + a - 1} dx.
inline double fka_norm(const ParityFunction& pf, const FkaParams& params, double beta = 0.0, double p = 2.0) {
    detail::require_line(params);
    if (!pf.has_even && !pf.has_odd) return 0.0;
    return weighted_norm(detail::line_profile(pf, p), p, beta, detail::even_measure(params));
}

/// || |y|^{-gamma} F_{k,a} f ||_{q, d mu_{k,a}} computed from the complex values on both half-lines.
inline NormResult fka_transform_norm_result(const ParityFunction& pf, const FkaParams& params, double q, double gamma,
                                            HankelEngine& engine, Tolerance tol = {1e-300, 1e-9}) {
    detail::require_line(params);
    if (!(q >= 1.0)) throw DomainError("norm exponent must be at least 1");
    const MeasureSpec m = detail::even_measure(params);
    const double exponent = -gamma * q + m.density_exponent();
    if (!(exponent > -1.0)) throw DivergenceError("transform-side weight is not integrable at the origin");
    if (!pf.has_even && !pf.has_odd) return {0.0, 0.0, true};
    auto weight = [exponent](double rho) { return std::pow(rho, exponent); };
    auto sample = [&](double rho, double inner_abs) {
        return detail::fka_power_sample(pf, params, rho, q, engine, inner_abs);
    };
    const TransformSideResult t = detail::transform_side_integral(sample, weight, weight, q, tol);
    if (t.integral.divergent) throw DivergenceError("transform-side norm integral does not converge");
    const double integral = m.b() * t.integral.value;
    const double value = std::pow(std::max(integral, 0.0), 1.0 / q);
    const double err = integral > 0.0 ? value * m.b() * t.integral.error_estimate / (q * integral) : 0.0;
    return {value, err, t.integral.converged && t.inner_converged};
}

inline double fka_transform_norm(const ParityFunction& pf, const FkaParams& params, double q, double gamma,
                                 HankelEngine& engine) {
    const NormResult r = fka_transform_norm_result(pf, params, q, gamma, engine);
    if (!r.converged) throw NumericalError("fka_transform_norm: quadrature did not converge");
    return r.value;
}

/// | ||F_{k,a} f||_2 - ||f||_2 |.
inline double fka_plancherel_defect(const ParityFunction& pf, const FkaParams& params, HankelEngine& engine) {
    return std::abs(fka_transform_norm(pf, params, 2.0, 0.0, engine) - fka_norm(pf, params));
}

/// | ||f||^2 - ||f_e||^2 - ||f_o||^2 | with each part measured on the line.
inline double norm_additivity_defect(const ParityFunction& pf, const FkaParams& params) {
    detail::require_line(params);
    const MeasureSpec m = detail::even_measure(params);
    const double e = pf.has_even ? weighted_norm(pf.even, 2.0, 0.0, m) : 0.0;
    const double o = pf.has_odd ? weighted_norm(pf.odd, 2.0, 0.0, m) : 0.0;
    const double total = fka_norm(pf, params);
    return std::abs(total * total - e * e - o * o);
}

/// The weighted L^2 bound for the full transform assembled from the parity pieces.
struct FkaPittChain {
    /// || |y|^{-beta} F f || from the complex values.
    double direct = 0.0;
    /// The same norm from the two radial transforms: sqrt(||rho^{-beta} A||^2 + (b_e/b_o) ||rho^{-beta} G||^2).
    double parity_sum = 0.0;
    /// sqrt(c(beta, lambda_k)^2 ||r^beta f_e||^2 + c(beta, lambda_k + 1)^2 ||r^beta f_o||^2).
    double composed_bound = 0.0;
    /// c(beta, lambda_k, a) || |x|^beta f ||.
    double overall_bound = 0.0;
    bool converged = false;

    bool holds(double rel = 1e-6) const { return direct <= overall_bound * (1.0 + rel); }
};

inline FkaPittChain fka_pitt_chain(const ParityFunction& pf, const FkaParams& params, double beta, HankelEngine& engine) {
    detail::require_line(params);
    const double lam = params.lambda_k();
    const double c_even = sharp_constant(beta, lam, params.a);
    const double c_odd = sharp_constant(beta, lam + 1.0, params.a);
    const MeasureSpec me = detail::even_measure(params);
    const MeasureSpec mo = detail::odd_measure(params);
    FkaPittChain out;
    const NormResult direct = fka_transform_norm_result(pf, params, 2.0, beta, engine);
    out.direct = direct.value;
    out.converged = direct.converged;
    double sum = 0.0;
    double bound = 0.0;
    if (pf.has_even) {
        const NormResult a = transform_norm_result(pf.even, 2.0, beta, me, engine);
        out.converged = out.converged && a.converged;
        const double w = weighted_norm(pf.even, 2.0, beta, me);
        sum += a.value * a.value;
        bound += c_even * c_even * w * w;
    }
    if (pf.has_odd) {
        const NormResult g = transform_norm_result(odd_over_r(pf.odd), 2.0, beta, mo, engine);
        out.converged = out.converged && g.converged;
        const double w = weighted_norm(pf.odd, 2.0, beta, me);
        sum += me.b() / mo.b() * g.value * g.value;
        bound += c_odd * c_odd * w * w;
    }
    out.parity_sum = std::sqrt(sum);
    out.composed_bound = std::sqrt(bound);
    out.overall_bound = c_even * fka_norm(pf, params, beta);
    return out;
}

/// Parity degree n in {0, 1} and Laguerre degree s >= 0 of a basis function.
struct BasisIndex {
    int n = 0;
    int s = 0;

    BasisIndex() = default;
    BasisIndex(int n_, int s_) : n(n_), s(s_) {
        if (n != 0 && n != 1) throw DomainError("parity degree must be 0 or 1");
        if (s < 0) throw DomainError("Laguerre degree must be nonnegative");
    }

    /// 2(lambda_k + n)/a.
    double laguerre_parameter(const FkaParams& params) const { return 2.0 * (params.lambda_k() + n) / params.a; }
};

/// Normalization making ||Phi_{n,s}||_{2, d mu_{k,a}} = 1, from int L_s^2 u^nu e^{-u} du = Gamma(nu+s+1)/s!.
inline double basis_gamma(const BasisIndex& idx, const FkaParams& params) {
    params.validate();
    const double nu = idx.laguerre_parameter(params);
    if (!(nu > -1.0)) throw DomainError("Laguerre parameter must exceed -1");
    const double a = params.a;
    const double log_norm2 = std::log(normalization_b(params.lambda_k(), a)) - std::log(a) +
                             (nu + 1.0) * std::log(0.5 * a) + log_gamma(nu + idx.s + 1.0) - log_gamma(idx.s + 1.0);
    return std::exp(-0.5 * log_norm2);
}

/// Phi_{n,s}(x) = gamma x^n L_s^{(nu)}((2/a)|x|^a) e^{-|x|^a/a}.
inline double basis_phi(const BasisIndex& idx, const FkaParams& params, double x) {
    const double g = basis_gamma(idx, params);
    const double u = std::pow(std::abs(x), params.a);
    const double radial = g * laguerre(LaguerreIndex(idx.s, idx.laguerre_parameter(params)), 2.0 * u / params.a) *
                          std::exp(-u / params.a);
    return idx.n == 0 ? radial : x * radial;
}

/// e^{-i pi (s + n/a)}.
inline std::complex<double> basis_eigenvalue(const BasisIndex& idx, const FkaParams& params) {
    return std::polar(1.0, -pi * (idx.s + idx.n / params.a));
}

inline ParityFunction basis_function(const BasisIndex& idx, const FkaParams& params) {
    const double g = basis_gamma(idx, params);
    const double nu = idx.laguerre_parameter(params);
    const double a = params.a;
    TestFunction t;
    t.id = "phi[" + std::to_string(idx.n) + "," + std::to_string(idx.s) + ";" + detail::format_param(params.k) + "," +
           detail::format_param(a) + "]";
    t.value = [g, nu, a, n = idx.n, s = idx.s](double r) {
        const double u = std::pow(r, a);
        const double v = g * laguerre(LaguerreIndex(s, nu), 2.0 * u / a) * std::exp(-u / a);
        return n == 0 ? v : r * v;
    };
    t.origin_exponent = idx.n;
    t.decay = a >= 2.0 ? Decay::schwartz() : Decay::exponential();
    // The Laguerre factor has its last sign change near (2/a) r^a = 4s + 2 nu + 2.
    t.scale = std::pow(0.5 * a * (4.0 * idx.s + 2.0 * std::max(nu, 0.0) + 4.0), 1.0 / a);
    return idx.n == 0 ? ParityFunction::from_even(t) : ParityFunction::from_odd(t);
}

inline std::vector<double> default_eigen_grid() { return {-3.0, -1.7, -0.9, -0.35, 0.2, 0.6, 1.3, 2.2, 3.5}; }

/// max over the grid of |F_{k,a} Phi(y) - e^{-i pi (s + n/a)} Phi(y)|.
inline double eigen_defect(const BasisIndex& idx, const FkaParams& params, HankelEngine& engine,
                           const std::vector<double>& grid = default_eigen_grid()) {
    const ParityFunction phi = basis_function(idx, params);
    const std::complex<double> mu = basis_eigenvalue(idx, params);
    double worst = 0.0;
    for (double y : grid) worst = std::max(worst, std::abs(fka_transform(phi, params, y, engine) - mu * phi(y)));
    return worst;
}

inline double eigen_defect(const BasisIndex& idx, const FkaParams& params,
                           const std::vector<double>& grid = default_eigen_grid()) {
    HankelEngine engine;
    return eigen_defect(idx, params, engine, grid);
}

/// <f, g> in L^2(R, d mu_{k,a}) for real f, g.
inline double fka_inner_product(const ParityFunction& f, const ParityFunction& g, const FkaParams& params,
                                Tolerance tol = {1e-14, 1e-12}) {
    detail::require_line(params);
    const MeasureSpec m = detail::even_measure(params);
    const double dens = m.density_exponent();
    double total = 0.0;
    auto part = [&](const TestFunction& u, const TestFunction& v) {
        auto integrand = [&](double r) {
            const double w = u(r) * v(r);
            return w == 0.0 ? 0.0 : w * std::pow(r, dens);
        };
        const LogAxisResult r = integrate_log_axis(integrand, tol.scaled(1.0 / m.b()));
        if (!r.converged || r.divergent) throw NumericalError("fka_inner_product: quadrature did not converge");
        return m.b() * r.value;
    };
    if (f.has_even && g.has_even) total += part(f.even, g.even);
    if (f.has_odd && g.has_odd) total += part(f.odd, g.odd);
    return total;
}

/// max |<Phi_i, Phi_j> - delta_ij| over n <= n_max, s <= s_max. Pairs of opposite parity contribute exactly 0.
inline double gram_defect(int n_max, int s_max, const FkaParams& params, unsigned threads = 0) {
    if (n_max < 0 || n_max > 1 || s_max < 0) throw DomainError("gram_defect: n_max in {0, 1}, s_max >= 0");
    std::vector<BasisIndex> basis;
    for (int n = 0; n <= n_max; ++n)
        for (int s = 0; s <= s_max; ++s) basis.emplace_back(n, s);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j) pairs.emplace_back(i, j);
    const auto defects = parallel_map(
        pairs,
        [&](const std::pair<std::size_t, std::size_t>& ij) {
            const BasisIndex& u = basis[ij.first];
            const BasisIndex& v = basis[ij.second];
            const double g = fka_inner_product(basis_function(u, params), basis_function(v, params), params);
            return std::abs(g - (ij.first == ij.second ? 1.0 : 0.0));
        },
        threads);
    return *std::max_element(defects.begin(), defects.end());
}

/// +1 when F_{k,a} is its own inverse (a = 1/r), -1 when the inverse is F f(-x) (a = 2/(2r+1)).
inline int inversion_sign(double a) {
    if (!(a > 0.0)) throw DomainError("parameter a must be positive");
    const double r = 1.0 / a;
    if (std::abs(r - std::round(r)) <= 1e-12 * r) return 1;
    const double s = 0.5 * (2.0 / a - 1.0);
    if (s > -1e-12 && std::abs(s - std::round(s)) <= 1e-12 * std::max(1.0, s)) return -1;
    throw UnsupportedParameter("no inversion formula for a = " + detail::format_param(a));
}

inline std::vector<double> default_roundtrip_grid() { return {-3.5, -1.2, -0.3, 0.1, 0.7, 2.0, 5.0}; }

/// sup over the grid of |F(F f)(sigma x) - f(x)|, sigma = inversion_sign(a). The phase of the odd branch
/// is applied twice, so the sign convention of the inversion formula is tested rather than assumed.
inline double inversion_roundtrip(const ParityFunction& pf, const FkaParams& params, HankelEngine& engine,
                                  const std::vector<double>& grid = default_roundtrip_grid()) {
    detail::require_line(params);
    const int sigma = inversion_sign(params.a);
    const MeasureSpec me = detail::even_measure(params);
    const MeasureSpec mo = detail::odd_measure(params);
    // F f has even part A and odd part e^{-i pi/a} rho G; the second pass maps them back.
    const std::complex<double> phase = detail::odd_phase(params.a);
    std::optional<TestFunction> a_once;
    std::optional<TestFunction> g_once;
    if (pf.has_even) a_once = transformed(pf.even, me, engine);
    if (pf.has_odd) g_once = transformed(odd_over_r(pf.odd), mo, engine);
    double worst = 0.0;
    for (double x : grid) {
        const double u = sigma * x;
        const double r = std::abs(u);
        std::complex<double> twice = 0.0;
        if (a_once) twice += detail::checked(engine.deformed(*a_once, me, r), "inversion_roundtrip");
        if (g_once && r > 0.0) {
            const double back = detail::checked(engine.deformed(*g_once, mo, r), "inversion_roundtrip");
            twice += (u < 0.0 ? -1.0 : 1.0) * phase * phase * (r * back);
        }
        worst = std::max(worst, std::abs(twice - pf(x)));
    }
    return worst;
}

inline double inversion_roundtrip(const ParityFunction& pf, const FkaParams& params,
                                  const std::vector<double>& grid = default_roundtrip_grid()) {
    HankelEngine engine;
    return inversion_roundtrip(pf, params, engine, grid);
}

struct TranslationOptions {
    /// Use the even part j_{(2k-1)/a} of the kernel for both factors.
    bool even_part = false;
    /// Half-width of the x and y ranges (0: 40 for a = 1, 12 for a = 2).
    double extent = 0.0;
};

struct TranslationCheck {
    double ratio = 0.0;
    double translated_norm = 0.0;
    double norm = 0.0;
    std::size_t nodes = 0;
};

namespace detail {

/// Nodes and weights in theta = |y|^{a/2} on [0, theta_max], with panels graded towards the origin.
inline QuadratureGrid translation_grid(double theta_max, double width) {
    std::vector<double> b{0.0};
    for (int j = 40; j >= 1; --j) b.push_back(std::min(width, theta_max) * std::ldexp(1.0, -j));
    const int panels = std::max(1, static_cast<int>(std::ceil(theta_max / width)));
    for (int i = 1; i <= panels; ++i) b.push_back(theta_max * i / panels);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return composite_gauss_legendre(b);
}

}  // namespace detail

/// ||T^t f||_2 / ||f||_2 with T^t f(x) = int B(t, y) B(x, y) F f(y) d mu(y). Both integrals use a composite
/// Gauss-Legendre grid in theta = |y|^{a/2}, where the kernel is analytic and the density is integrable.
inline TranslationCheck translation_norm_check(double t, const ParityFunction& pf, const FkaParams& params,
                                               HankelEngine& engine, TranslationOptions options = {}) {
    detail::require_line(params);
    const double a = params.a;
    const double k = params.k;
    if (a != 1.0 && a != 2.0) throw UnsupportedParameter("the translation operator is available for a in {1, 2}");
    if (!(2.0 * k + a > 1.0)) throw DomainError("kernel requires 2k + a > 1");
    if (options.even_part) {
        if (!(2.0 * k + 0.5 * a >= 1.0)) throw DomainError("even kernel is bounded by 1 only when 2k + a/2 >= 1");
    } else if (a == 1.0 && classify_boundedness(k).bound != KernelBound::bounded_by_1) {
        throw DomainError("translation requires a kernel bounded by 1 (k >= k0 for a = 1)");
    }
    const KernelParams kp(k, a);
    auto kernel = [&](double x, double y) -> std::complex<double> {
        if (options.even_part) return kernel_even(kp, x, y);
        if (a == 1.0) return kernel_a1(k, x, y);
        return kernel_general(kp, x, y);
    };
    const double extent = options.extent > 0.0 ? options.extent : (a == 1.0 ? 40.0 : 12.0);
    const MeasureSpec m = detail::even_measure(params);
    // Jacobian of y = theta^{2/a} folded into the measure: (b/2) (2/a) theta^{4 lambda/a + 1}.
    const double power = 4.0 * params.lambda_k() / a + 1.0;
    const double y_theta = std::pow(extent, 0.5 * a);
    const double x_theta = std::pow(extent + std::abs(t), 0.5 * a);
    // Kernel frequency in theta is at most (2/a) x_theta; half a period per 20-point panel.
    const double width = pi / (2.0 / a * std::max(x_theta, 1.0));
    const QuadratureGrid yg = detail::translation_grid(y_theta, width);
    const QuadratureGrid xg = detail::translation_grid(x_theta, width);
    struct Node {
        double y;
        std::complex<double> weighted;  // B(t, y) F f(y) dmu(y)
    };
    std::vector<Node> ys;
    for (std::size_t j = 0; j < yg.nodes.size(); ++j) {
        const double th = yg.nodes[j];
        const double rho = std::pow(th, 2.0 / a);
        const double w = yg.weights[j] * 0.5 * m.b() * (2.0 / a) * std::pow(th, power);
        const detail::FkaParts parts = detail::fka_parts(pf, params, rho, engine);
        if (!parts.even.converged || !parts.odd.converged)
            throw NumericalError("translation_norm_check: transform did not converge");
        const std::complex<double> odd = detail::odd_phase(a) * (rho * parts.odd.value);
        for (double sign : {1.0, -1.0}) {
            const double y = sign * rho;
            ys.push_back({y, w * kernel(t, y) * (parts.even.value + sign * odd)});
        }
    }
    std::vector<std::pair<double, double>> xs;
    for (std::size_t i = 0; i < xg.nodes.size(); ++i) {
        const double th = xg.nodes[i];
        const double w = xg.weights[i] * 0.5 * m.b() * (2.0 / a) * std::pow(th, power);
        const double r = std::pow(th, 2.0 / a);
        xs.push_back({r, w});
        xs.push_back({-r, w});
    }
    const auto contributions = parallel_map(xs, [&](const std::pair<double, double>& xw) {
        std::complex<double> v = 0.0;
        for (const Node& n : ys) v += kernel(xw.first, n.y) * n.weighted;
        return xw.second * std::norm(v);
    });
    double total = 0.0;
    for (double c : contributions) total += c;
    TranslationCheck out;
    out.translated_norm = std::sqrt(total);
    out.norm = fka_norm(pf, params);
    out.ratio = out.translated_norm / out.norm;
    out.nodes = ys.size() + xs.size();
    return out;
}

inline TranslationCheck translation_norm_check(double t, const ParityFunction& pf, const FkaParams& params,
                                               TranslationOptions options = {}) {
    HankelEngine engine;
    return translation_norm_check(t, pf, params, engine, options);
}

namespace corpus {

/// Functions on the line with both, one or the other parity part present; odd parts are r times a smooth profile.
inline std::vector<ParityFunction> line_corpus() {
    auto make = [](std::string id, std::function<double(double)> v, double origin, Decay decay, double scale) {
        TestFunction t;
        t.id = std::move(id);
        t.value = std::move(v);
        t.origin_exponent = origin;
        t.decay = decay;
        t.scale = scale;
        return t;
    };
    const Decay sch = Decay::schwartz();
    const Decay ex = Decay::exponential();
    std::vector<ParityFunction> out;
    out.push_back(ParityFunction::from_even(make("line_gauss", [](double r) { return std::exp(-0.5 * r * r); }, 0, sch, 2)));
    out.push_back(ParityFunction::from_odd(make("line_xgauss", [](double r) { return r * std::exp(-0.5 * r * r); }, 1, sch, 2.5)));
    out.push_back(ParityFunction::from_parts("line_1px_gauss", make("line_1px_gauss|e", [](double r) { return std::exp(-r * r); }, 0, sch, 1.5),
                                             make("line_1px_gauss|o", [](double r) { return r * std::exp(-r * r); }, 1, sch, 1.5)));
    out.push_back(ParityFunction::from_even(make("line_exp", [](double r) { return std::exp(-r); }, 0, ex, 2)));
    out.push_back(ParityFunction::from_odd(make("line_xexp", [](double r) { return r * std::exp(-r); }, 1, ex, 3)));
    out.push_back(ParityFunction::from_parts(
        "line_shifted_gauss", make("line_shifted_gauss|e", [](double r) { return 0.5 * (std::exp(-(r - 0.5) * (r - 0.5)) + std::exp(-(r + 0.5) * (r + 0.5))); }, 0, sch, 2),
        make("line_shifted_gauss|o", [](double r) { return 0.5 * (std::exp(-(r - 0.5) * (r - 0.5)) - std::exp(-(r + 0.5) * (r + 0.5))); }, 1, sch, 2)));
    out.push_back(ParityFunction::from_parts(
        "line_sech_mix", make("line_sech_mix|e", [](double r) { return 1.0 / std::cosh(r); }, 0, ex, 3),
        make("line_sech_mix|o", [](double r) { return 0.5 * std::tanh(r) / std::cosh(r); }, 1, ex, 3)));
    out.push_back(ParityFunction::from_parts(
        "line_poly_gauss", make("line_poly_gauss|e", [](double r) { return r * r * std::exp(-0.5 * r * r); }, 2, sch, 3),
        make("line_poly_gauss|o", [](double r) { return 0.5 * r * r * r * std::exp(-0.5 * r * r); }, 3, sch, 3)));
    return out;
}

inline ParityFunction line_by_id(const std::string& id) {
    for (const ParityFunction& f : line_corpus())
        if (f.id == id) return f;
    throw DomainError("unknown line test function: " + id);
}

/// e^{-c|x|^a}, the equality family of the Heisenberg inequality.
inline ParityFunction line_deformed_gaussian(double a, double c) {
    TestFunction t;
    t.id = "line_dgauss[" + detail::format_param(a) + "," + detail::format_param(c) + "]";
    t.value = [a, c](double r) { return std::exp(-c * std::pow(r, a)); };
    t.decay = a >= 2.0 ? Decay::schwartz() : Decay::exponential();
    t.scale = std::pow(3.0 / c, 1.0 / a);
    return ParityFunction::from_even(t);
}

}  // namespace corpus

struct FkaSample {
    double y;
    std::complex<double> value;
};

inline std::vector<FkaSample> sample_fka_transform(const ParityFunction& pf, const FkaParams& params,
                                                   const std::vector<double>& ys, HankelEngine& engine) {
    std::vector<FkaSample> out;
    out.reserve(ys.size());
    for (double y : ys) out.push_back({y, fka_transform(pf, params, y, engine)});
    return out;
}

inline void write_fka_csv(std::ostream& os, const std::vector<FkaSample>& rows) {
    os << "y,re,im\n";
    for (const auto& row : rows)
        // + 0.0 turns a signed zero into a plain one.
        os << format_number(row.y) << ',' << format_number(row.value.real() + 0.0) << ','
           << format_number(row.value.imag() + 0.0)
           << '\n';
}

}  // namespace genft

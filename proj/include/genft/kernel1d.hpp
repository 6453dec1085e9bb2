#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "genft/errors.hpp"
#include "genft/parallel.hpp"
#include "genft/quadrature.hpp"
#include "genft/specfun.hpp"
#include "genft/transform.hpp"

namespace genft {

/// Multiplicity k >= 0 and deformation a > 0 of the one-dimensional kernel; requires 2k + 1 + a > 2.
struct KernelParams {
    double k = 0.0;
    double a = 2.0;

    KernelParams() = default;
    KernelParams(double k_, double a_) : k(k_), a(a_) { validate(); }

    double even_order() const { return (2.0 * k - 1.0) / a; }
    double odd_order() const { return (2.0 * k + 1.0) / a; }

    void validate() const {
        if (!(k >= 0.0)) throw DomainError("multiplicity k must be nonnegative");
        if (!(a > 0.0)) throw DomainError("parameter a must be positive");
        if (!(2.0 * k + a > 1.0)) throw DomainError("kernel requires 2k + 1 + a > 2");
    }
};

struct SweepResult {
    double sup = 0.0;
    double argmax = 0.0;
    double t_min = 0.0;
    double t_max = 0.0;
    std::size_t samples = 0;
    /// Set when at least one grid extremum was polished by root finding or minimization.
    bool refined = false;
};

/// j_{(2k-1)/a}((2/a)|xy|^{a/2}).
inline double kernel_even(const KernelParams& kp, double x, double y) {
    kp.validate();
    const double z = 2.0 / kp.a * std::pow(std::abs(x * y), 0.5 * kp.a);
    return normalized_bessel(BesselOrder(kp.even_order()), z);
}

/// j_{(2k-1)/a}(z) + Gamma((2k-1)/a + 1)/Gamma((2k+1)/a + 1) xy (ai)^{-2/a} j_{(2k+1)/a}(z), z = (2/a)|xy|^{a/2},
/// with the principal branch (ai)^{-2/a} = a^{-2/a} e^{-i pi/a}. Established for a in {1, 2}.
inline std::complex<double> kernel_general(const KernelParams& kp, double x, double y) {
    kp.validate();
    const double xy = x * y;
    if (xy == 0.0) return {1.0, 0.0};
    const double nu0 = kp.even_order();
    const double nu1 = kp.odd_order();
    const double z = 2.0 / kp.a * std::pow(std::abs(xy), 0.5 * kp.a);
    const double ratio = std::exp(log_gamma(nu0 + 1.0) - log_gamma(nu1 + 1.0));
    const std::complex<double> phase = std::pow(kp.a, -2.0 / kp.a) * std::polar(1.0, -pi / kp.a);
    const double e = normalized_bessel(BesselOrder(nu0), z);
    const double o = normalized_bessel(BesselOrder(nu1), z);
    return e + ratio * xy * phase * o;
}

/// g_k(t) = 2^{2k} Gamma(2k) t^{1-2k} J'_{2k}(t): the a = 1 kernel for xy > 0 with t = 2 sqrt(xy).
inline double kernel_a1_positive(double k, double t) {
    if (!(k > 0.0)) throw DomainError("kernel_a1 requires k > 0");
    t = std::abs(t);
    if (t == 0.0) return 1.0;
    const double nu = 2.0 * k;
    return std::exp(nu * std::log(2.0) + log_gamma(nu) + (1.0 - nu) * std::log(t)) * bessel_j_derivative(nu, t);
}

/// d g_k / dt = 2^nu Gamma(nu) t^{-nu} (-nu J'_nu(t) - (t - nu^2/t) J_nu(t)), nu = 2k.
inline double kernel_a1_positive_slope(double k, double t) {
    const double nu = 2.0 * k;
    const double scale = std::exp(nu * std::log(2.0) + log_gamma(nu) - nu * std::log(t));
    return scale * (-nu * bessel_j_derivative(nu, t) - (t - nu * nu / t) * bessel_j(nu, t));
}

/// The a = 1 kernel: j_{2k}(t) for xy <= 0 and g_k(t) for xy > 0, t = 2|xy|^{1/2}.
inline double kernel_a1(double k, double x, double y) {
    if (!(k > 0.0)) throw DomainError("kernel_a1 requires k > 0");
    const double xy = x * y;
    const double t = 2.0 * std::sqrt(std::abs(xy));
    if (xy <= 0.0) return normalized_bessel(BesselOrder(2.0 * k), t);
    return kernel_a1_positive(k, t);
}

namespace detail {

/// Zero of `slope` in [lo, hi] when it changes sign there.
template <class F>
bool polish_extremum(F&& slope, double lo, double hi, double& t) {
    const double slo = slope(lo);
    const double shi = slope(hi);
    if (slo == 0.0) {
        t = lo;
        return true;
    }
    if (shi == 0.0) {
        t = hi;
        return true;
    }
    if ((slo < 0.0) == (shi < 0.0)) return false;
    boost::uintmax_t iters = 200;
    auto tol = [](double u, double v) { return std::abs(u - v) <= 1e-14 * std::max(1.0, std::abs(u)); };
    auto [a, b] = boost::math::tools::toms748_solve(slope, lo, hi, slo, shi, tol, iters);
    t = 0.5 * (a + b);
    return true;
}

/// sup of |f| over the uniform grid t_i = t_max i / samples (plus the limit value at 0), refining each
/// grid-local maximum of |f| with `slope` when given, else with Brent minimization.
template <class F>
SweepResult sweep_sup(F&& f, double t_max, std::size_t samples, double value_at_zero,
                      const std::function<double(double)>& slope = nullptr) {
    if (!(t_max > 0.0)) throw DomainError("sweep range must be positive");
    if (samples < 3) throw DomainError("sweep needs at least 3 samples");
    SweepResult out;
    out.t_min = 0.0;
    out.t_max = t_max;
    out.samples = samples;
    out.sup = std::abs(value_at_zero);
    out.argmax = 0.0;
    const double h = t_max / static_cast<double>(samples);
    std::vector<double> v(samples + 1);
    v[0] = std::abs(value_at_zero);
    for (std::size_t i = 1; i <= samples; ++i) v[i] = std::abs(f(h * static_cast<double>(i)));
    for (std::size_t i = 1; i <= samples; ++i)
        if (v[i] > out.sup) {
            out.sup = v[i];
            out.argmax = h * static_cast<double>(i);
        }
    for (std::size_t i = 1; i < samples; ++i) {
        if (!(v[i] >= v[i - 1] && v[i] >= v[i + 1])) continue;
        const double lo = h * static_cast<double>(i - 1);
        const double hi = h * static_cast<double>(i + 1);
        double t = 0.0;
        bool ok = false;
        if (slope) ok = polish_extremum(slope, std::max(lo, 0.25 * h), hi, t);
        if (!ok) {
            auto neg = [&](double s) { return -std::abs(f(s)); };
            t = boost::math::tools::brent_find_minima(neg, std::max(lo, 0.25 * h), hi,
                                                      std::numeric_limits<double>::digits / 2)
                    .first;
        }
        out.refined = true;
        const double val = std::abs(f(t));
        if (val > out.sup) {
            out.sup = val;
            out.argmax = t;
        }
    }
    return out;
}

}  // namespace detail

/// sup over t in (0, t_max] of |g_k(t)|, the positive-branch a = 1 kernel.
inline SweepResult kernel_sup(double k, double t_max = 100.0, std::size_t samples = 20000) {
    if (!(k > 0.0)) throw DomainError("kernel_sup requires k > 0");
    return detail::sweep_sup([k](double t) { return kernel_a1_positive(k, t); }, t_max, samples, 1.0,
                             [k](double t) { return kernel_a1_positive_slope(k, t); });
}

struct FirstMinimum {
    double t = 0.0;
    double value = 0.0;
};

/// First local minimum of g_k on t in [0.1, 40]: grid step pi/64 (a fraction of the zero spacing),
/// then the slope root in the bracketing cell.
inline FirstMinimum first_minimum(double k) {
    if (!(k > 0.0)) throw DomainError("first_minimum requires k > 0");
    const double step = pi / 64.0;
    auto g = [k](double t) { return kernel_a1_positive(k, t); };
    double t0 = 0.1;
    double g0 = g(t0);
    double g1 = g(t0 + step);
    for (double t = t0 + 2.0 * step; t <= 40.0; t += step) {
        const double g2 = g(t);
        if (g1 < g0 && g1 <= g2) {
            double tm = t - step;
            auto slope = [k](double s) { return kernel_a1_positive_slope(k, s); };
            if (!detail::polish_extremum(slope, t - 2.0 * step, t, tm))
                throw NumericalError("first_minimum: slope has no sign change in the bracket");
            return {tm, g(tm)};
        }
        g0 = g1;
        g1 = g2;
    }
    throw NumericalError("first_minimum: no local minimum on [0.1, 40]");
}

/// k0 in (1/4, 1/2): the first minimum of g_k equals -1. Bisection on [0.30, 0.49] down to `tol`,
/// then a bracketed polish of the residual.
inline double find_k0(double tol = 1e-6) {
    if (!(tol > 0.0 && tol < 1e-2)) throw DomainError("find_k0 tolerance must lie in (0, 1e-2)");
    auto residual = [](double k) { return first_minimum(k).value + 1.0; };
    double lo = 0.30;
    double hi = 0.49;
    double rlo = residual(lo);
    double rhi = residual(hi);
    if ((rlo < 0.0) == (rhi < 0.0)) throw NumericalError("find_k0: residual does not change sign on [0.30, 0.49]");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double rm = residual(mid);
        if ((rm < 0.0) == (rlo < 0.0)) {
            lo = mid;
            rlo = rm;
        } else {
            hi = mid;
            rhi = rm;
        }
    }
    double k = 0.5 * (lo + hi);
    detail::polish_extremum(residual, lo, hi, k);
    return k;
}

/// find_k0 to full precision, computed once per process.
inline double k0_value() {
    static const double k0 = find_k0(1e-8);
    return k0;
}

struct GrowthFit {
    double exponent = 0.0;
    std::vector<double> horizons;
    std::vector<double> sups;
};

/// Least-squares slope of ln sup_{(0,T]} |g_k| against ln T.
inline GrowthFit growth_exponent_fit(double k, const std::vector<double>& horizons = {50.0, 100.0, 200.0, 400.0}) {
    if (horizons.size() < 2) throw DomainError("growth fit needs at least two horizons");
    GrowthFit fit;
    fit.horizons = horizons;
    for (double T : horizons) fit.sups.push_back(kernel_sup(k, T, static_cast<std::size_t>(std::ceil(T * 40.0))).sup);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(horizons.size());
    for (std::size_t i = 0; i < horizons.size(); ++i) {
        const double x = std::log(horizons[i]);
        const double y = std::log(fit.sups[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return fit;
}

enum class KernelBound { unbounded, bounded_above_1, bounded_by_1 };

inline const char* to_string(KernelBound b) {
    switch (b) {
        case KernelBound::unbounded: return "unbounded";
        case KernelBound::bounded_above_1: return "bounded_above_1";
        case KernelBound::bounded_by_1: return "bounded_by_1";
    }
    return "?";
}

struct BoundednessVerdict {
    KernelBound bound = KernelBound::bounded_by_1;
    /// Growth exponent of the sup (unbounded case only; NaN otherwise).
    double growth_exponent = std::numeric_limits<double>::quiet_NaN();
    /// The numeric fit agrees with the envelope exponent 1/2 - 2k within 0.05.
    bool growth_confirmed = false;
};

/// Sup behaviour of the a = 1 kernel: unbounded for k < 1/4, above 1 for k in [1/4, k0), at most 1 from k0 on.
inline BoundednessVerdict classify_boundedness(double k) {
    if (!(k > 0.0)) throw DomainError("classify_boundedness requires k > 0");
    BoundednessVerdict v;
    if (k < 0.25) {
        v.bound = KernelBound::unbounded;
        v.growth_exponent = growth_exponent_fit(k).exponent;
        v.growth_confirmed = std::abs(v.growth_exponent - (0.5 - 2.0 * k)) <= 0.05;
        return v;
    }
    v.bound = k < k0_value() ? KernelBound::bounded_above_1 : KernelBound::bounded_by_1;
    return v;
}

/// |kernel_a1(k, x, y) - Gamma(k+1/2)/(Gamma(k) Gamma(1/2)) int_{-1}^{1} j_{k-1}(sqrt(2|xy|(1 + sign(xy) u)))
/// (1+u)(1-u^2)^{k-1} du|.
inline double integral_representation(double k, double x, double y) {
    if (!(k >= 0.5)) throw DomainError("integral representation requires k >= 1/2");
    const double xy = x * y;
    const double sgn = xy > 0.0 ? 1.0 : (xy < 0.0 ? -1.0 : 0.0);
    const double c = std::exp(log_gamma(k + 0.5) - log_gamma(k) - log_gamma(0.5));
    const NormalizedBessel j{BesselOrder(k - 1.0)};
    auto integrand = [&](double u) {
        return j(std::sqrt(std::max(0.0, 2.0 * std::abs(xy) * (1.0 + sgn * u)))) * std::pow(1.0 + u, k) *
               std::pow(1.0 - u, k - 1.0);
    };
    const QuadratureResult r = integrate_finite(integrand, -1.0, 1.0, {1e-11, 1e-10}, k, k - 1.0);
    if (!r.converged) throw NumericalError("integral_representation: quadrature did not converge");
    return c * r.value;
}

inline double integral_representation_check(double k, double x, double y) {
    return std::abs(kernel_a1(k, x, y) - integral_representation(k, x, y));
}

struct ConjecturePoint {
    double k = 0.0;
    double a = 0.0;
    /// 2k + 1 + a >= 3.
    bool condition = false;
    double sup = 0.0;
    double argmax = 0.0;
    /// sup <= 1 + 1e-6.
    bool bounded = false;
    /// Kernel formula not established for this a.
    bool experimental = false;
    /// Bounded although the condition fails: the condition is not necessary.
    bool only_sufficient_witness = false;
    /// Condition holds but the sweep exceeds 1.
    bool counterexample = false;
};

/// Sup of |B_{k,a}(x, y)| over xy of both signs with (2/a)|xy|^{a/2} in (0, z_max].
inline ConjecturePoint conjecture_point(const KernelParams& kp, double z_max = 100.0, std::size_t samples = 20000) {
    kp.validate();
    ConjecturePoint p;
    p.k = kp.k;
    p.a = kp.a;
    p.condition = 2.0 * kp.k + 1.0 + kp.a >= 3.0 - 1e-12;
    p.experimental = !(kp.a == 1.0 || kp.a == 2.0);
    SweepResult pos;
    SweepResult neg;
    if (kp.a == 1.0) {
        pos = kernel_sup(kp.k, z_max, samples);
        const NormalizedBessel j{BesselOrder(2.0 * kp.k)};
        neg = detail::sweep_sup([&](double t) { return j(t); }, z_max, samples, 1.0);
    } else {
        auto xy_of = [&](double z) { return std::pow(0.5 * kp.a * z, 2.0 / kp.a); };
        pos = detail::sweep_sup([&](double z) { return std::abs(kernel_general(kp, xy_of(z), 1.0)); }, z_max, samples,
                                1.0);
        neg = detail::sweep_sup([&](double z) { return std::abs(kernel_general(kp, -xy_of(z), 1.0)); }, z_max,
                                samples, 1.0);
    }
    const SweepResult& best = pos.sup >= neg.sup ? pos : neg;
    p.sup = best.sup;
    p.argmax = best.argmax;
    p.bounded = p.sup <= 1.0 + 1e-6;
    p.only_sufficient_witness = !p.condition && p.bounded;
    p.counterexample = p.condition && !p.bounded;
    return p;
}

inline std::vector<ConjecturePoint> conjecture_scan(const std::vector<KernelParams>& grid, double z_max = 100.0,
                                                    std::size_t samples = 20000, unsigned threads = 0) {
    return parallel_map(grid, [&](const KernelParams& kp) { return conjecture_point(kp, z_max, samples); }, threads);
}

/// a = 1 and a = 2 points across the condition boundary, plus a few experimental a values.
inline std::vector<KernelParams> default_conjecture_grid() {
    std::vector<KernelParams> grid;
    for (double a : {1.0, 2.0})
        for (double k : {0.1, 0.25, 0.3, 0.44, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0}) grid.emplace_back(k, a);
    for (double a : {2.0 / 3.0, 1.5, 3.0})
        for (double k : {0.5, 1.0, 2.0}) grid.emplace_back(k, a);
    return grid;
}

/// M^{2/p - 1}: the Hausdorff-Young constant for a kernel bounded by M.
inline double hausdorff_young_constant(double M, double p) {
    if (!(p >= 1.0 && p <= 2.0)) throw DomainError("Hausdorff-Young exponent must lie in [1, 2]");
    if (!(M >= 1.0)) throw DomainError("kernel bound must be at least 1");
    return std::pow(M, 2.0 / p - 1.0);
}

struct KernelSample {
    double k;
    double a;
    double t;
    double value;
};

/// Kernel profile along the positive branch: g_k(t) itself for a = 1, |B_{k,a}| at (2/a)(xy)^{a/2} = t otherwise.
inline std::vector<KernelSample> kernel_profile(const KernelParams& kp, double t_max, std::size_t samples) {
    kp.validate();
    std::vector<KernelSample> rows;
    rows.reserve(samples + 1);
    for (std::size_t i = 0; i <= samples; ++i) {
        const double t = t_max * static_cast<double>(i) / static_cast<double>(samples);
        double v = 1.0;
        if (kp.a == 1.0 && kp.k > 0.0)
            v = kernel_a1_positive(kp.k, t);
        else
            v = std::abs(kernel_general(kp, std::pow(0.5 * kp.a * t, 2.0 / kp.a), 1.0));
        rows.push_back({kp.k, kp.a, t, v});
    }
    return rows;
}

inline void write_kernel_csv(std::ostream& os, const std::vector<KernelSample>& rows) {
    os << "k,a,t,value\n";
    for (const auto& r : rows)
        os << format_number(r.k) << ',' << format_number(r.a) << ',' << format_number(r.t) << ','
           << format_number(r.value) << '\n';
}

}  // namespace genft

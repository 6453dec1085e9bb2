#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "genft/errors.hpp"
#include "genft/parallel.hpp"
#include "genft/pitt.hpp"
#include "genft/quadrature.hpp"
#include "genft/test_function.hpp"
#include "genft/transform.hpp"

namespace genft {

/// n logarithmically spaced points from lo to hi.
inline std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0 && hi > lo) || n < 2) throw DomainError("log_grid needs 0 < lo < hi and n >= 2");
    std::vector<double> out(n);
    const double step = std::log(hi / lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = lo * std::exp(step * static_cast<double>(i));
    out.back() = hi;
    return out;
}

inline std::vector<double> default_gm_grid() { return log_grid(1e-3, 1e3, 61); }

/// Constants of int_r^inf |df| <= C int_{r/c}^inf |f(u)| du/u, with the largest defect on the checked grid.
struct GMWitness {
    double C = 1.0;
    double c = 2.0;
    double r_min = 0.0;
    double r_max = 0.0;
    double max_defect = 0.0;
};

namespace detail {

inline double right_end(const TestFunction& f) {
    return f.decay.kind == DecayClass::compact ? f.decay.support_end : std::numeric_limits<double>::infinity();
}

inline double checked_log_axis(const LogAxisResult& r, const char* what) {
    if (r.divergent) throw DivergenceError(std::string(what) + " diverges");
    if (!r.converged) throw NumericalError(std::string(what) + ": quadrature did not converge");
    return r.value;
}

}  // namespace detail

/// int_r^inf u^sigma |df(u)|: |f'| on the smooth part plus the jump at a compact-support cutoff.
inline double tail_variation(const TestFunction& f, double r, double sigma = 0.0) {
    const double hi = detail::right_end(f);
    const double lo = std::max(r, f.support_start);
    double jump = 0.0;
    if (std::isfinite(hi)) {
        jump = std::pow(hi, sigma) * std::abs(f(hi));
        if (!(lo < hi)) return r <= hi ? jump : 0.0;
    }
    auto integrand = [&](double u) {
        const double d = f.derivative_at(u);
        return d == 0.0 ? 0.0 : std::abs(d) * std::pow(u, sigma);
    };
    const LogAxisResult direct = integrate_log_axis(integrand, {1e-300, 1e-10}, lo, hi);
    if (direct.divergent) throw DivergenceError("variation integral diverges");
    if (direct.converged) return direct.value + jump;
    // Rapid oscillation on a bounded support: uniform partitions, doubled until two successive
    // partitions converge and agree (guarding against partitions that alias the oscillation).
    if (!std::isfinite(hi)) throw NumericalError("variation integral: quadrature did not converge");
    double previous = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t panels = 1024; panels <= (std::size_t{1} << 20); panels *= 2) {
        std::vector<double> points(panels + 1);
        for (std::size_t i = 0; i <= panels; ++i) points[i] = lo + (hi - lo) * static_cast<double>(i) / panels;
        points.back() = hi;
        const QuadratureResult q = detail::adaptive_gk(integrand, points, {1e-300, 1e-8}, 40 * default_evaluation_budget);
        if (q.converged && std::abs(q.value - previous) <= 1e-7 * q.value) return q.value + jump;
        previous = q.converged ? q.value : std::numeric_limits<double>::quiet_NaN();
    }
    throw NumericalError("variation integral: quadrature did not converge");
}

/// int_s^inf u^{sigma - 1} |f(u)| du.
inline double tail_mass(const TestFunction& f, double s, double sigma = 0.0) {
    const double hi = detail::right_end(f);
    const double lo = std::max(s, f.support_start);
    if (!(lo < hi)) return 0.0;
    auto integrand = [&](double u) {
        const double v = f(u);
        return v == 0.0 ? 0.0 : std::abs(v) * std::pow(u, sigma - 1.0);
    };
    return detail::checked_log_axis(integrate_log_axis(integrand, {1e-300, 1e-10}, lo, hi), "tail integral");
}

/// max over the grid of int_r^inf |df| - C int_{r/c}^inf |f| du/u; <= 0 certifies the witness on the grid.
inline double gm_defect(const TestFunction& f, const GMWitness& w, const std::vector<double>& grid = default_gm_grid()) {
    if (!(w.c > 1.0)) throw DomainError("GM witness needs c > 1");
    if (grid.empty()) throw DomainError("gm_defect: empty grid");
    double worst = -std::numeric_limits<double>::infinity();
    for (double r : grid) worst = std::max(worst, tail_variation(f, r) - w.C * tail_mass(f, r / w.c));
    return worst;
}

/// Smallest C certifying f on the grid for the given c (ratios 0/0 count as 0).
inline GMWitness gm_witness_search(const TestFunction& f, double c, const std::vector<double>& grid = default_gm_grid()) {
    if (!(c > 1.0)) throw DomainError("GM witness needs c > 1");
    if (grid.empty()) throw DomainError("gm_witness_search: empty grid");
    GMWitness w;
    w.c = c;
    w.C = 0.0;
    w.r_min = *std::min_element(grid.begin(), grid.end());
    w.r_max = *std::max_element(grid.begin(), grid.end());
    std::vector<std::pair<double, double>> sides;
    for (double r : grid) {
        const double v = tail_variation(f, r);
        const double m = tail_mass(f, r / c);
        sides.emplace_back(v, m);
        if (v == 0.0) continue;
        if (m == 0.0) {
            w.C = std::numeric_limits<double>::infinity();
            continue;
        }
        w.C = std::max(w.C, v / m);
    }
    w.max_defect = -std::numeric_limits<double>::infinity();
    for (const auto& [v, m] : sides) w.max_defect = std::max(w.max_defect, v - w.C * m);
    return w;
}

/// r -> f(alpha r^beta).
inline TestFunction power_compose(const TestFunction& f, double alpha, double beta) {
    if (!(alpha > 0.0 && beta > 0.0)) throw DomainError("power_compose needs alpha, beta > 0");
    TestFunction g = f;
    g.id = f.id + "@pow" + detail::format_param(alpha) + "," + detail::format_param(beta);
    g.value = [v = f.value, alpha, beta](double r) { return v(alpha * std::pow(r, beta)); };
    g.derivative = [f, alpha, beta](double r) {
        return f.derivative_at(alpha * std::pow(r, beta)) * alpha * beta * std::pow(r, beta - 1.0);
    };
    auto inverse = [alpha, beta](double x) { return std::pow(x / alpha, 1.0 / beta); };
    g.support_start = f.support_start > 0.0 ? inverse(f.support_start) : 0.0;
    if (f.decay.kind == DecayClass::compact) g.decay.support_end = inverse(f.decay.support_end);
    if (f.decay.kind == DecayClass::power) g.decay.exponent = f.decay.exponent * beta;
    g.origin_exponent = f.origin_exponent * beta;
    g.scale = inverse(f.scale);
    g.known_transform = nullptr;
    return g;
}

/// Witness implied for f(alpha r^beta) by a witness (C, c) of f: (C beta, c^{1/beta}).
inline GMWitness composed_witness(const GMWitness& w, double alpha, double beta) {
    GMWitness out = w;
    out.C = w.C * beta;
    out.c = std::pow(w.c, 1.0 / beta);
    out.r_min = std::pow(w.r_min / alpha, 1.0 / beta);
    out.r_max = std::pow(w.r_max / alpha, 1.0 / beta);
    return out;
}

struct IntegralCondition {
    bool finite = false;
    /// int_0^1 r^{2 lambda + a - 1} |f| dr (infinite when divergent).
    double origin_part = 0.0;
    /// int_1^inf r^{lambda + a/4} |df| (infinite when divergent).
    double tail_part = 0.0;
};

/// Finiteness of int_0^1 r^{2 lambda + a - 1}|f| dr + int_1^inf r^{lambda + a/4}|df|. Known power behaviour at
/// either end is decided analytically; otherwise the quadrature's divergence test decides.
inline IntegralCondition integral_condition(const TestFunction& f, double lambda, double a) {
    if (!(a > 0.0)) throw DomainError("parameter a must be positive");
    const double dens = 2.0 * lambda + a - 1.0;
    const double sigma = lambda + 0.25 * a;
    const double inf = std::numeric_limits<double>::infinity();
    IntegralCondition out;
    if (f.support_start <= 0.0 && !(dens + f.origin_exponent > -1.0)) {
        out.origin_part = inf;
    } else if (f.support_start >= 1.0) {
        out.origin_part = 0.0;
    } else {
        auto integrand = [&](double r) {
            const double v = f(r);
            return v == 0.0 ? 0.0 : std::abs(v) * std::pow(r, dens);
        };
        const LogAxisResult r = integrate_log_axis(integrand, {1e-300, 1e-10}, f.support_start, 1.0);
        out.origin_part = r.divergent ? inf : r.value;
    }
    if (f.decay.kind == DecayClass::power && std::isfinite(f.decay.exponent) && !(sigma + f.decay.exponent - 1.0 < -1.0)) {
        out.tail_part = inf;
    } else {
        try {
            out.tail_part = tail_variation(f, 1.0, sigma);
        } catch (const DivergenceError&) {
            out.tail_part = inf;
        }
    }
    out.finite = std::isfinite(out.origin_part) && std::isfinite(out.tail_part);
    return out;
}

enum class GMDirection { direct, reverse, two_sided };

inline const char* to_string(GMDirection d) {
    switch (d) {
        case GMDirection::direct: return "direct";
        case GMDirection::reverse: return "reverse";
        case GMDirection::two_sided: return "two-sided";
    }
    return "?";
}

/// Open beta-interval of the Pitt-type inequality for GM functions and the balance shift gamma = beta - shift.
struct GMRangeVerdict {
    GMDirection direction = GMDirection::direct;
    double beta_lo = 0.0;
    double beta_hi = 0.0;
    /// (2 lambda + a)(1/p' - 1/q).
    double balance_shift = 0.0;

    bool contains(double beta) const { return beta > beta_lo && beta < beta_hi; }
    double gamma(double beta) const { return beta - balance_shift; }
    /// |beta - gamma - shift|.
    double balance_residual(double beta, double gamma_) const { return std::abs(beta - gamma_ - balance_shift); }
};

/// direct (p <= q): ((1/2 - 1/p)(2 lambda + a/2) - a/(2p), (2 lambda + a)/p');
/// reverse (q <= p): (-(2 lambda + a)/p - a/(2p), inf); two-sided (p = q): ((2 lambda + a)/p' - (4 lambda + 3a)/4, (2 lambda + a)/p').
inline GMRangeVerdict gm_pitt_range(double p, double q, double lambda, double a, GMDirection direction) {
    if (!(p > 1.0 && std::isfinite(p)) || !(q > 1.0 && std::isfinite(q))) throw DomainError("p and q must lie in (1, inf)");
    if (!(a > 0.0)) throw DomainError("parameter a must be positive");
    if (4.0 * lambda + a < 0.0) throw DomainError("GM ranges assume 4 lambda + a >= 0");
    const double width = 2.0 * lambda + a;
    const double inv_pp = 1.0 - 1.0 / p;
    GMRangeVerdict v;
    v.direction = direction;
    v.balance_shift = width * (inv_pp - 1.0 / q);
    switch (direction) {
        case GMDirection::direct:
            if (p > q) throw DomainError("the direct inequality needs p <= q");
            v.beta_lo = (0.5 - 1.0 / p) * (2.0 * lambda + 0.5 * a) - a / (2.0 * p);
            v.beta_hi = width * inv_pp;
            break;
        case GMDirection::reverse:
            if (q > p) throw DomainError("the reverse inequality needs q <= p");
            v.beta_lo = -width / p - a / (2.0 * p);
            v.beta_hi = std::numeric_limits<double>::infinity();
            break;
        case GMDirection::two_sided:
            if (p != q) throw DomainError("the two-sided equivalence needs p = q");
            v.beta_lo = width * inv_pp - (4.0 * lambda + 3.0 * a) / 4.0;
            v.beta_hi = width * inv_pp;
            break;
    }
    return v;
}

struct BoasSagherResult {
    /// Dilation factors and the ratio ||rho^{-gamma} H f||_p / ||r^beta f||_p at each.
    std::array<double, 3> mu{0.25, 1.0, 4.0};
    std::array<double, 3> ratio{};
    double gamma = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    /// max |ratio(mu) - ratio(1)| / ratio(1).
    double dilation_spread = 0.0;
    /// Sharp L^2 constant when p = 2 and 0 <= beta < lambda + a/2, NaN otherwise.
    double sharp_bound = std::numeric_limits<double>::quiet_NaN();
    bool converged = false;
};

namespace detail {

inline void require_nonnegative(const TestFunction& f) {
    const double hi = std::isfinite(right_end(f)) ? right_end(f) : 50.0 * f.scale;
    for (double r : log_grid(1e-4 * std::max(f.scale, 1e-3), hi, 400))
        if (f(r) < 0.0) throw DomainError("the two-sided estimate needs a nonnegative function");
}

}  // namespace detail

/// Ratios of the two-sided estimate on f and its dilates f(mu r), mu in {1/4, 1, 4}.
inline BoasSagherResult boas_sagher_check(const TestFunction& f, double p, double beta, double lambda, double a,
                                          HankelEngine& engine) {
    const GMRangeVerdict range = gm_pitt_range(p, p, lambda, a, GMDirection::two_sided);
    if (!range.contains(beta)) throw DomainError("beta outside the two-sided range");
    detail::require_nonnegative(f);
    if (!integral_condition(f, lambda, a).finite) throw DivergenceError("integral condition fails");
    const MeasureSpec m(lambda, a);
    BoasSagherResult out;
    out.gamma = range.gamma(beta);
    out.converged = true;
    for (std::size_t i = 0; i < out.mu.size(); ++i) {
        const TestFunction g = out.mu[i] == 1.0 ? f : dilate(f, out.mu[i]);
        const NormResult t = transform_norm_result(g, p, out.gamma, m, engine);
        const NormResult n = weighted_norm_result(g, p, beta, m);
        out.converged = out.converged && t.converged && n.converged;
        out.ratio[i] = t.value / n.value;
    }
    out.lower = *std::min_element(out.ratio.begin(), out.ratio.end());
    out.upper = *std::max_element(out.ratio.begin(), out.ratio.end());
    for (double r : out.ratio) out.dilation_spread = std::max(out.dilation_spread, std::abs(r - out.ratio[1]) / out.ratio[1]);
    if (p == 2.0 && beta >= 0.0 && beta < lambda + 0.5 * a) out.sharp_bound = sharp_constant(beta, lambda, a);
    return out;
}

inline BoasSagherResult boas_sagher_check(const TestFunction& f, double p, double beta, double lambda, double a) {
    HankelEngine engine;
    return boas_sagher_check(f, p, beta, lambda, a, engine);
}

/// The chain showing the integral condition from ||r^beta f||_p < inf, with sigma = lambda + a/4:
///   int_r^inf u^sigma |df| <= C_sigma int_{r/c}^inf u^{sigma-1} |f| du, C_sigma = C c^sigma (2 if sigma > 0, else 1),
///   int_{1/c}^inf u^{sigma-1}|f| du <= ||r^beta f||_p H_tail and int_0^1 r^{2 lambda+a-1}|f| dr <= ||r^beta f||_p H_origin
/// (Hoelder, with H finite exactly inside the two-sided beta range).
struct ConditionChain {
    GMWitness witness;
    double C_sigma = 0.0;
    /// Largest relative violation of each step (<= 0 when the step holds).
    double variation_step = 0.0;
    double tail_step = 0.0;
    double origin_step = 0.0;

    double max_violation() const { return std::max({variation_step, tail_step, origin_step}); }
};

inline ConditionChain condition_chain(const TestFunction& f, double p, double beta, double lambda, double a, double c = 2.0,
                                const std::vector<double>& grid = default_gm_grid()) {
    const GMRangeVerdict range = gm_pitt_range(p, p, lambda, a, GMDirection::two_sided);
    if (!range.contains(beta)) throw DomainError("beta outside the two-sided range");
    const MeasureSpec m(lambda, a);
    double norm = 0.0;
    try {
        norm = weighted_norm(f, p, beta, m);
    } catch (const DivergenceError&) {
        throw DomainError("the weighted norm of f is infinite");
    }
    const double sigma = lambda + 0.25 * a;
    const double dens = m.density_exponent();
    const double pp = p / (p - 1.0);
    ConditionChain out;
    out.witness = gm_witness_search(f, c, grid);
    out.C_sigma = out.witness.C * std::pow(c, sigma) * (sigma > 0.0 ? 2.0 : 1.0);
    out.variation_step = -std::numeric_limits<double>::infinity();
    for (double r : grid) {
        const double rhs = out.C_sigma * tail_mass(f, r / c, sigma);
        const double lhs = tail_variation(f, r, sigma);
        if (rhs > 0.0) out.variation_step = std::max(out.variation_step, (lhs - rhs) / rhs);
        else if (lhs > 0.0) out.variation_step = std::numeric_limits<double>::infinity();
    }
    const double scale = std::pow(m.b(), -1.0 / p);
    // int_L^inf u^{e p'} du with e = sigma - 1 - beta - dens/p.
    const double e_tail = (sigma - 1.0 - beta - dens / p) * pp;
    const double lo = 1.0 / c;
    const double h_tail = scale * std::pow(std::pow(lo, e_tail + 1.0) / (-e_tail - 1.0), 1.0 / pp);
    const double mass = tail_mass(f, lo, sigma);
    out.tail_step = (mass - norm * h_tail) / (norm * h_tail);
    const double e_origin = (dens / pp - beta) * pp;
    const double h_origin = scale * std::pow(1.0 / (e_origin + 1.0), 1.0 / pp);
    const IntegralCondition ic = integral_condition(f, lambda, a);
    out.origin_step = (ic.origin_part - norm * h_origin) / (norm * h_origin);
    return out;
}

/// Largest relative violation along the chain (<= 0 on pass).
inline double remark_bound_check(const TestFunction& f, double p, double beta, double lambda, double a) {
    return condition_chain(f, p, beta, lambda, a).max_violation();
}

}  // namespace genft

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "genft/errors.hpp"
#include "genft/specfun.hpp"

namespace genft {

inline constexpr std::size_t default_evaluation_budget = 1'000'000;

/// Accept an estimate once its error is below max(abs, rel * |value|).
struct Tolerance {
    double abs = 1e-10;
    double rel = 0.0;

    double target(double value) const { return std::max(abs, rel * std::abs(value)); }
    Tolerance scaled(double factor) const { return {abs * factor, rel * factor}; }
    /// Tolerance for one piece of a larger sum: the relative part also covers the running total.
    Tolerance relative_to(double running_total) const { return {target(running_total), rel}; }
    /// Target relaxed to the roundoff floor of a sum whose absolute mass is abs_value.
    double attainable(double value, double abs_value) const {
        return std::max(target(value), 200.0 * std::numeric_limits<double>::epsilon() * abs_value);
    }
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
    std::size_t evaluations = 0;
    /// Integral of |f|, useful for negligibility tests of panels.
    double abs_value = 0.0;
};

enum class DecayClass { schwartz, exponential, power, compact, unknown };

/// Behaviour of an integrand (or of a function) at infinity.
struct Decay {
    DecayClass kind = DecayClass::schwartz;
    /// For power decay: |f(x)| ~ x^exponent.
    double exponent = std::numeric_limits<double>::quiet_NaN();
    /// For compact support: right end of the support.
    double support_end = std::numeric_limits<double>::infinity();
    /// Compact support reached through a C-infinity cutoff (tail extrapolation is then legitimate).
    bool smooth_cutoff = false;

    static Decay schwartz() { return {}; }
    static Decay exponential() { return {DecayClass::exponential}; }
    static Decay power(double exponent) { return {DecayClass::power, exponent}; }
    static Decay compact(double end, bool smooth = false) {
        return {DecayClass::compact, std::numeric_limits<double>::quiet_NaN(), end, smooth};
    }
    static Decay unknown() { return {DecayClass::unknown}; }
};

/// The integrand carries a factor oscillating like J_order(frequency * x).
struct Oscillation {
    double order = 0.0;
    double frequency = 1.0;
};

struct IntegrandSpec {
    std::function<double(double)> evaluator;
    Decay decay = Decay::schwartz();
    std::optional<Oscillation> oscillation;
    /// Integrand behaves like (x - lo)^lo_exponent at the lower limit (and likewise at the upper limit).
    double lo_exponent = 0.0;
    double hi_exponent = 0.0;
    /// Length scale of the bulk of the integrand; semi-infinite panels start at this width.
    double scale = 1.0;
    /// Lower limit used by integrate_semi_infinite.
    double start = 0.0;
    std::size_t budget = default_evaluation_budget;
};

namespace detail {

struct Segment {
    double a;
    double b;
    double value;
    double error;
    double abs_value;
    bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment gauss_kronrod_15(F& f, double a, double b) {
    using kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    using gauss = boost::math::quadrature::gauss<double, 7>;
    const auto& xk = kronrod::abscissa();
    const auto& wk = kronrod::weights();
    const auto& wg = gauss::weights();
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fv1[7];
    double fv2[7];
    const double fc = f(center);
    double res_k = fc * wk[0];
    double res_g = fc * wg[0];
    double res_abs = std::abs(res_k);
    for (int j = 1; j < 8; ++j) {
        const double dx = half * xk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv1[j - 1] = f1;
        fv2[j - 1] = f2;
        res_k += wk[j] * (f1 + f2);
        res_abs += wk[j] * (std::abs(f1) + std::abs(f2));
        // Gauss nodes coincide with the even-indexed Kronrod nodes.
        if (j % 2 == 0) res_g += wg[j / 2] * (f1 + f2);
    }
    const double mean = 0.5 * res_k;
    double res_asc = wk[0] * std::abs(fc - mean);
    for (int j = 1; j < 8; ++j) res_asc += wk[j] * (std::abs(fv1[j - 1] - mean) + std::abs(fv2[j - 1] - mean));

    const double value = res_k * half;
    res_abs *= std::abs(half);
    res_asc *= std::abs(half);
    double err = std::abs((res_k - res_g) * half);
    if (res_asc != 0.0 && err != 0.0) err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * res_abs, err);
    if (!std::isfinite(value)) err = std::numeric_limits<double>::infinity();
    return {a, b, value, err, res_abs};
}

/// Globally adaptive G7-K15 over the partition given by `points` (sorted, at least two entries).
template <class F>
QuadratureResult adaptive_gk(F& f, const std::vector<double>& points, Tolerance tol, std::size_t budget) {
    std::priority_queue<Segment> heap;
    QuadratureResult out;
    double total = 0.0;
    double error = 0.0;
    double abs_total = 0.0;
    std::vector<Segment> frozen;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (!(points[i + 1] > points[i])) continue;
        Segment s = gauss_kronrod_15(f, points[i], points[i + 1]);
        out.evaluations += 15;
        total += s.value;
        error += s.error;
        abs_total += s.abs_value;
        heap.push(s);
    }
    while (!heap.empty() && error > tol.attainable(total, abs_total) && out.evaluations + 30 <= budget) {
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) ||
            (worst.b - worst.a) < 64.0 * std::numeric_limits<double>::epsilon() * std::abs(mid)) {
            frozen.push_back(worst);
            continue;
        }
        Segment left = gauss_kronrod_15(f, worst.a, mid);
        Segment right = gauss_kronrod_15(f, mid, worst.b);
        out.evaluations += 30;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        abs_total += left.abs_value + right.abs_value - worst.abs_value;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to remove drift from the running updates.
    total = 0.0;
    error = 0.0;
    abs_total = 0.0;
    for (const auto& s : frozen) {
        total += s.value;
        error += s.error;
        abs_total += s.abs_value;
    }
    while (!heap.empty()) {
        total += heap.top().value;
        error += heap.top().error;
        abs_total += heap.top().abs_value;
        heap.pop();
    }
    out.value = total;
    out.error_estimate = error;
    out.abs_value = abs_total;
    out.converged = std::isfinite(total) && error <= tol.attainable(total, abs_total);
    return out;
}

inline int substitution_power(double exponent) {
    if (exponent >= 0.0) return 1;
    if (!(exponent > -1.0)) throw DivergenceError("endpoint singularity is not integrable");
    return static_cast<int>(std::ceil(1.0 / (exponent + 1.0) - 1e-12));
}

template <class F>
QuadratureResult finite_with_singularities(F& f, double lo, double hi, double lo_exp, double hi_exp,
                                           const std::vector<double>& interior, Tolerance tol,
                                           std::size_t budget) {
    const int mlo = substitution_power(lo_exp);
    const int mhi = substitution_power(hi_exp);
    if (mlo == 1 && mhi == 1) {
        std::vector<double> pts{lo};
        for (double p : interior)
            if (p > lo && p < hi) pts.push_back(p);
        pts.push_back(hi);
        std::sort(pts.begin(), pts.end());
        return adaptive_gk(f, pts, tol, budget);
    }
    // Singular ends: x = lo + L u^m on the left half and x = hi - L u^m on the right half.
    const double split = (mlo > 1 && mhi > 1) ? 0.5 * (lo + hi) : (mlo > 1 ? hi : lo);
    QuadratureResult total;
    total.converged = true;
    auto accumulate = [&](const QuadratureResult& r) {
        total.value += r.value;
        total.error_estimate += r.error_estimate;
        total.evaluations += r.evaluations;
        total.abs_value += r.abs_value;
        total.converged = total.converged && r.converged;
    };
    const std::size_t share = (mlo > 1 && mhi > 1) ? budget / 2 : budget;
    if (mlo > 1) {
        const double len = split - lo;
        auto g = [&](double u) {
            const double um1 = std::pow(u, mlo - 1);
            double x = lo + len * um1 * u;
            if (x <= lo) x = std::nextafter(lo, hi);
            return f(x) * len * mlo * um1;
        };
        std::vector<double> pts{0.0};
        for (double p : interior)
            if (p > lo && p < split) pts.push_back(std::pow((p - lo) / len, 1.0 / mlo));
        pts.push_back(1.0);
        std::sort(pts.begin(), pts.end());
        accumulate(adaptive_gk(g, pts, tol.scaled(0.5), share));
    } else if (split > lo) {
        std::vector<double> pts{lo};
        for (double p : interior)
            if (p > lo && p < split) pts.push_back(p);
        pts.push_back(split);
        accumulate(adaptive_gk(f, pts, tol.scaled(0.5), share));
    }
    if (mhi > 1) {
        const double len = hi - split;
        auto g = [&](double u) {
            const double um1 = std::pow(u, mhi - 1);
            double x = hi - len * um1 * u;
            if (x >= hi) x = std::nextafter(hi, lo);
            return f(x) * len * mhi * um1;
        };
        std::vector<double> pts{0.0};
        for (double p : interior)
            if (p > split && p < hi) pts.push_back(std::pow((hi - p) / len, 1.0 / mhi));
        pts.push_back(1.0);
        std::sort(pts.begin(), pts.end());
        accumulate(adaptive_gk(g, pts, tol.scaled(0.5), share));
    } else if (hi > split) {
        std::vector<double> pts{split};
        for (double p : interior)
            if (p > split && p < hi) pts.push_back(p);
        pts.push_back(hi);
        accumulate(adaptive_gk(f, pts, tol.scaled(0.5), share));
    }
    total.converged = total.converged && total.error_estimate <= tol.target(total.value);
    return total;
}

}  // namespace detail

/// Wynn's epsilon algorithm over a stream of partial sums.
class WynnEpsilon {
public:
    double push(double partial_sum) {
        constexpr double tiny = 1e-300;
        constexpr double huge = 1e300;
        table_.push_back(partial_sum);
        double carry = 0.0;
        for (std::size_t j = table_.size() - 1; j > 0; --j) {
            const double before = carry;
            carry = table_[j - 1];
            const double diff = table_[j] - carry;
            table_[j - 1] = std::abs(diff) <= tiny ? huge : before + 1.0 / diff;
        }
        double estimate = (table_.size() % 2 == 1) ? table_[0] : table_[1];
        if (!std::isfinite(estimate) || std::abs(estimate) > 1e-2 * huge) estimate = last_;
        change_ = std::abs(estimate - last_);
        last_ = estimate;
        return estimate;
    }
    double last_change() const { return change_; }
    std::size_t size() const { return table_.size(); }

private:
    std::vector<double> table_;
    double last_ = 0.0;
    double change_ = std::numeric_limits<double>::infinity();
};

template <class F>
QuadratureResult integrate_finite(F&& f, double lo, double hi, Tolerance tol, double lo_exponent = 0.0,
                                  double hi_exponent = 0.0, const std::vector<double>& breakpoints = {},
                                  std::size_t budget = default_evaluation_budget) {
    if (!(lo < hi)) {
        if (lo == hi) return {0.0, 0.0, true, 0, 0.0};
        throw DomainError("integrate_finite: lo must be below hi");
    }
    return detail::finite_with_singularities(f, lo, hi, lo_exponent, hi_exponent, breakpoints, tol, budget);
}

inline QuadratureResult integrate_finite(const IntegrandSpec& spec, double lo, double hi, Tolerance tol) {
    auto f = spec.evaluator;
    return integrate_finite(f, lo, hi, tol, spec.lo_exponent, spec.hi_exponent, {}, spec.budget);
}

namespace detail {

template <class F>
QuadratureResult semi_infinite_pass(F& f, const IntegrandSpec& spec, Tolerance tol, double panel_share) {
    const Decay& decay = spec.decay;
    const bool oscillatory = spec.oscillation.has_value();
    if (decay.kind == DecayClass::power && std::isfinite(decay.exponent)) {
        if (!oscillatory && decay.exponent >= -1.0)
            throw DivergenceError("integrand decays like x^" + std::to_string(decay.exponent) +
                                  ", not integrable at infinity");
        if (oscillatory && decay.exponent >= 0.0)
            throw DivergenceError("oscillatory integrand does not decay; improper integral diverges");
    }
    const double end = decay.kind == DecayClass::compact ? decay.support_end
                                                         : std::numeric_limits<double>::infinity();
    if (!(end > spec.start)) return {0.0, 0.0, true, 0, 0.0};
    const bool may_truncate = decay.kind == DecayClass::schwartz || decay.kind == DecayClass::exponential ||
                              decay.kind == DecayClass::unknown;
    const bool may_extrapolate = (decay.kind == DecayClass::compact && decay.smooth_cutoff && oscillatory) ||
                                 decay.kind == DecayClass::power || decay.kind == DecayClass::unknown ||
                                 (oscillatory && decay.kind != DecayClass::compact);

    // Zeros come from the shared table near the origin and from a local walker far out (or past the
    // first few thousand zeros), where tabulating every preceding zero would be wasteful.
    BesselZeros* zeros = nullptr;
    std::optional<BesselZeroWalker> walker;
    std::size_t zero_index = 0;
    double frequency = 1.0;
    if (oscillatory) {
        frequency = spec.oscillation->frequency;
        if (!(frequency > 0.0)) throw DomainError("oscillation frequency must be positive");
        const double x0 = spec.start * frequency;
        if (x0 > 1e4) {
            walker.emplace(spec.oscillation->order, x0);
        } else {
            zeros = &bessel_zeros(spec.oscillation->order);
            zero_index = zeros->first_above(x0);
        }
    }
    double pending_zero = 0.0;
    auto peek_zero = [&]() {
        if (!walker && zero_index >= 4096) walker.emplace(spec.oscillation->order, (*zeros)[zero_index - 1] + 1e-3);
        if (walker) {
            if (pending_zero == 0.0) pending_zero = walker->next();
            return pending_zero;
        }
        return (*zeros)[zero_index];
    };
    auto consume_zero = [&]() {
        if (walker)
            pending_zero = 0.0;
        else
            ++zero_index;
    };

    QuadratureResult out;
    double sum = 0.0;
    double sum_error = 0.0;
    bool all_converged = true;
    WynnEpsilon wynn;
    int stable = 0;
    int quiet = 0;
    int steady = 0;
    double previous_abs = 0.0;
    double left = spec.start;
    const Tolerance panel_tol = tol.scaled(panel_share);
    for (std::size_t panel = 0;; ++panel) {
        const double cap = left + std::max(spec.scale, left - spec.start);
        double right = cap;
        bool at_zero = false;
        if (oscillatory) {
            const double z = peek_zero() / frequency;
            if (z <= cap) {
                right = z;
                at_zero = true;
                consume_zero();
            }
        }
        bool at_end = false;
        if (right >= end) {
            right = end;
            at_end = true;
            at_zero = false;
        }
        const double lo_exp = panel == 0 ? spec.lo_exponent : 0.0;
        const double hi_exp = at_end ? spec.hi_exponent : 0.0;
        const std::size_t remaining = spec.budget > out.evaluations ? spec.budget - out.evaluations : 0;
        const QuadratureResult r = finite_with_singularities(
            f, left, right, lo_exp, hi_exp, {}, panel_tol.relative_to(sum), std::max<std::size_t>(remaining, 30));
        out.evaluations += r.evaluations;
        sum += r.value;
        sum_error += r.error_estimate;
        all_converged = all_converged && r.converged;
        out.abs_value += r.abs_value;
        if (at_end) {
            out.value = sum;
            out.error_estimate = sum_error;
            out.converged = all_converged && sum_error <= tol.attainable(sum, out.abs_value);
            return out;
        }
        if (may_truncate && right >= spec.start + spec.scale) {
            quiet = r.abs_value <= 0.02 * tol.target(sum) ? quiet + 1 : 0;
            if (quiet >= 3) {
                out.value = sum;
                out.error_estimate = sum_error + r.abs_value;
                out.converged = all_converged && out.error_estimate <= tol.attainable(sum, out.abs_value);
                return out;
            }
        }
        // Over the head of a flat integrand the partial sums are constant while the panels grow
        // explosively; the extrapolation table restarts until panel masses vary at a moderate rate.
        steady = r.abs_value > 0.0 && r.abs_value <= 2.0 * previous_abs ? steady + 1 : 0;
        previous_abs = r.abs_value;
        if (steady == 0) {
            wynn = WynnEpsilon{};
            stable = 0;
        }
        const bool feed = may_extrapolate && steady > 0 && (oscillatory ? at_zero : true);
        if (feed) {
            const double estimate = wynn.push(sum);
            if (wynn.size() >= 8) {
                stable = wynn.last_change() <= 0.1 * tol.target(estimate) ? stable + 1 : 0;
                if (stable >= 3) {
                    out.value = estimate;
                    out.error_estimate = sum_error + wynn.last_change();
                    out.converged = all_converged && out.error_estimate <= tol.attainable(estimate, out.abs_value);
                    return out;
                }
            }
        }
        if (out.evaluations >= spec.budget || panel > 200000) {
            out.value = wynn.size() >= 8 ? wynn.push(sum) : sum;
            out.error_estimate = sum_error + (wynn.size() >= 8 ? wynn.last_change() : std::abs(r.value));
            out.converged = false;
            return out;
        }
        left = right;
    }
}

/// Panels are first resolved relative to the running sum; when cancellation leaves the total
/// short of the target, the pass is repeated with tighter panels.
template <class F>
QuadratureResult semi_infinite_core(F& f, const IntegrandSpec& spec, Tolerance tol) {
    QuadratureResult r = semi_infinite_pass(f, spec, tol, 0.05);
    std::size_t spent = r.evaluations;
    for (double share : {5e-3, 5e-4}) {
        if (r.converged || !std::isfinite(r.error_estimate) || 2 * spent > spec.budget) break;
        IntegrandSpec retry = spec;
        retry.budget = spec.budget - spent;
        r = semi_infinite_pass(f, retry, tol, share);
        spent += r.evaluations;
    }
    r.evaluations = spent;
    return r;
}

}  // namespace detail

/// Integral over [spec.start, infinity) following the decay and oscillation metadata.
inline QuadratureResult integrate_semi_infinite(const IntegrandSpec& spec, Tolerance tol) {
    auto f = spec.evaluator;
    return detail::semi_infinite_core(f, spec, tol);
}

/// Same as above for a generic callable (avoids std::function dispatch in hot loops).
template <class F>
QuadratureResult integrate_semi_infinite(F&& f, const IntegrandSpec& spec, Tolerance tol) {
    return detail::semi_infinite_core(f, spec, tol);
}

/// Result of a log-axis integral; `divergent` is set when the integrand stays non-negligible at the axis ends.
struct LogAxisResult : QuadratureResult {
    bool divergent = false;
};

/// Integral of f(r) dr over (r_lo, r_hi) with 0 <= r_lo < r_hi <= inf, evaluated in t = ln r with
/// panels widening from r = 1 (or from the finite end) up to four units of t.
template <class F>
LogAxisResult integrate_log_axis(F&& f, Tolerance tol, double r_lo = 0.0,
                                 double r_hi = std::numeric_limits<double>::infinity(),
                                 std::size_t budget = default_evaluation_budget) {
    constexpr double t_min = -700.0;
    constexpr double t_max = 700.0;
    const double t_lo = r_lo > 0.0 ? std::log(r_lo) : -std::numeric_limits<double>::infinity();
    const double t_hi = std::isfinite(r_hi) ? std::log(r_hi) : std::numeric_limits<double>::infinity();
    if (!(t_lo < t_hi)) throw DomainError("integrate_log_axis: empty range");
    const double center = std::clamp(0.0, t_lo, t_hi);
    auto g = [&f](double t) {
        const double r = std::exp(t);
        const double v = f(r);
        return v == 0.0 ? 0.0 : v * r;
    };
    LogAxisResult out;
    out.converged = true;
    const Tolerance panel_tol = tol.scaled(0.02);
    auto sweep = [&](int direction) {
        const double limit = direction > 0 ? std::min(t_hi, t_max) : std::max(t_lo, t_min);
        const bool open_end = direction > 0 ? t_hi > t_max : t_lo < t_min;
        double pos = center;
        double width = 1.0;
        int quiet = 0;
        int growing = 0;
        double previous = 0.0;
        double previous_mass = 0.0;
        while (direction > 0 ? pos < limit : pos > limit) {
            double next = pos + direction * width;
            bool last = false;
            if (direction > 0 ? next >= limit : next <= limit) {
                next = limit;
                last = true;
            }
            const double a = std::min(pos, next);
            const double b = std::max(pos, next);
            const std::size_t remaining = budget > out.evaluations ? budget - out.evaluations : 30;
            const QuadratureResult r =
                detail::adaptive_gk(g, {a, b}, panel_tol.relative_to(out.value), std::max<std::size_t>(remaining, 30));
            out.value += r.value;
            out.error_estimate += r.error_estimate;
            out.abs_value += r.abs_value;
            out.evaluations += r.evaluations;
            out.converged = out.converged && r.converged;
            if (last) {
                if (open_end) {
                    // Remainder beyond the representable axis, assuming exponential decay in t.
                    const double g0 = std::abs(g(limit));
                    const double g1 = std::abs(g(limit - direction));
                    const double rate = (g0 > 0.0 && g1 > 0.0) ? std::log(g1 / g0) : (g0 == 0.0 ? 1.0 : 0.0);
                    if (!(rate > 0.0)) {
                        out.divergent = true;
                        return;
                    }
                    const double remainder = g0 / rate;
                    out.error_estimate += remainder;
                    if (remainder > tol.target(out.value)) out.divergent = true;
                }
                return;
            }
            // Far out on the axis, a mass per unit length in t that does not drop means |f(r)| r does not decay.
            const double density = r.abs_value / (b - a);
            growing = std::abs(pos) > 30.0 && density > 0.0 && density >= 0.95 * previous ? growing + 1 : 0;
            if (growing >= 3) {
                out.divergent = true;
                return;
            }
            previous = density;
            quiet = r.abs_value <= 0.01 * tol.target(out.value) ? quiet + 1 : 0;
            if (quiet >= 2 && r.abs_value == 0.0 && previous_mass == 0.0) return;
            if (quiet >= 2 && r.abs_value < previous_mass) {
                // Two consecutive negligible panels: extend their ratio geometrically to bound the rest.
                const double q = r.abs_value / previous_mass;
                const double remainder = r.abs_value * q / (1.0 - q);
                if (remainder <= 0.1 * tol.target(out.value)) {
                    out.error_estimate += remainder;
                    return;
                }
            }
            previous_mass = r.abs_value;
            pos = next;
            width = std::min(2.0 * width, 4.0);
            if (out.evaluations >= budget) {
                out.converged = false;
                return;
            }
        }
    };
    if (t_hi > center) sweep(+1);
    if (t_lo < center) sweep(-1);
    out.converged = out.converged && !out.divergent && out.error_estimate <= tol.attainable(out.value, out.abs_value);
    return out;
}

/// Nodes and weights of composite n-point Gauss-Legendre rules on the given panel boundaries.
struct QuadratureGrid {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline QuadratureGrid composite_gauss_legendre(const std::vector<double>& boundaries) {
    using rule = boost::math::quadrature::gauss<double, 20>;
    const auto& x = rule::abscissa();
    const auto& w = rule::weights();
    QuadratureGrid grid;
    for (std::size_t i = 0; i + 1 < boundaries.size(); ++i) {
        const double c = 0.5 * (boundaries[i] + boundaries[i + 1]);
        const double h = 0.5 * (boundaries[i + 1] - boundaries[i]);
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (x[j] == 0.0) {
                grid.nodes.push_back(c);
                grid.weights.push_back(h * w[j]);
                continue;
            }
            grid.nodes.push_back(c - h * x[j]);
            grid.weights.push_back(h * w[j]);
            grid.nodes.push_back(c + h * x[j]);
            grid.weights.push_back(h * w[j]);
        }
    }
    return grid;
}

}  // namespace genft

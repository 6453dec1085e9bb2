#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "genft/errors.hpp"

namespace genft {

inline constexpr double pi = std::numbers::pi;

/// Order of a Bessel function; must exceed -1 so that 2^nu Gamma(nu+1) is finite and nonzero.
class BesselOrder {
public:
    explicit BesselOrder(double value) : value_(value) {
        if (!(value > -1.0)) throw DomainError("Bessel order must exceed -1, got " + std::to_string(value));
    }
    double value() const { return value_; }

private:
    double value_;
};

/// Degree s >= 0 and parameter > -1 of a generalized Laguerre polynomial.
class LaguerreIndex {
public:
    LaguerreIndex(int degree, double parameter) : degree_(degree), parameter_(parameter) {
        if (degree < 0) throw DomainError("Laguerre degree must be nonnegative");
        if (!(parameter > -1.0)) throw DomainError("Laguerre parameter must exceed -1");
    }
    int degree() const { return degree_; }
    double parameter() const { return parameter_; }

private:
    int degree_;
    double parameter_;
};

inline double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma requires a positive argument");
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

inline double digamma(double x) {
    if (!(x > 0.0)) throw DomainError("digamma requires a positive argument");
    double shift = 0.0;
    while (x < 10.0) {
        shift -= 1.0 / x;
        x += 1.0;
    }
    const double r = 1.0 / (x * x);
    // Bernoulli-number asymptotic tail: B_{2k} / (2k x^{2k}), k = 1..7.
    const double tail =
        r * (1.0 / 12 -
             r * (1.0 / 120 -
                  r * (1.0 / 252 - r * (1.0 / 240 - r * (1.0 / 132 - r * (691.0 / 32760 - r * (1.0 / 12)))))));
    return shift + std::log(x) - 0.5 / x - tail;
}

namespace detail {

/// sum_m (-t^2/4)^m / (m! (nu+1)_m), which equals the normalized Bessel function j_nu(t).
inline double normalized_series(double nu, double t) {
    const double q = -0.25 * t * t;
    double term = 1.0;
    double sum = 1.0;
    for (int m = 1; m < 400; ++m) {
        term *= q / (m * (nu + m));
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum) || std::abs(term) < 1e-300) break;
    }
    return sum;
}

inline bool series_region(double nu, double t) { return t * t <= 4.0 * std::max(1.0, nu + 1.0); }

/// Hankel asymptotic expansion; returns false if the terms start growing before reaching full precision.
inline bool hankel_asymptotic(double nu, double t, double& out) {
    const double mu = 4.0 * nu * nu;
    double p = 1.0;
    double q = 0.0;
    double term = 1.0;
    double previous = std::numeric_limits<double>::infinity();
    bool reached = false;
    for (int k = 1; k < 80; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (8.0 * k * t);
        const double mag = std::abs(term);
        if (mag > previous && mag > 1e-17) return false;
        previous = mag;
        // k odd feeds Q with sign (-1)^((k-1)/2); k even feeds P with sign (-1)^(k/2).
        if (k % 2 == 1)
            q += ((k / 2) % 2 == 0 ? term : -term);
        else
            p += ((k / 2) % 2 == 0 ? term : -term);
        if (mag < 1e-17) {
            reached = true;
            break;
        }
    }
    if (!reached) return false;
    const double chi = t - (0.5 * nu + 0.25) * pi;
    out = std::sqrt(2.0 / (pi * t)) * (p * std::cos(chi) - q * std::sin(chi));
    return true;
}

/// Steed's method: CF1 for J'/J, downward recurrence, CF2 for (J'+iY')/(J+iY); requires t >= 2.
inline double steed_bessel_j(double nu, double t) {
    constexpr double eps = 1e-16;
    constexpr double fpmin = std::numeric_limits<double>::min() / eps;
    constexpr int maxit = 100000;
    const int nl = std::max(0, static_cast<int>(nu - t + 1.5));
    const double xmu = nu - nl;
    const double xi = 1.0 / t;
    const double xi2 = 2.0 * xi;
    const double w = xi2 / pi;

    int isign = 1;
    double h = nu * xi;
    if (std::abs(h) < fpmin) h = fpmin;
    double b = xi2 * nu;
    double d = 0.0;
    double c = h;
    int i = 0;
    for (; i < maxit; ++i) {
        b += xi2;
        d = b - d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = b - 1.0 / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = c * d;
        h *= del;
        if (d < 0.0) isign = -isign;
        if (std::abs(del - 1.0) <= eps) break;
    }
    if (i == maxit) throw NumericalError("bessel_j: continued fraction CF1 did not converge");

    double rjl = isign * fpmin;
    double rjpl = h * rjl;
    const double rjl1 = rjl;
    double fact = nu * xi;
    for (int l = nl; l >= 1; --l) {
        const double rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if (rjl == 0.0) rjl = eps;
    const double f = rjpl / rjl;

    double a = 0.25 - xmu * xmu;
    double p = -0.5 * xi;
    double q = 1.0;
    const double br = 2.0 * t;
    double bi = 2.0;
    double fct = a * xi / (p * p + q * q);
    double cr = br + q * fct;
    double ci = bi + p * fct;
    double den = br * br + bi * bi;
    double dr = br / den;
    double di = -bi / den;
    double dlr = cr * dr - ci * di;
    double dli = cr * di + ci * dr;
    double temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    for (i = 1; i < maxit; ++i) {
        a += 2.0 * i;
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if (std::abs(dr) + std::abs(di) < fpmin) dr = fpmin;
        fct = a / (cr * cr + ci * ci);
        cr = br + cr * fct;
        ci = bi - ci * fct;
        if (std::abs(cr) + std::abs(ci) < fpmin) cr = fpmin;
        den = dr * dr + di * di;
        dr /= den;
        di /= -den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (std::abs(dlr - 1.0) + std::abs(dli) <= eps) break;
    }
    if (i == maxit) throw NumericalError("bessel_j: continued fraction CF2 did not converge");
    const double gam = (p - f) / q;
    const double rjmu = std::copysign(std::sqrt(w / ((p - f) * gam + q)), rjl);
    return rjl1 * (rjmu / rjl);
}

inline double bessel_j_unchecked(double nu, double t, double log_gamma_nu1) {
    if (t == 0.0) return nu == 0.0 ? 1.0 : (nu > 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    if (series_region(nu, t)) return std::exp(nu * std::log(0.5 * t) - log_gamma_nu1) * normalized_series(nu, t);
    double value = 0.0;
    if (t >= std::max(25.0, 0.5 * nu * nu) && hankel_asymptotic(nu, t, value)) return value;
    return steed_bessel_j(nu, t);
}

}  // namespace detail

/// J_nu(t) for real nu > -1 and t >= 0.
inline double bessel_j(double nu, double t) {
    if (!(nu > -1.0)) throw DomainError("bessel_j: order must exceed -1");
    if (!(t >= 0.0)) throw DomainError("bessel_j: argument must be nonnegative");
    return detail::bessel_j_unchecked(nu, t, log_gamma(nu + 1.0));
}

/// j_nu(t) = 2^nu Gamma(nu+1) t^{-nu} J_nu(t), with j_nu(0) = 1. Caches log Gamma(nu+1) for repeated use.
class NormalizedBessel {
public:
    explicit NormalizedBessel(BesselOrder order)
        : nu_(order.value()), log_gamma_nu1_(log_gamma(order.value() + 1.0)) {}

    double order() const { return nu_; }

    double operator()(double t) const {
        t = std::abs(t);
        if (detail::series_region(nu_, t)) return detail::normalized_series(nu_, t);
        const double j = detail::bessel_j_unchecked(nu_, t, log_gamma_nu1_);
        return std::exp(log_gamma_nu1_ - nu_ * std::log(0.5 * t)) * j;
    }

private:
    double nu_;
    double log_gamma_nu1_;
};

inline double normalized_bessel(BesselOrder order, double t) {
    if (!(t >= 0.0)) throw DomainError("normalized_bessel: argument must be nonnegative");
    return NormalizedBessel(order)(t);
}

/// J_nu'(t) via (J_{nu-1}(t) - J_{nu+1}(t)) / 2.
inline double bessel_j_derivative(double nu, double t) {
    if (!(nu > 0.0)) throw DomainError("bessel_j_derivative: order must be positive");
    if (!(t >= 0.0)) throw DomainError("bessel_j_derivative: argument must be nonnegative");
    if (t == 0.0) {
        if (nu < 1.0) throw DomainError("bessel_j_derivative: singular at t = 0 for order < 1");
        return nu == 1.0 ? 0.5 : 0.0;
    }
    return 0.5 * (bessel_j(nu - 1.0, t) - bessel_j(nu + 1.0, t));
}

/// Generalized Laguerre polynomial L_s^{(lambda)}(t) by the three-term recurrence.
inline double laguerre(const LaguerreIndex& idx, double t) {
    const int s = idx.degree();
    const double lam = idx.parameter();
    if (s == 0) return 1.0;
    double prev = 1.0;
    double cur = 1.0 + lam - t;
    for (int n = 1; n < s; ++n) {
        const double next = ((2.0 * n + lam + 1.0 - t) * cur - (n + lam) * prev) / (n + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Positive zeros of J_nu, computed lazily and shared per order. Thread-safe.
class BesselZeros {
public:
    explicit BesselZeros(double nu) : nu_(nu), log_gamma_nu1_(log_gamma(nu + 1.0)) {}

    double order() const { return nu_; }

    /// m-th positive zero (0-based).
    double operator[](std::size_t m) {
        std::lock_guard<std::mutex> lock(mutex_);
        while (zeros_.size() <= m) extend();
        return zeros_[m];
    }

    /// Index of the first zero strictly greater than x.
    std::size_t first_above(double x) {
        std::lock_guard<std::mutex> lock(mutex_);
        if (zeros_.empty()) extend();
        while (zeros_.back() <= x) extend();
        return static_cast<std::size_t>(std::upper_bound(zeros_.begin(), zeros_.end(), x) - zeros_.begin());
    }

private:
    double value(double t) const { return detail::bessel_j_unchecked(nu_, t, log_gamma_nu1_); }

    void extend() {
        const double step = 0.25 * pi;
        double lo = zeros_.empty() ? (nu_ > 0.0 ? std::max(1e-3, nu_) : 1e-3) : zeros_.back() + 1e-9;
        double flo = value(lo);
        if (flo == 0.0) {
            lo += 1e-9;
            flo = value(lo);
        }
        for (int guard = 0; guard < 1000000; ++guard) {
            const double hi = lo + step;
            const double fhi = value(hi);
            if (fhi == 0.0) {
                zeros_.push_back(hi);
                return;
            }
            if ((flo < 0.0) != (fhi < 0.0)) {
                boost::uintmax_t iters = 200;
                auto tol = [](double u, double v) { return std::abs(u - v) <= 4e-16 * std::max(1.0, std::abs(u)); };
                auto [a, b] = boost::math::tools::toms748_solve([this](double x) { return value(x); }, lo, hi, flo,
                                                                fhi, tol, iters);
                zeros_.push_back(0.5 * (a + b));
                return;
            }
            lo = hi;
            flo = fhi;
        }
        throw NumericalError("BesselZeros: no sign change found");
    }

    double nu_;
    double log_gamma_nu1_;
    std::deque<double> zeros_;
    std::mutex mutex_;
};

/// Consecutive positive zeros of J_nu beyond a point, computed on the fly without a table.
class BesselZeroWalker {
public:
    BesselZeroWalker(double nu, double x) : nu_(nu), log_gamma_nu1_(log_gamma(nu + 1.0)), pos_(std::max(x, 1e-3)) {}

    double next() {
        const double step = 0.25 * pi;
        double lo = pos_;
        double flo = value(lo);
        for (int guard = 0; guard < 1000000; ++guard) {
            const double hi = lo + step;
            if (!(hi > lo)) throw NumericalError("BesselZeroWalker: argument beyond double resolution of the zeros");
            const double fhi = value(hi);
            if (fhi == 0.0 || (flo < 0.0) != (fhi < 0.0)) {
                double z = hi;
                if (fhi != 0.0 && flo != 0.0) {
                    boost::uintmax_t iters = 200;
                    auto tol = [](double u, double v) { return std::abs(u - v) <= 4e-16 * std::max(1.0, std::abs(u)); };
                    auto [a, b] = boost::math::tools::toms748_solve([this](double t) { return value(t); }, lo, hi, flo,
                                                                    fhi, tol, iters);
                    z = 0.5 * (a + b);
                }
                pos_ = z * (1.0 + 1e-15) + 1e-300;
                return z;
            }
            lo = hi;
            flo = fhi;
        }
        throw NumericalError("BesselZeroWalker: no sign change found");
    }

private:
    double value(double t) const { return detail::bessel_j_unchecked(nu_, t, log_gamma_nu1_); }

    double nu_;
    double log_gamma_nu1_;
    double pos_;
};

/// Process-wide registry of zero tables keyed by order.
inline BesselZeros& bessel_zeros(double nu) {
    static std::mutex registry_mutex;
    static std::map<double, std::unique_ptr<BesselZeros>> registry;
    std::lock_guard<std::mutex> lock(registry_mutex);
    auto& slot = registry[nu];
    if (!slot) slot = std::make_unique<BesselZeros>(nu);
    return *slot;
}

}  // namespace genft

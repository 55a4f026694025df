///
/// \file special.hpp
///
/// Scalar special-function kernel: log-gamma, incomplete gamma functions,
/// modified Bessel I, Kummer 1F1, Pochhammer symbol and half-integer rounding.
///
/// All functions are pure and safe to call concurrently.
///
#ifndef QFN_SPECIAL_HPP
#define QFN_SPECIAL_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qfn/types.hpp"

namespace qfn
{

//==============================================================================
// Gamma and log-gamma
//==============================================================================

///
/// ln Gamma(x) for x > 0.
///
/// Stirling series for x >= 15; smaller arguments are shifted up with the
/// recurrence Gamma(x) = Gamma(x + N) / (x (x+1) ... (x+N-1)).
///
inline Real ln_gamma(Real x)
{
    detail::require(x > 0 && std::isfinite(x), "ln_gamma: argument must be positive and finite");

    constexpr Real shift_threshold = 15.0;
    Real shift_log = 0;
    if (x < shift_threshold)
    {
        Real prod = 1;
        while (x < shift_threshold)
        {
            prod *= x;
            x += 1;
        }
        shift_log = std::log(prod);
    }

    // B_{2k} / (2k (2k-1)), k = 1..8
    constexpr Real coef[] = {
        1.0 / 12.0,          -1.0 / 360.0,       1.0 / 1260.0,         -1.0 / 1680.0,
        1.0 / 1188.0,        -691.0 / 360360.0,  1.0 / 156.0,          -3617.0 / 122400.0,
    };
    const Real inv = 1.0 / x;
    const Real inv2 = inv * inv;
    Real series = 0;
    for (int k = 7; k >= 0; --k)
    {
        series = series * inv2 + coef[k];
    }
    series *= inv;

    constexpr Real half_ln_two_pi = 0.91893853320467274178032973640561764;
    return (x - 0.5) * std::log(x) - x + half_ln_two_pi + series - shift_log;
}

/// Gamma(x) for x > 0 (exp of ln_gamma; overflows to +inf beyond x ~ 171).
inline Real gamma_fn(Real x)
{
    return std::exp(ln_gamma(x));
}

/// ln[(a)_k] = ln Gamma(a+k) - ln Gamma(a).
inline Real pochhammer_log(Real a, unsigned long long k)
{
    detail::require(a > 0, "pochhammer_log: a must be positive");
    if (k == 0)
    {
        return 0;
    }
    return ln_gamma(a + static_cast<Real>(k)) - ln_gamma(a);
}

//==============================================================================
// Incomplete gamma functions
//==============================================================================

namespace detail
{

constexpr unsigned igamma_max_iter = 10000;
constexpr Real igamma_eps = std::numeric_limits<Real>::epsilon() / 4;

//
// Sum S with gamma(a,x) = x^a e^{-x} S / a, valid (and used) for x < a + 1.
//
inline Real igamma_series_sum(Real a, Real x)
{
    Real sum = 1;
    Real term = 1;
    for (unsigned k = 1; k < igamma_max_iter; ++k)
    {
        term *= x / (a + static_cast<Real>(k));
        sum += term;
        if (term < sum * igamma_eps)
        {
            return sum;
        }
    }
    throw convergence_error("incomplete gamma series did not converge", sum, igamma_max_iter);
}

//
// Continued fraction F with Gamma(a,x) = x^a e^{-x} F, used for x >= a + 1.
// Modified Lentz evaluation.
//
inline Real igamma_cont_frac(Real a, Real x)
{
    constexpr Real tiny = std::numeric_limits<Real>::min() / std::numeric_limits<Real>::epsilon();
    Real b = x + 1 - a;
    Real c = 1 / tiny;
    Real d = 1 / b;
    Real h = d;
    for (unsigned i = 1; i < igamma_max_iter; ++i)
    {
        const Real an = -static_cast<Real>(i) * (static_cast<Real>(i) - a);
        b += 2;
        d = an * d + b;
        if (std::fabs(d) < tiny)
        {
            d = tiny;
        }
        c = b + an / c;
        if (std::fabs(c) < tiny)
        {
            c = tiny;
        }
        d = 1 / d;
        const Real delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1) < igamma_eps)
        {
            return h;
        }
    }
    throw convergence_error("incomplete gamma continued fraction did not converge", h, igamma_max_iter);
}

inline void check_igamma_args(Real a, Real x)
{
    require(a > 0 && std::isfinite(a), "incomplete gamma: a must be positive");
    require(x >= 0 && !std::isnan(x), "incomplete gamma: x must be nonnegative");
}

} // namespace detail

/// ln Gamma(a, x), the log of the upper incomplete gamma function.
inline Real log_upper_inc_gamma(Real a, Real x)
{
    detail::check_igamma_args(a, x);
    if (x == 0)
    {
        return ln_gamma(a);
    }
    if (std::isinf(x))
    {
        return -std::numeric_limits<Real>::infinity();
    }
    if (x < a + 1)
    {
        const Real log_p = a * std::log(x) - x - ln_gamma(a + 1) + std::log(detail::igamma_series_sum(a, x));
        return ln_gamma(a) + std::log(-std::expm1(log_p));
    }
    return a * std::log(x) - x + std::log(detail::igamma_cont_frac(a, x));
}

/// ln gamma(a, x), the log of the lower incomplete gamma function (-inf at x = 0).
inline Real log_lower_inc_gamma(Real a, Real x)
{
    detail::check_igamma_args(a, x);
    if (x == 0)
    {
        return -std::numeric_limits<Real>::infinity();
    }
    if (std::isinf(x))
    {
        return ln_gamma(a);
    }
    if (x < a + 1)
    {
        return a * std::log(x) - x - std::log(a) + std::log(detail::igamma_series_sum(a, x));
    }
    const Real log_q = a * std::log(x) - x - ln_gamma(a) + std::log(detail::igamma_cont_frac(a, x));
    return ln_gamma(a) + std::log1p(-std::exp(log_q));
}

/// Gamma(a, x) = integral of t^{a-1} e^{-t} over [x, inf).
inline Real upper_inc_gamma(Real a, Real x)
{
    return std::exp(log_upper_inc_gamma(a, x));
}

/// gamma(a, x) = integral of t^{a-1} e^{-t} over [0, x].
inline Real lower_inc_gamma(Real a, Real x)
{
    detail::check_igamma_args(a, x);
    if (x == 0)
    {
        return 0;
    }
    return std::exp(log_lower_inc_gamma(a, x));
}

//==============================================================================
// Modified Bessel function of the first kind
//==============================================================================

namespace detail
{

// Above this argument the scaled Bessel function switches to the
// large-argument expansion (e^{-x} underflows shortly after).
constexpr Real bessel_asymptotic_threshold = 500;

//
// sum_k t0 * prod_{j<=k} (x/2)^2 / (j (j + nu)); all terms positive.
//
inline Real bessel_i_series_from(Real nu, Real x, Real t0)
{
    const Real q = 0.25 * x * x;
    Real term = t0;
    Real sum = t0;
    for (unsigned k = 1; k < 100000; ++k)
    {
        const Real kk = static_cast<Real>(k);
        term *= q / (kk * (kk + nu));
        sum += term;
        if (kk > 0.5 * x && term <= sum * 1e-17)
        {
            break;
        }
    }
    return sum;
}

//
// e^{-x} I_nu(x) ~ (2 pi x)^{-1/2} sum_k (-1)^k prod_{j=1..k} (4nu^2 - (2j-1)^2) / (k! (8x)^k),
// summed until the terms stop decreasing.
//
inline Real bessel_i_scaled_asymptotic(Real nu, Real x)
{
    const Real mu = 4 * nu * nu;
    Real term = 1;
    Real sum = 1;
    for (int k = 1; k < 200; ++k)
    {
        const Real odd = 2.0 * k - 1;
        const Real next = -term * (mu - odd * odd) / (k * 8.0 * x);
        if (next == 0 || std::fabs(next) >= std::fabs(term))
        {
            break;
        }
        term = next;
        sum += term;
        if (std::fabs(term) < 1e-17 * std::fabs(sum))
        {
            break;
        }
    }
    return sum / std::sqrt(2 * std::numbers::pi * x);
}

inline void check_bessel_args(Real nu, Real x)
{
    require(nu >= 0 && std::isfinite(nu), "bessel_i: order must be nonnegative");
    require(x >= 0 && std::isfinite(x), "bessel_i: argument must be nonnegative");
}

} // namespace detail

/// e^{-x} I_nu(x); finite for every x >= 0.
inline Real bessel_i_scaled(Real nu, Real x)
{
    detail::check_bessel_args(nu, x);
    if (x == 0)
    {
        return nu == 0 ? 1.0 : 0.0;
    }
    if (x > detail::bessel_asymptotic_threshold)
    {
        return detail::bessel_i_scaled_asymptotic(nu, x);
    }
    const Real t0 = std::exp(-x) * std::pow(0.5 * x, nu) / gamma_fn(nu + 1);
    if (t0 > 0)
    {
        return detail::bessel_i_series_from(nu, x, t0);
    }
    // Leading term underflowed (tiny x with large nu, or large nu): log domain.
    const Real log_t0 = nu * std::log(0.5 * x) - ln_gamma(nu + 1) - x;
    const Real shift = std::max(log_t0, -600.0);
    return std::exp(shift) * detail::bessel_i_series_from(nu, x, std::exp(log_t0 - shift));
}

inline Real bessel_i_scaled(FnOrder nu, Real x)
{
    return bessel_i_scaled(nu.value(), x);
}

///
/// I_nu(x) for nu >= 0, x >= 0.
///
/// Direct power series for x <= 30; beyond that e^x times the scaled value.
/// Throws overflow_error when the result is not representable.
///
inline Real bessel_i(Real nu, Real x)
{
    detail::check_bessel_args(nu, x);
    if (x == 0)
    {
        return nu == 0 ? 1.0 : 0.0;
    }
    if (x <= 30)
    {
        const Real t0 = std::pow(0.5 * x, nu) / gamma_fn(nu + 1);
        if (t0 > 0)
        {
            return detail::bessel_i_series_from(nu, x, t0);
        }
    }
    const Real log_value = x + std::log(bessel_i_scaled(nu, x));
    if (log_value > 709)
    {
        throw overflow_error("bessel_i: result overflows double");
    }
    return std::exp(log_value);
}

inline Real bessel_i(FnOrder nu, Real x)
{
    return bessel_i(nu.value(), x);
}

//==============================================================================
// Kummer confluent hypergeometric function
//==============================================================================

///
/// 1F1(a; b; x) for x >= 0 by the ascending series, term ratio
/// (a+i) x / ((b+i)(i+1)). Stops once |term| < 1e-16 |sum| (past the
/// point where terms can still grow) or after 10 000 terms.
///
inline Real kummer_1f1(Real a, Real b, Real x)
{
    detail::require(!(b <= 0 && b == std::floor(b)), "kummer_1f1: b must not be a nonpositive integer");
    detail::require(x >= 0 && std::isfinite(x), "kummer_1f1: x must be nonnegative");
    detail::require(std::isfinite(a) && std::isfinite(b), "kummer_1f1: parameters must be finite");

    constexpr unsigned max_terms = 10000;
    Real term = 1;
    Real sum = 1;
    for (unsigned i = 0; i < max_terms; ++i)
    {
        const Real ii = static_cast<Real>(i);
        term *= (a + ii) / (b + ii) * x / (ii + 1);
        sum += term;
        if (term == 0)
        {
            return sum;
        }
        const bool monotone = a + ii >= 0 && b + ii > 0;
        if (monotone && std::fabs(term) < 1e-16 * std::fabs(sum))
        {
            return sum;
        }
    }
    throw convergence_error("kummer_1f1: series did not converge", sum, max_terms);
}

//==============================================================================
// Half-integer rounding
//==============================================================================

/// Smallest half-odd integer >= n, i.e. ceil(n - 1/2) + 1/2.
inline FnOrder ceil_half(Real n)
{
    return FnOrder(std::ceil(n - 0.5) + 0.5);
}

/// Largest half-odd integer <= n, i.e. floor(n + 1/2) - 1/2.
inline FnOrder floor_half(Real n)
{
    return FnOrder(std::floor(n + 0.5) - 0.5);
}

namespace detail
{

/// C(n, k) for small nonnegative integers, exact in double up to ~2^53.
inline Real binomial(long long n, long long k)
{
    if (k < 0 || k > n)
    {
        return 0;
    }
    k = std::min(k, n - k);
    Real r = 1;
    for (long long i = 1; i <= k; ++i)
    {
        r = r * static_cast<Real>(n - k + i) / static_cast<Real>(i);
    }
    return std::round(r);
}

inline Real sign(Real x)
{
    return static_cast<Real>((x > 0) - (x < 0));
}

/// Integer power with sign: s^k for s in {-1, 0, 1}, k >= 0.
inline Real sign_pow(Real s, long long k)
{
    if (k == 0)
    {
        return 1;
    }
    if (s == 0)
    {
        return 0;
    }
    return (s < 0 && (k % 2 != 0)) ? -1.0 : 1.0;
}

inline Real minus_one_pow(long long k)
{
    return (k % 2 == 0) ? 1.0 : -1.0;
}

} // namespace detail

} // namespace qfn

#endif // QFN_SPECIAL_HPP

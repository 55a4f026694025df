///
/// \file nuttall.hpp
///
/// Series evaluation, closed forms and bounds for the normalized Nuttall
/// Q-function
///
///   Qn_{m,n}(a, b) = Q_{m,n}(a, b) / a^n,
///   Q_{m,n}(a, b)  = int_b^inf x^m e^{-(x^2+a^2)/2} I_n(ax) dx,
///
/// and for the generalized Marcum Q-function Q_m(a, b) = Qn_{m,m-1}(a, b).
///
/// Everything is returned in normalized form unless the name says otherwise;
/// multiply by a^n (see `unnormalize`) for Q_{m,n}.
///
#ifndef QFN_NUTTALL_HPP
#define QFN_NUTTALL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>

#include "qfn/special.hpp"
#include "qfn/types.hpp"

namespace qfn
{

struct NuttallParams
{
    Real m;
    FnOrder n;
    Real a;
    Real b;
};

namespace detail
{

constexpr Real log_term_limit = 700;
constexpr std::size_t max_truncation_terms = 500;
constexpr std::size_t max_series_terms = 10000;
constexpr int consecutive_small_terms = 3;

inline void check_nuttall(const NuttallParams& p)
{
    require(std::isfinite(p.m), "nuttall: m must be finite");
    require(p.n.value() >= 0 && std::isfinite(p.n.value()), "nuttall: n must be nonnegative");
    require(p.a > 0 && std::isfinite(p.a), "nuttall: a must be positive");
    require(p.b >= 0 && std::isfinite(p.b), "nuttall: b must be nonnegative");
    require((p.m + p.n.value() + 1) > 0, "nuttall: requires m + n + 1 > 0");
}

inline void check_terms(std::size_t terms)
{
    require(terms >= 1 && terms <= max_truncation_terms, "truncated series: terms must lie in [1, 500]");
}

//
// ln of the truncation weight Gamma(p+l) p^{1-2l} / Gamma(p-l+1), 0 <= l <= p.
// The weight is 1 for l = 0, 1 and decreases to zero as l -> p.
//
inline Real log_truncation_weight(std::size_t p, std::size_t l)
{
    const Real pp = static_cast<Real>(p);
    const Real ll = static_cast<Real>(l);
    return ln_gamma(pp + ll) + (1 - 2 * ll) * std::log(pp) - ln_gamma(pp - ll + 1);
}

//
// ln of the l-th term of the exact infinite series:
// a^{2l} e^{-a^2/2} Gamma((m+n+2l+1)/2, b^2/2) / (l! Gamma(n+l+1) 2^{(n-m+2l+1)/2})
//
inline Real nuttall_log_term(const NuttallParams& p, std::size_t l)
{
    const Real n = p.n.value();
    const Real ll = static_cast<Real>(l);
    return 2 * ll * std::log(p.a) - 0.5 * p.a * p.a
           + log_upper_inc_gamma(0.5 * (p.m + n + 2 * ll + 1), 0.5 * p.b * p.b) - ln_gamma(ll + 1)
           - ln_gamma(n + ll + 1) - 0.5 * (n - p.m + 2 * ll + 1) * std::numbers::ln2;
}

inline Real checked_exp(Real log_term)
{
    if (log_term > log_term_limit)
    {
        throw overflow_error("series term exceeds exp(700)");
    }
    return std::exp(log_term);
}

// Sums exp(log_term(k)) for k = 0, 1, ... until |term| < tol |sum| three
// times in a row.
template <typename LogTerm>
SeriesResult sum_adaptive(const LogTerm& log_term, Real tol, const char* what)
{
    require(tol >= 1e-14 && std::isfinite(tol), "adaptive series: tol must be >= 1e-14");
    SeriesResult out;
    int small_run = 0;
    for (std::size_t k = 0; k < max_series_terms; ++k)
    {
        const Real term = checked_exp(log_term(k));
        out.value += term;
        out.terms_used = k + 1;
        out.last_term_abs = std::fabs(term);
        small_run = (std::fabs(term) < tol * std::fabs(out.value)) ? small_run + 1 : 0;
        if (small_run >= consecutive_small_terms)
        {
            out.converged = true;
            return out;
        }
    }
    throw convergence_error(what, out.value, out.terms_used);
}

} // namespace detail

/// Q_{m,n}(a, b) from its normalized value.
inline Real unnormalize(Real normalized, FnOrder n, Real a)
{
    return normalized * std::exp(n.value() * std::log(a));
}

///
/// Truncated polynomial form with weights Gamma(P+l) P^{1-2l} / Gamma(P-l+1)
/// summed over l = 0..P. P is both the number of terms and the weight
/// parameter; terms <= 500.
///
inline SeriesResult nuttall_series_truncated(const NuttallParams& p, std::size_t terms)
{
    detail::check_nuttall(p);
    detail::check_terms(terms);
    SeriesResult out;
    for (std::size_t l = 0; l <= terms; ++l)
    {
        const Real t = detail::checked_exp(detail::log_truncation_weight(terms, l) + detail::nuttall_log_term(p, l));
        out.value += t;
        out.last_term_abs = t;
    }
    out.terms_used = terms + 1;
    out.converged = true;
    return out;
}

/// Exact infinite series, summed adaptively (tol >= 1e-14).
inline SeriesResult nuttall_series_adaptive(const NuttallParams& p, Real tol)
{
    detail::check_nuttall(p);
    return detail::sum_adaptive([&p](std::size_t l) { return detail::nuttall_log_term(p, l); }, tol,
                                "nuttall_series_adaptive: term cap reached");
}

///
/// Truncated double series for integer m, n with m + n odd, where
/// Gamma(s, x) with integer s = L + 1 is expanded as
/// (s-1)! e^{-x} sum_{k<=L} x^k / k!,  L = (m+n-1)/2 + l.
///
inline SeriesResult nuttall_integer_series(const NuttallParams& p, std::size_t terms)
{
    detail::check_nuttall(p);
    detail::check_terms(terms);
    detail::require(p.n.is_integer() && FnOrder(p.m).is_integer() && p.m >= 0,
                    "nuttall_integer_series: m and n must be nonnegative integers");
    const long long m = std::llround(p.m);
    const long long n = p.n.index();
    detail::require((m + n) % 2 == 1, "nuttall_integer_series: m + n must be odd");

    const Real half_b2 = 0.5 * p.b * p.b;
    const Real log_prefactor = 0.5 * static_cast<Real>(m - n - 1) * std::numbers::ln2 - 0.5 * (p.a * p.a + p.b * p.b);

    SeriesResult out;
    Real inner = 0; // sum_{k<=L} (b^2/2)^k / k!, extended as L grows with l
    Real power = 1;
    long long k_done = -1;
    for (std::size_t l = 0; l <= terms; ++l)
    {
        const long long big_l = (m + n - 1) / 2 + static_cast<long long>(l);
        while (k_done < big_l)
        {
            ++k_done;
            if (k_done > 0)
            {
                power *= half_b2 / static_cast<Real>(k_done);
            }
            inner += power;
        }
        const Real ll = static_cast<Real>(l);
        const Real log_outer = log_prefactor + 2 * ll * std::log(p.a) + detail::log_truncation_weight(terms, l)
                               + ln_gamma(static_cast<Real>(big_l) + 1) - ln_gamma(ll + 1)
                               - ln_gamma(static_cast<Real>(n) + ll + 1) - ll * std::numbers::ln2;
        const Real t = detail::checked_exp(log_outer) * inner;
        out.value += t;
        out.last_term_abs = t;
    }
    out.terms_used = terms + 1;
    out.converged = true;
    return out;
}

///
/// Exact finite closed form of Qn_{m,n}(a, b) for half-odd m, n with m >= n.
///
/// With n = nu + 1/2, m = mu + 1/2 the half-odd Bessel function
///   I_{nu+1/2}(z) = (2 pi z)^{-1/2} sum_{j<=nu} c_j (2z)^{-j} [(-1)^j e^z - (-1)^nu e^{-z}],
///   c_j = (nu+j)! / (j! (nu-j)!),
/// turns the integrand into polynomials x^{mu-j} times Gaussians centred at
/// +-a. Binomial expansion around the centres gives
///   A_j = sum_l C(mu-j, l) a^{mu-j-l} 2^{(l-1)/2}
///         [Gamma((l+1)/2) - sgn(b-a)^{l+1} gamma((l+1)/2, (b-a)^2/2)],
///   B_j = sum_l C(mu-j, l) (-a)^{mu-j-l} 2^{(l-1)/2} Gamma((l+1)/2, (b+a)^2/2),
/// and Qn = a^{-n} (2 pi a)^{-1/2} sum_j c_j (2a)^{-j} [(-1)^j A_j - (-1)^nu B_j].
///
/// sgn(0) = 0; it only ever multiplies gamma(., 0) = 0.
/// The two brackets cancel heavily for a << 1 and large nu.
///
inline Real nuttall_half_integer_closed(const NuttallParams& p)
{
    detail::check_nuttall(p);
    const FnOrder m_order(p.m);
    detail::require(m_order.is_half_odd() && p.n.is_half_odd() && p.m > 0,
                    "nuttall_half_integer_closed: m and n must be positive half-odd integers");
    const long long mu = m_order.index();
    const long long nu = p.n.index();
    detail::require(mu >= nu, "nuttall_half_integer_closed: requires m >= n");

    const Real a = p.a;
    const Real b = p.b;
    const Real s = detail::sign(b - a);
    const Real minus_sq = 0.5 * (b - a) * (b - a);
    const Real plus_sq = 0.5 * (b + a) * (b + a);

    Real total = 0;
    for (long long j = 0; j <= nu; ++j)
    {
        const Real c = std::exp(ln_gamma(static_cast<Real>(nu + j + 1)) - ln_gamma(static_cast<Real>(j + 1))
                                - ln_gamma(static_cast<Real>(nu - j + 1)));
        const long long deg = mu - j;
        Real sum_minus = 0;
        Real sum_plus = 0;
        for (long long l = 0; l <= deg; ++l)
        {
            const Real half = 0.5 * static_cast<Real>(l + 1);
            const Real w = detail::binomial(deg, l) * std::pow(2.0, half - 1);
            const Real apow = std::pow(a, static_cast<Real>(deg - l));
            const Real head = s == 0 ? 0.0 : detail::sign_pow(s, l + 1) * lower_inc_gamma(half, minus_sq);
            sum_minus += w * apow * (gamma_fn(half) - head);
            sum_plus += w * detail::minus_one_pow(deg - l) * apow * upper_inc_gamma(half, plus_sq);
        }
        total += c * std::pow(2 * a, -static_cast<Real>(j))
                 * (detail::minus_one_pow(j) * sum_minus - detail::minus_one_pow(nu) * sum_plus);
    }
    return total / (std::pow(a, p.n.value()) * std::sqrt(2 * std::numbers::pi * a));
}

///
/// Truncation-error bound for the P-term polynomial form: the series is
/// compared against the half-odd closed form at rounded-up orders
/// (ceil_half(m), ceil_half(n)).
///
/// bound_value        = closed(ceil_half(m), ceil_half(n)) - truncated(P)
/// dominated_quantity = adaptive(tol 1e-14) - truncated(P)
/// regime_ok          = b > 0
///
inline BoundReport nuttall_truncation_bound(const NuttallParams& p, std::size_t terms)
{
    const Real truncated = nuttall_series_truncated(p, terms).value;
    const Real exact = nuttall_series_adaptive(p, 1e-14).value;
    const NuttallParams rounded{ceil_half(p.m).value(), ceil_half(p.n.value()), p.a, p.b};
    const Real closed = nuttall_half_integer_closed(rounded);
    return make_bound_report(closed - truncated, exact - truncated, p.b > 0);
}

///
/// Gamma((m+n+1)/2) 1F1((m+n+1)/2; n+1; a^2/2) / (Gamma(n+1) 2^{(n-m+1)/2} e^{a^2/2}).
///
/// Upper bound on Qn_{m,n}(a, b) for every b >= 0 (equality at b = 0), and
/// a close approximation when a, m, n >= 5b/2.
///
inline Real nuttall_upper_bound_1f1(Real m, FnOrder n, Real a)
{
    const Real nv = n.value();
    detail::require(m > 0 && nv >= 0 && a > 0, "nuttall_upper_bound_1f1: requires m > 0, n >= 0, a > 0");
    const Real s = 0.5 * (m + nv + 1);
    const Real f = kummer_1f1(s, nv + 1, 0.5 * a * a);
    return std::exp(ln_gamma(s) + std::log(f) - ln_gamma(nv + 1) - 0.5 * (nv - m + 1) * std::numbers::ln2
                    - 0.5 * a * a);
}

/// b <= (2/3) min(a, m, n): the regime where the 1F1 bound is asserted.
inline bool nuttall_bound_regime(const NuttallParams& p)
{
    return p.b <= (2.0 / 3.0) * std::min({p.a, p.m, p.n.value()});
}

/// a, m, n >= (5/2) b: the regime where the 1F1 bound is an approximation.
inline bool nuttall_approx_regime(const NuttallParams& p)
{
    return std::min({p.a, p.m, p.n.value()}) >= 2.5 * p.b;
}

/// 1F1 bound against the adaptive series value, with the bound regime.
inline BoundReport nuttall_bound_1f1_report(const NuttallParams& p)
{
    const Real bound = nuttall_upper_bound_1f1(p.m, p.n, p.a);
    const Real exact = nuttall_series_adaptive(p, 1e-14).value;
    return make_bound_report(bound, exact, nuttall_bound_regime(p));
}

///
/// |Q_{m,n} - b^{m-1} I_n(ab) e^{-(a^2+b^2)/2} - a Q_{m-1,n+1} - (m+n-1) Q_{m-2,n}|
/// for integer m >= 2, n >= 0, using unnormalized adaptive-series values.
///
inline Real nuttall_recursion_residual(const NuttallParams& p)
{
    detail::check_nuttall(p);
    detail::require(FnOrder(p.m).is_integer() && p.n.is_integer() && p.m >= 2,
                    "nuttall_recursion_residual: requires integer m >= 2 and integer n >= 0");
    const Real m = std::round(p.m);
    const Real n = std::round(p.n.value());
    const auto q = [&p](Real mm, Real nn) {
        const FnOrder order(nn);
        return unnormalize(nuttall_series_adaptive({mm, order, p.a, p.b}, 1e-14).value, order, p.a);
    };
    const Real boundary = std::pow(p.b, m - 1) * std::exp(-0.5 * (p.a - p.b) * (p.a - p.b))
                          * bessel_i_scaled(n, p.a * p.b);
    return std::fabs(q(m, n) - boundary - p.a * q(m - 1, n + 1) - (m + n - 1) * q(m - 2, n));
}

///
/// Generalized Marcum Q_m(a, b) = Qn_{m,m-1}(a, b) by the adaptive series.
/// The value is returned raw (not clamped to [0, 1]).
///
inline Real marcum_q(Real m, Real a, Real b, Real tol)
{
    detail::require(m >= 1, "marcum_q: m must be >= 1");
    return nuttall_series_adaptive({m, FnOrder(m - 1), a, b}, tol).value;
}

} // namespace qfn

#endif // QFN_NUTTALL_HPP

///
/// \file toronto.hpp
///
/// Incomplete Toronto function
///
///   T_B(m, n, r) = 2 r^{n-m+1} e^{-r^2} int_0^B t^{m-n} e^{-t^2} I_n(2rt) dt
///
/// by series, half-odd closed form, truncation bound and 1F1 bound.
///
#ifndef QFN_TORONTO_HPP
#define QFN_TORONTO_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>

#include "qfn/nuttall.hpp"
#include "qfn/special.hpp"
#include "qfn/types.hpp"

namespace qfn
{

struct TorontoParams
{
    Real m;
    FnOrder n;
    Real r;
    Real upper_limit; // B
};

namespace detail
{

inline void check_toronto(const TorontoParams& p)
{
    require(std::isfinite(p.m), "toronto: m must be finite");
    require(p.n.value() >= 0 && std::isfinite(p.n.value()), "toronto: n must be nonnegative");
    require(p.r > 0 && std::isfinite(p.r), "toronto: r must be positive");
    require(p.upper_limit > 0 && std::isfinite(p.upper_limit), "toronto: B must be positive");
    require(p.m - p.n.value() > -1, "toronto: requires m - n > -1");
}

// r^{2(n+k)-m+1} gamma((m+1)/2 + k, B^2) / (k! Gamma(n+k+1) e^{r^2})
inline Real toronto_log_term(const TorontoParams& p, std::size_t k)
{
    const Real n = p.n.value();
    const Real kk = static_cast<Real>(k);
    return (2 * (n + kk) - p.m + 1) * std::log(p.r)
           + log_lower_inc_gamma(0.5 * (p.m + 1) + kk, p.upper_limit * p.upper_limit) - ln_gamma(kk + 1)
           - ln_gamma(n + kk + 1) - p.r * p.r;
}

} // namespace detail

/// Polynomial form weighted by Gamma(P+k) P^{1-2k} / Gamma(P-k+1), k = 0..P.
inline SeriesResult toronto_series_truncated(const TorontoParams& p, std::size_t terms)
{
    detail::check_toronto(p);
    detail::check_terms(terms);
    SeriesResult out;
    for (std::size_t k = 0; k <= terms; ++k)
    {
        const Real t = detail::checked_exp(detail::log_truncation_weight(terms, k) + detail::toronto_log_term(p, k));
        out.value += t;
        out.last_term_abs = t;
    }
    out.terms_used = terms + 1;
    out.converged = true;
    return out;
}

/// Exact infinite series with the same three-small-terms stop rule as the Nuttall series.
inline SeriesResult toronto_series_adaptive(const TorontoParams& p, Real tol)
{
    detail::check_toronto(p);
    return detail::sum_adaptive([&p](std::size_t k) { return detail::toronto_log_term(p, k); }, tol,
                                "toronto_series_adaptive: term cap reached");
}

///
/// Exact finite closed form of T_B(m, n, r) for integer m and half-odd n
/// with m >= 2n.
///
/// Writing n = nu + 1/2 and using the half-odd Bessel form, the integrand
/// becomes t^{m-nu-1-j} e^{-(t -+ r)^2}; expanding around t = +-r gives,
/// with q = m - nu - 1 - j (q >= 0 is exactly m >= 2n),
///   J-_j = 1/2 sum_l C(q,l) r^{q-l} [sgn(B-r)^{l+1} gamma((l+1)/2, (B-r)^2) + (-1)^l gamma((l+1)/2, r^2)]
///   J+_j = 1/2 sum_l C(q,l) (-r)^{q-l} [gamma((l+1)/2, (B+r)^2) - gamma((l+1)/2, r^2)]
///   T_B  = 2 r^{n-m+1} (4 pi r)^{-1/2} sum_j c_j (4r)^{-j} [(-1)^j J-_j - (-1)^nu J+_j].
///
inline Real toronto_closed_form_half(Real m, FnOrder n, Real r, Real upper_limit)
{
    const FnOrder m_order(m);
    detail::require(m_order.is_integer() && m >= 1, "toronto_closed_form_half: m must be an integer >= 1");
    detail::require(n.is_half_odd() && n.value() > 0, "toronto_closed_form_half: n must be a positive half-odd integer");
    detail::require(r > 0 && upper_limit > 0, "toronto_closed_form_half: r and B must be positive");
    const long long mi = m_order.index();
    const long long nu = n.index();
    detail::require(mi >= 2 * nu + 1, "toronto_closed_form_half: requires m >= 2n");

    const Real s = detail::sign(upper_limit - r);
    const Real minus_sq = (upper_limit - r) * (upper_limit - r);
    const Real plus_sq = (upper_limit + r) * (upper_limit + r);
    const Real r_sq = r * r;

    Real total = 0;
    for (long long j = 0; j <= nu; ++j)
    {
        const Real c = std::exp(ln_gamma(static_cast<Real>(nu + j + 1)) - ln_gamma(static_cast<Real>(j + 1))
                                - ln_gamma(static_cast<Real>(nu - j + 1)));
        const long long q = mi - nu - 1 - j;
        Real j_minus = 0;
        Real j_plus = 0;
        for (long long l = 0; l <= q; ++l)
        {
            const Real half = 0.5 * static_cast<Real>(l + 1);
            const Real w = detail::binomial(q, l) * std::pow(r, static_cast<Real>(q - l));
            const Real g_r = lower_inc_gamma(half, r_sq);
            const Real g_minus = s == 0 ? 0.0 : detail::sign_pow(s, l + 1) * lower_inc_gamma(half, minus_sq);
            j_minus += w * (g_minus + detail::minus_one_pow(l) * g_r);
            j_plus += w * detail::minus_one_pow(q - l) * (lower_inc_gamma(half, plus_sq) - g_r);
        }
        total += c * std::pow(4 * r, -static_cast<Real>(j))
                 * (detail::minus_one_pow(j) * 0.5 * j_minus - detail::minus_one_pow(nu) * 0.5 * j_plus);
    }
    return 2 * std::pow(r, n.value() - m + 1) / std::sqrt(4 * std::numbers::pi * r) * total;
}

///
/// Truncation-error bound: closed form at (ceil(m), floor_half(n)) minus
/// the P-term polynomial form.
///
/// dominated_quantity is the adaptive (tol 1e-14) residual; regime_ok = m > n.
/// Throws domain_error when the rounded orders admit no closed form
/// (ceil(m) < 2 floor_half(n), or floor_half(n) < 1/2).
///
inline BoundReport toronto_truncation_bound(const TorontoParams& p, std::size_t terms)
{
    const Real truncated = toronto_series_truncated(p, terms).value;
    const Real exact = toronto_series_adaptive(p, 1e-14).value;
    const Real closed = toronto_closed_form_half(std::ceil(p.m), floor_half(p.n.value()), p.r, p.upper_limit);
    return make_bound_report(closed - truncated, exact - truncated, p.m > p.n.value());
}

///
/// Gamma((m+1)/2) 1F1((m+1)/2; n+1; r^2) / (r^{m-2n-1} Gamma(n+1) e^{r^2}),
/// the complete Toronto function T(m, n, r). Independent of B.
///
inline Real toronto_upper_bound_1f1(Real m, FnOrder n, Real r)
{
    const Real nv = n.value();
    detail::require(m > -1 && nv >= 0 && r > 0, "toronto_upper_bound_1f1: requires m > -1, n >= 0, r > 0");
    const Real s = 0.5 * (m + 1);
    const Real f = kummer_1f1(s, nv + 1, r * r);
    return std::exp(ln_gamma(s) + std::log(f) - (m - 2 * nv - 1) * std::log(r) - ln_gamma(nv + 1) - r * r);
}

/// m, n, r <= B/2.
inline bool toronto_bound_regime(const TorontoParams& p)
{
    return std::max({p.m, p.n.value(), p.r}) <= 0.5 * p.upper_limit;
}

/// m, n, r <= 2B.
inline bool toronto_approx_regime(const TorontoParams& p)
{
    return std::max({p.m, p.n.value(), p.r}) <= 2 * p.upper_limit;
}

inline BoundReport toronto_bound_1f1_report(const TorontoParams& p)
{
    const Real bound = toronto_upper_bound_1f1(p.m, p.n, p.r);
    const Real exact = toronto_series_adaptive(p, 1e-14).value;
    return make_bound_report(bound, exact, toronto_bound_regime(p));
}

///
/// |T_B(m, (m-1)/2, r) + Q_{(m+1)/2}(r sqrt2, B sqrt2) - 1|, both sides by
/// adaptive series. Requires m >= 1.
///
inline Real toronto_marcum_residual(Real m, Real r, Real upper_limit)
{
    detail::require(m >= 1, "toronto_marcum_residual: requires m >= 1");
    const Real t = toronto_series_adaptive({m, FnOrder(0.5 * (m - 1)), r, upper_limit}, 1e-14).value;
    const Real q = marcum_q(0.5 * (m + 1), r * std::numbers::sqrt2, upper_limit * std::numbers::sqrt2, 1e-14);
    return std::fabs(t + q - 1);
}

} // namespace qfn

#endif // QFN_TORONTO_HPP

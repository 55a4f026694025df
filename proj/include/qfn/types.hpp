///
/// \file types.hpp
///
/// Value types and error classes shared by every qfn module.
///
#ifndef QFN_TYPES_HPP
#define QFN_TYPES_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace qfn
{

using Real = double;

enum class OrderClass
{
    integer,
    half_odd,
    general
};

///
/// A real function order (m or n) together with its classification.
///
/// Integer and half-odd-integer orders are recognised within an absolute
/// tolerance of 1e-9; exact closed forms exist only for those classes.
///
class FnOrder
{
public:
    static constexpr Real classify_tol = 1e-9;

    constexpr explicit FnOrder(Real v) noexcept : value_(v), class_(classify(v)) {}

    constexpr Real value() const noexcept { return value_; }
    constexpr OrderClass classification() const noexcept { return class_; }
    constexpr bool is_integer() const noexcept { return class_ == OrderClass::integer; }
    constexpr bool is_half_odd() const noexcept { return class_ == OrderClass::half_odd; }

    // Nearest integer for integer orders, nearest k with value = k + 1/2 for
    // half-odd orders.
    long long index() const noexcept
    {
        return is_half_odd() ? std::llround(value_ - 0.5) : std::llround(value_);
    }

    friend constexpr bool operator==(const FnOrder&, const FnOrder&) = default;

private:
    static constexpr Real abs_(Real x) noexcept { return x < 0 ? -x : x; }

    static constexpr bool near_integer(Real x) noexcept
    {
        // constexpr-friendly rounding; orders live far inside long long range
        if (!(abs_(x) < 1e15))
        {
            return false;
        }
        const auto k = static_cast<long long>(x < 0 ? x - 0.5 : x + 0.5);
        return abs_(x - static_cast<Real>(k)) <= classify_tol;
    }

    static constexpr OrderClass classify(Real v) noexcept
    {
        if (near_integer(v))
        {
            return OrderClass::integer;
        }
        if (near_integer(v - 0.5))
        {
            return OrderClass::half_odd;
        }
        return OrderClass::general;
    }

    Real value_;
    OrderClass class_;
};

/// Value of a truncated or adaptive series plus its convergence diagnostics.
struct SeriesResult
{
    Real value = 0;
    std::size_t terms_used = 0;
    Real last_term_abs = 0;
    bool converged = false;
};

///
/// A bound paired with the quantity it is claimed to dominate.
///
/// `regime_ok` records whether the parameters lie in the regime where the
/// bound is asserted; `slack` is `bound_value - dominated_quantity`.
///
struct BoundReport
{
    Real bound_value = 0;
    Real dominated_quantity = 0;
    bool regime_ok = false;
    Real slack = 0;
};

inline BoundReport make_bound_report(Real bound, Real dominated, bool regime_ok)
{
    return BoundReport{bound, dominated, regime_ok, bound - dominated};
}

//==============================================================================
// Errors
//==============================================================================

/// Argument outside the domain of an operation (or a violated precondition).
class domain_error : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

/// A single series term (in log domain) left the representable range.
class overflow_error : public std::overflow_error
{
public:
    using std::overflow_error::overflow_error;
};

/// An adaptive series hit its term cap before meeting its stop rule.
class convergence_error : public std::runtime_error
{
public:
    convergence_error(const std::string& what, Real partial, std::size_t terms)
        : std::runtime_error(what), partial_value_(partial), terms_(terms)
    {
    }

    Real partial_value() const noexcept { return partial_value_; }
    std::size_t terms() const noexcept { return terms_; }

private:
    Real partial_value_;
    std::size_t terms_;
};

/// Quadrature could not certify the requested absolute tolerance.
class tolerance_error : public std::runtime_error
{
public:
    tolerance_error(const std::string& what, Real best, Real achieved)
        : std::runtime_error(what), best_value_(best), achieved_error_(achieved)
    {
    }

    Real best_value() const noexcept { return best_value_; }
    Real achieved_error() const noexcept { return achieved_error_; }

private:
    Real best_value_;
    Real achieved_error_;
};

namespace detail
{
inline void require(bool cond, const char* what)
{
    if (!cond)
    {
        throw domain_error(what);
    }
}
} // namespace detail

} // namespace qfn

#endif // QFN_TYPES_HPP

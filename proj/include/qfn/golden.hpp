///
/// \file golden.hpp
///
/// Reference data produced by the quadrature oracle at tol = 1e-13.
///
/// One record per line:  kind m n a_or_r b_or_B tol value err_est
/// with every number printed to 17 significant digits. Lines starting with
/// '#' are comments. For `nuttall` the value is the unnormalized Q_{m,n};
/// for `marcum` the n column holds m - 1.
///
#ifndef QFN_GOLDEN_HPP
#define QFN_GOLDEN_HPP

#include <charconv>
#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qfn/quadrature.hpp"
#include "qfn/types.hpp"

namespace qfn
{

struct GoldenEntry
{
    std::string kind; // nuttall | marcum | toronto
    Real m = 0;
    Real n = 0;
    Real x = 0; // a or r
    Real y = 0; // b or B
    Real tol = 0;
    Real value = 0;
    Real err_est = 0;
};

constexpr Real golden_tol = 1e-13;

inline std::string format17(Real v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Shortest text that reads back to the same double (used for metadata).
inline std::string format_short(Real v)
{
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// The fixed 30-point parameter set (value/err_est left empty).
inline std::vector<GoldenEntry> golden_points()
{
    struct P
    {
        const char* kind;
        Real m, n, x, y;
    };
    static constexpr P points[] = {
        {"nuttall", 2, 1, 1, 2},       {"nuttall", 3, 0.5, 2, 1},   {"nuttall", 1.5, 0.5, 1, 1},
        {"nuttall", 2.5, 1.5, 2, 0.5}, {"nuttall", 1, 0, 0.5, 0.5}, {"nuttall", 1, 0, 3, 3},
        {"nuttall", 2, 1, 3, 1},       {"nuttall", 3, 0, 2, 1},     {"nuttall", 0.5, 1.5, 1, 1},
        {"nuttall", 4, 2, 1.5, 2.5},   {"nuttall", 1.2, 0.7, 1.5, 1}, {"nuttall", 3, 1, 3, 1},
        {"marcum", 1, 0, 1, 1},        {"marcum", 2, 1, 1, 1},      {"marcum", 1.5, 0.5, 2, 3},
        {"marcum", 3, 2, 0.5, 2},      {"marcum", 1, 0, 3, 2},      {"marcum", 2.5, 1.5, 1.5, 4},
        {"toronto", 2, 1, 1, 3},       {"toronto", 3, 1.5, 0.8, 2}, {"toronto", 2, 0.5, 1, 2},
        {"toronto", 3, 1.5, 0.5, 1},   {"toronto", 1, 0, 1, 1},     {"toronto", 2, 1, 2, 1},
        {"toronto", 4, 1, 0.5, 3},     {"toronto", 2.3, 0.8, 1.2, 2}, {"toronto", 3, 0.5, 2, 1},
        {"toronto", 1, 0.5, 0.5, 2},   {"toronto", 2, 1, 0.8, 8},   {"toronto", 5, 2.5, 0.7, 3},
    };
    std::vector<GoldenEntry> out;
    for (const auto& p : points)
    {
        out.push_back(GoldenEntry{p.kind, p.m, p.n, p.x, p.y, golden_tol, 0, 0});
    }
    return out;
}

/// Evaluates one golden entry with the requested quadrature scheme.
inline OracleValue evaluate_golden(const GoldenEntry& e, QuadScheme scheme)
{
    if (e.kind == "nuttall")
    {
        return oracle_nuttall(e.m, FnOrder(e.n), e.x, e.y, e.tol, scheme);
    }
    if (e.kind == "marcum")
    {
        return oracle_marcum(e.m, e.x, e.y, e.tol, scheme);
    }
    if (e.kind == "toronto")
    {
        return oracle_toronto(e.m, FnOrder(e.n), e.x, e.y, e.tol, scheme);
    }
    throw domain_error("golden: unknown kind '" + e.kind + "'");
}

inline std::string format_golden_line(const GoldenEntry& e)
{
    return e.kind + " " + format17(e.m) + " " + format17(e.n) + " " + format17(e.x) + " " + format17(e.y) + " "
           + format17(e.tol) + " " + format17(e.value) + " " + format17(e.err_est);
}

/// Full golden file text, produced with the Gauss-Kronrod scheme.
inline std::string generate_golden()
{
    std::string text = "# kind m n a_or_r b_or_B tol value err_est\n";
    for (auto e : golden_points())
    {
        const OracleValue v = evaluate_golden(e, QuadScheme::kronrod_global);
        e.value = v.value;
        e.err_est = v.abs_err_est;
        text += format_golden_line(e) + "\n";
    }
    return text;
}

inline std::vector<GoldenEntry> parse_golden(std::string_view text)
{
    std::vector<GoldenEntry> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line))
    {
        if (line.empty() || line[0] == '#')
        {
            continue;
        }
        std::istringstream fields(line);
        GoldenEntry e;
        if (!(fields >> e.kind >> e.m >> e.n >> e.x >> e.y >> e.tol >> e.value >> e.err_est))
        {
            throw domain_error("golden: malformed line: " + line);
        }
        out.push_back(e);
    }
    return out;
}

} // namespace qfn

#endif // QFN_GOLDEN_HPP

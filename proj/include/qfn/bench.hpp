///
/// \file bench.hpp
///
/// Grid evaluation, oracle comparison, bound sweeps and figure data behind
/// the qfn command-line tool. Results are collected into a `Table` that
/// renders either as CSV ('#' metadata lines, header row, %.17g numbers) or
/// as JSON lines with the same field names.
///
#ifndef QFN_BENCH_HPP
#define QFN_BENCH_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qfn/golden.hpp"
#include "qfn/nuttall.hpp"
#include "qfn/quadrature.hpp"
#include "qfn/toronto.hpp"
#include "qfn/types.hpp"

namespace qfn::bench
{

enum class FunctionId
{
    nuttall,      // Q_{m,n}(a, b)
    nuttall_norm, // Q_{m,n}(a, b) / a^n
    marcum,       // Q_m(a, b), n is forced to m - 1
    toronto       // T_B(m, n, r)
};

inline std::string to_string(FunctionId f)
{
    switch (f)
    {
    case FunctionId::nuttall: return "nuttall";
    case FunctionId::nuttall_norm: return "nuttall_norm";
    case FunctionId::marcum: return "marcum";
    case FunctionId::toronto: return "toronto";
    }
    return "?";
}

inline FunctionId parse_function_id(const std::string& s)
{
    for (FunctionId f : {FunctionId::nuttall, FunctionId::nuttall_norm, FunctionId::marcum, FunctionId::toronto})
    {
        if (to_string(f) == s)
        {
            return f;
        }
    }
    throw domain_error("unknown function '" + s + "'");
}

/// (m, n, x, y) with x = a or r and y = b or B.
struct PointParams
{
    Real m = 0;
    Real n = 0;
    Real x = 0;
    Real y = 0;
};

inline PointParams canonical(FunctionId f, PointParams p)
{
    if (f == FunctionId::marcum)
    {
        p.n = p.m - 1;
    }
    return p;
}

// ---------------------------------------------------------------- tables

using Cell = std::variant<std::monostate, Real, long long, bool, std::string>;

struct Table
{
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, std::string>> summary;
};

inline Cell opt_cell(const std::optional<Real>& v)
{
    return v ? Cell{*v} : Cell{};
}

inline std::string csv_cell(const Cell& c)
{
    struct Visitor
    {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(Real v) const { return format17(v); }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
        std::string operator()(const std::string& s) const
        {
            if (s.find_first_of(",\"\n") == std::string::npos)
            {
                return s;
            }
            std::string q = "\"";
            for (char ch : s)
            {
                q += ch;
                if (ch == '"')
                {
                    q += '"';
                }
            }
            return q + "\"";
        }
    };
    return std::visit(Visitor{}, c);
}

inline nlohmann::ordered_json json_cell(const Cell& c)
{
    struct Visitor
    {
        nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
        nlohmann::ordered_json operator()(Real v) const
        {
            return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
        }
        nlohmann::ordered_json operator()(long long v) const { return v; }
        nlohmann::ordered_json operator()(bool v) const { return v; }
        nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, c);
}

inline std::string to_csv(const Table& t)
{
    std::string out;
    for (const auto& [k, v] : t.meta)
    {
        out += "# " + k + "=" + v + "\n";
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i)
    {
        out += (i ? "," : "") + t.columns[i];
    }
    out += "\n";
    for (const auto& row : t.rows)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
        {
            out += (i ? "," : "") + csv_cell(row[i]);
        }
        out += "\n";
    }
    for (const auto& [k, v] : t.summary)
    {
        out += "# " + k + "=" + v + "\n";
    }
    return out;
}

/// One JSON object per line: {"meta":...}, then the rows, then {"summary":...}.
inline std::string to_json_lines(const Table& t)
{
    const auto pairs = [](const std::vector<std::pair<std::string, std::string>>& kv) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (const auto& [k, v] : kv)
        {
            obj[k] = v;
        }
        return obj;
    };
    std::string out = nlohmann::ordered_json{{"meta", pairs(t.meta)}}.dump() + "\n";
    for (const auto& row : t.rows)
    {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i)
        {
            obj[t.columns[i]] = json_cell(row[i]);
        }
        out += obj.dump() + "\n";
    }
    if (!t.summary.empty())
    {
        out += nlohmann::ordered_json{{"summary", pairs(t.summary)}}.dump() + "\n";
    }
    return out;
}

inline std::string render(const Table& t, bool json)
{
    return json ? to_json_lines(t) : to_csv(t);
}

// ----------------------------------------------------------------- grids

constexpr std::size_t max_grid_points = 10000;

struct GridSpec
{
    std::vector<std::pair<Real, Real>> mn;
    std::vector<Real> xs;
    std::vector<Real> ys;
};

/// Parses "m:n,m:n,..."; a bare "m" entry means n = 0.
inline std::vector<std::pair<Real, Real>> parse_mn_pairs(const std::string& text)
{
    std::vector<std::pair<Real, Real>> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
    {
        if (item.empty())
        {
            continue;
        }
        const auto colon = item.find(':');
        try
        {
            const Real m = std::stod(item.substr(0, colon));
            const Real n = colon == std::string::npos ? 0.0 : std::stod(item.substr(colon + 1));
            out.emplace_back(m, n);
        }
        catch (const std::logic_error&)
        {
            throw domain_error("malformed m:n pair '" + item + "'");
        }
    }
    return out;
}

/// Points in (m, n) -> x -> y nesting order.
inline std::vector<PointParams> expand(const GridSpec& g)
{
    const std::size_t size = g.mn.size() * g.xs.size() * g.ys.size();
    detail::require(size > 0, "empty grid");
    detail::require(size <= max_grid_points, "grid exceeds 10000 points");
    std::vector<PointParams> out;
    out.reserve(size);
    for (const auto& [m, n] : g.mn)
    {
        for (Real x : g.xs)
        {
            for (Real y : g.ys)
            {
                out.push_back({m, n, x, y});
            }
        }
    }
    return out;
}

///
/// Evaluates f(0..count-1) on up to `jobs` threads. Results come back in
/// index order; the lowest-index exception, if any, is rethrown.
///
template <typename T, typename F>
std::vector<T> parallel_map(std::size_t count, unsigned jobs, const F& f)
{
    std::vector<std::optional<T>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
        {
            try
            {
                slots[i] = f(i);
            }
            catch (...)
            {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
    {
        std::vector<std::jthread> pool;
        for (std::size_t j = 1; j < threads; ++j)
        {
            pool.emplace_back(worker);
        }
        worker();
    }
    std::vector<T> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
    {
        if (errors[i])
        {
            std::rethrow_exception(errors[i]);
        }
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

// ------------------------------------------------------------ evaluation

enum class Method
{
    truncated,
    adaptive,
    closed_half,
    bound_1f1
};

inline Method parse_method(const std::string& s)
{
    if (s == "truncated") return Method::truncated;
    if (s == "adaptive") return Method::adaptive;
    if (s == "closed_half") return Method::closed_half;
    if (s == "bound_1f1") return Method::bound_1f1;
    throw domain_error("unknown method '" + s + "'");
}

/// Rejects parameters outside the quadrature oracle's box.
inline void check_box(FunctionId f, const PointParams& p)
{
    const PointParams c = canonical(f, p);
    if (f == FunctionId::toronto)
    {
        detail::require(c.m >= 0 && c.m <= 10 && c.n >= 0 && c.n <= 10, "m, n outside [0, 10]");
        detail::require(c.x > 0 && c.x <= 6, "r outside (0, 6]");
        detail::require(c.y > 0 && c.y <= 8, "B outside (0, 8]");
        return;
    }
    if (f == FunctionId::marcum)
    {
        detail::require(c.m >= 1, "marcum: m must be >= 1");
    }
    detail::check_nuttall_box(c.m, c.n, c.x, c.y);
}

struct EvalResult
{
    Real value = 0;
    std::size_t terms_used = 0;
    Real last_term_abs = 0;
    bool converged = true;
};

/// Single evaluation; `terms` feeds the truncated form, `tol` the adaptive one.
inline EvalResult evaluate(FunctionId f, const PointParams& raw, Method method, std::size_t terms, Real tol)
{
    const PointParams p = canonical(f, raw);
    EvalResult out;
    const auto take = [&out](const SeriesResult& s) {
        out.value = s.value;
        out.terms_used = s.terms_used;
        out.last_term_abs = s.last_term_abs;
        out.converged = s.converged;
    };
    if (f == FunctionId::toronto)
    {
        const TorontoParams tp{p.m, FnOrder(p.n), p.x, p.y};
        switch (method)
        {
        case Method::truncated: take(toronto_series_truncated(tp, terms)); break;
        case Method::adaptive: take(toronto_series_adaptive(tp, tol)); break;
        case Method::closed_half: out.value = toronto_closed_form_half(p.m, tp.n, p.x, p.y); break;
        case Method::bound_1f1: out.value = toronto_upper_bound_1f1(p.m, tp.n, p.x); break;
        }
        return out;
    }
    const NuttallParams np{p.m, FnOrder(p.n), p.x, p.y};
    switch (method)
    {
    case Method::truncated: take(nuttall_series_truncated(np, terms)); break;
    case Method::adaptive: take(nuttall_series_adaptive(np, tol)); break;
    case Method::closed_half: out.value = nuttall_half_integer_closed(np); break;
    case Method::bound_1f1: out.value = nuttall_upper_bound_1f1(p.m, np.n, p.x); break;
    }
    if (f == FunctionId::nuttall)
    {
        out.value = unnormalize(out.value, np.n, p.x);
        out.last_term_abs = unnormalize(out.last_term_abs, np.n, p.x);
    }
    return out;
}

/// Oracle value in the same normalization as `evaluate`.
inline OracleValue oracle_value(FunctionId f, const PointParams& raw, Real tol, QuadScheme scheme)
{
    const PointParams p = canonical(f, raw);
    switch (f)
    {
    case FunctionId::nuttall: return oracle_nuttall(p.m, FnOrder(p.n), p.x, p.y, tol, scheme);
    case FunctionId::nuttall_norm:
    {
        OracleValue v = oracle_nuttall(p.m, FnOrder(p.n), p.x, p.y, tol, scheme);
        const Real scale = std::pow(p.x, p.n);
        v.value /= scale;
        v.abs_err_est /= scale;
        v.tail_bound /= scale;
        return v;
    }
    case FunctionId::marcum: return oracle_marcum(p.m, p.x, p.y, tol, scheme);
    case FunctionId::toronto: return oracle_toronto(p.m, FnOrder(p.n), p.x, p.y, tol, scheme);
    }
    throw domain_error("unknown function");
}

inline std::string diagnostic_for(Real value)
{
    if (!std::isfinite(value))
    {
        return "non_finite";
    }
    return value < 0 ? "negative_value" : "";
}

inline Real relative_error(Real value, Real reference)
{
    const Real diff = std::fabs(value - reference);
    return reference != 0 ? diff / std::fabs(reference) : diff;
}

// ------------------------------------------------------------- compare

struct ComparisonRow
{
    FunctionId function_id = FunctionId::nuttall;
    PointParams params;
    Real series_value = 0;
    Real oracle_value = 0;
    Real rel_error = 0;
    std::optional<Real> bound_1f1;
    std::optional<Real> trunc_bound;
    std::size_t terms = 0;
};

inline ComparisonRow compare_point(FunctionId f, const PointParams& raw, std::size_t terms, Real oracle_tol)
{
    const PointParams p = canonical(f, raw);
    ComparisonRow row;
    row.function_id = f;
    row.params = p;
    row.terms = terms;
    row.series_value = evaluate(f, p, Method::truncated, terms, 1e-14).value;
    row.oracle_value = oracle_value(f, p, oracle_tol, QuadScheme::kronrod_global).value;
    row.rel_error = relative_error(row.series_value, row.oracle_value);
    const FnOrder n(p.n);
    try
    {
        row.bound_1f1 = evaluate(f, p, Method::bound_1f1, terms, 1e-14).value;
    }
    catch (const domain_error&)
    {
    }
    try
    {
        if (f == FunctionId::toronto)
        {
            row.trunc_bound = toronto_truncation_bound({p.m, n, p.x, p.y}, terms).bound_value;
        }
        else
        {
            const Real b = nuttall_truncation_bound({p.m, n, p.x, p.y}, terms).bound_value;
            row.trunc_bound = f == FunctionId::nuttall ? unnormalize(b, n, p.x) : b;
        }
    }
    catch (const domain_error&)
    {
    }
    return row;
}

inline std::vector<std::pair<std::string, std::string>> point_meta(FunctionId f)
{
    const bool toronto = f == FunctionId::toronto;
    return {{"function", to_string(f)}, {"x_name", toronto ? "r" : "a"}, {"y_name", toronto ? "B" : "b"}};
}

/// Comparison table; assert_rel_err <= 0 disables the assertion.
inline Table compare_table(FunctionId f, const GridSpec& grid, std::size_t terms, Real oracle_tol, unsigned jobs,
                           Real assert_rel_err, std::size_t& violations)
{
    const auto points = expand(grid);
    const auto rows = parallel_map<ComparisonRow>(points.size(), jobs, [&](std::size_t i) {
        check_box(f, points[i]);
        return compare_point(f, points[i], terms, oracle_tol);
    });

    Table t;
    t.meta = {{"command", "compare"}};
    for (auto& kv : point_meta(f))
    {
        t.meta.push_back(kv);
    }
    t.meta.push_back({"terms", std::to_string(terms)});
    t.meta.push_back({"oracle_tol", format_short(oracle_tol)});
    t.meta.push_back({"assert_rel_err", assert_rel_err > 0 ? format_short(assert_rel_err) : "none"});
    t.meta.push_back({"points", std::to_string(points.size())});
    t.columns = {"function", "m", "n", "x", "y", "terms", "series_value", "oracle_value", "rel_error",
                 "bound_1f1", "trunc_bound", "diagnostic"};
    Real max_rel = 0;
    violations = 0;
    for (const auto& r : rows)
    {
        max_rel = std::max(max_rel, r.rel_error);
        if (assert_rel_err > 0 && !(r.rel_error < assert_rel_err))
        {
            ++violations;
        }
        t.rows.push_back({to_string(r.function_id), r.params.m, r.params.n, r.params.x, r.params.y,
                          static_cast<long long>(r.terms), r.series_value, r.oracle_value, r.rel_error,
                          opt_cell(r.bound_1f1), opt_cell(r.trunc_bound), diagnostic_for(r.series_value)});
    }
    t.summary = {{"max_rel_error", format17(max_rel)}, {"violations", std::to_string(violations)}};
    return t;
}

// -------------------------------------------------------------- bounds

constexpr Real bounds_slack_floor = -1e-8;

struct BoundRow
{
    PointParams params;
    std::string kind; // "truncation" or "1f1"
    std::size_t terms = 0;
    bool available = false;
    BoundReport report;
    std::string note;
};

///
/// One truncation row per P in `terms_list`, then one 1F1 row. Values are
/// in normalized form for the Nuttall family. Rows whose closed form does
/// not exist are returned with available = false.
///
inline std::vector<BoundRow> bounds_for_point(FunctionId f, const PointParams& raw,
                                              const std::vector<std::size_t>& terms_list)
{
    const PointParams p = canonical(f, raw);
    const FnOrder n(p.n);
    std::vector<BoundRow> out;
    for (std::size_t terms : terms_list)
    {
        BoundRow row{p, "truncation", terms, false, {}, ""};
        try
        {
            row.report = f == FunctionId::toronto ? toronto_truncation_bound({p.m, n, p.x, p.y}, terms)
                                                  : nuttall_truncation_bound({p.m, n, p.x, p.y}, terms);
            row.available = true;
        }
        catch (const domain_error& e)
        {
            row.note = e.what();
        }
        out.push_back(row);
    }
    BoundRow row{p, "1f1", 0, false, {}, ""};
    try
    {
        row.report = f == FunctionId::toronto ? toronto_bound_1f1_report({p.m, n, p.x, p.y})
                                              : nuttall_bound_1f1_report({p.m, n, p.x, p.y});
        row.available = true;
    }
    catch (const domain_error& e)
    {
        row.note = e.what();
    }
    out.push_back(row);
    return out;
}

inline bool bound_violation(const BoundRow& r)
{
    return r.available && r.report.regime_ok && r.report.slack < bounds_slack_floor;
}

inline Table bounds_table(FunctionId f, const GridSpec& grid, const std::vector<std::size_t>& terms_list,
                          unsigned jobs, std::size_t& violations)
{
    detail::require(!terms_list.empty(), "empty terms list");
    for (std::size_t p : terms_list)
    {
        detail::check_terms(p);
    }
    const auto points = expand(grid);
    const auto per_point = parallel_map<std::vector<BoundRow>>(points.size(), jobs, [&](std::size_t i) {
        check_box(f, points[i]);
        return bounds_for_point(f, points[i], terms_list);
    });

    Table t;
    t.meta = {{"command", "bounds"}};
    for (auto& kv : point_meta(f))
    {
        t.meta.push_back(kv);
    }
    std::string terms_text;
    for (std::size_t p : terms_list)
    {
        terms_text += (terms_text.empty() ? "" : " ") + std::to_string(p);
    }
    t.meta.push_back({"terms", terms_text});
    t.meta.push_back({"normalization", f == FunctionId::toronto ? "none" : "divided by a^n"});
    t.meta.push_back({"slack_floor", format_short(bounds_slack_floor)});
    t.columns = {"m", "n", "x", "y", "kind", "terms", "bound_value", "dominated_quantity", "slack", "regime_ok",
                 "available", "note"};
    violations = 0;
    std::size_t unavailable = 0;
    for (const auto& rows : per_point)
    {
        for (const auto& r : rows)
        {
            violations += bound_violation(r) ? 1 : 0;
            unavailable += r.available ? 0 : 1;
            const Cell terms = r.kind == "truncation" ? Cell{static_cast<long long>(r.terms)} : Cell{};
            if (r.available)
            {
                t.rows.push_back({r.params.m, r.params.n, r.params.x, r.params.y, r.kind, terms,
                                  r.report.bound_value, r.report.dominated_quantity, r.report.slack,
                                  r.report.regime_ok, true, r.note});
            }
            else
            {
                t.rows.push_back({r.params.m, r.params.n, r.params.x, r.params.y, r.kind, terms, Cell{}, Cell{},
                                  Cell{}, Cell{}, false, r.note});
            }
        }
    }
    t.summary = {{"violations", std::to_string(violations)}, {"unavailable", std::to_string(unavailable)}};
    return t;
}

// ------------------------------------------------------------- figures
//
// Curve parameters are chosen by this repository; every file lists them in
// its '#' header.

enum class FigureId
{
    f1,
    f2,
    f3,
    f4
};

inline FigureId parse_figure_id(const std::string& s)
{
    if (s == "f1") return FigureId::f1;
    if (s == "f2") return FigureId::f2;
    if (s == "f3") return FigureId::f3;
    if (s == "f4") return FigureId::f4;
    throw domain_error("unknown figure '" + s + "'");
}

constexpr std::size_t figure_terms = 20;
constexpr Real figure_oracle_tol = 1e-12;

// lo, lo + h, ..., lo + (count - 1) h computed from integer multiples
inline std::vector<Real> abscissae(Real lo, Real h, int count)
{
    std::vector<Real> out;
    for (int i = 0; i < count; ++i)
    {
        out.push_back(lo + h * i);
    }
    return out;
}

inline std::string curve_list(const std::vector<std::vector<Real>>& curves)
{
    std::string s;
    for (const auto& c : curves)
    {
        s += s.empty() ? "(" : " (";
        for (std::size_t i = 0; i < c.size(); ++i)
        {
            s += (i ? "," : "") + format_short(c[i]);
        }
        s += ")";
    }
    return s;
}

inline Table figure_table(FigureId id, unsigned jobs)
{
    Table t;
    std::vector<std::vector<Real>> curves;
    std::vector<Real> xs;
    struct Job
    {
        std::size_t curve;
        Real x;
    };
    std::vector<Job> work;
    const auto plan = [&] {
        for (std::size_t c = 0; c < curves.size(); ++c)
        {
            for (Real x : xs)
            {
                work.push_back({c, x});
            }
        }
    };

    switch (id)
    {
    case FigureId::f1:
    {
        curves = {{1, 0, 1}, {2, 1, 2}, {3, 0.5, 3}};
        xs = abscissae(0, 0.25, 25);
        plan();
        t.meta = {{"figure", "f1"},
                  {"description", "normalized Nuttall Q vs b; truncated series against quadrature"},
                  {"curves (m,n,a)", curve_list(curves)},
                  {"b", "0:0.25:6"},
                  {"terms", std::to_string(figure_terms)},
                  {"oracle_tol", format_short(figure_oracle_tol)}};
        t.columns = {"curve", "m", "n", "a", "b", "series_value", "oracle_value", "rel_error", "diagnostic"};
        const auto rows = parallel_map<std::vector<Cell>>(work.size(), jobs, [&](std::size_t i) {
            const auto& c = curves[work[i].curve];
            const PointParams p{c[0], c[1], c[2], work[i].x};
            const Real s = evaluate(FunctionId::nuttall_norm, p, Method::truncated, figure_terms, 1e-14).value;
            const Real o = oracle_value(FunctionId::nuttall_norm, p, figure_oracle_tol, QuadScheme::kronrod_global).value;
            return std::vector<Cell>{static_cast<long long>(work[i].curve), p.m, p.n, p.x, p.y, s, o,
                                     relative_error(s, o), diagnostic_for(s)};
        });
        t.rows = rows;
        break;
    }
    case FigureId::f2:
    {
        curves = {{2, 1, 0.5}, {3, 1.5, 0.5}, {4, 2, 1}};
        xs = abscissae(0.25, 0.25, 24);
        plan();
        t.meta = {{"figure", "f2"},
                  {"description", "1F1 upper bound vs normalized Nuttall Q as a grows"},
                  {"curves (m,n,b)", curve_list(curves)},
                  {"a", "0.25:0.25:6"},
                  {"terms", std::to_string(figure_terms)},
                  {"oracle_tol", format_short(figure_oracle_tol)}};
        t.columns = {"curve", "m", "n", "a", "b", "series_value", "oracle_value", "bound_value", "rel_gap",
                     "diagnostic"};
        const auto rows = parallel_map<std::vector<Cell>>(work.size(), jobs, [&](std::size_t i) {
            const auto& c = curves[work[i].curve];
            const PointParams p{c[0], c[1], work[i].x, c[2]};
            const Real s = evaluate(FunctionId::nuttall_norm, p, Method::truncated, figure_terms, 1e-14).value;
            const Real o = oracle_value(FunctionId::nuttall_norm, p, figure_oracle_tol, QuadScheme::kronrod_global).value;
            const Real bound = nuttall_upper_bound_1f1(p.m, FnOrder(p.n), p.x);
            return std::vector<Cell>{static_cast<long long>(work[i].curve), p.m, p.n, p.x, p.y, s, o, bound,
                                     (bound - o) / o, diagnostic_for(s)};
        });
        t.rows = rows;
        break;
    }
    case FigureId::f3:
    {
        curves = {{2, 1, 1}, {3, 1.5, 0.8}, {2, 0.5, 2}};
        xs = abscissae(0.25, 0.25, 32);
        plan();
        t.meta = {{"figure", "f3"},
                  {"description", "incomplete Toronto function vs B; truncated series against quadrature"},
                  {"curves (m,n,r)", curve_list(curves)},
                  {"B", "0.25:0.25:8"},
                  {"terms", std::to_string(figure_terms)},
                  {"oracle_tol", format_short(figure_oracle_tol)}};
        t.columns = {"curve", "m", "n", "r", "B", "series_value", "oracle_value", "rel_error", "diagnostic"};
        const auto rows = parallel_map<std::vector<Cell>>(work.size(), jobs, [&](std::size_t i) {
            const auto& c = curves[work[i].curve];
            const PointParams p{c[0], c[1], c[2], work[i].x};
            const Real s = evaluate(FunctionId::toronto, p, Method::truncated, figure_terms, 1e-14).value;
            const Real o = oracle_value(FunctionId::toronto, p, figure_oracle_tol, QuadScheme::kronrod_global).value;
            return std::vector<Cell>{static_cast<long long>(work[i].curve), p.m, p.n, p.x, p.y, s, o,
                                     relative_error(s, o), diagnostic_for(s)};
        });
        t.rows = rows;
        break;
    }
    case FigureId::f4:
    {
        curves = {{1, 0.5, 5}, {2, 1, 5}, {1, 0.5, 6}, {2, 1, 6}};
        xs = abscissae(0.1, 0.1, 20);
        plan();
        t.meta = {{"figure", "f4"},
                  {"description", "relative error of the complete Toronto approximation vs r"},
                  {"curves (m,n,B)", curve_list(curves)},
                  {"r", "0.1:0.1:2"},
                  {"reference", "adaptive series, tol 1e-14"},
                  {"oracle_tol", format_short(figure_oracle_tol)}};
        t.columns = {"curve", "m", "n", "r", "B", "series_value", "oracle_value", "bound_value", "rel_error",
                     "diagnostic"};
        const auto rows = parallel_map<std::vector<Cell>>(work.size(), jobs, [&](std::size_t i) {
            const auto& c = curves[work[i].curve];
            const PointParams p{c[0], c[1], work[i].x, c[2]};
            const Real s = evaluate(FunctionId::toronto, p, Method::adaptive, figure_terms, 1e-14).value;
            const Real o = oracle_value(FunctionId::toronto, p, figure_oracle_tol, QuadScheme::kronrod_global).value;
            const Real approx = toronto_upper_bound_1f1(p.m, FnOrder(p.n), p.x);
            return std::vector<Cell>{static_cast<long long>(work[i].curve), p.m, p.n, p.x, p.y, s, o, approx,
                                     relative_error(approx, s), diagnostic_for(s)};
        });
        t.rows = rows;
        break;
    }
    }
    return t;
}

} // namespace qfn::bench

#endif // QFN_BENCH_HPP

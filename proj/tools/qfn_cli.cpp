//
// qfn: evaluate Nuttall, Marcum and incomplete Toronto functions, compare
// them against the quadrature oracle, sweep the bounds and dump figure data.
//
// Exit codes: 0 success, 1 assertion failure, 2 domain error, 3 non-convergence.
//
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qfn/bench.hpp"

namespace
{

using qfn::Real;
namespace bench = qfn::bench;

enum ExitCode : int
{
    exit_ok = 0,
    exit_assertion = 1,
    exit_domain = 2,
    exit_convergence = 3
};

struct Globals
{
    std::string format = "csv";
    bool json_flag = false;
    unsigned jobs = 1;
    Real assert_rel_err = 0;

    bool json() const { return json_flag || format == "json"; }
};

struct PointOptions
{
    std::optional<Real> m, n, a, b, r, B;
};

struct GridOptions
{
    std::string mn;
    std::vector<Real> m, n, a, b, r, B;
};

void add_point_options(CLI::App* sub, PointOptions& p)
{
    sub->add_option("--m", p.m, "order m");
    sub->add_option("--n", p.n, "order n (ignored for marcum)");
    sub->add_option("--a", p.a, "a (nuttall, nuttall_norm, marcum)");
    sub->add_option("--b", p.b, "b (nuttall, nuttall_norm, marcum)");
    sub->add_option("--r", p.r, "r (toronto)");
    sub->add_option("--B", p.B, "upper limit B (toronto)");
}

void add_grid_options(CLI::App* sub, GridOptions& g)
{
    sub->add_option("--mn", g.mn, "comma-separated m:n pairs, e.g. 1:0,2:1");
    sub->add_option("--m", g.m, "m values (cartesian with --n)")->delimiter(',');
    sub->add_option("--n", g.n, "n values")->delimiter(',');
    sub->add_option("--a", g.a, "a values")->delimiter(',');
    sub->add_option("--b", g.b, "b values")->delimiter(',');
    sub->add_option("--r", g.r, "r values (toronto)")->delimiter(',');
    sub->add_option("--B", g.B, "B values (toronto)")->delimiter(',');
}

Real need(const std::optional<Real>& v, const char* name)
{
    if (!v)
    {
        throw qfn::domain_error(std::string("missing --") + name);
    }
    return *v;
}

bench::PointParams point_from(bench::FunctionId f, const PointOptions& o)
{
    const bool toronto = f == bench::FunctionId::toronto;
    bench::PointParams p;
    p.m = need(o.m, "m");
    p.n = f == bench::FunctionId::marcum ? p.m - 1 : need(o.n, "n");
    p.x = toronto ? need(o.r, "r") : need(o.a, "a");
    p.y = toronto ? need(o.B, "B") : need(o.b, "b");
    return p;
}

bench::GridSpec grid_from(bench::FunctionId f, const GridOptions& o)
{
    bench::GridSpec g;
    if (!o.mn.empty())
    {
        g.mn = bench::parse_mn_pairs(o.mn);
    }
    else if (f == bench::FunctionId::marcum)
    {
        for (Real m : o.m)
        {
            g.mn.emplace_back(m, m - 1);
        }
    }
    else
    {
        for (Real m : o.m)
        {
            for (Real n : o.n)
            {
                g.mn.emplace_back(m, n);
            }
        }
    }
    const bool toronto = f == bench::FunctionId::toronto;
    g.xs = toronto ? o.r : o.a;
    g.ys = toronto ? o.B : o.b;
    return g;
}

// "1-15" or "1,2,5" or a mix such as "1-3,10"
std::vector<std::size_t> parse_terms_list(const std::string& text)
{
    std::vector<std::size_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
    {
        if (item.empty())
        {
            continue;
        }
        try
        {
            const auto dash = item.find('-');
            const std::size_t lo = std::stoul(item.substr(0, dash));
            const std::size_t hi = dash == std::string::npos ? lo : std::stoul(item.substr(dash + 1));
            qfn::detail::require(lo <= hi, "terms range must be increasing");
            for (std::size_t p = lo; p <= hi; ++p)
            {
                out.push_back(p);
            }
        }
        catch (const std::logic_error&)
        {
            throw qfn::domain_error("malformed terms list '" + text + "'");
        }
    }
    return out;
}

void emit(const bench::Table& t, const Globals& g)
{
    std::cout << bench::render(t, g.json());
}

int report_error(const Globals& g, const std::string& command, const std::string& kind, const std::string& what,
                 int code, std::optional<Real> best = std::nullopt)
{
    bench::Table t;
    t.meta = {{"command", command}};
    t.columns = {"error", "message", "best_value", "exit_code"};
    t.rows.push_back({kind, what, bench::opt_cell(best), static_cast<long long>(code)});
    emit(t, g);
    std::cerr << "qfn: " << what << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Nuttall Q, Marcum Q and incomplete Toronto function evaluator"};
    app.fallthrough();
    app.require_subcommand(1);

    Globals g;
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--json", g.json_flag, "shorthand for --format json");
    app.add_option("--jobs", g.jobs, "worker threads for grid commands")->check(CLI::PositiveNumber);
    app.add_option("--assert-rel-err", g.assert_rel_err, "fail (exit 1) if any compare row reaches this error");

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate one function value");
    std::string eval_fn;
    std::string eval_method = "adaptive";
    std::size_t eval_terms = 20;
    Real eval_tol = 1e-12;
    PointOptions eval_point;
    eval->add_option("function", eval_fn, "nuttall | nuttall_norm | marcum | toronto")->required();
    add_point_options(eval, eval_point);
    eval->add_option("--method", eval_method, "truncated | adaptive | closed_half | bound_1f1");
    eval->add_option("--terms", eval_terms, "P for the truncated form");
    eval->add_option("--tol", eval_tol, "relative tolerance for the adaptive series");

    // compare
    auto* compare = app.add_subcommand("compare", "truncated series against the quadrature oracle on a grid");
    std::string compare_fn;
    std::size_t compare_terms = 20;
    Real compare_oracle_tol = 1e-13;
    GridOptions compare_grid;
    compare->add_option("function", compare_fn, "nuttall | nuttall_norm | marcum | toronto")->required();
    add_grid_options(compare, compare_grid);
    compare->add_option("--terms", compare_terms, "P for the truncated form");
    compare->add_option("--oracle-tol", compare_oracle_tol, "absolute oracle tolerance");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "truncation and 1F1 bound reports on a grid");
    std::string bounds_fn;
    std::string bounds_terms = "1-15";
    GridOptions bounds_grid;
    bounds->add_option("function", bounds_fn, "nuttall | nuttall_norm | marcum | toronto")->required();
    add_grid_options(bounds, bounds_grid);
    bounds->add_option("--terms-list", bounds_terms, "P values, e.g. 1-15 or 5,10,20");

    // figure
    auto* figure = app.add_subcommand("figure", "curve data for figures f1..f4");
    std::string figure_id;
    std::string figure_output = "-";
    figure->add_option("figure", figure_id, "f1 | f2 | f3 | f4")->required();
    figure->add_option("--output,-o", figure_output, "output path, '-' for standard output");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_domain;
    }

    std::string command = app.get_subcommands().front()->get_name();
    try
    {
        if (*eval)
        {
            const auto f = bench::parse_function_id(eval_fn);
            const auto method = bench::parse_method(eval_method);
            const auto p = point_from(f, eval_point);
            bench::check_box(f, p);
            const auto r = bench::evaluate(f, p, method, eval_terms, eval_tol);
            const bool toronto = f == bench::FunctionId::toronto;
            bench::Table t;
            t.meta = {{"command", "eval"}};
            for (auto& kv : bench::point_meta(f))
            {
                t.meta.push_back(kv);
            }
            t.columns = {"function", "method", "m", "n", toronto ? "r" : "a", toronto ? "B" : "b", "terms", "tol",
                         "value", "terms_used", "last_term_abs", "converged", "diagnostic"};
            t.rows.push_back({bench::to_string(f), eval_method, p.m, p.n, p.x, p.y,
                              static_cast<long long>(eval_terms), eval_tol, r.value,
                              static_cast<long long>(r.terms_used), r.last_term_abs, r.converged,
                              bench::diagnostic_for(r.value)});
            emit(t, g);
            return exit_ok;
        }
        if (*compare)
        {
            const auto f = bench::parse_function_id(compare_fn);
            std::size_t violations = 0;
            const auto t = bench::compare_table(f, grid_from(f, compare_grid), compare_terms, compare_oracle_tol,
                                                g.jobs, g.assert_rel_err, violations);
            emit(t, g);
            return violations ? exit_assertion : exit_ok;
        }
        if (*bounds)
        {
            const auto f = bench::parse_function_id(bounds_fn);
            std::size_t violations = 0;
            const auto t = bench::bounds_table(f, grid_from(f, bounds_grid), parse_terms_list(bounds_terms), g.jobs,
                                               violations);
            emit(t, g);
            return violations ? exit_assertion : exit_ok;
        }
        if (*figure)
        {
            const auto t = bench::figure_table(bench::parse_figure_id(figure_id), g.jobs);
            const std::string text = bench::render(t, g.json());
            if (figure_output == "-")
            {
                std::cout << text;
                return exit_ok;
            }
            std::ofstream out(figure_output, std::ios::binary);
            out << text;
            if (!out)
            {
                return report_error(g, command, "io_error", "cannot write " + figure_output, exit_domain);
            }
            return exit_ok;
        }
    }
    catch (const qfn::domain_error& e)
    {
        return report_error(g, command, "domain_error", e.what(), exit_domain);
    }
    catch (const qfn::overflow_error& e)
    {
        return report_error(g, command, "overflow_error", e.what(), exit_domain);
    }
    catch (const qfn::convergence_error& e)
    {
        return report_error(g, command, "convergence_error", e.what(), exit_convergence, e.partial_value());
    }
    catch (const qfn::tolerance_error& e)
    {
        return report_error(g, command, "tolerance_error", e.what(), exit_convergence, e.best_value());
    }
    return exit_ok;
}

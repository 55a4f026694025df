#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include <gtest/gtest.h>

#include "qfn/bench.hpp"

using namespace qfn;
using namespace qfn::bench;

namespace
{

GridSpec nuttall_grid()
{
    return {{{1, 0}, {2, 1}, {3, 0.5}, {1.5, 0.5}, {2.5, 1.5}}, {0.5, 1, 2, 3}, {0.5, 1, 2, 3}};
}

GridSpec toronto_grid()
{
    return {{{2, 1}, {3, 1.5}, {2, 0.5}, {4, 1}}, {0.5, 1, 2}, {1, 2, 3}};
}

std::vector<std::string> lines_of(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
    {
        out.push_back(line);
    }
    return out;
}

} // namespace

TEST(Table, CsvLayout)
{
    Table t;
    t.meta = {{"command", "probe"}};
    t.columns = {"x", "label", "flag", "count", "missing"};
    t.rows.push_back({0.1, std::string("a,b"), true, 7LL, Cell{}});
    t.summary = {{"done", "yes"}};
    const auto lines = lines_of(to_csv(t));
    ASSERT_EQ(lines.size(), 4u);
    EXPECT_EQ(lines[0], "# command=probe");
    EXPECT_EQ(lines[1], "x,label,flag,count,missing");
    EXPECT_EQ(lines[2], "0.10000000000000001,\"a,b\",true,7,");
    EXPECT_EQ(lines[3], "# done=yes");
}

TEST(Table, JsonUsesSameFieldNames)
{
    Table t;
    t.columns = {"x", "label", "missing"};
    t.rows.push_back({2.5, std::string("s"), Cell{}});
    t.rows.push_back({std::nan(""), std::string("t"), 1.0});
    const auto lines = lines_of(to_json_lines(t));
    ASSERT_EQ(lines.size(), 3u);
    const auto row = nlohmann::ordered_json::parse(lines[1]);
    EXPECT_EQ(row["x"], 2.5);
    EXPECT_EQ(row["label"], "s");
    EXPECT_TRUE(row["missing"].is_null());
    EXPECT_TRUE(nlohmann::json::parse(lines[2])["x"].is_null());
    std::vector<std::string> keys;
    for (auto it = row.begin(); it != row.end(); ++it)
    {
        keys.push_back(it.key());
    }
    EXPECT_EQ(keys, t.columns);
}

TEST(Grid, PairsAndExpansionOrder)
{
    const auto pairs = parse_mn_pairs("1:0,2.5:1.5,3");
    ASSERT_EQ(pairs.size(), 3u);
    EXPECT_EQ(pairs[1], std::make_pair(2.5, 1.5));
    EXPECT_EQ(pairs[2], std::make_pair(3.0, 0.0));
    EXPECT_THROW(parse_mn_pairs("x:1"), domain_error);

    const auto pts = expand({{{1, 0}, {2, 1}}, {0.5, 1}, {3, 4, 5}});
    ASSERT_EQ(pts.size(), 12u);
    EXPECT_EQ(pts[0].y, 3);
    EXPECT_EQ(pts[1].y, 4);
    EXPECT_EQ(pts[3].x, 1);
    EXPECT_EQ(pts[6].m, 2);
}

TEST(Grid, EmptyAndOversizedRejected)
{
    EXPECT_THROW(expand({{}, {1}, {1}}), domain_error);
    EXPECT_THROW(expand({{{1, 0}}, {1}, {}}), domain_error);
    GridSpec big{{{1, 0}}, std::vector<Real>(101, 1.0), std::vector<Real>(100, 1.0)};
    EXPECT_THROW(expand(big), domain_error);
}

TEST(ParallelMap, KeepsIndexOrderAndFirstError)
{
    const auto squares = parallel_map<int>(100, 4, [](std::size_t i) { return static_cast<int>(i * i); });
    for (std::size_t i = 0; i < squares.size(); ++i)
    {
        EXPECT_EQ(squares[i], static_cast<int>(i * i));
    }
    try
    {
        parallel_map<int>(50, 3, [](std::size_t i) -> int {
            if (i == 7 || i == 30)
            {
                throw std::runtime_error(std::to_string(i));
            }
            return 0;
        });
        FAIL() << "expected exception";
    }
    catch (const std::runtime_error& e)
    {
        EXPECT_STREQ(e.what(), "7");
    }
}

TEST(Compare, RowInvariantsAndNormalization)
{
    const PointParams p{2.5, 1.5, 2, 1};
    const ComparisonRow norm = compare_point(FunctionId::nuttall_norm, p, 20, 1e-13);
    const ComparisonRow raw = compare_point(FunctionId::nuttall, p, 20, 1e-13);
    EXPECT_DOUBLE_EQ(norm.rel_error, std::fabs(norm.series_value - norm.oracle_value) / norm.oracle_value);
    EXPECT_NEAR(raw.series_value, norm.series_value * std::pow(2.0, 1.5), 1e-13);
    EXPECT_NEAR(raw.oracle_value, norm.oracle_value * std::pow(2.0, 1.5), 1e-12);
    ASSERT_TRUE(norm.trunc_bound && raw.trunc_bound && norm.bound_1f1);
    EXPECT_NEAR(*raw.trunc_bound, *norm.trunc_bound * std::pow(2.0, 1.5), 1e-13);
    EXPECT_EQ(norm.terms, 20u);
}

TEST(Compare, MarcumForcesOrder)
{
    const ComparisonRow r = compare_point(FunctionId::marcum, {2, 7, 1, 1}, 20, 1e-13);
    EXPECT_EQ(r.params.n, 1);
    EXPECT_NEAR(r.oracle_value, 0.94079021914652866712, 1e-12);
}

TEST(Compare, NoTruncationBoundWhenClosedFormMissing)
{
    // ceil_half(0.5) < ceil_half(1.7): no finite closed form
    const ComparisonRow r = compare_point(FunctionId::nuttall_norm, {0.5, 1.7, 1, 1}, 20, 1e-13);
    EXPECT_FALSE(r.trunc_bound.has_value());
    EXPECT_TRUE(r.bound_1f1.has_value());
}

TEST(Compare, ThresholdCountsViolations)
{
    std::size_t violations = 0;
    const GridSpec g{{{2, 1}}, {0.5}, {1, 2}};
    compare_table(FunctionId::toronto, g, 20, 1e-13, 1, 1e-4, violations);
    EXPECT_EQ(violations, 0u);
    compare_table(FunctionId::toronto, g, 20, 1e-13, 1, 1e-5, violations);
    EXPECT_EQ(violations, 1u);
    compare_table(FunctionId::toronto, g, 20, 1e-13, 1, 0, violations);
    EXPECT_EQ(violations, 0u);
}

TEST(Compare, DeterministicAcrossJobCounts)
{
    std::size_t v1 = 0, v4 = 0;
    const auto t1 = compare_table(FunctionId::nuttall_norm, nuttall_grid(), 20, 1e-13, 1, 0, v1);
    const auto t4 = compare_table(FunctionId::nuttall_norm, nuttall_grid(), 20, 1e-13, 4, 0, v4);
    EXPECT_EQ(to_csv(t1), to_csv(t4));
    EXPECT_EQ(t1.rows.size(), 80u);
}

TEST(Compare, OutOfBoxPointIsDomainError)
{
    std::size_t v = 0;
    EXPECT_THROW(compare_table(FunctionId::nuttall, {{{1, 0}}, {7}, {1}}, 20, 1e-13, 1, 0, v), domain_error);
    EXPECT_THROW(compare_table(FunctionId::toronto, {{{1, 0}}, {1}, {9}}, 20, 1e-13, 1, 0, v), domain_error);
}

TEST(Bounds, NuttallSweepHasNoViolations)
{
    std::vector<std::size_t> terms;
    for (std::size_t p = 1; p <= 15; ++p)
    {
        terms.push_back(p);
    }
    std::size_t violations = 99;
    const auto t = bounds_table(FunctionId::nuttall_norm, nuttall_grid(), terms, 2, violations);
    EXPECT_EQ(violations, 0u);
    EXPECT_EQ(t.rows.size(), 80u * 16u);
}

TEST(Bounds, ZeroBEqualityRows)
{
    for (const auto& row : bounds_for_point(FunctionId::nuttall_norm, {2, 1, 1.5, 0}, {5}))
    {
        if (row.kind == "1f1")
        {
            EXPECT_NEAR(row.report.slack, 0.0, 1e-10);
        }
        else
        {
            EXPECT_FALSE(row.report.regime_ok);
        }
    }
}

TEST(Bounds, RegimeExcludedRowsDoNotCount)
{
    std::size_t violations = 99;
    const auto t = bounds_table(FunctionId::toronto, {{{1, 1}}, {1}, {2}}, {3}, 1, violations);
    EXPECT_EQ(violations, 0u);
    const std::size_t regime_col = 9;
    EXPECT_EQ(std::get<bool>(t.rows[0][regime_col]), false);
}

TEST(Bounds, TorontoSweepFlagsUndershoot)
{
    std::size_t violations = 0;
    bounds_table(FunctionId::toronto, toronto_grid(), {20}, 1, violations);
    EXPECT_EQ(violations, 4u);
}

TEST(Figure, MetadataAndShape)
{
    const auto f1 = figure_table(FigureId::f1, 2);
    EXPECT_EQ(f1.rows.size(), 75u);
    bool has_curves = false;
    for (const auto& [k, v] : f1.meta)
    {
        has_curves = has_curves || (k.rfind("curves", 0) == 0 && v == "(1,0,1) (2,1,2) (3,0.5,3)");
    }
    EXPECT_TRUE(has_curves);
    EXPECT_EQ(to_csv(f1), to_csv(figure_table(FigureId::f1, 1)));
}

TEST(Figure, BoundTightensAsAGrows)
{
    const auto f2 = figure_table(FigureId::f2, 1);
    const std::size_t per_curve = 24;
    for (std::size_t c = 0; c < 3; ++c)
    {
        const double first = std::get<Real>(f2.rows[c * per_curve][8]);
        const double last = std::get<Real>(f2.rows[c * per_curve + per_curve - 1][8]);
        EXPECT_GT(first, 0.0);
        EXPECT_LT(last, first) << "curve " << c;
    }
}

TEST(Figure, SmallRadiusApproximationError)
{
    const auto f4 = figure_table(FigureId::f4, 1);
    for (const auto& row : f4.rows)
    {
        if (std::get<Real>(row[3]) < 1)
        {
            EXPECT_LT(std::get<Real>(row[8]), 1e-6);
        }
    }
}

TEST(Figure, UnknownIdRejected)
{
    EXPECT_THROW(parse_figure_id("f9"), domain_error);
    EXPECT_THROW(parse_function_id("bessel"), domain_error);
    EXPECT_THROW(parse_method("fast"), domain_error);
}

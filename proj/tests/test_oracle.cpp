#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "qfn/golden.hpp"
#include "qfn/quadrature.hpp"

using namespace qfn;

namespace
{

std::string read_file(const char* path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

constexpr QuadScheme both_schemes[] = {QuadScheme::kronrod_global, QuadScheme::legendre_recursive};

} // namespace

TEST(OracleNuttall, SmallALimitIsGaussianTail)
{
    for (QuadScheme s : both_schemes)
    {
        for (double b : {0.0, 0.5, 1.0, 2.0, 4.0})
        {
            const OracleValue v = oracle_nuttall(1, FnOrder(0), 1e-8, b, 1e-12, s);
            EXPECT_NEAR(v.value, std::exp(-0.5 * b * b), 2e-12) << b;
        }
    }
}

TEST(OracleNuttall, MarcumOrdersAtZeroGiveAPower)
{
    for (double m : {1.0, 2.0, 3.5})
    {
        for (double a : {0.5, 2.0, 4.0})
        {
            const OracleValue v = oracle_nuttall(m, FnOrder(m - 1), a, 0, 1e-12);
            EXPECT_NEAR(v.value, std::pow(a, m - 1), 2e-12) << m << " " << a;
        }
    }
}

TEST(OracleNuttall, FrozenReference)
{
    const OracleValue v = oracle_nuttall(2, FnOrder(1), 1, 2, 1e-13);
    EXPECT_NEAR(v.value, 0.53014690808396572479, 2e-13);
}

TEST(OracleNuttall, ErrorFieldsRespectTolerance)
{
    for (double tol : {1e-6, 1e-10, 1e-14})
    {
        const OracleValue v = oracle_nuttall(2.5, FnOrder(1.5), 3, 1, tol);
        EXPECT_LE(v.abs_err_est, tol);
        EXPECT_LE(v.tail_bound, 0.5 * tol);
        EXPECT_GE(v.tail_bound, 0.0);
        EXPECT_GE(v.subdivisions, 1u);
    }
}

TEST(OracleNuttall, StrictlyDecreasingInB)
{
    const struct
    {
        double m, n, a;
    } cases[] = {{1, 0, 1}, {2, 1, 3}, {3, 0.5, 0.5}, {0.5, 2, 5}};
    for (const auto& c : cases)
    {
        double prev = oracle_nuttall(c.m, FnOrder(c.n), c.a, 0, 1e-13).value;
        for (double b : {0.5, 1.5, 3.0, 5.0, 7.5})
        {
            const double v = oracle_nuttall(c.m, FnOrder(c.n), c.a, b, 1e-13).value;
            EXPECT_LT(v, prev) << c.m << " " << c.n << " " << c.a << " b=" << b;
            prev = v;
        }
    }
}

TEST(OracleNuttall, DomainErrors)
{
    EXPECT_THROW(oracle_nuttall(11, FnOrder(0), 1, 1, 1e-12), domain_error);
    EXPECT_THROW(oracle_nuttall(1, FnOrder(10.5), 1, 1, 1e-12), domain_error);
    EXPECT_THROW(oracle_nuttall(1, FnOrder(0), 0, 1, 1e-12), domain_error);
    EXPECT_THROW(oracle_nuttall(1, FnOrder(0), 6.5, 1, 1e-12), domain_error);
    EXPECT_THROW(oracle_nuttall(1, FnOrder(0), 1, -0.1, 1e-12), domain_error);
    EXPECT_THROW(oracle_nuttall(1, FnOrder(0), 1, 8.5, 1e-12), domain_error);
    EXPECT_THROW(oracle_nuttall(1, FnOrder(0), 1, 1, 1e-15), domain_error);
    EXPECT_THROW(oracle_nuttall(1, FnOrder(0), 1, 1, 1e-5), domain_error);
}

TEST(OracleNuttall, UncertifiedResultCarriesBestValue)
{
    const detail::QuadResult q{0.25, 1e-9, 7};
    try
    {
        detail::finish(q, 0, 1e-12, "probe");
        FAIL() << "expected tolerance_error";
    }
    catch (const tolerance_error& e)
    {
        EXPECT_EQ(e.best_value(), 0.25);
        EXPECT_EQ(e.achieved_error(), 1e-9);
    }
}

TEST(OracleMarcum, Limits)
{
    for (double b : {0.0, 1.0, 2.0, 3.0})
    {
        EXPECT_NEAR(oracle_marcum(1, 1e-8, b, 1e-12).value, std::exp(-0.5 * b * b), 2e-12) << b;
    }
    for (double m : {1.0, 1.5, 4.0})
    {
        EXPECT_NEAR(oracle_marcum(m, 1.3, 0, 1e-12).value, 1.0, 2e-12) << m;
    }
}

TEST(OracleMarcum, FrozenReferences)
{
    EXPECT_NEAR(oracle_marcum(1, 1, 1, 1e-13).value, 0.73287980379682021825, 2e-13);
    EXPECT_NEAR(oracle_marcum(2, 1, 1, 1e-13).value, 0.94079021914652866712, 2e-13);
}

TEST(OracleMarcum, StaysInUnitInterval)
{
    for (double m : {1.0, 1.5, 2.0, 3.0, 5.0})
    {
        for (double a : {0.2, 1.0, 3.0, 6.0})
        {
            for (double b : {0.0, 0.5, 2.0, 4.0, 8.0})
            {
                const double v = oracle_marcum(m, a, b, 1e-12).value;
                EXPECT_GE(v, -2e-12);
                EXPECT_LE(v, 1 + 2e-12);
            }
        }
    }
    EXPECT_THROW(oracle_marcum(0.5, 1, 1, 1e-12), domain_error);
}

TEST(OracleToronto, FrozenReferences)
{
    EXPECT_NEAR(oracle_toronto(2, FnOrder(1), 1, 3, 1e-13).value, 0.7063433125411884646, 2e-13);
    EXPECT_NEAR(oracle_toronto(3, FnOrder(1.5), 0.8, 2, 1e-13).value, 0.44071557495658148165, 2e-13);
}

TEST(OracleToronto, VanishingInterval)
{
    EXPECT_NEAR(oracle_toronto(2, FnOrder(1), 1, 1e-6, 1e-12).value, 0.0, 1e-12);
    EXPECT_NEAR(oracle_toronto(1, FnOrder(0.5), 2, 1e-6, 1e-12).value, 0.0, 1e-12);
}

TEST(OracleToronto, MarcumIdentity)
{
    const double tol = 1e-12;
    for (double r : {0.5, 1.0, 2.0})
    {
        for (double upper : {0.5, 1.0, 2.0})
        {
            const double t = oracle_toronto(1, FnOrder(0), r, upper, tol).value;
            const double q = oracle_marcum(1, r * std::numbers::sqrt2, upper * std::numbers::sqrt2, tol).value;
            EXPECT_LE(std::fabs(t - (1 - q)), 4 * tol) << r << " " << upper;
        }
    }
}

TEST(OracleToronto, DomainErrors)
{
    EXPECT_THROW(oracle_toronto(0.5, FnOrder(2), 1, 1, 1e-12), domain_error);
    EXPECT_THROW(oracle_toronto(2, FnOrder(1), 0, 1, 1e-12), domain_error);
    EXPECT_THROW(oracle_toronto(2, FnOrder(1), 7, 1, 1e-12), domain_error);
    EXPECT_THROW(oracle_toronto(2, FnOrder(1), 1, 0, 1e-12), domain_error);
    EXPECT_THROW(oracle_toronto(2, FnOrder(1), 1, 9, 1e-12), domain_error);
}

TEST(Golden, HasThirtyEntriesOfEachKind)
{
    const auto entries = parse_golden(read_file(QFN_GOLDEN_FILE));
    ASSERT_EQ(entries.size(), 30u);
    int nuttall = 0, marcum = 0, toronto = 0;
    for (const auto& e : entries)
    {
        nuttall += e.kind == "nuttall";
        marcum += e.kind == "marcum";
        toronto += e.kind == "toronto";
        EXPECT_EQ(e.tol, golden_tol);
        EXPECT_LE(e.err_est, e.tol);
    }
    EXPECT_EQ(nuttall, 12);
    EXPECT_EQ(marcum, 6);
    EXPECT_EQ(toronto, 12);
}

TEST(Golden, RegeneratesBitIdentically)
{
    EXPECT_EQ(generate_golden(), read_file(QFN_GOLDEN_FILE));
}

TEST(Golden, FormatRoundTrips)
{
    for (const auto& e : parse_golden(read_file(QFN_GOLDEN_FILE)))
    {
        const auto again = parse_golden(format_golden_line(e));
        ASSERT_EQ(again.size(), 1u);
        EXPECT_EQ(again[0].value, e.value);
        EXPECT_EQ(again[0].err_est, e.err_est);
    }
    EXPECT_THROW(parse_golden("nuttall 1 2 3\n"), domain_error);
}

TEST(Golden, DualSchemeAgreement)
{
    for (const auto& e : parse_golden(read_file(QFN_GOLDEN_FILE)))
    {
        const double legendre = evaluate_golden(e, QuadScheme::legendre_recursive).value;
        EXPECT_LE(std::fabs(legendre - e.value), 2 * e.tol) << format_golden_line(e);
    }
}

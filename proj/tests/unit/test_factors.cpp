#include "level_data.hpp"
#include "oracles.hpp"
#include "windingq/factors.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace windingq;

TEST(Arithmetic, PrimeDivisorsAndOddPart)
{
    EXPECT_EQ(prime_divisors(Int(5120)), (std::vector<Int>{2, 5}));
    EXPECT_EQ(prime_divisors(Int(6565)), (std::vector<Int>{5, 13, 101}));
    const Int big = Int("1000000007") * Int("998244353");
    EXPECT_EQ(prime_divisors(big), (std::vector<Int>{Int("998244353"), Int("1000000007")}));
    EXPECT_EQ(odd_part(Int(5120)), 5);
    EXPECT_EQ(odd_part(Rat(204800, 97)), Rat(25, 97));
}

TEST(Factors, KernelRanks)
{
    EXPECT_EQ(kernel_K(level_data(11).classes, 0).rank(), 0u);
    const LevelData& d37 = level_data(37);
    for (std::size_t i = 0; i < d37.classes.size(); ++i)
        EXPECT_EQ(kernel_K(d37.classes, i).rank(), 2u);
    const LevelData& d389 = level_data(389);
    EXPECT_EQ(kernel_K(d389.classes, d389.index_of("389E")).rank(), 24u);
}

TEST(Factors, BracketOfZeroIdealIsH)
{
    const LevelData& d = level_data(11);
    EXPECT_EQ(h_bracket(d.algebra, d.classes, IntLattice(d.algebra.rank())), IntLattice::full(2));
    EXPECT_EQ(h_bracket(d.algebra, d.classes, d.winding.ie), IntLattice::full(2));
}

TEST(Factors, Level11)
{
    const LevelData& d = level_data(11);
    const FactorReport r = l_ratio(d.space, d.algebra, d.classes, 0, d.winding);
    EXPECT_EQ(r.factor1, 1);
    EXPECT_EQ(r.factor2, 1);
    EXPECT_EQ(r.denom, 5);
    EXPECT_EQ(r.ratio_product, Rat(1, 5));
    EXPECT_EQ(r.ratio_index, Rat(1, 5));
}

TEST(Factors, Level11AgreesWithNumericalRatio)
{
    const double l = oracle::l_value_at_one(oracle::kCurve11a, 11, 400);
    const double omega = oracle::real_period(oracle::kCurve11a);
    const LevelData& d = level_data(11);
    const Rat exact = ratio_index(d.space, d.classes, 0, d.winding);
    EXPECT_NEAR(l / omega, exact.get_d(), 1e-4 * exact.get_d());
}

TEST(Factors, Level389OddPartOfFirstFactorIsFive)
{
    const LevelData& d = level_data(389);
    const FactorReport r = factor_orders(d.space, d.algebra, d.classes, d.index_of("389E"), d.winding);
    EXPECT_EQ(odd_part(r.factor1), 5);
    EXPECT_TRUE(r.quotient_paths_agree);
}

TEST(Factors, RankPositiveClassHasZeroIndexAndRaises)
{
    const LevelData& d = level_data(37);
    for (std::size_t i = 0; i < d.classes.size(); ++i) {
        if (d.classes[i].rank_zero)
            continue;
        EXPECT_EQ(ratio_index(d.space, d.classes, i, d.winding), 0);
        EXPECT_THROW(l_ratio(d.space, d.algebra, d.classes, i, d.winding), NotRankZero);
    }
}

TEST(Factors, PropertiesUpToLevel60)
{
    for (long n = 11; n <= 60; ++n) {
        const LevelData& d = level_data(n);
        for (std::size_t i = 0; i < d.classes.size(); ++i) {
            const IsotypicClass& c = d.classes[i];
            if (!c.rank_zero)
                continue;
            const FactorReport r = l_ratio(d.space, d.algebra, d.classes, i, d.winding);
            EXPECT_EQ(r.factor1_divisors.free_rank, 0u);
            EXPECT_TRUE(r.quotient_paths_agree) << n << " " << c.label;
            // The denominator group is a quotient of Te/Ime, which is killed by n.
            EXPECT_TRUE(mpz_divisible_p(d.winding.order.get_mpz_t(), r.denom_divisors.exponent().get_mpz_t()))
                << n << " " << c.label;
            if (c.is_new)
                EXPECT_TRUE(r.denom_divides_order) << n << " " << c.label;
            if (squarefree(n))
                EXPECT_TRUE(r.odd_parts_agree) << n << " " << c.label;
        }
    }
}

TEST(Factors, QuotientMapHasIntegralSection)
{
    const LevelData& d = level_data(389);
    const QuotientMap q = quotient_by(kernel_K(d.classes, d.index_of("389E")));
    EXPECT_EQ(q.rank(), 40u);
    EXPECT_EQ(q.R * q.P, IntMatrix::identity(40));
}

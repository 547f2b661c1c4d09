#include "oracles.hpp"
#include "windingq/exactlin/poly.hpp"
#include "windingq/heckeop.hpp"

#include <gtest/gtest.h>

using namespace windingq;

namespace {

ZPoly linear(long root)
{
    return ZPoly{Int(-root), 1};
}

} // namespace

TEST(Heilbronn, MerelSetForTwo)
{
    const auto hs = heilbronn_matrices(2);
    EXPECT_EQ(hs.size(), 4u);
    for (const auto& h : heilbronn_matrices(12)) {
        EXPECT_EQ(h.a * h.d - h.b * h.c, 12);
        EXPECT_TRUE(h.a > h.b && h.b >= 0 && h.d > h.c && h.c >= 0);
    }
}

TEST(Sturm, Bounds)
{
    EXPECT_EQ(sturm_bound(11), 2);
    EXPECT_EQ(sturm_bound(37), 7);
    EXPECT_EQ(sturm_bound(389), 65);
}

TEST(Hecke, Level11MatchesPointCounts)
{
    const ManinSpace s = ManinSpace::build(11);
    HeckeCache cache(s);
    for (long p = 2; p <= 50; ++p) {
        if (!oracle::is_prime(p) || p == 11)
            continue;
        const long ap = oracle::trace_of_frobenius(oracle::kCurve11a, p);
        EXPECT_EQ(charpoly(cache.cuspidal(p)), poly_mul(linear(ap), linear(ap))) << p;
    }
}

TEST(Hecke, Level37MatchesBothCurves)
{
    const ManinSpace s = ManinSpace::build(37);
    HeckeCache cache(s);
    for (long p = 2; p <= 30; ++p) {
        if (!oracle::is_prime(p))
            continue;
        const long a = oracle::trace_of_frobenius(oracle::kCurve37a, p);
        const long b = oracle::trace_of_frobenius(oracle::kCurve37b, p);
        ZPoly expect = poly_mul(poly_mul(linear(a), linear(a)), poly_mul(linear(b), linear(b)));
        EXPECT_EQ(charpoly(cache.cuspidal(p)), expect) << p;
    }
}

TEST(Hecke, OperatorsCommuteAndMultiply)
{
    for (long n : {23L, 30L, 45L}) {
        const ManinSpace s = ManinSpace::build(n);
        HeckeCache cache(s);
        const IntMatrix& t2 = cache.ambient(2);
        const IntMatrix& t3 = cache.ambient(3);
        EXPECT_EQ(t2 * t3, t3 * t2) << n;
        EXPECT_EQ(cache.ambient(6), t2 * t3) << n;
        EXPECT_EQ(cache.cuspidal(6), cache.cuspidal(2) * cache.cuspidal(3)) << n;
    }
}

TEST(Hecke, RecurrenceAgreesWithMerelAtCompositeIndex)
{
    const ManinSpace s = ManinSpace::build(11);
    HeckeCache cache(s);
    for (long n : {4L, 6L, 8L, 9L, 12L})
        EXPECT_EQ(cache.merel_ambient(n), cache.ambient(n)) << n;
}

TEST(AtkinLehner, MatrixShapeAndErrors)
{
    const Mat2 w = atkin_lehner_matrix(30, 5);
    EXPECT_EQ(w.a * w.d - w.b * w.c, 5);
    EXPECT_EQ(w.c, 30);
    EXPECT_EQ(w.d, 5);
    EXPECT_THROW(atkin_lehner_matrix(12, 2), NotExactDivisor);
    EXPECT_THROW(atkin_lehner_matrix(12, 5), NotExactDivisor);
}

TEST(AtkinLehner, InvolutionsCommutingWithHecke)
{
    for (long n : {11L, 30L, 36L, 37L}) {
        const ManinSpace s = ManinSpace::build(n);
        HeckeCache cache(s);
        for (long p : prime_factors(n)) {
            long q = 1;
            while (n % (q * p) == 0)
                q *= p;
            const HeckeOp w = atkin_lehner(s, q);
            const std::size_t d = s.cuspidal().rank();
            EXPECT_EQ(w.cuspidal * w.cuspidal, IntMatrix::identity(d)) << n << " " << q;
            const long ell = n % 7 == 0 ? 11 : 7;
            EXPECT_EQ(w.cuspidal * cache.cuspidal(ell), cache.cuspidal(ell) * w.cuspidal) << n;
        }
    }
}

TEST(AtkinLehner, PrimeLevelSignIsMinusTheEigenvalue)
{
    // On newforms of prime level, U_N = -W_N.
    for (long n : {11L, 37L, 43L}) {
        const ManinSpace s = ManinSpace::build(n);
        HeckeCache cache(s);
        EXPECT_EQ(cache.cuspidal(n), Int(-1) * atkin_lehner(s, n).cuspidal) << n;
    }
}

TEST(HeckeAlgebra, BasisAndCoordinatesAreInverse)
{
    for (long n : {11L, 37L, 60L}) {
        const ManinSpace s = ManinSpace::build(n);
        HeckeCache cache(s);
        const HeckeAlgebra alg = HeckeAlgebra::build(cache);
        EXPECT_EQ(alg.rank(), s.genus());
        EXPECT_EQ(alg.transform() * alg.coords(), IntMatrix::identity(alg.rank()));
        for (long k = 1; k <= alg.bound(); ++k)
            EXPECT_EQ(alg.element(alg.coords().row(static_cast<std::size_t>(k - 1))), alg.generator(k));
    }
}

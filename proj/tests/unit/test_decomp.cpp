#include "level_data.hpp"
#include "windingq/exactlin/rational.hpp"
#include "windingq/factors.hpp"

#include <algorithm>
#include <numeric>

#include <gtest/gtest.h>

using namespace windingq;

TEST(Labels, Letters)
{
    EXPECT_EQ(class_letters(0), "A");
    EXPECT_EQ(class_letters(25), "Z");
    EXPECT_EQ(class_letters(26), "AA");
    EXPECT_EQ(class_letters(27), "AB");
}

TEST(Decomposition, Level389)
{
    const LevelData& d = level_data(389);
    std::vector<std::size_t> dims;
    for (const auto& c : d.classes)
        dims.push_back(c.dim());
    EXPECT_EQ(dims, (std::vector<std::size_t>{2, 4, 6, 12, 40}));
    const IsotypicClass& e = d.classes[d.index_of("389E")];
    EXPECT_TRUE(e.rank_zero);
    EXPECT_EQ(e.degree, 20u);
    for (const auto& c : d.classes)
        if (c.label != "389E")
            EXPECT_FALSE(c.rank_zero) << c.label;
}

TEST(Decomposition, Level37HasOneRankZeroClass)
{
    const LevelData& d = level_data(37);
    ASSERT_EQ(d.classes.size(), 2u);
    EXPECT_NE(d.classes[0].rank_zero, d.classes[1].rank_zero);
    for (const auto& c : d.classes) {
        ASSERT_EQ(c.atkin_lehner.size(), 1u);
        // Nonvanishing L(f, 1) forces W_N = -1 at prime level.
        EXPECT_EQ(c.atkin_lehner[0].sign, c.rank_zero ? -1 : 1);
    }
}

TEST(Decomposition, ClassesSpanHAndAreHeckeStable)
{
    for (long n : {11L, 30L, 37L, 44L, 56L, 60L, 389L}) {
        LevelData& d = level_data(n);
        const std::size_t dim = d.space.cuspidal().rank();
        IntMatrix stacked(0, dim);
        std::size_t total = 0;
        for (const auto& c : d.classes) {
            total += c.dim();
            stacked = vstack(stacked, c.lattice.basis());
            EXPECT_EQ(saturate(c.lattice), c.lattice);
            EXPECT_EQ(c.plus.rank() * 2, c.dim());
            for (long ell : {2L, 3L, 5L, 7L, 11L})
                EXPECT_NO_THROW(restrict_operator(c.lattice, d.hecke.cuspidal(ell))) << n << " " << c.label;
        }
        EXPECT_EQ(total, dim) << n;
        EXPECT_EQ(rank(stacked), dim) << n;
    }
}

TEST(Decomposition, OldClassMultiplicities)
{
    const LevelData& d = level_data(44);
    bool found = false;
    for (const auto& c : d.classes) {
        if (c.is_new)
            continue;
        // The level-11 form appears three times at level 44.
        EXPECT_EQ(c.multiplicity, 3u);
        EXPECT_EQ(c.dim(), 6u);
        found = true;
    }
    EXPECT_TRUE(found);
}

TEST(Decomposition, Deterministic)
{
    const ManinSpace s = ManinSpace::build(57);
    HeckeCache c1(s), c2(s);
    const auto a = isotypic_decomposition(s, c1);
    const auto b = isotypic_decomposition(s, c2);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].label, b[i].label);
        EXPECT_EQ(a[i].lattice, b[i].lattice);
        EXPECT_EQ(a[i].fingerprint, b[i].fingerprint);
    }
}

TEST(Decomposition, SeparationFailureWithTooFewPrimes)
{
    const ManinSpace s = ManinSpace::build(389);
    HeckeCache cache(s);
    DecompOptions opts;
    opts.max_prime = 1;
    EXPECT_THROW(isotypic_decomposition(s, cache, opts), SeparationFailure);
}

TEST(Winding, OrdersMatchNumeratorOfIndexOver12)
{
    for (long n : {11L, 37L, 389L}) {
        const LevelData& d = level_data(n);
        const long numer = (n - 1) / std::gcd(n - 1, 12L);
        EXPECT_EQ(d.winding.order, numer) << n;
        EXPECT_EQ(vec_mul(d.winding.e, d.space.star_on_cuspidal()), d.winding.e) << n;
    }
}

TEST(Winding, AnnihilatorKillsE)
{
    for (long n : {37L, 43L, 57L}) {
        const LevelData& d = level_data(n);
        for (std::size_t i = 0; i < d.winding.ie.rank(); ++i) {
            const IntMatrix t = d.algebra.element(d.winding.ie.basis().row(i));
            const RatVec v = vec_mul(d.winding.e, t);
            EXPECT_TRUE(std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; })) << n;
        }
    }
}

TEST(Winding, ImeInsidePlusPartOfHIe)
{
    for (long n = 11; n <= 60; ++n) {
        if (level_data(n).space.genus() == 0)
            continue;
        const LevelData& d = level_data(n);
        const IntLattice he = h_bracket(d.algebra, d.classes, d.winding.ie);
        EXPECT_TRUE(plus_part(he, d.space.star_on_cuspidal()).contains(d.winding.ime)) << n;
    }
}

TEST(Winding, HIeIsTheSumOfRankZeroClasses)
{
    for (long n = 11; n <= 60; ++n) {
        const LevelData& d = level_data(n);
        if (d.space.genus() == 0)
            continue;
        IntLattice sum(d.space.cuspidal().rank());
        for (const auto& c : d.classes)
            if (c.rank_zero)
                sum = lattice_sum(sum, c.lattice);
        EXPECT_EQ(h_bracket(d.algebra, d.classes, d.winding.ie), saturate(sum)) << n;
    }
}

namespace {

// Direct forms: every operator of the basis, flattened.
IntLattice annihilator_reference(const HeckeAlgebra& t, const IntLattice& v)
{
    const std::size_t g = t.rank();
    IntMatrix r(g, v.rank() * v.ambient_dim());
    for (std::size_t i = 0; i < g; ++i) {
        IntVec unit(g);
        unit[i] = 1;
        r.set_row(i, flatten(v.basis() * t.element(unit)));
    }
    return integer_kernel(r);
}

IntLattice h_bracket_reference(const HeckeAlgebra& t, const IntLattice& ideal)
{
    const std::size_t dim = t.generator(1).rows();
    IntMatrix stacked(dim, 0);
    for (std::size_t k = 0; k < ideal.rank(); ++k) {
        const IntMatrix e = t.element(ideal.basis().row(k));
        IntMatrix wide(dim, stacked.cols() + dim);
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < stacked.cols(); ++j)
                wide(i, j) = stacked(i, j);
            for (std::size_t j = 0; j < dim; ++j)
                wide(i, stacked.cols() + j) = e(i, j);
        }
        stacked = wide;
    }
    return integer_kernel(stacked);
}

} // namespace

TEST(Annihilators, MatchDirectComputation)
{
    for (long n : {30L, 37L, 44L, 54L, 57L, 60L, 64L, 81L, 100L}) {
        const LevelData& d = level_data(n);
        for (const auto& c : d.classes) {
            const IntLattice ann = annihilator(d.algebra, c.lattice);
            EXPECT_EQ(ann, annihilator_reference(d.algebra, c.lattice)) << n << " " << c.label;
            EXPECT_EQ(h_bracket(d.algebra, d.classes, ann), h_bracket_reference(d.algebra, ann)) << n << " " << c.label;
        }
        EXPECT_EQ(h_bracket(d.algebra, d.classes, d.winding.ie), h_bracket_reference(d.algebra, d.winding.ie)) << n;
    }
}

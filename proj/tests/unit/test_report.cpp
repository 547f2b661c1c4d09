#include "windingq/output.hpp"
#include "windingq/report.hpp"

#include <gtest/gtest.h>

using namespace windingq;

TEST(Mazur, Criterion)
{
    EXPECT_FALSE(mazur_irreducible(11, Int(5)));
    EXPECT_FALSE(mazur_irreducible(11, Int(2)));
    EXPECT_TRUE(mazur_irreducible(11, Int(3)));
    EXPECT_FALSE(mazur_irreducible(37, Int(3)));
    EXPECT_TRUE(mazur_irreducible(389, Int(5)));
    EXPECT_FALSE(mazur_irreducible(389, Int(97)));
}

namespace {

IsotypicClass synthetic_class(std::vector<AtkinLehnerSign> signs)
{
    IsotypicClass c;
    c.label = "X";
    c.is_new = true;
    c.rank_zero = true;
    c.atkin_lehner = std::move(signs);
    return c;
}

} // namespace

TEST(Visibility, PrimeLevelShaPrediction)
{
    const IsotypicClass f = synthetic_class({{389, -1}});
    VisibilityInputs in;
    in.level = 389;
    in.f = &f;
    in.factor1 = 5120;
    in.q = 5;
    const VisibilityChecklist v = visibility_checklist(in);
    EXPECT_FALSE(v.vacuous);
    EXPECT_EQ(v.check("q_odd_and_coprime_to_2N"), Tri::True);
    EXPECT_EQ(v.check("q_coprime_to_N_minus_1"), Tri::True);
    EXPECT_EQ(v.check("mazur_irreducibility"), Tri::True);
    EXPECT_EQ(v.check("p_not_minus_wp_mod_q[389]"), Tri::True);
    EXPECT_EQ(v.check("lower_level_congruence_found"), Tri::False);
    EXPECT_EQ(v.prediction, Prediction::ShaDivisible);
    EXPECT_TRUE(v.rational_prime_only);
    EXPECT_FALSE(v.caveat.empty());
}

TEST(Visibility, TwoIsAlwaysInconclusive)
{
    const IsotypicClass f = synthetic_class({{389, -1}});
    VisibilityInputs in;
    in.level = 389;
    in.f = &f;
    in.factor1 = 5120;
    in.q = 2;
    const VisibilityChecklist v = visibility_checklist(in);
    EXPECT_EQ(v.check("q_odd_and_coprime_to_2N"), Tri::False);
    EXPECT_EQ(v.prediction, Prediction::Inconclusive);
}

TEST(Visibility, VacuousWhenQDoesNotDivide)
{
    const IsotypicClass f = synthetic_class({{389, -1}});
    VisibilityInputs in;
    in.level = 389;
    in.f = &f;
    in.factor1 = 5120;
    in.q = 7;
    const VisibilityChecklist v = visibility_checklist(in);
    EXPECT_TRUE(v.vacuous);
    EXPECT_EQ(v.prediction, Prediction::Inconclusive);
}

TEST(Visibility, QDividingPPlusSignBlocks)
{
    // q = 3 divides p + w_p at p = 2.
    const IsotypicClass f = synthetic_class({{2, 1}, {47, -1}});
    VisibilityInputs in;
    in.level = 94;
    in.f = &f;
    in.factor1 = 3;
    in.q = 3;
    const VisibilityChecklist v = visibility_checklist(in);
    EXPECT_EQ(v.check("p_not_minus_wp_mod_q[2]"), Tri::False);
    EXPECT_EQ(v.prediction, Prediction::Inconclusive);
}

TEST(Visibility, CompositeLevelNeedsIrreducibility)
{
    const IsotypicClass f = synthetic_class({{5, -1}, {23, 1}});
    VisibilityInputs in;
    in.level = 115;
    in.f = &f;
    in.factor1 = 7;
    in.q = 7;
    const VisibilityChecklist unknown = visibility_checklist(in);
    EXPECT_EQ(unknown.check("galois_irreducibility"), Tri::Unknown);
    EXPECT_EQ(unknown.prediction, Prediction::Inconclusive);

    in.assume_irreducible = true;
    const VisibilityChecklist assumed = visibility_checklist(in);
    EXPECT_EQ(assumed.check("galois_irreducibility"), Tri::True);
    EXPECT_EQ(assumed.prediction, Prediction::ShaDivisible);
}

TEST(Visibility, LowerLevelCongruenceGivesComponentGroup)
{
    IsotypicClass partner;
    partner.label = "115-old1";
    partner.newform_level = 23;
    const IsotypicClass f = synthetic_class({{5, -1}, {23, 1}});
    VisibilityInputs in;
    in.level = 115;
    in.f = &f;
    in.factor1 = 7;
    in.q = 7;
    in.partners.push_back({&partner, 5, Int(14)});
    const VisibilityChecklist v = visibility_checklist(in);
    EXPECT_EQ(v.check("lower_level_congruence_found"), Tri::True);
    EXPECT_EQ(v.check("wp_minus_one_at_that_p"), Tri::True);
    EXPECT_EQ(v.check("partner_irreducibility"), Tri::True);
    EXPECT_EQ(v.check("galois_irreducibility"), Tri::True);
    EXPECT_EQ(v.partner, "115-old1");
    EXPECT_EQ(v.component_prime, 5);
    EXPECT_EQ(v.prediction, Prediction::ComponentGroupDivisible);
}

TEST(Visibility, SquareDividingLevelLeavesLowerLevelUnknown)
{
    const IsotypicClass f = synthetic_class({{4, -1}, {31, -1}});
    VisibilityInputs in;
    in.level = 124;
    in.f = &f;
    in.factor1 = 7;
    in.q = 7;
    in.assume_irreducible = true;
    const VisibilityChecklist v = visibility_checklist(in);
    EXPECT_EQ(v.check("p_square_condition[2]"), Tri::True);
    EXPECT_EQ(v.check("lower_level_congruence_found"), Tri::Unknown);
    EXPECT_EQ(v.prediction, Prediction::Inconclusive);
}

TEST(Analyze, Level389)
{
    const AnalysisReport rep = analyze(389);
    EXPECT_EQ(rep.genus, 32u);
    EXPECT_EQ(rep.cusp_order, 97);
    ASSERT_EQ(rep.analyses.size(), 5u);
    const ClassAnalysis& e = rep.analyses[4];
    EXPECT_EQ(rep.classes[e.class_index].label, "389E");
    ASSERT_TRUE(e.factors);
    ASSERT_EQ(e.visibility.size(), 1u);
    EXPECT_EQ(e.visibility[0].q, 5);
    EXPECT_EQ(e.visibility[0].prediction, Prediction::ShaDivisible);
    ASSERT_FALSE(e.congruences.empty());
    EXPECT_EQ(e.congruences[0].second, "rank-positive");
    for (const auto& q : e.equivalence)
        EXPECT_FALSE(q.mismatch());
}

TEST(Analyze, DeterministicJson)
{
    EXPECT_EQ(to_json(analyze(57)).dump(), to_json(analyze(57)).dump());
}

TEST(Analyze, OnlyClassAndUnknownLabel)
{
    AnalyzeOptions opts;
    opts.only_class = "37B";
    const AnalysisReport rep = analyze(37, opts);
    ASSERT_EQ(rep.analyses.size(), 1u);
    EXPECT_EQ(rep.classes[rep.analyses[0].class_index].label, "37B");
    opts.only_class = "37Z";
    EXPECT_THROW(analyze(37, opts), Error);
}

TEST(Analyze, BoundBelowSturmIsRejected)
{
    AnalyzeOptions opts;
    opts.bound = 3;
    EXPECT_THROW(analyze(37, opts), BoundTooSmall);
}

TEST(Output, RationalStrings)
{
    EXPECT_EQ(rat_string(Rat(1, 5)), "1/5");
    EXPECT_EQ(rat_string(Rat(10, 5)), "2");
    EXPECT_EQ(rat_string(Rat(-6, 4)), "-3/2");
}

TEST(Output, GenusZeroReport)
{
    const AnalysisReport rep = analyze(10);
    const Json j = to_json(rep);
    EXPECT_EQ(j["genus"], 0);
    EXPECT_TRUE(j["classes"].empty());
}

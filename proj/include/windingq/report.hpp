#pragma once

#include "windingq/congruence.hpp"

#include <filesystem>

namespace windingq {

enum class Tri { False, True, Unknown };
const char* to_string(Tri t);

enum class Prediction { ShaDivisible, ComponentGroupDivisible, Inconclusive };
const char* to_string(Prediction p);

inline const char* kBsdCaveat =
    "Conditional: assumes every newform of level dividing N whose L-function vanishes at s = 1 has an "
    "attached quotient of positive Mordell-Weil rank, as the rank part of the Birch and Swinnerton-Dyer "
    "conjecture predicts.";

struct NamedCheck {
    std::string name;
    Tri value = Tri::Unknown;
};

struct VisibilityChecklist {
    long level = 0;
    std::string label;
    Int q;
    bool vacuous = false;                    // q does not divide factor1
    std::vector<NamedCheck> checks;
    std::vector<AtkinLehnerSign> w_p;
    std::string partner;                     // lower-level class used for case (ii), if any
    long component_prime = 0;                // p with predicted q | c_p
    Prediction prediction = Prediction::Inconclusive;
    // Congruences are certified for the rational prime q only, not for a maximal ideal above it.
    bool rational_prime_only = true;
    std::string caveat = kBsdCaveat;

    Tri check(const std::string& name) const;
};

struct ClassAnalysis {
    std::size_t class_index = 0;
    std::optional<FactorReport> factors;
    std::vector<CongruenceReport> congruences;
    std::vector<PrimeEquivalence> equivalence;
    std::vector<VisibilityChecklist> visibility;
};

struct AnalyzeOptions {
    long bound = 0;                 // Hecke bound; 0 means the Sturm bound
    long max_prime = 97;            // raised automatically on separation failure
    std::optional<std::string> only_class;
    bool assume_irreducible = false;
    std::optional<std::filesystem::path> cache_dir;
};

struct AnalysisReport {
    long level = 0;
    std::size_t genus = 0;
    Int cusp_order;
    long projector_prime = 0;
    std::vector<IsotypicClass> classes;
    std::vector<ClassAnalysis> analyses;   // one per analysed class, in class order
    bool cache_hit = false;
};

// Mazur's criterion at prime level M: q does not divide 2 * numerator((M - 1)/12).
bool mazur_irreducible(long prime_level, const Int& q);

struct VisibilityInputs {
    long level = 0;
    const IsotypicClass* f = nullptr;
    Int factor1;
    Int q;
    // Old classes of newform level dividing N/p, with their coprime-index congruence order against f.
    struct Partner {
        const IsotypicClass* cls = nullptr;
        long p = 0;
        Int order;
    };
    std::vector<Partner> partners;
    bool assume_irreducible = false;
};

VisibilityChecklist visibility_checklist(const VisibilityInputs& in);

AnalysisReport analyze(long level, const AnalyzeOptions& opts = {});

} // namespace windingq

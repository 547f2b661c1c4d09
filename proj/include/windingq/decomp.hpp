#pragma once

#include "windingq/exactlin/poly.hpp"
#include "windingq/heckeop.hpp"

#include <optional>
#include <string>

namespace windingq {

struct FingerprintEntry {
    long ell = 0;
    ZPoly factor;   // irreducible factor of charpoly(T_ell) on the plus part of the class
    bool operator==(const FingerprintEntry& o) const { return ell == o.ell && factor == o.factor; }
};

struct AtkinLehnerSign {
    long q = 0;     // exact prime-power divisor of N
    int sign = 0;   // +1, -1, or 0 when W_q is not scalar on the class
};

struct IsotypicClass {
    std::string label;
    IntLattice lattice;   // H ∩ V, in H coordinates
    IntLattice plus;
    IntLattice minus;
    std::vector<FingerprintEntry> fingerprint;
    std::size_t degree = 0;         // degree of the Hecke eigenvalue field
    std::size_t multiplicity = 0;   // number of copies of the newform orbit
    bool is_new = false;
    std::optional<long> newform_level;
    std::vector<long> new_at;       // primes p || N at which the class is p-new
    std::vector<AtkinLehnerSign> atkin_lehner;
    bool rank_zero = false;

    std::size_t dim() const { return lattice.rank(); }
};

struct DecompOptions {
    long max_prime = 97;
};

// Classes ordered by label: new classes first (letters A, B, ... by dimension then fingerprint), then the
// old classes.
std::vector<IsotypicClass> isotypic_decomposition(const ManinSpace& space, HeckeCache& cache,
                                                  const DecompOptions& opts = {});

struct WindingData {
    RatVec e;                  // H coordinates
    Int order;                 // n, the least k with k e in H
    IntLattice te_scaled;      // n * Te
    IntLattice ime;            // Te ∩ H
    IntLattice ie;             // annihilator of e, in coordinates of the Hecke algebra basis
    long projector_prime = 0;

    // Te as the lattice (te_scaled / n).
    Int te_denominator() const { return order; }
};

WindingData winding_element(const ManinSpace& space, HeckeCache& cache, const HeckeAlgebra& algebra,
                            long max_prime = 97);

// Annihilator ideals, in coordinates of the Hecke algebra basis.
IntLattice annihilator(const HeckeAlgebra& algebra, const RatVec& v);
IntLattice annihilator(const HeckeAlgebra& algebra, const IntLattice& subspace);

// Components of v (H coordinates) in each class subspace.
std::vector<RatVec> project_onto_classes(const std::vector<IsotypicClass>& classes, const RatVec& v);
bool rank_zero_flag(const std::vector<IsotypicClass>& classes, std::size_t index, const WindingData& w);
void set_rank_zero_flags(std::vector<IsotypicClass>& classes, const WindingData& w);

// Returns (n Te, Ime) for a winding element with denominator n.
std::pair<IntLattice, IntLattice> winding_submodule(const HeckeAlgebra& algebra, const RatVec& e, const Int& n);

// {h in H : h t = 0 for t in I}, for an ideal given in coordinates of the algebra basis. The classes must
// decompose H.
IntLattice h_bracket(const HeckeAlgebra& algebra, const std::vector<IsotypicClass>& classes,
                     const IntLattice& ideal);

std::string class_letters(std::size_t index);

} // namespace windingq

#pragma once

#include "windingq/errors.hpp"
#include "windingq/exactlin/matrix.hpp"

#include <optional>

namespace windingq {

struct HnfResult {
    IntMatrix H;      // same shape as the input; nonzero rows first
    IntMatrix U;      // unimodular, U * M = H
    std::size_t rank = 0;
};

// Row Hermite normal form with positive pivots and entries above pivots reduced into [0, pivot).
HnfResult hnf_with_transform(const IntMatrix& m);
// Nonzero rows of the HNF only.
IntMatrix hnf(const IntMatrix& m);

struct ElemDivisors {
    std::vector<Int> divisors;  // d1 | d2 | ... , all >= 1
    std::size_t free_rank = 0;

    Int torsion_order() const;
    Int exponent() const;
    std::vector<Int> nontrivial() const;
};

// Invariant factors of the cokernel Z^cols / rowspan(m).
ElemDivisors snf(const IntMatrix& m);

class IntLattice {
public:
    explicit IntLattice(std::size_t ambient_dim = 0);

    static IntLattice from_generators(const IntMatrix& gens);
    static IntLattice from_generators(const std::vector<IntVec>& gens, std::size_t ambient_dim);
    static IntLattice full(std::size_t ambient_dim);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t rank() const { return basis_.rows(); }
    const IntMatrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool contains(const IntVec& v) const;
    bool contains(const IntLattice& other) const;
    bool in_span(const RatVec& v) const;
    // Integer coordinates with respect to basis(), or nullopt if v is not in the lattice.
    std::optional<IntVec> coordinates(const IntVec& v) const;
    // Rational coordinates of a vector in the span; throws std::domain_error otherwise.
    RatVec rational_coordinates(const RatVec& v) const;

    bool operator==(const IntLattice& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }
    bool operator!=(const IntLattice& o) const { return !(*this == o); }

private:
    std::size_t ambient_;
    IntMatrix basis_;
    std::vector<std::size_t> pivots_;
};

// {x in Z^rows : x * a = 0}, saturated by construction.
IntLattice integer_kernel(const IntMatrix& a);
IntLattice integer_kernel(const RatMatrix& a);

IntLattice saturate(const IntLattice& l);
IntLattice lattice_sum(const IntLattice& a, const IntLattice& b);
IntLattice lattice_intersect(const IntLattice& a, const IntLattice& b);
// Image of the lattice under x -> x * a.
IntLattice lattice_image(const IntLattice& l, const IntMatrix& a);
IntLattice scale(const IntLattice& l, const Int& s);

ElemDivisors quotient_invariants(const IntLattice& big, const IntLattice& small);
Rat generalized_index(const IntLattice& l1, const IntLattice& l2);

// Matrix of coordinates of each basis row of `sub` in the basis of `lat`; throws if not contained.
IntMatrix coordinates_in(const IntLattice& lat, const IntLattice& sub);

} // namespace windingq

#pragma once

#include "windingq/decomp.hpp"

namespace windingq {

// Distinct prime divisors of |n|, ascending.
std::vector<Int> prime_divisors(const Int& n);
Int odd_part(const Int& n);
// Odd part of a nonzero rational, as a rational.
Rat odd_part(const Rat& r);

// The projection H -> H/K onto Z^r given by x -> x P, with a left inverse R (R P = 1).
struct QuotientMap {
    IntMatrix P;   // dim x r
    IntMatrix R;   // r x dim
    std::size_t rank() const { return P.cols(); }
    IntLattice apply(const IntLattice& l) const;
    // Matrix on Z^r of an operator on H preserving K.
    IntMatrix induced(const IntMatrix& op) const;
};

QuotientMap quotient_by(const IntLattice& k);

// H ∩ (sum of the other class subspaces).
IntLattice kernel_K(const std::vector<IsotypicClass>& classes, std::size_t f);

struct FactorReport {
    std::string label;
    ElemDivisors factor1_divisors;
    Int factor1;
    ElemDivisors factor2_divisors;
    Int factor2;
    ElemDivisors denom_divisors;
    Int denom;
    Rat ratio_product;
    Rat ratio_index;
    std::string slack;
    // H/(H[I_e] + K) computed directly and through H/K.
    bool quotient_paths_agree = false;
    bool denom_divides_order = false;
    bool odd_parts_agree = false;
    bool complete = false;   // ratio_index filled in
};

inline const char* kSlackDescriptor = "exact up to powers of 2 and primes p with p^2 | N";

// [(H/K)+ : pi(Te)], zero when the ranks differ. Defined for every class.
Rat ratio_index(const ManinSpace& space, const std::vector<IsotypicClass>& classes, std::size_t f,
                const WindingData& w);

// Throws NotRankZero when f is not rank zero or a quotient has free rank.
FactorReport factor_orders(const ManinSpace& space, const HeckeAlgebra& algebra,
                           const std::vector<IsotypicClass>& classes, std::size_t f, const WindingData& w);
FactorReport l_ratio(const ManinSpace& space, const HeckeAlgebra& algebra,
                     const std::vector<IsotypicClass>& classes, std::size_t f, const WindingData& w);

} // namespace windingq

#pragma once

#include "windingq/factors.hpp"

namespace windingq {

// Integral q-expansions (a_1, ..., a_b) of a basis of the cusp forms with integer coefficients.
struct QExpLattice {
    long level = 0;
    long bound = 0;
    IntLattice forms;        // in Z^b
    IntMatrix coeffs;        // b x rank(T): row n-1 holds the coordinates of T_n in the algebra basis
    IntMatrix pairing;       // rank(T) x rank(forms): <t_i, f_j> = a_1(f_j | t_i)
    Int pairing_det() const;
};

// Throws BoundTooSmall when b is below the Sturm bound.
QExpLattice qexp_lattice(const HeckeAlgebra& algebra, HeckeCache& cache, long b);

// Forms killed by an ideal given in coordinates of the algebra basis.
IntLattice subspace_forms(const QExpLattice& qexp, const IntLattice& ideal);

struct CongruenceReport {
    std::string first;
    std::string second;
    long coprime_to = 0;   // nonzero when only indices coprime to this were kept
    ElemDivisors divisors;
    Int exponent;
    Int order;
    std::vector<Int> primes;
};

CongruenceReport congruence_module(const IntLattice& s1, const IntLattice& s2);
// Same, after dropping the coefficients a_n with gcd(n, N q) > 1.
CongruenceReport coprime_index_congruence(const IntLattice& s1, const IntLattice& s2, long level, long q);

struct PrimeEquivalence {
    Int q;
    bool divides_factor1 = false;
    bool divides_module = false;
    bool mismatch() const { return divides_factor1 != divides_module; }
};

// One entry per odd prime q with q^2 not dividing N that divides either side.
std::vector<PrimeEquivalence> factor_congruence_equivalence(long level, const Int& factor1, const Int& module_order);

// Ideal of the rank-positive part: the annihilator of every class that is not rank zero.
IntLattice rank_positive_ideal(const HeckeAlgebra& algebra, const std::vector<IsotypicClass>& classes);

} // namespace windingq

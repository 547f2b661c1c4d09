#pragma once

#include "windingq/exactlin/lattice.hpp"

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace windingq {

// Point (c:d) of P^1(Z/NZ), both residues in [0, N).
struct P1Elem {
    long c = 0;
    long d = 0;
    bool operator==(const P1Elem& o) const { return c == o.c && d == o.d; }
};

class P1List {
public:
    explicit P1List(long level);

    long level() const { return level_; }
    std::size_t size() const { return elems_.size(); }
    const P1Elem& operator[](std::size_t i) const { return elems_[i]; }
    const std::vector<P1Elem>& elements() const { return elems_; }
    // Position of the normalization of (c:d); -1 when gcd(c, d, N) != 1.
    long index(long c, long d) const;

private:
    long level_;
    std::vector<P1Elem> elems_;
    std::vector<std::int32_t> table_;
};

std::vector<P1Elem> p1_list(long level);

// p/q in lowest terms with q >= 0; infinity is 1/0.
struct Cusp {
    long num = 0;
    long den = 1;
    static Cusp infinity() { return Cusp{1, 0}; }
    static Cusp make(long p, long q);
    bool operator==(const Cusp& o) const { return num == o.num && den == o.den; }
};

bool cusps_equivalent(const Cusp& a, const Cusp& b, long level);
std::vector<Cusp> cusp_classes(long level);

long psi_index(long level);                // [SL2(Z) : Gamma0(N)]
long gcd_long(long a, long b);
long mod_long(long a, long m);             // representative in [0, m)

using SymbolCombo = std::vector<std::pair<P1Elem, long>>;

class ManinSpace {
public:
    static ManinSpace build(long level);

    long level() const { return level_; }
    const P1List& p1() const { return p1_; }
    std::size_t dim() const { return dim_; }
    std::size_t genus() const { return cuspidal_.rank() / 2; }
    const std::vector<Cusp>& cusps() const { return cusps_; }
    std::size_t cusp_index(const Cusp& x) const;

    // Rows: images of the basis of M in the free module on cusp classes.
    const IntMatrix& boundary() const { return boundary_; }
    // H inside Z^dim (M coordinates).
    const IntLattice& cuspidal() const { return cuspidal_; }
    const IntMatrix& star() const { return star_; }
    const IntMatrix& star_on_cuspidal() const { return star_h_; }

    // M coordinates of the Manin symbol (c:d); zero when gcd(c, d, N) != 1.
    IntVec symbol(long c, long d) const;
    void add_symbol(IntVec& acc, long c, long d, const Int& coeff) const;
    IntVec path(const Cusp& a, const Cusp& b) const;
    IntVec cusp_divisor(const IntVec& m) const;    // boundary of an element of M

    // Matrix on M of the map induced by a rule on Manin symbols; rule(c, d, acc) accumulates the image
    // of (c:d) into acc (M coordinates).
    IntMatrix induced(const std::function<void(long, long, IntVec&)>& rule) const;
    // Matrix on the basis of H of an operator on M preserving H.
    IntMatrix restrict_to_cuspidal(const IntMatrix& op) const;
    // M coordinates of an integral or rational vector given in H coordinates.
    RatVec cuspidal_to_ambient(const RatVec& h) const;
    RatVec ambient_to_cuspidal(const RatVec& m) const;

    // Generators used to express every symbol: free variables of the relation quotient.
    const std::vector<std::size_t>& free_symbols() const { return free_symbols_; }
    // Sparse coordinates (in M) of every P^1 point.
    const std::vector<std::vector<std::pair<std::uint32_t, Int>>>& symbol_table() const { return coords_; }

    // Reassemble a space from serialized pieces (used by the cache).
    static ManinSpace from_parts(long level, std::vector<std::vector<std::pair<std::uint32_t, Int>>> coords,
                                 std::vector<std::size_t> free_symbols, RatMatrix basis_change);
    const RatMatrix& basis_change() const { return basis_; }

private:
    explicit ManinSpace(long level) : level_(level), p1_(level) {}
    void finish();

    long level_;
    P1List p1_;
    std::size_t dim_ = 0;
    std::vector<Cusp> cusps_;
    std::vector<std::vector<std::pair<std::uint32_t, Int>>> coords_;
    std::vector<std::size_t> free_symbols_;
    RatMatrix basis_;        // rows: basis of M in free-variable coordinates; empty when the identity
    RatMatrix basis_inv_;
    IntMatrix boundary_;
    IntLattice cuspidal_;
    IntMatrix star_;
    IntMatrix star_h_;
};

ManinSpace build_presentation(long level);

// SL2(Z) matrix [a b; c d] whose bottom row reduces to (c:d) mod N.
struct Sl2Lift {
    long a, b, c, d;
};
Sl2Lift lift_to_sl2(long c, long d, long level);

// Coordinates of {x in L : x * iota = x}, returned as a sublattice of the ambient space of L.
IntLattice plus_part(const IntLattice& l, const IntMatrix& iota);
IntLattice minus_part(const IntLattice& l, const IntMatrix& iota);
// Matrix of x -> x * op on the basis of an op-stable lattice; throws NotStable.
IntMatrix restrict_operator(const IntLattice& l, const IntMatrix& op);

} // namespace windingq

#pragma once

#include "windingq/maninsym.hpp"

#include <map>
#include <memory>

namespace windingq {

struct Mat2 {
    long a, b, c, d;
};

// Merel's set: a > b >= 0, d > c >= 0, ad - bc = n.
std::vector<Mat2> heilbronn_matrices(long n);

struct HeckeOp {
    long index = 0;          // n for T_n, Q for W_Q
    IntMatrix ambient;       // on M; empty when only the restriction was formed
    IntMatrix cuspidal;      // on the basis of H
};

long sturm_bound(long level);
bool is_prime_long(long n);
std::vector<long> prime_factors(long n);

// Lazily computed Hecke operators on one space.
class HeckeCache {
public:
    explicit HeckeCache(const ManinSpace& space) : space_(&space) {}

    const ManinSpace& space() const { return *space_; }
    // T_n on M from Merel's set (no recurrences).
    IntMatrix merel_ambient(long n) const;
    const IntMatrix& ambient(long n);
    const IntMatrix& cuspidal(long n);
    HeckeOp op(long n);

    // Shared with any HeckeAlgebra built from this cache.
    std::shared_ptr<const IntMatrix> cuspidal_shared(long n);

    // Used by the cache to seed restricted operators.
    void seed_cuspidal(long n, IntMatrix m) { cusp_[n] = std::make_shared<const IntMatrix>(std::move(m)); }
    // Operators at prime index; the others follow from the multiplicative recurrences.
    std::map<long, IntMatrix> cuspidal_primes() const;

private:
    const ManinSpace* space_;
    std::map<long, IntMatrix> amb_;
    std::map<long, std::shared_ptr<const IntMatrix>> cusp_;
};

HeckeOp hecke_matrix(const ManinSpace& space, long n);

// W_Q from [Qa, b; N, Q] of determinant Q with the smallest |b|; throws NotExactDivisor.
Mat2 atkin_lehner_matrix(long level, long q);
HeckeOp atkin_lehner(const ManinSpace& space, long q);

// The Z-span of T_1, ..., T_b acting on H, stored through a faithful linear embedding
// t -> (first `embed_rows` rows of t).
class HeckeAlgebra {
public:
    static HeckeAlgebra build(HeckeCache& cache, long bound = 0);

    long level() const { return level_; }
    long bound() const { return bound_; }
    std::size_t rank() const { return lattice_.rank(); }
    std::size_t embed_rows() const { return embed_rows_; }
    const IntLattice& lattice() const { return lattice_; }
    const IntMatrix& generator(long n) const { return *ops_.at(static_cast<std::size_t>(n - 1)); }
    // rank x bound: basis element t_i = sum_n transform(i, n-1) T_n.
    const IntMatrix& transform() const { return transform_; }
    // bound x rank: T_n = sum_i coords(n-1, i) t_i.
    const IntMatrix& coords() const { return coords_; }

    IntVec embed(const IntMatrix& t) const;
    // Coordinates in the basis t_i of an operator in the algebra; throws std::domain_error otherwise.
    IntVec coordinates_of(const IntMatrix& t) const;
    // Operator on H of sum_i y_i t_i.
    IntMatrix element(const IntVec& y) const;
    // Operator on H of sum_n c_n T_n (c indexed from n = 1).
    IntMatrix combination(const IntVec& c) const;
    // Rows: v * t_i for an integral v.
    IntMatrix orbit_matrix(const IntVec& v) const;
    // Rows: the vectors v * t_i (i = 1..rank) for a vector v in H coordinates.
    RatMatrix orbit_matrix(const RatVec& v) const;

private:
    long level_ = 0;
    long bound_ = 0;
    std::size_t embed_rows_ = 0;
    std::vector<std::shared_ptr<const IntMatrix>> ops_;
    IntLattice lattice_;
    IntMatrix transform_;
    IntMatrix coords_;
};

} // namespace windingq

#pragma once

#include "windingq/exactlin/matrix.hpp"

namespace windingq {

struct Rref {
    RatMatrix r;                        // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots;    // pivot column of each row
    RatMatrix transform;                // transform * input = [r; 0]
};

Rref rref(const RatMatrix& a, bool with_transform = false);
std::size_t rank(const RatMatrix& a);
std::size_t rank(const IntMatrix& a);
Rat det(const RatMatrix& a);
Int det(const IntMatrix& a);
RatMatrix inverse(const RatMatrix& a);

// Solves X * a = b; throws std::domain_error when some row of b is outside the row space of a.
RatMatrix solve_left(const RatMatrix& a, const RatMatrix& b);
// Basis rows of {x : x * a = 0}.
RatMatrix rational_kernel(const RatMatrix& a);
// Basis rows (in rref) of the row space.
RatMatrix row_space(const RatMatrix& a);

} // namespace windingq

#pragma once

#include "windingq/exactlin/matrix.hpp"

#include <string>
#include <vector>

namespace windingq {

// Coefficient vectors, constant term first, no trailing zeros (the zero polynomial is empty).
using ZPoly = std::vector<Int>;
using QPoly = std::vector<Rat>;

std::size_t degree(const ZPoly& f);
std::size_t degree(const QPoly& f);
void trim(ZPoly& f);
void trim(QPoly& f);

ZPoly poly_mul(const ZPoly& a, const ZPoly& b);
QPoly poly_mul(const QPoly& a, const QPoly& b);
QPoly poly_add(const QPoly& a, const QPoly& b);
QPoly poly_sub(const QPoly& a, const QPoly& b);
QPoly to_qpoly(const ZPoly& f);
// Exact conversion; throws when some coefficient is not integral.
ZPoly to_zpoly(const QPoly& f);
ZPoly derivative(const ZPoly& f);

struct QDivMod {
    QPoly quot;
    QPoly rem;
};
QDivMod poly_divmod(const QPoly& a, const QPoly& b);
QPoly poly_monic(const QPoly& f);
QPoly poly_gcd(const QPoly& a, const QPoly& b);

// s*a + t*b = g with g the monic gcd.
struct QXgcd {
    QPoly g, s, t;
};
QXgcd poly_xgcd(const QPoly& a, const QPoly& b);

// True when b divides a over Z; the quotient is stored when requested.
bool poly_divides(const ZPoly& b, const ZPoly& a, ZPoly* quotient = nullptr);

// Radical of a monic integer polynomial (monic, integral by Gauss's lemma).
ZPoly squarefree_part(const ZPoly& f);

ZPoly charpoly(const IntMatrix& a);
// Minimal polynomial of a matrix known to be semisimple: the radical of its characteristic polynomial.
ZPoly semisimple_minpoly(const IntMatrix& a);

IntMatrix poly_eval(const ZPoly& f, const IntMatrix& a);
RatVec poly_apply(const QPoly& f, const RatVec& v, const IntMatrix& a);   // v * f(a)
RatVec poly_apply(const QPoly& f, const RatVec& v, const RatMatrix& a);

// Irreducible monic factors of a squarefree monic polynomial, sorted by (degree, coefficients).
std::vector<ZPoly> factor_squarefree_monic(const ZPoly& f);
// Distinct irreducible monic factors with their multiplicities.
std::vector<std::pair<ZPoly, std::size_t>> factor_monic(const ZPoly& f);

bool poly_less(const ZPoly& a, const ZPoly& b);
std::string poly_to_string(const ZPoly& f);

} // namespace windingq

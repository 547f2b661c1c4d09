#pragma once

// Independent reference computations used by the tests. None of these touch the library.

#include <array>
#include <cstdint>
#include <vector>

namespace oracle {

// Genus of X0(N) from the index, elliptic points and cusps.
long genus_x0(long n);
long cusp_count(long n);
long euler_phi(long n);
bool is_prime(long n);

// Weierstrass coefficients [a1, a2, a3, a4, a6].
using Curve = std::array<long, 5>;

inline constexpr Curve kCurve11a = {0, -1, 1, -10, -20};
inline constexpr Curve kCurve37a = {0, 0, 1, -1, 0};
inline constexpr Curve kCurve37b = {0, 1, 1, -23, -50};

// a_p = p + 1 - #E(F_p) by brute-force point counting (p of good reduction, or a bad p for the
// multiplicative-reduction sign).
long trace_of_frobenius(const Curve& e, long p);
// a[k] = a_k for 1 <= k <= n of the attached newform, for a curve of conductor `level`; a[0] is unused.
std::vector<long> coefficients(const Curve& e, long level, long n);

// L(E, 1) by the rapidly converging series 2 sum a_n/n exp(-2 pi n / sqrt(N)), valid for root number +1.
double l_value_at_one(const Curve& e, long level, long terms);
// Least positive real period, by the arithmetic-geometric mean.
double real_period(const Curve& e);

}  // namespace oracle

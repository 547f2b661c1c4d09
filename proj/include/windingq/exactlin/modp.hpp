#pragma once

#include "windingq/exactlin/matrix.hpp"

#include <cstdint>
#include <vector>

// Word-size prime-field helpers used by the multimodular and factoring code.
namespace windingq::modp {

constexpr std::uint64_t kLargePrimeStart = 2147483648ULL;  // 2^31

using Poly = std::vector<std::uint64_t>;  // constant term first, trimmed

std::uint64_t reduce(const Int& x, std::uint64_t p);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t inverse(std::uint64_t a, std::uint64_t p);
bool is_prime(std::uint64_t n);
std::uint64_t prev_prime(std::uint64_t n);   // largest prime < n
std::uint64_t next_prime(std::uint64_t n);   // smallest prime > n

void trim(Poly& f);
Poly from_zpoly(const std::vector<Int>& f, std::uint64_t p);
Poly mul(const Poly& a, const Poly& b, std::uint64_t p);
Poly sub(const Poly& a, const Poly& b, std::uint64_t p);
Poly rem(const Poly& a, const Poly& b, std::uint64_t p);
void divmod(const Poly& a, const Poly& b, std::uint64_t p, Poly& q, Poly& r);
Poly monic(const Poly& f, std::uint64_t p);
Poly gcd(const Poly& a, const Poly& b, std::uint64_t p);
// s*a + t*b = 1 for coprime a, b; deg s < deg b, deg t < deg a.
void xgcd(const Poly& a, const Poly& b, std::uint64_t p, Poly& s, Poly& t);
Poly derivative(const Poly& f, std::uint64_t p);
Poly powmod(const Poly& base, const Int& e, const Poly& mod, std::uint64_t p);

// Distinct-degree factorization of a squarefree monic polynomial: pairs (product of all irreducible
// factors of degree d, d).
std::vector<std::pair<Poly, std::size_t>> distinct_degree(const Poly& f, std::uint64_t p);
// Complete factorization of a squarefree monic polynomial into monic irreducibles (p odd).
std::vector<Poly> factor_squarefree(const Poly& f, std::uint64_t p);

// Rank of an integer matrix reduced mod p (p < 2^32); never exceeds the rank over Q.
std::size_t rank_mod(const IntMatrix& a, std::uint64_t p);

} // namespace windingq::modp

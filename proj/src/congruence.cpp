#include "windingq/congruence.hpp"

#include "windingq/errors.hpp"
#include "windingq/exactlin/rational.hpp"

#include <algorithm>
#include <numeric>

namespace windingq {

Int QExpLattice::pairing_det() const
{
    if (pairing.rows() != pairing.cols())
        return 0;
    if (pairing.rows() == 0)
        return 1;
    return det(pairing);
}

QExpLattice qexp_lattice(const HeckeAlgebra& algebra, HeckeCache& cache, long b)
{
    const long level = algebra.level();
    if (b < sturm_bound(level))
        throw BoundTooSmall("b = " + std::to_string(b) + " is below the Sturm bound " +
                            std::to_string(sturm_bound(level)) + " at level " + std::to_string(level));
    const std::size_t g = algebra.rank();
    const long full = std::max(b, algebra.bound());
    IntMatrix coeffs(static_cast<std::size_t>(full), g);
    for (long n = 1; n <= full; ++n) {
        const auto row = static_cast<std::size_t>(n - 1);
        if (n <= algebra.bound())
            coeffs.set_row(row, algebra.coords().row(row));
        else
            coeffs.set_row(row, algebra.coordinates_of(cache.cuspidal(n)));
    }

    QExpLattice out;
    out.level = level;
    out.bound = b;
    out.coeffs = coeffs.row_range(0, static_cast<std::size_t>(b));
    if (g == 0) {
        out.forms = IntLattice(static_cast<std::size_t>(b));
        out.pairing = IntMatrix(0, 0);
        return out;
    }
    // Saturating the span of the expansions gives every form with integral coefficients.
    const IntLattice all = saturate(IntLattice::from_generators(coeffs.transpose()));
    if (all.rank() != g)
        throw BoundTooSmall("expansions up to " + std::to_string(full) + " are dependent");
    const IntMatrix head = all.basis().transpose().row_range(0, static_cast<std::size_t>(algebra.bound()));
    out.pairing = algebra.transform() * head;
    IntMatrix cut(g, static_cast<std::size_t>(b));
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < static_cast<std::size_t>(b); ++j)
            cut(i, j) = all.basis()(i, j);
    out.forms = IntLattice::from_generators(cut);
    if (out.forms.rank() != g)
        throw BoundTooSmall("expansions up to " + std::to_string(b) + " are dependent");
    return out;
}

IntLattice subspace_forms(const QExpLattice& qexp, const IntLattice& ideal)
{
    if (ideal.rank() == 0 || qexp.forms.rank() == 0)
        return qexp.forms;
    // Rows y with c P y^T = 0 for every generator c of the ideal.
    const IntMatrix constraint = (ideal.basis() * qexp.pairing).transpose();
    const IntLattice y = integer_kernel(constraint);
    if (y.rank() == 0)
        return IntLattice(qexp.forms.ambient_dim());
    return IntLattice::from_generators(y.basis() * qexp.forms.basis());
}

namespace {

CongruenceReport report_from(const ElemDivisors& d)
{
    CongruenceReport r;
    r.divisors = d;
    r.order = d.torsion_order();
    r.exponent = d.exponent();
    r.primes = prime_divisors(r.order);
    return r;
}

} // namespace

CongruenceReport congruence_module(const IntLattice& s1, const IntLattice& s2)
{
    const IntLattice sum = lattice_sum(s1, s2);
    return report_from(quotient_invariants(saturate(sum), sum));
}

CongruenceReport coprime_index_congruence(const IntLattice& s1, const IntLattice& s2, long level, long q)
{
    const std::size_t b = s1.ambient_dim();
    std::vector<std::size_t> kept;
    for (std::size_t n = 1; n <= b; ++n)
        if (std::gcd(static_cast<long>(n), level * q) == 1)
            kept.push_back(n - 1);
    const std::size_t needed = lattice_sum(s1, s2).rank();
    if (kept.size() < needed)
        throw BoundTooSmall(std::to_string(kept.size()) + " coefficients coprime to " + std::to_string(level * q) +
                            " below " + std::to_string(b));
    IntMatrix proj(b, kept.size());
    for (std::size_t k = 0; k < kept.size(); ++k)
        proj(kept[k], k) = 1;
    CongruenceReport r = congruence_module(lattice_image(s1, proj), lattice_image(s2, proj));
    r.coprime_to = level * q;
    return r;
}

std::vector<PrimeEquivalence> factor_congruence_equivalence(long level, const Int& factor1, const Int& module_order)
{
    std::vector<Int> primes = prime_divisors(factor1);
    for (const auto& p : prime_divisors(module_order))
        primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    std::vector<PrimeEquivalence> out;
    const Int n(level);
    for (const auto& q : primes) {
        if (q == 2 || mpz_divisible_p(n.get_mpz_t(), Int(q * q).get_mpz_t()))
            continue;
        PrimeEquivalence e;
        e.q = q;
        e.divides_factor1 = mpz_divisible_p(factor1.get_mpz_t(), q.get_mpz_t()) != 0;
        e.divides_module = mpz_divisible_p(module_order.get_mpz_t(), q.get_mpz_t()) != 0;
        out.push_back(e);
    }
    return out;
}

IntLattice rank_positive_ideal(const HeckeAlgebra& algebra, const std::vector<IsotypicClass>& classes)
{
    if (classes.empty())
        return IntLattice::full(algebra.rank());
    IntLattice span(classes.front().lattice.ambient_dim());
    for (const auto& c : classes)
        if (!c.rank_zero)
            span = lattice_sum(span, c.lattice);
    return annihilator(algebra, saturate(span));
}

} // namespace windingq

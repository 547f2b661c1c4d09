#include "windingq/factors.hpp"

#include "windingq/errors.hpp"
#include "windingq/exactlin/rational.hpp"

#include <algorithm>
#include <random>

namespace windingq {

namespace {

bool probably_prime(const Int& n)
{
    return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

// Pollard-Brent; n odd composite.
Int find_factor(const Int& n)
{
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    for (;;) {
        Int c = Int(static_cast<unsigned long>(rng() % 1000000 + 1));
        Int y = Int(static_cast<unsigned long>(rng() % 1000000 + 2));
        Int x, ys, q = 1, g = 1;
        const unsigned long m = 64;
        unsigned long r = 1;
        auto f = [&](const Int& v) {
            Int t = v * v + c;
            mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
            return t;
        };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i)
                y = f(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    Int d = abs(x - y);
                    q = (q * d) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                Int d = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

void collect_primes(const Int& n, std::vector<Int>& out)
{
    if (n == 1)
        return;
    if (probably_prime(n)) {
        out.push_back(n);
        return;
    }
    Int d = find_factor(n);
    collect_primes(d, out);
    collect_primes(n / d, out);
}

} // namespace

std::vector<Int> prime_divisors(const Int& n)
{
    Int m = abs(n);
    std::vector<Int> out;
    if (m == 0)
        return out;
    for (unsigned long p = 2; p < 10000 && m > 1; ++p) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            out.push_back(Int(p));
            while (mpz_divisible_ui_p(m.get_mpz_t(), p))
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        }
    }
    collect_primes(m, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Int odd_part(const Int& n)
{
    Int m = abs(n);
    if (m == 0)
        return m;
    mp_bitcnt_t v = mpz_scan1(m.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), v);
    return m;
}

Rat odd_part(const Rat& r)
{
    Rat out(odd_part(Int(r.get_num())), odd_part(Int(r.get_den())));
    out.canonicalize();
    return out;
}

IntLattice QuotientMap::apply(const IntLattice& l) const
{
    return lattice_image(l, P);
}

IntMatrix QuotientMap::induced(const IntMatrix& op) const
{
    return R * op * P;
}

QuotientMap quotient_by(const IntLattice& k)
{
    const std::size_t dim = k.ambient_dim();
    QuotientMap q;
    IntLattice cols = k.rank() == 0 ? IntLattice::full(dim) : integer_kernel(k.basis().transpose());
    const std::size_t r = cols.rank();
    if (r == 0) {
        q.P = IntMatrix(dim, 0);
        q.R = IntMatrix(0, dim);
        return q;
    }
    q.P = cols.basis().transpose();
    // The columns of P span a saturated lattice, so the top block of its HNF is the identity.
    HnfResult h = hnf_with_transform(q.P);
    q.R = h.U.row_range(0, r);
    if (q.R * q.P != IntMatrix::identity(r))
        throw std::logic_error("quotient_by: complement is not saturated");
    return q;
}

IntLattice kernel_K(const std::vector<IsotypicClass>& classes, std::size_t f)
{
    const std::size_t dim = classes.at(f).lattice.ambient_dim();
    IntLattice k(dim);
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (i != f)
            k = lattice_sum(k, classes[i].lattice);
    return saturate(k);
}

namespace {

Rat index_in_quotient(const ManinSpace& space, const QuotientMap& q, const WindingData& w)
{
    const IntLattice plus = plus_part(IntLattice::full(q.rank()), q.induced(space.star_on_cuspidal()));
    const IntLattice te = q.apply(w.te_scaled);
    Rat gi = generalized_index(plus, te);
    Int scale_factor;
    mpz_pow_ui(scale_factor.get_mpz_t(), w.order.get_mpz_t(), te.rank());
    return gi / Rat(scale_factor);
}

} // namespace

Rat ratio_index(const ManinSpace& space, const std::vector<IsotypicClass>& classes, std::size_t f,
                const WindingData& w)
{
    return index_in_quotient(space, quotient_by(kernel_K(classes, f)), w);
}

FactorReport factor_orders(const ManinSpace& space, const HeckeAlgebra& algebra,
                           const std::vector<IsotypicClass>& classes, std::size_t f, const WindingData& w)
{
    const IsotypicClass& cls = classes.at(f);
    if (!cls.rank_zero)
        throw NotRankZero("class " + cls.label);
    const std::size_t dim = cls.lattice.ambient_dim();
    const IntMatrix& iota = space.star_on_cuspidal();

    FactorReport rep;
    rep.label = cls.label;
    rep.slack = kSlackDescriptor;

    const IntLattice h_plus = plus_part(IntLattice::full(dim), iota);
    const IntLattice he = h_bracket(algebra, classes, w.ie);
    const IntLattice he_plus = plus_part(he, iota);
    const IntLattice k = kernel_K(classes, f);
    const IntLattice k_plus = plus_part(k, iota);

    rep.factor1_divisors = quotient_invariants(h_plus, lattice_sum(he_plus, k_plus));
    if (rep.factor1_divisors.free_rank > 0)
        throw NotRankZero("H+/(H[I_e]+ + K+) is infinite for class " + cls.label);
    rep.factor1 = rep.factor1_divisors.torsion_order();

    const IntLattice inner = lattice_sum(w.ime, lattice_intersect(he_plus, k_plus));
    rep.factor2_divisors = quotient_invariants(he_plus, inner);
    if (rep.factor2_divisors.free_rank > 0)
        throw NotRankZero("second quotient is infinite for class " + cls.label);
    rep.factor2 = rep.factor2_divisors.torsion_order();

    const QuotientMap q = quotient_by(k);
    const IntLattice pi_te = q.apply(w.te_scaled);
    const IntLattice pi_ime = q.apply(scale(w.ime, w.order));
    rep.denom_divisors = quotient_invariants(pi_te, pi_ime);
    if (rep.denom_divisors.free_rank > 0)
        throw NotRankZero("pi(Te)/pi(Ime) is infinite for class " + cls.label);
    rep.denom = rep.denom_divisors.torsion_order();
    rep.denom_divides_order = mpz_divisible_p(w.order.get_mpz_t(), rep.denom.get_mpz_t()) != 0;

    rep.ratio_product = Rat(rep.factor1 * rep.factor2, rep.denom);
    rep.ratio_product.canonicalize();

    const ElemDivisors direct = quotient_invariants(IntLattice::full(dim), lattice_sum(he, k));
    const ElemDivisors via_quotient = quotient_invariants(IntLattice::full(q.rank()), q.apply(he));
    rep.quotient_paths_agree = direct.free_rank == via_quotient.free_rank &&
                               direct.torsion_order() == via_quotient.torsion_order();
    return rep;
}

FactorReport l_ratio(const ManinSpace& space, const HeckeAlgebra& algebra,
                     const std::vector<IsotypicClass>& classes, std::size_t f, const WindingData& w)
{
    FactorReport rep = factor_orders(space, algebra, classes, f, w);
    rep.ratio_index = ratio_index(space, classes, f, w);
    rep.complete = true;
    rep.odd_parts_agree = rep.ratio_index != 0 && odd_part(rep.ratio_index) == odd_part(rep.ratio_product);
    return rep;
}

} // namespace windingq

#include "windingq/decomp.hpp"

#include "windingq/errors.hpp"
#include "windingq/exactlin/modp.hpp"
#include "windingq/exactlin/rational.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace windingq {

std::string class_letters(std::size_t index)
{
    std::string s;
    std::size_t k = index + 1;
    while (k > 0) {
        --k;
        s.insert(s.begin(), static_cast<char>('A' + k % 26));
        k /= 26;
    }
    return s;
}

namespace {

struct Block {
    IntLattice plus;
    IntLattice minus;
    std::vector<FingerprintEntry> fingerprint;
    std::size_t multiplicity = 0;
    bool irreducible = false;
};

// Sublattice of l killed by f(op), in ambient coordinates.
IntLattice poly_kernel(const IntLattice& l, const IntMatrix& op, const ZPoly& f)
{
    if (l.rank() == 0)
        return l;
    IntMatrix r = restrict_operator(l, op);
    IntLattice k = integer_kernel(poly_eval(f, r));
    if (k.rank() == 0)
        return IntLattice(l.ambient_dim());
    return IntLattice::from_generators(k.basis() * l.basis());
}

long count_divisors(long n)
{
    long c = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0)
            ++c;
    return c;
}

long valuation(long n, long p)
{
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

struct Newness {
    bool consistent = true;
    std::vector<long> new_at;
    std::vector<long> old_at;
};

// For each p || N decides whether U_p^2 = 1 (p-new) or U_p^2 - 1 is invertible (p-old) on the block.
Newness classify_newness(const IntLattice& plus, HeckeCache& cache, long level)
{
    Newness out;
    for (long p : prime_factors(level)) {
        if (valuation(level, p) != 1)
            continue;
        IntMatrix u = restrict_operator(plus, cache.cuspidal(p));
        IntMatrix m = u * u;
        for (std::size_t i = 0; i < m.rows(); ++i)
            m(i, i) -= 1;
        if (m.is_zero())
            out.new_at.push_back(p);
        else if (rank(m) == m.rows())
            out.old_at.push_back(p);
        else
            out.consistent = false;
    }
    return out;
}

// Multiplicities sigma_0(N/M) over levels M compatible with the observed newness pattern.
std::set<long> admissible_multiplicities(long level, const Newness& nw)
{
    std::set<long> out;
    for (long m = 1; m <= level; ++m) {
        if (level % m != 0)
            continue;
        bool ok = true;
        for (long p : nw.new_at)
            if (m % p != 0)
                ok = false;
        for (long p : nw.old_at)
            if (m % p == 0)
                ok = false;
        if (ok)
            out.insert(count_divisors(level / m));
    }
    return out;
}

bool fingerprint_less(const std::vector<FingerprintEntry>& a, const std::vector<FingerprintEntry>& b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const FingerprintEntry& x, const FingerprintEntry& y) {
                                            if (x.ell != y.ell)
                                                return x.ell < y.ell;
                                            return poly_less(x.factor, y.factor);
                                        });
}

} // namespace

std::vector<IsotypicClass> isotypic_decomposition(const ManinSpace& space, HeckeCache& cache,
                                                  const DecompOptions& opts)
{
    const long level = space.level();
    const std::size_t dim = space.cuspidal().rank();
    std::vector<IsotypicClass> classes;
    if (dim == 0)
        return classes;
    const IntMatrix& iota = space.star_on_cuspidal();
    const IntLattice h = IntLattice::full(dim);

    std::vector<Block> blocks(1);
    blocks[0].plus = plus_part(h, iota);
    blocks[0].minus = minus_part(h, iota);

    bool settled = false;
    for (long ell = 2; ell <= opts.max_prime && !settled; ++ell) {
        if (!is_prime_long(ell) || level % ell == 0)
            continue;
        const IntMatrix& t = cache.cuspidal(ell);
        std::vector<Block> next;
        for (auto& b : blocks) {
            if (b.irreducible) {
                next.push_back(std::move(b));
                continue;
            }
            IntMatrix tp = restrict_operator(b.plus, t);
            auto facs = factor_monic(charpoly(tp));
            for (const auto& [f, e] : facs) {
                Block sub;
                if (facs.size() == 1) {
                    sub.plus = b.plus;
                    sub.minus = b.minus;
                } else {
                    sub.plus = poly_kernel(b.plus, t, f);
                    sub.minus = poly_kernel(b.minus, t, f);
                }
                sub.fingerprint = b.fingerprint;
                sub.fingerprint.push_back({ell, f});
                sub.multiplicity = e;
                sub.irreducible = e == 1;
                if (sub.plus.rank() != sub.minus.rank())
                    throw SeparationFailure("sign parts of a block differ in rank at level " + std::to_string(level));
                next.push_back(std::move(sub));
            }
        }
        blocks = std::move(next);

        settled = true;
        for (const auto& b : blocks) {
            if (b.irreducible)
                continue;
            Newness nw = classify_newness(b.plus, cache, level);
            if (!nw.consistent ||
                !admissible_multiplicities(level, nw).count(static_cast<long>(b.multiplicity))) {
                settled = false;
                break;
            }
        }
    }
    if (!settled)
        throw SeparationFailure("primes up to " + std::to_string(opts.max_prime) + " do not separate level " +
                                std::to_string(level));

    for (auto& b : blocks) {
        IsotypicClass c;
        c.plus = b.plus;
        c.minus = b.minus;
        c.lattice = saturate(lattice_sum(b.plus, b.minus));
        c.fingerprint = b.fingerprint;
        c.multiplicity = b.multiplicity;
        c.degree = degree(b.fingerprint.back().factor);
        Newness nw = classify_newness(b.plus, cache, level);
        c.new_at = nw.new_at;
        c.is_new = c.multiplicity == 1;
        bool squarefree = true;
        for (long p : prime_factors(level))
            if (valuation(level, p) > 1)
                squarefree = false;
        if (c.is_new) {
            c.newform_level = level;
        } else if (squarefree) {
            long m = 1;
            for (long p : nw.new_at)
                m *= p;
            c.newform_level = m;
        }
        classes.push_back(std::move(c));
    }

    // Atkin-Lehner signs for every exact prime-power divisor.
    for (long p : prime_factors(level)) {
        long q = 1;
        while (level % (q * p) == 0)
            q *= p;
        const IntMatrix w = atkin_lehner(space, q).cuspidal;
        for (auto& c : classes) {
            IntMatrix r = restrict_operator(c.plus, w);
            int sign = 0;
            if (r == IntMatrix::identity(r.rows()))
                sign = 1;
            else if (r == Int(-1) * IntMatrix::identity(r.rows()))
                sign = -1;
            c.atkin_lehner.push_back({q, sign});
        }
    }

    auto key_less = [](const IsotypicClass& a, const IsotypicClass& b) {
        if (a.is_new != b.is_new)
            return a.is_new;
        if (a.dim() != b.dim())
            return a.dim() < b.dim();
        return fingerprint_less(a.fingerprint, b.fingerprint);
    };
    std::sort(classes.begin(), classes.end(), key_less);
    std::size_t new_count = 0, old_count = 0;
    for (auto& c : classes) {
        if (c.is_new)
            c.label = std::to_string(level) + class_letters(new_count++);
        else
            c.label = std::to_string(level) + "-old" + std::to_string(++old_count);
    }
    return classes;
}

// ---------------------------------------------------------------------------------------------

IntLattice annihilator(const HeckeAlgebra& algebra, const RatVec& v)
{
    const std::size_t g = algebra.rank();
    if (g == 0)
        return IntLattice(0);
    RatMatrix orbit = algebra.orbit_matrix(v);
    return integer_kernel(orbit);
}

namespace {

constexpr std::uint64_t kRankPrime = 2147483629;   // largest prime below 2^31

IntVec random_combination(const IntMatrix& rows, std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> coeff(-7, 7);
    IntVec v(rows.cols());
    for (std::size_t i = 0; i < rows.rows(); ++i) {
        const Int c = coeff(rng);
        if (c == 0)
            continue;
        for (std::size_t j = 0; j < rows.cols(); ++j)
            if (rows(i, j) != 0)
                mpz_addmul(v[j].get_mpz_t(), c.get_mpz_t(), rows(i, j).get_mpz_t());
    }
    return v;
}

IntMatrix hstack(const std::vector<IntMatrix>& blocks)
{
    std::size_t cols = 0;
    for (const auto& b : blocks)
        cols += b.cols();
    IntMatrix out(blocks.front().rows(), cols);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(i, off + j) = b(i, j);
        off += b.cols();
    }
    return out;
}

} // namespace

IntLattice annihilator(const HeckeAlgebra& algebra, const IntLattice& subspace)
{
    const std::size_t g = algebra.rank();
    if (g == 0)
        return IntLattice(0);
    const std::size_t d = subspace.rank();
    if (d == 0)
        return IntLattice::full(g);
    // T is commutative, so ann(V) = ann(w_1) ∩ ... ∩ ann(w_k) once the orbits T w_j span V.
    std::mt19937_64 rng(d);
    std::vector<IntMatrix> orbits;
    IntMatrix span(0, subspace.ambient_dim());
    std::size_t next_row = 0;
    while (true) {
        const IntVec w = orbits.size() < 2 ? random_combination(subspace.basis(), rng)
                                           : subspace.basis().row(next_row++);
        orbits.push_back(algebra.orbit_matrix(w));
        span = vstack(span, orbits.back());
        // Every basis row used means the orbits contain V itself.
        if (next_row == d || modp::rank_mod(span, kRankPrime) == d)
            break;
    }
    return integer_kernel(hstack(orbits));
}

namespace {

// Sublattice of a T-stable part killed by the ideal whose generators are sum_n coeffs(j, n) T_n.
IntLattice part_bracket(const HeckeAlgebra& algebra, const IntMatrix& coeffs, const IntLattice& part, bool field)
{
    if (part.rank() == 0)
        return part;
    const std::size_t b = coeffs.cols();
    if (field) {
        // T acts on the part through a field, so each generator is zero or injective there.
        const IntVec w = part.basis().row(0);
        IntMatrix orbit(b, w.size());
        for (std::size_t n = 0; n < b; ++n)
            orbit.set_row(n, vec_mul(w, algebra.generator(static_cast<long>(n + 1))));
        return (coeffs * orbit).is_zero() ? part : IntLattice(part.ambient_dim());
    }
    const std::size_t d = part.rank();
    std::vector<IntMatrix> restricted(b);
    for (std::size_t n = 0; n < b; ++n)
        restricted[n] = restrict_operator(part, algebra.generator(static_cast<long>(n + 1)));
    IntMatrix stacked(d, coeffs.rows() * d);
    for (std::size_t j = 0; j < coeffs.rows(); ++j)
        for (std::size_t n = 0; n < b; ++n) {
            const Int& c = coeffs(j, n);
            if (c == 0)
                continue;
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t i = 0; i < d; ++i)
                    mpz_addmul(stacked(r, j * d + i).get_mpz_t(), c.get_mpz_t(), restricted[n](r, i).get_mpz_t());
        }
    const IntLattice y = integer_kernel(stacked);
    if (y.rank() == 0)
        return IntLattice(part.ambient_dim());
    return IntLattice::from_generators(y.basis() * part.basis());
}

} // namespace

IntLattice h_bracket(const HeckeAlgebra& algebra, const std::vector<IsotypicClass>& classes, const IntLattice& ideal)
{
    const std::size_t dim = classes.empty() ? 0 : classes.front().lattice.ambient_dim();
    if (ideal.rank() == 0 || dim == 0)
        return IntLattice::full(dim);
    const IntMatrix coeffs = ideal.basis() * algebra.transform();
    // H[I] tensor Q is the direct sum of the pieces V+[I] and V-[I] over the classes.
    IntLattice sum(dim);
    for (const auto& c : classes) {
        const bool field = c.multiplicity == 1;
        sum = lattice_sum(sum, part_bracket(algebra, coeffs, c.plus, field));
        sum = lattice_sum(sum, part_bracket(algebra, coeffs, c.minus, field));
    }
    return saturate(sum);
}

std::vector<RatVec> project_onto_classes(const std::vector<IsotypicClass>& classes, const RatVec& v)
{
    const std::size_t dim = v.size();
    IntMatrix stacked(0, dim);
    for (const auto& c : classes)
        stacked = vstack(stacked, c.lattice.basis());
    if (stacked.rows() != dim)
        throw SeparationFailure("class subspaces do not span H");
    RatMatrix rhs(1, dim);
    rhs.set_row(0, v);
    RatMatrix x = solve_left(to_rat(stacked), rhs);
    std::vector<RatVec> out;
    std::size_t off = 0;
    for (const auto& c : classes) {
        RatVec part(dim);
        for (std::size_t i = 0; i < c.lattice.rank(); ++i) {
            const Rat& coeff = x(0, off + i);
            if (coeff == 0)
                continue;
            for (std::size_t j = 0; j < dim; ++j)
                part[j] += coeff * c.lattice.basis()(i, j);
        }
        off += c.lattice.rank();
        out.push_back(std::move(part));
    }
    return out;
}

bool rank_zero_flag(const std::vector<IsotypicClass>& classes, std::size_t index, const WindingData& w)
{
    auto parts = project_onto_classes(classes, w.e);
    for (const auto& x : parts[index])
        if (x != 0)
            return true;
    return false;
}

void set_rank_zero_flags(std::vector<IsotypicClass>& classes, const WindingData& w)
{
    if (classes.empty())
        return;
    auto parts = project_onto_classes(classes, w.e);
    for (std::size_t i = 0; i < classes.size(); ++i)
        classes[i].rank_zero = std::any_of(parts[i].begin(), parts[i].end(), [](const Rat& x) { return x != 0; });
}

std::pair<IntLattice, IntLattice> winding_submodule(const HeckeAlgebra& algebra, const RatVec& e, const Int& n)
{
    const std::size_t dim = e.size();
    IntVec ne(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const Rat r = e[i] * n;
        ne[i] = r.get_num();
    }
    std::vector<IntVec> gens;
    for (long n = 1; n <= algebra.bound(); ++n)
        gens.push_back(vec_mul(ne, algebra.generator(n)));
    IntLattice te = IntLattice::from_generators(gens, dim);
    IntLattice inter = lattice_intersect(te, scale(IntLattice::full(dim), n));
    IntMatrix b = inter.basis();
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            mpz_divexact(b(i, j).get_mpz_t(), b(i, j).get_mpz_t(), n.get_mpz_t());
    IntLattice ime = b.rows() == 0 ? IntLattice(dim) : IntLattice::from_generators(b);
    return {te, ime};
}

WindingData winding_element(const ManinSpace& space, HeckeCache& cache, const HeckeAlgebra& algebra,
                            long max_prime)
{
    const long level = space.level();
    const std::size_t dim = space.cuspidal().rank();
    WindingData w;
    if (dim == 0) {
        w.order = 1;
        w.te_scaled = IntLattice(0);
        w.ime = IntLattice(0);
        w.ie = IntLattice(0);
        return w;
    }
    const IntVec x = space.path(Cusp{0, 1}, Cusp::infinity());
    for (long ell = 2; ell <= max_prime; ++ell) {
        if (!is_prime_long(ell) || level % ell == 0)
            continue;
        const IntMatrix& tm = cache.ambient(ell);
        const IntMatrix& th = cache.cuspidal(ell);
        const ZPoly cm = charpoly(tm);
        const ZPoly ch = charpoly(th);
        ZPoly cb;
        if (!poly_divides(ch, cm, &cb))
            throw ProjectorFailure("cuspidal characteristic polynomial does not divide the ambient one");
        const ZPoly mc = squarefree_part(ch);
        QXgcd xg = poly_xgcd(to_qpoly(cb), to_qpoly(mc));
        if (xg.g.size() != 1)
            continue;
        // y = x cb(T) lies in H; e = y u(T) with u cb = 1 mod mc.
        RatVec y = poly_apply(to_qpoly(cb), to_rat(x), tm);
        if (!space.cuspidal().in_span(y))
            throw ProjectorFailure("boundary part not annihilated at ell = " + std::to_string(ell));
        RatVec yh = space.ambient_to_cuspidal(y);
        w.e = poly_apply(xg.s, yh, th);
        w.projector_prime = ell;
        break;
    }
    if (w.projector_prime == 0)
        throw ProjectorFailure("no prime up to " + std::to_string(max_prime) + " separates cuspidal and boundary parts");

    Int n = 1;
    for (const auto& c : w.e)
        mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), c.get_den_mpz_t());
    w.order = n;
    auto [te, ime] = winding_submodule(algebra, w.e, n);
    w.te_scaled = std::move(te);
    w.ime = std::move(ime);
    w.ie = annihilator(algebra, w.e);
    return w;
}

} // namespace windingq

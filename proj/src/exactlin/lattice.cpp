#include "windingq/exactlin/lattice.hpp"

#include "windingq/exactlin/rational.hpp"

#include <algorithm>

namespace windingq {

namespace {

struct Row {
    IntVec v;
    IntVec u;
    std::size_t piv = 0;
};

std::size_t first_nonzero(const IntVec& v, std::size_t from)
{
    for (std::size_t j = from; j < v.size(); ++j)
        if (v[j] != 0)
            return j;
    return v.size();
}

void submul(IntVec& target, const IntVec& src, const Int& q, std::size_t from)
{
    for (std::size_t j = from; j < target.size(); ++j)
        if (src[j] != 0)
            mpz_submul(target[j].get_mpz_t(), q.get_mpz_t(), src[j].get_mpz_t());
}

// Brings r's entry at b's pivot column into [0, pivot).
void reduce_against(Row& r, const Row& b, bool track)
{
    const Int& p = b.v[b.piv];
    const Int& x = r.v[b.piv];
    if (x >= 0 && x < p)
        return;
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
    submul(r.v, b.v, q, b.piv);
    if (track)
        submul(r.u, b.u, q, 0);
}

class HnfBuilder {
public:
    HnfBuilder(std::size_t cols, bool track) : cols_(cols), track_(track) {}

    void insert(IntVec v, IntVec u)
    {
        Row r{std::move(v), std::move(u), 0};
        std::size_t col = 0;
        std::size_t bi = 0;
        while (true) {
            col = first_nonzero(r.v, col);
            if (col == cols_) {
                kernel.push_back(std::move(r.u));
                return;
            }
            while (bi < basis.size() && basis[bi].piv < col)
                ++bi;
            if (bi < basis.size() && basis[bi].piv == col) {
                Row& b = basis[bi];
                const Int& bp = b.v[col];
                if (mpz_divisible_p(r.v[col].get_mpz_t(), bp.get_mpz_t())) {
                    Int q = r.v[col] / bp;
                    submul(r.v, b.v, q, col);
                    if (track_)
                        submul(r.u, b.u, q, 0);
                } else {
                    combine(b, r, col);
                    for (std::size_t k = bi + 1; k < basis.size(); ++k)
                        reduce_against(b, basis[k], track_);
                }
                ++col;
                ++bi;
            } else {
                if (r.v[col] < 0) {
                    for (auto& x : r.v)
                        x = -x;
                    for (auto& x : r.u)
                        x = -x;
                }
                r.piv = col;
                for (std::size_t k = bi; k < basis.size(); ++k)
                    reduce_against(r, basis[k], track_);
                basis.insert(basis.begin() + static_cast<std::ptrdiff_t>(bi), std::move(r));
                return;
            }
        }
    }

    void finalize()
    {
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t k = i + 1; k < basis.size(); ++k)
                reduce_against(basis[i], basis[k], track_);
    }

    std::vector<Row> basis;
    std::vector<IntVec> kernel;

private:
    // (b, r) <- (s b + t r, (bp/g) r - (rp/g) b) where g = s bp + t rp = gcd.
    void combine(Row& b, Row& r, std::size_t col)
    {
        Int g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), b.v[col].get_mpz_t(), r.v[col].get_mpz_t());
        Int a = b.v[col] / g;
        Int c = r.v[col] / g;
        auto mix = [&](IntVec& bv, IntVec& rv, std::size_t from) {
            Int nb, nr;
            for (std::size_t j = from; j < bv.size(); ++j) {
                if (bv[j] == 0 && rv[j] == 0)
                    continue;
                nb = s * bv[j] + t * rv[j];
                nr = a * rv[j] - c * bv[j];
                bv[j].swap(nb);
                rv[j].swap(nr);
            }
        };
        mix(b.v, r.v, col);
        if (track_)
            mix(b.u, r.u, 0);
    }

    std::size_t cols_;
    bool track_;
};

std::vector<std::size_t> compute_pivots(const IntMatrix& b)
{
    std::vector<std::size_t> piv(b.rows());
    for (std::size_t i = 0; i < b.rows(); ++i) {
        std::size_t j = 0;
        while (j < b.cols() && b(i, j) == 0)
            ++j;
        piv[i] = j;
    }
    return piv;
}

void check_ambient(const IntLattice& a, const IntLattice& b, const char* what)
{
    if (a.ambient_dim() != b.ambient_dim())
        throw AmbientMismatch(std::string(what) + ": " + std::to_string(a.ambient_dim()) + " vs " +
                              std::to_string(b.ambient_dim()));
}

} // namespace

HnfResult hnf_with_transform(const IntMatrix& m)
{
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    HnfBuilder builder(cols, true);
    for (std::size_t i = 0; i < rows; ++i) {
        IntVec u(rows);
        u[i] = 1;
        builder.insert(m.row(i), std::move(u));
    }
    builder.finalize();
    HnfResult out;
    out.rank = builder.basis.size();
    out.H = IntMatrix(rows, cols);
    out.U = IntMatrix(rows, rows);
    std::size_t r = 0;
    for (const auto& row : builder.basis) {
        out.H.set_row(r, row.v);
        out.U.set_row(r, row.u);
        ++r;
    }
    for (const auto& u : builder.kernel)
        out.U.set_row(r++, u);
    return out;
}

IntMatrix hnf(const IntMatrix& m)
{
    HnfBuilder builder(m.cols(), false);
    for (std::size_t i = 0; i < m.rows(); ++i)
        builder.insert(m.row(i), {});
    builder.finalize();
    IntMatrix h(builder.basis.size(), m.cols());
    for (std::size_t i = 0; i < builder.basis.size(); ++i)
        h.set_row(i, builder.basis[i].v);
    return h;
}

Int ElemDivisors::torsion_order() const
{
    Int p = 1;
    for (const auto& d : divisors)
        p *= d;
    return p;
}

Int ElemDivisors::exponent() const
{
    return divisors.empty() ? Int(1) : divisors.back();
}

std::vector<Int> ElemDivisors::nontrivial() const
{
    std::vector<Int> out;
    for (const auto& d : divisors)
        if (d != 1)
            out.push_back(d);
    return out;
}

ElemDivisors snf(const IntMatrix& m)
{
    ElemDivisors out;
    IntMatrix a = hnf(m);
    const std::size_t r = a.rows();
    while (true) {
        bool diagonal = true;
        for (std::size_t i = 0; i < a.rows() && diagonal; ++i) {
            std::size_t nz = 0;
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (a(i, j) != 0)
                    ++nz;
            diagonal = nz == 1;
        }
        if (diagonal)
            break;
        a = hnf(a.transpose());
    }
    std::vector<Int> d;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0)
                d.push_back(abs(a(i, j)));
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            Int g = gcd(d[i], d[j]);
            Int l = d[i] / g * d[j];
            d[i] = g;
            d[j] = l;
        }
    out.divisors = std::move(d);
    out.free_rank = m.cols() - r;
    return out;
}

IntLattice::IntLattice(std::size_t ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

IntLattice IntLattice::from_generators(const IntMatrix& gens)
{
    IntLattice l(gens.cols());
    l.basis_ = hnf(gens);
    if (l.basis_.rows() == 0)
        l.basis_ = IntMatrix(0, gens.cols());
    l.pivots_ = compute_pivots(l.basis_);
    return l;
}

IntLattice IntLattice::from_generators(const std::vector<IntVec>& gens, std::size_t ambient_dim)
{
    IntMatrix m(0, ambient_dim);
    for (const auto& g : gens)
        m.append_row(g);
    if (gens.empty())
        return IntLattice(ambient_dim);
    return from_generators(m);
}

IntLattice IntLattice::full(std::size_t ambient_dim)
{
    IntLattice l(ambient_dim);
    l.basis_ = IntMatrix::identity(ambient_dim);
    l.pivots_ = compute_pivots(l.basis_);
    return l;
}

std::optional<IntVec> IntLattice::coordinates(const IntVec& v) const
{
    if (v.size() != ambient_)
        throw AmbientMismatch("coordinates: vector length");
    IntVec r = v;
    IntVec c(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
        const std::size_t p = pivots_[i];
        const Int& piv = basis_(i, p);
        if (r[p] == 0)
            continue;
        if (!mpz_divisible_p(r[p].get_mpz_t(), piv.get_mpz_t()))
            return std::nullopt;
        c[i] = r[p] / piv;
        const Int* br = basis_.row_ptr(i);
        for (std::size_t j = p; j < ambient_; ++j)
            if (br[j] != 0)
                mpz_submul(r[j].get_mpz_t(), c[i].get_mpz_t(), br[j].get_mpz_t());
    }
    for (const auto& x : r)
        if (x != 0)
            return std::nullopt;
    return c;
}

RatVec IntLattice::rational_coordinates(const RatVec& v) const
{
    if (v.size() != ambient_)
        throw AmbientMismatch("rational_coordinates: vector length");
    RatVec r = v;
    RatVec c(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
        const std::size_t p = pivots_[i];
        if (r[p] == 0)
            continue;
        c[i] = r[p] / Rat(basis_(i, p));
        for (std::size_t j = p; j < ambient_; ++j)
            if (basis_(i, j) != 0)
                r[j] -= c[i] * basis_(i, j);
    }
    for (const auto& x : r)
        if (x != 0)
            throw std::domain_error("rational_coordinates: vector outside the span");
    return c;
}

bool IntLattice::contains(const IntVec& v) const
{
    return coordinates(v).has_value();
}

bool IntLattice::contains(const IntLattice& other) const
{
    check_ambient(*this, other, "contains");
    for (std::size_t i = 0; i < other.rank(); ++i)
        if (!contains(other.basis().row(i)))
            return false;
    return true;
}

bool IntLattice::in_span(const RatVec& v) const
{
    try {
        rational_coordinates(v);
        return true;
    } catch (const std::domain_error&) {
        return false;
    }
}

IntLattice integer_kernel(const IntMatrix& a)
{
    if (a.cols() == 0)
        return IntLattice::full(a.rows());
    HnfResult h = hnf_with_transform(a);
    IntMatrix k = h.U.row_range(h.rank, a.rows());
    if (k.rows() == 0)
        return IntLattice(a.rows());
    return IntLattice::from_generators(k);
}

IntLattice integer_kernel(const RatMatrix& a)
{
    return integer_kernel(clear_denominators(a).num);
}

IntLattice saturate(const IntLattice& l)
{
    const std::size_t n = l.ambient_dim();
    if (l.rank() == 0)
        return l;
    if (l.rank() == n)
        return IntLattice::full(n);
    IntLattice perp = integer_kernel(l.basis().transpose());
    return integer_kernel(perp.basis().transpose());
}

IntLattice lattice_sum(const IntLattice& a, const IntLattice& b)
{
    check_ambient(a, b, "lattice_sum");
    if (b.rank() == 0)
        return a;
    if (a.rank() == 0)
        return b;
    return IntLattice::from_generators(vstack(a.basis(), b.basis()));
}

IntLattice lattice_intersect(const IntLattice& a, const IntLattice& b)
{
    check_ambient(a, b, "lattice_intersect");
    if (a.rank() == 0 || b.rank() == 0)
        return IntLattice(a.ambient_dim());
    if (b.contains(a))
        return a;
    if (a.contains(b))
        return b;
    IntLattice k = integer_kernel(vstack(a.basis(), b.basis()));
    IntMatrix coeffs(k.rank(), a.rank());
    for (std::size_t i = 0; i < k.rank(); ++i)
        for (std::size_t j = 0; j < a.rank(); ++j)
            coeffs(i, j) = k.basis()(i, j);
    if (coeffs.rows() == 0)
        return IntLattice(a.ambient_dim());
    return IntLattice::from_generators(coeffs * a.basis());
}

IntLattice lattice_image(const IntLattice& l, const IntMatrix& a)
{
    if (a.rows() != l.ambient_dim())
        throw AmbientMismatch("lattice_image: map rows vs ambient");
    if (l.rank() == 0)
        return IntLattice(a.cols());
    return IntLattice::from_generators(l.basis() * a);
}

IntLattice scale(const IntLattice& l, const Int& s)
{
    if (l.rank() == 0 || s == 0)
        return IntLattice(l.ambient_dim());
    return IntLattice::from_generators(s * l.basis());
}

IntMatrix coordinates_in(const IntLattice& lat, const IntLattice& sub)
{
    check_ambient(lat, sub, "coordinates_in");
    IntMatrix c(sub.rank(), lat.rank());
    for (std::size_t i = 0; i < sub.rank(); ++i) {
        auto x = lat.coordinates(sub.basis().row(i));
        if (!x)
            throw std::domain_error("coordinates_in: sublattice not contained");
        c.set_row(i, *x);
    }
    return c;
}

ElemDivisors quotient_invariants(const IntLattice& big, const IntLattice& small)
{
    check_ambient(big, small, "quotient_invariants");
    IntLattice inter = big.contains(small) ? small : lattice_intersect(big, small);
    if (inter.rank() == 0) {
        ElemDivisors d;
        d.free_rank = big.rank();
        return d;
    }
    return snf(coordinates_in(big, inter));
}

Rat generalized_index(const IntLattice& l1, const IntLattice& l2)
{
    check_ambient(l1, l2, "generalized_index");
    if (l1.rank() != l2.rank())
        return 0;
    if (l1.rank() == 0)
        return 1;
    RatMatrix c(l2.rank(), l1.rank());
    for (std::size_t i = 0; i < l2.rank(); ++i) {
        RatVec v = to_rat(l2.basis().row(i));
        if (!l1.in_span(v))
            return 0;
        c.set_row(i, l1.rational_coordinates(v));
    }
    return abs(det(c));
}

} // namespace windingq

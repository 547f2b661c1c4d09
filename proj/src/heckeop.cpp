#include "windingq/heckeop.hpp"

#include "windingq/errors.hpp"
#include "windingq/exactlin/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace windingq {

std::vector<Mat2> heilbronn_matrices(long n)
{
    std::vector<Mat2> out;
    for (long a = 1; a <= n; ++a) {
        for (long b = 0; b < a; ++b) {
            if (b == 0) {
                if (n % a != 0)
                    continue;
                const long d = n / a;
                for (long c = 0; c < d; ++c)
                    out.push_back({a, 0, c, d});
                continue;
            }
            // c = (ad - n)/b with 0 <= c < d, i.e. n/a <= d < n/(a-b).
            for (long d = (n + a - 1) / a; d * (a - b) < n; ++d) {
                const long num = a * d - n;
                if (num % b != 0)
                    continue;
                const long c = num / b;
                if (c >= 0 && c < d)
                    out.push_back({a, b, c, d});
            }
        }
    }
    return out;
}

long sturm_bound(long level)
{
    return (psi_index(level) + 5) / 6;
}

bool is_prime_long(long n)
{
    if (n < 2)
        return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0)
            return false;
    return true;
}

std::vector<long> prime_factors(long n)
{
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0)
                n /= p;
        }
    }
    if (n > 1)
        ps.push_back(n);
    return ps;
}

IntMatrix HeckeCache::merel_ambient(long n) const
{
    const ManinSpace& s = *space_;
    const long level = s.level();
    const auto hs = heilbronn_matrices(n);
    const Int one(1);
    return s.induced([&](long c, long d, IntVec& acc) {
        for (const auto& h : hs)
            s.add_symbol(acc, mod_long(c * h.a + d * h.c, level), mod_long(c * h.b + d * h.d, level), one);
    });
}

namespace {

// Splits n as p^k * m with p the smallest prime factor.
void split_smallest(long n, long& p, long& pk, long& k)
{
    p = prime_factors(n).front();
    pk = 1;
    k = 0;
    while (n % p == 0) {
        n /= p;
        pk *= p;
        ++k;
    }
}

} // namespace

const IntMatrix& HeckeCache::ambient(long n)
{
    auto it = amb_.find(n);
    if (it != amb_.end())
        return it->second;
    const long level = space_->level();
    IntMatrix m;
    if (n == 1) {
        m = IntMatrix::identity(space_->dim());
    } else if (is_prime_long(n)) {
        m = merel_ambient(n);
    } else {
        long p, pk, k;
        split_smallest(n, p, pk, k);
        if (pk != n) {
            m = ambient(pk) * ambient(n / pk);
        } else if (level % p == 0) {
            m = ambient(p) * ambient(n / p);
        } else {
            m = ambient(p) * ambient(n / p) - Int(p) * ambient(n / p / p);
        }
    }
    return amb_.emplace(n, std::move(m)).first->second;
}

const IntMatrix& HeckeCache::cuspidal(long n)
{
    return *cuspidal_shared(n);
}

std::map<long, IntMatrix> HeckeCache::cuspidal_primes() const
{
    std::map<long, IntMatrix> out;
    for (const auto& [n, m] : cusp_)
        if (is_prime_long(n))
            out.emplace(n, *m);
    return out;
}

std::shared_ptr<const IntMatrix> HeckeCache::cuspidal_shared(long n)
{
    auto it = cusp_.find(n);
    if (it != cusp_.end())
        return it->second;
    const long level = space_->level();
    IntMatrix m;
    if (n == 1) {
        m = IntMatrix::identity(space_->cuspidal().rank());
    } else if (is_prime_long(n)) {
        auto a = amb_.find(n);
        m = space_->restrict_to_cuspidal(a != amb_.end() ? a->second : merel_ambient(n));
    } else {
        long p, pk, k;
        split_smallest(n, p, pk, k);
        if (pk != n) {
            m = cuspidal(pk) * cuspidal(n / pk);
        } else if (level % p == 0) {
            m = cuspidal(p) * cuspidal(n / p);
        } else {
            m = cuspidal(p) * cuspidal(n / p) - Int(p) * cuspidal(n / p / p);
        }
    }
    return cusp_.emplace(n, std::make_shared<const IntMatrix>(std::move(m))).first->second;
}

HeckeOp HeckeCache::op(long n)
{
    HeckeOp h;
    h.index = n;
    h.ambient = ambient(n);
    h.cuspidal = cuspidal(n);
    return h;
}

HeckeOp hecke_matrix(const ManinSpace& space, long n)
{
    if (n < 1)
        throw std::invalid_argument("hecke_matrix: n must be positive");
    HeckeCache cache(space);
    return cache.op(n);
}

Mat2 atkin_lehner_matrix(long level, long q)
{
    if (q <= 1 || level % q != 0 || std::gcd(q, level / q) != 1)
        throw NotExactDivisor(std::to_string(q) + " for level " + std::to_string(level));
    const long m = level / q;
    // q*a - m*b = 1
    long r0 = q, r1 = m, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        const long k = r0 / r1;
        long t = r0 - k * r1;
        r0 = r1;
        r1 = t;
        t = s0 - k * s1;
        s0 = s1;
        s1 = t;
        t = t0 - k * t1;
        t0 = t1;
        t1 = t;
    }
    // s0*q + t0*m = 1, so a = s0 + k*m, b = -t0 + k*q.
    long b = mod_long(-t0, q);
    if (2 * b > q)
        b -= q;
    const long a = (1 + m * b) / q;
    return Mat2{q * a, b, level, q};
}

HeckeOp atkin_lehner(const ManinSpace& space, long q)
{
    const long level = space.level();
    const Mat2 w = atkin_lehner_matrix(level, q);
    auto act = [&](long p, long r) {
        const __int128 num = static_cast<__int128>(w.a) * p + static_cast<__int128>(w.b) * r;
        const __int128 den = static_cast<__int128>(w.c) * p + static_cast<__int128>(w.d) * r;
        __int128 x = num < 0 ? -num : num, y = den < 0 ? -den : den;
        while (y != 0) {
            __int128 t = x % y;
            x = y;
            y = t;
        }
        if (x == 0)
            throw std::logic_error("atkin_lehner: degenerate cusp");
        return Cusp::make(static_cast<long>(num / x), static_cast<long>(den / x));
    };
    HeckeOp h;
    h.index = q;
    h.ambient = space.induced([&](long c, long d, IntVec& acc) {
        const Sl2Lift g = lift_to_sl2(c, d, level);
        const Cusp from = act(g.b, g.d);
        const Cusp to = act(g.a, g.c);
        IntVec v = space.path(from, to);
        for (std::size_t i = 0; i < v.size(); ++i)
            acc[i] += v[i];
    });
    h.cuspidal = space.restrict_to_cuspidal(h.ambient);
    return h;
}

// ---------------------------------------------------------------------------------------------

IntVec HeckeAlgebra::embed(const IntMatrix& t) const
{
    IntVec v;
    v.reserve(embed_rows_ * t.cols());
    for (std::size_t i = 0; i < embed_rows_; ++i)
        for (std::size_t j = 0; j < t.cols(); ++j)
            v.push_back(t(i, j));
    return v;
}

HeckeAlgebra HeckeAlgebra::build(HeckeCache& cache, long bound)
{
    const ManinSpace& s = cache.space();
    HeckeAlgebra alg;
    alg.level_ = s.level();
    alg.bound_ = bound > 0 ? bound : sturm_bound(s.level());
    const std::size_t dim = s.cuspidal().rank();
    const std::size_t g = s.genus();
    for (long n = 1; n <= alg.bound_; ++n)
        alg.ops_.push_back(cache.cuspidal_shared(n));
    const auto b = static_cast<std::size_t>(alg.bound_);
    if (dim == 0) {
        alg.embed_rows_ = 0;
        alg.lattice_ = IntLattice(0);
        alg.transform_ = IntMatrix(0, b);
        alg.coords_ = IntMatrix(b, 0);
        return alg;
    }

    HnfResult h;
    for (std::size_t k = 1; k <= dim; ++k) {
        alg.embed_rows_ = k;
        IntMatrix emb(b, k * dim);
        for (std::size_t n = 0; n < b; ++n)
            emb.set_row(n, alg.embed(*alg.ops_[n]));
        h = hnf_with_transform(emb);
        if (h.rank >= g || k == dim)
            break;
    }
    alg.lattice_ = IntLattice::from_generators(h.H.row_range(0, h.rank));
    alg.transform_ = h.U.row_range(0, h.rank);
    alg.coords_ = IntMatrix(b, h.rank);
    for (std::size_t n = 0; n < b; ++n)
        alg.coords_.set_row(n, alg.coordinates_of(*alg.ops_[n]));
    return alg;
}

IntVec HeckeAlgebra::coordinates_of(const IntMatrix& t) const
{
    auto c = lattice_.coordinates(embed(t));
    if (!c)
        throw std::domain_error("HeckeAlgebra::coordinates_of: operator outside the algebra");
    return *c;
}

IntMatrix HeckeAlgebra::element(const IntVec& y) const
{
    IntVec comb(static_cast<std::size_t>(bound_));
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] == 0)
            continue;
        for (std::size_t n = 0; n < comb.size(); ++n)
            mpz_addmul(comb[n].get_mpz_t(), y[i].get_mpz_t(), transform_(i, n).get_mpz_t());
    }
    return combination(comb);
}

IntMatrix HeckeAlgebra::combination(const IntVec& c) const
{
    const std::size_t dim = ops_.empty() ? 0 : ops_[0]->rows();
    IntMatrix out(dim, dim);
    for (std::size_t n = 0; n < c.size() && n < ops_.size(); ++n) {
        if (c[n] == 0)
            continue;
        const IntMatrix& t = *ops_[n];
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                if (t(i, j) != 0)
                    mpz_addmul(out(i, j).get_mpz_t(), c[n].get_mpz_t(), t(i, j).get_mpz_t());
    }
    return out;
}

IntMatrix HeckeAlgebra::orbit_matrix(const IntVec& v) const
{
    IntMatrix tn(ops_.size(), v.size());
    for (std::size_t n = 0; n < ops_.size(); ++n)
        tn.set_row(n, vec_mul(v, *ops_[n]));
    return transform_ * tn;
}

RatMatrix HeckeAlgebra::orbit_matrix(const RatVec& v) const
{
    const std::size_t dim = v.size();
    RatMatrix tn(ops_.size(), dim);
    for (std::size_t n = 0; n < ops_.size(); ++n)
        tn.set_row(n, vec_mul(v, *ops_[n]));
    return to_rat(transform_) * tn;
}

} // namespace windingq

#include "windingq/maninsym.hpp"

#include "windingq/errors.hpp"
#include "windingq/exactlin/rational.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace windingq {

long gcd_long(long a, long b)
{
    return std::gcd(a, b);
}

long mod_long(long a, long m)
{
    long r = a % m;
    return r < 0 ? r + m : r;
}

long psi_index(long level)
{
    long n = level;
    long psi = level;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            psi = psi / p * (p + 1);
            while (n % p == 0)
                n /= p;
        }
    }
    if (n > 1)
        psi = psi / n * (n + 1);
    return psi;
}

// ---------------------------------------------------------------------------------------------
// P^1(Z/NZ)

P1List::P1List(long level) : level_(level)
{
    if (level < 1)
        throw std::invalid_argument("P1List: level must be positive");
    const long n = level;
    table_.assign(static_cast<std::size_t>(n * n), -1);
    std::vector<long> units;
    for (long u = 1; u <= n; ++u)
        if (std::gcd(u, n) == 1)
            units.push_back(u % n);
    for (long c = 0; c < n; ++c) {
        for (long d = 0; d < n; ++d) {
            if (table_[static_cast<std::size_t>(c * n + d)] >= 0)
                continue;
            if (std::gcd(std::gcd(c, d), n) != 1)
                continue;
            const auto idx = static_cast<std::int32_t>(elems_.size());
            elems_.push_back({c, d});
            for (long u : units)
                table_[static_cast<std::size_t>((u * c % n) * n + u * d % n)] = idx;
        }
    }
}

long P1List::index(long c, long d) const
{
    const long n = level_;
    c = mod_long(c, n);
    d = mod_long(d, n);
    return table_[static_cast<std::size_t>(c * n + d)];
}

std::vector<P1Elem> p1_list(long level)
{
    return P1List(level).elements();
}

// ---------------------------------------------------------------------------------------------
// Cusps

Cusp Cusp::make(long p, long q)
{
    if (q == 0)
        return infinity();
    long g = std::gcd(p, q);
    p /= g;
    q /= g;
    if (q < 0) {
        p = -p;
        q = -q;
    }
    return Cusp{p, q};
}

namespace {

// s with p*s = 1 mod q (any value when q <= 1).
long cusp_s(const Cusp& x)
{
    if (x.den == 0)
        return x.num;
    if (x.den == 1)
        return 0;
    long a = mod_long(x.num, x.den), b = x.den;
    long s0 = 1, s1 = 0;
    while (b != 0) {
        const long q = a / b;
        const long r = a - q * b;
        a = b;
        b = r;
        const long t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    if (a != 1)
        throw std::logic_error("cusp_s: not in lowest terms");
    return mod_long(s0, x.den);
}

} // namespace

bool cusps_equivalent(const Cusp& a, const Cusp& b, long level)
{
    const long q1 = a.den, q2 = b.den;
    const long prod = static_cast<long>(static_cast<__int128>(q1 % level) * (q2 % level) % level);
    const long mod = std::gcd(prod, level);
    if (mod == 1)
        return true;
    const __int128 diff = static_cast<__int128>(cusp_s(a)) * q2 - static_cast<__int128>(cusp_s(b)) * q1;
    return diff % mod == 0;
}

std::vector<Cusp> cusp_classes(long level)
{
    std::vector<Cusp> reps;
    for (long d = 1; d <= level; ++d) {
        if (level % d != 0)
            continue;
        const long g = std::gcd(d, level / d);
        long need = 0;
        for (long u = 1; u <= g; ++u)
            if (std::gcd(u, g) == 1)
                ++need;
        long found = 0;
        for (long a = 0; a < level + d && found < need; ++a) {
            if (std::gcd(a, d) != 1)
                continue;
            Cusp x = d == level ? Cusp::infinity() : Cusp::make(a, d);
            bool seen = false;
            for (const auto& r : reps)
                if (cusps_equivalent(r, x, level)) {
                    seen = true;
                    break;
                }
            if (!seen) {
                reps.push_back(x);
                ++found;
            }
        }
    }
    return reps;
}

// ---------------------------------------------------------------------------------------------
// SL2 lifts

Sl2Lift lift_to_sl2(long c, long d, long level)
{
    c = mod_long(c, level);
    d = mod_long(d, level);
    if (c == 0)
        c = level;
    long dd = d;
    while (std::gcd(c, dd) != 1)
        dd += level;
    // a*dd - b*c = 1
    long a0 = dd, b0 = c;
    long s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (b0 != 0) {
        long q = a0 / b0;
        long r = a0 - q * b0;
        a0 = b0;
        b0 = r;
        long ts = s0 - q * s1;
        s0 = s1;
        s1 = ts;
        long tt = t0 - q * t1;
        t0 = t1;
        t1 = tt;
    }
    // s0*dd + t0*c = 1
    return Sl2Lift{s0, -t0, c, dd};
}

// ---------------------------------------------------------------------------------------------
// Relation quotient

namespace {

using Sparse = std::map<std::size_t, Rat>;

void add_scaled(Sparse& acc, const Sparse& src, const Rat& k)
{
    for (const auto& [v, c] : src) {
        auto it = acc.find(v);
        if (it == acc.end()) {
            acc.emplace(v, k * c);
        } else {
            it->second += k * c;
            if (it->second == 0)
                acc.erase(it);
        }
    }
}

} // namespace

ManinSpace ManinSpace::build(long level)
{
    ManinSpace s(level);
    const P1List& p1 = s.p1_;
    const std::size_t n = p1.size();

    // Two-term relations x + x*sigma = 0.
    std::vector<long> rep(n, -1);
    std::vector<int> sgn(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (rep[i] >= 0)
            continue;
        const auto& e = p1[i];
        const auto j = static_cast<std::size_t>(p1.index(e.d, -e.c));
        if (j == i) {
            rep[i] = static_cast<long>(i);
            sgn[i] = 0;
        } else {
            rep[i] = rep[j] = static_cast<long>(i);
            sgn[i] = 1;
            sgn[j] = -1;
        }
    }
    std::vector<long> var_of(n, -1);
    std::vector<std::size_t> var_symbol;
    for (std::size_t i = 0; i < n; ++i)
        if (rep[i] == static_cast<long>(i) && sgn[i] != 0) {
            var_of[i] = static_cast<long>(var_symbol.size());
            var_symbol.push_back(i);
        }
    const std::size_t nvars = var_symbol.size();

    // Three-term relations x + x*tau + x*tau^2 = 0, eliminated over Q.
    std::vector<bool> done(n, false);
    std::map<std::size_t, Sparse> pivot_expr;
    std::vector<std::size_t> pivot_order;
    for (std::size_t i = 0; i < n; ++i) {
        if (done[i])
            continue;
        const auto& e = p1[i];
        const auto j = static_cast<std::size_t>(p1.index(e.d, -e.c - e.d));
        const auto k = static_cast<std::size_t>(p1.index(-e.c - e.d, e.c));
        done[i] = done[j] = done[k] = true;
        Sparse rel;
        for (std::size_t x : {i, j, k}) {
            if (sgn[x] == 0)
                continue;
            const auto v = static_cast<std::size_t>(var_of[static_cast<std::size_t>(rep[x])]);
            add_scaled(rel, Sparse{{v, Rat(1)}}, Rat(sgn[x]));
        }
        bool changed = true;
        while (changed && !rel.empty()) {
            changed = false;
            for (const auto& [v, c] : rel) {
                auto it = pivot_expr.find(v);
                if (it == pivot_expr.end())
                    continue;
                Rat coeff = c;
                rel.erase(v);
                add_scaled(rel, it->second, coeff);
                changed = true;
                break;
            }
        }
        if (rel.empty())
            continue;
        std::size_t piv = rel.rbegin()->first;
        for (auto it = rel.rbegin(); it != rel.rend(); ++it)
            if (abs(it->second) == 1) {
                piv = it->first;
                break;
            }
        const Rat a = rel[piv];
        Sparse expr;
        for (const auto& [v, c] : rel)
            if (v != piv)
                expr.emplace(v, -c / a);
        pivot_expr.emplace(piv, std::move(expr));
        pivot_order.push_back(piv);
    }
    // Back-substitute so that every pivot is written in free variables only.
    for (auto it = pivot_order.rbegin(); it != pivot_order.rend(); ++it) {
        Sparse& expr = pivot_expr[*it];
        Sparse resolved;
        for (const auto& [v, c] : expr) {
            auto pit = pivot_expr.find(v);
            if (pit == pivot_expr.end())
                add_scaled(resolved, Sparse{{v, c}}, Rat(1));
            else
                add_scaled(resolved, pit->second, c);
        }
        expr = std::move(resolved);
    }
    std::vector<long> free_index(nvars, -1);
    for (std::size_t v = 0; v < nvars; ++v)
        if (!pivot_expr.count(v)) {
            free_index[v] = static_cast<long>(s.free_symbols_.size());
            s.free_symbols_.push_back(var_symbol[v]);
        }
    const std::size_t r = s.free_symbols_.size();

    // Images of the variables in free coordinates.
    std::vector<std::vector<std::pair<std::size_t, Rat>>> var_image(nvars);
    bool integral = true;
    for (std::size_t v = 0; v < nvars; ++v) {
        if (free_index[v] >= 0) {
            var_image[v].emplace_back(static_cast<std::size_t>(free_index[v]), Rat(1));
            continue;
        }
        for (const auto& [w, c] : pivot_expr[v]) {
            var_image[v].emplace_back(static_cast<std::size_t>(free_index[w]), c);
            if (c.get_den() != 1)
                integral = false;
        }
    }

    RatMatrix basis_inv;
    if (!integral) {
        RatMatrix images(nvars, r);
        for (std::size_t v = 0; v < nvars; ++v)
            for (const auto& [j, c] : var_image[v])
                images(v, j) = c;
        ClearedMatrix cm = clear_denominators(images);
        IntMatrix h = hnf(cm.num);
        s.basis_ = RatMatrix(h.rows(), h.cols());
        for (std::size_t i = 0; i < h.rows(); ++i)
            for (std::size_t j = 0; j < h.cols(); ++j)
                s.basis_(i, j) = Rat(h(i, j), cm.denom);
        s.basis_inv_ = inverse(s.basis_);
    }

    s.coords_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn[i] == 0)
            continue;
        const auto v = static_cast<std::size_t>(var_of[static_cast<std::size_t>(rep[i])]);
        if (integral) {
            for (const auto& [j, c] : var_image[v]) {
                Int x = c.get_num();
                if (sgn[i] < 0)
                    x = -x;
                s.coords_[i].emplace_back(static_cast<std::uint32_t>(j), x);
            }
        } else {
            RatVec img(r);
            for (const auto& [j, c] : var_image[v])
                img[j] = sgn[i] * c;
            RatVec m = vec_mul(img, s.basis_inv_);
            for (std::size_t j = 0; j < r; ++j) {
                if (m[j] == 0)
                    continue;
                if (m[j].get_den() != 1)
                    throw std::logic_error("build_presentation: symbol outside the lattice");
                s.coords_[i].emplace_back(static_cast<std::uint32_t>(j), m[j].get_num());
            }
        }
    }
    s.dim_ = r;
    s.finish();
    return s;
}

ManinSpace ManinSpace::from_parts(long level, std::vector<std::vector<std::pair<std::uint32_t, Int>>> coords,
                                  std::vector<std::size_t> free_symbols, RatMatrix basis_change)
{
    ManinSpace s(level);
    if (coords.size() != s.p1_.size())
        throw std::invalid_argument("ManinSpace::from_parts: symbol table size");
    s.coords_ = std::move(coords);
    s.free_symbols_ = std::move(free_symbols);
    s.dim_ = s.free_symbols_.size();
    s.basis_ = std::move(basis_change);
    if (s.basis_.rows() > 0)
        s.basis_inv_ = inverse(s.basis_);
    s.finish();
    return s;
}

void ManinSpace::finish()
{
    cusps_ = cusp_classes(level_);
    const std::size_t c = cusps_.size();

    // Boundary on the free symbols, then on the basis of M.
    RatMatrix bfree(dim_, c);
    for (std::size_t k = 0; k < dim_; ++k) {
        const auto& e = p1_[free_symbols_[k]];
        const Sl2Lift g = lift_to_sl2(e.c, e.d, level_);
        bfree(k, cusp_index(Cusp::make(g.a, g.c))) += 1;
        bfree(k, cusp_index(Cusp::make(g.b, g.d))) -= 1;
    }
    if (basis_.rows() > 0)
        boundary_ = to_int(basis_ * bfree);
    else
        boundary_ = to_int(bfree);
    if (dim_ == 0) {
        cuspidal_ = IntLattice(0);
    } else if (c == 0) {
        cuspidal_ = IntLattice::full(dim_);
    } else {
        cuspidal_ = integer_kernel(boundary_);
    }

    star_ = induced([this](long cc, long dd, IntVec& acc) { add_symbol(acc, -cc, dd, Int(1)); });
    star_h_ = restrict_to_cuspidal(star_);
}

std::size_t ManinSpace::cusp_index(const Cusp& x) const
{
    for (std::size_t i = 0; i < cusps_.size(); ++i)
        if (cusps_equivalent(cusps_[i], x, level_))
            return i;
    throw std::logic_error("cusp_index: cusp not classified");
}

IntVec ManinSpace::symbol(long c, long d) const
{
    IntVec v(dim_);
    add_symbol(v, c, d, Int(1));
    return v;
}

void ManinSpace::add_symbol(IntVec& acc, long c, long d, const Int& coeff) const
{
    const long i = p1_.index(c, d);
    if (i < 0)
        return;
    for (const auto& [j, x] : coords_[static_cast<std::size_t>(i)])
        mpz_addmul(acc[j].get_mpz_t(), coeff.get_mpz_t(), x.get_mpz_t());
}

IntVec ManinSpace::path(const Cusp& a, const Cusp& b) const
{
    // {0, p/q} from the continued fraction convergents of p/q.
    auto from_zero = [this](const Cusp& x) {
        IntVec v(dim_);
        add_symbol(v, 0, 1, Int(1));
        if (x.den == 0)
            return v;
        long p = x.num, q = x.den;
        long qm2 = 1, qm1 = 0;   // q_{k-2}, q_{k-1}
        long k = 0;
        while (true) {
            long a0 = p >= 0 ? p / q : -((-p + q - 1) / q);
            long qk = a0 * qm1 + qm2;
            const long sign = (k % 2 == 0) ? -1 : 1;   // (-1)^(k-1)
            add_symbol(v, qk, sign * qm1, Int(1));
            qm2 = qm1;
            qm1 = qk;
            long rem = p - a0 * q;
            if (rem == 0)
                break;
            p = q;
            q = rem;
            ++k;
        }
        return v;
    };
    IntVec vb = from_zero(b);
    IntVec va = from_zero(a);
    for (std::size_t i = 0; i < dim_; ++i)
        vb[i] -= va[i];
    return vb;
}

IntVec ManinSpace::cusp_divisor(const IntVec& m) const
{
    return vec_mul(m, boundary_);
}

IntMatrix ManinSpace::induced(const std::function<void(long, long, IntVec&)>& rule) const
{
    IntMatrix img(dim_, dim_);
    for (std::size_t k = 0; k < dim_; ++k) {
        const auto& e = p1_[free_symbols_[k]];
        IntVec acc(dim_);
        rule(e.c, e.d, acc);
        img.set_row(k, acc);
    }
    if (basis_.rows() == 0)
        return img;
    return to_int(basis_ * to_rat(img));
}

IntMatrix ManinSpace::restrict_to_cuspidal(const IntMatrix& op) const
{
    return restrict_operator(cuspidal_, op);
}

RatVec ManinSpace::cuspidal_to_ambient(const RatVec& h) const
{
    return vec_mul(h, cuspidal_.basis());
}

RatVec ManinSpace::ambient_to_cuspidal(const RatVec& m) const
{
    return cuspidal_.rational_coordinates(m);
}

ManinSpace build_presentation(long level)
{
    return ManinSpace::build(level);
}

// ---------------------------------------------------------------------------------------------

IntMatrix restrict_operator(const IntLattice& l, const IntMatrix& op)
{
    const IntMatrix img = l.basis() * op;
    IntMatrix out(l.rank(), l.rank());
    for (std::size_t i = 0; i < l.rank(); ++i) {
        auto c = l.coordinates(img.row(i));
        if (!c)
            throw NotStable("operator does not preserve the lattice");
        out.set_row(i, *c);
    }
    return out;
}

namespace {

IntLattice signed_part(const IntLattice& l, const IntMatrix& iota, int sign)
{
    if (l.rank() == 0)
        return l;
    IntMatrix r = restrict_operator(l, iota);
    for (std::size_t i = 0; i < r.rows(); ++i)
        r(i, i) -= sign;
    IntLattice k = integer_kernel(r);
    if (k.rank() == 0)
        return IntLattice(l.ambient_dim());
    return IntLattice::from_generators(k.basis() * l.basis());
}

} // namespace

IntLattice plus_part(const IntLattice& l, const IntMatrix& iota)
{
    return signed_part(l, iota, 1);
}

IntLattice minus_part(const IntLattice& l, const IntMatrix& iota)
{
    return signed_part(l, iota, -1);
}

} // namespace windingq

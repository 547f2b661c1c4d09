#include "windingq/exactlin/poly.hpp"

#include "windingq/exactlin/modp.hpp"

#include <sstream>
#include <stdexcept>

namespace windingq {

std::size_t degree(const ZPoly& f)
{
    if (f.empty())
        throw std::domain_error("degree of the zero polynomial");
    return f.size() - 1;
}

std::size_t degree(const QPoly& f)
{
    if (f.empty())
        throw std::domain_error("degree of the zero polynomial");
    return f.size() - 1;
}

void trim(ZPoly& f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

void trim(QPoly& f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

ZPoly poly_mul(const ZPoly& a, const ZPoly& b)
{
    if (a.empty() || b.empty())
        return {};
    ZPoly c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            mpz_addmul(c[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    trim(c);
    return c;
}

QPoly poly_mul(const QPoly& a, const QPoly& b)
{
    if (a.empty() || b.empty())
        return {};
    QPoly c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    }
    trim(c);
    return c;
}

QPoly poly_add(const QPoly& a, const QPoly& b)
{
    QPoly c(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        c[i] += b[i];
    trim(c);
    return c;
}

QPoly poly_sub(const QPoly& a, const QPoly& b)
{
    QPoly c(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        c[i] -= b[i];
    trim(c);
    return c;
}

QPoly to_qpoly(const ZPoly& f)
{
    QPoly q(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        q[i] = Rat(f[i]);
    return q;
}

ZPoly to_zpoly(const QPoly& f)
{
    ZPoly z(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i].get_den() != 1)
            throw std::domain_error("to_zpoly: non-integral coefficient");
        z[i] = f[i].get_num();
    }
    return z;
}

ZPoly derivative(const ZPoly& f)
{
    if (f.size() <= 1)
        return {};
    ZPoly d(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i)
        d[i - 1] = f[i] * static_cast<unsigned long>(i);
    trim(d);
    return d;
}

QDivMod poly_divmod(const QPoly& a, const QPoly& b)
{
    if (b.empty())
        throw std::domain_error("poly_divmod: division by zero");
    QDivMod out;
    out.rem = a;
    trim(out.rem);
    if (out.rem.size() < b.size())
        return out;
    out.quot.assign(out.rem.size() - b.size() + 1, Rat(0));
    const Rat inv = 1 / b.back();
    while (!out.rem.empty() && out.rem.size() >= b.size()) {
        const std::size_t shift = out.rem.size() - b.size();
        Rat c = out.rem.back() * inv;
        out.quot[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            if (b[i] != 0)
                out.rem[shift + i] -= c * b[i];
        out.rem.pop_back();
        trim(out.rem);
    }
    trim(out.quot);
    return out;
}

QPoly poly_monic(const QPoly& f)
{
    if (f.empty())
        return f;
    QPoly g = f;
    const Rat inv = 1 / f.back();
    for (auto& c : g)
        c *= inv;
    return g;
}

QPoly poly_gcd(const QPoly& a, const QPoly& b)
{
    QPoly x = a, y = b;
    trim(x);
    trim(y);
    while (!y.empty()) {
        QPoly r = poly_divmod(x, y).rem;
        x = std::move(y);
        y = poly_monic(r);
    }
    return poly_monic(x);
}

QXgcd poly_xgcd(const QPoly& a, const QPoly& b)
{
    QPoly r0 = a, r1 = b;
    trim(r0);
    trim(r1);
    QPoly s0{Rat(1)}, s1{};
    QPoly t0{}, t1{Rat(1)};
    while (!r1.empty()) {
        QDivMod qr = poly_divmod(r0, r1);
        QPoly s2 = poly_sub(s0, poly_mul(qr.quot, s1));
        QPoly t2 = poly_sub(t0, poly_mul(qr.quot, t1));
        r0 = std::move(r1);
        r1 = std::move(qr.rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    QXgcd out;
    if (r0.empty()) {
        out.s = {};
        out.t = {};
        return out;
    }
    const Rat inv = 1 / r0.back();
    for (auto& c : r0)
        c *= inv;
    for (auto& c : s0)
        c *= inv;
    for (auto& c : t0)
        c *= inv;
    out.g = std::move(r0);
    out.s = std::move(s0);
    out.t = std::move(t0);
    return out;
}

bool poly_divides(const ZPoly& b, const ZPoly& a, ZPoly* quotient)
{
    if (b.empty())
        throw std::domain_error("poly_divides: zero divisor");
    ZPoly r = a;
    trim(r);
    if (r.empty()) {
        if (quotient)
            quotient->clear();
        return true;
    }
    if (r.size() < b.size())
        return false;
    ZPoly q(r.size() - b.size() + 1);
    const Int& lc = b.back();
    while (!r.empty() && r.size() >= b.size()) {
        if (!mpz_divisible_p(r.back().get_mpz_t(), lc.get_mpz_t()))
            return false;
        const std::size_t shift = r.size() - b.size();
        Int c = r.back() / lc;
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            if (b[i] != 0)
                mpz_submul(r[shift + i].get_mpz_t(), c.get_mpz_t(), b[i].get_mpz_t());
        trim(r);
    }
    if (!r.empty())
        return false;
    trim(q);
    if (quotient)
        *quotient = std::move(q);
    return true;
}

ZPoly squarefree_part(const ZPoly& f)
{
    if (f.empty() || f.back() != 1)
        throw std::domain_error("squarefree_part: expects a monic polynomial");
    if (f.size() <= 2)
        return f;
    QPoly g = poly_gcd(to_qpoly(f), to_qpoly(derivative(f)));
    if (g.size() <= 1)
        return f;
    return to_zpoly(poly_divmod(to_qpoly(f), g).quot);
}

namespace {

std::vector<std::uint64_t> charpoly_mod(const IntMatrix& a, std::uint64_t p)
{
    const std::size_t n = a.rows();
    std::vector<std::uint64_t> h(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            h[i * n + j] = modp::reduce(a(i, j), p);
    auto at = [&](std::size_t i, std::size_t j) -> std::uint64_t& { return h[i * n + j]; };
    for (std::size_t m = 1; m + 1 < n; ++m) {
        std::size_t piv = n;
        for (std::size_t i = m; i < n; ++i)
            if (at(i, m - 1) != 0) {
                piv = i;
                break;
            }
        if (piv == n)
            continue;
        if (piv != m) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(at(piv, j), at(m, j));
            for (std::size_t i = 0; i < n; ++i)
                std::swap(at(i, piv), at(i, m));
        }
        const std::uint64_t inv = modp::inverse(at(m, m - 1), p);
        for (std::size_t i = m + 1; i < n; ++i) {
            if (at(i, m - 1) == 0)
                continue;
            const std::uint64_t u = at(i, m - 1) * inv % p;
            for (std::size_t j = 0; j < n; ++j)
                at(i, j) = (at(i, j) + (p - u) * at(m, j)) % p;
            for (std::size_t r = 0; r < n; ++r)
                at(r, m) = (at(r, m) + u * at(r, i)) % p;
        }
    }
    std::vector<std::vector<std::uint64_t>> polys(n + 1);
    polys[0] = {1};
    for (std::size_t m = 0; m < n; ++m) {
        std::vector<std::uint64_t> next(m + 2, 0);
        const std::vector<std::uint64_t>& pm = polys[m];
        for (std::size_t k = 0; k < pm.size(); ++k) {
            next[k + 1] = (next[k + 1] + pm[k]) % p;
            next[k] = (next[k] + (p - at(m, m)) * pm[k]) % p;
        }
        std::uint64_t t = 1;
        for (std::size_t i = 1; i <= m; ++i) {
            t = t * at(m - i + 1, m - i) % p;
            const std::uint64_t coef = t * at(m - i, m) % p;
            if (coef == 0)
                continue;
            const std::vector<std::uint64_t>& pk = polys[m - i];
            for (std::size_t k = 0; k < pk.size(); ++k)
                next[k] = (next[k] + (p - coef) * pk[k]) % p;
        }
        polys[m + 1] = std::move(next);
    }
    return polys[n];
}

Int binomial(std::size_t n, std::size_t k)
{
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

} // namespace

ZPoly charpoly(const IntMatrix& a)
{
    if (a.rows() != a.cols())
        throw std::invalid_argument("charpoly: non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0)
        return {Int(1)};
    // Spectral radius bound: min of the row-sum, column-sum and Frobenius norms.
    Int row_max = 0, col_max = 0, frob = 0;
    std::vector<Int> col_sums(n);
    for (std::size_t i = 0; i < n; ++i) {
        Int s = 0;
        for (std::size_t j = 0; j < n; ++j) {
            Int x = abs(a(i, j));
            s += x;
            col_sums[j] += x;
            frob += x * x;
        }
        if (s > row_max)
            row_max = s;
    }
    for (const auto& s : col_sums)
        if (s > col_max)
            col_max = s;
    frob = sqrt(frob) + 1;
    Int rho = std::min({row_max, col_max, frob});
    Int bound = 1;
    Int rho_k = 1;
    for (std::size_t k = 0; k <= n; ++k) {
        Int c = binomial(n, k) * rho_k;
        if (c > bound)
            bound = c;
        rho_k *= rho;
    }
    const Int target = 2 * bound + 1;

    std::vector<Int> residues(n + 1);
    Int modulus = 1;
    std::uint64_t p = modp::kLargePrimeStart;
    while (modulus < target) {
        p = modp::prev_prime(p);
        std::vector<std::uint64_t> cp = charpoly_mod(a, p);
        // Incremental CRT: x = r + M * ((c - r) * M^{-1} mod p).
        const std::uint64_t minv = modp::inverse(modp::reduce(modulus, p), p);
        for (std::size_t k = 0; k <= n; ++k) {
            std::uint64_t r = modp::reduce(residues[k], p);
            std::uint64_t diff = (cp[k] + p - r) % p;
            std::uint64_t t = diff * minv % p;
            residues[k] += modulus * static_cast<unsigned long>(t);
        }
        modulus *= static_cast<unsigned long>(p);
    }
    ZPoly out(n + 1);
    const Int half = modulus / 2;
    for (std::size_t k = 0; k <= n; ++k) {
        Int r = residues[k] % modulus;
        if (r < 0)
            r += modulus;
        if (r > half)
            r -= modulus;
        out[k] = r;
    }
    return out;
}

ZPoly semisimple_minpoly(const IntMatrix& a)
{
    return squarefree_part(charpoly(a));
}

IntMatrix poly_eval(const ZPoly& f, const IntMatrix& a)
{
    const std::size_t n = a.rows();
    IntMatrix r(n, n);
    if (f.empty())
        return r;
    for (std::size_t i = 0; i < n; ++i)
        r(i, i) = f.back();
    for (std::size_t k = f.size() - 1; k-- > 0;) {
        r = r * a;
        for (std::size_t i = 0; i < n; ++i)
            r(i, i) += f[k];
    }
    return r;
}

RatVec poly_apply(const QPoly& f, const RatVec& v, const IntMatrix& a)
{
    RatVec acc(v.size());
    if (f.empty())
        return acc;
    for (std::size_t i = 0; i < v.size(); ++i)
        acc[i] = f.back() * v[i];
    for (std::size_t k = f.size() - 1; k-- > 0;) {
        acc = vec_mul(acc, a);
        if (f[k] != 0)
            for (std::size_t i = 0; i < v.size(); ++i)
                acc[i] += f[k] * v[i];
    }
    return acc;
}

RatVec poly_apply(const QPoly& f, const RatVec& v, const RatMatrix& a)
{
    RatVec acc(v.size());
    if (f.empty())
        return acc;
    for (std::size_t i = 0; i < v.size(); ++i)
        acc[i] = f.back() * v[i];
    for (std::size_t k = f.size() - 1; k-- > 0;) {
        acc = vec_mul(acc, a);
        if (f[k] != 0)
            for (std::size_t i = 0; i < v.size(); ++i)
                acc[i] += f[k] * v[i];
    }
    return acc;
}

bool poly_less(const ZPoly& a, const ZPoly& b)
{
    if (a.size() != b.size())
        return a.size() < b.size();
    for (std::size_t k = a.size(); k-- > 0;)
        if (a[k] != b[k])
            return a[k] < b[k];
    return false;
}

std::string poly_to_string(const ZPoly& f)
{
    if (f.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = f.size(); k-- > 0;) {
        const Int& c = f[k];
        if (c == 0)
            continue;
        Int mag = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        if (k == 0 || mag != 1)
            os << mag.get_str();
        if (k > 0) {
            if (mag != 1)
                os << "*";
            os << "x";
            if (k > 1)
                os << "^" << k;
        }
        first = false;
    }
    return os.str();
}

} // namespace windingq

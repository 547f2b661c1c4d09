#include "windingq/exactlin/modp.hpp"
#include "windingq/exactlin/poly.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace windingq {

namespace modp {

std::uint64_t reduce(const Int& x, std::uint64_t p)
{
    return mpz_fdiv_ui(x.get_mpz_t(), p);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1)
            r = static_cast<std::uint64_t>(static_cast<unsigned __int128>(r) * a % p);
        a = static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * a % p);
        e >>= 1;
    }
    return r;
}

std::uint64_t inverse(std::uint64_t a, std::uint64_t p)
{
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1)
        throw std::domain_error("modp::inverse: not invertible");
    if (t < 0)
        t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

bool is_prime(std::uint64_t n)
{
    Int x(static_cast<unsigned long>(n));
    return mpz_probab_prime_p(x.get_mpz_t(), 30) > 0;
}

std::size_t rank_mod(const IntMatrix& a, std::uint64_t p)
{
    std::vector<std::vector<std::uint64_t>> m(a.rows(), std::vector<std::uint64_t>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m[i][j] = reduce(a(i, j), p);
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c] == 0)
            ++piv;
        if (piv == m.size())
            continue;
        std::swap(m[piv], m[r]);
        const std::uint64_t inv = inverse(m[r][c], p);
        for (std::size_t j = c; j < a.cols(); ++j)
            m[r][j] = m[r][j] * inv % p;
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            const std::uint64_t f = m[i][c];
            if (f == 0)
                continue;
            for (std::size_t j = c; j < a.cols(); ++j)
                m[i][j] = (m[i][j] + (p - f) * m[r][j]) % p;
        }
        ++r;
    }
    return r;
}

std::uint64_t prev_prime(std::uint64_t n)
{
    for (std::uint64_t k = n - 1; k >= 2; --k)
        if (is_prime(k))
            return k;
    throw std::domain_error("prev_prime: none below");
}

std::uint64_t next_prime(std::uint64_t n)
{
    std::uint64_t k = n + 1;
    while (!is_prime(k))
        ++k;
    return k;
}

void trim(Poly& f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

Poly from_zpoly(const std::vector<Int>& f, std::uint64_t p)
{
    Poly g(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        g[i] = reduce(f[i], p);
    trim(g);
    return g;
}

Poly mul(const Poly& a, const Poly& b, std::uint64_t p)
{
    if (a.empty() || b.empty())
        return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    trim(c);
    return c;
}

Poly sub(const Poly& a, const Poly& b, std::uint64_t p)
{
    Poly c(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        c[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        c[i] = (c[i] + p - b[i]) % p;
    trim(c);
    return c;
}

void divmod(const Poly& a, const Poly& b, std::uint64_t p, Poly& q, Poly& r)
{
    if (b.empty())
        throw std::domain_error("modp::divmod: division by zero");
    r = a;
    trim(r);
    q.clear();
    if (r.size() < b.size())
        return;
    q.assign(r.size() - b.size() + 1, 0);
    const std::uint64_t inv = inverse(b.back(), p);
    while (!r.empty() && r.size() >= b.size()) {
        const std::size_t shift = r.size() - b.size();
        const std::uint64_t c = r.back() * inv % p;
        q[shift] = c;
        if (c != 0)
            for (std::size_t i = 0; i < b.size(); ++i)
                r[shift + i] = (r[shift + i] + (p - c) * b[i]) % p;
        r.pop_back();
        trim(r);
    }
    trim(q);
}

Poly rem(const Poly& a, const Poly& b, std::uint64_t p)
{
    Poly q, r;
    divmod(a, b, p, q, r);
    return r;
}

Poly monic(const Poly& f, std::uint64_t p)
{
    if (f.empty())
        return f;
    const std::uint64_t inv = inverse(f.back(), p);
    Poly g(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        g[i] = f[i] * inv % p;
    return g;
}

Poly gcd(const Poly& a, const Poly& b, std::uint64_t p)
{
    Poly x = a, y = b;
    trim(x);
    trim(y);
    while (!y.empty()) {
        Poly r = rem(x, y, p);
        x = std::move(y);
        y = std::move(r);
    }
    return monic(x, p);
}

void xgcd(const Poly& a, const Poly& b, std::uint64_t p, Poly& s, Poly& t)
{
    Poly r0 = a, r1 = b;
    Poly s0{1}, s1{};
    Poly t0{}, t1{1};
    while (!r1.empty()) {
        Poly q, r;
        divmod(r0, r1, p, q, r);
        Poly s2 = sub(s0, mul(q, s1, p), p);
        Poly t2 = sub(t0, mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.size() != 1)
        throw std::domain_error("modp::xgcd: inputs not coprime");
    const std::uint64_t inv = inverse(r0[0], p);
    for (auto& c : s0)
        c = c * inv % p;
    for (auto& c : t0)
        c = c * inv % p;
    s = std::move(s0);
    t = std::move(t0);
}

Poly derivative(const Poly& f, std::uint64_t p)
{
    if (f.size() <= 1)
        return {};
    Poly d(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i)
        d[i - 1] = f[i] * (i % p) % p;
    trim(d);
    return d;
}

Poly powmod(const Poly& base, const Int& e, const Poly& mod, std::uint64_t p)
{
    Poly result{1};
    result = rem(result, mod, p);
    Poly b = rem(base, mod, p);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t k = bits; k-- > 0;) {
        result = rem(mul(result, result, p), mod, p);
        if (mpz_tstbit(e.get_mpz_t(), k))
            result = rem(mul(result, b, p), mod, p);
    }
    return result;
}

std::vector<std::pair<Poly, std::size_t>> distinct_degree(const Poly& f, std::uint64_t p)
{
    std::vector<std::pair<Poly, std::size_t>> out;
    Poly rest = f;
    const Poly x{0, 1};
    Poly h = rem(x, rest, p);
    const Int pe(static_cast<unsigned long>(p));
    for (std::size_t d = 1; 2 * d <= rest.size() - 1; ++d) {
        h = powmod(h, pe, rest, p);
        Poly g = gcd(sub(h, x, p), rest, p);
        if (g.size() > 1) {
            out.emplace_back(g, d);
            Poly q, r;
            divmod(rest, g, p, q, r);
            rest = std::move(q);
            h = rem(h, rest, p);
        }
    }
    if (rest.size() > 1)
        out.emplace_back(rest, rest.size() - 1);
    return out;
}

namespace {

void equal_degree(const Poly& f, std::size_t d, std::uint64_t p, std::mt19937_64& rng, std::vector<Poly>& out)
{
    const std::size_t n = f.size() - 1;
    if (n == d) {
        out.push_back(f);
        return;
    }
    Int e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, d);
    e = (e - 1) / 2;
    std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
    while (true) {
        Poly a(n);
        for (auto& c : a)
            c = dist(rng);
        trim(a);
        if (a.size() <= 1)
            continue;
        Poly g = gcd(a, f, p);
        if (g.size() == 1) {
            Poly b = powmod(a, e, f, p);
            b = sub(b, Poly{1}, p);
            g = gcd(b, f, p);
        }
        if (g.size() > 1 && g.size() < f.size()) {
            Poly q, r;
            divmod(f, g, p, q, r);
            equal_degree(g, d, p, rng, out);
            equal_degree(monic(q, p), d, p, rng, out);
            return;
        }
    }
}

} // namespace

std::vector<Poly> factor_squarefree(const Poly& f, std::uint64_t p)
{
    if (p == 2)
        throw std::domain_error("modp::factor_squarefree: odd primes only");
    std::mt19937_64 rng(0x5eed ^ p);
    std::vector<Poly> out;
    for (const auto& [g, d] : distinct_degree(f, p))
        equal_degree(g, d, p, rng, out);
    std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    return out;
}

} // namespace modp

namespace {

// Polynomials over Z/mZ with Int coefficients in [0, m).
void reduce_pos(ZPoly& f, const Int& m)
{
    for (auto& c : f) {
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    }
    trim(f);
}

ZPoly mul_mod(const ZPoly& a, const ZPoly& b, const Int& m)
{
    ZPoly c = poly_mul(a, b);
    reduce_pos(c, m);
    return c;
}

ZPoly add_mod(const ZPoly& a, const ZPoly& b, const Int& m)
{
    ZPoly c(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        c[i] += b[i];
    reduce_pos(c, m);
    return c;
}

ZPoly sub_mod(const ZPoly& a, const ZPoly& b, const Int& m)
{
    ZPoly c(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        c[i] -= b[i];
    reduce_pos(c, m);
    return c;
}

// Division by a monic polynomial modulo m.
void divmod_monic(const ZPoly& a, const ZPoly& b, const Int& m, ZPoly& q, ZPoly& r)
{
    r = a;
    reduce_pos(r, m);
    q.clear();
    if (r.size() < b.size())
        return;
    q.assign(r.size() - b.size() + 1, Int(0));
    while (!r.empty() && r.size() >= b.size()) {
        const std::size_t shift = r.size() - b.size();
        Int c = r.back();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            mpz_submul(r[shift + i].get_mpz_t(), c.get_mpz_t(), b[i].get_mpz_t());
        r.pop_back();
        reduce_pos(r, m);
    }
    reduce_pos(q, m);
}

ZPoly to_zpoly_modp(const modp::Poly& f)
{
    ZPoly z(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        z[i] = static_cast<unsigned long>(f[i]);
    return z;
}

// Quadratic Hensel lifting of f = g*h (mod p) to modulus `target` (a power of p); g, h monic.
void hensel_pair(const ZPoly& f, ZPoly& g, ZPoly& h, std::uint64_t p, const Int& target)
{
    modp::Poly s0, t0;
    modp::xgcd(modp::from_zpoly(g, p), modp::from_zpoly(h, p), p, s0, t0);
    ZPoly s = to_zpoly_modp(s0), t = to_zpoly_modp(t0);
    Int m(static_cast<unsigned long>(p));
    while (m < target) {
        const Int m2 = m * m;
        ZPoly e = sub_mod(f, mul_mod(g, h, m2), m2);
        ZPoly q, r;
        divmod_monic(mul_mod(s, e, m2), h, m2, q, r);
        ZPoly gs = add_mod(add_mod(g, mul_mod(t, e, m2), m2), mul_mod(q, g, m2), m2);
        ZPoly hs = add_mod(h, r, m2);
        ZPoly b = sub_mod(add_mod(mul_mod(s, gs, m2), mul_mod(t, hs, m2), m2), ZPoly{Int(1)}, m2);
        ZPoly c, d;
        divmod_monic(mul_mod(s, b, m2), hs, m2, c, d);
        s = sub_mod(s, d, m2);
        t = sub_mod(sub_mod(t, mul_mod(t, b, m2), m2), mul_mod(c, gs, m2), m2);
        g = std::move(gs);
        h = std::move(hs);
        m = m2;
    }
    reduce_pos(g, target);
    reduce_pos(h, target);
}

ZPoly product_mod(const std::vector<ZPoly>& fs, std::size_t begin, std::size_t end, const Int& m)
{
    ZPoly acc{Int(1)};
    for (std::size_t i = begin; i < end; ++i)
        acc = mul_mod(acc, fs[i], m);
    return acc;
}

void multi_lift(const ZPoly& f, const std::vector<ZPoly>& facs, std::size_t begin, std::size_t end, std::uint64_t p,
                const Int& target, std::vector<ZPoly>& out)
{
    if (end - begin == 1) {
        ZPoly g = f;
        reduce_pos(g, target);
        out.push_back(g);
        return;
    }
    const std::size_t mid = begin + (end - begin) / 2;
    const Int pm(static_cast<unsigned long>(p));
    ZPoly g = product_mod(facs, begin, mid, pm);
    ZPoly h = product_mod(facs, mid, end, pm);
    hensel_pair(f, g, h, p, target);
    multi_lift(g, facs, begin, mid, p, target, out);
    multi_lift(h, facs, mid, end, p, target, out);
}

ZPoly symmetric(const ZPoly& f, const Int& m)
{
    ZPoly g = f;
    const Int half = m / 2;
    for (auto& c : g) {
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        if (c > half)
            c -= m;
    }
    trim(g);
    return g;
}

std::vector<bool> subset_sums(const std::vector<std::size_t>& degs, std::size_t n)
{
    std::vector<bool> ok(n + 1, false);
    ok[0] = true;
    for (auto d : degs)
        for (std::size_t s = n; s >= d && s > 0; --s)
            if (ok[s - d])
                ok[s] = true;
    return ok;
}

std::vector<ZPoly> zassenhaus(const ZPoly& f_in)
{
    const std::size_t n = degree(f_in);
    if (n <= 1)
        return {f_in};

    // Choose the prime giving the fewest modular factors among a few good candidates.
    std::vector<bool> allowed(n + 1, true);
    std::uint64_t best_p = 0;
    std::size_t best_count = n + 1;
    std::size_t good = 0;
    for (std::uint64_t p = 3; good < 6 && p < 100000; p = modp::next_prime(p)) {
        modp::Poly fp = modp::from_zpoly(f_in, p);
        if (fp.size() != f_in.size())
            continue;
        if (modp::gcd(fp, modp::derivative(fp, p), p).size() != 1)
            continue;
        ++good;
        std::vector<std::size_t> degs;
        for (const auto& [g, d] : modp::distinct_degree(fp, p))
            for (std::size_t k = 0; k < (g.size() - 1) / d; ++k)
                degs.push_back(d);
        std::vector<bool> sums = subset_sums(degs, n);
        for (std::size_t k = 0; k <= n; ++k)
            allowed[k] = allowed[k] && sums[k];
        if (degs.size() < best_count) {
            best_count = degs.size();
            best_p = p;
        }
        if (best_count == 1)
            break;
    }
    if (best_p == 0)
        throw std::domain_error("factor: no suitable prime found");
    if (best_count == 1)
        return {f_in};
    bool irreducible = true;
    for (std::size_t k = 1; k < n; ++k)
        if (allowed[k])
            irreducible = false;
    if (irreducible)
        return {f_in};

    const std::uint64_t p = best_p;
    std::vector<modp::Poly> mod_factors = modp::factor_squarefree(modp::from_zpoly(f_in, p), p);
    std::vector<ZPoly> facs;
    for (const auto& g : mod_factors)
        facs.push_back(to_zpoly_modp(g));

    // Coefficients of any monic factor are bounded by 2^n * ||f||_2.
    Int norm2 = 0;
    for (const auto& c : f_in)
        norm2 += c * c;
    Int bound = (sqrt(norm2) + 1) << static_cast<unsigned long>(n);
    const Int need = 2 * bound + 1;
    Int target(static_cast<unsigned long>(p));
    while (target < need)
        target *= static_cast<unsigned long>(p);

    std::vector<ZPoly> lifted;
    multi_lift(f_in, facs, 0, facs.size(), p, target, lifted);

    std::vector<ZPoly> found;
    ZPoly f = f_in;
    std::vector<std::size_t> remaining(lifted.size());
    for (std::size_t i = 0; i < remaining.size(); ++i)
        remaining[i] = i;
    std::size_t s = 1;
    while (2 * s <= remaining.size()) {
        bool hit = false;
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i)
            idx[i] = i;
        while (true) {
            std::size_t deg = 0;
            for (auto i : idx)
                deg += lifted[remaining[i]].size() - 1;
            if (deg < allowed.size() && allowed[deg]) {
                Int c0 = 1;
                for (auto i : idx)
                    c0 = (c0 * lifted[remaining[i]][0]) % target;
                mpz_fdiv_r(c0.get_mpz_t(), c0.get_mpz_t(), target.get_mpz_t());
                if (c0 > target / 2)
                    c0 -= target;
                const Int& f0 = f[0];
                bool plausible = c0 == 0 ? f0 == 0 : (f0 == 0 || mpz_divisible_p(f0.get_mpz_t(), c0.get_mpz_t()));
                if (plausible) {
                    ZPoly cand{Int(1)};
                    for (auto i : idx)
                        cand = mul_mod(cand, lifted[remaining[i]], target);
                    cand = symmetric(cand, target);
                    ZPoly quot;
                    if (poly_divides(cand, f, &quot)) {
                        found.push_back(cand);
                        f = std::move(quot);
                        std::vector<std::size_t> next;
                        std::size_t k = 0;
                        for (std::size_t i = 0; i < remaining.size(); ++i) {
                            if (k < idx.size() && idx[k] == i) {
                                ++k;
                                continue;
                            }
                            next.push_back(remaining[i]);
                        }
                        remaining = std::move(next);
                        hit = true;
                        break;
                    }
                }
            }
            // Next combination.
            std::size_t k = s;
            while (k > 0 && idx[k - 1] == remaining.size() - s + (k - 1))
                --k;
            if (k == 0)
                break;
            ++idx[k - 1];
            for (std::size_t j = k; j < s; ++j)
                idx[j] = idx[j - 1] + 1;
        }
        if (!hit)
            ++s;
    }
    if (f.size() > 1)
        found.push_back(f);
    return found;
}

} // namespace

std::vector<ZPoly> factor_squarefree_monic(const ZPoly& f_in)
{
    ZPoly f = f_in;
    trim(f);
    if (f.empty() || f.back() != 1)
        throw std::domain_error("factor_squarefree_monic: expects a monic polynomial");
    std::vector<ZPoly> out;
    if (f.size() == 1)
        return out;
    if (f[0] == 0) {
        out.push_back(ZPoly{Int(0), Int(1)});
        f.erase(f.begin());
    }
    if (f.size() > 1) {
        auto rest = zassenhaus(f);
        out.insert(out.end(), rest.begin(), rest.end());
    }
    std::sort(out.begin(), out.end(), poly_less);
    return out;
}

std::vector<std::pair<ZPoly, std::size_t>> factor_monic(const ZPoly& f)
{
    std::vector<std::pair<ZPoly, std::size_t>> out;
    ZPoly rest = f;
    for (const auto& g : factor_squarefree_monic(squarefree_part(f))) {
        std::size_t mult = 0;
        ZPoly q;
        while (poly_divides(g, rest, &q)) {
            rest = std::move(q);
            ++mult;
        }
        out.emplace_back(g, mult);
    }
    return out;
}

} // namespace windingq

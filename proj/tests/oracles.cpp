#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace oracle {

namespace {

long mod(long a, long m)
{
    const long r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

bool is_prime(long n)
{
    if (n < 2)
        return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0)
            return false;
    return true;
}

long euler_phi(long n)
{
    long r = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0)
                n /= p;
            r -= r / p;
        }
    }
    if (n > 1)
        r -= r / n;
    return r;
}

long cusp_count(long n)
{
    long c = 0;
    for (long d = 1; d <= n; ++d) {
        if (n % d != 0)
            continue;
        long a = d, b = n / d;
        while (b != 0) {
            const long t = a % b;
            a = b;
            b = t;
        }
        c += euler_phi(a);
    }
    return c;
}

long genus_x0(long n)
{
    long mu = n;
    long nu2 = 1, nu3 = 1;
    long m = n;
    for (long p = 2; p <= m; ++p) {
        if (m % p != 0)
            continue;
        long k = 0;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        mu = mu / p * (p + 1);
        // Legendre symbols (-1/p) and (-3/p), with the usual conventions at 2 and 3.
        const long l4 = p == 2 ? 0 : (p % 4 == 1 ? 1 : -1);
        const long l3 = p == 3 ? 0 : (p % 3 == 1 ? 1 : -1);
        nu2 *= (k >= 2 && p == 2) ? 0 : 1 + l4;
        nu3 *= (k >= 2 && p == 3) ? 0 : 1 + l3;
    }
    const long cusps = cusp_count(n);
    // 12 g = 12 + mu - 3 nu2 - 4 nu3 - 6 cusps
    const long twelve_g = 12 + mu - 3 * nu2 - 4 * nu3 - 6 * cusps;
    if (twelve_g % 12 != 0)
        throw std::logic_error("genus formula not integral");
    return twelve_g / 12;
}

long trace_of_frobenius(const Curve& e, long p)
{
    const auto [a1, a2, a3, a4, a6] = e;
    long points = 1;  // the point at infinity
    for (long x = 0; x < p; ++x) {
        for (long y = 0; y < p; ++y) {
            const long lhs = mod(y * y + a1 * x * y + a3 * y, p);
            const long rhs = mod(mod(x * x % p * x, p) + a2 * mod(x * x, p) + a4 * x + a6, p);
            if (lhs == rhs)
                ++points;
        }
    }
    return p + 1 - points;
}

std::vector<long> coefficients(const Curve& e, long level, long n)
{
    std::vector<long> a(static_cast<std::size_t>(n + 1), 0);
    if (n >= 1)
        a[1] = 1;
    // Multiplicativity from the prime-power values.
    for (long m = 2; m <= n; ++m) {
        long r = m, value = 1;
        for (long p = 2; p <= r; ++p) {
            if (r % p != 0)
                continue;
            long k = 0;
            while (r % p == 0) {
                r /= p;
                ++k;
            }
            const long ap = trace_of_frobenius(e, p);
            long prev = 1, cur = ap;
            for (long j = 2; j <= k; ++j) {
                const long next = level % p == 0 ? cur * ap : ap * cur - p * prev;
                prev = cur;
                cur = next;
            }
            value *= cur;
        }
        a[static_cast<std::size_t>(m)] = value;
    }
    return a;
}

double l_value_at_one(const Curve& e, long level, long terms)
{
    const auto a = coefficients(e, level, terms);
    const double pi = std::acos(-1.0);
    const double c = 2 * pi / std::sqrt(static_cast<double>(level));
    double s = 0;
    for (long n = 1; n <= terms; ++n)
        s += static_cast<double>(a[static_cast<std::size_t>(n)]) / static_cast<double>(n) *
             std::exp(-c * static_cast<double>(n));
    return 2 * s;
}

namespace {

double agm(double a, double b)
{
    for (int i = 0; i < 100 && std::fabs(a - b) > 1e-15 * std::fabs(a); ++i) {
        const double t = (a + b) / 2;
        b = std::sqrt(a * b);
        a = t;
    }
    return a;
}

}  // namespace

double real_period(const Curve& e)
{
    const auto [a1, a2, a3, a4, a6] = e;
    const double b2 = static_cast<double>(a1 * a1 + 4 * a2);
    const double b4 = static_cast<double>(2 * a4 + a1 * a3);
    const double b6 = static_cast<double>(a3 * a3 + 4 * a6);
    // Real roots of 4x^3 + b2 x^2 + 2 b4 x + b6 by Newton from a bracket, then deflation.
    auto f = [&](double x) { return ((4 * x + b2) * x + 2 * b4) * x + b6; };
    auto df = [&](double x) { return (12 * x + 2 * b2) * x + 2 * b4; };
    double x = 1000;
    for (int i = 0; i < 200; ++i)
        x -= f(x) / df(x);
    const double e1 = x;
    // Remaining quadratic 4x^2 + (b2 + 4 e1) x + c0.
    const double qb = b2 + 4 * e1;
    const double qc = -b6 / e1;
    const double disc = qb * qb - 16 * qc;
    const double pi = std::acos(-1.0);
    if (disc < 0) {
        const double a = 3 * e1 + b2 / 4;
        const double b = std::sqrt(3 * e1 * e1 + b2 * e1 / 2 + b4 / 2);
        return 2 * pi / agm(2 * std::sqrt(b), std::sqrt(2 * b + a));
    }
    const double r1 = (-qb + std::sqrt(disc)) / 8, r2 = (-qb - std::sqrt(disc)) / 8;
    double roots[3] = {e1, r1, r2};
    std::sort(roots, roots + 3);
    return pi / agm(std::sqrt(roots[2] - roots[0]), std::sqrt(roots[2] - roots[1]));
}

}  // namespace oracle

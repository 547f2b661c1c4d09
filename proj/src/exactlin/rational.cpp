#include "windingq/exactlin/rational.hpp"

#include <stdexcept>

namespace windingq {

Rref rref(const RatMatrix& a, bool with_transform)
{
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    RatMatrix w = a;
    RatMatrix t = with_transform ? RatMatrix::identity(m) : RatMatrix();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < m; ++col) {
        std::size_t p = m;
        for (std::size_t i = r; i < m; ++i)
            if (w(i, col) != 0) {
                p = i;
                break;
            }
        if (p == m)
            continue;
        if (p != r) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(w(p, j), w(r, j));
            if (with_transform)
                for (std::size_t j = 0; j < m; ++j)
                    std::swap(t(p, j), t(r, j));
        }
        Rat inv = 1 / w(r, col);
        for (std::size_t j = col; j < n; ++j)
            w(r, j) *= inv;
        if (with_transform)
            for (std::size_t j = 0; j < m; ++j)
                t(r, j) *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || w(i, col) == 0)
                continue;
            Rat f = w(i, col);
            for (std::size_t j = col; j < n; ++j)
                if (w(r, j) != 0)
                    w(i, j) -= f * w(r, j);
            if (with_transform)
                for (std::size_t j = 0; j < m; ++j)
                    if (t(r, j) != 0)
                        t(i, j) -= f * t(r, j);
        }
        pivots.push_back(col);
        ++r;
    }
    Rref out;
    out.r = w.row_range(0, r);
    out.pivots = std::move(pivots);
    if (with_transform)
        out.transform = std::move(t);
    return out;
}

std::size_t rank(const RatMatrix& a)
{
    return rref(a).pivots.size();
}

namespace {

// Fraction-free elimination; returns rank and, for square input, the determinant.
std::size_t bareiss(IntMatrix w, Int* det_out)
{
    const std::size_t m = w.rows();
    const std::size_t n = w.cols();
    Int prev = 1;
    std::size_t r = 0;
    int sign = 1;
    for (std::size_t col = 0; col < n && r < m; ++col) {
        std::size_t p = m;
        for (std::size_t i = r; i < m; ++i)
            if (w(i, col) != 0) {
                p = i;
                break;
            }
        if (p == m) {
            if (det_out) {
                *det_out = 0;
                return r;
            }
            continue;
        }
        if (p != r) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(w(p, j), w(r, j));
            sign = -sign;
        }
        for (std::size_t i = r + 1; i < m; ++i) {
            for (std::size_t j = col + 1; j < n; ++j) {
                Int v = w(r, col) * w(i, j) - w(i, col) * w(r, j);
                mpz_divexact(w(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            w(i, col) = 0;
        }
        prev = w(r, col);
        ++r;
    }
    if (det_out && m == n && r == n)
        *det_out = sign * w(n - 1, n - 1);
    return r;
}

} // namespace

std::size_t rank(const IntMatrix& a)
{
    return bareiss(a, nullptr);
}

Int det(const IntMatrix& a)
{
    if (a.rows() != a.cols())
        throw std::invalid_argument("det: non-square matrix");
    if (a.rows() == 0)
        return 1;
    Int d = 0;
    bareiss(a, &d);
    return d;
}

Rat det(const RatMatrix& a)
{
    if (a.rows() != a.cols())
        throw std::invalid_argument("det: non-square matrix");
    if (a.rows() == 0)
        return 1;
    Int scale = 1;
    IntMatrix w(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Int d = 1;
        for (std::size_t j = 0; j < a.cols(); ++j)
            mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), a(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < a.cols(); ++j)
            w(i, j) = a(i, j).get_num() * (d / a(i, j).get_den());
        scale *= d;
    }
    Rat out(det(w), scale);
    out.canonicalize();
    return out;
}

RatMatrix inverse(const RatMatrix& a)
{
    if (a.rows() != a.cols())
        throw std::invalid_argument("inverse: non-square matrix");
    Rref e = rref(a, true);
    if (e.pivots.size() != a.rows())
        throw std::domain_error("inverse: singular matrix");
    return e.transform;
}

RatMatrix solve_left(const RatMatrix& a, const RatMatrix& b)
{
    if (a.cols() != b.cols())
        throw std::invalid_argument("solve_left: shape mismatch");
    Rref e = rref(a, true);
    const std::size_t r = e.pivots.size();
    RatMatrix x(b.rows(), a.rows());
    for (std::size_t i = 0; i < b.rows(); ++i) {
        RatVec c(r);
        for (std::size_t k = 0; k < r; ++k)
            c[k] = b(i, e.pivots[k]);
        RatVec check = vec_mul(c, e.r);
        for (std::size_t j = 0; j < b.cols(); ++j)
            if (check[j] != b(i, j))
                throw std::domain_error("solve_left: row outside the row space");
        for (std::size_t k = 0; k < r; ++k) {
            if (c[k] == 0)
                continue;
            for (std::size_t j = 0; j < a.rows(); ++j)
                if (e.transform(k, j) != 0)
                    x(i, j) += c[k] * e.transform(k, j);
        }
    }
    return x;
}

RatMatrix rational_kernel(const RatMatrix& a)
{
    // x a = 0  <=>  a^T x^T = 0; read the null space off the rref of a^T.
    RatMatrix at = a.transpose();
    Rref e = rref(at);
    const std::size_t n = a.rows();
    std::vector<bool> is_pivot(n, false);
    for (auto p : e.pivots)
        is_pivot[p] = true;
    RatMatrix k(n - e.pivots.size(), n);
    std::size_t row = 0;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free])
            continue;
        k(row, free) = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            k(row, e.pivots[i]) = -e.r(i, free);
        ++row;
    }
    return k;
}

RatMatrix row_space(const RatMatrix& a)
{
    return rref(a).r;
}

} // namespace windingq

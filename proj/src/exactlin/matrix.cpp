#include "windingq/exactlin/matrix.hpp"

#include <sstream>

namespace windingq {

namespace {

template <class T>
void check_same_shape(const Matrix<T>& a, const Matrix<T>& b, const char* what)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

} // namespace

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix product: shape mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const Int* ar = a.row_ptr(i);
        Int* cr = c.row_ptr(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (ar[k] == 0)
                continue;
            const Int* br = b.row_ptr(k);
            for (std::size_t j = 0; j < b.cols(); ++j)
                mpz_addmul(cr[j].get_mpz_t(), ar[k].get_mpz_t(), br[j].get_mpz_t());
        }
    }
    return c;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix product: shape mismatch");
    RatMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b(k, j) != 0)
                    c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b)
{
    check_same_shape(a, b, "matrix sum");
    IntMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) += b(i, j);
    return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b)
{
    check_same_shape(a, b, "matrix difference");
    IntMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) -= b(i, j);
    return c;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b)
{
    check_same_shape(a, b, "matrix sum");
    RatMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) += b(i, j);
    return c;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b)
{
    check_same_shape(a, b, "matrix difference");
    RatMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) -= b(i, j);
    return c;
}

IntMatrix operator*(const Int& s, const IntMatrix& a)
{
    IntMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) *= s;
    return c;
}

RatMatrix operator*(const Rat& s, const RatMatrix& a)
{
    RatMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) *= s;
    return c;
}

IntVec vec_mul(const IntVec& v, const IntMatrix& a)
{
    if (v.size() != a.rows())
        throw std::invalid_argument("vec_mul: shape mismatch");
    IntVec out(a.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) {
        if (v[k] == 0)
            continue;
        const Int* ar = a.row_ptr(k);
        for (std::size_t j = 0; j < a.cols(); ++j)
            mpz_addmul(out[j].get_mpz_t(), v[k].get_mpz_t(), ar[j].get_mpz_t());
    }
    return out;
}

RatVec vec_mul(const RatVec& v, const IntMatrix& a)
{
    ClearedVec cv = clear_denominators(v);
    IntVec w = vec_mul(cv.num, a);
    RatVec out(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
        out[j] = Rat(w[j], cv.denom);
        out[j].canonicalize();
    }
    return out;
}

RatVec vec_mul(const RatVec& v, const RatMatrix& a)
{
    if (v.size() != a.rows())
        throw std::invalid_argument("vec_mul: shape mismatch");
    RatVec out(a.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) {
        if (v[k] == 0)
            continue;
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(k, j) != 0)
                out[j] += v[k] * a(k, j);
    }
    return out;
}

RatMatrix to_rat(const IntMatrix& a)
{
    RatMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            r(i, j) = Rat(a(i, j));
    return r;
}

RatVec to_rat(const IntVec& v)
{
    RatVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        r[i] = Rat(v[i]);
    return r;
}

ClearedMatrix clear_denominators(const RatMatrix& a)
{
    Int d = 1;
    for (const auto& x : a.data())
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
    IntMatrix n(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Rat& x = a(i, j);
            n(i, j) = x.get_num() * (d / x.get_den());
        }
    return {std::move(n), d};
}

ClearedVec clear_denominators(const RatVec& v)
{
    Int d = 1;
    for (const auto& x : v)
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
    IntVec n(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        n[i] = v[i].get_num() * (d / v[i].get_den());
    return {std::move(n), d};
}

IntMatrix to_int(const RatMatrix& a)
{
    IntMatrix n(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j).get_den() != 1)
                throw std::domain_error("to_int: non-integral entry");
            n(i, j) = a(i, j).get_num();
        }
    return n;
}

IntVec to_int(const RatVec& v)
{
    IntVec n(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].get_den() != 1)
            throw std::domain_error("to_int: non-integral entry");
        n[i] = v[i].get_num();
    }
    return n;
}

std::string to_string(const IntMatrix& m)
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? ", " : "") << m(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

} // namespace windingq

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace windingq {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// Dense row-major matrix.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols)
    {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols)
                throw std::invalid_argument("Matrix::from_rows: ragged rows");
            for (std::size_t j = 0; j < cols; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }

    static Matrix from_ints(std::initializer_list<std::initializer_list<long>> rows)
    {
        const std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
        Matrix m(rows.size(), cols);
        std::size_t i = 0;
        for (const auto& r : rows) {
            if (r.size() != cols)
                throw std::invalid_argument("Matrix::from_ints: ragged rows");
            std::size_t j = 0;
            for (long x : r)
                m(i, j++) = T(x);
            ++i;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    T* row_ptr(std::size_t i) { return data_.data() + i * cols_; }
    const T* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }

    std::vector<T> row(std::size_t i) const
    {
        return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }

    void set_row(std::size_t i, const std::vector<T>& v)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(i, j) = v[j];
    }

    void append_row(const std::vector<T>& v)
    {
        if (rows_ == 0 && cols_ == 0)
            cols_ = v.size();
        if (v.size() != cols_)
            throw std::invalid_argument("Matrix::append_row: length mismatch");
        data_.insert(data_.end(), v.begin(), v.end());
        ++rows_;
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix row_range(std::size_t begin, std::size_t end) const
    {
        Matrix m(end - begin, cols_);
        for (std::size_t i = begin; i < end; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                m(i - begin, j) = (*this)(i, j);
        return m;
    }

    bool is_zero() const
    {
        for (const auto& x : data_)
            if (x != 0)
                return false;
        return true;
    }

    bool operator==(const Matrix& o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    const std::vector<T>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
IntMatrix operator*(const Int& s, const IntMatrix& a);
RatMatrix operator*(const Rat& s, const RatMatrix& a);

IntVec vec_mul(const IntVec& v, const IntMatrix& a);
RatVec vec_mul(const RatVec& v, const IntMatrix& a);
RatVec vec_mul(const RatVec& v, const RatMatrix& a);

RatMatrix to_rat(const IntMatrix& a);
RatVec to_rat(const IntVec& v);

// Scales a rational matrix to an integer one: returns (A', d) with A = A'/d and d > 0 minimal.
struct ClearedMatrix {
    IntMatrix num;
    Int denom;
};
ClearedMatrix clear_denominators(const RatMatrix& a);
struct ClearedVec {
    IntVec num;
    Int denom;
};
ClearedVec clear_denominators(const RatVec& v);

// Returns the integer matrix when every entry is integral, throws otherwise.
IntMatrix to_int(const RatMatrix& a);
IntVec to_int(const RatVec& v);

// Stacks matrices vertically; all must share the column count.
template <class T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b)
{
    if (a.rows() == 0)
        return b;
    if (b.rows() == 0)
        return a;
    if (a.cols() != b.cols())
        throw std::invalid_argument("vstack: column mismatch");
    Matrix<T> m(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            m(a.rows() + i, j) = b(i, j);
    return m;
}

template <class T>
std::vector<T> flatten(const Matrix<T>& m)
{
    return m.data();
}

std::string to_string(const IntMatrix& m);

} // namespace windingq

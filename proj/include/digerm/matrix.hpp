#pragma once

#include "digerm/integers.hpp"

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace digerm {

/// Dense integer matrix, row-major.  Sizes here are tiny (boundary matrices
/// of desk-scale complexes), so no attempt at sparsity is made.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Mat identity(std::size_t n)
    {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Mat& other) const = default;

    bool is_zero() const
    {
        for (const Int& x : a_)
            if (x != 0)
                return false;
        return true;
    }

    void swap_rows(std::size_t i, std::size_t j)
    {
        if (i == j)
            return;
        for (std::size_t k = 0; k < cols_; ++k)
            std::swap((*this)(i, k), (*this)(j, k));
    }

    void swap_cols(std::size_t i, std::size_t j)
    {
        if (i == j)
            return;
        for (std::size_t k = 0; k < rows_; ++k)
            std::swap((*this)(k, i), (*this)(k, j));
    }

    // row_i += c * row_j
    void add_row(std::size_t i, std::size_t j, const Int& c)
    {
        for (std::size_t k = 0; k < cols_; ++k)
            (*this)(i, k) += c * (*this)(j, k);
    }

    // col_i += c * col_j
    void add_col(std::size_t i, std::size_t j, const Int& c)
    {
        for (std::size_t k = 0; k < rows_; ++k)
            (*this)(k, i) += c * (*this)(k, j);
    }

    void scale_row(std::size_t i, const Int& c)
    {
        for (std::size_t k = 0; k < cols_; ++k)
            (*this)(i, k) *= c;
    }

    std::string str() const
    {
        std::string out;
        for (std::size_t i = 0; i < rows_; ++i) {
            out += "[";
            for (std::size_t j = 0; j < cols_; ++j) {
                out += (*this)(i, j).str();
                if (j + 1 < cols_)
                    out += " ";
            }
            out += "]";
            if (i + 1 < rows_)
                out += "\n";
        }
        return out;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

inline Mat mul(const Mat& a, const Mat& b)
{
    if (a.cols() != b.rows())
        throw InputError("matrix product shape mismatch");
    Mat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Int& aik = a(i, k);
            if (aik == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

/// Exact determinant via fraction-free (Bareiss) elimination.
inline Int determinant(const Mat& m)
{
    if (m.rows() != m.cols())
        throw InputError("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    Mat b = m;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (b(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && b(piv, k) == 0)
                ++piv;
            if (piv == n)
                return 0;
            b.swap_rows(k, piv);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                b(i, j) = (b(i, j) * b(k, k) - b(i, k) * b(k, j)) / prev;
        prev = b(k, k);
    }
    return sign * b(n - 1, n - 1);
}

inline std::ostream& operator<<(std::ostream& os, const Mat& m) { return os << m.str(); }

} // namespace digerm

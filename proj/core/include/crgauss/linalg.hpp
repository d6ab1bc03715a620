#pragma once

#include <optional>
#include <vector>

#include "crgauss/big_complex.hpp"
#include "crgauss/errors.hpp"
#include "crgauss/exact_complex.hpp"

namespace crgauss {

template <class K>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, K(0)) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = K(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    K& operator()(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
    const K& operator()(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }

    Matrix adjoint() const {
        Matrix t(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) t(c, r) = conj((*this)(r, c));
        return t;
    }
    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw DomainError("matrix dimension mismatch");
        Matrix r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                if (is_zero(a(i, k))) continue;
                for (int j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
            }
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix dimension mismatch");
        Matrix r = a;
        for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
        return r;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<K> data_;
};

using ExactMatrix = Matrix<ExactComplex>;
using RationalMatrix = Matrix<mpq_class>;
using BigMatrix = Matrix<BigComplex>;
using BigVector = std::vector<BigComplex>;

// Exact row echelon over a field; returns the rank.
template <class K>
int exact_rank(Matrix<K> a) {
    int rank = 0;
    for (int c = 0; c < a.cols() && rank < a.rows(); ++c) {
        int piv = -1;
        for (int r = rank; r < a.rows(); ++r)
            if (!is_zero(a(r, c))) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(rank, j));
        const K inv = K(1) / a(rank, c);
        for (int r = rank + 1; r < a.rows(); ++r) {
            if (is_zero(a(r, c))) continue;
            const K f = a(r, c) * inv;
            for (int j = c; j < a.cols(); ++j) a(r, j) -= f * a(rank, j);
        }
        ++rank;
    }
    return rank;
}

// Solves A X = B exactly; nullopt when A is singular.
std::optional<ExactMatrix> exact_solve(const ExactMatrix& a, const ExactMatrix& b);
ExactComplex exact_determinant(ExactMatrix a);

// Incremental exact span: tracks dim span{v_1, v_2, ...}.
class ExactSpan {
public:
    explicit ExactSpan(int dim) : dim_(dim) {}
    // True if v enlarged the span.
    bool add(std::vector<ExactComplex> v);
    int dimension() const { return static_cast<int>(basis_.size()); }

private:
    int dim_;
    std::vector<std::vector<ExactComplex>> basis_;  // echelon rows
    std::vector<int> pivots_;
};

BigMatrix to_big(const ExactMatrix& m);
BigReal frobenius_norm(const BigMatrix& m);
BigReal max_abs(const BigMatrix& m);
BigReal vector_norm(const BigVector& v);
BigComplex inner(const BigVector& a, const BigVector& b);  // Σ conj(a_i) b_i

struct HermitianEigen {
    std::vector<BigReal> values;  // descending
    BigMatrix vectors;            // columns, phase-normalized
};

// Cyclic complex Jacobi. Eigenvalues sorted descending (stable on ties), each
// eigenvector's largest-modulus entry made real positive.
HermitianEigen hermitian_eigen(const BigMatrix& a);

// Singular values, descending. Computed as square roots of the eigenvalues of
// A*A evaluated at twice the working precision.
std::vector<BigReal> singular_values(const BigMatrix& a);

// Count of singular values above σ_max·2^{-bits/2}.
int numeric_rank(const BigMatrix& a, int bits);

// Orthonormal columns: the given ones (orthonormalized in order), completed
// by Gram-Schmidt over the standard basis taken in index order, or reversed.
BigMatrix unitary_completion(const std::vector<BigVector>& cols, int dim, bool reversed = false);

}  // namespace crgauss

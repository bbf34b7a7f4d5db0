#ifndef NILCOHOM_MATRIX_HPP
#define NILCOHOM_MATRIX_HPP

#include "nilcohom/error.hpp"
#include "nilcohom/gauss_rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace nilcohom {

// Dense row-major matrix; T{} must be the additive zero.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!x.is_zero()) return false;
        return true;
    }

    Matrix adjoint() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = conj((*this)(i, j));
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    std::vector<T> column(std::size_t j) const {
        std::vector<T> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    void set_column(std::size_t j, const std::vector<T>& v) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    static Matrix from_columns(std::size_t rows, const std::vector<std::vector<T>>& cols) {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
        return m;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator-(Matrix a) {
        for (auto& x : a.data_) x = -x;
        return a;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw MathError("matrix product shape mismatch");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& x = a(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero()) r(i, j) += x * b(k, j);
            }
        return r;
    }

    friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
        if (a.cols_ != v.size()) throw MathError("matrix-vector shape mismatch");
        std::vector<T> r(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k)
                if (!a(i, k).is_zero() && !v[k].is_zero()) r[i] += a(i, k) * v[k];
        return r;
    }

    template <class S>
    Matrix scaled(const S& c) const {
        Matrix r = *this;
        for (auto& x : r.data_) x = x * c;
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    // Horizontal concatenation [a | b].
    friend Matrix hstack(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_) throw MathError("hstack shape mismatch");
        Matrix r(a.rows_, a.cols_ + b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
            for (std::size_t j = 0; j < b.cols_; ++j) r(i, a.cols_ + j) = b(i, j);
        }
        return r;
    }

    // Vertical concatenation [a ; b].
    friend Matrix vstack(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.cols_) throw MathError("vstack shape mismatch");
        Matrix r(a.rows_ + b.rows_, a.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) r(a.rows_ + i, j) = b(i, j);
        return r;
    }

private:
    void check_same(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw MathError("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using QMatrix = Matrix<GaussRational>;
using QVector = std::vector<GaussRational>;

namespace linalg {

struct Echelon {
    QMatrix reduced;
    std::vector<std::size_t> pivots;
};

Echelon rref(QMatrix a);
std::size_t rank(const QMatrix& a);
// Columns form a basis of the null space; free variables in increasing order.
QMatrix kernel(const QMatrix& a);
// Columns form a basis of the column space (pivot columns of a).
QMatrix column_basis(const QMatrix& a);
QMatrix inverse(const QMatrix& a);
// Some x with a x = b, or nullopt.
std::optional<QVector> solve(const QMatrix& a, const QVector& b);
bool in_column_space(const QMatrix& a, const QVector& b);
// Orthogonal projector onto the column space of k (columns independent).
QMatrix projector(const QMatrix& k);
bool is_hermitian(const QMatrix& a);

} // namespace linalg

std::string to_string(const QMatrix& m);

} // namespace nilcohom

#endif

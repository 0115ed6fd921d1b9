#ifndef MOTCALC_MATRIX_HPP
#define MOTCALC_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace motcalc {

// Dense row-major matrix over an exact coefficient type.
template <class T>
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_)
            throw std::invalid_argument("matrix entry count mismatch");
    }
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            for (const auto& v : r) data_.push_back(v);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& v : data_)
            if (v != 0) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix p(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) p(i, j) += a * o(k, j);
            }
        return p;
    }

    Matrix operator+(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix sum shape mismatch");
        Matrix s(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = data_[i] + o.data_[i];
        return s;
    }

    Matrix operator-(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix difference shape mismatch");
        Matrix s(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = data_[i] - o.data_[i];
        return s;
    }

    Matrix operator-() const {
        Matrix s(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = -data_[i];
        return s;
    }

    Matrix scaled(const T& c) const {
        Matrix s(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = c * data_[i];
        return s;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    // row[a] += c * row[b]
    void add_row(std::size_t a, std::size_t b, const T& c) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) += c * (*this)(b, j);
    }
    void add_col(std::size_t a, std::size_t b, const T& c) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, a) += c * (*this)(i, b);
    }
    void negate_row(std::size_t a) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) = -(*this)(a, j);
    }
    void negate_col(std::size_t a) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, a) = -(*this)(i, a);
    }

    Matrix col(std::size_t j) const {
        Matrix c(rows_, 1);
        for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
        return c;
    }

    Matrix submatrix(std::size_t i0, std::size_t j0, std::size_t nr, std::size_t nc) const {
        Matrix s(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) s(i, j) = (*this)(i0 + i, j0 + j);
        return s;
    }

    // [this | o] side by side
    Matrix hstack(const Matrix& o) const {
        if (rows_ != o.rows_) throw std::invalid_argument("hstack row mismatch");
        Matrix s(rows_, cols_ + o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) s(i, j) = (*this)(i, j);
            for (std::size_t j = 0; j < o.cols_; ++j) s(i, cols_ + j) = o(i, j);
        }
        return s;
    }

    Matrix vstack(const Matrix& o) const {
        if (cols_ != o.cols_) throw std::invalid_argument("vstack col mismatch");
        Matrix s(rows_ + o.rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) s(i, j) = (*this)(i, j);
        for (std::size_t i = 0; i < o.rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) s(rows_ + i, j) = o(i, j);
        return s;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

inline RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
    return r;
}

// Fails if any entry has a denominator.
inline IntMatrix to_integral(const RatMatrix& m) {
    IntMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!is_integer(m(i, j))) throw std::invalid_argument("entry is not an integer");
            r(i, j) = rat_num(m(i, j));
        }
    return r;
}

inline bool is_integral(const RatMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!is_integer(m(i, j))) return false;
    return true;
}

}  // namespace motcalc

#endif

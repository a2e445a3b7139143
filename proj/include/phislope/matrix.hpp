#pragma once

#include <cstddef>
#include <vector>

#include "phislope/error.hpp"

namespace phislope {

/// Dense row-major matrix over a ring whose elements carry their own
/// context (no default constructor is required of T).
template <class T>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    require(data_.size() == rows_ * cols_, "matrix data size does not match its shape");
  }

  static Matrix identity(std::size_t n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const { return data_; }

  Matrix operator*(const Matrix& o) const {
    require(cols_ == o.rows_, "matrix product dimension mismatch");
    Matrix out(rows_, o.cols_, zero_like());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
      }
    return out;
  }

  Matrix operator+(const Matrix& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, "matrix sum dimension mismatch");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
    return out;
  }

  Matrix operator-(const Matrix& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, "matrix difference dimension mismatch");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
    return out;
  }

  Matrix scaled(const T& s) const {
    Matrix out = *this;
    for (auto& x : out.data_) x = s * x;
    return out;
  }

  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

  template <class F>
  auto map(F&& f) const {
    using U = decltype(f(data_.front()));
    std::vector<U> out;
    out.reserve(data_.size());
    for (const auto& x : data_) out.push_back(f(x));
    return Matrix<U>(rows_, cols_, std::move(out));
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_, zero_like());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  Matrix submatrix(const std::vector<std::size_t>& row_idx, const std::vector<std::size_t>& col_idx) const {
    Matrix out(row_idx.size(), col_idx.size(), zero_like());
    for (std::size_t i = 0; i < row_idx.size(); ++i)
      for (std::size_t j = 0; j < col_idx.size(); ++j) out(i, j) = (*this)(row_idx[i], col_idx[j]);
    return out;
  }

  /// Zero of the coefficient ring, derived from an existing entry.
  T zero_like() const {
    require(!data_.empty(), "empty matrix has no coefficient ring");
    return data_.front() - data_.front();
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<T> data_;
};

template <class T>
Matrix<T> kronecker(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols(), a.zero_like());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// Entrywise sigma^power; relies on a free function sigma(const T&, int).
template <class T>
Matrix<T> sigma(const Matrix<T>& m, int power) {
  return m.map([power](const T& x) { return sigma(x, power); });
}

}  // namespace phislope

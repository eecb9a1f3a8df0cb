// Copyright 2026 The seqmeas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "seqmeas/errors.hpp"
#include "seqmeas/tolerances.hpp"

namespace seqmeas {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

/// Dense square complex matrix, row-major. Elements of L(H).
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    if (dim == 0) fail(ErrorKind::kDimension, "matrix dimension must be positive");
  }

  ComplexMatrix(std::size_t dim, std::vector<Complex> entries) : dim_(dim), data_(std::move(entries)) {
    if (dim == 0) fail(ErrorKind::kDimension, "matrix dimension must be positive");
    if (data_.size() != dim * dim) {
      fail(ErrorKind::kDimension, "expected " + std::to_string(dim * dim) + " entries, got " +
                                      std::to_string(data_.size()));
    }
  }

  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) : dim_(rows.size()) {
    if (dim_ == 0) fail(ErrorKind::kDimension, "matrix dimension must be positive");
    data_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
      if (row.size() != dim_) fail(ErrorKind::kDimension, "matrix rows must all have length dim");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static ComplexMatrix zero(std::size_t dim) { return ComplexMatrix(dim); }

  static ComplexMatrix identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }
  static ComplexMatrix diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
  }

  /// |u><v|
  static ComplexMatrix outer(const Vector& u, const Vector& v) {
    require_same_dim(u.size(), v.size(), "outer");
    ComplexMatrix m(u.size());
    for (std::size_t r = 0; r < u.size(); ++r)
      for (std::size_t c = 0; c < v.size(); ++c) m(r, c) = u[r] * std::conj(v[c]);
    return m;
  }

  /// Matrix unit E_{row,col}.
  static ComplexMatrix unit(std::size_t dim, std::size_t row, std::size_t col) {
    ComplexMatrix m(dim);
    m(row, col) = 1.0;
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return dim_ == 0; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

  std::span<const Complex> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const {
    ComplexMatrix m(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  double max_norm() const {
    double n = 0.0;
    for (const auto& z : data_) n = std::max(n, std::abs(z));
    return n;
  }

  double frobenius() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  Vector column(std::size_t c) const {
    Vector v(dim_);
    for (std::size_t r = 0; r < dim_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  Vector operator*(const Vector& v) const {
    require_same_dim(dim_, v.size(), "matrix-vector product");
    Vector out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
      Complex s = 0.0;
      for (std::size_t c = 0; c < dim_; ++c) s += (*this)(r, c) * v[c];
      out[r] = s;
    }
    return out;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_dim(dim_, o.dim_, "matrix sum");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_dim(dim_, o.dim_, "matrix difference");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  ComplexMatrix& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a.dim_, b.dim_, "matrix product");
    const std::size_t n = a.dim_;
    ComplexMatrix m(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t k = 0; k < n; ++k) {
        const Complex ark = a(r, k);
        if (ark == Complex{}) continue;
        for (std::size_t c = 0; c < n; ++c) m(r, c) += ark * b(k, c);
      }
    return m;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

/// max |a_ij - b_ij|
inline double max_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "max_distance");
  double d = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) d = std::max(d, std::abs(a.entries()[i] - b.entries()[i]));
  return d;
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

inline Complex inner(const Vector& u, const Vector& v) {
  require_same_dim(u.size(), v.size(), "inner product");
  Complex s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

inline double norm(const Vector& v) { return std::sqrt(std::real(inner(v, v))); }

inline Vector normalized(Vector v) {
  const double n = norm(v);
  if (n == 0.0) fail(ErrorKind::kInvalidArgument, "cannot normalize the zero vector");
  for (auto& z : v) z /= n;
  return v;
}

inline Vector basis_vector(std::size_t dim, std::size_t k) {
  Vector v(dim);
  v.at(k) = 1.0;
  return v;
}

/// tr(a b) without forming the product.
inline Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "trace_of_product");
  Complex s = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t k = 0; k < a.dim(); ++k) s += a(r, k) * b(k, r);
  return s;
}

/// Self-adjoint matrix. Construction accepts asymmetry up to kHermTol and
/// stores the symmetrization (M + M^*)/2.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  explicit HermitianMatrix(const ComplexMatrix& m) : m_(m.dim()) {
    const double asym = max_distance(m, m.adjoint());
    if (asym > kHermTol) {
      fail(ErrorKind::kNotHermitian, "max |M - M^*| = " + std::to_string(asym) + " exceeds tolerance");
    }
    for (std::size_t r = 0; r < m.dim(); ++r)
      for (std::size_t c = 0; c < m.dim(); ++c) m_(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
  }

  static HermitianMatrix zero(std::size_t dim) { return HermitianMatrix(ComplexMatrix(dim)); }
  static HermitianMatrix identity(std::size_t dim) { return HermitianMatrix(ComplexMatrix::identity(dim)); }
  static HermitianMatrix diagonal(std::initializer_list<double> values) {
    return HermitianMatrix(ComplexMatrix::diagonal(values));
  }
  static HermitianMatrix projector(const Vector& v) { return HermitianMatrix(ComplexMatrix::outer(v, v)); }

  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.dim(); }
  const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  double trace() const { return std::real(m_.trace()); }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix(a.m_ + b.m_);
  }
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix(a.m_ - b.m_);
  }
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a) { return HermitianMatrix(s * a.m_); }

  friend bool operator==(const HermitianMatrix&, const HermitianMatrix&) = default;

 private:
  ComplexMatrix m_;
};

/// x a x^* for Hermitian a; the result is Hermitian up to round-off.
inline HermitianMatrix congruence(const ComplexMatrix& x, const HermitianMatrix& a) {
  return HermitianMatrix(x * a.matrix() * x.adjoint());
}

inline double real_trace_of_product(const HermitianMatrix& a, const HermitianMatrix& b) {
  return std::real(trace_of_product(a.matrix(), b.matrix()));
}

}  // namespace seqmeas

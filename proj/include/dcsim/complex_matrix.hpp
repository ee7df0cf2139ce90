// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace dcsim {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major storage.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  Complex& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::vector<Complex>& data() { return data_; }
  const std::vector<Complex>& data() const { return data_; }

  ComplexMatrix adjoint() const;
  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  return matmul(a, b);
}

std::vector<Complex> matvec(const ComplexMatrix& m,
                            const std::vector<Complex>& v);

/// Kronecker product; index arithmetic is overflow-checked.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// True iff m^H m and m m^H are both within tol of the identity.
/// Throws on non-square input; use is_isometry for rectangular maps.
bool is_unitary(const ComplexMatrix& m, double tol);

/// True iff m^H m is within tol of the identity (columns orthonormal).
bool is_isometry(const ComplexMatrix& m, double tol);

}  // namespace dcsim

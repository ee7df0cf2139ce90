// SPDX-License-Identifier: Apache-2.0
#include "dcsim/complex_matrix.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace dcsim {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {
  if (rows != 0 && cols > std::numeric_limits<std::size_t>::max() / rows) {
    throw std::length_error("ComplexMatrix: dimension product overflows");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  ComplexMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) {
      throw std::invalid_argument("from_rows: ragged row lengths");
    }
    std::size_t j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      out(j, i) = std::conj((*this)(i, j));
    }
  }
  return out;
}

bool ComplexMatrix::all_finite() const {
  for (const auto& v : data_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul: inner dimensions disagree");
  }
  const std::size_t n = a.rows();
  const std::size_t k = a.cols();
  const std::size_t m = b.cols();
  ComplexMatrix out(n, m);
  const Complex* ad = a.data().data();
  const Complex* bd = b.data().data();
  Complex* od = out.data().data();
  const std::int64_t rows = static_cast<std::int64_t>(n);
#pragma omp parallel for if (n * m >= 4096)
  for (std::int64_t i = 0; i < rows; ++i) {
    const Complex* arow = ad + static_cast<std::size_t>(i) * k;
    Complex* orow = od + static_cast<std::size_t>(i) * m;
    for (std::size_t p = 0; p < k; ++p) {
      const Complex av = arow[p];
      if (av == Complex(0.0, 0.0)) continue;
      const Complex* brow = bd + p * m;
      for (std::size_t j = 0; j < m; ++j) orow[j] += av * brow[j];
    }
  }
  return out;
}

std::vector<Complex> matvec(const ComplexMatrix& m,
                            const std::vector<Complex>& v) {
  if (m.cols() != v.size()) {
    throw std::invalid_argument("matvec: dimension mismatch");
  }
  std::vector<Complex> out(m.rows(), Complex(0.0, 0.0));
  const std::int64_t rows = static_cast<std::int64_t>(m.rows());
#pragma omp parallel for if (m.size() >= 65536)
  for (std::int64_t i = 0; i < rows; ++i) {
    Complex acc(0.0, 0.0);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      acc += m(static_cast<std::size_t>(i), j) * v[j];
    }
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t max = std::numeric_limits<std::size_t>::max();
  if ((b.rows() != 0 && a.rows() > max / b.rows()) ||
      (b.cols() != 0 && a.cols() > max / b.cols())) {
    throw std::length_error("tensor_product: index arithmetic overflows");
  }
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  const std::int64_t arows = static_cast<std::int64_t>(a.rows());
#pragma omp parallel for if (out.size() >= 65536)
  for (std::int64_t ia = 0; ia < arows; ++ia) {
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const Complex av = a(static_cast<std::size_t>(ia), ja);
      for (std::size_t ib = 0; ib < b.rows(); ++ib) {
        for (std::size_t jb = 0; jb < b.cols(); ++jb) {
          out(static_cast<std::size_t>(ia) * b.rows() + ib,
              ja * b.cols() + jb) = av * b(ib, jb);
        }
      }
    }
  }
  return out;
}

ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("subtract: shape mismatch");
  }
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    out.data()[i] = a.data()[i] - b.data()[i];
  }
  return out;
}

double max_abs(const ComplexMatrix& m) {
  double mx = 0.0;
  for (const auto& v : m.data()) mx = std::max(mx, std::abs(v));
  return mx;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  double mx = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    mx = std::max(mx, std::abs(a.data()[i] - b.data()[i]));
  }
  return mx;
}

namespace {

double gram_deviation(const ComplexMatrix& m) {
  const ComplexMatrix g = matmul(m.adjoint(), m);
  double mx = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      const Complex want = (i == j) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
      mx = std::max(mx, std::abs(g(i, j) - want));
    }
  }
  return mx;
}

}  // namespace

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(
        "is_unitary: matrix is not square (use is_isometry)");
  }
  if (m.rows() == 0) throw std::invalid_argument("is_unitary: empty matrix");
  return gram_deviation(m) <= tol && gram_deviation(m.adjoint()) <= tol;
}

bool is_isometry(const ComplexMatrix& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) {
    throw std::invalid_argument("is_isometry: empty matrix");
  }
  return gram_deviation(m) <= tol;
}

}  // namespace dcsim

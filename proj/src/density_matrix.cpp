// SPDX-License-Identifier: Apache-2.0
#include "dcsim/density_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace dcsim {

DensityMatrix::DensityMatrix(Basis basis, ComplexMatrix m, double declared_trace)
    : basis_(std::move(basis)), m_(std::move(m)), declared_trace_(declared_trace) {
  if (m_.rows() != m_.cols() || m_.rows() != basis_.dimension()) {
    throw std::invalid_argument("DensityMatrix: matrix/basis shape mismatch");
  }
  if (!m_.all_finite()) {
    throw std::invalid_argument("DensityMatrix: non-finite entry");
  }
}

DensityMatrix DensityMatrix::from_pure(const QuantumState& s) {
  const std::size_t n = s.basis().dimension();
  ComplexMatrix m(n, n);
  const std::int64_t rows = static_cast<std::int64_t>(n);
#pragma omp parallel for if (n >= 256)
  for (std::int64_t i = 0; i < rows; ++i) {
    const Complex ai = s.amplitude(static_cast<std::size_t>(i));
    for (std::size_t j = 0; j < n; ++j) {
      m(static_cast<std::size_t>(i), j) = ai * std::conj(s.amplitude(j));
    }
  }
  return DensityMatrix(s.basis(), std::move(m), s.norm_squared());
}

double DensityMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < m_.rows(); ++i) t += m_(i, i).real();
  return t;
}

bool DensityMatrix::is_hermitian(double tol) const {
  for (std::size_t i = 0; i < m_.rows(); ++i) {
    for (std::size_t j = i; j < m_.cols(); ++j) {
      if (std::abs(m_(i, j) - std::conj(m_(j, i))) > tol) return false;
    }
  }
  return true;
}

double DensityMatrix::min_eigenvalue() const {
  const auto ev = hermitian_eigenvalues(m_);
  return ev.empty() ? 0.0 : ev.front();
}

DensityMatrix DensityMatrix::renormalized() const {
  const double t = trace();
  if (t <= 0.0) throw std::domain_error("renormalized: non-positive trace");
  ComplexMatrix m = m_;
  for (auto& v : m.data()) v /= t;
  DensityMatrix out(basis_, std::move(m), 1.0);
  out.renorm_ = renorm_ * t;
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t factor_index) {
  const Basis& basis = rho.basis();
  if (factor_index >= basis.factor_count()) {
    throw std::out_of_range("partial_trace: factor index out of range");
  }
  const std::size_t dt = basis.factor(factor_index).symbols.size();
  std::size_t trail = 1;
  for (std::size_t f = factor_index + 1; f < basis.factor_count(); ++f) {
    trail *= basis.factor(f).symbols.size();
  }
  const std::size_t block = dt * trail;
  const std::size_t out_dim = basis.dimension() / dt;

  ComplexMatrix out(out_dim, out_dim);
  const std::int64_t od = static_cast<std::int64_t>(out_dim);
#pragma omp parallel for if (out_dim >= 64)
  for (std::int64_t oi = 0; oi < od; ++oi) {
    const std::size_t a1 = static_cast<std::size_t>(oi) / trail;
    const std::size_t b1 = static_cast<std::size_t>(oi) % trail;
    for (std::size_t oj = 0; oj < out_dim; ++oj) {
      const std::size_t a2 = oj / trail;
      const std::size_t b2 = oj % trail;
      Complex acc(0.0, 0.0);
      for (std::size_t k = 0; k < dt; ++k) {
        acc += rho.matrix()(a1 * block + k * trail + b1,
                            a2 * block + k * trail + b2);
      }
      out(static_cast<std::size_t>(oi), oj) = acc;
    }
  }
  return DensityMatrix(basis.without_factor(factor_index), std::move(out),
                       rho.declared_trace());
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("hermitian_eigenvalues: non-square matrix");
  }
  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  // Symmetrize to wash out representation noise before sweeping.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
    }
  }
  double scale = 0.0;
  for (const auto& v : a.data()) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return std::vector<double>(n, 0.0);
  const double stop = 1e-15 * scale * static_cast<double>(n);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    }
    if (off <= stop) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex b = a(p, q);
        const double babs = std::abs(b);
        if (babs <= stop * 1e-2) continue;
        const Complex phase = b / babs;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (app - aqq) / (2.0 * babs);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Column update with J, then row update with J^H.
        for (std::size_t i = 0; i < n; ++i) {
          const Complex ap = a(i, p);
          const Complex aq = a(i, q);
          a(i, p) = c * ap + s * std::conj(phase) * aq;
          a(i, q) = -s * ap + c * std::conj(phase) * aq;
        }
        for (std::size_t j = 0; j < n; ++j) {
          const Complex ap = a(p, j);
          const Complex aq = a(q, j);
          a(p, j) = c * ap + s * phase * aq;
          a(q, j) = -s * ap + c * phase * aq;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i).real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace dcsim

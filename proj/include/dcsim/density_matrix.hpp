// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "dcsim/complex_matrix.hpp"
#include "dcsim/quantum_state.hpp"

namespace dcsim {

/// Density operator over a labeled basis. `declared_trace` is the trace the
/// matrix is supposed to carry (1 for normalized states, the squared norm for
/// conditional ones); invariant checks compare against it.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  DensityMatrix(Basis basis, ComplexMatrix m, double declared_trace);

  static DensityMatrix from_pure(const QuantumState& s);

  const Basis& basis() const { return basis_; }
  const ComplexMatrix& matrix() const { return m_; }
  double declared_trace() const { return declared_trace_; }

  double trace() const;
  bool is_hermitian(double tol) const;
  double min_eigenvalue() const;

  /// Copy rescaled to unit trace; the divided-out trace is recorded in
  /// declared_trace bookkeeping via renormalization().
  DensityMatrix renormalized() const;
  double renormalization() const { return renorm_; }

 private:
  Basis basis_;
  ComplexMatrix m_;
  double declared_trace_ = 1.0;
  double renorm_ = 1.0;
};

/// Trace out one tensor factor. The result keeps the remaining factors and
/// the input's declared trace.
DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t factor_index);

/// Eigenvalues of a Hermitian matrix (ascending), cyclic Jacobi sweeps.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

}  // namespace dcsim

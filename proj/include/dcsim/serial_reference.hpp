// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "dcsim/complex_matrix.hpp"
#include "dcsim/quantum_state.hpp"

namespace dcsim::serial {

// Plain single-threaded implementations of the core kernels. They are kept
// deliberately naive and independent of the main code paths so tests can use
// them as oracles, and the bench target compares against them.

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Partial trace by direct double-index summation: iterate every entry pair
/// of the input, decompose both composite indices digit by digit, and
/// accumulate where the traced digits agree and all others match.
ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            const std::vector<std::size_t>& factor_dims,
                            std::size_t traced_factor);

}  // namespace dcsim::serial

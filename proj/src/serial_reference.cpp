// SPDX-License-Identifier: Apache-2.0
#include "dcsim/serial_reference.hpp"

#include <stdexcept>

namespace dcsim::serial {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("serial::matmul: inner dimensions disagree");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Complex acc(0.0, 0.0);
      for (std::size_t p = 0; p < a.cols(); ++p) acc += a(i, p) * b(p, j);
      out(i, j) = acc;
    }
  }
  return out;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < out.cols(); ++j) {
      out(i, j) = a(i / b.rows(), j / b.cols()) * b(i % b.rows(), j % b.cols());
    }
  }
  return out;
}

namespace {

std::vector<std::size_t> digits(std::size_t index,
                                const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> d(dims.size());
  for (std::size_t f = dims.size(); f-- > 0;) {
    d[f] = index % dims[f];
    index /= dims[f];
  }
  return d;
}

std::size_t recompose_without(const std::vector<std::size_t>& d,
                              const std::vector<std::size_t>& dims,
                              std::size_t skip) {
  std::size_t idx = 0;
  for (std::size_t f = 0; f < dims.size(); ++f) {
    if (f == skip) continue;
    idx = idx * dims[f] + d[f];
  }
  return idx;
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            const std::vector<std::size_t>& factor_dims,
                            std::size_t traced_factor) {
  if (traced_factor >= factor_dims.size()) {
    throw std::out_of_range("serial::partial_trace: traced factor");
  }
  std::size_t dim = 1;
  for (std::size_t d : factor_dims) dim *= d;
  if (rho.rows() != dim || rho.cols() != dim) {
    throw std::invalid_argument("serial::partial_trace: shape mismatch");
  }
  ComplexMatrix out(dim / factor_dims[traced_factor],
                    dim / factor_dims[traced_factor]);
  for (std::size_t i = 0; i < dim; ++i) {
    const auto di = digits(i, factor_dims);
    for (std::size_t j = 0; j < dim; ++j) {
      const auto dj = digits(j, factor_dims);
      if (di[traced_factor] != dj[traced_factor]) continue;
      out(recompose_without(di, factor_dims, traced_factor),
          recompose_without(dj, factor_dims, traced_factor)) += rho(i, j);
    }
  }
  return out;
}

}  // namespace dcsim::serial

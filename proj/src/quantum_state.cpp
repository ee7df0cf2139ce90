// SPDX-License-Identifier: Apache-2.0
#include "dcsim/quantum_state.hpp"

#include <cmath>
#include <stdexcept>

namespace dcsim {

Basis::Basis(std::vector<BasisFactor> factors) : factors_(std::move(factors)) {
  dim_ = factors_.empty() ? 0 : 1;
  for (const auto& f : factors_) {
    if (f.symbols.empty()) {
      throw std::invalid_argument("Basis: factor '" + f.name +
                                  "' has no symbols");
    }
    dim_ *= f.symbols.size();
  }
}

const BasisFactor& Basis::factor(std::size_t i) const {
  if (i >= factors_.size()) throw std::out_of_range("Basis: factor index");
  return factors_[i];
}

std::string Basis::label(std::size_t index) const {
  const auto parts = decompose(index);
  std::string out;
  for (std::size_t f = 0; f < parts.size(); ++f) {
    if (f > 0) out += ':';
    out += factors_[f].symbols[parts[f]];
  }
  return out;
}

std::vector<std::size_t> Basis::decompose(std::size_t index) const {
  if (index >= dim_) throw std::out_of_range("Basis: index out of range");
  std::vector<std::size_t> parts(factors_.size());
  for (std::size_t f = factors_.size(); f-- > 0;) {
    const std::size_t d = factors_[f].symbols.size();
    parts[f] = index % d;
    index /= d;
  }
  return parts;
}

std::size_t Basis::compose(const std::vector<std::size_t>& parts) const {
  if (parts.size() != factors_.size()) {
    throw std::invalid_argument("Basis: wrong number of factor indices");
  }
  std::size_t index = 0;
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    const std::size_t d = factors_[f].symbols.size();
    if (parts[f] >= d) throw std::out_of_range("Basis: factor index");
    index = index * d + parts[f];
  }
  return index;
}

Basis Basis::without_factor(std::size_t factor_index) const {
  if (factor_index >= factors_.size()) {
    throw std::out_of_range("Basis: factor index");
  }
  std::vector<BasisFactor> rest;
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    if (f != factor_index) rest.push_back(factors_[f]);
  }
  return Basis(std::move(rest));
}

bool Basis::operator==(const Basis& other) const {
  if (factors_.size() != other.factors_.size()) return false;
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    if (factors_[f].name != other.factors_[f].name ||
        factors_[f].symbols != other.factors_[f].symbols) {
      return false;
    }
  }
  return true;
}

QuantumState::QuantumState(Basis basis, std::vector<Complex> amplitudes,
                           NormKind kind)
    : basis_(std::move(basis)), amps_(std::move(amplitudes)), kind_(kind) {
  if (amps_.size() != basis_.dimension()) {
    throw std::invalid_argument("QuantumState: amplitude count != dimension");
  }
  for (const auto& a : amps_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("QuantumState: non-finite amplitude");
    }
  }
}

double QuantumState::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

double QuantumState::norm() const { return std::sqrt(norm_squared()); }

QuantumState QuantumState::renormalized() const {
  const double n = norm();
  if (n <= 0.0) {
    throw std::domain_error("renormalized: zero-norm state");
  }
  std::vector<Complex> amps = amps_;
  for (auto& a : amps) a /= n;
  QuantumState out(basis_, std::move(amps), NormKind::normalized);
  out.renorm_ = renorm_ * n;
  return out;
}

double ProbabilityMap::prob(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return probs[i];
  }
  throw std::invalid_argument("ProbabilityMap: unknown label '" + label + "'");
}

double ProbabilityMap::sum() const {
  double s = 0.0;
  for (double p : probs) s += p;
  return s;
}

QuantumState apply(const ComplexMatrix& op, const QuantumState& s) {
  if (op.rows() != op.cols()) {
    throw std::invalid_argument("apply: non-square operator needs an output basis");
  }
  return apply(op, s, s.basis());
}

QuantumState apply(const ComplexMatrix& op, const QuantumState& s,
                   const Basis& out_basis) {
  if (op.cols() != s.basis().dimension()) {
    throw std::invalid_argument("apply: operator/state dimension mismatch");
  }
  if (op.rows() != out_basis.dimension()) {
    throw std::invalid_argument("apply: operator/output basis mismatch");
  }
  std::vector<Complex> out = matvec(op, s.amplitudes());
  double n2 = 0.0;
  for (const auto& a : out) n2 += std::norm(a);
  const NormKind kind = std::abs(n2 - 1.0) <= 1e-10 ? NormKind::normalized
                                                    : NormKind::conditional;
  return QuantumState(out_basis, std::move(out), kind);
}

ProbabilityMap born_distribution(const QuantumState& s) {
  QuantumState src = s;
  ProbabilityMap map;
  if (s.kind() == NormKind::conditional) {
    src = s.renormalized();
    map.renormalization = src.renormalization();
  } else if (std::abs(s.norm_squared() - 1.0) > 1e-10) {
    throw std::domain_error("born_distribution: state is not normalized");
  }
  const std::size_t dim = src.basis().dimension();
  map.labels.reserve(dim);
  map.probs.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    map.labels.push_back(src.basis().label(i));
    map.probs.push_back(std::norm(src.amplitude(i)));
  }
  return map;
}

}  // namespace dcsim

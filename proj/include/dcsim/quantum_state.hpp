// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "dcsim/complex_matrix.hpp"

namespace dcsim {

/// One tensor factor of a labeled basis, e.g. {"photon", {"up", "down"}}.
struct BasisFactor {
  std::string name;
  std::vector<std::string> symbols;
};

/// Ordered tensor-factor basis. Composite index is Kronecker-ordered:
/// the first factor varies slowest.
class Basis {
 public:
  Basis() = default;
  explicit Basis(std::vector<BasisFactor> factors);

  std::size_t dimension() const { return dim_; }
  std::size_t factor_count() const { return factors_.size(); }
  const BasisFactor& factor(std::size_t i) const;
  const std::vector<BasisFactor>& factors() const { return factors_; }

  /// Composite label, factor symbols joined with ':' ("up:off").
  std::string label(std::size_t index) const;

  /// Per-factor indices of a composite index.
  std::vector<std::size_t> decompose(std::size_t index) const;
  std::size_t compose(const std::vector<std::size_t>& parts) const;

  /// Basis with one factor removed.
  Basis without_factor(std::size_t factor_index) const;

  bool operator==(const Basis& other) const;

 private:
  std::vector<BasisFactor> factors_;
  std::size_t dim_ = 0;
};

enum class NormKind { normalized, conditional };

/// Complex amplitude vector over a labeled basis. Sub-normalized
/// (post-selected) states carry NormKind::conditional; whenever such a
/// state is rescaled to unit norm the constant is recorded.
class QuantumState {
 public:
  QuantumState() = default;
  QuantumState(Basis basis, std::vector<Complex> amplitudes, NormKind kind);

  const Basis& basis() const { return basis_; }
  const std::vector<Complex>& amplitudes() const { return amps_; }
  std::vector<Complex>& amplitudes() { return amps_; }
  NormKind kind() const { return kind_; }

  /// Norm that was divided out when this state was renormalized (1 if never).
  double renormalization() const { return renorm_; }

  double norm() const;
  double norm_squared() const;

  /// Unit-norm copy; records the divided-out norm. Throws on zero norm.
  QuantumState renormalized() const;

  Complex amplitude(std::size_t i) const { return amps_[i]; }

 private:
  Basis basis_;
  std::vector<Complex> amps_;
  NormKind kind_ = NormKind::normalized;
  double renorm_ = 1.0;
};

/// Result of a Born-rule readout: probabilities aligned with basis labels,
/// in declared basis order.
struct ProbabilityMap {
  std::vector<std::string> labels;
  std::vector<double> probs;
  /// Norm divided out if the source state was conditional (1 otherwise).
  double renormalization = 1.0;

  double prob(const std::string& label) const;
  double sum() const;
};

/// Apply a square operator; the basis is unchanged.
QuantumState apply(const ComplexMatrix& op, const QuantumState& s);

/// Apply a (possibly rectangular) operator mapping into out_basis.
QuantumState apply(const ComplexMatrix& op, const QuantumState& s,
                   const Basis& out_basis);

/// Born-rule distribution over basis labels. Conditional states are
/// renormalized first and the constant recorded in the result.
ProbabilityMap born_distribution(const QuantumState& s);

}  // namespace dcsim

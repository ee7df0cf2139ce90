// SPDX-License-Identifier: Apache-2.0
#include "dcsim/wheeler.hpp"

#include <cmath>
#include <stdexcept>

namespace dcsim::wheeler {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

GateSet gates() {
  GateSet g;
  g.hadamard = ComplexMatrix::from_rows(
      {{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}});
  g.pauli_x = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  g.controlled_hadamard = ComplexMatrix::from_rows(
      {{1.0, 0.0, 0.0, 0.0},
       {0.0, kInvSqrt2, 0.0, kInvSqrt2},
       {0.0, 0.0, 1.0, 0.0},
       {0.0, kInvSqrt2, 0.0, -kInvSqrt2}});
  g.randomizer_gate = tensor_product(ComplexMatrix::identity(2), g.hadamard);
  g.phase_flip = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
  return g;
}

Basis photon_basis() {
  return Basis({{"photon", {"up", "down"}}});
}

Basis joint_basis() {
  return Basis({{"photon", {"up", "down"}}, {"randomizer", {"off", "on"}}});
}

std::vector<ComplexMatrix> stage_operators(int scenario) {
  const GateSet g = gates();
  switch (scenario) {
    case 1:
      return {g.hadamard, g.pauli_x};
    case 2:
      return {g.hadamard, g.pauli_x, g.hadamard};
    case 3: {
      const ComplexMatrix i2 = ComplexMatrix::identity(2);
      return {tensor_product(g.hadamard, i2), tensor_product(g.pauli_x, i2),
              matmul(g.controlled_hadamard, g.randomizer_gate)};
    }
    default:
      throw std::invalid_argument("wheeler: scenario must be 1, 2 or 3");
  }
}

Timeline scenario_states(int scenario) {
  const auto ops = stage_operators(scenario);
  Timeline tl;
  tl.scenario = scenario;

  QuantumState state;
  if (scenario == 3) {
    // photon enters in the lower arm, randomizer off
    std::vector<Complex> amps(4, 0.0);
    amps[2] = 1.0;  // down:off
    state = QuantumState(joint_basis(), std::move(amps), NormKind::normalized);
  } else {
    std::vector<Complex> amps(2, 0.0);
    amps[1] = 1.0;  // down
    state = QuantumState(photon_basis(), std::move(amps), NormKind::normalized);
  }

  int t = 1;
  tl.states.emplace_back(t, state);
  for (const auto& op : ops) {
    state = apply(op, state);
    tl.states.emplace_back(++t, state);
  }
  return tl;
}

ComplexMatrix compose_delayed() {
  const GateSet g = gates();
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  ComplexMatrix m = tensor_product(g.hadamard, i2);
  m = matmul(tensor_product(g.pauli_x, i2), m);
  m = matmul(g.randomizer_gate, m);
  return matmul(g.controlled_hadamard, m);
}

ComplexMatrix compose_nondelayed() {
  const GateSet g = gates();
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  ComplexMatrix m = g.randomizer_gate;
  m = matmul(tensor_product(g.hadamard, i2), m);
  m = matmul(tensor_product(g.pauli_x, i2), m);
  return matmul(g.controlled_hadamard, m);
}

ComplexMatrix closed_form_matrix() {
  const double r = std::sqrt(2.0);
  ComplexMatrix m = ComplexMatrix::from_rows({{1.0, 1.0, -1.0, -1.0},
                                              {r, -r, 0.0, 0.0},
                                              {1.0, 1.0, 1.0, 1.0},
                                              {0.0, 0.0, -r, r}});
  for (auto& v : m.data()) v *= 0.5;
  return m;
}

ProbabilityMap detector_distribution(int scenario) {
  const Timeline tl = scenario_states(scenario);
  return born_distribution(tl.states.back().second);
}

}  // namespace dcsim::wheeler

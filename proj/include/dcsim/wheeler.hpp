// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "dcsim/complex_matrix.hpp"
#include "dcsim/quantum_state.hpp"

namespace dcsim::wheeler {

// Delayed-choice Mach-Zehnder model: a photon crossing two beamsplitters
// with a quantum randomizer deciding, after the photon is inside the
// interferometer, whether the second beamsplitter acts.
//
// Photon basis: {up, down}. Joint basis photon (x) randomizer:
// {up:off, up:on, down:off, down:on}, photon factor first.

struct GateSet {
  ComplexMatrix hadamard;             // beamsplitter on the photon
  ComplexMatrix pauli_x;              // mirror pair (path swap)
  ComplexMatrix controlled_hadamard;  // second beamsplitter, gated by randomizer
  ComplexMatrix randomizer_gate;      // I (x) H, arms the randomizer
  ComplexMatrix phase_flip;           // diag(1, -1); hadamard*pauli_x*hadamard
};

GateSet gates();

Basis photon_basis();
Basis joint_basis();  // photon (x) randomizer

struct Timeline {
  int scenario = 0;
  /// (stage label, state) pairs, stage labels increasing from 1.
  std::vector<std::pair<int, QuantumState>> states;
};

/// Scenario 1: first beamsplitter and mirrors only (stages 1..3).
/// Scenario 2: scenario 1 plus the second beamsplitter (stages 1..4).
/// Scenario 3: randomizer armed mid-flight (joint basis, stages 1..4).
Timeline scenario_states(int scenario);

/// Operators carrying stage t to stage t+1, aligned with the timeline.
std::vector<ComplexMatrix> stage_operators(int scenario);

/// Randomizer arming and gated beamsplitter applied after the mirrors:
/// controlled_hadamard * randomizer_gate * pauli_x(x)I * hadamard(x)I.
ComplexMatrix compose_delayed();

/// Randomizer armed before the photon enters:
/// controlled_hadamard * pauli_x(x)I * hadamard(x)I * randomizer_gate.
ComplexMatrix compose_nondelayed();

/// The same operator written out entry by entry, for verification.
ComplexMatrix closed_form_matrix();

/// Born distribution at the detectors for a scenario's final state.
ProbabilityMap detector_distribution(int scenario);

}  // namespace dcsim::wheeler

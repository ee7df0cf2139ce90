// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "dcsim/complex_matrix.hpp"
#include "dcsim/density_matrix.hpp"
#include "dcsim/quantum_state.hpp"

namespace dcsim::eraser {

// Delayed-choice quantum eraser on a discretized screen: a double slit, a
// crystal splitting each photon into a signal/idler pair, the signal
// collapsing onto one of N screen bins, and idler optics that either keep,
// erase, or partially erase the which-slit record.
//
// Bases (slit-label major, angle-index minor):
//   slit (x) angle              dimension 2N
//   signal pair (x) idler pair  dimension (2N)^2

enum class Envelope { fraunhofer_sinc2, gaussian, uniform };

Envelope envelope_from_string(const std::string& name);
std::string envelope_name(Envelope e);

struct Config {
  std::size_t n_angles = 256;
  double wavelength = 500.0;
  double slit_separation = 10000.0;  // 20 * wavelength
  double slit_width = 2000.0;        //  4 * wavelength
  double screen_distance = 1.0e6;    // slits to screen
  double aperture = 0.25;            // max |sin(theta)| covered by the bins
  Envelope envelope = Envelope::fraunhofer_sinc2;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  /// Bin center k (0-based) on the uniform-in-sin(theta) grid.
  double sin_theta(std::size_t k) const;
};

/// Per-bin slit amplitudes. Each slit's vector is unit-norm; the right/left
/// phases are +/- pi * d * sin(theta) / wavelength. Screen positions x are
/// strictly increasing.
struct SlitAmplitudes {
  std::vector<Complex> p_right;
  std::vector<Complex> p_left;
  std::vector<double> x;
};

SlitAmplitudes slit_amplitudes(const Config& cfg);

/// Amplitudes conditioned on arrival at bin k, normalized so that
/// |right|^2 + |left|^2 = 1. Throws std::domain_error on a dark bin.
struct ConditionalAmplitudes {
  std::size_t bin = 0;
  Complex right;
  Complex left;
};

ConditionalAmplitudes conditional_amplitudes(const SlitAmplitudes& amps,
                                             std::size_t k);

Basis slit_angle_basis(std::size_t n_angles);
Basis pair_basis(std::size_t n_angles);  // signal (x) idler, four factors

/// Pair-creation isometry, dense (2N)^2 x 2N: |slit,n> -> |slit,n>(x)|slit,n>.
ComplexMatrix build_crystal(const Config& cfg);

/// Screen conditioning map, dense 2N x (2N)^2. Matched signal/idler pairs
/// |slit,n>(x)|slit,n> map to (1/sqrt(N)) sum_m ptilde_{slit,m} |slit,m> on
/// the idler; all unmatched pair columns are zero. Not an isometry.
ComplexMatrix build_screen(const Config& cfg, const SlitAmplitudes& amps);

/// Idler-arm scattering (rows = detector ports, columns = slit paths R,L).
///   experiment 1: which-slit kept      (D1, D2)
///   experiment 2: which-slit erased    (D1, D2)
///   experiment 3: half-erased          (D1..D4)
struct IdlerOptics {
  int experiment = 0;
  std::vector<std::string> ports;
  ComplexMatrix scattering;
};

IdlerOptics build_idler_optics(int experiment);

/// Joint arrival distribution P(x_k, D_j), bin-major row layout.
struct JointDistribution {
  std::string experiment;
  std::vector<double> x;
  std::vector<std::string> detectors;
  std::vector<double> p;  // n_bins * n_detectors

  double at(std::size_t k, std::size_t j) const {
    return p[k * detectors.size() + j];
  }
  std::vector<double> screen_marginal() const;
  std::vector<double> detector_totals() const;
  double total() const;
};

JointDistribution joint_distribution(const Config& cfg, int experiment);

/// Same layout with the interference cross terms dropped (incoherent sum
/// over paths): the fringe-free envelope used as a visibility reference.
JointDistribution envelope_distribution(const Config& cfg, int experiment);

enum class TraceOut { d1, d2, both };

/// State after the erasing beamsplitter for arrival bin k, as a density
/// operator over detector-1 (x) detector-2 (x) screen record, with the
/// requested factor(s) traced out. Tracing one detector keeps the
/// post-selected trace 1/2; tracing both renormalizes to the pure screen
/// record |x_k><x_k|.
DensityMatrix reduced_detection_state(const Config& cfg, std::size_t k,
                                      TraceOut trace_out);

/// Idler optics applied after the screen acted: (H(x)I)(X(x)I)(H(x)I) S C,
/// composed by streaming basis columns through each displayed action.
ComplexMatrix compose_delayed(const Config& cfg);

/// Idler optics applied before the screen: S composed with the gates lifted
/// onto the idler factor of the pair space, then C.
ComplexMatrix compose_nondelayed(const Config& cfg);

/// Reference lane: the same compositions via the dense builders and the
/// serial kernels. Memory grows as (2N)^4; small N only.
ComplexMatrix compose_delayed_dense(const Config& cfg);
ComplexMatrix compose_nondelayed_dense(const Config& cfg);

/// Lifted idler gate applied in place to a pair-space vector: for every
/// signal index and angle, mixes the idler R/L components through g (2x2).
void apply_idler_gate(const ComplexMatrix& g, std::vector<Complex>& pair_vec,
                      std::size_t n_angles);

/// Screen action on a pair-space vector (length (2N)^2) -> idler vector (2N).
std::vector<Complex> apply_screen(const SlitAmplitudes& amps,
                                  const std::vector<Complex>& pair_vec);

/// Column index of the matched pair |slit,n>(x)|slit,n> in the pair space.
std::size_t matched_index(std::size_t slit, std::size_t n,
                          std::size_t n_angles);

}  // namespace dcsim::eraser

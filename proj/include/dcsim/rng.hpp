// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcsim/quantum_state.hpp"

namespace dcsim::rng {

/// Counter-based deterministic generator built from the SplitMix64
/// finalizer. A draw is a pure function of (seed, stream, counter), so
/// per-run streams are reproducible and order-independent under parallel
/// execution, with identical output on any platform with 64-bit integers.
std::uint64_t mix64(std::uint64_t z);
std::uint64_t stream_value(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t counter);

/// Uniform double in [0, 1) from the top 53 bits of a stream value.
double uniform01(std::uint64_t seed, std::uint64_t stream,
                 std::uint64_t counter = 0);

/// Inverse-CDF index into `probs` (declared order) for uniform draw u.
/// Zero-probability entries are never selected.
std::size_t inverse_cdf_index(const std::vector<double>& probs, double u);

}  // namespace dcsim::rng

namespace dcsim {

/// Draw one outcome index from a Born distribution using the stream
/// (rng_seed, run_index). Inverse-CDF over labels in declared basis order.
std::size_t sample_outcome_index(const ProbabilityMap& dist,
                                 std::uint64_t rng_seed,
                                 std::uint64_t run_index);

/// Same draw, returned as the basis label.
std::string sample_outcome(const ProbabilityMap& dist, std::uint64_t rng_seed,
                           std::uint64_t run_index);

}  // namespace dcsim

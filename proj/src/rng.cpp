// SPDX-License-Identifier: Apache-2.0
#include "dcsim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace dcsim::rng {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ull;
}  // namespace

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

std::uint64_t stream_value(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t counter) {
  const std::uint64_t key = mix64(seed + kGamma);
  const std::uint64_t base = mix64(key ^ (stream * kGamma + kStreamSalt));
  return mix64(base + counter * kGamma);
}

double uniform01(std::uint64_t seed, std::uint64_t stream,
                 std::uint64_t counter) {
  return static_cast<double>(stream_value(seed, stream, counter) >> 11) *
         0x1.0p-53;
}

std::size_t inverse_cdf_index(const std::vector<double>& probs, double u) {
  if (probs.empty()) {
    throw std::invalid_argument("inverse_cdf_index: empty distribution");
  }
  double cum = 0.0;
  std::size_t last_positive = probs.size();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    if (p < -1e-12 || !std::isfinite(p)) {
      throw std::invalid_argument("inverse_cdf_index: invalid probability");
    }
    if (p <= 0.0) continue;
    cum += p;
    last_positive = i;
    if (u < cum) return i;
  }
  if (last_positive == probs.size()) {
    throw std::domain_error("inverse_cdf_index: all probabilities zero");
  }
  // u landed past the accumulated mass (rounding at the top end).
  return last_positive;
}

}  // namespace dcsim::rng

namespace dcsim {

std::size_t sample_outcome_index(const ProbabilityMap& dist,
                                 std::uint64_t rng_seed,
                                 std::uint64_t run_index) {
  const double total = dist.sum();
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("sample_outcome: probabilities do not sum to 1");
  }
  const double u = rng::uniform01(rng_seed, run_index);
  return rng::inverse_cdf_index(dist.probs, u);
}

std::string sample_outcome(const ProbabilityMap& dist, std::uint64_t rng_seed,
                           std::uint64_t run_index) {
  return dist.labels[sample_outcome_index(dist, rng_seed, run_index)];
}

}  // namespace dcsim

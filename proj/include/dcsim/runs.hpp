// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dcsim/eraser.hpp"
#include "dcsim/quantum_state.hpp"

namespace dcsim::runs {

/// One simulated run. Screen fields are empty for setups without a screen.
struct EventRecord {
  std::uint64_t run_id = 0;
  std::string experiment;
  std::optional<std::size_t> screen_bin;
  std::optional<double> x_position;
  std::string detector;
};

struct Outcome {
  std::optional<std::size_t> screen_bin;
  std::optional<double> x_position;
  std::string detector;
};

/// Flattened outcome list with aligned probabilities, in declared order.
struct SampleSpace {
  std::string experiment;
  std::vector<Outcome> outcomes;
  std::vector<double> probs;
};

/// Bin-major, detector-minor flattening of a joint distribution.
SampleSpace make_sample_space(const eraser::JointDistribution& jd);

/// Detector-only outcomes from a Born distribution.
SampleSpace make_sample_space(const ProbabilityMap& dist,
                              const std::string& experiment);

/// Draw n_runs outcomes. Run i uses the counter-based stream (seed, i), so
/// the result is independent of thread count and schedule.
std::vector<EventRecord> simulate_runs(const SampleSpace& space,
                                       std::size_t n_runs, std::uint64_t seed);

std::map<std::string, std::vector<EventRecord>> group_events(
    const std::vector<EventRecord>& events);

struct Histogram {
  std::string group;
  std::vector<double> bin_edges;  // n_bins + 1, strictly increasing
  std::vector<double> counts;     // n_bins
};

/// n_bins + 1 equally spaced edges over [x_lo, x_hi].
std::vector<double> uniform_edges(std::size_t n_bins, double x_lo,
                                  double x_hi);

/// Histogram of event screen positions. Edges must be strictly increasing
/// (std::invalid_argument otherwise); events without a position throw
/// std::invalid_argument; positions outside the edges throw
/// std::out_of_range.
Histogram make_histogram(const std::vector<EventRecord>& events,
                         std::string group, std::vector<double> bin_edges);

/// Per-detector histograms plus an "ALL" histogram of every event.
std::map<std::string, Histogram> histograms_by_detector(
    const std::vector<EventRecord>& events,
    const std::vector<double>& bin_edges);

struct VisibilityResult {
  double value = 0.0;
  std::size_t first_bin = 0;  // evaluated window, inclusive
  std::size_t last_bin = 0;
};

/// Fringe visibility (max-min)/(max+min) of envelope-normalized counts,
/// evaluated on bins whose centers lie in the central half of the range.
/// `envelope` holds reference counts per bin, positive on the window;
/// its overall scale cancels.
VisibilityResult visibility(const Histogram& h,
                            const std::vector<double>& envelope);

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 0.0;
  std::size_t pooled_bins = 0;
};

/// Pearson goodness-of-fit of observed counts against expected probabilities
/// for n_total draws. Bins are pooled left to right until each pooled bin
/// has expected count >= 5; a small trailing remainder merges into the last
/// pooled bin. dof = pooled - 1.
ChiSquareResult chi_square_gof(const std::vector<double>& observed,
                               const std::vector<double>& expected_probs,
                               double n_total);

/// Same test on histogram counts; n_total is the count sum.
ChiSquareResult chi_square_gof(const Histogram& h,
                               const std::vector<double>& expected_probs);

}  // namespace dcsim::runs

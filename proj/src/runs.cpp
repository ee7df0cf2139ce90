// SPDX-License-Identifier: Apache-2.0
#include "dcsim/runs.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <stdexcept>

#include "dcsim/rng.hpp"

namespace dcsim::runs {

SampleSpace make_sample_space(const eraser::JointDistribution& jd) {
  SampleSpace space;
  space.experiment = jd.experiment;
  const std::size_t nd = jd.detectors.size();
  space.outcomes.reserve(jd.x.size() * nd);
  space.probs.reserve(jd.x.size() * nd);
  for (std::size_t k = 0; k < jd.x.size(); ++k) {
    for (std::size_t j = 0; j < nd; ++j) {
      space.outcomes.push_back(Outcome{k, jd.x[k], jd.detectors[j]});
      space.probs.push_back(jd.at(k, j));
    }
  }
  return space;
}

SampleSpace make_sample_space(const ProbabilityMap& dist,
                              const std::string& experiment) {
  SampleSpace space;
  space.experiment = experiment;
  space.outcomes.reserve(dist.labels.size());
  for (const auto& label : dist.labels) {
    space.outcomes.push_back(Outcome{std::nullopt, std::nullopt, label});
  }
  space.probs = dist.probs;
  return space;
}

std::vector<EventRecord> simulate_runs(const SampleSpace& space,
                                       std::size_t n_runs,
                                       std::uint64_t seed) {
  if (space.outcomes.size() != space.probs.size()) {
    throw std::invalid_argument("simulate_runs: outcome/probability mismatch");
  }
  if (space.outcomes.empty()) {
    throw std::invalid_argument("simulate_runs: empty sample space");
  }
  double sum = 0.0;
  for (double p : space.probs) sum += p;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument(
        "simulate_runs: probabilities do not sum to one");
  }

  std::vector<EventRecord> events(n_runs);
  const std::int64_t count = static_cast<std::int64_t>(n_runs);
#pragma omp parallel for if (n_runs >= 1024)
  for (std::int64_t i = 0; i < count; ++i) {
    const std::uint64_t run = static_cast<std::uint64_t>(i);
    const double u = rng::uniform01(seed, run);
    const Outcome& o = space.outcomes[rng::inverse_cdf_index(space.probs, u)];
    EventRecord& e = events[static_cast<std::size_t>(i)];
    e.run_id = run;
    e.experiment = space.experiment;
    e.screen_bin = o.screen_bin;
    e.x_position = o.x_position;
    e.detector = o.detector;
  }
  return events;
}

std::map<std::string, std::vector<EventRecord>> group_events(
    const std::vector<EventRecord>& events) {
  std::map<std::string, std::vector<EventRecord>> groups;
  for (const auto& e : events) groups[e.detector].push_back(e);
  return groups;
}

std::vector<double> uniform_edges(std::size_t n_bins, double x_lo,
                                  double x_hi) {
  if (n_bins == 0) throw std::invalid_argument("histogram: n_bins is zero");
  if (!(x_hi > x_lo)) throw std::invalid_argument("histogram: empty range");
  std::vector<double> edges(n_bins + 1);
  const double width = (x_hi - x_lo) / static_cast<double>(n_bins);
  for (std::size_t i = 0; i <= n_bins; ++i) {
    edges[i] = x_lo + static_cast<double>(i) * width;
  }
  edges.back() = x_hi;
  return edges;
}

Histogram make_histogram(const std::vector<EventRecord>& events,
                         std::string group, std::vector<double> bin_edges) {
  if (bin_edges.size() < 2) {
    throw std::invalid_argument("histogram: need at least two bin edges");
  }
  for (std::size_t i = 0; i + 1 < bin_edges.size(); ++i) {
    if (!(bin_edges[i] < bin_edges[i + 1])) {
      throw std::invalid_argument(
          "histogram: bin edges must be strictly increasing");
    }
  }

  Histogram h;
  h.group = std::move(group);
  h.bin_edges = std::move(bin_edges);
  h.counts.assign(h.bin_edges.size() - 1, 0.0);

  for (const auto& e : events) {
    if (!e.x_position.has_value()) {
      throw std::invalid_argument("histogram: event has no screen position");
    }
    const double x = *e.x_position;
    if (x < h.bin_edges.front() || x > h.bin_edges.back()) {
      throw std::out_of_range("histogram: screen position overflows range");
    }
    auto it = std::upper_bound(h.bin_edges.begin(), h.bin_edges.end(), x);
    std::size_t bin = static_cast<std::size_t>(it - h.bin_edges.begin());
    bin = bin == 0 ? 0 : bin - 1;
    if (bin >= h.counts.size()) bin = h.counts.size() - 1;
    h.counts[bin] += 1.0;
  }
  return h;
}

std::map<std::string, Histogram> histograms_by_detector(
    const std::vector<EventRecord>& events,
    const std::vector<double>& bin_edges) {
  std::map<std::string, Histogram> out;
  for (const auto& [detector, group] : group_events(events)) {
    out.emplace(detector, make_histogram(group, detector, bin_edges));
  }
  out.emplace("ALL", make_histogram(events, "ALL", bin_edges));
  return out;
}

VisibilityResult visibility(const Histogram& h,
                            const std::vector<double>& envelope) {
  const std::size_t n = h.counts.size();
  if (envelope.size() != n) {
    throw std::invalid_argument("visibility: envelope size mismatch");
  }
  if (n == 0) throw std::invalid_argument("visibility: empty histogram");

  const double lo = h.bin_edges.front();
  const double hi = h.bin_edges.back();
  const double mid = 0.5 * (lo + hi);
  const double quarter = 0.25 * (hi - lo) * (1.0 + 1e-12);

  VisibilityResult res;
  bool seen = false;
  double rmin = 0.0, rmax = 0.0;
  for (std::size_t b = 0; b < n; ++b) {
    const double center = 0.5 * (h.bin_edges[b] + h.bin_edges[b + 1]);
    if (std::abs(center - mid) > quarter) continue;
    if (!(envelope[b] > 0.0)) {
      throw std::domain_error("visibility: envelope vanishes on a window bin");
    }
    const double ratio = h.counts[b] / envelope[b];
    if (!seen) {
      res.first_bin = b;
      rmin = rmax = ratio;
      seen = true;
    } else {
      if (ratio < rmin) rmin = ratio;
      if (ratio > rmax) rmax = ratio;
    }
    res.last_bin = b;
  }
  if (!seen) throw std::domain_error("visibility: no bins in central window");
  if (rmax + rmin <= 0.0) {
    throw std::domain_error("visibility: no events in central window");
  }
  res.value = (rmax - rmin) / (rmax + rmin);
  return res;
}

ChiSquareResult chi_square_gof(const std::vector<double>& observed,
                               const std::vector<double>& expected_probs,
                               double n_total) {
  if (observed.size() != expected_probs.size()) {
    throw std::invalid_argument("chi_square: size mismatch");
  }
  if (observed.empty()) throw std::invalid_argument("chi_square: empty input");
  if (!(n_total > 0.0)) {
    throw std::invalid_argument("chi_square: n_total must be positive");
  }
  double psum = 0.0;
  for (double p : expected_probs) {
    if (!(p >= 0.0)) {
      throw std::invalid_argument("chi_square: negative expected probability");
    }
    psum += p;
  }
  if (std::abs(psum - 1.0) > 1e-9) {
    throw std::invalid_argument(
        "chi_square: expected probabilities do not sum to one");
  }

  std::vector<double> pooled_obs, pooled_exp;
  double acc_obs = 0.0, acc_exp = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    acc_obs += observed[i];
    acc_exp += expected_probs[i] * n_total;
    if (acc_exp >= 5.0) {
      pooled_obs.push_back(acc_obs);
      pooled_exp.push_back(acc_exp);
      acc_obs = 0.0;
      acc_exp = 0.0;
    }
  }
  if ((acc_obs != 0.0 || acc_exp != 0.0) && !pooled_obs.empty()) {
    pooled_obs.back() += acc_obs;
    pooled_exp.back() += acc_exp;
  }
  if (pooled_obs.size() < 2) {
    throw std::domain_error("chi_square: fewer than two pooled bins");
  }

  ChiSquareResult res;
  res.pooled_bins = pooled_obs.size();
  res.dof = res.pooled_bins - 1;
  for (std::size_t i = 0; i < pooled_obs.size(); ++i) {
    const double d = pooled_obs[i] - pooled_exp[i];
    res.statistic += d * d / pooled_exp[i];
  }
  res.p_value = boost::math::gamma_q(static_cast<double>(res.dof) / 2.0,
                                     res.statistic / 2.0);
  return res;
}

ChiSquareResult chi_square_gof(const Histogram& h,
                               const std::vector<double>& expected_probs) {
  double n = 0.0;
  for (double c : h.counts) n += c;
  return chi_square_gof(h.counts, expected_probs, n);
}

}  // namespace dcsim::runs

// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dcsim/eraser.hpp"
#include "dcsim/runs.hpp"
#include "dcsim/wheeler.hpp"

namespace runs = dcsim::runs;
namespace eraser = dcsim::eraser;
namespace wheeler = dcsim::wheeler;

namespace {

eraser::Config tiny_config(std::size_t n) {
  eraser::Config cfg;
  cfg.n_angles = n;
  cfg.envelope = eraser::Envelope::uniform;
  return cfg;
}

bool records_equal(const runs::EventRecord& a, const runs::EventRecord& b) {
  return a.run_id == b.run_id && a.experiment == b.experiment &&
         a.screen_bin == b.screen_bin && a.x_position == b.x_position &&
         a.detector == b.detector;
}

}  // namespace

TEST_CASE("sample space flattening keeps the declared order") {
  const auto jd = eraser::joint_distribution(tiny_config(3), 2);
  const auto space = runs::make_sample_space(jd);
  CHECK(space.experiment == jd.experiment);
  CHECK(space.outcomes.size() == 6);
  CHECK(space.probs.size() == 6);
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t j = 0; j < 2; ++j) {
      const auto& o = space.outcomes[k * 2 + j];
      CHECK(o.screen_bin.value() == k);
      CHECK(o.x_position.value() == jd.x[k]);
      CHECK(o.detector == jd.detectors[j]);
      CHECK(space.probs[k * 2 + j] == jd.at(k, j));
    }
  }

  const auto wspace =
      runs::make_sample_space(wheeler::detector_distribution(3), "wheeler3");
  CHECK(wspace.outcomes.size() == 4);
  CHECK_FALSE(wspace.outcomes[0].screen_bin.has_value());
  CHECK_FALSE(wspace.outcomes[0].x_position.has_value());
  CHECK(wspace.outcomes[0].detector == "up:off");
}

TEST_CASE("simulate_runs: determinism, ids, validation") {
  const auto space = runs::make_sample_space(
      eraser::joint_distribution(tiny_config(5), 2));

  const auto a = runs::simulate_runs(space, 2000, 7);
  const auto b = runs::simulate_runs(space, 2000, 7);
  REQUIRE(a.size() == 2000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(records_equal(a[i], b[i]));
    CHECK(a[i].run_id == i);
    CHECK(a[i].experiment == space.experiment);
  }

  const auto c = runs::simulate_runs(space, 2000, 8);
  std::size_t same = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (a[i].detector == c[i].detector &&
        a[i].screen_bin == c[i].screen_bin) {
      ++same;
    }
  }
  CHECK(same < 2000);  // a different seed produces a different record stream

#ifdef _OPENMP
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto serial_run = runs::simulate_runs(space, 5000, 7);
  omp_set_num_threads(4);
  const auto parallel_run = runs::simulate_runs(space, 5000, 7);
  omp_set_num_threads(saved);
  REQUIRE(serial_run.size() == parallel_run.size());
  for (std::size_t i = 0; i < serial_run.size(); ++i) {
    CHECK(records_equal(serial_run[i], parallel_run[i]));
  }
#endif

  runs::SampleSpace degenerate;
  degenerate.experiment = "point";
  degenerate.outcomes.push_back(runs::Outcome{{}, {}, "D1"});
  degenerate.probs = {1.0};
  for (const auto& e : runs::simulate_runs(degenerate, 100, 3)) {
    CHECK(e.detector == "D1");
  }

  runs::SampleSpace bad = degenerate;
  bad.probs = {0.7};
  CHECK_THROWS_AS(runs::simulate_runs(bad, 10, 1), std::invalid_argument);
  bad.outcomes.clear();
  bad.probs.clear();
  CHECK_THROWS_AS(runs::simulate_runs(bad, 10, 1), std::invalid_argument);
}

TEST_CASE("sampled frequencies approach the distribution") {
  const auto space = runs::make_sample_space(
      eraser::joint_distribution(eraser::Config{}, 2));
  const auto events = runs::simulate_runs(space, 100000, 42);
  double d1 = 0.0;
  for (const auto& e : events) {
    if (e.detector == "D1") d1 += 1.0;
  }
  CHECK(std::abs(d1 / 100000.0 - 0.5) < 0.01);
}

TEST_CASE("wheeler runs reproduce the closed probabilities") {
  const auto space =
      runs::make_sample_space(wheeler::detector_distribution(3), "wheeler3");
  const auto events = runs::simulate_runs(space, 100000, 42);
  const auto groups = runs::group_events(events);
  CHECK(groups.count("up:on") == 0);  // probability-zero outcome never drawn
  CHECK(std::abs(double(groups.at("up:off").size()) / 100000.0 - 0.25) < 0.01);
  CHECK(std::abs(double(groups.at("down:off").size()) / 100000.0 - 0.25) <
        0.01);
  CHECK(std::abs(double(groups.at("down:on").size()) / 100000.0 - 0.5) < 0.01);
}

TEST_CASE("group_events partitions and preserves run order") {
  const auto space = runs::make_sample_space(
      eraser::joint_distribution(tiny_config(4), 3));
  const auto events = runs::simulate_runs(space, 3000, 5);
  const auto groups = runs::group_events(events);
  std::size_t total = 0;
  for (const auto& [name, list] : groups) {
    total += list.size();
    for (const auto& e : list) CHECK(e.detector == name);
    for (std::size_t i = 1; i < list.size(); ++i) {
      CHECK(list[i - 1].run_id < list[i].run_id);
    }
  }
  CHECK(total == events.size());
  CHECK(runs::group_events({}).empty());
}

TEST_CASE("uniform_edges") {
  const auto edges = runs::uniform_edges(4, -2.0, 2.0);
  REQUIRE(edges.size() == 5);
  CHECK(edges.front() == -2.0);
  CHECK(edges.back() == 2.0);
  CHECK(edges[2] == doctest::Approx(0.0));
  for (std::size_t i = 1; i < edges.size(); ++i) CHECK(edges[i] > edges[i - 1]);
}

TEST_CASE("make_histogram places, validates, and aggregates") {
  runs::EventRecord e;
  e.experiment = "eraser2";
  e.detector = "D1";
  e.x_position = 0.1;
  e.screen_bin = 0;

  const auto edges = runs::uniform_edges(4, -1.0, 1.0);
  auto h = runs::make_histogram({e}, "D1", edges);
  CHECK(h.group == "D1");
  REQUIRE(h.counts.size() == 4);
  CHECK(h.counts[2] == 1.0);  // 0.1 lies in [0, 0.5)
  CHECK(h.counts[0] + h.counts[1] + h.counts[3] == 0.0);

  // boundary values: left edge inclusive, interior edge goes right
  e.x_position = -1.0;
  CHECK(runs::make_histogram({e}, "D1", edges).counts[0] == 1.0);
  e.x_position = 0.5;
  CHECK(runs::make_histogram({e}, "D1", edges).counts[3] == 1.0);
  e.x_position = 1.0;  // right edge inclusive by convention
  CHECK(runs::make_histogram({e}, "D1", edges).counts[3] == 1.0);

  e.x_position = 1.5;
  CHECK_THROWS_AS(runs::make_histogram({e}, "D1", edges), std::out_of_range);
  e.x_position.reset();
  CHECK_THROWS_AS(runs::make_histogram({e}, "D1", edges),
                  std::invalid_argument);

  CHECK_THROWS_AS(runs::make_histogram({}, "D1", {0.0, 1.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(runs::make_histogram({}, "D1", {1.0, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(runs::make_histogram({}, "D1", {0.0}),
                  std::invalid_argument);

  // ALL equals the entrywise sum across detector groups
  const auto space = runs::make_sample_space(
      eraser::joint_distribution(eraser::Config{}, 3));
  const auto events = runs::simulate_runs(space, 20000, 9);
  const auto half = eraser::Config{}.screen_distance * 0.25 /
                    std::sqrt(1.0 - 0.25 * 0.25);
  const auto bins = runs::uniform_edges(32, -half, half);
  const auto by_det = runs::histograms_by_detector(events, bins);
  REQUIRE(by_det.count("ALL") == 1);
  for (std::size_t i = 0; i < 32; ++i) {
    double sum = 0.0;
    for (const auto& [name, hist] : by_det) {
      if (name != "ALL") sum += hist.counts[i];
    }
    CHECK(by_det.at("ALL").counts[i] == sum);
  }
}

TEST_CASE("visibility on constructed fringes") {
  // flat normalized counts: zero visibility, central window reported
  runs::Histogram flat;
  flat.group = "ALL";
  flat.bin_edges = runs::uniform_edges(8, -1.0, 1.0);
  flat.counts = {9.0, 9.0, 4.0, 4.0, 4.0, 4.0, 9.0, 9.0};
  std::vector<double> envelope = {9.0, 9.0, 4.0, 4.0, 4.0, 4.0, 9.0, 9.0};
  auto v = runs::visibility(flat, envelope);
  CHECK(v.value == 0.0);
  CHECK(v.first_bin == 2);
  CHECK(v.last_bin == 5);

  // alternating counts over a flat envelope: (3-1)/(3+1)
  runs::Histogram fringe = flat;
  fringe.counts = {9.0, 9.0, 3.0, 1.0, 3.0, 1.0, 9.0, 9.0};
  std::vector<double> ones(8, 1.0);
  CHECK(runs::visibility(fringe, ones).value ==
        doctest::Approx(0.5).epsilon(1e-12));

  // envelope scale cancels
  std::vector<double> scaled(8, 137.0);
  CHECK(runs::visibility(fringe, scaled).value ==
        doctest::Approx(0.5).epsilon(1e-12));

  std::vector<double> dead(8, 1.0);
  dead[3] = 0.0;
  CHECK_THROWS_AS(runs::visibility(fringe, dead), std::domain_error);
  std::vector<double> wrong(7, 1.0);
  CHECK_THROWS_AS(runs::visibility(fringe, wrong), std::invalid_argument);

  runs::Histogram empty = flat;
  empty.counts.assign(8, 0.0);
  CHECK_THROWS_AS(runs::visibility(empty, ones), std::domain_error);
}

TEST_CASE("visibility separates erased from kept records") {
  eraser::Config cfg;  // default sinc2
  const auto bins = runs::uniform_edges(
      64, -cfg.screen_distance * cfg.aperture /
              std::sqrt(1.0 - cfg.aperture * cfg.aperture),
      cfg.screen_distance * cfg.aperture /
          std::sqrt(1.0 - cfg.aperture * cfg.aperture));

  // expected envelope counts per detector from the cross-term-free curve
  auto envelope_counts = [&](int experiment, const std::string& det) {
    const auto env = eraser::envelope_distribution(cfg, experiment);
    std::vector<double> out(64, 0.0);
    for (std::size_t k = 0; k < env.x.size(); ++k) {
      const std::size_t bin = std::min<std::size_t>(
          63, std::size_t((env.x[k] - bins.front()) /
                          (bins[1] - bins[0])));
      for (std::size_t j = 0; j < env.detectors.size(); ++j) {
        if (det == "ALL" || env.detectors[j] == det) {
          out[bin] += env.at(k, j);
        }
      }
    }
    return out;
  };

  const auto run_vis = [&](int experiment, const std::string& det) {
    const auto space = runs::make_sample_space(
        eraser::joint_distribution(cfg, experiment));
    const auto events = runs::simulate_runs(space, 100000, 42);
    const auto hists = runs::histograms_by_detector(events, bins);
    return runs::visibility(hists.at(det), envelope_counts(experiment, det))
        .value;
  };

  CHECK(run_vis(1, "D1") < 0.1);
  CHECK(run_vis(2, "D1") > 0.9);
  CHECK(run_vis(2, "ALL") < 0.05);
}

TEST_CASE("chi-square goodness of fit") {
  // sampled data against its own distribution: comfortably consistent
  const auto space = runs::make_sample_space(
      eraser::joint_distribution(eraser::Config{}, 2));
  const auto events = runs::simulate_runs(space, 100000, 42);
  std::vector<double> observed(space.probs.size(), 0.0);
  for (const auto& e : events) {
    const std::size_t j = e.detector == "D1" ? 0 : 1;
    observed[*e.screen_bin * 2 + j] += 1.0;
  }
  const auto gof = runs::chi_square_gof(observed, space.probs, 100000.0);
  CHECK(gof.p_value > 0.01);
  CHECK(gof.dof == gof.pooled_bins - 1);

  // grossly wrong model: everything in one of four uniform cells
  const auto bad = runs::chi_square_gof({400.0, 0.0, 0.0, 0.0},
                                        {0.25, 0.25, 0.25, 0.25}, 400.0);
  CHECK(bad.p_value < 1e-6);
  CHECK(bad.pooled_bins == 4);
  CHECK(bad.dof == 3);

  // pooling folds sparse cells left to right
  const auto pooled = runs::chi_square_gof(
      {2.0, 0.0, 498.0, 500.0}, {0.001, 0.001, 0.498, 0.5}, 1000.0);
  CHECK(pooled.pooled_bins == 2);
  CHECK(pooled.dof == 1);
  CHECK(pooled.p_value > 0.01);

  CHECK_THROWS_AS(runs::chi_square_gof({1.0}, {1.0}, 1.0),
                  std::domain_error);  // one pooled bin, zero dof
  CHECK_THROWS_AS(
      runs::chi_square_gof({1.0, 1.0}, {-0.5, 1.5}, 2.0),
      std::invalid_argument);
  CHECK_THROWS_AS(
      runs::chi_square_gof({1.0, 1.0}, {0.3, 0.3}, 2.0),
      std::invalid_argument);  // expected must sum to one
  CHECK_THROWS_AS(
      runs::chi_square_gof({1.0, 1.0}, {0.5, 0.5, 0.0}, 2.0),
      std::invalid_argument);  // size mismatch

  // histogram overload agrees with the flat form
  runs::Histogram h;
  h.group = "ALL";
  h.bin_edges = runs::uniform_edges(4, 0.0, 4.0);
  h.counts = {100.0, 100.0, 100.0, 100.0};
  const auto from_hist =
      runs::chi_square_gof(h, {0.25, 0.25, 0.25, 0.25});
  const auto from_flat = runs::chi_square_gof(
      h.counts, {0.25, 0.25, 0.25, 0.25}, 400.0);
  CHECK(from_hist.statistic == from_flat.statistic);
  CHECK(from_hist.p_value == from_flat.p_value);
}

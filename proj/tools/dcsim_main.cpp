// SPDX-License-Identifier: Apache-2.0
//
// dcsim command line: verify operator identities, run seeded experiment
// simulations, export analytic distributions.
//
// Exit codes: 0 success, 1 invariant violation, 2 usage or config error.

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dcsim/eraser.hpp"
#include "dcsim/runs.hpp"
#include "dcsim/wheeler.hpp"

namespace {

constexpr const char* kToolVersion = "0.1.0";

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_complex(dcsim::Complex z) {
  if (z.imag() == 0.0) return fmt_double(z.real());
  std::string s = fmt_double(z.real());
  s += z.imag() < 0.0 ? "-" : "+";
  s += fmt_double(std::abs(z.imag()));
  s += "i";
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad numeric value for " + key + ": '" + value +
                      "'");
  }
}

dcsim::eraser::Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  dcsim::eraser::Config cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: line " + std::to_string(lineno) +
                        " is not key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "n_angles") {
      const double v = parse_double(key, value);
      if (v < 0.0 || v != std::floor(v)) {
        throw ConfigError("config: n_angles must be a non-negative integer");
      }
      cfg.n_angles = static_cast<std::size_t>(v);
    } else if (key == "wavelength") {
      cfg.wavelength = parse_double(key, value);
    } else if (key == "slit_separation") {
      cfg.slit_separation = parse_double(key, value);
    } else if (key == "slit_width") {
      cfg.slit_width = parse_double(key, value);
    } else if (key == "screen_distance") {
      cfg.screen_distance = parse_double(key, value);
    } else if (key == "aperture") {
      cfg.aperture = parse_double(key, value);
    } else if (key == "envelope") {
      try {
        cfg.envelope = dcsim::eraser::envelope_from_string(value);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
      }
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  return cfg;
}

nlohmann::json config_json(const dcsim::eraser::Config& cfg) {
  return nlohmann::json{
      {"n_angles", cfg.n_angles},
      {"wavelength", cfg.wavelength},
      {"slit_separation", cfg.slit_separation},
      {"slit_width", cfg.slit_width},
      {"screen_distance", cfg.screen_distance},
      {"aperture", cfg.aperture},
      {"envelope", dcsim::eraser::envelope_name(cfg.envelope)},
  };
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path.string() + "' for write");
  out << body;
  if (!out) throw ConfigError("write failed for '" + path.string() + "'");
}

void write_manifest(const std::filesystem::path& path,
                    const std::string& command, const nlohmann::json& config,
                    std::size_t n_runs, std::uint64_t seed,
                    const std::vector<std::string>& output_paths) {
  nlohmann::json m{
      {"command", command},       {"config", config},
      {"n_runs", n_runs},         {"seed", seed},
      {"tool_version", kToolVersion}, {"output_paths", output_paths},
  };
  write_file(path, m.dump(2) + "\n");
}

/// Full screen span [-x_max, x_max] implied by the aperture.
double screen_half_span(const dcsim::eraser::Config& cfg) {
  const double a = cfg.aperture;
  return cfg.screen_distance * a / std::sqrt(1.0 - a * a);
}

int experiment_number(const std::string& name, const std::string& prefix) {
  if (name.size() != prefix.size() + 1 ||
      name.compare(0, prefix.size(), prefix) != 0) {
    return 0;
  }
  const char c = name.back();
  return c >= '1' && c <= '3' ? c - '0' : 0;
}

std::string csv_events(const std::vector<dcsim::runs::EventRecord>& events) {
  std::string out = "run_id,experiment,screen_bin,x_position,detector\n";
  for (const auto& e : events) {
    out += std::to_string(e.run_id);
    out += ',';
    out += e.experiment;
    out += ',';
    if (e.screen_bin) out += std::to_string(*e.screen_bin);
    out += ',';
    if (e.x_position) out += fmt_double(*e.x_position);
    out += ',';
    out += e.detector;
    out += '\n';
  }
  return out;
}

std::string json_events(const std::vector<dcsim::runs::EventRecord>& events) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : events) {
    nlohmann::json rec{{"run_id", e.run_id},
                       {"experiment", e.experiment},
                       {"detector", e.detector}};
    if (e.screen_bin) {
      rec["screen_bin"] = *e.screen_bin;
    } else {
      rec["screen_bin"] = nullptr;
    }
    if (e.x_position) {
      rec["x_position"] = *e.x_position;
    } else {
      rec["x_position"] = nullptr;
    }
    arr.push_back(std::move(rec));
  }
  return arr.dump(2) + "\n";
}

std::string csv_histograms(
    const std::map<std::string, dcsim::runs::Histogram>& hists) {
  std::string out = "group,bin_index,bin_lo,bin_hi,count\n";
  for (const auto& [group, h] : hists) {
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
      out += group;
      out += ',';
      out += std::to_string(b);
      out += ',';
      out += fmt_double(h.bin_edges[b]);
      out += ',';
      out += fmt_double(h.bin_edges[b + 1]);
      out += ',';
      out += fmt_double(h.counts[b]);
      out += '\n';
    }
  }
  return out;
}

int cmd_verify_wheeler(double tol) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  const dcsim::ComplexMatrix a = dcsim::wheeler::compose_delayed();
  const dcsim::ComplexMatrix ap = dcsim::wheeler::compose_nondelayed();
  const dcsim::ComplexMatrix closed = dcsim::wheeler::closed_form_matrix();
  const double diff = dcsim::max_abs_diff(a, ap);
  const double closed_diff = dcsim::max_abs_diff(a, closed);
  const auto t1 = Clock::now();

  std::printf("command: verify\ntarget: wheeler\n");
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::printf("matrix_row_%zu:", i);
    for (std::size_t j = 0; j < a.cols(); ++j) {
      std::printf(" %s", fmt_complex(a(i, j)).c_str());
    }
    std::printf("\n");
  }
  std::printf("max_abs_diff: %s\n", fmt_double(diff).c_str());
  std::printf("closed_form_diff: %s\n", fmt_double(closed_diff).c_str());
  std::printf("tolerance: %s\n", fmt_double(tol).c_str());
  std::printf(
      "elapsed_seconds: %s\n",
      fmt_double(std::chrono::duration<double>(t1 - t0).count()).c_str());
  const bool ok = diff <= tol && closed_diff <= tol;
  std::printf("status: %s\n", ok ? "ok" : "violated");
  return ok ? 0 : 1;
}

int cmd_verify_eraser(const dcsim::eraser::Config& cfg, double tol) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  const dcsim::ComplexMatrix a = dcsim::eraser::compose_delayed(cfg);
  const dcsim::ComplexMatrix ap = dcsim::eraser::compose_nondelayed(cfg);
  const double diff = dcsim::max_abs_diff(a, ap);
  const auto t1 = Clock::now();

  std::printf("command: verify\ntarget: eraser\n");
  std::printf("n_angles: %zu\n", cfg.n_angles);
  std::printf("envelope: %s\n",
              dcsim::eraser::envelope_name(cfg.envelope).c_str());
  std::printf("max_abs_diff: %s\n", fmt_double(diff).c_str());
  std::printf("tolerance: %s\n", fmt_double(tol).c_str());
  std::printf(
      "elapsed_seconds: %s\n",
      fmt_double(std::chrono::duration<double>(t1 - t0).count()).c_str());
  const bool ok = diff <= tol;
  std::printf("status: %s\n", ok ? "ok" : "violated");
  return ok ? 0 : 1;
}

int cmd_run(const std::string& experiment, const dcsim::eraser::Config& cfg,
            std::size_t n_runs, std::uint64_t seed, const std::string& format,
            const std::string& out_dir, std::size_t n_bins) {
  namespace fs = std::filesystem;
  dcsim::runs::SampleSpace space;
  bool is_eraser = false;
  if (const int scenario = experiment_number(experiment, "wheeler")) {
    space = dcsim::runs::make_sample_space(
        dcsim::wheeler::detector_distribution(scenario), experiment);
  } else if (const int exp = experiment_number(experiment, "eraser")) {
    space = dcsim::runs::make_sample_space(
        dcsim::eraser::joint_distribution(cfg, exp));
    is_eraser = true;
  } else {
    throw CLI::ValidationError(
        "experiment must be one of wheeler1..3, eraser1..3");
  }

  const auto events = dcsim::runs::simulate_runs(space, n_runs, seed);

  fs::create_directories(out_dir);
  std::vector<std::string> outputs;
  const fs::path events_path =
      fs::path(out_dir) / (format == "json" ? "events.json" : "events.csv");
  write_file(events_path,
             format == "json" ? json_events(events) : csv_events(events));
  outputs.push_back(events_path.string());

  if (is_eraser) {
    const double half = screen_half_span(cfg);
    const auto hists = dcsim::runs::histograms_by_detector(
        events, dcsim::runs::uniform_edges(n_bins, -half, half));
    const fs::path hist_path = fs::path(out_dir) / "histograms.csv";
    write_file(hist_path, csv_histograms(hists));
    outputs.push_back(hist_path.string());
  }

  const fs::path manifest_path = fs::path(out_dir) / "manifest.json";
  const nlohmann::json cfg_json =
      is_eraser ? config_json(cfg)
                : nlohmann::json{{"scenario", experiment.back() - '0'}};
  write_manifest(manifest_path, "run " + experiment, cfg_json, n_runs, seed,
                 outputs);

  std::printf("command: run\nexperiment: %s\n", experiment.c_str());
  std::printf("n_runs: %zu\nseed: %llu\n", n_runs,
              static_cast<unsigned long long>(seed));
  std::printf("events_path: %s\n", events_path.string().c_str());
  if (is_eraser) {
    std::printf("histograms_path: %s\n",
                (fs::path(out_dir) / "histograms.csv").string().c_str());
  }
  std::printf("manifest_path: %s\n", manifest_path.string().c_str());
  std::printf("status: ok\n");
  return 0;
}

int cmd_analytic(const std::string& experiment,
                 const dcsim::eraser::Config& cfg,
                 const std::string& out_dir) {
  namespace fs = std::filesystem;
  const int exp = experiment_number(experiment, "eraser");
  if (exp == 0) {
    throw CLI::ValidationError("experiment must be one of eraser1..3");
  }
  const auto jd = dcsim::eraser::joint_distribution(cfg, exp);
  const std::size_t nd = jd.detectors.size();

  std::string triples = "x_position,detector,probability\n";
  for (std::size_t k = 0; k < jd.x.size(); ++k) {
    for (std::size_t j = 0; j < nd; ++j) {
      triples += fmt_double(jd.x[k]);
      triples += ',';
      triples += jd.detectors[j];
      triples += ',';
      triples += fmt_double(jd.at(k, j));
      triples += '\n';
    }
  }

  std::string curves = "x_position";
  for (const auto& d : jd.detectors) curves += "," + d;
  curves += ",ALL\n";
  const auto marginal = jd.screen_marginal();
  for (std::size_t k = 0; k < jd.x.size(); ++k) {
    curves += fmt_double(jd.x[k]);
    for (std::size_t j = 0; j < nd; ++j) {
      curves += ',';
      curves += fmt_double(jd.at(k, j));
    }
    curves += ',';
    curves += fmt_double(marginal[k]);
    curves += '\n';
  }

  fs::create_directories(out_dir);
  const fs::path triples_path = fs::path(out_dir) / "analytic.csv";
  const fs::path curves_path = fs::path(out_dir) / "curves.csv";
  write_file(triples_path, triples);
  write_file(curves_path, curves);
  const fs::path manifest_path = fs::path(out_dir) / "manifest.json";
  write_manifest(manifest_path, "analytic " + experiment, config_json(cfg), 0,
                 0, {triples_path.string(), curves_path.string()});

  std::printf("command: analytic\nexperiment: %s\n", experiment.c_str());
  std::printf("total_probability: %s\n", fmt_double(jd.total()).c_str());
  std::printf("analytic_path: %s\n", triples_path.string().c_str());
  std::printf("curves_path: %s\n", curves_path.string().c_str());
  std::printf("manifest_path: %s\n", manifest_path.string().c_str());
  std::printf("status: ok\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delayed-choice interferometer simulator"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "Check operator identities");
  std::string verify_target;
  verify->add_option("target", verify_target, "wheeler or eraser")
      ->required()
      ->check(CLI::IsMember({"wheeler", "eraser"}));
  double tol = 1e-12;
  verify->add_option("--tol", tol, "Max entrywise deviation");
  std::size_t verify_n = 0;
  verify->add_option("--n", verify_n, "Override eraser angle count");
  std::string verify_config;
  verify->add_option("--config", verify_config, "Eraser config file");

  // run
  auto* run = app.add_subcommand("run", "Simulate seeded runs");
  std::string run_experiment;
  run->add_option("experiment", run_experiment, "wheeler1..3 or eraser1..3")
      ->required();
  std::size_t n_runs = 1000;
  run->add_option("--runs", n_runs, "Number of runs")
      ->check(CLI::PositiveNumber);
  std::uint64_t seed = 42;
  run->add_option("--seed", seed, "RNG seed");
  std::string format = "csv";
  run->add_option("--format", format, "Event file format")
      ->check(CLI::IsMember({"csv", "json"}));
  std::string out_dir = ".";
  run->add_option("--out", out_dir, "Output directory");
  std::string run_config;
  run->add_option("--config", run_config, "Eraser config file");
  std::size_t n_bins = 64;
  run->add_option("--bins", n_bins, "Histogram bins")
      ->check(CLI::PositiveNumber);

  // analytic
  auto* analytic =
      app.add_subcommand("analytic", "Export analytic distributions");
  std::string analytic_experiment;
  analytic->add_option("experiment", analytic_experiment, "eraser1..3")
      ->required();
  std::string analytic_config;
  analytic->add_option("--config", analytic_config, "Eraser config file");
  std::string analytic_out = ".";
  analytic->add_option("--out", analytic_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) {
      if (verify_target == "wheeler") return cmd_verify_wheeler(tol);
      dcsim::eraser::Config cfg;
      if (!verify_config.empty()) cfg = load_config(verify_config);
      if (verify->count("--n") > 0) cfg.n_angles = verify_n;
      cfg.validate();
      return cmd_verify_eraser(cfg, tol);
    }
    if (run->parsed()) {
      dcsim::eraser::Config cfg;
      if (!run_config.empty()) cfg = load_config(run_config);
      cfg.validate();
      return cmd_run(run_experiment, cfg, n_runs, seed, format, out_dir,
                     n_bins);
    }
    if (analytic->parsed()) {
      dcsim::eraser::Config cfg;
      if (!analytic_config.empty()) cfg = load_config(analytic_config);
      cfg.validate();
      return cmd_analytic(analytic_experiment, cfg, analytic_out);
    }
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}

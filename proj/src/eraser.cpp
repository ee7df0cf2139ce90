// SPDX-License-Identifier: Apache-2.0
#include "dcsim/eraser.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "dcsim/serial_reference.hpp"

namespace dcsim::eraser {

namespace {

constexpr double kPi = 3.14159265358979323846;

double envelope_value(Envelope e, double u) {
  switch (e) {
    case Envelope::fraunhofer_sinc2: {
      if (u == 0.0) return 1.0;
      const double s = std::sin(u) / u;
      return s * s;
    }
    case Envelope::gaussian:
      // same small-angle curvature as the sinc^2 lobe
      return std::exp(-u * u / 3.0);
    case Envelope::uniform:
      return 1.0;
  }
  throw std::invalid_argument("envelope: unknown kind");
}

struct ConditionalVectors {
  std::vector<Complex> right;  // zero on dark bins
  std::vector<Complex> left;
};

ConditionalVectors conditional_vectors(const SlitAmplitudes& amps) {
  const std::size_t n = amps.p_right.size();
  ConditionalVectors cv;
  cv.right.resize(n, Complex(0.0, 0.0));
  cv.left.resize(n, Complex(0.0, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    const double w = std::norm(amps.p_right[k]) + std::norm(amps.p_left[k]);
    if (w <= 0.0) continue;
    const double inv = 1.0 / std::sqrt(w);
    cv.right[k] = amps.p_right[k] * inv;
    cv.left[k] = amps.p_left[k] * inv;
  }
  return cv;
}

std::vector<Complex> screen_from_coefficients(const ConditionalVectors& cv,
                                              Complex coef_right,
                                              Complex coef_left) {
  const std::size_t n = cv.right.size();
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<Complex> out(2 * n, Complex(0.0, 0.0));
  for (std::size_t m = 0; m < n; ++m) {
    out[m] = coef_right * inv_sqrt_n * cv.right[m];
    out[n + m] = coef_left * inv_sqrt_n * cv.left[m];
  }
  return out;
}

ComplexMatrix slit_gate(double a00, double a01, double a10, double a11) {
  return ComplexMatrix::from_rows({{a00, a01}, {a10, a11}});
}

}  // namespace

Envelope envelope_from_string(const std::string& name) {
  if (name == "fraunhofer_sinc2") return Envelope::fraunhofer_sinc2;
  if (name == "gaussian") return Envelope::gaussian;
  if (name == "uniform") return Envelope::uniform;
  throw std::invalid_argument("envelope: unknown kind '" + name + "'");
}

std::string envelope_name(Envelope e) {
  switch (e) {
    case Envelope::fraunhofer_sinc2: return "fraunhofer_sinc2";
    case Envelope::gaussian: return "gaussian";
    case Envelope::uniform: return "uniform";
  }
  return "?";
}

void Config::validate() const {
  if (n_angles < 2) {
    throw std::invalid_argument("config: n_angles must be at least 2");
  }
  if (!(wavelength > 0.0)) {
    throw std::invalid_argument("config: wavelength must be positive");
  }
  if (!(slit_separation > 0.0)) {
    throw std::invalid_argument("config: slit_separation must be positive");
  }
  if (!(slit_width > 0.0)) {
    throw std::invalid_argument("config: slit_width must be positive");
  }
  if (!(slit_separation > slit_width)) {
    throw std::invalid_argument(
        "config: slit_separation must exceed slit_width");
  }
  if (!(screen_distance > 0.0)) {
    throw std::invalid_argument("config: screen_distance must be positive");
  }
  if (!(aperture > 0.0) || !(aperture < 1.0)) {
    throw std::invalid_argument("config: aperture must lie in (0, 1)");
  }
}

double Config::sin_theta(std::size_t k) const {
  const double step = 2.0 * aperture / static_cast<double>(n_angles);
  return -aperture + (static_cast<double>(k) + 0.5) * step;
}

SlitAmplitudes slit_amplitudes(const Config& cfg) {
  cfg.validate();
  const std::size_t n = cfg.n_angles;
  // single-slit hump centers sit at +-d/2 on the screen
  const double center_offset = 0.5 * cfg.slit_separation / cfg.screen_distance;
  const double u_scale = kPi * cfg.slit_width / cfg.wavelength;

  std::vector<double> env_r(n), env_l(n);
  double sum_r = 0.0, sum_l = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = cfg.sin_theta(k);
    env_r[k] = envelope_value(cfg.envelope, u_scale * (s - center_offset));
    env_l[k] = envelope_value(cfg.envelope, u_scale * (s + center_offset));
    sum_r += env_r[k];
    sum_l += env_l[k];
  }
  if (sum_r <= 0.0 || sum_l <= 0.0) {
    throw std::domain_error(
        "slit_amplitudes: envelope vanishes on every bin of the aperture");
  }

  SlitAmplitudes amps;
  amps.p_right.resize(n);
  amps.p_left.resize(n);
  amps.x.resize(n);
  const double phase_scale = kPi * cfg.slit_separation / cfg.wavelength;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = cfg.sin_theta(k);
    const double phi = phase_scale * s;
    amps.p_right[k] =
        std::sqrt(env_r[k] / sum_r) * Complex(std::cos(phi), std::sin(phi));
    amps.p_left[k] =
        std::sqrt(env_l[k] / sum_l) * Complex(std::cos(phi), -std::sin(phi));
    amps.x[k] = cfg.screen_distance * s / std::sqrt(1.0 - s * s);
  }
  return amps;
}

ConditionalAmplitudes conditional_amplitudes(const SlitAmplitudes& amps,
                                             std::size_t k) {
  if (k >= amps.p_right.size()) {
    throw std::out_of_range("conditional_amplitudes: bin index");
  }
  const double w = std::norm(amps.p_right[k]) + std::norm(amps.p_left[k]);
  if (w <= 0.0) {
    throw std::domain_error("conditional_amplitudes: dark bin");
  }
  const double inv = 1.0 / std::sqrt(w);
  return ConditionalAmplitudes{k, amps.p_right[k] * inv, amps.p_left[k] * inv};
}

Basis slit_angle_basis(std::size_t n_angles) {
  std::vector<std::string> angles(n_angles);
  for (std::size_t i = 0; i < n_angles; ++i) angles[i] = std::to_string(i);
  return Basis({{"slit", {"R", "L"}}, {"angle", std::move(angles)}});
}

Basis pair_basis(std::size_t n_angles) {
  std::vector<std::string> angles(n_angles);
  for (std::size_t i = 0; i < n_angles; ++i) angles[i] = std::to_string(i);
  return Basis({{"signal_slit", {"R", "L"}},
                {"signal_angle", angles},
                {"idler_slit", {"R", "L"}},
                {"idler_angle", angles}});
}

std::size_t matched_index(std::size_t slit, std::size_t n,
                          std::size_t n_angles) {
  const std::size_t base = slit * n_angles + n;
  return base * 2 * n_angles + base;
}

ComplexMatrix build_crystal(const Config& cfg) {
  cfg.validate();
  const std::size_t n = cfg.n_angles;
  const std::size_t in_dim = 2 * n;
  ComplexMatrix c(in_dim * in_dim, in_dim);
  for (std::size_t col = 0; col < in_dim; ++col) {
    c(col * in_dim + col, col) = 1.0;
  }
  return c;
}

ComplexMatrix build_screen(const Config& cfg, const SlitAmplitudes& amps) {
  cfg.validate();
  const std::size_t n = cfg.n_angles;
  if (amps.p_right.size() != n) {
    throw std::invalid_argument("build_screen: amplitude count != n_angles");
  }
  const auto cv = conditional_vectors(amps);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  ComplexMatrix s(2 * n, 4 * n * n);
  for (std::size_t slit = 0; slit < 2; ++slit) {
    const auto& pt = slit == 0 ? cv.right : cv.left;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t col = matched_index(slit, k, n);
      for (std::size_t m = 0; m < n; ++m) {
        s(slit * n + m, col) = inv_sqrt_n * pt[m];
      }
    }
  }
  return s;
}

IdlerOptics build_idler_optics(int experiment) {
  const double r = 1.0 / std::sqrt(2.0);
  IdlerOptics o;
  o.experiment = experiment;
  switch (experiment) {
    case 1:
      o.ports = {"D1", "D2"};
      o.scattering = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 1.0}});
      break;
    case 2:
      o.ports = {"D1", "D2"};
      o.scattering = ComplexMatrix::from_rows({{r, r}, {r, -r}});
      break;
    case 3:
      o.ports = {"D1", "D2", "D3", "D4"};
      o.scattering = ComplexMatrix::from_rows(
          {{0.5, 0.5}, {0.5, -0.5}, {r, 0.0}, {0.0, r}});
      break;
    default:
      throw std::invalid_argument("idler optics: experiment must be 1, 2 or 3");
  }
  return o;
}

namespace {

JointDistribution joint_impl(const Config& cfg, int experiment,
                             bool keep_cross_terms) {
  cfg.validate();
  const SlitAmplitudes amps = slit_amplitudes(cfg);
  const IdlerOptics optics = build_idler_optics(experiment);
  const std::size_t n = cfg.n_angles;
  const std::size_t nd = optics.ports.size();

  JointDistribution jd;
  jd.experiment = "eraser" + std::to_string(experiment);
  jd.x = amps.x;
  jd.detectors = optics.ports;
  jd.p.assign(n * nd, 0.0);

  for (std::size_t k = 0; k < n; ++k) {
    const double w =
        0.5 * (std::norm(amps.p_right[k]) + std::norm(amps.p_left[k]));
    if (w <= 0.0) continue;
    const ConditionalAmplitudes cond = conditional_amplitudes(amps, k);
    for (std::size_t j = 0; j < nd; ++j) {
      const Complex ar = optics.scattering(j, 0) * cond.right;
      const Complex al = optics.scattering(j, 1) * cond.left;
      const double prob = keep_cross_terms
                              ? std::norm(ar + al)
                              : std::norm(ar) + std::norm(al);
      jd.p[k * nd + j] = w * prob;
    }
  }
  return jd;
}

}  // namespace

std::vector<double> JointDistribution::screen_marginal() const {
  const std::size_t nd = detectors.size();
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    for (std::size_t j = 0; j < nd; ++j) out[k] += p[k * nd + j];
  }
  return out;
}

std::vector<double> JointDistribution::detector_totals() const {
  const std::size_t nd = detectors.size();
  std::vector<double> out(nd, 0.0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    for (std::size_t j = 0; j < nd; ++j) out[j] += p[k * nd + j];
  }
  return out;
}

double JointDistribution::total() const {
  double t = 0.0;
  for (double v : p) t += v;
  return t;
}

JointDistribution joint_distribution(const Config& cfg, int experiment) {
  return joint_impl(cfg, experiment, true);
}

JointDistribution envelope_distribution(const Config& cfg, int experiment) {
  return joint_impl(cfg, experiment, false);
}

DensityMatrix reduced_detection_state(const Config& cfg, std::size_t k,
                                      TraceOut trace_out) {
  cfg.validate();
  const std::size_t n = cfg.n_angles;
  if (k >= n) throw std::out_of_range("reduced_detection_state: bin index");
  const SlitAmplitudes amps = slit_amplitudes(cfg);
  const ConditionalAmplitudes cond = conditional_amplitudes(amps, k);

  std::vector<std::string> screen_syms(n);
  for (std::size_t i = 0; i < n; ++i) screen_syms[i] = "x" + std::to_string(i);
  Basis basis({{"detector1", {"click", "no_click"}},
               {"detector2", {"click", "no_click"}},
               {"screen", std::move(screen_syms)}});

  // After the erasing beamsplitter: (click, no_click) carries
  // (right+left)/2, (no_click, click) carries (right-left)/2.
  std::vector<Complex> amps_vec(basis.dimension(), Complex(0.0, 0.0));
  amps_vec[basis.compose({0, 1, k})] = 0.5 * (cond.right + cond.left);
  amps_vec[basis.compose({1, 0, k})] = 0.5 * (cond.right - cond.left);
  const QuantumState psi(basis, std::move(amps_vec), NormKind::conditional);
  const DensityMatrix rho = DensityMatrix::from_pure(psi);

  switch (trace_out) {
    case TraceOut::d1:
      return partial_trace(rho, 0);
    case TraceOut::d2:
      return partial_trace(rho, 1);
    case TraceOut::both:
      return partial_trace(partial_trace(rho, 0), 0).renormalized();
  }
  throw std::invalid_argument("reduced_detection_state: bad trace_out");
}

void apply_idler_gate(const ComplexMatrix& g, std::vector<Complex>& pair_vec,
                      std::size_t n_angles) {
  if (g.rows() != 2 || g.cols() != 2) {
    throw std::invalid_argument("apply_idler_gate: gate must be 2x2");
  }
  const std::size_t two_n = 2 * n_angles;
  if (pair_vec.size() != two_n * two_n) {
    throw std::invalid_argument("apply_idler_gate: vector is not pair-sized");
  }
  const Complex g00 = g(0, 0), g01 = g(0, 1), g10 = g(1, 0), g11 = g(1, 1);
  const std::int64_t sig_count = static_cast<std::int64_t>(two_n);
#pragma omp parallel for if (pair_vec.size() >= 65536)
  for (std::int64_t sig = 0; sig < sig_count; ++sig) {
    Complex* block = pair_vec.data() + static_cast<std::size_t>(sig) * two_n;
    for (std::size_t m = 0; m < n_angles; ++m) {
      const Complex vr = block[m];
      const Complex vl = block[n_angles + m];
      block[m] = g00 * vr + g01 * vl;
      block[n_angles + m] = g10 * vr + g11 * vl;
    }
  }
}

std::vector<Complex> apply_screen(const SlitAmplitudes& amps,
                                  const std::vector<Complex>& pair_vec) {
  const std::size_t n = amps.p_right.size();
  if (pair_vec.size() != 4 * n * n) {
    throw std::invalid_argument("apply_screen: vector is not pair-sized");
  }
  Complex coef_r(0.0, 0.0), coef_l(0.0, 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    coef_r += pair_vec[matched_index(0, m, n)];
    coef_l += pair_vec[matched_index(1, m, n)];
  }
  return screen_from_coefficients(conditional_vectors(amps), coef_r, coef_l);
}

ComplexMatrix compose_delayed(const Config& cfg) {
  cfg.validate();
  const std::size_t n = cfg.n_angles;
  const SlitAmplitudes amps = slit_amplitudes(cfg);
  const auto cv = conditional_vectors(amps);

  // screen after crystal: column (slit, k) is the screen's matched-pair image
  ComplexMatrix sc(2 * n, 2 * n);
  for (std::size_t col = 0; col < 2 * n; ++col) {
    const std::size_t slit = col / n;
    const auto col_vec = screen_from_coefficients(
        cv, slit == 0 ? Complex(1.0, 0.0) : Complex(0.0, 0.0),
        slit == 1 ? Complex(1.0, 0.0) : Complex(0.0, 0.0));
    for (std::size_t r = 0; r < 2 * n; ++r) sc(r, col) = col_vec[r];
  }

  const double r = 1.0 / std::sqrt(2.0);
  const ComplexMatrix in = ComplexMatrix::identity(n);
  const ComplexMatrix h_lift = tensor_product(slit_gate(r, r, r, -r), in);
  const ComplexMatrix x_lift =
      tensor_product(slit_gate(0.0, 1.0, 1.0, 0.0), in);
  return matmul(h_lift, matmul(x_lift, matmul(h_lift, sc)));
}

namespace {

// Sparse pair-space vector: one entry per populated (signal index,
// idler angle) coordinate, holding the idler R/L amplitudes there. The
// lifted gates act coordinatewise on those pairs and never populate a
// zero coordinate, so operator application stays on the stored entries.
struct PairCoordinate {
  std::size_t signal;
  std::size_t angle;
  Complex right;
  Complex left;
};

void apply_idler_gate_sparse(const ComplexMatrix& g,
                             std::vector<PairCoordinate>& v) {
  const Complex g00 = g(0, 0), g01 = g(0, 1), g10 = g(1, 0), g11 = g(1, 1);
  for (PairCoordinate& c : v) {
    const Complex vr = g00 * c.right + g01 * c.left;
    const Complex vl = g10 * c.right + g11 * c.left;
    c.right = vr;
    c.left = vl;
  }
}

// Screen coefficients: matched pairs are the coordinates whose signal index
// recomposes the idler label, |R,m> at signal m and |L,m> at signal N+m.
std::pair<Complex, Complex> screen_coefficients_sparse(
    const std::vector<PairCoordinate>& v, std::size_t n_angles) {
  Complex coef_r(0.0, 0.0), coef_l(0.0, 0.0);
  for (const PairCoordinate& c : v) {
    if (c.signal == c.angle) coef_r += c.right;
    if (c.signal == n_angles + c.angle) coef_l += c.left;
  }
  return {coef_r, coef_l};
}

}  // namespace

ComplexMatrix compose_nondelayed(const Config& cfg) {
  cfg.validate();
  const std::size_t n = cfg.n_angles;
  const SlitAmplitudes amps = slit_amplitudes(cfg);
  const auto cv = conditional_vectors(amps);
  const double r = 1.0 / std::sqrt(2.0);
  const ComplexMatrix h = slit_gate(r, r, r, -r);
  const ComplexMatrix x = slit_gate(0.0, 1.0, 1.0, 0.0);

  ComplexMatrix out(2 * n, 2 * n);
  const std::int64_t cols = static_cast<std::int64_t>(2 * n);
#pragma omp parallel for
  for (std::int64_t col = 0; col < cols; ++col) {
    const std::size_t base = static_cast<std::size_t>(col);
    const std::size_t slit = base / n;
    std::vector<PairCoordinate> v{
        {base, base % n, slit == 0 ? Complex(1.0, 0.0) : Complex(0.0, 0.0),
         slit == 1 ? Complex(1.0, 0.0) : Complex(0.0, 0.0)}};
    apply_idler_gate_sparse(h, v);
    apply_idler_gate_sparse(x, v);
    apply_idler_gate_sparse(h, v);
    const auto [coef_r, coef_l] = screen_coefficients_sparse(v, n);
    const auto col_vec = screen_from_coefficients(cv, coef_r, coef_l);
    for (std::size_t rr = 0; rr < 2 * n; ++rr) out(rr, base) = col_vec[rr];
  }
  return out;
}

ComplexMatrix compose_delayed_dense(const Config& cfg) {
  cfg.validate();
  const std::size_t n = cfg.n_angles;
  const SlitAmplitudes amps = slit_amplitudes(cfg);
  const ComplexMatrix c = build_crystal(cfg);
  const ComplexMatrix s = build_screen(cfg, amps);
  const double r = 1.0 / std::sqrt(2.0);
  const ComplexMatrix in = ComplexMatrix::identity(n);
  const ComplexMatrix h_lift =
      serial::tensor_product(slit_gate(r, r, r, -r), in);
  const ComplexMatrix x_lift =
      serial::tensor_product(slit_gate(0.0, 1.0, 1.0, 0.0), in);
  ComplexMatrix m = serial::matmul(s, c);
  m = serial::matmul(h_lift, m);
  m = serial::matmul(x_lift, m);
  return serial::matmul(h_lift, m);
}

ComplexMatrix compose_nondelayed_dense(const Config& cfg) {
  cfg.validate();
  const std::size_t n = cfg.n_angles;
  const SlitAmplitudes amps = slit_amplitudes(cfg);
  const ComplexMatrix c = build_crystal(cfg);
  const ComplexMatrix s = build_screen(cfg, amps);
  const double r = 1.0 / std::sqrt(2.0);
  const ComplexMatrix pair_id = ComplexMatrix::identity(2 * n);
  const ComplexMatrix in = ComplexMatrix::identity(n);
  const ComplexMatrix h_lift = serial::tensor_product(
      pair_id, serial::tensor_product(slit_gate(r, r, r, -r), in));
  const ComplexMatrix x_lift = serial::tensor_product(
      pair_id, serial::tensor_product(slit_gate(0.0, 1.0, 1.0, 0.0), in));
  ComplexMatrix m = serial::matmul(h_lift, c);
  m = serial::matmul(x_lift, m);
  m = serial::matmul(h_lift, m);
  return serial::matmul(s, m);
}

}  // namespace dcsim::eraser

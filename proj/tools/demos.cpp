// Copyright 2026 The shgaunt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Application demos: each evaluates a closed form, the same quantity by
// quadrature, and reports the discrepancy.

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "cli.hpp"
#include "shgaunt/shgaunt.hpp"

namespace gsht {
namespace {

using nlohmann::ordered_json;
using shg::Basis;

constexpr std::uint64_t kSeed = 7;

ordered_json to_json(const Eigen::Vector3d& v) { return ordered_json::array({v(0), v(1), v(2)}); }

ordered_json to_json(const Eigen::Vector3cd& v) {
  ordered_json out = ordered_json::array();
  for (int i = 0; i < 3; ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

double angle_between(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

int order_or(const DemoOptions& o, int fallback) { return o.order >= 0 ? o.order : fallback; }

Eigen::Vector3d unit(const DemoOptions& o) { return shg::Direction(o.theta, o.phi).unit_vector(); }

// Random complex density, fixed seed.
Eigen::VectorXcd density(int order) {
  std::mt19937_64 rng(kSeed);
  return shg::random_complex(rng, order);
}

ordered_json demo_translate(const DemoOptions& o) {
  const int order = order_or(o, 2);
  const int expansion = o.expansion >= 0 ? o.expansion : shg::default_expansion_order(o.kd);
  const double k = 1.0;
  const Eigen::Vector3d x = o.kd * unit(o);
  const Eigen::VectorXcd a = density(order);
  const shg::GauntTable table = shg::build_table(Basis::real, order, expansion);
  const Eigen::VectorXcd closed = shg::translate_coeffs(a, k, x, expansion, table);
  const shg::QuadratureGrid grid = shg::build_grid(2 * order + expansion + 40);
  const Eigen::VectorXcd ref = shg::oracle::translate(a, k, x, order + expansion, grid);
  return {{"demo", "translate"},
          {"inputs", {{"order", order}, {"kd", o.kd}, {"expansion", expansion}, {"direction", {o.theta, o.phi}}}},
          {"closed_form_norm", closed.norm()},
          {"oracle_norm", ref.norm()},
          {"discrepancy", (closed - ref).norm() / ref.norm()}};
}

ordered_json demo_intensity(const DemoOptions& o) {
  const int order = order_or(o, 3);
  const int expansion = std::max(o.expansion, order + 1);
  const double k = 1.0;
  const shg::Direction u0(o.theta, o.phi);
  const Eigen::VectorXcd a = shg::sh_vector_real(order, u0).cast<std::complex<double>>();
  const Eigen::Vector3d x = o.kd * Eigen::Vector3d(0.3, -0.2, 0.4).normalized();
  const shg::Medium medium{o.sound_speed, 1.2};
  const shg::GauntTable table = shg::build_table(Basis::real, order, expansion);
  const Eigen::Vector3cd closed = shg::intensity_at(a, k, x, expansion, table, medium);
  const Eigen::Vector3cd ref = shg::oracle::intensity(a, k, x, shg::build_grid(order + 40), medium);
  return {{"demo", "intensity"},
          {"inputs", {{"order", order}, {"kd", o.kd}, {"expansion", expansion}, {"direction", {o.theta, o.phi}}}},
          {"closed_form", to_json(closed)},
          {"oracle", to_json(ref)},
          {"discrepancy", (closed - ref).norm() / ref.norm()},
          {"angle_to_minus_u0", angle_between(closed.real(), -u0.unit_vector())}};
}

ordered_json demo_energy_vector(const DemoOptions& o) {
  const int order = order_or(o, 3);
  const shg::Direction u0(o.theta, o.phi);
  const Eigen::VectorXcd a = shg::sh_vector_real(order, u0).cast<std::complex<double>>();
  const Eigen::Vector3d closed = shg::energy_vector(a);
  const Eigen::Vector3d ref = shg::oracle::energy_vector(a, shg::build_grid(2 * order + 2));
  return {{"demo", "energy-vector"},
          {"inputs", {{"order", order}, {"direction", {o.theta, o.phi}}}},
          {"closed_form", to_json(closed)},
          {"oracle", to_json(ref)},
          {"discrepancy", (closed - ref).norm()},
          {"magnitude", closed.norm()},
          {"angle_to_u0", angle_between(closed, u0.unit_vector())}};
}

ordered_json demo_window(const DemoOptions& o) {
  const int order = order_or(o, 2);
  const shg::Direction u0(o.theta, o.phi);
  // First-order cardioid pointing at u0.
  const shg::CoeffVector w = shg::steer_axisymmetric({std::sqrt(shg::kPi), std::sqrt(shg::kPi / 3.0)}, u0);
  std::mt19937_64 rng(kSeed);
  const Eigen::VectorXd a = shg::random_real(rng, order);
  const shg::GauntTable table = shg::build_table(Basis::real, order, w.order());
  const Eigen::MatrixXd W = shg::window_matrix(w, order, table);
  const Eigen::VectorXd closed = W.transpose() * a;
  const shg::QuadratureGrid grid = shg::build_grid(2 * (order + w.order()));
  std::vector<std::complex<double>> samples;
  for (const auto& u : grid.nodes) {
    samples.emplace_back(a.dot(shg::sh_vector_real(order, u)) * w.real_values().dot(shg::sh_vector_real(1, u)));
  }
  const Eigen::VectorXcd ref = shg::project_real_basis(grid, samples, order + w.order());
  // Windowing an isotropic field steers its energy vector to u0.
  Eigen::VectorXd iso = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(shg::coeff_count(order)));
  iso(0) = 1.0;
  const Eigen::Vector3d e = shg::energy_vector(Eigen::VectorXcd((W.transpose() * iso).cast<std::complex<double>>()));
  return {{"demo", "window"},
          {"inputs", {{"order", order}, {"window_order", w.order()}, {"direction", {o.theta, o.phi}}}},
          {"closed_form_norm", closed.norm()},
          {"oracle_norm", ref.norm()},
          {"discrepancy", (closed.cast<std::complex<double>>() - ref).cwiseAbs().maxCoeff()},
          {"isotropic_energy_vector", to_json(e)},
          {"angle_to_u0", angle_between(e, u0.unit_vector())}};
}

ordered_json demo_beamform(const DemoOptions& o) {
  const int order = order_or(o, 2);
  const shg::Direction u0(o.theta, o.phi);
  std::mt19937_64 rng(kSeed);
  Eigen::MatrixXcd h(2, static_cast<Eigen::Index>(shg::coeff_count(order)));
  h.row(0) = shg::random_complex(rng, order).transpose();
  h.row(1) = shg::random_complex(rng, order).transpose();
  const Eigen::VectorXcd a = shg::random_complex(rng, order);
  const shg::CoeffVector w = shg::steer_axisymmetric({1.0, 0.8, 0.4}, u0);
  const shg::GauntTable table = shg::build_table(Basis::real, order, order);
  const shg::BinauralBeamformer beam(h, order, table);
  const Eigen::Vector2cd closed = beam.apply(a, w);
  const shg::QuadratureGrid grid = shg::build_grid(3 * order + w.order());
  Eigen::Vector2cd ref = Eigen::Vector2cd::Zero();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Eigen::VectorXd r = shg::sh_vector_real(order, grid.nodes[i]);
    const Eigen::VectorXcd rc = r.cast<std::complex<double>>();
    const double wv = w.real_values().dot(shg::sh_vector_real(w.order(), grid.nodes[i]));
    ref += grid.weights[i] * wv * (a.transpose() * rc).value() * (h * rc);
  }
  return {{"demo", "beamform"},
          {"inputs", {{"order", order}, {"window_order", w.order()}, {"direction", {o.theta, o.phi}}}},
          {"closed_form", {{closed(0).real(), closed(0).imag()}, {closed(1).real(), closed(1).imag()}}},
          {"oracle", {{ref(0).real(), ref(0).imag()}, {ref(1).real(), ref(1).imag()}}},
          {"discrepancy", (closed - ref).norm()}};
}

ordered_json demo_diffuse_scm(const DemoOptions& o) {
  const int order = order_or(o, 2);
  const int expansion = o.expansion >= 0 ? o.expansion : 12;
  const double k = 2.0 * shg::kPi * o.freq / o.sound_speed;
  const Eigen::Vector3d x = o.spacing * unit(o);
  const double kd = k * o.spacing;
  const shg::GauntTable table = shg::build_table(Basis::real, order, order);
  const Eigen::MatrixXcd closed = shg::scm_spaced_isotropic(1.0, k, x, order, expansion, table);
  const shg::CoeffVector iso = shg::CoeffVector::real_basis(Eigen::VectorXd::Constant(1, std::sqrt(shg::kFourPi)));
  const Eigen::MatrixXcd ref = shg::oracle::scm_spaced(iso, k, x, order, shg::build_grid(2 * order + 40));
  const double sinc = kd == 0.0 ? 1.0 : std::sin(kd) / kd;
  return {{"demo", "diffuse-scm"},
          {"inputs",
           {{"order", order}, {"expansion", expansion}, {"spacing", o.spacing}, {"freq", o.freq}, {"kd", kd}}},
          {"coherence_00", {closed(0, 0).real(), closed(0, 0).imag()}},
          {"sinc_kd", sinc},
          {"coherence_error", std::abs(closed(0, 0) - sinc)},
          {"discrepancy", (closed - ref).cwiseAbs().maxCoeff()}};
}

}  // namespace

const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names = {"translate", "intensity", "energy-vector",
                                                 "window",    "beamform",  "diffuse-scm"};
  return names;
}

nlohmann::ordered_json run_demo(const std::string& name, const DemoOptions& opts) {
  if (name == "translate") return demo_translate(opts);
  if (name == "intensity") return demo_intensity(opts);
  if (name == "energy-vector") return demo_energy_vector(opts);
  if (name == "window") return demo_window(opts);
  if (name == "beamform") return demo_beamform(opts);
  if (name == "diffuse-scm") return demo_diffuse_scm(opts);
  throw std::invalid_argument("unknown demo: " + name);
}

}  // namespace gsht

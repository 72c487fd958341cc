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

// Acoustic applications of real-basis Gaunt coupling.
//
// A sound field is a superposition of plane waves with amplitude density
// a(k, u), expanded on real SHs: a(u) = a^T r_N(u). The plane-wave expansion
//   e^{ik u.x} = r(u)^T J(kd) r(x^),   J = diag(4 pi i^n j_n(kd))
// turns every integral of a product of densities, directivities and plane
// waves into Gaunt-weighted sums. Plane-wave densities are complex, so they
// travel as Eigen::VectorXcd in the real-SH basis.
//
// Time convention e^{+i omega t}: a plane wave from u0 propagates towards
// -u0 and the particle velocity is -(1/(c rho0)) integral a(u) u e^{ik u.x}.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "shgaunt/gaunt.hpp"
#include "shgaunt/quadrature.hpp"
#include "shgaunt/sh_core.hpp"

namespace shg {

struct Medium {
  double sound_speed = 343.0;  // m/s
  double density = 1.2;        // kg/m^3
};

/// i^n, exact.
inline std::complex<double> i_pow(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

/// j_0(x) .. j_max(x) by downward recursion, normalized with
/// sum (2n+1) j_n^2 = 1. Exact at x = 0.
inline std::vector<double> sph_bessel_sequence(int max_order, double x) {
  if (max_order < 0) throw std::invalid_argument("sph_bessel: negative order");
  if (!(x >= 0.0)) throw std::domain_error("sph_bessel: argument must be non-negative");
  std::vector<double> j(static_cast<std::size_t>(max_order) + 1, 0.0);
  if (x == 0.0) {
    j[0] = 1.0;
    return j;
  }
  const double span = std::max(static_cast<double>(max_order), x);
  const int start = static_cast<int>(std::ceil(span + 20.0 + 3.0 * std::sqrt(span)));
  double next = 0.0;  // j_{n+1}
  double cur = 1e-30; // j_n, unnormalized
  double sum = (2.0 * start + 1.0) * cur * cur;
  for (int n = start; n >= 1; --n) {
    const double prev = (2.0 * n + 1.0) / x * cur - next;
    next = cur;
    cur = prev;
    if (n - 1 <= max_order) j[static_cast<std::size_t>(n - 1)] = cur;
    sum += (2.0 * (n - 1) + 1.0) * cur * cur;
    if (std::abs(cur) > 1e100) {
      constexpr double s = 1e-100;
      cur *= s;
      next *= s;
      sum *= s * s;
      for (int l = n - 1; l <= max_order; ++l) j[static_cast<std::size_t>(l)] *= s;
    }
  }
  const double norm = 1.0 / std::sqrt(sum);
  for (auto& v : j) v *= norm;
  return j;
}

inline double sph_bessel(int n, double x) { return sph_bessel_sequence(n, x).back(); }

/// Distance and direction of a position vector; the zero vector maps to
/// (0, +z).
struct Polar {
  double distance;
  Direction direction;
};

inline Polar to_polar(const Eigen::Vector3d& x) { return {x.norm(), Direction::from_cartesian(x)}; }

/// J_N(kd): diagonal of 4 pi i^n j_n(kd) repeated over the 2n+1 degrees.
class RadialDiag {
 public:
  RadialDiag(int order, double k, double d) : order_(order), k_(k), d_(d) {
    if (order < 0) throw std::invalid_argument("radial_diag: negative order");
    if (k < 0.0 || d < 0.0) throw std::domain_error("radial_diag: k and d must be non-negative");
    const auto j = sph_bessel_sequence(order, k * d);
    per_order_.resize(order + 1);
    for (int n = 0; n <= order; ++n) per_order_(n) = kFourPi * i_pow(n) * j[static_cast<std::size_t>(n)];
  }

  int order() const { return order_; }
  double k() const { return k_; }
  double d() const { return d_; }

  std::complex<double> at_order(int n) const { return per_order_(n); }
  std::complex<double> operator()(std::size_t q) const { return per_order_(from_acn(q).n); }

  Eigen::VectorXcd entries() const {
    Eigen::VectorXcd out(static_cast<Eigen::Index>(coeff_count(order_)));
    for (int n = 0; n <= order_; ++n) out.segment(n * n, 2 * n + 1).setConstant(per_order_(n));
    return out;
  }

  /// J v for an ACN vector of order <= order().
  template <typename Derived>
  Eigen::VectorXcd apply(const Eigen::MatrixBase<Derived>& v) const {
    const int n_max = order_from_size(static_cast<std::size_t>(v.size()));
    if (n_max < 0 || n_max > order_) throw std::invalid_argument("RadialDiag: vector order mismatch");
    Eigen::VectorXcd out(v.size());
    for (int n = 0; n <= n_max; ++n) {
      for (int i = 0; i < 2 * n + 1; ++i) out(n * n + i) = per_order_(n) * v(n * n + i);
    }
    return out;
  }

 private:
  int order_;
  double k_;
  double d_;
  Eigen::VectorXcd per_order_;
};

inline RadialDiag radial_diag(int order, double k, double d) { return RadialDiag(order, k, d); }

/// Truncation order ceil(e kd / 2).
inline int plane_wave_order_rule(double kd) {
  return static_cast<int>(std::ceil(std::numbers::e * kd / 2.0 - 1e-12));
}

/// Margin over the rule. Smallest value keeping the plane-wave expansion
/// within 1e-4 of e^{iku.x} for every direction up to kd = 5.
inline constexpr int kExpansionMargin = 6;

inline int default_expansion_order(double kd) { return plane_wave_order_rule(kd) + kExpansionMargin; }

/// e^{ik u.x} ~= direction_sh^T position_factor.
struct PlaneWaveFactors {
  Eigen::VectorXd direction_sh;      // r(u)
  Eigen::VectorXcd position_factor;  // J(kd) r(x^)

  std::complex<double> value() const { return (direction_sh.cast<std::complex<double>>().transpose() * position_factor).value(); }
};

/// J(kd) r(x^) of the given order.
inline Eigen::VectorXcd position_factor(double k, const Eigen::Vector3d& x, int order) {
  const Polar p = to_polar(x);
  return RadialDiag(order, k, p.distance).apply(sh_vector_real(order, p.direction));
}

inline PlaneWaveFactors plane_wave_coeffs(const Direction& u, double k, const Eigen::Vector3d& x, int order) {
  if (order < 0) throw std::invalid_argument("plane_wave_coeffs: negative order");
  return {sh_vector_real(order, u), position_factor(k, x, order)};
}

namespace detail {

inline void require_real_table(const GauntTable& table, int n1, int n2, const char* who) {
  table.require(Basis::real, n1, n2, who);
}

inline int checked_order(Eigen::Index size, const char* who) {
  const int order = order_from_size(static_cast<std::size_t>(size));
  if (order < 0) throw std::invalid_argument(std::string(who) + ": length is not (N+1)^2");
  return order;
}

}  // namespace detail

/// Coefficients of a(u) e^{ik u.x} up to order N + N''. `table` must cover
/// factor orders (N, N'').
inline Eigen::VectorXcd translate_coeffs(const Eigen::VectorXcd& a, double k, const Eigen::Vector3d& x,
                                         int expansion_order, const GauntTable& table) {
  const int order = detail::checked_order(a.size(), "translate_coeffs");
  detail::require_real_table(table, order, expansion_order, "translate_coeffs");
  const Eigen::VectorXcd jr = position_factor(k, x, expansion_order);
  const auto count = static_cast<Eigen::Index>(coeff_count(order + expansion_order));
  Eigen::VectorXcd out(count);
  for (Eigen::Index q = 0; q < count; ++q) out(q) = table[static_cast<std::size_t>(q)].bilinear(a, jr);
  return out;
}

inline Eigen::VectorXcd translate_coeffs(const CoeffVector& a, double k, const Eigen::Vector3d& x,
                                         int expansion_order, const GauntTable& table) {
  if (a.basis() != Basis::real) throw std::invalid_argument("translate_coeffs: real-basis density expected");
  return translate_coeffs(a.values(), k, x, expansion_order, table);
}

/// p(x) = a^T J_N(kd) r_N(x^), plane-wave density on real SHs.
inline std::complex<double> pressure_at(const Eigen::VectorXcd& a, double k, const Eigen::Vector3d& x) {
  const int order = detail::checked_order(a.size(), "pressure_at");
  return (a.transpose() * position_factor(k, x, order)).value();
}

/// Either basis; the complex form is a^T J_N y_N(x^).
inline std::complex<double> pressure_at(const CoeffVector& a, double k, const Eigen::Vector3d& x) {
  if (a.basis() == Basis::real) return pressure_at(a.values(), k, x);
  const Polar p = to_polar(x);
  const RadialDiag j(a.order(), k, p.distance);
  return (a.complex_values().transpose() * j.apply(sh_vector_complex(a.order(), p.direction))).value();
}

/// Target degrees of the first-order real SHs giving the x, y, z components
/// of u: sqrt(4pi/3) (R_{1,1}, R_{1,-1}, R_{1,0}).
inline constexpr int kCartesianDegree[3] = {1, -1, 0};

/// Complex particle velocity from the first-order couplings F^{1,m}.
inline Eigen::Vector3cd velocity_at(const Eigen::VectorXcd& a, double k, const Eigen::Vector3d& x,
                                    int expansion_order, const GauntTable& table, const Medium& medium = {}) {
  const int order = detail::checked_order(a.size(), "velocity_at");
  detail::require_real_table(table, order, expansion_order, "velocity_at");
  const Eigen::VectorXcd jr = position_factor(k, x, expansion_order);
  const double scale = -std::sqrt(kFourPi / 3.0) / (medium.sound_speed * medium.density);
  Eigen::Vector3cd v;
  for (int c = 0; c < 3; ++c) v(c) = scale * table.at(ShIndex(1, kCartesianDegree[c])).bilinear(a, jr);
  return v;
}

/// Complex intensity (1/2) p^* v. Exact for N'' >= N + 1.
inline Eigen::Vector3cd intensity_at(const Eigen::VectorXcd& a, double k, const Eigen::Vector3d& x,
                                     int expansion_order, const GauntTable& table, const Medium& medium = {}) {
  const std::complex<double> p = pressure_at(a, k, x);
  return 0.5 * std::conj(p) * velocity_at(a, k, x, expansion_order, table, medium);
}

/// Order-1 couplings F^{1,m}_{N,N} for the three Cartesian components.
inline std::array<GauntMatrix, 3> cartesian_couplings(int order) {
  return {gaunt_matrix(Basis::real, order, order, ShIndex(1, 1)),
          gaunt_matrix(Basis::real, order, order, ShIndex(1, -1)),
          gaunt_matrix(Basis::real, order, order, ShIndex(1, 0))};
}

/// sqrt(4pi/3) [a^H F^{1,1} a; a^H F^{1,-1} a; a^H F^{1,0} a] / |a|^2.
inline Eigen::Vector3d energy_vector(const Eigen::VectorXcd& a, const std::array<GauntMatrix, 3>& couplings) {
  const int order = detail::checked_order(a.size(), "energy_vector");
  const double energy = a.squaredNorm();
  if (!(energy > 0.0)) throw std::invalid_argument("energy_vector: zero-energy input");
  Eigen::Vector3d e;
  for (int c = 0; c < 3; ++c) {
    const auto& f = couplings[static_cast<std::size_t>(c)];
    if (f.basis() != Basis::real || f.order1() < order || f.order2() < order) {
      throw std::invalid_argument("energy_vector: coupling matrices too small");
    }
    const std::complex<double> form = f.bilinear(a.conjugate(), a);
    if (std::abs(form.imag()) > 1e-13 * std::max(1.0, energy)) {
      throw std::runtime_error("energy_vector: hermitian form not real");
    }
    e(c) = std::sqrt(kFourPi / 3.0) * form.real() / energy;
  }
  return e;
}

inline Eigen::Vector3d energy_vector(const Eigen::VectorXcd& a) {
  return energy_vector(a, cartesian_couplings(detail::checked_order(a.size(), "energy_vector")));
}

inline Eigen::Vector3d energy_vector(const CoeffVector& a) {
  if (a.basis() != Basis::real) throw std::invalid_argument("energy_vector: real-basis coefficients expected");
  return energy_vector(a.values());
}

/// W with a'^T = a^T W: column q' holds F^{q'}_{N,N''} w. The product a(u)w(u)
/// has order N + N''; `output_order` >= 0 truncates the columns to that order.
inline Eigen::MatrixXd window_matrix(const CoeffVector& w, int order, const GauntTable& table, int output_order = -1) {
  if (w.basis() != Basis::real) throw std::invalid_argument("window_matrix: real-basis window expected");
  detail::require_real_table(table, order, w.order(), "window_matrix");
  const int full = order + w.order();
  const int out_order = output_order < 0 ? full : std::min(output_order, full);
  const auto rows = static_cast<Eigen::Index>(coeff_count(order));
  const auto cols = static_cast<Eigen::Index>(coeff_count(out_order));
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index q = 0; q < cols; ++q) out.col(q) = table[static_cast<std::size_t>(q)].apply(w.real_values(), rows);
  return out;
}

/// Axisymmetric pattern with per-order weights b_n steered to u0:
/// w_{n,m} = b_n R_{n,m}(u0).
inline CoeffVector steer_axisymmetric(const std::vector<double>& order_weights, const Direction& u0) {
  if (order_weights.empty()) throw std::invalid_argument("steer_axisymmetric: no weights");
  const int order = static_cast<int>(order_weights.size()) - 1;
  Eigen::VectorXd w = sh_vector_real(order, u0);
  for (int n = 0; n <= order; ++n) w.segment(n * n, 2 * n + 1) *= order_weights[static_cast<std::size_t>(n)];
  return CoeffVector::real_basis(std::move(w));
}

/// Beamforming and binaural decoding in one step:
///   b = sum_s w_s H F^{s}_{N',N} a
/// for HRTF coefficients H (2 x (N'+1)^2), field a of order N and a window w.
class BinauralBeamformer {
 public:
  BinauralBeamformer(const Eigen::MatrixXcd& hrtf, int field_order, const GauntTable& table)
      : field_order_(field_order) {
    if (hrtf.rows() != 2) throw std::invalid_argument("BinauralBeamformer: HRTF matrix must have 2 rows");
    hrtf_order_ = detail::checked_order(hrtf.cols(), "BinauralBeamformer");
    detail::require_real_table(table, hrtf_order_, field_order, "BinauralBeamformer");
    const auto cols = static_cast<Eigen::Index>(coeff_count(field_order));
    const std::size_t count = coeff_count(hrtf_order_ + field_order);
    matrices_.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
      const auto& f = table[s];
      Eigen::MatrixXcd m(2, cols);
      for (int ear = 0; ear < 2; ++ear) m.row(ear) = f.apply_left(hrtf.row(ear).transpose(), cols).transpose();
      matrices_.push_back(std::move(m));
    }
  }

  int hrtf_order() const { return hrtf_order_; }
  int field_order() const { return field_order_; }
  /// H F^{s}_{N',N}, 2 x (N+1)^2.
  const Eigen::MatrixXcd& matrix(std::size_t s) const { return matrices_.at(s); }
  std::size_t size() const { return matrices_.size(); }

  /// W(u0) = sum_s w_s H F^{s}; window terms above N' + N couple to nothing.
  Eigen::MatrixXcd steering_matrix(const CoeffVector& w) const {
    if (w.basis() != Basis::real) throw std::invalid_argument("BinauralBeamformer: real-basis window expected");
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2, static_cast<Eigen::Index>(coeff_count(field_order_)));
    const auto terms = std::min<std::size_t>(matrices_.size(), static_cast<std::size_t>(w.size()));
    for (std::size_t s = 0; s < terms; ++s) out += w.real_values()(static_cast<Eigen::Index>(s)) * matrices_[s];
    return out;
  }

  Eigen::Vector2cd apply(const Eigen::VectorXcd& a, const CoeffVector& w) const {
    if (a.size() != static_cast<Eigen::Index>(coeff_count(field_order_))) {
      throw std::invalid_argument("BinauralBeamformer: field order mismatch");
    }
    return steering_matrix(w) * a;
  }

 private:
  int hrtf_order_ = 0;
  int field_order_;
  std::vector<Eigen::MatrixXcd> matrices_;
};

inline void check_rotation(const Eigen::Matrix3d& r, const char* who) {
  if ((r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-9 || r.determinant() < 0.0) {
    throw std::invalid_argument(std::string(who) + ": not a proper rotation matrix");
  }
}

/// Block-diagonal S with r_N(R u) = S r_N(u), by projecting the rotated
/// harmonics on a grid that integrates degree 2N exactly.
inline Eigen::MatrixXd sh_rotation_matrix(const Eigen::Matrix3d& rotation, int order) {
  check_rotation(rotation, "sh_rotation_matrix");
  if (order < 0) throw std::invalid_argument("sh_rotation_matrix: negative order");
  const QuadratureGrid grid = build_grid(2 * order);
  const auto dim = static_cast<Eigen::Index>(coeff_count(order));
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Eigen::VectorXd r = sh_vector_real(order, grid.nodes[i]);
    const Eigen::VectorXd rr =
        sh_vector_real(order, Direction::from_cartesian(rotation * grid.nodes[i].unit_vector()));
    for (int n = 0; n <= order; ++n) {
      const int off = n * n;
      const int len = 2 * n + 1;
      out.block(off, off, len, len) += grid.weights[i] * rr.segment(off, len) * r.segment(off, len).transpose();
    }
  }
  return out;
}

struct Sensor {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Matrix3d orientation = Eigen::Matrix3d::Identity();
  Eigen::VectorXd directivity;  // real SH coefficients d of the unrotated response
};

struct ArrayModel {
  std::vector<Sensor> sensors;
};

/// Coefficients of d(R^-1 u) e^{ik u.x_q} up to `output_order`, computed as
/// d_rot^T F^{n,m} J r(x^_q) with d_rot = S(R^-1)^T d.
inline Eigen::VectorXcd array_sensor_coeffs(const ArrayModel& model, std::size_t sensor, double k,
                                            int expansion_order, int output_order, const GauntTable& table) {
  const Sensor& s = model.sensors.at(sensor);
  check_rotation(s.orientation, "array_sensor_coeffs");
  const int order = detail::checked_order(s.directivity.size(), "array_sensor_coeffs");
  detail::require_real_table(table, order, expansion_order, "array_sensor_coeffs");
  if (output_order < 0 || output_order > order + expansion_order) {
    throw std::invalid_argument("array_sensor_coeffs: output order outside N' + N''");
  }
  const Eigen::VectorXd d_rot = sh_rotation_matrix(s.orientation.transpose(), order).transpose() * s.directivity;
  const Eigen::VectorXcd jr = position_factor(k, s.position, expansion_order);
  const auto count = static_cast<Eigen::Index>(coeff_count(output_order));
  Eigen::VectorXcd out(count);
  for (Eigen::Index q = 0; q < count; ++q) out(q) = table[static_cast<std::size_t>(q)].bilinear(d_rot, jr);
  return out;
}

/// Q x (N_out+1)^2 matrix whose rows are the sensor coefficient vectors.
inline Eigen::MatrixXcd array_atf_matrix(const ArrayModel& model, double k, int expansion_order, int output_order,
                                         const GauntTable& table) {
  Eigen::MatrixXcd h(static_cast<Eigen::Index>(model.sensors.size()),
                     static_cast<Eigen::Index>(coeff_count(output_order)));
  for (std::size_t q = 0; q < model.sensors.size(); ++q) {
    h.row(static_cast<Eigen::Index>(q)) =
        array_sensor_coeffs(model, q, k, expansion_order, output_order, table).transpose();
  }
  return h;
}

class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kMaxConditionNumber = 1e12;

/// E = H_L^H (H H^H + lambda^2 I)^-1, minimizing
/// |E H - I_{L,N}|_F^2 + lambda^2 |E|_F^2.
inline Eigen::MatrixXcd encoding_filters_ls(const Eigen::MatrixXcd& h, int target_order, double lambda) {
  const int order = detail::checked_order(h.cols(), "encoding_filters_ls");
  if (target_order < 0 || target_order > order) throw std::invalid_argument("encoding_filters_ls: L must be <= N");
  if (lambda < 0.0) throw std::invalid_argument("encoding_filters_ls: lambda must be non-negative");
  Eigen::MatrixXcd gram = h * h.adjoint();
  gram.diagonal().array() += lambda * lambda;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
  if (eig.info() != Eigen::Success) throw SingularSystemError("encoding_filters_ls: eigensolver failed");
  const Eigen::VectorXd& ev = eig.eigenvalues();
  const double lo = ev.minCoeff();
  const double hi = ev.maxCoeff();
  if (!(lo > 0.0) || hi / lo > kMaxConditionNumber) {
    throw SingularSystemError("encoding_filters_ls: system is singular or ill-conditioned");
  }
  const Eigen::MatrixXcd& v = eig.eigenvectors();
  const Eigen::MatrixXcd inv = v * ev.cwiseInverse().asDiagonal() * v.adjoint();
  const auto cols = static_cast<Eigen::Index>(coeff_count(target_order));
  return h.leftCols(cols).adjoint() * inv;
}

inline Eigen::MatrixXd scm_isotropic_field(double power, int order) {
  const auto dim = static_cast<Eigen::Index>(coeff_count(order));
  return power * Eigen::MatrixXd::Identity(dim, dim);
}

inline Eigen::MatrixXcd scm_array_isotropic(const Eigen::MatrixXcd& h, double power) {
  return power * h * h.adjoint();
}

/// Smallest value of p(u) = p^T r(u) over a grid; negative values mean the
/// truncated density undershoots.
inline double psd_min_value(const CoeffVector& p, int grid_band = -1) {
  const QuadratureGrid grid = build_grid(grid_band < 0 ? 4 * p.order() + 8 : grid_band);
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& u : grid.nodes) lo = std::min(lo, p.real_values().dot(sh_vector_real(p.order(), u)));
  return lo;
}

namespace detail {

/// sum_s c_s F^{s}_{N,N}; terms with n_s > 2N couple to nothing and are skipped.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> coupled_sum(
    const Eigen::MatrixBase<Derived>& c, int order, const GauntTable& table, const char* who) {
  require_real_table(table, order, order, who);
  using Scalar = typename Derived::Scalar;
  const auto dim = static_cast<Eigen::Index>(coeff_count(order));
  const std::size_t terms = std::min<std::size_t>(static_cast<std::size_t>(c.size()), coeff_count(2 * order));
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(dim, dim);
  for (std::size_t s = 0; s < terms; ++s) {
    const Scalar cs = c(static_cast<Eigen::Index>(s));
    if (cs == Scalar(0)) continue;
    for (const auto& e : table[s].entries()) {
      if (e.row < dim && e.col < dim) out(e.row, e.col) += cs * e.value;
    }
  }
  return out;
}

}  // namespace detail

/// sum p_{n',m'} F^{n',m'}_{N,N} for a real-basis directional power density p.
inline Eigen::MatrixXd scm_anisotropic_field(const CoeffVector& p, int order, const GauntTable& table) {
  if (p.basis() != Basis::real) throw std::invalid_argument("scm_anisotropic_field: real-basis density expected");
  return detail::coupled_sum(p.real_values(), order, table, "scm_anisotropic_field");
}

inline Eigen::MatrixXcd scm_array_anisotropic(const Eigen::MatrixXcd& h, const CoeffVector& p, const GauntTable& table) {
  const int order = detail::checked_order(h.cols(), "scm_array_anisotropic");
  return h * scm_anisotropic_field(p, order, table).cast<std::complex<double>>() * h.adjoint();
}

/// Real-SH coefficients of e^{-ik u.x} up to the expansion order:
/// 4 pi i^n j_n(kd) R_{n,m}(-x^).
inline Eigen::VectorXcd conjugate_plane_wave_kernel(double k, const Eigen::Vector3d& x, int expansion_order) {
  return position_factor(k, -x, expansion_order);
}

/// Covariance of the field coefficients at the origin and at x for an
/// isotropic field: 4 pi P_d sum i^n j_n(kd) R_{n,m}(-x^) F^{n,m}_{N,N}.
inline Eigen::MatrixXcd scm_spaced_isotropic(double power, double k, const Eigen::Vector3d& x, int order,
                                             int expansion_order, const GauntTable& table) {
  if (expansion_order < 0) throw std::invalid_argument("scm_spaced_isotropic: negative expansion order");
  const Eigen::VectorXcd kernel = power * conjugate_plane_wave_kernel(k, x, std::min(expansion_order, 2 * order));
  return detail::coupled_sum(kernel, order, table, "scm_spaced_isotropic");
}

/// Anisotropic version. The density times the plane-wave kernel is first
/// coupled into c_s = sum F^{s}_{a,b} kappa_a p_b with the table `coupling`
/// (factor orders >= (expansion order, density order)); then
/// SCM = sum_s c_s F^{s}_{N,N}. This is the four-harmonic product.
inline Eigen::MatrixXcd scm_spaced_anisotropic(const CoeffVector& p, double k, const Eigen::Vector3d& x, int order,
                                               int expansion_order, const GauntTable& table,
                                               const GauntTable& coupling) {
  if (p.basis() != Basis::real) throw std::invalid_argument("scm_spaced_anisotropic: real-basis density expected");
  if (expansion_order < 0) throw std::invalid_argument("scm_spaced_anisotropic: negative expansion order");
  // Kernel orders above 2N + N_p cannot reach the N x N block.
  const int kernel_order = std::min(expansion_order, 2 * order + p.order());
  detail::require_real_table(coupling, kernel_order, p.order(), "scm_spaced_anisotropic");
  const Eigen::VectorXcd kernel = conjugate_plane_wave_kernel(k, x, kernel_order);
  const std::size_t terms = std::min(coeff_count(kernel_order + p.order()), coeff_count(2 * order));
  Eigen::VectorXcd c(static_cast<Eigen::Index>(terms));
  for (std::size_t s = 0; s < terms; ++s) c(static_cast<Eigen::Index>(s)) = coupling[s].bilinear(kernel, p.real_values());
  return detail::coupled_sum(c, order, table, "scm_spaced_anisotropic");
}

// ---------------------------------------------------------------------------
// Quadrature references for the closed forms above. They integrate the
// defining expressions directly on a product grid.

namespace oracle {

inline std::complex<double> plane_wave(double k, const Direction& u, const Eigen::Vector3d& x) {
  return std::polar(1.0, k * u.unit_vector().dot(x));
}

inline std::complex<double> density(const Eigen::VectorXcd& a, const Direction& u) {
  const int order = order_from_size(static_cast<std::size_t>(a.size()));
  return (a.transpose() * sh_vector_real(order, u).cast<std::complex<double>>()).value();
}

inline Eigen::VectorXcd translate(const Eigen::VectorXcd& a, double k, const Eigen::Vector3d& x, int output_order,
                                  const QuadratureGrid& grid) {
  std::vector<std::complex<double>> samples;
  samples.reserve(grid.size());
  for (const auto& u : grid.nodes) samples.push_back(density(a, u) * plane_wave(k, u, x));
  return project_real_basis(grid, samples, output_order);
}

inline std::complex<double> pressure(const Eigen::VectorXcd& a, double k, const Eigen::Vector3d& x,
                                     const QuadratureGrid& grid) {
  return integrate(grid, [&](const Direction& u) { return density(a, u) * plane_wave(k, u, x); });
}

inline Eigen::Vector3cd velocity(const Eigen::VectorXcd& a, double k, const Eigen::Vector3d& x,
                                 const QuadratureGrid& grid, const Medium& medium = {}) {
  Eigen::Vector3cd v = integrate(grid, [&](const Direction& u) -> Eigen::Vector3cd {
    return (density(a, u) * plane_wave(k, u, x)) * u.unit_vector().cast<std::complex<double>>();
  });
  return -v / (medium.sound_speed * medium.density);
}

inline Eigen::Vector3cd intensity(const Eigen::VectorXcd& a, double k, const Eigen::Vector3d& x,
                                  const QuadratureGrid& grid, const Medium& medium = {}) {
  return 0.5 * std::conj(pressure(a, k, x, grid)) * velocity(a, k, x, grid, medium);
}

inline Eigen::Vector3d energy_vector(const Eigen::VectorXcd& a, const QuadratureGrid& grid) {
  const Eigen::Vector3d num = integrate(grid, [&](const Direction& u) -> Eigen::Vector3d {
    return std::norm(density(a, u)) * u.unit_vector();
  });
  const double den = integrate(grid, [&](const Direction& u) { return std::norm(density(a, u)); });
  return num / den;
}

/// integral P(u) e^{-ik u.x} r_N(u) r_N(u)^T du with P(u) = p^T r(u).
inline Eigen::MatrixXcd scm_spaced(const CoeffVector& p, double k, const Eigen::Vector3d& x, int order,
                                   const QuadratureGrid& grid) {
  return integrate(grid, [&](const Direction& u) -> Eigen::MatrixXcd {
    const Eigen::VectorXd r = sh_vector_real(order, u);
    const double power = p.real_values().dot(sh_vector_real(p.order(), u));
    return (power * std::conj(plane_wave(k, u, x))) * (r * r.transpose()).cast<std::complex<double>>();
  });
}

/// Response of a sensor to a plane wave from u: d(R^-1 u) e^{ik u.x}.
inline std::complex<double> sensor_response(const Sensor& s, double k, const Direction& u) {
  const int order = order_from_size(static_cast<std::size_t>(s.directivity.size()));
  const Direction local = Direction::from_cartesian(s.orientation.transpose() * u.unit_vector());
  return s.directivity.dot(sh_vector_real(order, local)) * plane_wave(k, u, s.position);
}

}  // namespace oracle

}  // namespace shg

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

// Product quadrature on the sphere and the spherical harmonic transform.
//
// The grid is Gauss-Legendre in cos(theta) times equispaced azimuth. With
// L = ceil((B+1)/2) inclination nodes and B+1 azimuth nodes it integrates every
// spherical polynomial of degree <= B exactly, which makes it the reference
// oracle for all coupling identities in this library.

#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <type_traits>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "shgaunt/basis_maps.hpp"
#include "shgaunt/sh_core.hpp"

namespace shg {

struct QuadratureGrid {
  std::vector<Direction> nodes;
  std::vector<double> weights;
  int degree = 0;

  std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recursion. Nodes are returned in increasing order.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int count) {
  if (count < 1) throw std::invalid_argument("gauss_legendre: count must be positive");
  std::vector<double> x(static_cast<std::size_t>(count), 0.0);
  std::vector<double> w(static_cast<std::size_t>(count), 0.0);
  if (count == 1) {
    w[0] = 2.0;
    return {x, w};
  }
  // Returns P_count(z) and its derivative.
  auto legendre = [count](double z) {
    double p0 = 1.0;
    double p1 = z;
    for (int l = 2; l <= count; ++l) {
      const double p2 = ((2.0 * l - 1.0) * z * p1 - (l - 1.0) * p0) / l;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, count * (z * p1 - p0) / (z * z - 1.0)};
  };
  const int half = count / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (count + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(z);
      const double dz = p / dp;
      z -= dz;
      if (std::abs(dz) <= 1e-16 * std::abs(z)) break;
    }
    const double dp = legendre(z).second;
    const double weight = 2.0 / ((1.0 - z * z) * dp * dp);
    x[static_cast<std::size_t>(i)] = -z;
    x[static_cast<std::size_t>(count - 1 - i)] = z;
    w[static_cast<std::size_t>(i)] = weight;
    w[static_cast<std::size_t>(count - 1 - i)] = weight;
  }
  if (count % 2 == 1) {
    const double dp = legendre(0.0).second;
    w[static_cast<std::size_t>(half)] = 2.0 / (dp * dp);
  }
  return {x, w};
}

inline QuadratureGrid build_grid(int max_band) {
  if (max_band < 0) throw std::invalid_argument("build_grid: negative band");
  const int n_theta = (max_band + 2) / 2;
  const int n_phi = max_band + 1;
  const auto [x, w] = gauss_legendre(n_theta);
  QuadratureGrid grid;
  grid.degree = max_band;
  grid.nodes.reserve(static_cast<std::size_t>(n_theta * n_phi));
  grid.weights.reserve(static_cast<std::size_t>(n_theta * n_phi));
  const double dphi = 2.0 * kPi / n_phi;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = std::acos(-x[static_cast<std::size_t>(i)]);
    for (int j = 0; j < n_phi; ++j) {
      grid.nodes.emplace_back(theta, j * dphi);
      grid.weights.push_back(w[static_cast<std::size_t>(i)] * dphi);
    }
  }
  return grid;
}

/// Weighted sum of fn(node) over the grid, in node order.
template <typename Fn>
auto integrate(const QuadratureGrid& grid, Fn&& fn) {
  using Value = std::decay_t<decltype(fn(grid.nodes.front()))>;
  Value acc{};
  bool first = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Value term = fn(grid.nodes[i]) * grid.weights[i];
    if (first) {
      acc = std::move(term);
      first = false;
    } else {
      acc += term;
    }
  }
  return acc;
}

/// Samples of a function at every grid node.
template <typename Fn>
Eigen::VectorXcd sample(const QuadratureGrid& grid, Fn&& fn) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) out(static_cast<Eigen::Index>(i)) = fn(grid.nodes[i]);
  return out;
}

/// Projection onto real SHs of a (possibly complex-valued) function:
/// integral f(u) r_N(u) du.
inline Eigen::VectorXcd project_real_basis(const QuadratureGrid& grid, std::span<const std::complex<double>> samples,
                                           int order) {
  if (samples.size() != grid.size()) throw std::invalid_argument("forward_sht: sample count mismatch");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(coeff_count(order)));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out += (grid.weights[i] * samples[i]) * sh_vector_real(order, grid.nodes[i]);
  }
  return out;
}

/// Projection onto conjugated complex SHs: integral f(u) y_N^*(u) du.
inline Eigen::VectorXcd project_complex_basis(const QuadratureGrid& grid,
                                              std::span<const std::complex<double>> samples, int order) {
  if (samples.size() != grid.size()) throw std::invalid_argument("forward_sht: sample count mismatch");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(coeff_count(order)));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out += (grid.weights[i] * samples[i]) * sh_vector_complex(order, grid.nodes[i]).conjugate();
  }
  return out;
}

/// Forward SHT from samples on the grid. Exact when the grid degree is at
/// least N plus the band limit of f; under-resolved grids alias silently.
/// Real-basis output requires a real-valued function.
inline CoeffVector forward_sht(const QuadratureGrid& grid, std::span<const std::complex<double>> samples, Basis basis,
                               int order) {
  if (basis == Basis::complex) return CoeffVector::complex_basis(project_complex_basis(grid, samples, order));
  const Eigen::VectorXcd c = project_real_basis(grid, samples, order);
  if (c.imag().cwiseAbs().maxCoeff() > kRealResidueTolerance * std::max(c.norm(), 1.0)) {
    throw std::domain_error("forward_sht: real basis requested for a complex-valued function");
  }
  return CoeffVector::real_basis(c.real());
}

inline CoeffVector forward_sht(const QuadratureGrid& grid, const Eigen::VectorXcd& samples, Basis basis, int order) {
  return forward_sht(grid, std::span<const std::complex<double>>(samples.data(), static_cast<std::size_t>(samples.size())),
                     basis, order);
}

/// Pointwise synthesis f(u) = f^T y_N(u) (or f^T r_N(u)).
inline std::vector<std::complex<double>> inverse_sht(const CoeffVector& v, std::span<const Direction> dirs) {
  std::vector<std::complex<double>> out;
  out.reserve(dirs.size());
  for (const auto& d : dirs) {
    if (v.basis() == Basis::complex) {
      out.push_back(v.complex_values().cwiseProduct(sh_vector_complex(v.order(), d)).sum());
    } else {
      out.emplace_back(v.real_values().dot(sh_vector_real(v.order(), d)), 0.0);
    }
  }
  return out;
}

inline std::complex<double> inverse_sht(const CoeffVector& v, const Direction& dir) {
  return inverse_sht(v, std::span<const Direction>(&dir, 1)).front();
}

struct InnerProducts {
  /// integral of f^*(u) g(u)
  std::complex<double> hermitian;
  /// integral of f(u) g(u)
  std::complex<double> plain;
};

/// Both sphere inner products from coefficients alone:
/// complex basis f^H g and f^T T g; real basis f^T g for both.
inline InnerProducts inner_products(const CoeffVector& f, const CoeffVector& g) {
  if (f.basis() != g.basis()) throw std::invalid_argument("inner_products: basis mismatch");
  if (f.order() != g.order()) throw std::invalid_argument("inner_products: order mismatch");
  if (f.basis() == Basis::real) {
    const double v = f.real_values().dot(g.real_values());
    return {v, v};
  }
  const auto& fc = f.complex_values();
  const auto& gc = g.complex_values();
  const ConjugationMap t(f.order());
  // Eigen's dot conjugates its first argument.
  return {fc.dot(gc), (fc.transpose() * t.apply(gc)).value()};
}

}  // namespace shg

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

// Self-check suites comparing closed forms with quadrature and with the
// algebraic identities they must satisfy. Used by `gsht verify`.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "shgaunt/acoustics.hpp"
#include "shgaunt/basis_maps.hpp"
#include "shgaunt/gaunt.hpp"
#include "shgaunt/quadrature.hpp"
#include "shgaunt/sh_core.hpp"

namespace shg {

struct VerifyConfig {
  int n1 = 3;
  int n2 = 3;
  double tolerance = 1e-11;
  int grid_band = -1;  // < 0: 3 (n1 + n2)
  FactorialPath path = FactorialPath::exact;
  std::uint64_t seed = 20240601;

  int effective_band() const { return grid_band < 0 ? 3 * (n1 + n2) : grid_band; }
};

inline std::string format_error(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

/// Largest |gaunt_complex| over all forbidden index combinations of orders
/// <= (N1, N2); zero when every forbidden value is short-circuited.
inline double forbidden_scalar_magnitude(int order1, int order2) {
  double worst = 0.0;
  for (int n1 = 0; n1 <= order1; ++n1) {
    for (int m1 = -n1; m1 <= n1; ++m1) {
      for (int n2 = 0; n2 <= order2; ++n2) {
        for (int m2 = -n2; m2 <= n2; ++m2) {
          for (int n = 0; n <= order1 + order2; ++n) {
            for (int m = -n; m <= n; ++m) {
              if (complex_gaunt_allowed(n1, m1, n2, m2, n, m)) continue;
              worst = std::max(worst, std::abs(gaunt_complex(n1, m1, n2, m2, n, m)));
            }
          }
        }
      }
    }
  }
  return worst;
}

struct SuiteResult {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

/// Every coupling matrix of a table by direct quadrature, densely. The grid
/// must integrate degree 2 (N1 + N2).
inline std::vector<Eigen::MatrixXcd> oracle_table(Basis basis, int order1, int order2, const QuadratureGrid& grid) {
  const int top = order1 + order2;
  if (grid.degree < 2 * top) throw std::invalid_argument("oracle_table: under-resolved grid");
  const auto r1 = static_cast<Eigen::Index>(coeff_count(order1));
  const auto r2 = static_cast<Eigen::Index>(coeff_count(order2));
  std::vector<Eigen::MatrixXcd> out(coeff_count(top), Eigen::MatrixXcd::Zero(r1, r2));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Eigen::VectorXcd y = sh_vector(basis, top, grid.nodes[i]);
    const Eigen::MatrixXcd outer = y.head(r1) * y.head(r2).transpose();
    for (std::size_t t = 0; t < out.size(); ++t) {
      const std::complex<double> yt = basis == Basis::complex ? std::conj(y(static_cast<Eigen::Index>(t)))
                                                              : y(static_cast<Eigen::Index>(t));
      out[t] += (grid.weights[i] * yt) * outer;
    }
  }
  return out;
}

/// Worst deviation between a table and its quadrature oracle.
inline double max_oracle_error(const GauntTable& table, const QuadratureGrid& grid) {
  const auto ref = oracle_table(table.basis(), table.order1(), table.order2(), grid);
  double err = 0.0;
  for (std::size_t t = 0; t < ref.size(); ++t) {
    err = std::max(err, (table[t].dense().cast<std::complex<double>>() - ref[t]).cwiseAbs().maxCoeff());
  }
  return err;
}

/// Largest stored magnitude at a position the selection rules forbid.
/// Complex: m = m1 + m2, triangle and parity. Real: triangle, parity and
/// |m| in {|m1+m2|, |m1-m2|}.
inline double selection_rule_violation(const GauntTable& table) {
  double worst = 0.0;
  for (std::size_t t = 0; t < table.size(); ++t) {
    const ShIndex target = from_acn(t);
    for (const auto& e : table[t].entries()) {
      const ShIndex a = from_acn(e.row);
      const ShIndex b = from_acn(e.col);
      bool allowed = false;
      if (table.basis() == Basis::complex) {
        allowed = complex_gaunt_allowed(a.n, a.m, b.n, b.m, target.n, target.m);
      } else {
        const int am = std::abs(target.m);
        allowed = target.n >= std::abs(a.n - b.n) && target.n <= a.n + b.n && (target.n + a.n + b.n) % 2 == 0 &&
                  (am == std::abs(a.m + b.m) || am == std::abs(a.m - b.m));
      }
      if (!allowed) worst = std::max(worst, std::abs(e.value));
    }
  }
  return worst;
}

/// Largest |F(a,b,c) - F(perm)| over index triples of order <= N, read from
/// a real (N, N) table whose targets reach 2N.
inline double real_permutation_asymmetry(const GauntTable& table) {
  const int order = std::min(table.order1(), table.order2());
  const auto dim = coeff_count(order);
  std::vector<Eigen::MatrixXd> dense;
  dense.reserve(dim);
  for (std::size_t t = 0; t < dim; ++t) dense.push_back(table[t].dense());
  double worst = 0.0;
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      for (std::size_t c = 0; c < dim; ++c) {
        const double v = dense[c](a, b);
        const double perms[5] = {dense[c](b, a), dense[a](b, c), dense[a](c, b), dense[b](a, c), dense[b](c, a)};
        for (double p : perms) worst = std::max(worst, std::abs(v - p));
      }
    }
  }
  return worst;
}

/// Largest |G^{t}(a,b) - G^{t}(b,a)| for a complex (N, N) table.
inline double complex_swap_asymmetry(const GauntTable& table) {
  double worst = 0.0;
  for (std::size_t t = 0; t < table.size(); ++t) {
    const Eigen::MatrixXd d = table[t].dense();
    const auto n = std::min(d.rows(), d.cols());
    worst = std::max(worst, (d.topLeftCorner(n, n) - d.topLeftCorner(n, n).transpose()).cwiseAbs().maxCoeff());
  }
  return worst;
}

inline Direction random_direction(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  return Direction(std::acos(1.0 - 2.0 * uni(rng)), 2.0 * kPi * uni(rng));
}

inline Eigen::VectorXd random_real(std::mt19937_64& rng, int order) {
  std::normal_distribution<double> nd;
  Eigen::VectorXd v(static_cast<Eigen::Index>(coeff_count(order)));
  for (auto& x : v) x = nd(rng);
  return v;
}

inline Eigen::VectorXcd random_complex(std::mt19937_64& rng, int order) {
  std::normal_distribution<double> nd;
  Eigen::VectorXcd v(static_cast<Eigen::Index>(coeff_count(order)));
  for (auto& x : v) x = {nd(rng), nd(rng)};
  return v;
}

/// |U U^H - I| (max-abs) and the worst |r - U y| over random directions.
inline std::pair<double, double> basis_map_errors(int order, int directions, std::mt19937_64& rng) {
  const BasisMap u(order);
  const Eigen::MatrixXcd d = u.dense();
  const double unitary =
      (d * d.adjoint() - Eigen::MatrixXcd::Identity(d.rows(), d.cols())).cwiseAbs().maxCoeff();
  double mapping = 0.0;
  for (int i = 0; i < directions; ++i) {
    const Direction dir = random_direction(rng);
    const Eigen::VectorXcd r = sh_vector_real(order, dir).cast<std::complex<double>>();
    mapping = std::max(mapping, (r - u.apply(sh_vector_complex(order, dir))).cwiseAbs().maxCoeff());
  }
  return {unitary, mapping};
}

/// Max-abs deviation of the coefficient-domain product from the SHT of the
/// pointwise product, over `pairs` random pairs.
inline double multiplication_error(Basis basis, const GauntTable& table, int order1, int order2, int pairs,
                                   const QuadratureGrid& grid, std::mt19937_64& rng) {
  const int top = order1 + order2;
  if (grid.degree < 2 * top) throw std::invalid_argument("multiplication_error: under-resolved grid");
  double worst = 0.0;
  for (int i = 0; i < pairs; ++i) {
    CoeffVector f = basis == Basis::real ? CoeffVector::real_basis(random_real(rng, order1))
                                         : CoeffVector::complex_basis(random_complex(rng, order1));
    CoeffVector g = basis == Basis::real ? CoeffVector::real_basis(random_real(rng, order2))
                                         : CoeffVector::complex_basis(random_complex(rng, order2));
    const CoeffVector h = multiply_spherical(f, g, table);
    std::vector<std::complex<double>> samples;
    samples.reserve(grid.size());
    const auto fs = inverse_sht(f, grid.nodes);
    const auto gs = inverse_sht(g, grid.nodes);
    for (std::size_t k = 0; k < grid.size(); ++k) samples.push_back(fs[k] * gs[k]);
    const CoeffVector ref = forward_sht(grid, samples, basis, top);
    worst = std::max(worst, (h.values() - ref.values()).cwiseAbs().maxCoeff());
  }
  return worst;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"selection-rules", "symmetry",       "unitarity",
                                                 "gaunt-oracle",    "multiplication", "applications"};
  return names;
}

namespace detail {

inline SuiteResult finish(std::string name, double err, double tol, std::string detail) {
  return {std::move(name), err, tol, err <= tol, std::move(detail)};
}

inline SuiteResult suite_selection_rules(const VerifyConfig& cfg) {
  const GauntTable c = build_table(Basis::complex, cfg.n1, cfg.n2, cfg.path);
  const GauntTable r = build_table(Basis::real, cfg.n1, cfg.n2, cfg.path);
  const double ce = std::max(selection_rule_violation(c), forbidden_scalar_magnitude(cfg.n1, cfg.n2));
  const double re = selection_rule_violation(r);
  // Forbidden complex values must be exact zeros; the real support is held to 1e-13.
  SuiteResult out = finish("selection-rules", std::max(ce, re), cfg.tolerance,
                           "complex forbidden=" + format_error(ce) + " real off-support=" + format_error(re));
  out.pass = ce == 0.0 && re <= std::min(1e-13, cfg.tolerance);
  return out;
}

inline SuiteResult suite_symmetry(const VerifyConfig& cfg) {
  const int order = std::max(cfg.n1, cfg.n2);
  const double ce = complex_swap_asymmetry(build_table(Basis::complex, order, order, cfg.path));
  const double re = real_permutation_asymmetry(build_table(Basis::real, order, order, cfg.path));
  return finish("symmetry", std::max(ce, re), cfg.tolerance,
                "complex swap=" + format_error(ce) + " real permutations=" + format_error(re));
}

inline SuiteResult suite_unitarity(const VerifyConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const int order = std::max(cfg.n1, cfg.n2);
  const auto [unitary, mapping] = basis_map_errors(order, 200, rng);
  // Conjugation map: y* = T y.
  const ConjugationMap t(order);
  double conj_err = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Eigen::VectorXcd y = sh_vector_complex(order, random_direction(rng));
    conj_err = std::max(conj_err, (y.conjugate() - t.apply(y)).cwiseAbs().maxCoeff());
  }
  return finish("unitarity", std::max({unitary, mapping, conj_err}), cfg.tolerance,
                "|UU^H-I|=" + format_error(unitary) + " |r-Uy|=" + format_error(mapping) +
                    " |y*-Ty|=" + format_error(conj_err));
}

inline SuiteResult suite_gaunt_oracle(const VerifyConfig& cfg) {
  const int band = cfg.effective_band();
  if (band < 2 * (cfg.n1 + cfg.n2)) {
    return {"gaunt-oracle", INFINITY, cfg.tolerance, false, "grid band below 2(N1+N2)"};
  }
  const QuadratureGrid grid = build_grid(band);
  const double ce = max_oracle_error(build_table(Basis::complex, cfg.n1, cfg.n2, cfg.path), grid);
  const double re = max_oracle_error(build_table(Basis::real, cfg.n1, cfg.n2, cfg.path), grid);
  return finish("gaunt-oracle", std::max(ce, re), cfg.tolerance,
                "complex=" + format_error(ce) + " real=" + format_error(re));
}

inline SuiteResult suite_multiplication(const VerifyConfig& cfg) {
  const int band = cfg.effective_band();
  if (band < 2 * (cfg.n1 + cfg.n2)) {
    return {"multiplication", INFINITY, cfg.tolerance, false, "grid band below 2(N1+N2)"};
  }
  std::mt19937_64 rng(cfg.seed + 1);
  const QuadratureGrid grid = build_grid(band);
  const double ce = multiplication_error(Basis::complex, build_table(Basis::complex, cfg.n1, cfg.n2, cfg.path),
                                         cfg.n1, cfg.n2, 10, grid, rng);
  const double re = multiplication_error(Basis::real, build_table(Basis::real, cfg.n1, cfg.n2, cfg.path), cfg.n1,
                                         cfg.n2, 10, grid, rng);
  return finish("multiplication", std::max(ce, re), cfg.tolerance,
                "complex=" + format_error(ce) + " real=" + format_error(re));
}

/// Application closed forms against quadrature of band-limited integrands,
/// where the quadrature is exact.
inline SuiteResult suite_applications(const VerifyConfig& cfg) {
  std::mt19937_64 rng(cfg.seed + 2);
  const int order = std::max(1, std::min(cfg.n1, 3));
  const int expansion = order + 1;
  const double k = 1.0;
  const Eigen::Vector3d x(0.2, -0.4, 0.5);
  const GauntTable table = build_table(Basis::real, order, std::max(expansion, order), cfg.path);
  const QuadratureGrid grid = build_grid(2 * (order + expansion) + 2);
  const Eigen::VectorXcd a = random_complex(rng, order);
  std::string detail;

  // Translation against the truncated plane wave, which is band-limited.
  const Eigen::VectorXcd translated = translate_coeffs(a, k, x, expansion, table);
  const Eigen::VectorXcd jr = position_factor(k, x, expansion);
  std::vector<std::complex<double>> samples;
  for (const auto& u : grid.nodes) {
    const std::complex<double> pw = (sh_vector_real(expansion, u).cast<std::complex<double>>().transpose() * jr).value();
    samples.push_back(oracle::density(a, u) * pw);
  }
  const double e_translate =
      (translated - project_real_basis(grid, samples, order + expansion)).cwiseAbs().maxCoeff();
  detail += "translate=" + format_error(e_translate);

  // Intensity with N'' = N + 1 is exact; compare relative to its magnitude.
  const QuadratureGrid fine = build_grid(4 * order + 40);
  const Eigen::Vector3cd i_closed = intensity_at(a, k, x, expansion, table);
  const Eigen::Vector3cd i_ref = oracle::intensity(a, k, x, fine);
  const double e_intensity = (i_closed - i_ref).norm() / std::max(i_ref.norm(), 1e-300);
  detail += " intensity=" + format_error(e_intensity);

  // Energy vector.
  const Eigen::Vector3d e_closed = energy_vector(a);
  const double e_energy = (e_closed - oracle::energy_vector(a, grid)).cwiseAbs().maxCoeff();
  detail += " energy=" + format_error(e_energy);

  // Isotropic covariance.
  const GauntTable square = build_table(Basis::real, order, order, cfg.path);
  const CoeffVector iso = CoeffVector::real_basis(Eigen::VectorXd::Constant(1, std::sqrt(kFourPi)));
  const double e_iso =
      (scm_anisotropic_field(iso, order, square) - scm_isotropic_field(1.0, order)).cwiseAbs().maxCoeff();
  detail += " isotropic-scm=" + format_error(e_iso);

  const double err = std::max({e_translate, e_intensity, e_energy, e_iso});
  return finish("applications", err, cfg.tolerance, detail);
}

}  // namespace detail

inline SuiteResult run_suite(const std::string& name, const VerifyConfig& cfg) {
  if (name == "selection-rules") return detail::suite_selection_rules(cfg);
  if (name == "symmetry") return detail::suite_symmetry(cfg);
  if (name == "unitarity") return detail::suite_unitarity(cfg);
  if (name == "gaunt-oracle") return detail::suite_gaunt_oracle(cfg);
  if (name == "multiplication") return detail::suite_multiplication(cfg);
  if (name == "applications") return detail::suite_applications(cfg);
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace shg

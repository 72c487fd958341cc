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

#include <random>

#include <gtest/gtest.h>

#include "shgaunt/quadrature.hpp"
#include "shgaunt/verify.hpp"

namespace shg {
namespace {

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  for (int count : {1, 2, 3, 7, 16}) {
    const auto [x, w] = gauss_legendre(count);
    for (int p = 0; p <= 2 * count - 1; ++p) {
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], p);
      const double exact = p % 2 == 1 ? 0.0 : 2.0 / (p + 1.0);
      EXPECT_NEAR(s, exact, 1e-14) << count << ' ' << p;
    }
    EXPECT_TRUE(std::is_sorted(x.begin(), x.end()));
  }
  EXPECT_THROW(gauss_legendre(0), std::invalid_argument);
}

TEST(Grid, SizeAndTotalWeight) {
  const QuadratureGrid g = build_grid(10);
  EXPECT_EQ(g.size(), 6u * 11u);
  double total = 0.0;
  for (double w : g.weights) total += w;
  EXPECT_NEAR(total, kFourPi, 1e-13);
}

TEST(Grid, OrthonormalityUpToBand) {
  // r_N r_N^T has degree 2N: exact on a band-2N grid.
  for (int band : {0, 1, 4, 9, 16}) {
    const int order = band / 2;
    const QuadratureGrid g = build_grid(band);
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(coeff_count(order)),
                                                 static_cast<Eigen::Index>(coeff_count(order)));
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Eigen::VectorXd r = sh_vector_real(order, g.nodes[i]);
      gram += g.weights[i] * r * r.transpose();
    }
    EXPECT_LE((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff(), 1e-13) << band;
  }
}

TEST(Sht, RoundTripBothBases) {
  std::mt19937_64 rng(17);
  const QuadratureGrid g = build_grid(12);
  for (Basis b : {Basis::real, Basis::complex}) {
    const CoeffVector f = b == Basis::real ? CoeffVector::real_basis(random_real(rng, 6))
                                           : CoeffVector::complex_basis(random_complex(rng, 6));
    const auto samples = inverse_sht(f, g.nodes);
    const CoeffVector back = forward_sht(g, samples, b, 6);
    EXPECT_LE((back.values() - f.values()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Sht, RealBasisRejectsComplexFunction) {
  const QuadratureGrid g = build_grid(4);
  std::vector<std::complex<double>> samples(g.size(), {0.0, 1.0});
  EXPECT_THROW(forward_sht(g, samples, Basis::real, 2), std::domain_error);
  EXPECT_NO_THROW(project_real_basis(g, samples, 2));
  samples.pop_back();
  EXPECT_THROW(forward_sht(g, samples, Basis::complex, 2), std::invalid_argument);
}

TEST(Sht, UnderResolvedGridAliases) {
  // R_{4,0} sampled on a band-4 grid projects onto R_{2,0} only with error:
  // the product has degree 6 > 4.
  const QuadratureGrid g = build_grid(4);
  std::vector<std::complex<double>> samples;
  for (const auto& u : g.nodes) samples.emplace_back(sh_real(ShIndex(4, 0), u), 0.0);
  const CoeffVector c = forward_sht(g, samples, Basis::real, 2);
  EXPECT_GT(c.real_values().cwiseAbs().maxCoeff(), 1e-3);
}

TEST(InnerProducts, ParsevalAndPlainForm) {
  std::mt19937_64 rng(23);
  const QuadratureGrid g = build_grid(8);
  const CoeffVector f = CoeffVector::complex_basis(random_complex(rng, 4));
  const CoeffVector h = CoeffVector::complex_basis(random_complex(rng, 4));
  const auto fs = inverse_sht(f, g.nodes);
  const auto hs = inverse_sht(h, g.nodes);
  std::complex<double> herm = 0.0;
  std::complex<double> plain = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    herm += g.weights[i] * std::conj(fs[i]) * hs[i];
    plain += g.weights[i] * fs[i] * hs[i];
  }
  const InnerProducts ip = inner_products(f, h);
  EXPECT_NEAR(std::abs(ip.hermitian - herm), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(ip.plain - plain), 0.0, 1e-12);

  const CoeffVector a = CoeffVector::real_basis(random_real(rng, 3));
  const CoeffVector b = CoeffVector::real_basis(random_real(rng, 3));
  const InnerProducts rp = inner_products(a, b);
  EXPECT_EQ(rp.hermitian, rp.plain);
  EXPECT_THROW(inner_products(a, f), std::invalid_argument);
  EXPECT_THROW(inner_products(a, CoeffVector::real_basis(random_real(rng, 2))), std::invalid_argument);
}

}  // namespace
}  // namespace shg

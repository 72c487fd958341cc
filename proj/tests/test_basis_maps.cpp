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

#include "shgaunt/basis_maps.hpp"
#include "shgaunt/verify.hpp"

namespace shg {
namespace {

TEST(BasisMap, OrderOneBlock) {
  const BasisMap u(1);
  const double h = 1.0 / std::sqrt(2.0);
  // Row m = 1: (Y_{1,-1} - Y_{1,1}) / sqrt2
  EXPECT_EQ(u.entry(1, 1, -1), std::complex<double>(h, 0.0));
  EXPECT_EQ(u.entry(1, 1, 1), std::complex<double>(-h, 0.0));
  // Row m = -1: i (Y_{1,-1} + Y_{1,1}) / sqrt2
  EXPECT_EQ(u.entry(1, -1, -1), std::complex<double>(0.0, h));
  EXPECT_EQ(u.entry(1, -1, 1), std::complex<double>(0.0, h));
  EXPECT_EQ(u.entry(1, 0, 0), std::complex<double>(1.0, 0.0));
  EXPECT_EQ(u.entry(0, 0, 0), std::complex<double>(1.0, 0.0));
}

TEST(BasisMap, UnitaryAndMapsHarmonics) {
  std::mt19937_64 rng(11);
  for (int order : {0, 1, 5, 20}) {
    const auto [unitary, mapping] = basis_map_errors(order, 100, rng);
    EXPECT_LE(unitary, 1e-13) << order;
    EXPECT_LE(mapping, 1e-12) << order;
  }
}

TEST(BasisMap, SparseApplyMatchesDense) {
  std::mt19937_64 rng(5);
  const BasisMap u(4);
  const Eigen::MatrixXcd d = u.dense();
  const Eigen::VectorXcd x = random_complex(rng, 4);
  EXPECT_LE((u.apply(x) - d * x).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((u.apply_adjoint(x) - d.adjoint() * x).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((u.apply_transpose(x) - d.transpose() * x).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((u.apply_conjugate(x) - d.conjugate() * x).cwiseAbs().maxCoeff(), 1e-15);
  // Shorter vectors use the leading blocks.
  const Eigen::VectorXcd s = random_complex(rng, 2);
  EXPECT_LE((u.apply(s) - d.topLeftCorner(9, 9) * s).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(u.apply(Eigen::VectorXcd::Zero(10)), std::invalid_argument);
}

TEST(ConjugationMap, AntiDiagonalSigns) {
  const auto diag = ConjugationMap::anti_diagonal(2);
  EXPECT_EQ(diag, (std::vector<int>{1, -1, 1, -1, 1}));
  const ConjugationMap t(3);
  const Eigen::MatrixXd d = t.dense();
  EXPECT_LE((d - d.transpose()).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_LE((d * d - Eigen::MatrixXd::Identity(16, 16)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(ConjugationMap, ConjugatesHarmonics) {
  std::mt19937_64 rng(2);
  const ConjugationMap t(10);
  for (int i = 0; i < 50; ++i) {
    const Eigen::VectorXcd y = sh_vector_complex(10, random_direction(rng));
    EXPECT_LE((y.conjugate() - t.apply(y)).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(ConvertCoeffs, RoundTripAndPointwiseAgreement) {
  std::mt19937_64 rng(9);
  const CoeffVector real = CoeffVector::real_basis(random_real(rng, 4));
  const CoeffVector complex = convert_coeffs(real, Basis::complex);
  EXPECT_EQ(complex.basis(), Basis::complex);
  const CoeffVector back = convert_coeffs(complex, Basis::real);
  EXPECT_LE((back.real_values() - real.real_values()).cwiseAbs().maxCoeff(), 1e-14);
  for (int i = 0; i < 20; ++i) {
    const Direction d = random_direction(rng);
    const auto fr = inverse_sht(real, d);
    const auto fc = inverse_sht(complex, d);
    EXPECT_NEAR(std::abs(fr - fc), 0.0, 1e-13);
  }
}

TEST(ConvertCoeffs, RejectsComplexValuedFunctionInRealBasis) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v(2) = {0.0, 1.0};  // i Y_{1,0}
  EXPECT_THROW(convert_coeffs(CoeffVector::complex_basis(v), Basis::real), std::domain_error);
}

TEST(ConjugateCoeffs, MatchesPointwiseConjugate) {
  std::mt19937_64 rng(4);
  const CoeffVector f = CoeffVector::complex_basis(random_complex(rng, 3));
  const CoeffVector g = conjugate_coeffs(f);
  for (int i = 0; i < 20; ++i) {
    const Direction d = random_direction(rng);
    EXPECT_NEAR(std::abs(std::conj(inverse_sht(f, d)) - inverse_sht(g, d)), 0.0, 1e-13);
  }
  const CoeffVector r = CoeffVector::real_basis(random_real(rng, 2));
  EXPECT_EQ(conjugate_coeffs(r).real_values(), r.real_values());
}

TEST(CoeffVector, ValidatesLengthAndBasis) {
  EXPECT_THROW(CoeffVector::real_basis(Eigen::VectorXd::Zero(5)), std::invalid_argument);
  const CoeffVector z = CoeffVector::zeros(Basis::real, 2);
  EXPECT_EQ(z.order(), 2);
  EXPECT_EQ(z.size(), 9);
  EXPECT_THROW(z.complex_values(), std::logic_error);
}

}  // namespace
}  // namespace shg

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

#include "shgaunt/gaunt.hpp"
#include "shgaunt/verify.hpp"

namespace shg {
namespace {

const double kY00 = 1.0 / std::sqrt(kFourPi);

TEST(GauntComplex, KnownValues) {
  EXPECT_NEAR(gaunt_complex(0, 0, 0, 0, 0, 0), kY00, 1e-15);
  EXPECT_NEAR(gaunt_complex(1, 0, 1, 0, 0, 0), kY00, 1e-15);
  EXPECT_EQ(gaunt_complex(1, 1, 1, 1, 2, 1), 0.0);
  EXPECT_NEAR(gaunt_complex(1, 1, 1, -1, 0, 0), -kY00, 1e-15);
  EXPECT_NEAR(gaunt_complex(2, 1, 1, 0, 1, 1), std::sqrt(15.0) / (10.0 * std::sqrt(kPi)), 1e-15);
  EXPECT_NEAR(gaunt_complex(2, -2, 2, 1, 2, -1), -0.22072811544182261734, 1e-15);
}

TEST(GauntComplex, SelectionRulesShortCircuit) {
  EXPECT_EQ(gaunt_complex(1, 0, 1, 0, 1, 0), 0.0);  // parity
  EXPECT_EQ(gaunt_complex(1, 0, 1, 0, 3, 0), 0.0);  // triangle
  EXPECT_EQ(gaunt_complex(2, 1, 2, 1, 2, 1), 0.0);  // degree sum
  EXPECT_FALSE(complex_gaunt_allowed(2, 1, 2, 1, 2, 1));
  EXPECT_TRUE(complex_gaunt_allowed(2, 1, 2, 1, 4, 2));
  // Triangle bounds are inclusive.
  EXPECT_TRUE(complex_gaunt_allowed(2, 0, 3, 0, 1, 0));
  EXPECT_TRUE(complex_gaunt_allowed(2, 0, 3, 0, 5, 0));
  EXPECT_EQ(forbidden_scalar_magnitude(3, 3), 0.0);
}

TEST(GauntReal, KnownValues) {
  EXPECT_NEAR(gaunt_real(0, 0, 0, 0, 0, 0), kY00, 1e-15);
  EXPECT_NEAR(gaunt_real(1, 0, 1, 0, 2, 0), 1.0 / std::sqrt(5.0 * kPi), 1e-15);
  EXPECT_NEAR(gaunt_real(1, 1, 1, 1, 2, 0), -std::sqrt(5.0) / (10.0 * std::sqrt(kPi)), 1e-15);
  EXPECT_NEAR(gaunt_real(1, 1, 1, -1, 2, -2), std::sqrt(15.0) / (10.0 * std::sqrt(kPi)), 1e-15);
  EXPECT_NEAR(gaunt_real(2, 1, 1, 1, 1, 0), std::sqrt(15.0) / (10.0 * std::sqrt(kPi)), 1e-15);
}

TEST(GauntMatrix, RealTargetMatchesScalar) {
  const GauntMatrix m = gaunt_matrix(Basis::real, 1, 1, ShIndex(2, 0));
  EXPECT_EQ(m.rows(), 4);
  EXPECT_EQ(m.cols(), 4);
  EXPECT_NEAR(m(acn(1, 0), acn(1, 0)), 1.0 / std::sqrt(5.0 * kPi), 1e-15);
  const GauntMatrix z = gaunt_matrix(Basis::real, 0, 0, ShIndex(0, 0));
  EXPECT_NEAR(z.dense()(0, 0), kY00, 1e-15);
  EXPECT_THROW(gaunt_matrix(Basis::real, 1, 1, ShIndex(3, 0)), std::out_of_range);
}

TEST(GauntMatrix, EntriesRespectParity) {
  const GauntMatrix m = gaunt_matrix(Basis::complex, 0, 1, ShIndex(1, 0));
  for (const auto& e : m.entries()) {
    const ShIndex a = from_acn(e.row);
    const ShIndex b = from_acn(e.col);
    EXPECT_EQ((a.n + b.n + 1) % 2, 0);
  }
}

TEST(GauntMatrix, RejectsUnsortedEntries) {
  EXPECT_THROW(GauntMatrix(Basis::real, 1, 1, ShIndex(0, 0), {{1, 1, 1.0}, {0, 0, 1.0}}), std::invalid_argument);
  EXPECT_THROW(GauntMatrix(Basis::real, 1, 1, ShIndex(0, 0), {{4, 0, 1.0}}), std::out_of_range);
}

TEST(GauntMatrix, SparseOperationsMatchDense) {
  std::mt19937_64 rng(31);
  const GauntMatrix m = gaunt_matrix(Basis::real, 3, 2, ShIndex(2, -1));
  const Eigen::MatrixXd d = m.dense();
  const Eigen::VectorXcd f = random_complex(rng, 3);
  const Eigen::VectorXd g = random_real(rng, 2);
  EXPECT_NEAR(std::abs(m.bilinear(f, g) - (f.transpose() * d * g).value()), 0.0, 1e-13);
  EXPECT_LE((m.apply(g, d.rows()) - d * g).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LE((m.apply_left(f, d.cols()) - d.transpose() * f).cwiseAbs().maxCoeff(), 1e-14);
  // Leading-block restriction for smaller factors.
  const Eigen::VectorXd g1 = g.head(4);
  EXPECT_NEAR(std::abs(m.bilinear(f, g1) - (f.transpose() * d.leftCols(4) * g1).value()), 0.0, 1e-13);
}

TEST(GauntTable, StackShape) {
  const GauntTable t = build_table(Basis::real, 1, 1);
  EXPECT_EQ(t.size(), 9u);
  for (const auto& m : t.matrices()) {
    EXPECT_EQ(m.rows(), 4);
    EXPECT_EQ(m.cols(), 4);
  }
  EXPECT_THROW(t.at(ShIndex(3, 0)), std::out_of_range);
}

TEST(GauntTable, ComplexAndRealMatchOracleUpToOrderFour) {
  const QuadratureGrid grid = build_grid(16);
  EXPECT_LE(max_oracle_error(build_table(Basis::complex, 4, 4), grid), 1e-12);
  EXPECT_LE(max_oracle_error(build_table(Basis::real, 4, 4), grid), 1e-12);
  EXPECT_LE(max_oracle_error(build_table(Basis::real, 3, 1), grid), 1e-12);
}

TEST(GauntTable, OracleRequiresResolvedGrid) {
  EXPECT_THROW(gaunt_real_oracle(2, 0, 2, 0, 2, 0, build_grid(5)), std::invalid_argument);
  EXPECT_NEAR(gaunt_real_oracle(0, 0, 0, 0, 0, 0, build_grid(0)), kY00, 1e-15);
  const QuadratureGrid g = build_grid(6);
  EXPECT_NEAR(gaunt_real_oracle(2, 1, 1, 1, 1, 0, g), gaunt_real(2, 1, 1, 1, 1, 0), 1e-15);
  EXPECT_NEAR(gaunt_real_oracle(2, 1, 1, 1, 1, 0, g), gaunt_real_oracle(1, 0, 2, 1, 1, 1, g), 1e-15);
  EXPECT_NEAR(std::abs(gaunt_complex_oracle(2, -2, 2, 1, 2, -1, g) - gaunt_complex(2, -2, 2, 1, 2, -1)), 0.0, 1e-15);
}

TEST(GauntTable, Symmetries) {
  EXPECT_EQ(complex_swap_asymmetry(build_table(Basis::complex, 4, 4)), 0.0);
  EXPECT_LE(real_permutation_asymmetry(build_table(Basis::real, 4, 4)), 1e-13);
}

TEST(GauntTable, SelectionRuleSupport) {
  EXPECT_EQ(selection_rule_violation(build_table(Basis::complex, 4, 3)), 0.0);
  EXPECT_LE(selection_rule_violation(build_table(Basis::real, 4, 3)), 1e-13);
}

TEST(GauntTable, DeterministicAcrossThreadCounts) {
  const GauntTable one = build_table(Basis::real, 5, 4, FactorialPath::exact, 1);
  const GauntTable four = build_table(Basis::real, 5, 4, FactorialPath::exact, 4);
  EXPECT_TRUE(one == four);
}

TEST(GauntTable, FastPathAgrees) {
  const GauntTable e = build_table(Basis::real, 5, 5);
  const GauntTable f = build_table(Basis::real, 5, 5, FactorialPath::fast);
  for (std::size_t t = 0; t < e.size(); ++t) {
    ASSERT_EQ(e[t].nonzeros(), f[t].nonzeros()) << t;
    for (std::size_t i = 0; i < e[t].nonzeros(); ++i) {
      const double a = e[t].entries()[i].value;
      const double b = f[t].entries()[i].value;
      EXPECT_LE(std::abs(a - b), 1e-10 * std::abs(a));
    }
  }
}

TEST(Multiply, ConstantTimesConstant) {
  const GauntTable t = build_table(Basis::real, 0, 0);
  const CoeffVector one = CoeffVector::real_basis(Eigen::VectorXd::Constant(1, std::sqrt(kFourPi)));
  const CoeffVector h = multiply_spherical(one, one, t);
  EXPECT_NEAR(h.real_values()(0), std::sqrt(kFourPi), 1e-14);
}

TEST(Multiply, SquareOfR10) {
  const GauntTable t = build_table(Basis::real, 1, 1);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(4);
  e(static_cast<Eigen::Index>(acn(1, 0))) = 1.0;
  const CoeffVector f = CoeffVector::real_basis(e);
  const Eigen::VectorXd h = multiply_spherical(f, f, t).real_values();
  ASSERT_EQ(h.size(), 9);
  for (Eigen::Index q = 0; q < 9; ++q) {
    if (q == 0) {
      EXPECT_NEAR(h(q), kY00, 1e-15);
    } else if (q == static_cast<Eigen::Index>(acn(2, 0))) {
      EXPECT_NEAR(h(q), 1.0 / std::sqrt(5.0 * kPi), 1e-15);
    } else {
      EXPECT_EQ(h(q), 0.0) << q;
    }
  }
}

TEST(Multiply, MatchesPointwiseProduct) {
  std::mt19937_64 rng(41);
  const QuadratureGrid grid = build_grid(12);
  EXPECT_LE(multiplication_error(Basis::real, build_table(Basis::real, 3, 2), 3, 2, 10, grid, rng), 1e-12);
  EXPECT_LE(multiplication_error(Basis::complex, build_table(Basis::complex, 3, 2), 3, 2, 10, grid, rng), 1e-12);
}

TEST(Multiply, LargerTableServesSmallerFactors) {
  std::mt19937_64 rng(43);
  const GauntTable big = build_table(Basis::real, 4, 4);
  const GauntTable exact = build_table(Basis::real, 2, 1);
  const CoeffVector f = CoeffVector::real_basis(random_real(rng, 2));
  const CoeffVector g = CoeffVector::real_basis(random_real(rng, 1));
  EXPECT_LE((multiply_spherical(f, g, big).real_values() - multiply_spherical(f, g, exact).real_values())
                .cwiseAbs()
                .maxCoeff(),
            1e-15);
}

TEST(Multiply, Errors) {
  const GauntTable t = build_table(Basis::real, 1, 1);
  const CoeffVector r2 = CoeffVector::zeros(Basis::real, 2);
  const CoeffVector r1 = CoeffVector::zeros(Basis::real, 1);
  const CoeffVector c1 = CoeffVector::zeros(Basis::complex, 1);
  EXPECT_THROW(multiply_spherical(r1, c1, t), std::invalid_argument);
  EXPECT_THROW(multiply_spherical(c1, c1, t), std::invalid_argument);
  EXPECT_THROW(multiply_spherical(r2, r1, t), std::out_of_range);
}

}  // namespace
}  // namespace shg

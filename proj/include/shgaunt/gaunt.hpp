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

// Gaunt coupling coefficients and coefficient-domain spherical multiplication.
//
// Complex basis:
//   G^{n,m}_{n1,m1,n2,m2} = integral Y_{n1,m1} Y_{n2,m2} Y*_{n,m}
//     = (-1)^m sqrt((2n+1)(2n1+1)(2n2+1)/4pi) (n n1 n2; 0 0 0) (n n1 n2; -m m1 m2)
// Real basis:
//   F^{n,m}_{n1,m1,n2,m2} = integral R_{n1,m1} R_{n2,m2} R_{n,m}
// obtained from the complex matrices through
//   m > 0: F = U (G^{n,-m} + (-1)^m G^{n,m}) U^T / sqrt2
//   m = 0: F = U G^{n,0} U^T
//   m < 0: F = U (G^{n,m} - (-1)^m G^{n,-m}) U^T / (i sqrt2)
//
// A coupling matrix M^{n,m} of dims (N1+1)^2 x (N2+1)^2 gives the product
// coefficient h_{n,m} = f^T M^{n,m} g. Row q and column l are ACN indices of
// the first and second factor.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "shgaunt/basis_maps.hpp"
#include "shgaunt/parallel.hpp"
#include "shgaunt/quadrature.hpp"
#include "shgaunt/sh_core.hpp"

namespace shg {

/// Imaginary residue tolerated when folding the complex-to-real transform.
inline constexpr double kRealGauntResidue = 1e-13;

struct GauntEntry {
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  double value = 0.0;

  friend bool operator==(const GauntEntry&, const GauntEntry&) = default;
};

/// Sparse coupling matrix for one target (n, m). Entries are stored in
/// row-major order and only where a nonzero value was produced; everything
/// else is an exact zero.
class GauntMatrix {
 public:
  GauntMatrix() = default;
  GauntMatrix(Basis basis, int order1, int order2, ShIndex target, std::vector<GauntEntry> entries)
      : basis_(basis), order1_(order1), order2_(order2), target_(target), entries_(std::move(entries)) {
    const auto rows = static_cast<std::uint32_t>(coeff_count(order1));
    const auto cols = static_cast<std::uint32_t>(coeff_count(order2));
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const auto& e = entries_[i];
      if (e.row >= rows || e.col >= cols) throw std::out_of_range("GauntMatrix: entry outside matrix");
      if (i > 0) {
        const auto& p = entries_[i - 1];
        if (p.row > e.row || (p.row == e.row && p.col >= e.col)) {
          throw std::invalid_argument("GauntMatrix: entries not strictly row-major");
        }
      }
    }
  }

  Basis basis() const { return basis_; }
  int order1() const { return order1_; }
  int order2() const { return order2_; }
  ShIndex target() const { return target_; }
  Eigen::Index rows() const { return static_cast<Eigen::Index>(coeff_count(order1_)); }
  Eigen::Index cols() const { return static_cast<Eigen::Index>(coeff_count(order2_)); }
  const std::vector<GauntEntry>& entries() const { return entries_; }
  std::size_t nonzeros() const { return entries_.size(); }

  double operator()(std::size_t row, std::size_t col) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{row, col},
                               [](const GauntEntry& e, const std::pair<std::size_t, std::size_t>& key) {
                                 return e.row < key.first || (e.row == key.first && e.col < key.second);
                               });
    if (it != entries_.end() && it->row == row && it->col == col) return it->value;
    return 0.0;
  }

  Eigen::MatrixXd dense() const {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows(), cols());
    for (const auto& e : entries_) out(e.row, e.col) = e.value;
    return out;
  }

  /// f^T M g over the leading f.size() rows and g.size() columns.
  template <typename DerivedF, typename DerivedG>
  auto bilinear(const Eigen::MatrixBase<DerivedF>& f, const Eigen::MatrixBase<DerivedG>& g) const {
    using Scalar = decltype(typename DerivedF::Scalar{} * typename DerivedG::Scalar{} * 1.0);
    Scalar acc{0.0};
    const auto nf = static_cast<std::uint32_t>(f.size());
    const auto ng = static_cast<std::uint32_t>(g.size());
    for (const auto& e : entries_) {
      if (e.row >= nf) break;
      if (e.col >= ng) continue;
      acc += f(e.row) * e.value * g(e.col);
    }
    return acc;
  }

  /// M g restricted to the leading `out_rows` rows and g.size() columns.
  template <typename DerivedG>
  Eigen::Matrix<std::common_type_t<typename DerivedG::Scalar, double>, Eigen::Dynamic, 1> apply(
      const Eigen::MatrixBase<DerivedG>& g, Eigen::Index out_rows) const {
    using Scalar = std::common_type_t<typename DerivedG::Scalar, double>;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(out_rows);
    const auto ng = static_cast<std::uint32_t>(g.size());
    for (const auto& e : entries_) {
      if (e.row >= out_rows) break;
      if (e.col < ng) out(e.row) += e.value * g(e.col);
    }
    return out;
  }

  /// (f^T M)^T restricted to the leading f.size() rows and `out_cols` columns.
  template <typename DerivedF>
  Eigen::Matrix<std::common_type_t<typename DerivedF::Scalar, double>, Eigen::Dynamic, 1> apply_left(
      const Eigen::MatrixBase<DerivedF>& f, Eigen::Index out_cols) const {
    using Scalar = std::common_type_t<typename DerivedF::Scalar, double>;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(out_cols);
    const auto nf = static_cast<std::uint32_t>(f.size());
    for (const auto& e : entries_) {
      if (e.row >= nf) break;
      if (e.col < out_cols) out(e.col) += f(e.row) * e.value;
    }
    return out;
  }

 private:
  Basis basis_ = Basis::real;
  int order1_ = 0;
  int order2_ = 0;
  ShIndex target_{};
  std::vector<GauntEntry> entries_;
};

/// Selection rules of the complex Gaunt coefficient: m = m1 + m2, triangle
/// |n1 - n2| <= n <= n1 + n2 (inclusive), and n + n1 + n2 even.
constexpr bool complex_gaunt_allowed(int n1, int m1, int n2, int m2, int n, int m) {
  if (n1 < 0 || n2 < 0 || n < 0) return false;
  if (std::abs(m1) > n1 || std::abs(m2) > n2 || std::abs(m) > n) return false;
  if (m != m1 + m2) return false;
  if (n < std::abs(n1 - n2) || n > n1 + n2) return false;
  return (n + n1 + n2) % 2 == 0;
}

/// Complex Gaunt coefficient by the 3-j product formula. Returns an exact 0.0
/// without evaluating any 3-j symbol when a selection rule fails.
inline double gaunt_complex(int n1, int m1, int n2, int m2, int n, int m,
                            FactorialPath path = FactorialPath::exact) {
  if (!complex_gaunt_allowed(n1, m1, n2, m2, n, m)) return 0.0;
  const double zero = wigner3j({n, n1, n2, 0, 0, 0}, path);
  const double coupled = wigner3j({n, n1, n2, -m, m1, m2}, path);
  const double norm = std::sqrt((2.0 * n + 1.0) * (2.0 * n1 + 1.0) * (2.0 * n2 + 1.0) / kFourPi);
  return parity_sign(std::abs(m)) * norm * zero * coupled;
}

namespace detail {

/// Shared state for assembling many coupling matrices of fixed factor orders:
/// caches the zero-degree 3-j symbols (n n1 n2; 0 0 0).
class GauntAssembler {
 public:
  GauntAssembler(int order1, int order2, FactorialPath path)
      : order1_(order1), order2_(order2), path_(path), max_target_(order1 + order2) {
    if (order1 < 0 || order2 < 0) throw std::invalid_argument("Gaunt: negative factor order");
    zero_.assign(static_cast<std::size_t>(max_target_ + 1) * (order1 + 1) * (order2 + 1), 0.0);
    for (int n = 0; n <= max_target_; ++n) {
      for (int n1 = 0; n1 <= order1; ++n1) {
        for (int n2 = std::abs(n - n1); n2 <= std::min(order2, n + n1); ++n2) {
          if ((n + n1 + n2) % 2 != 0) continue;
          zero_[zero_index(n, n1, n2)] = wigner3j({n, n1, n2, 0, 0, 0}, path);
        }
      }
    }
  }

  int order1() const { return order1_; }
  int order2() const { return order2_; }
  FactorialPath path() const { return path_; }

  void check_target(const ShIndex& target) const {
    if (target.n > max_target_) throw std::out_of_range("Gaunt: target order exceeds N1 + N2");
  }

  /// Nonzero complex coefficients for target (n, m), row-major.
  std::vector<GauntEntry> complex_entries(int n, int m) const {
    std::vector<GauntEntry> out;
    for (int n1 = 0; n1 <= order1_; ++n1) {
      const double pre1 = 2.0 * n1 + 1.0;
      for (int m1 = -n1; m1 <= n1; ++m1) {
        const int m2 = m - m1;
        const int lo = std::max(std::abs(n - n1), std::abs(m2));
        const int hi = std::min(order2_, n + n1);
        for (int n2 = lo; n2 <= hi; ++n2) {
          if ((n + n1 + n2) % 2 != 0) continue;
          const double zero = zero_[zero_index(n, n1, n2)];
          if (zero == 0.0) continue;
          const double coupled = wigner3j({n, n1, n2, -m, m1, m2}, path_);
          if (coupled == 0.0) continue;
          const double norm = std::sqrt((2.0 * n + 1.0) * pre1 * (2.0 * n2 + 1.0) / kFourPi);
          out.push_back({static_cast<std::uint32_t>(acn(n1, m1)), static_cast<std::uint32_t>(acn(n2, m2)),
                         parity_sign(std::abs(m)) * norm * zero * coupled});
        }
      }
    }
    return out;
  }

  GauntMatrix complex_matrix(const ShIndex& target) const {
    check_target(target);
    return GauntMatrix(Basis::complex, order1_, order2_, target, complex_entries(target.n, target.m));
  }

  GauntMatrix real_matrix(const ShIndex& target) const {
    check_target(target);
    using namespace std::complex_literals;
    const int n = target.n;
    const int m = target.m;
    const double h = 1.0 / std::numbers::sqrt2;

    // Combination C of complex matrices whose U-sandwich gives F^{n,m}.
    struct Weighted {
      std::vector<GauntEntry> entries;
      std::complex<double> weight;
    };
    std::vector<Weighted> parts;
    if (m == 0) {
      parts.push_back({complex_entries(n, 0), 1.0});
    } else if (m > 0) {
      parts.push_back({complex_entries(n, -m), h});
      parts.push_back({complex_entries(n, m), parity_sign(m) * h});
    } else {
      // 1/(i sqrt2) = -i/sqrt2
      parts.push_back({complex_entries(n, m), -1i * h});
      parts.push_back({complex_entries(n, -m), 1i * parity_sign(std::abs(m)) * h});
    }

    struct Contribution {
      std::uint32_t row;
      std::uint32_t col;
      std::complex<double> value;
    };
    std::vector<Contribution> contributions;
    for (const auto& part : parts) {
      for (const auto& e : part.entries) {
        const ShIndex a = from_acn(e.row);
        const ShIndex b = from_acn(e.col);
        const std::complex<double> c = part.weight * e.value;
        // Rows of U_{N1} touching complex column a, columns of U_{N2}^T touching b.
        const int row_degrees[2] = {-std::abs(a.m), std::abs(a.m)};
        const int col_degrees[2] = {-std::abs(b.m), std::abs(b.m)};
        for (int i = 0; i < BasisMap::partner_count(a.m); ++i) {
          const int qm = a.m == 0 ? 0 : row_degrees[i];
          const std::complex<double> uq = u_entry(a.n, qm, a.m);
          for (int j = 0; j < BasisMap::partner_count(b.m); ++j) {
            const int lm = b.m == 0 ? 0 : col_degrees[j];
            const std::complex<double> ul = u_entry(b.n, lm, b.m);
            contributions.push_back({static_cast<std::uint32_t>(acn(a.n, qm)),
                                     static_cast<std::uint32_t>(acn(b.n, lm)), uq * c * ul});
          }
        }
      }
    }
    std::stable_sort(contributions.begin(), contributions.end(), [](const Contribution& x, const Contribution& y) {
      return x.row < y.row || (x.row == y.row && x.col < y.col);
    });

    std::vector<GauntEntry> out;
    for (std::size_t i = 0; i < contributions.size();) {
      std::complex<double> sum = 0.0;
      std::size_t j = i;
      for (; j < contributions.size() && contributions[j].row == contributions[i].row &&
             contributions[j].col == contributions[i].col;
           ++j) {
        sum += contributions[j].value;
      }
      if (std::abs(sum.imag()) > kRealGauntResidue) {
        throw std::runtime_error("Gaunt: real coupling has imaginary residue " + std::to_string(sum.imag()));
      }
      if (sum.real() != 0.0) out.push_back({contributions[i].row, contributions[i].col, sum.real()});
      i = j;
    }
    return GauntMatrix(Basis::real, order1_, order2_, target, std::move(out));
  }

  GauntMatrix matrix(Basis basis, const ShIndex& target) const {
    return basis == Basis::complex ? complex_matrix(target) : real_matrix(target);
  }

 private:
  std::size_t zero_index(int n, int n1, int n2) const {
    return (static_cast<std::size_t>(n) * (order1_ + 1) + static_cast<std::size_t>(n1)) * (order2_ + 1) +
           static_cast<std::size_t>(n2);
  }

  // U_n entry at (row degree, column degree); see BasisMap.
  static std::complex<double> u_entry(int n, int row_m, int col_m) {
    using namespace std::complex_literals;
    const double h = 1.0 / std::numbers::sqrt2;
    if (row_m == 0) return col_m == 0 ? 1.0 : 0.0;
    const int am = std::abs(row_m);
    if (std::abs(col_m) != am) return 0.0;
    (void)n;
    if (row_m > 0) return col_m < 0 ? std::complex<double>(h) : std::complex<double>(parity_sign(am) * h);
    return col_m < 0 ? 1i * h : -1i * parity_sign(am) * h;
  }

  int order1_;
  int order2_;
  FactorialPath path_;
  int max_target_;
  std::vector<double> zero_;
};

}  // namespace detail

/// Coupling matrix G^{n,m} or F^{n,m} of dims (N1+1)^2 x (N2+1)^2.
inline GauntMatrix gaunt_matrix(Basis basis, int order1, int order2, const ShIndex& target,
                                FactorialPath path = FactorialPath::exact) {
  const detail::GauntAssembler assembler(order1, order2, path);
  return assembler.matrix(basis, target);
}

/// Single real Gaunt coefficient through the complex-to-real transform.
inline double gaunt_real(int n1, int m1, int n2, int m2, int n, int m, FactorialPath path = FactorialPath::exact) {
  if (n1 < 0 || n2 < 0 || n < 0 || std::abs(m1) > n1 || std::abs(m2) > n2 || std::abs(m) > n) return 0.0;
  if (n < std::abs(n1 - n2) || n > n1 + n2 || (n + n1 + n2) % 2 != 0) return 0.0;
  using namespace std::complex_literals;
  const double h = 1.0 / std::numbers::sqrt2;
  // Row (n1,m1) of U touches complex degrees +-m1, likewise for (n2,m2).
  auto u = [h](int row_m, int col_m) -> std::complex<double> {
    if (row_m == 0) return col_m == 0 ? 1.0 : 0.0;
    const int am = std::abs(row_m);
    if (row_m > 0) return col_m < 0 ? std::complex<double>(h) : std::complex<double>(parity_sign(am) * h);
    return col_m < 0 ? 1i * h : -1i * parity_sign(am) * h;
  };
  auto combined = [&](int a, int b) -> std::complex<double> {
    if (m == 0) return gaunt_complex(n1, a, n2, b, n, 0, path);
    if (m > 0) {
      return h * (gaunt_complex(n1, a, n2, b, n, -m, path) + parity_sign(m) * gaunt_complex(n1, a, n2, b, n, m, path));
    }
    return -1i * h *
           (gaunt_complex(n1, a, n2, b, n, m, path) - parity_sign(std::abs(m)) * gaunt_complex(n1, a, n2, b, n, -m, path));
  };
  std::complex<double> sum = 0.0;
  const int as[2] = {-std::abs(m1), std::abs(m1)};
  const int bs[2] = {-std::abs(m2), std::abs(m2)};
  for (int i = 0; i < (m1 == 0 ? 1 : 2); ++i) {
    const int a = m1 == 0 ? 0 : as[i];
    for (int j = 0; j < (m2 == 0 ? 1 : 2); ++j) {
      const int b = m2 == 0 ? 0 : bs[j];
      sum += u(m1, a) * combined(a, b) * u(m2, b);
    }
  }
  if (std::abs(sum.imag()) > kRealGauntResidue) throw std::runtime_error("gaunt_real: imaginary residue");
  return sum.real();
}

/// Direct quadrature of integral R_{n1,m1} R_{n2,m2} R_{n,m}. Reference only.
inline double gaunt_real_oracle(int n1, int m1, int n2, int m2, int n, int m, const QuadratureGrid& grid) {
  if (grid.degree < n + n1 + n2) throw std::invalid_argument("gaunt_real_oracle: under-resolved grid");
  const ShIndex a(n1, m1), b(n2, m2), c(n, m);
  return integrate(grid, [&](const Direction& d) { return sh_real(a, d) * sh_real(b, d) * sh_real(c, d); });
}

/// Direct quadrature of integral Y_{n1,m1} Y_{n2,m2} Y*_{n,m}. Reference only.
inline std::complex<double> gaunt_complex_oracle(int n1, int m1, int n2, int m2, int n, int m,
                                                 const QuadratureGrid& grid) {
  if (grid.degree < n + n1 + n2) throw std::invalid_argument("gaunt_complex_oracle: under-resolved grid");
  const ShIndex a(n1, m1), b(n2, m2), c(n, m);
  return integrate(grid, [&](const Direction& d) {
    return sh_complex(a, d) * sh_complex(b, d) * std::conj(sh_complex(c, d));
  });
}

/// Stack of coupling matrices for every target (n, m) with n <= N1 + N2, in
/// ACN order of the target.
class GauntTable {
 public:
  GauntTable() = default;
  GauntTable(Basis basis, int order1, int order2, std::vector<GauntMatrix> matrices)
      : basis_(basis), order1_(order1), order2_(order2), matrices_(std::move(matrices)) {
    if (matrices_.size() != coeff_count(order1 + order2)) {
      throw std::invalid_argument("GauntTable: stack length must be (N1+N2+1)^2");
    }
    for (std::size_t q = 0; q < matrices_.size(); ++q) {
      const auto& mat = matrices_[q];
      if (mat.basis() != basis || mat.order1() != order1 || mat.order2() != order2 || acn(mat.target()) != q) {
        throw std::invalid_argument("GauntTable: inconsistent matrix in stack");
      }
    }
  }

  Basis basis() const { return basis_; }
  int order1() const { return order1_; }
  int order2() const { return order2_; }
  int max_target_order() const { return order1_ + order2_; }
  std::size_t size() const { return matrices_.size(); }

  const GauntMatrix& operator[](std::size_t q) const { return matrices_[q]; }
  const GauntMatrix& at(const ShIndex& target) const {
    if (target.n > max_target_order()) throw std::out_of_range("GauntTable: target outside table");
    return matrices_[acn(target)];
  }
  const std::vector<GauntMatrix>& matrices() const { return matrices_; }

  std::size_t nonzeros() const {
    std::size_t total = 0;
    for (const auto& m : matrices_) total += m.nonzeros();
    return total;
  }

  /// Throws unless the table covers factors of orders (n1, n2) in the given
  /// basis. Larger tables are fine: leading blocks are the smaller matrices.
  void require(Basis basis, int n1, int n2, const char* who) const {
    if (basis_ != basis) throw std::invalid_argument(std::string(who) + ": table basis mismatch");
    if (n1 > order1_ || n2 > order2_) throw std::out_of_range(std::string(who) + ": table too small");
  }

  friend bool operator==(const GauntTable& a, const GauntTable& b) {
    if (a.basis_ != b.basis_ || a.order1_ != b.order1_ || a.order2_ != b.order2_) return false;
    for (std::size_t q = 0; q < a.matrices_.size(); ++q) {
      if (a.matrices_[q].entries() != b.matrices_[q].entries()) return false;
    }
    return a.matrices_.size() == b.matrices_.size();
  }

 private:
  Basis basis_ = Basis::real;
  int order1_ = 0;
  int order2_ = 0;
  std::vector<GauntMatrix> matrices_;
};

/// Builds the full stack; targets are assembled in parallel and the result
/// does not depend on the thread count.
inline GauntTable build_table(Basis basis, int order1, int order2, FactorialPath path = FactorialPath::exact,
                              unsigned threads = worker_count()) {
  const detail::GauntAssembler assembler(order1, order2, path);
  std::vector<GauntMatrix> matrices(coeff_count(order1 + order2));
  parallel_for(
      matrices.size(), [&](std::size_t q) { matrices[q] = assembler.matrix(basis, from_acn(q)); }, threads);
  return GauntTable(basis, order1, order2, std::move(matrices));
}

/// Coefficients of the pointwise product f(u) g(u), of order Nf + Ng.
inline CoeffVector multiply_spherical(const CoeffVector& f, const CoeffVector& g, const GauntTable& table) {
  if (f.basis() != g.basis()) throw std::invalid_argument("multiply_spherical: factor basis mismatch");
  table.require(f.basis(), f.order(), g.order(), "multiply_spherical");
  const int order = f.order() + g.order();
  const auto count = static_cast<Eigen::Index>(coeff_count(order));
  if (f.basis() == Basis::real) {
    Eigen::VectorXd h(count);
    for (Eigen::Index q = 0; q < count; ++q) {
      h(q) = table[static_cast<std::size_t>(q)].bilinear(f.real_values(), g.real_values());
    }
    return CoeffVector::real_basis(std::move(h));
  }
  Eigen::VectorXcd h(count);
  for (Eigen::Index q = 0; q < count; ++q) {
    h(q) = table[static_cast<std::size_t>(q)].bilinear(f.complex_values(), g.complex_values());
  }
  return CoeffVector::complex_basis(std::move(h));
}

}  // namespace shg

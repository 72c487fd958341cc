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

// Complex <-> real basis conversion (U_N) and the conjugation map (T_N).
//
//   r_N(u) = U_N y_N(u),   y_N(u) = U_N^H r_N(u),   y_N^*(u) = T_N y_N(u)
//
// Coefficients convert as f_real^T = f^T U^H and f^T = f_real^T U.

#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "shgaunt/sh_core.hpp"

namespace shg {

/// SHT coefficients of a spherical function, ACN ordered.
///
/// Complex-basis vectors hold complex values. Real-basis vectors describe
/// real-valued functions and hold real values only; complex-valued fields
/// expanded on real SHs (Ambisonic signals, plane-wave densities) are passed
/// around as plain Eigen::VectorXcd instead.
class CoeffVector {
 public:
  static CoeffVector complex_basis(Eigen::VectorXcd values) {
    CoeffVector v(Basis::complex, checked_order(values.size()));
    v.complex_ = std::move(values);
    return v;
  }

  static CoeffVector real_basis(Eigen::VectorXd values) {
    CoeffVector v(Basis::real, checked_order(values.size()));
    v.real_ = std::move(values);
    return v;
  }

  static CoeffVector zeros(Basis basis, int order) {
    const auto n = static_cast<Eigen::Index>(coeff_count(order));
    return basis == Basis::complex ? complex_basis(Eigen::VectorXcd::Zero(n))
                                   : real_basis(Eigen::VectorXd::Zero(n));
  }

  Basis basis() const { return basis_; }
  int order() const { return order_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(coeff_count(order_)); }

  const Eigen::VectorXcd& complex_values() const {
    if (basis_ != Basis::complex) throw std::logic_error("CoeffVector: not a complex-basis vector");
    return complex_;
  }
  const Eigen::VectorXd& real_values() const {
    if (basis_ != Basis::real) throw std::logic_error("CoeffVector: not a real-basis vector");
    return real_;
  }

  /// Values widened to complex regardless of basis.
  Eigen::VectorXcd values() const {
    return basis_ == Basis::complex ? complex_ : real_.cast<std::complex<double>>();
  }

 private:
  CoeffVector(Basis basis, int order) : basis_(basis), order_(order) {}

  static int checked_order(Eigen::Index size) {
    const int order = order_from_size(static_cast<std::size_t>(size));
    if (order < 0) throw std::invalid_argument("CoeffVector: length is not (N+1)^2");
    return order;
  }

  Basis basis_;
  int order_;
  Eigen::VectorXcd complex_;
  Eigen::VectorXd real_;
};

/// Block-diagonal complex-to-real map U_N. Block n is (2n+1)x(2n+1), rows and
/// columns indexed by degree m = -n..n.
class BasisMap {
 public:
  explicit BasisMap(int order) : order_(order) {
    if (order < 0) throw std::invalid_argument("BasisMap: negative order");
    blocks_.reserve(static_cast<std::size_t>(order) + 1);
    for (int n = 0; n <= order; ++n) blocks_.push_back(make_block(n));
  }

  int order() const { return order_; }
  const Eigen::MatrixXcd& block(int n) const { return blocks_.at(static_cast<std::size_t>(n)); }

  /// Entry of block n at (row degree, column degree).
  std::complex<double> entry(int n, int row_m, int col_m) const {
    return block(n)(row_m + n, col_m + n);
  }

  Eigen::MatrixXcd dense() const {
    const auto dim = static_cast<Eigen::Index>(coeff_count(order_));
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 0; n <= order_; ++n) {
      const auto off = static_cast<Eigen::Index>(n * n);
      out.block(off, off, 2 * n + 1, 2 * n + 1) = blocks_[static_cast<std::size_t>(n)];
    }
    return out;
  }

  /// U x for an ACN vector of order <= order().
  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const { return apply_impl(x, false, false); }
  /// U^H x.
  Eigen::VectorXcd apply_adjoint(const Eigen::VectorXcd& x) const { return apply_impl(x, true, true); }
  /// U^T x.
  Eigen::VectorXcd apply_transpose(const Eigen::VectorXcd& x) const { return apply_impl(x, true, false); }
  /// conj(U) x.
  Eigen::VectorXcd apply_conjugate(const Eigen::VectorXcd& x) const { return apply_impl(x, false, true); }

  /// Column degrees with nonzero entries in row `m` of block n: {m} for m = 0,
  /// otherwise {-|m|, |m|}.
  static int partner_count(int m) { return m == 0 ? 1 : 2; }

 private:
  static Eigen::MatrixXcd make_block(int n) {
    using namespace std::complex_literals;
    const double h = 1.0 / std::numbers::sqrt2;
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(2 * n + 1, 2 * n + 1);
    b(n, n) = 1.0;
    for (int m = 1; m <= n; ++m) {
      const double s = parity_sign(m);
      // R_{n,m}  = (Y_{n,-m} + (-1)^m Y_{n,m}) / sqrt2
      b(n + m, n - m) = h;
      b(n + m, n + m) = s * h;
      // R_{n,-m} = i (Y_{n,-m} - (-1)^m Y_{n,m}) / sqrt2
      b(n - m, n - m) = 1i * h;
      b(n - m, n + m) = -1i * s * h;
    }
    return b;
  }

  Eigen::VectorXcd apply_impl(const Eigen::VectorXcd& x, bool transpose, bool conjugate) const {
    const int order = order_from_size(static_cast<std::size_t>(x.size()));
    if (order < 0 || order > order_) throw std::invalid_argument("BasisMap: vector order mismatch");
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(x.size());
    for (int n = 0; n <= order; ++n) {
      const auto& b = blocks_[static_cast<std::size_t>(n)];
      const auto off = static_cast<Eigen::Index>(n * n);
      for (int r = 0; r <= 2 * n; ++r) {
        const int m = r - n;
        const int cols[2] = {n - std::abs(m), n + std::abs(m)};
        for (int k = 0; k < partner_count(m); ++k) {
          const int c = cols[k];
          std::complex<double> u = transpose ? b(c, r) : b(r, c);
          if (conjugate) u = std::conj(u);
          out(off + r) += u * x(off + c);
        }
      }
    }
    return out;
  }

  int order_;
  std::vector<Eigen::MatrixXcd> blocks_;
};

/// Conjugation map T_N: symmetric anti-diagonal blocks with entries
/// (-1)^m at (m, -m).
class ConjugationMap {
 public:
  explicit ConjugationMap(int order) : order_(order) {
    if (order < 0) throw std::invalid_argument("ConjugationMap: negative order");
  }

  int order() const { return order_; }

  /// Sign at (row degree m, column degree -m) of any block.
  static double sign(int m) { return parity_sign(std::abs(m)); }

  /// Anti-diagonal of block n, read from the top-right corner downwards.
  static std::vector<int> anti_diagonal(int n) {
    std::vector<int> out;
    for (int m = -n; m <= n; ++m) out.push_back(static_cast<int>(sign(m)));
    return out;
  }

  Eigen::MatrixXd dense() const {
    const auto dim = static_cast<Eigen::Index>(coeff_count(order_));
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 0; n <= order_; ++n) {
      for (int m = -n; m <= n; ++m) {
        out(static_cast<Eigen::Index>(acn(n, m)), static_cast<Eigen::Index>(acn(n, -m))) = sign(m);
      }
    }
    return out;
  }

  template <typename Derived>
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> apply(const Eigen::MatrixBase<Derived>& x) const {
    const int order = order_from_size(static_cast<std::size_t>(x.size()));
    if (order < 0 || order > order_) throw std::invalid_argument("ConjugationMap: vector order mismatch");
    Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> out(x.size());
    for (int n = 0; n <= order; ++n) {
      for (int m = -n; m <= n; ++m) {
        out(static_cast<Eigen::Index>(acn(n, m))) = sign(m) * x(static_cast<Eigen::Index>(acn(n, -m)));
      }
    }
    return out;
  }

 private:
  int order_;
};

inline BasisMap build_u(int order) { return BasisMap(order); }
inline ConjugationMap build_t(int order) { return ConjugationMap(order); }

/// Imaginary residue allowed when dropping to real values, relative to the
/// vector norm.
inline constexpr double kRealResidueTolerance = 1e-10;

/// Re-expresses coefficients in the target basis. Converting to the real basis
/// requires the function to be real-valued; a larger imaginary residue throws.
inline CoeffVector convert_coeffs(const CoeffVector& v, Basis target) {
  if (v.basis() == target) return v;
  const BasisMap u(v.order());
  if (target == Basis::complex) {
    return CoeffVector::complex_basis(u.apply_transpose(v.values()));
  }
  const Eigen::VectorXcd real_coeffs = u.apply_conjugate(v.complex_values());
  const double norm = real_coeffs.norm();
  const double residue = real_coeffs.imag().cwiseAbs().maxCoeff();
  if (residue > kRealResidueTolerance * std::max(norm, 1.0)) {
    throw std::domain_error("convert_coeffs: function is not real-valued");
  }
  return CoeffVector::real_basis(real_coeffs.real());
}

/// Coefficients of the pointwise conjugate f*(u).
inline CoeffVector conjugate_coeffs(const CoeffVector& v) {
  if (v.basis() == Basis::real) return v;
  const ConjugationMap t(v.order());
  return CoeffVector::complex_basis(t.apply(v.complex_values().conjugate()));
}

}  // namespace shg

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "liegeo/linalg.hpp"

namespace liegeo {

/// Orthogonality tolerance used when wrapping a matrix as a GroupElement.
inline constexpr double kOrthogonalityTol = 1e-9;

/// The wedge basis e_ij = e_i ^ e_j (1 <= i < j <= n) of so(n), with
/// (e_ij)_ab = delta_ia delta_jb - delta_ib delta_ja. Flat indices follow
/// lexicographic order of (i, j). Indices i, j are 1-based throughout the
/// public API to match the e_ij notation.
class SoBasis {
 public:
  explicit SoBasis(int n);

  int n() const noexcept { return n_; }
  int dim() const noexcept { return n_ * (n_ - 1) / 2; }

  /// Flat index of e_ij, i < j.
  int index(int i, int j) const;
  /// (i, j) of flat index k.
  std::pair<int, int> pair(int k) const { return pairs_.at(k); }

  Matrix element(int k) const;
  Matrix to_matrix(const Vector& coeffs) const;
  /// Coefficients of the skew part of `m`.
  Vector to_coeffs(const Matrix& m) const;

  /// "12" for n < 10, "1_10" otherwise.
  std::string label(int k) const;
  /// Inverse of label(); accepts "12", "1_2", and e_ji forms (returns sign -1).
  std::pair<int, double> parse_label(const std::string& label) const;

  friend bool operator==(const SoBasis& a, const SoBasis& b) { return a.n_ == b.n_; }

 private:
  int n_;
  std::vector<std::pair<int, int>> pairs_;
};

/// Element of so(n) held as wedge coefficients plus the matrix form.
class AlgebraElement {
 public:
  AlgebraElement() = default;

  static AlgebraElement zero(int n);
  static AlgebraElement from_coeffs(int n, Vector coeffs);
  /// Takes the skew part of `m`.
  static AlgebraElement from_matrix(const Matrix& m);
  /// sign * e_ij; accepts i > j via e_ji = -e_ij.
  static AlgebraElement unit(int n, int i, int j, double sign = 1.0);

  int n() const noexcept { return n_; }
  int dim() const noexcept { return static_cast<int>(coeffs_.size()); }
  const Vector& coeffs() const noexcept { return coeffs_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  /// x_ij with x_ji = -x_ij.
  double coeff(int i, int j) const;
  double norm() const { return coeffs_.norm(); }

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator-() const;
  friend AlgebraElement operator*(double a, const AlgebraElement& x);

 private:
  AlgebraElement(int n, Vector coeffs, Matrix matrix);

  int n_ = 0;
  Vector coeffs_;
  Matrix matrix_;
};

/// Element of SO(n) (orthogonal within a tolerance, det +1).
class GroupElement {
 public:
  GroupElement() = default;
  /// Throws Errc::not_orthogonal if the defect exceeds `tol` or det < 0.
  explicit GroupElement(Matrix m, double tol = kOrthogonalityTol);

  static GroupElement identity(int n);

  int n() const noexcept { return static_cast<int>(mat_.rows()); }
  const Matrix& matrix() const noexcept { return mat_; }
  double orthogonality_defect() const { return linalg::orthogonality_defect(mat_); }

  GroupElement operator*(const GroupElement& o) const;
  GroupElement inverse() const;

 private:
  Matrix mat_;
};

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);

/// -1/2 trace(XY); the wedge basis is orthonormal for it.
double inner(const AlgebraElement& x, const AlgebraElement& y);

GroupElement expm(const AlgebraElement& x);

/// Matrix exponential of an arbitrary square matrix by Pade scaling and squaring.
Matrix expm_matrix(const Matrix& a);

/// g X g^{-1}.
AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& x);

/// Matrix of Y -> [X, Y] in the wedge basis (d x d, d = n(n-1)/2).
Matrix ad_matrix(const AlgebraElement& x);

/// Coefficient of e_pq in [e_ij, e_kl] straight from the closed structure
/// equations; integer valued. Indices 1-based, any order (e_ji = -e_ij).
int structure_constant(int i, int j, int k, int l, int p, int q);

}  // namespace liegeo

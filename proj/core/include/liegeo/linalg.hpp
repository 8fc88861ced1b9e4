#pragma once

#include <Eigen/Dense>

namespace liegeo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Singular values below this fraction of the largest one count as zero.
inline constexpr double kRankTolerance = 1e-10;

namespace linalg {

/// Orthonormal basis (as columns) of the column span of `columns`.
Matrix orthonormal_basis(const Matrix& columns, double rel_tol = kRankTolerance);

/// Orthonormal basis of the null space of `a` (as columns of a cols(a) x k matrix).
Matrix null_space(const Matrix& a, double rel_tol = kRankTolerance);

int numerical_rank(const Matrix& a, double rel_tol = kRankTolerance);

/// Orthonormal basis of span(sup) minus span(sub); `sub` must be orthonormal.
Matrix relative_complement(const Matrix& sub, const Matrix& sup, double rel_tol = kRankTolerance);

/// Nearest orthogonal matrix (polar factor U V^T of the SVD).
Matrix polar_factor(const Matrix& a);

/// Frobenius norm of a^T a - I.
double orthogonality_defect(const Matrix& a);

}  // namespace linalg
}  // namespace liegeo

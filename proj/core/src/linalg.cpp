#include "liegeo/linalg.hpp"

namespace liegeo::linalg {

namespace {

int rank_from_singular_values(const Vector& sv, double rel_tol) {
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  const double cut = rel_tol * sv(0);
  int r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return r;
}

}  // namespace

Matrix orthonormal_basis(const Matrix& columns, double rel_tol) {
  if (columns.cols() == 0) return Matrix(columns.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(columns, Eigen::ComputeThinU);
  const int r = rank_from_singular_values(svd.singularValues(), rel_tol);
  return svd.matrixU().leftCols(r);
}

Matrix null_space(const Matrix& a, double rel_tol) {
  const auto n = a.cols();
  if (a.rows() == 0 || n == 0) return Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const int r = rank_from_singular_values(svd.singularValues(), rel_tol);
  return svd.matrixV().rightCols(n - r);
}

int numerical_rank(const Matrix& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return rank_from_singular_values(svd.singularValues(), rel_tol);
}

Matrix relative_complement(const Matrix& sub, const Matrix& sup, double rel_tol) {
  Matrix residual = sup;
  if (sub.cols() > 0) residual -= sub * (sub.transpose() * sup);
  // Relative threshold taken against the scale of `sup`, not of the residual.
  if (residual.cols() == 0) return Matrix(sup.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(residual, Eigen::ComputeThinU);
  const double scale = sup.norm();
  const Vector& sv = svd.singularValues();
  int r = 0;
  while (r < sv.size() && sv(r) > rel_tol * std::max(scale, 1.0)) ++r;
  return svd.matrixU().leftCols(r);
}

Matrix polar_factor(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

double orthogonality_defect(const Matrix& a) {
  return (a.transpose() * a - Matrix::Identity(a.cols(), a.cols())).norm();
}

}  // namespace liegeo::linalg

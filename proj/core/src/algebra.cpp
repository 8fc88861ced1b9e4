#include "liegeo/algebra.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "liegeo/error.hpp"

namespace liegeo {

namespace {

void require_same_n(int a, int b, const char* what) {
  if (a != b) {
    throw Error(Errc::dimension_mismatch,
                std::string(what) + ": so(" + std::to_string(a) + ") vs so(" + std::to_string(b) + ")");
  }
}

// Higham (2005) Pade scaling-and-squaring thresholds for the 1-norm.
constexpr std::array<double, 5> kTheta = {1.495585217958292e-2, 2.539398330063230e-1,
                                          9.504178996162932e-1, 2.097847961257068e0,
                                          5.371920351148152e0};

constexpr std::array<double, 4> kPade3 = {120., 60., 12., 1.};
constexpr std::array<double, 6> kPade5 = {30240., 15120., 3360., 420., 30., 1.};
constexpr std::array<double, 8> kPade7 = {17297280., 8648640., 1995840., 277200.,
                                          25200.,    1512.,    56.,      1.};
constexpr std::array<double, 10> kPade9 = {17643225600., 8821612800., 2075673600., 302702400.,
                                           30270240.,    2162160.,    110880.,     3960.,
                                           90.,          1.};
constexpr std::array<double, 14> kPade13 = {
    64764752532480000., 32382376266240000., 7771770303897600., 1187353796428800.,
    129060195264000.,   10559470521600.,    670442572800.,     33522128640.,
    1323241920.,        40840800.,          960960.,           16380.,
    182.,               1.};

template <std::size_t N>
Matrix pade_low(const Matrix& a, const std::array<double, N>& b) {
  const auto n = a.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  Matrix u_inner = b[1] * id;
  Matrix v = b[0] * id;
  Matrix power = id;
  for (std::size_t k = 2; k < N; k += 2) {
    power = power * a2;
    v += b[k] * power;
    if (k + 1 < N) u_inner += b[k + 1] * power;
  }
  const Matrix u = a * u_inner;
  return (v - u).partialPivLu().solve(v + u);
}

Matrix pade13(const Matrix& a) {
  const auto& b = kPade13;
  const auto n = a.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                        b[3] * a2 + b[1] * id);
  const Matrix v =
      a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

// ---------------------------------------------------------------- SoBasis

SoBasis::SoBasis(int n) : n_(n) {
  if (n < 2) throw Error(Errc::invalid_parameters, "so(n) requires n >= 2");
  pairs_.reserve(dim());
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) pairs_.emplace_back(i, j);
}

int SoBasis::index(int i, int j) const {
  if (i < 1 || j > n_ || i >= j) throw Error(Errc::invalid_parameters, "bad wedge index pair");
  // Row i (1-based) starts after sum_{r<i} (n - r) entries.
  return (i - 1) * n_ - (i - 1) * i / 2 + (j - i - 1);
}

Matrix SoBasis::element(int k) const {
  auto [i, j] = pairs_.at(k);
  Matrix m = Matrix::Zero(n_, n_);
  m(i - 1, j - 1) = 1.0;
  m(j - 1, i - 1) = -1.0;
  return m;
}

Matrix SoBasis::to_matrix(const Vector& coeffs) const {
  if (coeffs.size() != dim()) throw Error(Errc::dimension_mismatch, "coefficient vector length");
  Matrix m = Matrix::Zero(n_, n_);
  int k = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j, ++k) {
      m(i, j) = coeffs(k);
      m(j, i) = -coeffs(k);
    }
  return m;
}

Vector SoBasis::to_coeffs(const Matrix& m) const {
  if (m.rows() != n_ || m.cols() != n_) throw Error(Errc::dimension_mismatch, "matrix size");
  Vector c(dim());
  int k = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j, ++k) c(k) = 0.5 * (m(i, j) - m(j, i));
  return c;
}

std::string SoBasis::label(int k) const {
  auto [i, j] = pairs_.at(k);
  if (n_ < 10) return std::to_string(i) + std::to_string(j);
  return std::to_string(i) + "_" + std::to_string(j);
}

std::pair<int, double> SoBasis::parse_label(const std::string& label) const {
  int i = 0;
  int j = 0;
  const auto us = label.find('_');
  try {
    if (us != std::string::npos) {
      i = std::stoi(label.substr(0, us));
      j = std::stoi(label.substr(us + 1));
    } else if (label.size() == 2 && n_ < 10) {
      i = label[0] - '0';
      j = label[1] - '0';
    } else {
      throw Error(Errc::invalid_parameters, "cannot parse wedge label '" + label + "'");
    }
  } catch (const std::logic_error&) {
    throw Error(Errc::invalid_parameters, "cannot parse wedge label '" + label + "'");
  }
  if (i == j || i < 1 || j < 1 || i > n_ || j > n_)
    throw Error(Errc::invalid_parameters, "wedge label '" + label + "' out of range");
  if (i < j) return {index(i, j), 1.0};
  return {index(j, i), -1.0};
}

// --------------------------------------------------------- AlgebraElement

AlgebraElement::AlgebraElement(int n, Vector coeffs, Matrix matrix)
    : n_(n), coeffs_(std::move(coeffs)), matrix_(std::move(matrix)) {}

AlgebraElement AlgebraElement::zero(int n) {
  SoBasis b(n);
  return AlgebraElement(n, Vector::Zero(b.dim()), Matrix::Zero(n, n));
}

AlgebraElement AlgebraElement::from_coeffs(int n, Vector coeffs) {
  SoBasis b(n);
  Matrix m = b.to_matrix(coeffs);
  return AlgebraElement(n, std::move(coeffs), std::move(m));
}

AlgebraElement AlgebraElement::from_matrix(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(Errc::dimension_mismatch, "non-square matrix");
  const int n = static_cast<int>(m.rows());
  SoBasis b(n);
  Vector c = b.to_coeffs(m);
  Matrix skew = 0.5 * (m - m.transpose());
  return AlgebraElement(n, std::move(c), std::move(skew));
}

AlgebraElement AlgebraElement::unit(int n, int i, int j, double sign) {
  SoBasis b(n);
  Vector c = Vector::Zero(b.dim());
  if (i < j) c(b.index(i, j)) = sign;
  else c(b.index(j, i)) = -sign;
  return from_coeffs(n, std::move(c));
}

double AlgebraElement::coeff(int i, int j) const {
  if (i == j) return 0.0;
  return matrix_(i - 1, j - 1);
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  require_same_n(n_, o.n_, "sum");
  return AlgebraElement(n_, coeffs_ + o.coeffs_, matrix_ + o.matrix_);
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  require_same_n(n_, o.n_, "difference");
  return AlgebraElement(n_, coeffs_ - o.coeffs_, matrix_ - o.matrix_);
}

AlgebraElement AlgebraElement::operator-() const { return AlgebraElement(n_, -coeffs_, -matrix_); }

AlgebraElement operator*(double a, const AlgebraElement& x) {
  return AlgebraElement(x.n_, a * x.coeffs_, a * x.matrix_);
}

// ----------------------------------------------------------- GroupElement

GroupElement::GroupElement(Matrix m, double tol) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols()) throw Error(Errc::dimension_mismatch, "non-square group element");
  const double defect = linalg::orthogonality_defect(mat_);
  if (!(defect <= tol)) {
    throw Error(Errc::not_orthogonal, "orthogonality defect " + std::to_string(defect));
  }
  if (mat_.determinant() < 0.0) throw Error(Errc::not_orthogonal, "determinant is -1");
}

GroupElement GroupElement::identity(int n) { return GroupElement(Matrix::Identity(n, n)); }

GroupElement GroupElement::operator*(const GroupElement& o) const {
  require_same_n(n(), o.n(), "group product");
  GroupElement r;
  r.mat_ = mat_ * o.mat_;
  return r;
}

GroupElement GroupElement::inverse() const {
  GroupElement r;
  r.mat_ = mat_.transpose();
  return r;
}

// -------------------------------------------------------------- operations

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_n(x.n(), y.n(), "bracket");
  return AlgebraElement::from_matrix(x.matrix() * y.matrix() - y.matrix() * x.matrix());
}

double inner(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_n(x.n(), y.n(), "inner");
  return x.coeffs().dot(y.coeffs());
}

Matrix expm_matrix(const Matrix& a) {
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  if (a.size() == 0 || norm1 == 0.0) return Matrix::Identity(a.rows(), a.cols());
  if (norm1 <= kTheta[0]) return pade_low(a, kPade3);
  if (norm1 <= kTheta[1]) return pade_low(a, kPade5);
  if (norm1 <= kTheta[2]) return pade_low(a, kPade7);
  if (norm1 <= kTheta[3]) return pade_low(a, kPade9);
  int squarings = 0;
  if (norm1 > kTheta[4]) squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta[4])));
  Matrix r = pade13(a / std::ldexp(1.0, squarings));
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

GroupElement expm(const AlgebraElement& x) {
  Matrix r = expm_matrix(x.matrix());
  if (linalg::orthogonality_defect(r) > 1e-12) r = linalg::polar_factor(r);
  return GroupElement(std::move(r));
}

AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& x) {
  require_same_n(g.n(), x.n(), "adjoint");
  return AlgebraElement::from_matrix(g.matrix() * x.matrix() * g.matrix().transpose());
}

Matrix ad_matrix(const AlgebraElement& x) {
  const SoBasis basis(x.n());
  const int d = basis.dim();
  Matrix ad(d, d);
  for (int k = 0; k < d; ++k) {
    const Matrix e = basis.element(k);
    ad.col(k) = basis.to_coeffs(x.matrix() * e - e * x.matrix());
  }
  return ad;
}

int structure_constant(int i, int j, int k, int l, int p, int q) {
  // Coefficient of e_pq (p < q) in e_ab, with e_ba = -e_ab and e_aa = 0.
  auto wedge = [p, q](int a, int b) {
    if (a == p && b == q) return 1;
    if (a == q && b == p) return -1;
    return 0;
  };
  auto delta = [](int a, int b) { return a == b ? 1 : 0; };
  return delta(j, k) * wedge(i, l) - delta(i, k) * wedge(j, l) + delta(i, l) * wedge(j, k) -
         delta(j, l) * wedge(i, k);
}

}  // namespace liegeo

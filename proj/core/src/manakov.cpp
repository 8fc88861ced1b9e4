#include "liegeo/manakov.hpp"

#include <algorithm>
#include <cmath>

#include "liegeo/error.hpp"

namespace liegeo {

ManakovData::ManakovData(std::vector<double> a, std::vector<double> b, ManakovMode mode, bool require_metric)
    : a_(std::move(a)), b_(std::move(b)), mode_(mode) {
  if (a_.size() != b_.size()) throw Error(Errc::dimension_mismatch, "a and b differ in length");
  if (a_.size() < 2) throw Error(Errc::invalid_parameters, "Manakov data needs n >= 2");
  const SoBasis basis(n());
  iso_a_.resize(basis.dim());
  iso_b_.resize(basis.dim());
  ratios_ = Vector::Zero(basis.dim());
  for (int k = 0; k < basis.dim(); ++k) {
    auto [i, j] = basis.pair(k);
    const double ai = a_[i - 1], aj = a_[j - 1], bi = b_[i - 1], bj = b_[j - 1];
    iso_a_[k] = ai == aj;
    iso_b_[k] = bi == bj;
    if (ai == aj && bi != bj) {
      throw Error(Errc::invalid_parameters, "a_" + std::to_string(i) + " = a_" + std::to_string(j) +
                                                " but b_" + std::to_string(i) + " != b_" + std::to_string(j));
    }
    if (ai == aj && mode_ == ManakovMode::regular)
      throw Error(Errc::invalid_parameters, "regular Manakov data needs pairwise distinct a_i");
    if (bi != bj) {
      ratios_(k) = (bi - bj) / (ai - aj);
      if (require_metric && !(ratios_(k) > 0.0)) {
        throw Error(Errc::invalid_parameters,
                    "ad_b ad_a^{-1} is not positive on d at e_" + basis.label(k));
      }
    }
  }
}

std::vector<int> ManakovData::blocks_of(const std::vector<double>& v) const {
  std::vector<double> seen;
  std::vector<int> sizes;
  for (double x : v) {
    auto it = std::find(seen.begin(), seen.end(), x);
    if (it == seen.end()) {
      seen.push_back(x);
      sizes.push_back(1);
    } else {
      ++sizes[it - seen.begin()];
    }
  }
  return sizes;
}

std::vector<int> ManakovData::a_blocks() const { return blocks_of(a_); }
std::vector<int> ManakovData::b_blocks() const { return blocks_of(b_); }

Matrix ManakovData::mask_basis(const std::vector<bool>& mask, bool value) const {
  const auto d = static_cast<Eigen::Index>(mask.size());
  const auto cols = std::count(mask.begin(), mask.end(), value);
  Matrix m = Matrix::Zero(d, cols);
  Eigen::Index c = 0;
  for (Eigen::Index k = 0; k < d; ++k)
    if (mask[k] == value) m(k, c++) = 1.0;
  return m;
}

Matrix ManakovData::isotropy_a_basis() const { return mask_basis(iso_a_, true); }
Matrix ManakovData::isotropy_b_basis() const { return mask_basis(iso_b_, true); }
Matrix ManakovData::distribution_basis() const { return mask_basis(iso_b_, false); }
Matrix ManakovData::v_basis() const { return mask_basis(iso_a_, false); }

AlgebraElement ManakovData::project_v(const AlgebraElement& x) const {
  Vector c = x.coeffs();
  for (Eigen::Index k = 0; k < c.size(); ++k)
    if (iso_a_[k]) c(k) = 0.0;
  return AlgebraElement::from_coeffs(n(), std::move(c));
}

AlgebraElement ManakovData::project_isotropy_a(const AlgebraElement& x) const {
  Vector c = x.coeffs();
  for (Eigen::Index k = 0; k < c.size(); ++k)
    if (!iso_a_[k]) c(k) = 0.0;
  return AlgebraElement::from_coeffs(n(), std::move(c));
}

AlgebraElement manakov_omega(const ManakovData& md, const AlgebraElement& x) {
  if (x.n() != md.n()) throw Error(Errc::dimension_mismatch, "manakov_omega");
  // Ratios vanish on so(n)_b, which contains so(n)_a, so x_v is implicit.
  return AlgebraElement::from_coeffs(md.n(), md.ratios().cwiseProduct(x.coeffs()));
}

std::vector<std::string> manakov_integral_names(int n) {
  std::vector<std::string> names;
  for (int k = 2; k <= n; ++k)
    for (int m = 0; m <= k; ++m) names.push_back("tr" + std::to_string(k) + "_lambda" + std::to_string(m));
  return names;
}

ManakovIntegrals manakov_integrals(const ManakovData& md, const AlgebraElement& x) {
  if (x.n() != md.n()) throw Error(Errc::dimension_mismatch, "manakov_integrals");
  const int n = md.n();
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = md.a()[i];
  const Matrix& xm = x.matrix();

  ManakovIntegrals out;
  out.names = manakov_integral_names(n);
  // power[m] is the lambda^m coefficient of (X + lambda a)^k.
  std::vector<Matrix> power{xm, a};
  for (int k = 2; k <= n; ++k) {
    std::vector<Matrix> next(k + 1, Matrix::Zero(n, n));
    for (int m = 0; m <= k; ++m) {
      if (m < k) next[m] += power[m] * xm;
      if (m > 0) next[m] += power[m - 1] * a;
    }
    power = std::move(next);
    for (int m = 0; m <= k; ++m) out.values.push_back(power[m].trace());
  }
  return out;
}

double sr_manakov_hamiltonian(const ManakovData& md, const AlgebraElement& x) {
  return 0.5 * inner(manakov_omega(md, md.project_v(x)), x);
}

CoincidenceReport chain_coincidence(const ManakovData& md, const SRStructure& srs) {
  if (md.n() != srs.filtration().n()) throw Error(Errc::dimension_mismatch, "chain_coincidence");
  const int n = md.n();
  const int d = SoBasis(n).dim();
  auto diff = [&](const Vector& c) {
    const auto x = AlgebraElement::from_coeffs(n, c);
    return sr_manakov_hamiltonian(md, x) - srs.hamiltonian(x);
  };
  auto unit = [d](int k) {
    Vector c = Vector::Zero(d);
    c(k) = 1.0;
    return c;
  };
  // Polarization: coefficient of x_k^2 is D(e_k); of x_k x_l is D(e_k+e_l) - D(e_k) - D(e_l).
  std::vector<double> diag(d);
  for (int k = 0; k < d; ++k) diag[k] = diff(unit(k));

  CoincidenceReport report;
  for (int k = 0; k < d; ++k) {
    for (int l = k; l < d; ++l) {
      const double coeff = (k == l) ? diag[k] : diff(unit(k) + unit(l)) - diag[k] - diag[l];
      if (std::abs(coeff) > report.max_deviation) {
        report.max_deviation = std::abs(coeff);
        report.witness_k = k;
        report.witness_l = l;
      }
    }
  }
  return report;
}

}  // namespace liegeo

#pragma once

#include <string>
#include <vector>

#include "liegeo/algebra.hpp"
#include "liegeo/filtration.hpp"

namespace liegeo {

enum class ManakovMode { regular, singular };

/// Diagonal data a = diag(a_1..a_n), b = diag(b_1..b_n) of a Manakov
/// operator omega_ij = (b_i - b_j)/(a_i - a_j) x_ij.
///
/// Blocks are equality classes of the entries (exact float comparison; the
/// entries are user parameters). so(n)_a, so(n)_b are spanned by the e_ij
/// inside a block; d and v are their orthogonal complements. All four are
/// coordinate subspaces of the wedge basis and are stored as masks.
class ManakovData {
 public:
  /// Regular mode requires pairwise distinct a_i. Singular mode requires
  /// so(n)_a <= so(n)_b (a_i = a_j implies b_i = b_j). With
  /// `require_metric`, every ratio on d must be positive.
  ManakovData(std::vector<double> a, std::vector<double> b, ManakovMode mode, bool require_metric = false);

  int n() const noexcept { return static_cast<int>(a_.size()); }
  ManakovMode mode() const noexcept { return mode_; }
  const std::vector<double>& a() const noexcept { return a_; }
  const std::vector<double>& b() const noexcept { return b_; }

  /// Block sizes in order of first appearance.
  std::vector<int> a_blocks() const;
  std::vector<int> b_blocks() const;

  /// Per flat index: true when e_ij lies in so(n)_a (resp. so(n)_b).
  const std::vector<bool>& in_isotropy_a() const noexcept { return iso_a_; }
  const std::vector<bool>& in_isotropy_b() const noexcept { return iso_b_; }
  /// Ratio (b_i - b_j)/(a_i - a_j) per flat index; 0 where b_i = b_j.
  const Vector& ratios() const noexcept { return ratios_; }

  /// Orthonormal bases (columns) of so(n)_a, so(n)_b, d, v.
  Matrix isotropy_a_basis() const;
  Matrix isotropy_b_basis() const;
  Matrix distribution_basis() const;
  Matrix v_basis() const;

  AlgebraElement project_v(const AlgebraElement& x) const;
  AlgebraElement project_isotropy_a(const AlgebraElement& x) const;

 private:
  Matrix mask_basis(const std::vector<bool>& mask, bool value) const;
  std::vector<int> blocks_of(const std::vector<double>& v) const;

  std::vector<double> a_;
  std::vector<double> b_;
  ManakovMode mode_;
  std::vector<bool> iso_a_;
  std::vector<bool> iso_b_;
  Vector ratios_;
};

/// Angular velocity ad_a^{-1} ad_b(x_v).
AlgebraElement manakov_omega(const ManakovData& md, const AlgebraElement& x);

struct ManakovIntegrals {
  /// "tr<k>_lambda<m>": coefficient of lambda^m in tr((X + lambda a)^k).
  std::vector<std::string> names;
  std::vector<double> values;
};

/// Coefficients of lambda^m, m = 0..k, of tr((X + lambda a)^k) for k = 2..n.
ManakovIntegrals manakov_integrals(const ManakovData& md, const AlgebraElement& x);
std::vector<std::string> manakov_integral_names(int n);

/// 1/2 <ad_b ad_a^{-1}(x_v), x>.
double sr_manakov_hamiltonian(const ManakovData& md, const AlgebraElement& x);

struct CoincidenceReport {
  double max_deviation = 0.0;
  /// Flat indices (k, l) of the quadratic monomial x_k x_l with the largest deviation.
  int witness_k = 0;
  int witness_l = 0;
};

/// Compares the Manakov sub-Riemannian Hamiltonian with the chain Hamiltonian
/// of `srs` coefficient by coefficient over all quadratic monomials.
CoincidenceReport chain_coincidence(const ManakovData& md, const SRStructure& srs);

}  // namespace liegeo

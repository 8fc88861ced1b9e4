#pragma once

#include <string_view>
#include <vector>

#include "liegeo/algebra.hpp"
#include "liegeo/filtration.hpp"
#include "liegeo/flows.hpp"

namespace liegeo {

/// Adjoint chain built from the factors E_k = exp(t v_k),
/// v_k = (s_{k+1} - s_k) x_{g_k}, k = 0..depth-1, where x_{g_k} are the
/// partial sums of one decomposition of the initial momentum.
class ChainOperator {
 public:
  ChainOperator(const Filtration& f, const std::vector<double>& s, const AlgebraElement& xbar, double t);

  int depth() const noexcept { return static_cast<int>(factors_.size()); }
  double time() const noexcept { return t_; }
  const Decomposition& decomposition() const noexcept { return decomposition_; }
  const AlgebraElement& generator(int k) const { return generators_.at(k); }
  const GroupElement& factor(int k) const { return factors_.at(k); }

  /// E_i E_{i+1} ... E_{j-1}; identity when i == j.
  GroupElement product(int i, int j) const;
  /// A_[i,j) = Ad_{E_i} o ... o Ad_{E_{j-1}}.
  AlgebraElement apply(int i, int j, const AlgebraElement& y) const;

 private:
  double t_;
  Decomposition decomposition_;
  std::vector<AlgebraElement> generators_;
  std::vector<GroupElement> factors_;
};

/// x(t) = sum_i A_[0,i)(xbar_i).
AlgebraElement euler_solution(const Filtration& f, const std::vector<double>& s, const AlgebraElement& xbar,
                              double t);

/// g(t) = gbar exp(t s_n xbar) E_{n-1}^{-1} ... E_0^{-1}.
GroupElement group_solution(const Filtration& f, const std::vector<double>& s, const GroupElement& gbar,
                            const AlgebraElement& xbar, double t);

GroupElement sr_geodesic(const SRStructure& srs, const GroupElement& gbar, const AlgebraElement& xbar, double t);

/// Coset representative exp(t s_n xbar) E_{n-1}^{-1} ... E_1^{-1} of the
/// geodesic through the origin of G/G_0. Needs 0 outside the index set and
/// pr_{g_0} xbar = 0; throws Errc::invalid_momentum otherwise.
GroupElement homogeneous_geodesic(const SRStructure& srs, const AlgebraElement& xbar, double t);

/// Representative of gK for the spaces "stiefel(n,k)" (first k columns; K is
/// SO(n-k) in the lower-right block). Throws Errc::unsupported_space.
Matrix quotient_map(std::string_view space, const GroupElement& g);

/// Closed-form samples at the given times, shaped like an integrated
/// trajectory so both can share one CSV.
Trajectory closed_form_trajectory(const Filtration& f, const std::vector<double>& s, const GroupElement& gbar,
                                  const AlgebraElement& xbar, const std::vector<double>& times);

struct OracleDeviation {
  double group = 0.0;
  double algebra = 0.0;
  double max() const { return group > algebra ? group : algebra; }
};

/// Sup over the trajectory's timestamps of the Frobenius distance between
/// the integrated states and the closed forms.
OracleDeviation oracle_deviation(const Filtration& f, const std::vector<double>& s, const Trajectory& numeric);

}  // namespace liegeo

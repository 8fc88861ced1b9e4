#include "liegeo/geodesics.hpp"

#include <cmath>
#include <regex>
#include <string>

#include "liegeo/error.hpp"

namespace liegeo {

ChainOperator::ChainOperator(const Filtration& f, const std::vector<double>& s, const AlgebraElement& xbar, double t)
    : t_(t), decomposition_(decompose(f, xbar)) {
  const int depth = f.depth();
  if (static_cast<int>(s.size()) != depth + 1) throw Error(Errc::invalid_parameters, "need one s_i per level");
  generators_.reserve(depth);
  factors_.reserve(depth);
  for (int k = 0; k < depth; ++k) {
    generators_.push_back((s[k + 1] - s[k]) * decomposition_.partials[k]);
    factors_.push_back(expm(t * generators_.back()));
  }
}

GroupElement ChainOperator::product(int i, int j) const {
  if (i < 0 || j > depth() || i > j) throw Error(Errc::invalid_parameters, "bad factor range");
  GroupElement p = GroupElement::identity(decomposition_.parts.front().n());
  for (int k = i; k < j; ++k) p = p * factors_[k];
  return p;
}

AlgebraElement ChainOperator::apply(int i, int j, const AlgebraElement& y) const {
  return adjoint(product(i, j), y);
}

namespace {

AlgebraElement euler_from(const ChainOperator& op) {
  const auto& parts = op.decomposition().parts;
  const int n = parts.front().n();
  Matrix acc = parts[0].matrix();
  Matrix p = Matrix::Identity(n, n);
  for (int i = 1; i <= op.depth(); ++i) {
    p = p * op.factor(i - 1).matrix();
    acc += p * parts[i].matrix() * p.transpose();
  }
  return AlgebraElement::from_matrix(acc);
}

Matrix chain_product(const ChainOperator& op, double s_top, const AlgebraElement& xbar, int first) {
  Matrix g = expm(op.time() * s_top * xbar).matrix();
  for (int k = op.depth() - 1; k >= first; --k) g = g * op.factor(k).matrix().transpose();
  return g;
}

}  // namespace

AlgebraElement euler_solution(const Filtration& f, const std::vector<double>& s, const AlgebraElement& xbar,
                              double t) {
  return euler_from(ChainOperator(f, s, xbar, t));
}

GroupElement group_solution(const Filtration& f, const std::vector<double>& s, const GroupElement& gbar,
                            const AlgebraElement& xbar, double t) {
  const ChainOperator op(f, s, xbar, t);
  return GroupElement(gbar.matrix() * chain_product(op, s.back(), xbar, 0));
}

GroupElement sr_geodesic(const SRStructure& srs, const GroupElement& gbar, const AlgebraElement& xbar, double t) {
  return group_solution(srs.filtration(), srs.s(), gbar, xbar, t);
}

GroupElement homogeneous_geodesic(const SRStructure& srs, const AlgebraElement& xbar, double t) {
  if (srs.index_set().count(0))
    throw Error(Errc::invalid_momentum, "homogeneous geodesics need 0 outside the index set");
  const Filtration& f = srs.filtration();
  const double residual = (f.complement_projector(0) * xbar.coeffs()).norm();
  if (residual > 1e-12)
    throw Error(Errc::invalid_momentum, "momentum has a g_0 component of norm " + format_double(residual));
  const ChainOperator op(f, srs.s(), xbar, t);
  return GroupElement(chain_product(op, srs.s().back(), xbar, 1));
}

Matrix quotient_map(std::string_view space, const GroupElement& g) {
  static const std::regex pattern(R"(\s*stiefel\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*)");
  std::smatch m;
  const std::string s(space);
  if (!std::regex_match(s, m, pattern))
    throw Error(Errc::unsupported_space, "unsupported homogeneous space '" + s + "'");
  const int n = std::stoi(m[1]);
  const int k = std::stoi(m[2]);
  if (k < 1 || k > n) throw Error(Errc::unsupported_space, "stiefel(n,k) needs 1 <= k <= n");
  if (g.n() != n) throw Error(Errc::dimension_mismatch, "group element is not in SO(" + std::to_string(n) + ")");
  return g.matrix().leftCols(k);
}

Trajectory closed_form_trajectory(const Filtration& f, const std::vector<double>& s, const GroupElement& gbar,
                                  const AlgebraElement& xbar, const std::vector<double>& times) {
  Trajectory traj;
  for (double t : times) {
    const ChainOperator op(f, s, xbar, t);
    traj.times.push_back(t);
    traj.g.emplace_back(gbar.matrix() * chain_product(op, s.back(), xbar, 0));
    traj.x.push_back(euler_from(op));
  }
  return traj;
}

OracleDeviation oracle_deviation(const Filtration& f, const std::vector<double>& s, const Trajectory& numeric) {
  if (numeric.size() == 0) return {};
  const Trajectory exact = closed_form_trajectory(f, s, numeric.g.front(), numeric.x.front(), numeric.times);
  OracleDeviation dev;
  for (std::size_t r = 0; r < numeric.size(); ++r) {
    dev.group = std::max(dev.group, (numeric.g[r].matrix() - exact.g[r].matrix()).norm());
    dev.algebra = std::max(dev.algebra, (numeric.x[r].coeffs() - exact.x[r].coeffs()).norm());
  }
  return dev;
}

}  // namespace liegeo

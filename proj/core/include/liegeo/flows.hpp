#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "liegeo/algebra.hpp"
#include "liegeo/filtration.hpp"
#include "liegeo/manakov.hpp"

namespace liegeo {

enum class FieldKind { general_bogoyavlensky, sub_riemannian_chain, manakov, singular_manakov, rank2_so4 };

const char* to_string(FieldKind kind) noexcept;
/// Throws Errc::unknown_name.
FieldKind field_kind_from_string(const std::string& name);

/// Right-hand side of an Euler equation: x' = xdot and the angular velocity
/// omega driving the reconstruction g' = g omega.
struct FieldValue {
  AlgebraElement xdot;
  AlgebraElement omega;
};

/// x' = sum_i [sum_{j<i} (s_i - s_j) x_j, x_i], omega = sum_i s_i x_i. With
/// `a0` (a symmetric map on g_0 in the basis complement_basis(0)) the g_0
/// part is driven by A_0 instead of s_0 id.
FieldValue rhs_chain(const Filtration& f, const std::vector<double>& s, const AlgebraElement& x,
                     const Matrix* a0 = nullptr);

/// The explicit six-component so(4) system with
/// omega = nu1 (x23 + x34)(e23 + e34) + nu2 x12 e12.
FieldValue rhs_rank2_so4(double nu1, double nu2, const AlgebraElement& x);

FieldValue rhs_manakov(const ManakovData& md, const AlgebraElement& x);
FieldValue rhs_manakov(const std::vector<double>& a, const std::vector<double>& b, const AlgebraElement& x);
/// x_{so(n)_a}' = 0, x_v' = [x_{so(n)_a} + x_v, ad_a^{-1} ad_b(x_v)].
FieldValue rhs_singular_manakov(const ManakovData& md, const AlgebraElement& x);
FieldValue rhs_singular_manakov(const std::vector<double>& a, const std::vector<double>& b,
                                const AlgebraElement& x);

class VectorFieldSpec {
 public:
  /// Chain flow with arbitrary real parameters s_0..s_n.
  static VectorFieldSpec chain(std::shared_ptr<const Filtration> f, std::vector<double> s);
  static VectorFieldSpec sub_riemannian(const SRStructure& srs);
  static VectorFieldSpec bogoyavlensky(std::shared_ptr<const Filtration> f, std::vector<double> s, Matrix a0);
  /// Kind follows the data's mode.
  static VectorFieldSpec manakov(std::shared_ptr<const ManakovData> md);
  static VectorFieldSpec rank2_so4(double nu1, double nu2);

  FieldKind kind() const noexcept { return kind_; }
  int n() const noexcept { return n_; }

  FieldValue operator()(const AlgebraElement& x) const;

  const Filtration* filtration() const noexcept { return filtration_.get(); }
  std::shared_ptr<const Filtration> filtration_ptr() const noexcept { return filtration_; }
  const std::vector<double>& s() const noexcept { return s_; }
  const std::optional<Matrix>& a0() const noexcept { return a0_; }
  const ManakovData* manakov_data() const noexcept { return manakov_.get(); }
  double nu1() const noexcept { return nu1_; }
  double nu2() const noexcept { return nu2_; }

 private:
  VectorFieldSpec() = default;

  FieldKind kind_ = FieldKind::sub_riemannian_chain;
  int n_ = 0;
  std::shared_ptr<const Filtration> filtration_;
  std::vector<double> s_;
  std::optional<Matrix> a0_;
  std::shared_ptr<const ManakovData> manakov_;
  double nu1_ = 0.0;
  double nu2_ = 0.0;
};

/// Named conserved-quantity probe evaluated on (g, x).
struct Monitor {
  std::vector<std::string> names;
  std::function<Vector(const Matrix& g, const AlgebraElement& x)> eval;
};

struct IntegrationOptions {
  double t_end = 1.0;
  double step = 1e-3;
  /// Polar re-projection of g after every step.
  bool reorthonormalize = true;
  /// Store every k-th state (the final state is always stored).
  int record_every = 1;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<GroupElement> g;
  std::vector<AlgebraElement> x;
  std::vector<std::string> monitor_names;
  /// monitor_values[m][r]: monitor m at record r.
  std::vector<std::vector<double>> monitor_values;
  /// max_t |m(t) - m(0)| over every step, per monitor.
  std::vector<double> max_drift;

  std::size_t size() const noexcept { return times.size(); }
  double max_drift_overall() const;
};

/// Classical RK4 on the coupled system x' = F(x), g' = g omega(x) with a
/// fixed step (adjusted to t_end / ceil(t_end / step)). Throws
/// IntegrationDiverged on a non-finite state.
Trajectory integrate(const VectorFieldSpec& spec, const GroupElement& g0, const AlgebraElement& x0,
                     const IntegrationOptions& options, const std::vector<Monitor>& monitors = {});

struct CsvOptions {
  bool include_g = false;
  bool include_source = false;
};

/// Header: t[,source],x_ij...[,g_ab...],monitors...
void write_csv_header(std::ostream& out, const Trajectory& traj, const CsvOptions& options);
void write_csv_rows(std::ostream& out, const Trajectory& traj, const CsvOptions& options,
                    const std::string& source = {});
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const CsvOptions& options = {});

/// Shortest round-trip decimal form (at most 17 significant digits).
std::string format_double(double v);

}  // namespace liegeo

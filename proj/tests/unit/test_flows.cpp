#include <algorithm>
#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "liegeo/error.hpp"
#include "liegeo/flows.hpp"
#include "liegeo/integrals.hpp"
#include "testing.hpp"

using namespace liegeo;
using liegeo::testkit::Gen;

namespace {

AlgebraElement e(int n, int i, int j) { return AlgebraElement::unit(n, i, j); }

AlgebraElement so4(double x12, double x13, double x14, double x23, double x24, double x34) {
  Vector c(6);
  c << x12, x13, x14, x23, x24, x34;
  return AlgebraElement::from_coeffs(4, c);
}

// Lie-Poisson form x' = [x, omega] with omega = sum_i s_i x_i, built from raw matrices.
Vector euler_reference(const Filtration& f, const std::vector<double>& s, const AlgebraElement& x) {
  Matrix omega = Matrix::Zero(f.n(), f.n());
  for (int i = 0; i <= f.depth(); ++i)
    omega += s[i] * testkit::skew_from_coeffs(f.n(), f.complement_projector(i) * x.coeffs());
  return testkit::upper_coeffs(x.matrix() * omega - omega * x.matrix());
}

TEST(RhsChain, AgreesWithLiePoissonForm) {
  Gen gen(21);
  for (const auto& name : {"u1-su2-u2-so4", "so2-so3-so4", "line-so3-so4", "su3-g2-so7", "lanci(6;2,1,3)"}) {
    const auto f = catalog(name).filtration;
    for (int trial = 0; trial < 20; ++trial) {
      const auto s = gen.chain_parameters(f->depth() + 1);
      const auto x = gen.element(f->n());
      const auto v = rhs_chain(*f, s, x);
      EXPECT_LE((v.xdot.coeffs() - euler_reference(*f, s, x)).norm(), 1e-12) << name;
      Vector omega = Vector::Zero(x.dim());
      for (int i = 0; i <= f->depth(); ++i) omega += s[i] * (f->complement_projector(i) * x.coeffs());
      EXPECT_LE((v.omega.coeffs() - omega).norm(), 1e-13);
      // The bottom component never moves.
      EXPECT_LE((f->complement_projector(0) * v.xdot.coeffs()).norm(), 1e-13) << name;
    }
  }
}

TEST(RhsChain, EqualParametersGiveZeroField) {
  const auto f = catalog("su3-g2-so7").filtration;
  const auto x = Gen(22).element(7);
  EXPECT_LE(rhs_chain(*f, {1.5, 1.5, 1.5}, x).xdot.norm(), 1e-14);
}

TEST(RhsChain, BottomOperatorGeneralizesScalar) {
  const auto f = catalog("stiefel(5)").filtration;
  Gen gen(23);
  const std::vector<double> s{0.7, -0.3, 1.2};
  const Matrix scalar = 0.7 * Matrix::Identity(3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = gen.element(5);
    EXPECT_LE((rhs_chain(*f, s, x, &scalar).xdot - rhs_chain(*f, s, x).xdot).norm(), 1e-14);
  }
  Matrix a0(3, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = r; c < 3; ++c) a0(r, c) = a0(c, r) = gen.uniform(-2.0, 2.0);
  const Matrix& b0 = f->complement_basis(0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = gen.element(5);
    const auto v = rhs_chain(*f, s, x, &a0);
    Vector omega = b0 * (a0 * (b0.transpose() * x.coeffs()));
    for (int i = 1; i <= f->depth(); ++i) omega += s[i] * (f->complement_projector(i) * x.coeffs());
    const Matrix om = testkit::skew_from_coeffs(5, omega);
    EXPECT_LE((v.omega.coeffs() - omega).norm(), 1e-13);
    EXPECT_LE((v.xdot.coeffs() - testkit::upper_coeffs(x.matrix() * om - om * x.matrix())).norm(), 1e-12);
  }
}

TEST(VectorFieldSpec, BottomOperatorValidation) {
  const auto f = catalog("stiefel(5)").filtration;
  EXPECT_THROW(VectorFieldSpec::bogoyavlensky(f, {0.0, 0.0, 1.0}, Matrix::Identity(2, 2)), Error);
  Matrix skew = Matrix::Zero(3, 3);
  skew(0, 1) = 1.0;
  EXPECT_THROW(VectorFieldSpec::bogoyavlensky(f, {0.0, 0.0, 1.0}, skew), Error);
  EXPECT_EQ(VectorFieldSpec::bogoyavlensky(f, {0.0, 0.0, 1.0}, Matrix::Identity(3, 3)).kind(),
            FieldKind::general_bogoyavlensky);
}

TEST(FieldKind, NamesRoundTrip) {
  for (auto k : {FieldKind::general_bogoyavlensky, FieldKind::sub_riemannian_chain, FieldKind::manakov,
                 FieldKind::singular_manakov, FieldKind::rank2_so4})
    EXPECT_EQ(field_kind_from_string(to_string(k)), k);
  EXPECT_THROW(field_kind_from_string("riemannian"), Error);
}

TEST(RhsRank2, ComponentEquationsMatchBracketForm) {
  Gen gen(24);
  for (int trial = 0; trial < 50; ++trial) {
    const double nu1 = gen.uniform(-2.0, 2.0), nu2 = gen.uniform(-2.0, 2.0);
    const auto x = gen.element(4);
    const auto v = rhs_rank2_so4(nu1, nu2, x);
    const double c = x.coeff(2, 3) + x.coeff(3, 4);
    const auto omega = (nu1 * c) * (e(4, 2, 3) + e(4, 3, 4)) + (nu2 * x.coeff(1, 2)) * e(4, 1, 2);
    EXPECT_LE((v.omega - omega).norm(), 1e-14);
    EXPECT_LE((v.xdot - bracket(x, omega)).norm(), 1e-12);
  }
}

TEST(RhsRank2, Examples) {
  const auto v = rhs_rank2_so4(1.0, 0.5, e(4, 2, 3) - e(4, 3, 4));
  EXPECT_LE(v.xdot.norm(), 1e-15);
  const auto w = rhs_rank2_so4(1.0, 0.5, so4(0.0, 0.0, 0.0, 0.3, -0.8, 0.4));
  EXPECT_EQ(w.xdot.coeff(1, 2), 0.0);
  EXPECT_EQ(w.xdot.coeff(1, 3), 0.0);
  EXPECT_EQ(w.xdot.coeff(1, 4), 0.0);
}

TEST(RhsRank2, MatchesLineChainOnSo3) {
  const auto f = catalog("line-so3-so4").filtration;
  Gen gen(25);
  for (int trial = 0; trial < 20; ++trial) {
    const double nu1 = gen.uniform(0.1, 2.0);
    const auto x = so4(0.0, 0.0, 0.0, gen.uniform(-1, 1), gen.uniform(-1, 1), gen.uniform(-1, 1));
    const auto chain = rhs_chain(*f, {2.0 * nu1, 0.0, 1.0}, x);
    const auto rank2 = rhs_rank2_so4(nu1, 0.5, x);
    EXPECT_LE((chain.xdot - rank2.xdot).norm(), 1e-13);
    EXPECT_LE((chain.omega - rank2.omega).norm(), 1e-13);
  }
}

TEST(RhsManakov, Examples) {
  Gen gen(26);
  const auto x = gen.element(3);
  const auto v = rhs_manakov({1.0, 2.0, 4.0}, {1.0, 4.0, 16.0}, x);
  EXPECT_NEAR(v.omega.coeff(1, 2), 3.0 * x.coeff(1, 2), 1e-14);
  EXPECT_NEAR(v.omega.coeff(1, 3), 5.0 * x.coeff(1, 3), 1e-14);
  EXPECT_NEAR(v.omega.coeff(2, 3), 6.0 * x.coeff(2, 3), 1e-14);
  EXPECT_LE((v.xdot - bracket(x, v.omega)).norm(), 1e-13);
  const auto same = rhs_manakov({1.0, 2.0, 4.0, 5.0}, {1.0, 2.0, 4.0, 5.0}, gen.element(4));
  EXPECT_LE(same.xdot.norm(), 1e-14);
  EXPECT_THROW(rhs_manakov({1.0, 1.0, 2.0}, {0.0, 1.0, 2.0}, x), Error);
}

TEST(RhsManakov, SingularSplitsIsotropyAndComplement) {
  const ManakovData md({1.0, 1.0, 3.0, 3.0, 5.0}, {0.0, 0.0, 1.0, 1.0, 1.0}, ManakovMode::singular);
  Gen gen(27);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = gen.element(5);
    const auto v = rhs_singular_manakov(md, x);
    EXPECT_LE(md.project_isotropy_a(v.xdot).norm(), 1e-15);
    EXPECT_LE((md.isotropy_b_basis().transpose() * v.omega.coeffs()).norm(), 1e-15);
    const auto xa = md.project_isotropy_a(x);
    const auto xv = md.project_v(x);
    EXPECT_LE((v.xdot - bracket(xa + xv, v.omega)).norm(), 1e-13);
  }
}

TEST(Integrate, ConstantWhenFieldVanishes) {
  const auto f = catalog("u1-su2-u2-so4").filtration;
  const auto x0 = Gen(28).element(4);
  const auto traj = integrate(VectorFieldSpec::chain(f, {0.4, 0.4, 0.4, 0.4}), GroupElement::identity(4), x0, {});
  for (const auto& x : traj.x) EXPECT_LE((x - x0).norm(), 1e-14);
  const auto zero = integrate(VectorFieldSpec::rank2_so4(1.0, 0.5), GroupElement::identity(4),
                              AlgebraElement::zero(4), {});
  for (const auto& g : zero.g) EXPECT_EQ(g.matrix(), Matrix::Identity(4, 4));
}

TEST(Integrate, StepIsAdjustedToLandOnTheEndTime) {
  const auto spec = VectorFieldSpec::rank2_so4(1.0, 0.5);
  IntegrationOptions opts;
  opts.t_end = 1.0;
  opts.step = 0.3;
  const auto traj = integrate(spec, GroupElement::identity(4), e(4, 1, 2), opts);
  ASSERT_EQ(traj.size(), 5u);
  EXPECT_DOUBLE_EQ(traj.times[1], 0.25);
  EXPECT_DOUBLE_EQ(traj.times.back(), 1.0);
  opts.step = 0.01;
  opts.record_every = 30;
  const auto sparse = integrate(spec, GroupElement::identity(4), e(4, 1, 2), opts);
  EXPECT_EQ(sparse.size(), 5u);  // 0, 30, 60, 90 and the final step
  EXPECT_DOUBLE_EQ(sparse.times.back(), 1.0);
  for (std::size_t r = 1; r < sparse.size(); ++r) EXPECT_GT(sparse.times[r], sparse.times[r - 1]);
}

TEST(Integrate, NonFiniteStateThrows) {
  Vector c = Vector::Zero(6);
  c(0) = std::nan("");
  try {
    (void)integrate(VectorFieldSpec::rank2_so4(1.0, 0.5), GroupElement::identity(4),
                    AlgebraElement::from_coeffs(4, c), {});
    FAIL() << "expected divergence";
  } catch (const IntegrationDiverged& err) {
    EXPECT_EQ(err.code(), Errc::integration_diverged);
    EXPECT_EQ(err.last_good_time(), 0.0);
  }
}

TEST(Integrate, NormMomentumAndOrthogonalityAreKept) {
  Gen gen(29);
  for (const auto& name : {"u1-su2-u2-so4", "su3-g2-so7", "stiefel(5)"}) {
    const auto entry = catalog(name);
    const auto spec = VectorFieldSpec::sub_riemannian(entry.structure());
    const std::vector<Monitor> monitors{make_monitor("norm", spec), make_monitor("momentum", spec),
                                        make_monitor("hamiltonian", spec)};
    const auto traj = integrate(spec, gen.group(spec.n()), gen.element(spec.n()), {}, monitors);
    EXPECT_LE(traj.max_drift[0], 1e-10) << name;
    EXPECT_LE(traj.max_drift[1], 1e-8) << name;
    EXPECT_LE(traj.max_drift[2], 1e-10) << name;
    for (const auto& g : traj.g) EXPECT_LE(g.orthogonality_defect(), 1e-12);
  }
}

TEST(Integrate, EnergyErrorIsFourthOrder) {
  const auto spec = VectorFieldSpec::manakov(
      std::make_shared<const ManakovData>(std::vector<double>{0.5, 1.0, 2.0, 3.5}, std::vector<double>{0.0, 1.0, 5.0, 8.0},
                                          ManakovMode::regular));
  const auto x0 = Gen(30).element(4, 2.0);
  const std::vector<Monitor> monitors{make_monitor("hamiltonian", spec)};
  IntegrationOptions coarse;
  coarse.t_end = 2.0;
  coarse.step = 0.01;
  IntegrationOptions fine = coarse;
  fine.step = 0.005;
  const double d1 = integrate(spec, GroupElement::identity(4), x0, coarse, monitors).max_drift[0];
  const double d2 = integrate(spec, GroupElement::identity(4), x0, fine, monitors).max_drift[0];
  ASSERT_GT(d2, 1e-12);
  EXPECT_GT(d1 / d2, 10.0);
  EXPECT_LT(d1 / d2, 24.0);
}

TEST(Integrate, Rank2InvariantSubspaceAndRestrictedIntegrals) {
  const auto spec = VectorFieldSpec::rank2_so4(1.0, 0.5);
  const auto x0 = so4(0.0, 0.0, 0.0, 1.0 / std::sqrt(2.0), std::sqrt(1.5), 0.2);
  const auto traj = integrate(spec, GroupElement::identity(4), x0, {});
  auto plane = [](const AlgebraElement& x) { return x.coeff(2, 3) + x.coeff(3, 4); };
  auto cylinder = [](const AlgebraElement& x) {
    const double d = x.coeff(2, 3) - x.coeff(3, 4);
    return d * d + 2.0 * x.coeff(2, 4) * x.coeff(2, 4);
  };
  for (const auto& x : traj.x) {
    EXPECT_LE(std::abs(x.coeff(1, 2)) + std::abs(x.coeff(1, 3)) + std::abs(x.coeff(1, 4)), 1e-10);
    EXPECT_NEAR(plane(x), plane(x0), 1e-10);
    EXPECT_NEAR(cylinder(x), cylinder(x0), 1e-10);
  }
}

TEST(Csv, HeaderAndDeterminism) {
  const auto spec = VectorFieldSpec::rank2_so4(1.0, 0.5);
  const std::vector<Monitor> monitors{make_monitor("hamiltonian", spec)};
  IntegrationOptions opts;
  opts.record_every = 100;
  const auto x0 = so4(1.0, 0.0, 0.0, 0.5, 1.0 / std::sqrt(2.0), -0.5);
  auto render = [&] {
    std::ostringstream out;
    write_trajectory_csv(out, integrate(spec, GroupElement::identity(4), x0, opts, monitors), {true, false});
    return out.str();
  };
  const std::string a = render();
  EXPECT_EQ(a, render());
  const std::string header = a.substr(0, a.find('\n'));
  EXPECT_EQ(header.rfind("t,x_12,x_13,x_14,x_23,x_24,x_34,g_11,", 0), 0u) << header;
  EXPECT_NE(header.find(",g_44,H"), std::string::npos) << header;
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 12);
}

TEST(Csv, FormatRoundTrips) {
  Gen gen(31);
  for (int trial = 0; trial < 200; ++trial) {
    const double v = gen.uniform(-1.0, 1.0) * std::pow(10.0, gen.integer(-20, 20));
    const std::string s = format_double(v);
    EXPECT_EQ(std::stod(s), v) << s;
    EXPECT_LE(s.size(), 24u);
  }
  EXPECT_EQ(format_double(0.25), "0.25");
  EXPECT_EQ(format_double(1.0), "1");
}

}  // namespace

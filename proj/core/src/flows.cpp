#include "liegeo/flows.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "liegeo/error.hpp"

namespace liegeo {

namespace {

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

/// Polar re-projection, Newton-Schulz steps with an SVD fallback.
void reorthonormalize(Matrix& g) {
  const auto n = g.rows();
  const Matrix id = Matrix::Identity(n, n);
  for (int it = 0; it < 3; ++it) {
    const Matrix gram = g.transpose() * g;
    const double defect = (gram - id).norm();
    if (defect <= 1e-15) return;
    if (defect > 1e-3) break;
    g = g * (1.5 * id - 0.5 * gram);
  }
  if (linalg::orthogonality_defect(g) > 1e-14) g = linalg::polar_factor(g);
}

}  // namespace

const char* to_string(FieldKind kind) noexcept {
  switch (kind) {
    case FieldKind::general_bogoyavlensky: return "general-bogoyavlensky";
    case FieldKind::sub_riemannian_chain: return "sub-riemannian-chain";
    case FieldKind::manakov: return "manakov";
    case FieldKind::singular_manakov: return "singular-manakov";
    case FieldKind::rank2_so4: return "rank2-so4";
  }
  return "unknown";
}

FieldKind field_kind_from_string(const std::string& name) {
  for (auto k : {FieldKind::general_bogoyavlensky, FieldKind::sub_riemannian_chain, FieldKind::manakov,
                 FieldKind::singular_manakov, FieldKind::rank2_so4})
    if (name == to_string(k)) return k;
  throw Error(Errc::unknown_name, "unknown field kind '" + name + "'");
}

// ------------------------------------------------------------ right-hand sides

FieldValue rhs_chain(const Filtration& f, const std::vector<double>& s, const AlgebraElement& x,
                     const Matrix* a0) {
  if (x.n() != f.n()) throw Error(Errc::dimension_mismatch, "rhs_chain");
  const int depth = f.depth();
  if (static_cast<int>(s.size()) != depth + 1) throw Error(Errc::invalid_parameters, "rhs_chain: wrong number of s_i");
  const SoBasis& basis = f.ambient();
  const int n = f.n();

  std::vector<Matrix> parts;
  parts.reserve(depth + 1);
  for (int i = 0; i <= depth; ++i) parts.push_back(basis.to_matrix(f.complement_projector(i) * x.coeffs()));

  // a0x0 = A_0(x_0), or s_0 x_0 when no operator is given.
  Matrix a0x0;
  Matrix xdot = Matrix::Zero(n, n);
  if (a0) {
    const Matrix& b0 = f.complement_basis(0);
    a0x0 = basis.to_matrix(b0 * (*a0 * (b0.transpose() * x.coeffs())));
    xdot += commutator(parts[0], a0x0);
  } else {
    a0x0 = s[0] * parts[0];
  }

  Matrix omega = a0x0;
  Matrix sum = Matrix::Zero(n, n);           // x_1 + ... + x_{i-1}
  Matrix weighted = Matrix::Zero(n, n);      // s_1 x_1 + ... + s_{i-1} x_{i-1}
  for (int i = 1; i <= depth; ++i) {
    const Matrix y = s[i] * (parts[0] + sum) - a0x0 - weighted;
    xdot += commutator(y, parts[i]);
    omega += s[i] * parts[i];
    sum += parts[i];
    weighted += s[i] * parts[i];
  }
  return {AlgebraElement::from_matrix(xdot), AlgebraElement::from_matrix(omega)};
}

FieldValue rhs_rank2_so4(double nu1, double nu2, const AlgebraElement& x) {
  if (x.n() != 4) throw Error(Errc::dimension_mismatch, "rhs_rank2_so4 needs so(4)");
  const double x12 = x.coeff(1, 2), x13 = x.coeff(1, 3), x14 = x.coeff(1, 4);
  const double x23 = x.coeff(2, 3), x24 = x.coeff(2, 4), x34 = x.coeff(3, 4);
  const double c = x23 + x34;
  Vector xdot(6);
  xdot << -nu1 * x13 * c,                               // x12
      nu1 * (x12 - x14) * c - nu2 * x12 * x23,          // x13
      nu1 * x13 * c - nu2 * x12 * x24,                  // x14
      -nu1 * x24 * c + nu2 * x12 * x13,                 // x23
      nu1 * (x23 - x34) * c + nu2 * x12 * x14,          // x24
      nu1 * x24 * c;                                    // x34
  Vector omega = Vector::Zero(6);
  omega(0) = nu2 * x12;
  omega(3) = nu1 * c;
  omega(5) = nu1 * c;
  return {AlgebraElement::from_coeffs(4, std::move(xdot)), AlgebraElement::from_coeffs(4, std::move(omega))};
}

FieldValue rhs_manakov(const ManakovData& md, const AlgebraElement& x) {
  AlgebraElement omega = manakov_omega(md, x);
  AlgebraElement xdot = AlgebraElement::from_matrix(commutator(x.matrix(), omega.matrix()));
  return {std::move(xdot), std::move(omega)};
}

FieldValue rhs_manakov(const std::vector<double>& a, const std::vector<double>& b, const AlgebraElement& x) {
  return rhs_manakov(ManakovData(a, b, ManakovMode::regular), x);
}

FieldValue rhs_singular_manakov(const ManakovData& md, const AlgebraElement& x) {
  AlgebraElement omega = manakov_omega(md, x);
  // The so(n)_a component is held fixed exactly; only the v-part evolves.
  AlgebraElement xdot = md.project_v(AlgebraElement::from_matrix(commutator(x.matrix(), omega.matrix())));
  return {std::move(xdot), std::move(omega)};
}

FieldValue rhs_singular_manakov(const std::vector<double>& a, const std::vector<double>& b,
                                const AlgebraElement& x) {
  return rhs_singular_manakov(ManakovData(a, b, ManakovMode::singular), x);
}

// ------------------------------------------------------------ VectorFieldSpec

VectorFieldSpec VectorFieldSpec::chain(std::shared_ptr<const Filtration> f, std::vector<double> s) {
  if (!f) throw Error(Errc::invalid_parameters, "chain field needs a filtration");
  if (static_cast<int>(s.size()) != f->depth() + 1)
    throw Error(Errc::invalid_parameters, "chain field needs " + std::to_string(f->depth() + 1) + " parameters s_i");
  VectorFieldSpec spec;
  spec.kind_ = FieldKind::sub_riemannian_chain;
  spec.n_ = f->n();
  spec.filtration_ = std::move(f);
  spec.s_ = std::move(s);
  return spec;
}

VectorFieldSpec VectorFieldSpec::sub_riemannian(const SRStructure& srs) {
  return chain(srs.filtration_ptr(), srs.s());
}

VectorFieldSpec VectorFieldSpec::bogoyavlensky(std::shared_ptr<const Filtration> f, std::vector<double> s,
                                               Matrix a0) {
  VectorFieldSpec spec = chain(std::move(f), std::move(s));
  const int d0 = spec.filtration_->complement_dim(0);
  if (a0.rows() != d0 || a0.cols() != d0)
    throw Error(Errc::dimension_mismatch, "A_0 must be " + std::to_string(d0) + "x" + std::to_string(d0));
  if ((a0 - a0.transpose()).norm() > 1e-12 * std::max(1.0, a0.norm()))
    throw Error(Errc::invalid_parameters, "A_0 must be symmetric");
  spec.kind_ = FieldKind::general_bogoyavlensky;
  spec.a0_ = std::move(a0);
  return spec;
}

VectorFieldSpec VectorFieldSpec::manakov(std::shared_ptr<const ManakovData> md) {
  if (!md) throw Error(Errc::invalid_parameters, "manakov field needs data");
  VectorFieldSpec spec;
  spec.kind_ = md->mode() == ManakovMode::singular ? FieldKind::singular_manakov : FieldKind::manakov;
  spec.n_ = md->n();
  spec.manakov_ = std::move(md);
  return spec;
}

VectorFieldSpec VectorFieldSpec::rank2_so4(double nu1, double nu2) {
  VectorFieldSpec spec;
  spec.kind_ = FieldKind::rank2_so4;
  spec.n_ = 4;
  spec.nu1_ = nu1;
  spec.nu2_ = nu2;
  return spec;
}

FieldValue VectorFieldSpec::operator()(const AlgebraElement& x) const {
  switch (kind_) {
    case FieldKind::general_bogoyavlensky: return rhs_chain(*filtration_, s_, x, &*a0_);
    case FieldKind::sub_riemannian_chain: return rhs_chain(*filtration_, s_, x);
    case FieldKind::manakov: return rhs_manakov(*manakov_, x);
    case FieldKind::singular_manakov: return rhs_singular_manakov(*manakov_, x);
    case FieldKind::rank2_so4: return rhs_rank2_so4(nu1_, nu2_, x);
  }
  throw Error(Errc::invalid_parameters, "unhandled field kind");
}

// ------------------------------------------------------------ integration

double Trajectory::max_drift_overall() const {
  double m = 0.0;
  for (double d : max_drift) m = std::max(m, d);
  return m;
}

Trajectory integrate(const VectorFieldSpec& spec, const GroupElement& g0, const AlgebraElement& x0,
                     const IntegrationOptions& options, const std::vector<Monitor>& monitors) {
  if (x0.n() != spec.n() || g0.n() != spec.n()) throw Error(Errc::dimension_mismatch, "integrate");
  if (!(options.step > 0.0) || !(options.t_end >= 0.0) || !std::isfinite(options.t_end))
    throw Error(Errc::invalid_parameters, "integrate needs step > 0 and finite t_end >= 0");
  if (options.record_every < 1) throw Error(Errc::invalid_parameters, "record_every must be >= 1");

  const int n = spec.n();
  const long steps = options.t_end == 0.0
                         ? 0
                         : std::max(1L, static_cast<long>(std::ceil(options.t_end / options.step - 1e-9)));
  const double h = steps ? options.t_end / static_cast<double>(steps) : 0.0;

  Trajectory traj;
  for (const auto& m : monitors) traj.monitor_names.insert(traj.monitor_names.end(), m.names.begin(), m.names.end());
  traj.monitor_values.resize(traj.monitor_names.size());
  traj.max_drift.assign(traj.monitor_names.size(), 0.0);

  auto eval_monitors = [&](const Matrix& g, const AlgebraElement& x) {
    Vector all(static_cast<Eigen::Index>(traj.monitor_names.size()));
    Eigen::Index at = 0;
    for (const auto& m : monitors) {
      const Vector v = m.eval(g, x);
      if (v.size() != static_cast<Eigen::Index>(m.names.size()))
        throw Error(Errc::dimension_mismatch, "monitor returned the wrong number of values");
      all.segment(at, v.size()) = v;
      at += v.size();
    }
    return all;
  };

  Matrix g = g0.matrix();
  Vector x = x0.coeffs();
  const Vector initial = eval_monitors(g, x0);

  auto record = [&](double t, const Matrix& gm, const AlgebraElement& xe, const Vector& mon) {
    traj.times.push_back(t);
    traj.g.emplace_back(gm, 1e-6);
    traj.x.push_back(xe);
    for (Eigen::Index k = 0; k < mon.size(); ++k) traj.monitor_values[k].push_back(mon(k));
  };
  record(0.0, g, x0, initial);

  auto field = [&](const Vector& xc, const Matrix& gm, Vector& dx, Matrix& dg) {
    FieldValue fv = spec(AlgebraElement::from_coeffs(n, xc));
    dx = fv.xdot.coeffs();
    dg = gm * fv.omega.matrix();
  };

  Vector k1x, k2x, k3x, k4x;
  Matrix k1g, k2g, k3g, k4g;
  double last_good = 0.0;
  for (long k = 1; k <= steps; ++k) {
    field(x, g, k1x, k1g);
    field(x + 0.5 * h * k1x, g + 0.5 * h * k1g, k2x, k2g);
    field(x + 0.5 * h * k2x, g + 0.5 * h * k2g, k3x, k3g);
    field(x + h * k3x, g + h * k3g, k4x, k4g);
    x += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    g += (h / 6.0) * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
    const double t = static_cast<double>(k) * h;

    if (!x.allFinite() || !g.allFinite())
      throw IntegrationDiverged(last_good, "state became non-finite after t = " + format_double(last_good));
    if (options.reorthonormalize) reorthonormalize(g);

    const auto xe = AlgebraElement::from_coeffs(n, x);
    const Vector mon = eval_monitors(g, xe);
    for (Eigen::Index m = 0; m < mon.size(); ++m)
      traj.max_drift[m] = std::max(traj.max_drift[m], std::abs(mon(m) - initial(m)));
    if (k % options.record_every == 0 || k == steps) record(t, g, xe, mon);
    last_good = t;
  }
  return traj;
}

// ------------------------------------------------------------ CSV

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_csv_header(std::ostream& out, const Trajectory& traj, const CsvOptions& options) {
  const int n = traj.x.empty() ? 0 : traj.x.front().n();
  const SoBasis basis(std::max(n, 2));
  out << 't';
  if (options.include_source) out << ",source";
  for (int k = 0; n && k < basis.dim(); ++k) out << ",x_" << basis.label(k);
  if (options.include_g) {
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b) out << ",g_" << a << (n >= 10 ? "_" : "") << b;
  }
  for (const auto& name : traj.monitor_names) out << ',' << name;
  out << '\n';
}

void write_csv_rows(std::ostream& out, const Trajectory& traj, const CsvOptions& options,
                    const std::string& source) {
  for (std::size_t r = 0; r < traj.size(); ++r) {
    out << format_double(traj.times[r]);
    if (options.include_source) out << ',' << source;
    const Vector& c = traj.x[r].coeffs();
    for (Eigen::Index k = 0; k < c.size(); ++k) out << ',' << format_double(c(k));
    if (options.include_g) {
      const Matrix& g = traj.g[r].matrix();
      for (Eigen::Index a = 0; a < g.rows(); ++a)
        for (Eigen::Index b = 0; b < g.cols(); ++b) out << ',' << format_double(g(a, b));
    }
    for (const auto& column : traj.monitor_values) out << ',' << format_double(column[r]);
    out << '\n';
  }
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const CsvOptions& options) {
  write_csv_header(out, traj, options);
  write_csv_rows(out, traj, options);
}

}  // namespace liegeo

#include "liegeo/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "liegeo/error.hpp"
#include "liegeo/manakov.hpp"

namespace liegeo {

// ------------------------------------------------------------ conserved quantities

So4Casimirs casimirs_so4(const AlgebraElement& x) {
  if (x.n() != 4) throw Error(Errc::dimension_mismatch, "so(4) Casimirs need n = 4");
  return {x.coeffs().squaredNorm(),
          x.coeff(1, 2) * x.coeff(3, 4) - x.coeff(1, 3) * x.coeff(2, 4) + x.coeff(1, 4) * x.coeff(2, 3)};
}

AlgebraElement momentum_map(const GroupElement& g, const AlgebraElement& x) { return adjoint(g, x); }

double hamiltonian(const VectorFieldSpec& spec, const AlgebraElement& x) {
  return 0.5 * inner(spec(x).omega, x);
}

std::vector<std::string> monitor_names() {
  return {"hamiltonian", "casimirs", "norm", "momentum", "manakov-integrals", "isotropy-a"};
}

Monitor make_monitor(const std::string& name, const VectorFieldSpec& spec) {
  const int n = spec.n();
  const SoBasis basis(n);
  if (name == "hamiltonian") {
    return {{"H"}, [spec](const Matrix&, const AlgebraElement& x) { return Vector::Constant(1, hamiltonian(spec, x)); }};
  }
  if (name == "casimirs") {
    if (n != 4) throw Error(Errc::dimension_mismatch, "the casimirs monitor is defined for so(4); use norm");
    return {{"I1", "I2"}, [](const Matrix&, const AlgebraElement& x) {
              const auto c = casimirs_so4(x);
              return Vector{{c.i1, c.i2}};
            }};
  }
  if (name == "norm") {
    return {{"norm2"},
            [](const Matrix&, const AlgebraElement& x) { return Vector::Constant(1, x.coeffs().squaredNorm()); }};
  }
  if (name == "momentum") {
    std::vector<std::string> names;
    for (int k = 0; k < basis.dim(); ++k) names.push_back("phi_" + basis.label(k));
    return {names, [](const Matrix& g, const AlgebraElement& x) {
              return momentum_map(GroupElement(g, 1e-6), x).coeffs();
            }};
  }
  if (name == "manakov-integrals" || name == "isotropy-a") {
    if (!spec.manakov_data())
      throw Error(Errc::invalid_parameters, "monitor '" + name + "' needs a Manakov field");
    const ManakovData md = *spec.manakov_data();
    if (name == "manakov-integrals") {
      return {manakov_integral_names(n), [md](const Matrix&, const AlgebraElement& x) {
                const auto vals = manakov_integrals(md, x).values;
                return Vector(Eigen::Map<const Vector>(vals.data(), static_cast<Eigen::Index>(vals.size())));
              }};
    }
    std::vector<int> idx;
    std::vector<std::string> names;
    for (int k = 0; k < basis.dim(); ++k) {
      if (!md.in_isotropy_a()[k]) continue;
      idx.push_back(k);
      names.push_back("xa_" + basis.label(k));
    }
    return {names, [idx](const Matrix&, const AlgebraElement& x) {
              Vector v(static_cast<Eigen::Index>(idx.size()));
              for (std::size_t k = 0; k < idx.size(); ++k) v(static_cast<Eigen::Index>(k)) = x.coeffs()(idx[k]);
              return v;
            }};
  }
  throw Error(Errc::unknown_name, "unknown monitor '" + name + "'");
}

// ------------------------------------------------------------ polynomial systems

Vector PolySystem::evaluate(const Vector& x) const {
  Vector out(nvars);
  for (int k = 0; k < nvars; ++k) out(k) = rhs[k].evaluate(x);
  return out;
}

PolySystem zero_poly_system(int nvars) {
  PolySystem sys;
  sys.nvars = nvars;
  for (int k = 0; k < nvars; ++k) {
    sys.names.push_back("x" + std::to_string(k + 1));
    sys.rhs.emplace_back(nvars);
  }
  return sys;
}

PolySystem extract_poly_system(const VectorFieldSpec& spec, std::vector<int> variables, std::uint64_t seed) {
  const int n = spec.n();
  const SoBasis basis(n);
  const int d = basis.dim();
  if (variables.empty()) {
    variables.resize(d);
    for (int k = 0; k < d; ++k) variables[k] = k;
  }
  std::vector<bool> selected(d, false);
  for (int v : variables) {
    if (v < 0 || v >= d || selected[v]) throw Error(Errc::invalid_parameters, "bad variable subset");
    selected[v] = true;
  }
  const int m = static_cast<int>(variables.size());

  auto full_field = [&](const Vector& y) {
    Vector c = Vector::Zero(d);
    for (int k = 0; k < m; ++k) c(variables[k]) = y(k);
    return spec(AlgebraElement::from_coeffs(n, std::move(c))).xdot.coeffs();
  };
  auto field = [&](const Vector& y) {
    const Vector full = full_field(y);
    Vector out(m);
    for (int k = 0; k < m; ++k) out(k) = full(variables[k]);
    return out;
  };
  auto unit = [m](int k) {
    Vector e = Vector::Zero(m);
    e(k) = 1.0;
    return e;
  };

  // Coefficients of constant, linear and quadratic parts by polarization.
  const Vector f0 = field(Vector::Zero(m));
  std::vector<Vector> fplus(m), fminus(m);
  for (int i = 0; i < m; ++i) {
    fplus[i] = field(unit(i));
    fminus[i] = field(-unit(i));
  }
  PolySystem sys;
  sys.nvars = m;
  for (int k = 0; k < m; ++k) sys.names.push_back("x" + basis.label(variables[k]));
  sys.rhs.assign(m, Polynomial(m));
  for (int k = 0; k < m; ++k) sys.rhs[k].add(Monomial(m, 0), f0(k));
  for (int i = 0; i < m; ++i) {
    Monomial lin(m, 0), sq(m, 0);
    lin[i] = 1;
    sq[i] = 2;
    const Vector l = 0.5 * (fplus[i] - fminus[i]);
    const Vector q = 0.5 * (fplus[i] + fminus[i]) - f0;
    for (int k = 0; k < m; ++k) {
      sys.rhs[k].add(lin, l(k));
      sys.rhs[k].add(sq, q(k));
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const Vector fij = field(unit(i) + unit(j));
      const Vector mixed = fij - fplus[i] - fplus[j] + f0;
      Monomial mono(m, 0);
      mono[i] = mono[j] = 1;
      for (int k = 0; k < m; ++k) sys.rhs[k].add(mono, mixed(k));
    }
  }
  for (auto& p : sys.rhs) p = p.pruned(1e-13);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Vector y(m);
    for (int k = 0; k < m; ++k) y(k) = uni(rng);
    const Vector full = full_field(y);
    const double scale = std::max(1.0, full.cwiseAbs().maxCoeff());
    for (int k = 0; k < d; ++k) {
      if (!selected[k] && std::abs(full(k)) > 1e-12 * scale)
        throw Error(Errc::invalid_parameters, "variable subset is not invariant (component x" + basis.label(k) + ")");
    }
    const Vector diff = sys.evaluate(y) - field(y);
    if (diff.cwiseAbs().maxCoeff() > 1e-12 * scale)
      throw Error(Errc::invalid_parameters, "field is not polynomial of degree <= 2");
  }
  return sys;
}

namespace {

Polynomial so4_var(int i, int j) { return Polynomial::variable(6, SoBasis(4).index(i, j)); }

}  // namespace

Polynomial rank2_hamiltonian_poly(double nu1, double nu2) {
  const Polynomial c = so4_var(2, 3) + so4_var(3, 4);
  const Polynomial x12 = so4_var(1, 2);
  return (0.5 * nu1) * (c * c) + (0.5 * nu2) * (x12 * x12);
}

Polynomial casimir_i1_poly() {
  Polynomial p(6);
  for (int k = 0; k < 6; ++k) {
    const auto v = Polynomial::variable(6, k);
    p = p + v * v;
  }
  return p;
}

Polynomial casimir_i2_poly() {
  return so4_var(1, 2) * so4_var(3, 4) - so4_var(1, 3) * so4_var(2, 4) + so4_var(1, 4) * so4_var(2, 3);
}

Polynomial quadratic_polynomial(const std::function<double(const Vector&)>& f, int nvars) {
  auto unit = [nvars](int k) {
    Vector e = Vector::Zero(nvars);
    e(k) = 1.0;
    return e;
  };
  Polynomial p(nvars);
  const double f0 = f(Vector::Zero(nvars));
  p.add(Monomial(nvars, 0), f0);
  std::vector<double> plus(nvars);
  for (int i = 0; i < nvars; ++i) {
    plus[i] = f(unit(i));
    const double minus = f(-unit(i));
    Monomial lin(nvars, 0), sq(nvars, 0);
    lin[i] = 1;
    sq[i] = 2;
    p.add(lin, 0.5 * (plus[i] - minus));
    p.add(sq, 0.5 * (plus[i] + minus) - f0);
  }
  for (int i = 0; i < nvars; ++i) {
    for (int j = i + 1; j < nvars; ++j) {
      Monomial mono(nvars, 0);
      mono[i] = mono[j] = 1;
      p.add(mono, f(unit(i) + unit(j)) - plus[i] - plus[j] + f0);
    }
  }
  return p.pruned(1e-13);
}

Polynomial lie_derivative(const PolySystem& sys, const Polynomial& p) {
  if (p.nvars() != sys.nvars) throw Error(Errc::dimension_mismatch, "Lie derivative arity");
  Polynomial out(sys.nvars);
  for (int k = 0; k < sys.nvars; ++k) out = out + sys.rhs[k] * p.derivative(k);
  return out;
}

Matrix lie_derivative_matrix(const PolySystem& sys, const MonomialBasis& domain, const MonomialBasis& codomain) {
  if (domain.nvars() != sys.nvars || codomain.nvars() != sys.nvars)
    throw Error(Errc::dimension_mismatch, "monomial basis arity");
  Matrix l = Matrix::Zero(static_cast<Eigen::Index>(codomain.size()), static_cast<Eigen::Index>(domain.size()));
  for (std::size_t col = 0; col < domain.size(); ++col) {
    const Monomial& mu = domain[col];
    for (int k = 0; k < sys.nvars; ++k) {
      if (mu[k] == 0) continue;
      for (const auto& [nu, c] : sys.rhs[k].terms()) {
        Monomial target = mu;
        --target[k];
        for (int v = 0; v < sys.nvars; ++v) target[v] += nu[v];
        if (!codomain.contains(target)) throw Error(Errc::invalid_parameters, "codomain degree too small for the field");
        l(static_cast<Eigen::Index>(codomain.index(target)), static_cast<Eigen::Index>(col)) += mu[k] * c;
      }
    }
  }
  return l;
}

Matrix lie_derivative_matrix(const PolySystem& sys, int d) {
  if (d < 1) throw Error(Errc::invalid_parameters, "degree bound must be >= 1");
  return lie_derivative_matrix(sys, MonomialBasis(sys.nvars, d), MonomialBasis(sys.nvars, d + 1));
}

namespace {

/// Every product g_1^a_1 ... g_r^a_r of the generators (and 1) with total
/// degree <= d, as coefficient vectors over `basis`.
Matrix product_span(const std::vector<Polynomial>& gens, int d, const MonomialBasis& basis) {
  std::vector<Vector> cols;
  std::function<void(std::size_t, const Polynomial&, int)> rec = [&](std::size_t i, const Polynomial& acc, int deg) {
    if (i == gens.size()) {
      cols.push_back(basis.coefficients(acc));
      return;
    }
    const int gd = gens[i].degree();
    Polynomial cur = acc;
    int cur_deg = deg;
    while (true) {
      rec(i + 1, cur, cur_deg);
      if (gd <= 0 || cur_deg + gd > d) break;
      cur = cur * gens[i];
      cur_deg += gd;
    }
  };
  rec(0, Polynomial::constant(basis.nvars(), 1.0), 0);
  Matrix m(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = cols[k];
  return m;
}

/// Scale to unit largest coefficient, first (highest-degree) term positive.
Polynomial normalized(const Polynomial& p) {
  Polynomial q = p.pruned(1e-10);
  double lead = 0.0;
  int lead_deg = -1;
  for (const auto& [m, c] : q.terms()) {
    if (total_degree(m) > lead_deg || (total_degree(m) == lead_deg && std::abs(c) > std::abs(lead) * (1 + 1e-9))) {
      lead_deg = total_degree(m);
      lead = c;
    }
  }
  const double scale = q.max_abs_coeff();
  if (scale == 0.0) return q;
  return ((lead < 0 ? -1.0 : 1.0) / scale) * q;
}

struct Kernel {
  Matrix basis;
  double above = 0.0;
  double below = 0.0;
};

Kernel numerical_kernel(const Matrix& l, const SearchOptions& options) {
  Eigen::BDCSVD<Matrix> svd(l, Eigen::ComputeThinV);
  const Vector& sv = svd.singularValues();
  const Eigen::Index cols = l.cols();
  const double smax = sv.size() ? sv(0) : 0.0;
  Kernel k;
  if (smax == 0.0) {
    k.basis = Matrix::Identity(cols, cols);
    k.above = std::numeric_limits<double>::quiet_NaN();
    return k;
  }
  const double thr = options.zero_threshold * smax;
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > thr) ++rank;
  const double above = sv(rank - 1) / smax;
  // Columns beyond the singular-value count (wide matrices) are exactly null.
  const double below = rank < sv.size() ? sv(rank) / smax : 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > thr / options.ambiguity_factor && sv(i) < thr * options.ambiguity_factor)
      throw RankAmbiguous(below, above, "singular value " + format_double(sv(i) / smax) + " near the zero threshold");
  }
  k.above = above;
  k.below = below;
  k.basis = svd.matrixV().rightCols(cols - rank);
  return k;
}

/// Columns of `candidates` (orthonormal) outside span(q) (orthonormal), as an
/// orthonormal basis.
Matrix outside(const Matrix& candidates, const Matrix& q) {
  if (candidates.cols() == 0) return candidates;
  const Matrix r = q.cols() ? Matrix(candidates - q * (q.transpose() * candidates)) : candidates;
  Eigen::JacobiSVD<Matrix> svd(r, Eigen::ComputeThinU);
  Eigen::Index rank = 0;
  while (rank < svd.singularValues().size() && svd.singularValues()(rank) > 1e-6) ++rank;
  return svd.matrixU().leftCols(rank);
}

}  // namespace

IntegralBasis search_integrals(const PolySystem& sys, int d, const std::vector<Polynomial>& known,
                               const SearchOptions& options) {
  if (d < 1) throw Error(Errc::invalid_parameters, "degree bound must be >= 1");
  for (const auto& p : known) {
    if (p.nvars() != sys.nvars) throw Error(Errc::dimension_mismatch, "known polynomial arity");
    const double residual = lie_derivative(sys, p).max_abs_coeff();
    if (residual > 1e-9 * std::max(1.0, p.max_abs_coeff()))
      throw Error(Errc::invalid_parameters, "known polynomial " + p.to_string(sys.names) + " is not an integral");
  }

  IntegralBasis out;
  out.degree = d;
  out.names = sys.names;
  std::vector<Polynomial> generators = known;
  for (int k = 1; k <= d; ++k) {
    MonomialBasis domain(sys.nvars, k);
    if (options.shuffle_seed) domain = domain.shuffled(options.shuffle_seed + static_cast<std::uint64_t>(k));
    const Kernel kernel = numerical_kernel(lie_derivative_matrix(sys, domain, MonomialBasis(sys.nvars, k + 1)), options);
    const Matrix generated = linalg::orthonormal_basis(product_span(generators, k, domain));
    const Matrix fresh = outside(kernel.basis, generated);
    for (Eigen::Index c = 0; c < fresh.cols(); ++c) {
      Polynomial p = normalized(domain.polynomial(fresh.col(c)));
      out.new_integrals.push_back(p);
      generators.push_back(std::move(p));
    }
    if (k == d) {
      out.kernel_dim = static_cast<int>(kernel.basis.cols());
      out.sigma_nonzero_min = kernel.above;
      out.sigma_zero_max = kernel.below;
      out.known_dim = linalg::numerical_rank(product_span(known, d, domain));
      out.generated_dim = linalg::numerical_rank(product_span(generators, d, domain));
    }
  }
  return out;
}

}  // namespace liegeo

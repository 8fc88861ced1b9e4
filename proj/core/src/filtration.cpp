#include "liegeo/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "liegeo/error.hpp"

namespace liegeo {

namespace {

constexpr double kSubspaceTol = 1e-10;

Matrix coeff_columns(const std::vector<AlgebraElement>& elements, int d) {
  Matrix m(d, static_cast<Eigen::Index>(elements.size()));
  for (std::size_t k = 0; k < elements.size(); ++k) m.col(k) = elements[k].coeffs();
  return m;
}

Vector bracket_coeffs(const SoBasis& b, const Vector& x, const Vector& y) {
  const Matrix mx = b.to_matrix(x);
  const Matrix my = b.to_matrix(y);
  return b.to_coeffs(mx * my - my * mx);
}

/// Kernel of ad(y) restricted to span(basis), as coefficient columns.
Matrix centralizer_in(const SoBasis& b, const Vector& y, const Matrix& basis) {
  if (basis.cols() == 0) return basis;
  const Matrix ad = ad_matrix(AlgebraElement::from_coeffs(b.n(), y));
  return basis * linalg::null_space(ad * basis);
}

}  // namespace

// -------------------------------------------------------------- Filtration

Filtration::Filtration(int n, const std::vector<std::vector<AlgebraElement>>& chain, std::string name)
    : ambient_(n), name_(std::move(name)) {
  const int d = ambient_.dim();
  if (chain.empty()) throw Error(Errc::invalid_parameters, "empty chain");

  for (int i = 0; i < static_cast<int>(chain.size()); ++i) {
    for (const auto& e : chain[i])
      if (e.n() != n) throw Error(Errc::dimension_mismatch, "level element not in so(n)", i);

    const Matrix span = coeff_columns(chain[i], d);
    Matrix basis = linalg::orthonormal_basis(span, kSubspaceTol);
    if (basis.cols() != span.cols()) {
      throw Error(Errc::linearly_dependent,
                  "spanning set of level " + std::to_string(i) + " is linearly dependent", i);
    }
    if (i > 0) {
      const Matrix& prev = levels_.back();
      const Matrix residual = prev - basis * (basis.transpose() * prev);
      if (prev.cols() > 0 && residual.norm() > kSubspaceTol * std::max(1.0, prev.norm())) {
        throw Error(Errc::not_nested,
                    "g_" + std::to_string(i - 1) + " is not contained in g_" + std::to_string(i), i);
      }
      if (basis.cols() <= prev.cols()) {
        throw Error(Errc::not_strict,
                    "dim g_" + std::to_string(i) + " does not exceed dim g_" + std::to_string(i - 1), i);
      }
    }
    for (Eigen::Index a = 0; a < basis.cols(); ++a) {
      for (Eigen::Index b = a + 1; b < basis.cols(); ++b) {
        const Vector c = bracket_coeffs(ambient_, basis.col(a), basis.col(b));
        const Vector r = c - basis * (basis.transpose() * c);
        if (r.norm() > kSubspaceTol * std::max(1.0, c.norm())) {
          throw Error(Errc::not_subalgebra,
                      "g_" + std::to_string(i) + " is not closed under the bracket", i);
        }
      }
    }
    levels_.push_back(std::move(basis));
  }

  if (levels_.back().cols() != d) {
    throw Error(Errc::not_spanning, "top level does not span so(" + std::to_string(n) + ")", depth());
  }

  complements_.push_back(levels_[0]);
  for (int i = 1; i <= depth(); ++i) {
    Matrix comp = linalg::relative_complement(levels_[i - 1], levels_[i], kSubspaceTol);
    // The complement dimension is fixed by the level dimensions.
    complements_.push_back(comp.leftCols(levels_[i].cols() - levels_[i - 1].cols()));
  }
  for (const auto& c : complements_) projectors_.push_back(c * c.transpose());
}

std::vector<int> Filtration::level_dims() const {
  std::vector<int> dims;
  for (const auto& l : levels_) dims.push_back(static_cast<int>(l.cols()));
  return dims;
}

Matrix Filtration::level_projector(int i) const { return levels_.at(i) * levels_.at(i).transpose(); }

Decomposition decompose(const Filtration& f, const AlgebraElement& x) {
  if (x.n() != f.n()) throw Error(Errc::dimension_mismatch, "decompose");
  Decomposition out;
  Vector partial = Vector::Zero(x.dim());
  for (int i = 0; i <= f.depth(); ++i) {
    Vector part = f.complement_projector(i) * x.coeffs();
    partial += part;
    out.parts.push_back(AlgebraElement::from_coeffs(f.n(), std::move(part)));
    out.partials.push_back(AlgebraElement::from_coeffs(f.n(), partial));
  }
  return out;
}

Matrix span_basis(const std::vector<AlgebraElement>& elements) {
  if (elements.empty()) return Matrix(0, 0);
  return linalg::orthonormal_basis(coeff_columns(elements, elements.front().dim()), kSubspaceTol);
}

// ----------------------------------------------------------------- lie_hull

LieHull lie_hull(const SoBasis& ambient, const std::vector<AlgebraElement>& seed,
                 std::vector<std::string> labels) {
  if (seed.empty()) throw Error(Errc::invalid_parameters, "lie_hull needs a nonempty seed");
  const int d = ambient.dim();
  if (labels.empty())
    for (std::size_t k = 0; k < seed.size(); ++k) labels.push_back("s" + std::to_string(k + 1));

  LieHull hull;
  hull.basis = Matrix(d, 0);

  // Adds c if it leaves the current span; returns true when added.
  auto try_add = [&](const Vector& c) {
    const double scale = c.norm();
    if (scale == 0.0) return false;
    Vector r = c;
    if (hull.basis.cols() > 0) {
      r -= hull.basis * (hull.basis.transpose() * r);
      r -= hull.basis * (hull.basis.transpose() * r);
    }
    if (r.norm() <= kSubspaceTol * scale) return false;
    hull.basis.conservativeResize(Eigen::NoChange, hull.basis.cols() + 1);
    hull.basis.col(hull.basis.cols() - 1) = r / r.norm();
    return true;
  };

  struct Generated {
    std::string expression;
    Vector coeffs;
  };
  std::vector<Generated> generators;
  std::vector<Generated> frontier;
  for (std::size_t k = 0; k < seed.size(); ++k) {
    if (seed[k].n() != ambient.n()) throw Error(Errc::dimension_mismatch, "lie_hull seed");
    if (try_add(seed[k].coeffs())) {
      Generated g{labels.at(k), seed[k].coeffs()};
      hull.certificate.push_back({g.expression, 1, hull.dim(), seed[k]});
      generators.push_back(g);
      frontier.push_back(std::move(g));
    }
  }

  // Left-normed brackets [s, w] of generators with the last frontier span the hull.
  int depth = 1;
  while (!frontier.empty() && hull.dim() < d) {
    ++depth;
    std::vector<Generated> next;
    for (const auto& w : frontier) {
      for (const auto& s : generators) {
        Vector c = bracket_coeffs(ambient, s.coeffs, w.coeffs);
        if (try_add(c)) {
          Generated g{"[" + s.expression + "," + w.expression + "]", std::move(c)};
          hull.certificate.push_back(
              {g.expression, depth, hull.dim(), AlgebraElement::from_coeffs(ambient.n(), g.coeffs)});
          next.push_back(std::move(g));
        }
      }
    }
    frontier = std::move(next);
  }
  return hull;
}

// ----------------------------------------------------------------- isotropy

Matrix isotropy(const Filtration& f, int level, const AlgebraElement& x) {
  if (x.n() != f.n()) throw Error(Errc::dimension_mismatch, "isotropy");
  const Vector partial = f.level_projector(level) * x.coeffs();
  return centralizer_in(f.ambient(), partial, f.level_basis(level));
}

TorusDimension torus_dimension(const Filtration& f, int samples, std::uint64_t seed) {
  if (samples < 1) throw Error(Errc::invalid_parameters, "torus_dimension needs samples >= 1");
  const SoBasis& b = f.ambient();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  TorusDimension best;
  best.samples = samples;
  best.projected_dims.assign(f.depth() + 1, 0);
  best.rank_g0 = std::numeric_limits<int>::max();
  int best_isotropy = std::numeric_limits<int>::max();

  for (int k = 0; k < samples; ++k) {
    Vector x(b.dim());
    for (Eigen::Index c = 0; c < x.size(); ++c) x(c) = unif(rng);

    // rank g_0 = dim of the centralizer of a generic x_0 in g_0 (a Cartan
    // subalgebra when g_0 is reductive); must itself be abelian.
    if (f.level_dim(0) > 0) {
      const Vector x0 = f.complement_projector(0) * x;
      Matrix cent = centralizer_in(b, x0, f.level_basis(0));
      // Greedy abelian reduction for the non-reductive case.
      std::vector<Vector> chosen;
      for (Eigen::Index c = 0; c < cent.cols(); ++c) {
        bool commutes = true;
        for (const auto& v : chosen)
          if (bracket_coeffs(b, v, cent.col(c)).norm() > kSubspaceTol) commutes = false;
        if (commutes) chosen.push_back(cent.col(c));
      }
      best.rank_g0 = std::min(best.rank_g0, static_cast<int>(chosen.size()));
    } else {
      best.rank_g0 = 0;
    }

    std::vector<int> projected(f.depth() + 1, 0);
    int isotropy_sum = 0;
    for (int i = 1; i <= f.depth(); ++i) {
      const Vector partial = f.level_projector(i) * x;
      const Matrix iso_i = centralizer_in(b, partial, f.level_basis(i));
      const Matrix iso_prev = centralizer_in(b, partial, f.level_basis(i - 1));
      isotropy_sum += static_cast<int>(iso_i.cols() + iso_prev.cols());
      projected[i] = iso_i.cols() == 0
                         ? 0
                         : linalg::numerical_rank(f.complement_projector(i) * iso_i, kSubspaceTol);
    }
    if (isotropy_sum < best_isotropy) {
      best_isotropy = isotropy_sum;
      best.projected_dims = projected;
    }
  }
  best.delta = best.rank_g0;
  for (int i = 1; i <= f.depth(); ++i) best.delta += best.projected_dims[i];
  return best;
}

// ------------------------------------------------------------- SRStructure

SRStructure::SRStructure(std::shared_ptr<const Filtration> filtration, std::set<int> index_set,
                         std::vector<double> s)
    : filtration_(std::move(filtration)), index_set_(std::move(index_set)), s_(std::move(s)) {
  if (!filtration_) throw Error(Errc::invalid_parameters, "null filtration");
  const int n = filtration_->depth();
  if (static_cast<int>(s_.size()) != n + 1)
    throw Error(Errc::invalid_parameters, "expected " + std::to_string(n + 1) + " parameters s_i");
  if (index_set_.empty()) throw Error(Errc::invalid_parameters, "empty index set");
  if (static_cast<int>(index_set_.size()) > n)
    throw Error(Errc::invalid_parameters, "index set must be a proper subset of {0..n}");
  for (int i : index_set_)
    if (i < 0 || i > n) throw Error(Errc::invalid_parameters, "index " + std::to_string(i) + " out of range");
  for (int i = 0; i <= n; ++i) {
    const bool in = index_set_.count(i) > 0;
    if (!in && s_[i] != 0.0)
      throw Error(Errc::invalid_parameters, "s_" + std::to_string(i) + " must vanish off the index set");
    if (in && s_[i] == 0.0)
      throw Error(Errc::invalid_parameters, "s_" + std::to_string(i) + " must be nonzero on the index set");
    if (i > 0 && s_[i] == s_[i - 1] && s_[i] != 0.0)
      throw Error(Errc::invalid_parameters,
                  "s_" + std::to_string(i) + " equals s_" + std::to_string(i - 1) + " (reducible chain)");
  }
  const Matrix dist = distribution();
  std::vector<AlgebraElement> seed;
  for (Eigen::Index c = 0; c < dist.cols(); ++c)
    seed.push_back(AlgebraElement::from_coeffs(filtration_->n(), dist.col(c)));
  if (lie_hull(filtration_->ambient(), seed).dim() != filtration_->ambient().dim())
    throw Error(Errc::not_bracket_generating, "distribution does not generate the algebra");
}

Matrix SRStructure::distribution() const {
  const Filtration& f = *filtration_;
  Eigen::Index cols = 0;
  for (int i : index_set_) cols += f.complement_dim(i);
  Matrix d(f.ambient().dim(), cols);
  Eigen::Index c = 0;
  for (int i : index_set_) {
    d.middleCols(c, f.complement_dim(i)) = f.complement_basis(i);
    c += f.complement_dim(i);
  }
  return d;
}

double SRStructure::hamiltonian(const AlgebraElement& x) const { return chain_hamiltonian(*filtration_, s_, x); }

double chain_hamiltonian(const Filtration& f, const std::vector<double>& s, const AlgebraElement& x) {
  double h = 0.0;
  for (int i = 0; i <= f.depth(); ++i) {
    if (s.at(i) == 0.0) continue;
    h += 0.5 * s[i] * (f.complement_basis(i).transpose() * x.coeffs()).squaredNorm();
  }
  return h;
}

}  // namespace liegeo

#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "liegeo/algebra.hpp"

namespace liegeo {

/// Strictly nested chain g_0 < g_1 < ... < g_n = so(N) of subalgebras with
/// the orthogonal splitting g_i = p_0 + ... + p_i. Subspaces are stored as
/// orthonormal column bases in wedge-coefficient space.
class Filtration {
 public:
  /// Validates the chain and derives the complements p_i. Each level is a
  /// spanning set (not necessarily orthonormal). Level 0 may be empty.
  /// Throws Error with the failing level on linearly-dependent, not-nested,
  /// not-strict, not-a-subalgebra and not-spanning chains.
  Filtration(int n, const std::vector<std::vector<AlgebraElement>>& chain, std::string name = {});

  const SoBasis& ambient() const noexcept { return ambient_; }
  int n() const noexcept { return ambient_.n(); }
  /// Index of the top level (the chain has depth() + 1 levels).
  int depth() const noexcept { return static_cast<int>(levels_.size()) - 1; }
  const std::string& name() const noexcept { return name_; }

  const Matrix& level_basis(int i) const { return levels_.at(i); }
  const Matrix& complement_basis(int i) const { return complements_.at(i); }
  /// Orthogonal projector onto p_i.
  const Matrix& complement_projector(int i) const { return projectors_.at(i); }
  int level_dim(int i) const { return static_cast<int>(levels_.at(i).cols()); }
  int complement_dim(int i) const { return static_cast<int>(complements_.at(i).cols()); }
  std::vector<int> level_dims() const;

  /// Projector onto g_i = p_0 + ... + p_i.
  Matrix level_projector(int i) const;

 private:
  SoBasis ambient_;
  std::string name_;
  std::vector<Matrix> levels_;
  std::vector<Matrix> complements_;
  std::vector<Matrix> projectors_;
};

/// x = x_0 + ... + x_n with x_i in p_i; partials[i] = x_0 + ... + x_i.
struct Decomposition {
  std::vector<AlgebraElement> parts;
  std::vector<AlgebraElement> partials;
};

Decomposition decompose(const Filtration& f, const AlgebraElement& x);

/// Orthonormal basis of the span of a list of elements.
Matrix span_basis(const std::vector<AlgebraElement>& elements);

/// Step of a bracket-generation certificate: a left-normed iterated bracket of
/// seed elements that contributed a new direction.
struct HullStep {
  std::string expression;
  int depth = 1;
  int dim_after = 0;
  AlgebraElement element;
};

struct LieHull {
  Matrix basis;
  std::vector<HullStep> certificate;
  int dim() const { return static_cast<int>(basis.cols()); }
};

/// Smallest bracket-closed subspace containing `seed`. `labels` name the
/// seed elements in the certificate (defaults to s1, s2, ...).
LieHull lie_hull(const SoBasis& ambient, const std::vector<AlgebraElement>& seed,
                 std::vector<std::string> labels = {});

/// Kernel of ad(x_{g_i}) restricted to g_i.
Matrix isotropy(const Filtration& f, int level, const AlgebraElement& x);

struct TorusDimension {
  int delta = 0;
  int rank_g0 = 0;
  /// dim pr_{p_i}(g_i(x_{g_i})) for i = 1..n (entry 0 unused).
  std::vector<int> projected_dims;
  int samples = 0;
  /// Genericity is established by random sampling, not proven.
  bool sampled = true;
};

TorusDimension torus_dimension(const Filtration& f, int samples = 32, std::uint64_t seed = 1);

/// Filtration plus index set I and parameters s_0..s_n defining
/// d = sum_{i in I} p_i and H_sR(x) = 1/2 sum s_i <x_i, x_i>.
class SRStructure {
 public:
  /// Validates: I a proper nonempty subset of {0..n}; s_i = 0 off I and
  /// s_i != 0 on I; consecutive parameters distinct unless both vanish;
  /// d bracket-generating.
  SRStructure(std::shared_ptr<const Filtration> filtration, std::set<int> index_set,
              std::vector<double> s);

  const Filtration& filtration() const noexcept { return *filtration_; }
  std::shared_ptr<const Filtration> filtration_ptr() const noexcept { return filtration_; }
  const std::set<int>& index_set() const noexcept { return index_set_; }
  const std::vector<double>& s() const noexcept { return s_; }

  /// Orthonormal basis of d.
  Matrix distribution() const;
  double hamiltonian(const AlgebraElement& x) const;

 private:
  std::shared_ptr<const Filtration> filtration_;
  std::set<int> index_set_;
  std::vector<double> s_;
};

/// H = 1/2 sum_i s_i <x_i, x_i> for any parameter vector.
double chain_hamiltonian(const Filtration& f, const std::vector<double>& s, const AlgebraElement& x);

// ------------------------------------------------------------------ catalog

struct CatalogEntry {
  std::string name;
  std::shared_ptr<const Filtration> filtration;
  std::set<int> index_set;
  std::vector<double> s;

  SRStructure structure() const { return SRStructure(filtration, index_set, s); }
};

/// Built-in chains: su3-g2-so7, u1-su2-u2-so4, so2-so3-so4, so2-so2so2-so4,
/// line-so3-so4, lanci(n; l_1,...,l_p), stiefel(n), stiefel-contact(n).
CatalogEntry catalog(std::string_view name);
std::vector<std::string> catalog_names();

/// The 14 vectors P_0..P_6, Q_0..Q_6 spanning g2 < so(7) (in that order).
std::vector<AlgebraElement> g2_basis();
/// The 7 vectors R_0..R_6 spanning the complement of g2 in so(7).
std::vector<AlgebraElement> g2_complement_basis();

/// v_1 = sum_{1<k<n} e_{k,k+1}, v_2 = e_12: two elements generating so(n).
std::vector<AlgebraElement> two_generator_seed(int n);

/// so(l_1) + so(l_2) + ... block-diagonal subalgebra of so(n) on
/// consecutive index ranges starting at `offset` (1-based).
std::vector<AlgebraElement> block_subalgebra(int n, const std::vector<int>& blocks, int offset = 1);

}  // namespace liegeo

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "liegeo/algebra.hpp"
#include "liegeo/flows.hpp"
#include "liegeo/polynomial.hpp"

namespace liegeo {

// ------------------------------------------------------------ conserved quantities

struct So4Casimirs {
  double i1 = 0.0;  // sum of x_ij^2
  double i2 = 0.0;  // x12 x34 - x13 x24 + x14 x23
};

/// Throws Errc::dimension_mismatch unless n = 4.
So4Casimirs casimirs_so4(const AlgebraElement& x);

/// Ad_g(x).
AlgebraElement momentum_map(const GroupElement& g, const AlgebraElement& x);

/// 1/2 <omega(x), x>: the quadratic Hamiltonian whose gradient is the field's
/// angular velocity.
double hamiltonian(const VectorFieldSpec& spec, const AlgebraElement& x);

/// Monitor names accepted by make_monitor: hamiltonian, casimirs, norm,
/// momentum, manakov-integrals, isotropy-a.
std::vector<std::string> monitor_names();
Monitor make_monitor(const std::string& name, const VectorFieldSpec& spec);

// ------------------------------------------------------------ polynomial systems

/// Polynomial vector field x_k' = rhs[k](x) in m variables.
struct PolySystem {
  int nvars = 0;
  std::vector<std::string> names;
  std::vector<Polynomial> rhs;

  Vector evaluate(const Vector& x) const;
};

/// Polynomial form of the Euler part of `spec` restricted to the coordinate
/// subspace spanned by `variables` (flat wedge indices; all when empty).
/// The subspace must be invariant and the field at most quadratic; both are
/// checked at random points (Errc::invalid_parameters).
PolySystem extract_poly_system(const VectorFieldSpec& spec, std::vector<int> variables = {},
                               std::uint64_t seed = 7);

/// The zero field in m variables.
PolySystem zero_poly_system(int nvars);

/// Known quadratic integrals of the rank-two so(4) field, in the six wedge
/// coordinates x12, x13, x14, x23, x24, x34.
Polynomial rank2_hamiltonian_poly(double nu1, double nu2);
Polynomial casimir_i1_poly();
Polynomial casimir_i2_poly();

/// Polynomial of a scalar function of degree <= 2 on R^m, by polarization.
Polynomial quadratic_polynomial(const std::function<double(const Vector&)>& f, int nvars);

/// Lie derivative of p along sys.
Polynomial lie_derivative(const PolySystem& sys, const Polynomial& p);

/// Matrix of P -> sum_k x_k' dP/dx_k from span(domain) to span(codomain).
Matrix lie_derivative_matrix(const PolySystem& sys, const MonomialBasis& domain, const MonomialBasis& codomain);
/// Graded bases of degree <= d and <= d + 1.
Matrix lie_derivative_matrix(const PolySystem& sys, int d);

struct SearchOptions {
  /// Singular values below this fraction of the largest count as zero.
  double zero_threshold = 1e-9;
  /// Singular values within this factor of the threshold (either side) make
  /// the rank ambiguous.
  double ambiguity_factor = 100.0;
  /// Nonzero: enumerate monomials in a shuffled order.
  std::uint64_t shuffle_seed = 0;
};

struct IntegralBasis {
  int degree = 0;
  int kernel_dim = 0;
  /// dim span{products of known integrals and 1 of degree <= d}.
  int known_dim = 0;
  /// dim span{products of known and newly found integrals and 1}; equals
  /// kernel_dim when the search is complete.
  int generated_dim = 0;
  std::vector<Polynomial> new_integrals;
  /// Edges of the singular-value gap at degree d, relative to the largest:
  /// the smallest value counted as nonzero and the largest counted as zero.
  double sigma_nonzero_min = 0.0;
  double sigma_zero_max = 0.0;
  std::vector<std::string> names;
};

/// Degree by degree: integrals at degree k not generated (as polynomials) by
/// known and previously found integrals are reported as new. Throws
/// RankAmbiguous when a singular value falls in the ambiguity band and
/// Errc::invalid_parameters when a known polynomial is not an integral.
IntegralBasis search_integrals(const PolySystem& sys, int d, const std::vector<Polynomial>& known,
                               const SearchOptions& options = {});

}  // namespace liegeo

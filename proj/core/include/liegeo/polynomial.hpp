#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "liegeo/linalg.hpp"

namespace liegeo {

/// Exponent vector of a monomial in m variables.
using Monomial = std::vector<int>;

int total_degree(const Monomial& m);

/// Sparse real polynomial in a fixed number of variables.
class Polynomial {
 public:
  explicit Polynomial(int nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(int nvars, double c);
  static Polynomial variable(int nvars, int k);

  int nvars() const noexcept { return nvars_; }
  const std::map<Monomial, double>& terms() const noexcept { return terms_; }
  /// Adds c to the coefficient of m (drops the term if it cancels to zero).
  void add(const Monomial& m, double c);
  double coeff(const Monomial& m) const;
  /// -1 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return terms_.empty(); }

  double evaluate(const Vector& x) const;
  Polynomial derivative(int k) const;
  /// Drops coefficients with |c| <= tol * max |c|.
  Polynomial pruned(double tol) const;
  double max_abs_coeff() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  friend Polynomial operator*(double a, const Polynomial& p);

  /// e.g. "0.5*x12^2 + x23*x34"; `names` default to x1, x2, ...
  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  int nvars_;
  std::map<Monomial, double> terms_;
};

/// All monomials of total degree <= d in m variables, graded lexicographic
/// order unless a permutation is applied.
class MonomialBasis {
 public:
  MonomialBasis(int nvars, int max_degree);

  int nvars() const noexcept { return nvars_; }
  int max_degree() const noexcept { return max_degree_; }
  std::size_t size() const noexcept { return monomials_.size(); }
  const Monomial& operator[](std::size_t k) const { return monomials_[k]; }
  /// Throws std::out_of_range for monomials outside the basis.
  std::size_t index(const Monomial& m) const { return index_.at(m); }
  bool contains(const Monomial& m) const { return index_.count(m) != 0; }

  /// Same monomials in a pseudo-random order.
  MonomialBasis shuffled(std::uint64_t seed) const;

  Vector coefficients(const Polynomial& p) const;
  Polynomial polynomial(const Vector& coeffs) const;

 private:
  MonomialBasis() = default;
  void reindex();

  int nvars_ = 0;
  int max_degree_ = 0;
  std::vector<Monomial> monomials_;
  std::map<Monomial, std::size_t> index_;
};

}  // namespace liegeo

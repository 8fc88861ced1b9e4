#include "liegeo/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "liegeo/error.hpp"

namespace liegeo {

int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

Polynomial Polynomial::constant(int nvars, double c) {
  Polynomial p(nvars);
  p.add(Monomial(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int k) {
  Polynomial p(nvars);
  Monomial m(nvars, 0);
  m.at(k) = 1;
  p.add(m, 1.0);
  return p;
}

void Polynomial::add(const Monomial& m, double c) {
  if (static_cast<int>(m.size()) != nvars_) throw Error(Errc::dimension_mismatch, "monomial arity");
  if (c == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double Polynomial::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
  return d;
}

double Polynomial::evaluate(const Vector& x) const {
  if (x.size() != nvars_) throw Error(Errc::dimension_mismatch, "polynomial evaluation");
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double term = c;
    for (int k = 0; k < nvars_; ++k)
      for (int e = 0; e < m[k]; ++e) term *= x(k);
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::derivative(int k) const {
  Polynomial out(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m.at(k) == 0) continue;
    Monomial dm = m;
    --dm[k];
    out.add(dm, c * m[k]);
  }
  return out;
}

double Polynomial::max_abs_coeff() const {
  double mx = 0.0;
  for (const auto& [m, c] : terms_) mx = std::max(mx, std::abs(c));
  return mx;
}

Polynomial Polynomial::pruned(double tol) const {
  const double cut = tol * max_abs_coeff();
  Polynomial out(nvars_);
  for (const auto& [m, c] : terms_)
    if (std::abs(c) > cut) out.terms_.emplace(m, c);
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  if (o.nvars_ != nvars_) throw Error(Errc::dimension_mismatch, "polynomial sum");
  Polynomial out = *this;
  for (const auto& [m, c] : o.terms_) out.add(m, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-1.0) * o; }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (o.nvars_ != nvars_) throw Error(Errc::dimension_mismatch, "polynomial product");
  Polynomial out(nvars_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m(nvars_);
      for (int k = 0; k < nvars_; ++k) m[k] = ma[k] + mb[k];
      out.add(m, ca * cb);
    }
  }
  return out;
}

Polynomial operator*(double a, const Polynomial& p) {
  Polynomial out(p.nvars_);
  if (a == 0.0) return out;
  for (const auto& [m, c] : p.terms_) out.terms_.emplace(m, a * c);
  return out;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  auto name = [&](int k) { return k < static_cast<int>(names.size()) ? names[k] : "x" + std::to_string(k + 1); };
  // Highest degree first reads naturally.
  std::vector<std::pair<Monomial, double>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return total_degree(a.first) > total_degree(b.first); });
  std::ostringstream out;
  out.precision(12);
  bool first = true;
  for (const auto& [m, c] : sorted) {
    double mag = std::abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    std::string factors;
    for (int k = 0; k < nvars_; ++k) {
      if (m[k] == 0) continue;
      if (!factors.empty()) factors += '*';
      factors += name(k);
      if (m[k] > 1) factors += '^' + std::to_string(m[k]);
    }
    if (factors.empty()) {
      out << mag;
    } else if (mag == 1.0) {
      out << factors;
    } else {
      out << mag << '*' << factors;
    }
  }
  return out.str();
}

// ------------------------------------------------------------ MonomialBasis

namespace {

/// Exponent vectors of total degree exactly `deg`, lexicographically descending.
void homogeneous(int nvars, int deg, int k, Monomial& cur, std::vector<Monomial>& out) {
  if (k == nvars - 1) {
    cur[k] = deg;
    out.push_back(cur);
    return;
  }
  for (int e = deg; e >= 0; --e) {
    cur[k] = e;
    homogeneous(nvars, deg - e, k + 1, cur, out);
  }
  cur[k] = 0;
}

}  // namespace

MonomialBasis::MonomialBasis(int nvars, int max_degree) : nvars_(nvars), max_degree_(max_degree) {
  if (nvars < 1 || max_degree < 0) throw Error(Errc::invalid_parameters, "monomial basis needs m >= 1, d >= 0");
  Monomial cur(nvars, 0);
  for (int deg = 0; deg <= max_degree; ++deg) homogeneous(nvars, deg, 0, cur, monomials_);
  reindex();
}

void MonomialBasis::reindex() {
  index_.clear();
  for (std::size_t k = 0; k < monomials_.size(); ++k) index_.emplace(monomials_[k], k);
}

MonomialBasis MonomialBasis::shuffled(std::uint64_t seed) const {
  MonomialBasis out;
  out.nvars_ = nvars_;
  out.max_degree_ = max_degree_;
  out.monomials_ = monomials_;
  std::mt19937_64 rng(seed);
  std::shuffle(out.monomials_.begin(), out.monomials_.end(), rng);
  out.reindex();
  return out;
}

Vector MonomialBasis::coefficients(const Polynomial& p) const {
  if (p.nvars() != nvars_) throw Error(Errc::dimension_mismatch, "polynomial arity");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(size()));
  for (const auto& [m, c] : p.terms()) {
    auto it = index_.find(m);
    if (it == index_.end()) throw Error(Errc::invalid_parameters, "polynomial exceeds the basis degree");
    v(static_cast<Eigen::Index>(it->second)) = c;
  }
  return v;
}

Polynomial MonomialBasis::polynomial(const Vector& coeffs) const {
  if (coeffs.size() != static_cast<Eigen::Index>(size())) throw Error(Errc::dimension_mismatch, "coefficient vector");
  Polynomial p(nvars_);
  for (std::size_t k = 0; k < size(); ++k) p.add(monomials_[k], coeffs(static_cast<Eigen::Index>(k)));
  return p;
}

}  // namespace liegeo

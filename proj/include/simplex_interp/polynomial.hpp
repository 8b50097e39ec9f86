#pragma once

#include <Eigen/Dense>

#include <initializer_list>
#include <utility>

#include "simplex_interp/errors.hpp"
#include "simplex_interp/scalar.hpp"

namespace simplex_interp {

/// Univariate real polynomial in the monomial basis, coefficient i belongs
/// to x^i. Trailing coefficients that are exactly zero are trimmed, so the
/// zero polynomial has an empty coefficient vector and degree() == -1
/// (standing in for degree -infinity).
template <class Scalar>
class Polynomial {
 public:
  using Coeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Polynomial() = default;

  explicit Polynomial(Coeffs c) : coeffs_(std::move(c)) { trim(); }

  Polynomial(std::initializer_list<Scalar> c) {
    coeffs_.resize(static_cast<Eigen::Index>(c.size()));
    Eigen::Index i = 0;
    for (const auto& v : c) coeffs_[i++] = v;
    trim();
  }

  static Polynomial constant(const Scalar& c) {
    Coeffs v(1);
    v[0] = c;
    return Polynomial(std::move(v));
  }

  /// c * x^power
  static Polynomial monomial(Eigen::Index power, const Scalar& c = Scalar(1)) {
    Coeffs v = Coeffs::Zero(power + 1);
    v[power] = c;
    return Polynomial(std::move(v));
  }

  const Coeffs& coeffs() const { return coeffs_; }
  Eigen::Index degree() const { return coeffs_.size() - 1; }
  bool is_zero() const { return coeffs_.size() == 0; }

  /// Horner evaluation.
  Scalar operator()(const Scalar& x) const {
    if (is_zero()) return Scalar(0);
    Scalar acc = coeffs_[coeffs_.size() - 1];
    for (Eigen::Index i = coeffs_.size() - 2; i >= 0; --i) {
      acc *= x;
      acc += coeffs_[i];
    }
    return acc;
  }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return Polynomial();
    Coeffs d(coeffs_.size() - 1);
    for (Eigen::Index i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Scalar(i);
    return Polynomial(std::move(d));
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    r.coeffs_ = -r.coeffs_;
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    const Eigen::Index n = std::max(a.coeffs_.size(), b.coeffs_.size());
    Coeffs c = Coeffs::Zero(n);
    c.head(a.coeffs_.size()) = a.coeffs_;
    c.head(b.coeffs_.size()) += b.coeffs_;
    return Polynomial(std::move(c));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    Coeffs c = Coeffs::Zero(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (Eigen::Index i = 0; i < a.coeffs_.size(); ++i)
      for (Eigen::Index j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(const Scalar& s, const Polynomial& p) {
    if (s == Scalar(0)) return Polynomial();
    Polynomial r = p;
    r.coeffs_ *= s;
    return r;
  }

  friend Polynomial operator*(const Polynomial& p, const Scalar& s) { return s * p; }

  bool operator==(const Polynomial& o) const {
    return coeffs_.size() == o.coeffs_.size() && coeffs_ == o.coeffs_;
  }

 private:
  void trim() {
    Eigen::Index n = coeffs_.size();
    while (n > 0 && coeffs_[n - 1] == Scalar(0)) --n;
    coeffs_.conservativeResize(n);
  }

  Coeffs coeffs_;
};

/// Evaluates p at x (free-function spelling of Polynomial::operator()).
template <class Scalar>
Scalar eval(const Polynomial<Scalar>& p, const Scalar& x) {
  return p(x);
}

/// Chebyshev polynomial of the first kind T_n, built by the recurrence
/// T_0 = 1, T_1 = x, T_{n+1} = 2 x T_n - T_{n-1}. Coefficients are integers,
/// hence exact at any working precision.
template <class Scalar>
Polynomial<Scalar> chebyshev_polynomial(int n) {
  if (n < 0) throw InvalidDegree(n);
  Polynomial<Scalar> prev = Polynomial<Scalar>::constant(Scalar(1));
  if (n == 0) return prev;
  Polynomial<Scalar> cur = Polynomial<Scalar>::monomial(1);
  const Polynomial<Scalar> two_x = Polynomial<Scalar>::monomial(1, Scalar(2));
  for (int i = 1; i < n; ++i) {
    Polynomial<Scalar> next = two_x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace simplex_interp

#pragma once

#include <Eigen/Dense>

#include <vector>

#include "simplex_interp/errors.hpp"
#include "simplex_interp/nodes.hpp"
#include "simplex_interp/polynomial.hpp"
#include "simplex_interp/scalar.hpp"

namespace simplex_interp {

/// Product formula for the Vandermonde determinant of the node matrix,
/// prod_{i<j} (x_j - x_i).
template <class Scalar>
Scalar vandermonde_det(const NodeSet<Scalar>& nodes) {
  Scalar det = Scalar(1);
  const Eigen::Index d = nodes.points.size();
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) det *= nodes.points[j] - nodes.points[i];
  return det;
}

/// The Lagrange fundamental polynomials lambda_j for a node set, obtained by
/// inverting the Vandermonde matrix A with row i = (1, x_i, ..., x_i^k).
/// Column j of A^{-1} lists the monomial coefficients of lambda_j.
template <class Scalar>
struct LagrangeBasis {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  NodeSet<Scalar> nodes;
  Matrix matrix_a;  // Vandermonde matrix, d x d
  Scalar det;       // det(matrix_a), from the LU factorization
  std::vector<Polynomial<Scalar>> lambdas;

  explicit LagrangeBasis(const NodeSet<Scalar>& node_set) : nodes(node_set) {
    const Eigen::Index d = nodes.points.size();
    matrix_a.resize(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      Scalar pw = Scalar(1);
      for (Eigen::Index j = 0; j < d; ++j) {
        matrix_a(i, j) = pw;
        pw *= nodes.points[i];
      }
    }
    Eigen::FullPivLU<Matrix> lu(matrix_a);
    det = lu.determinant();
    using std::abs;
    if (abs(det) <= scalar_traits<Scalar>::singular_threshold()) {
      throw SingularSystem("node matrix is numerically singular");
    }
    const Matrix inv = lu.inverse();
    lambdas.reserve(static_cast<std::size_t>(d));
    for (Eigen::Index j = 0; j < d; ++j) {
      Vector col = inv.col(j);
      lambdas.emplace_back(col);
    }
  }

  int k() const { return nodes.k; }
  int count() const { return static_cast<int>(lambdas.size()); }  // d = k+1
};

template <class Scalar>
LagrangeBasis<Scalar> build(const NodeSet<Scalar>& nodes) {
  return LagrangeBasis<Scalar>(nodes);
}

/// Values (lambda_0(x), ..., lambda_k(x)); these are the barycentric
/// coordinates of (1, x, ..., x^k) relative to the node simplex.
template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> barycentric_coords(const LagrangeBasis<Scalar>& basis,
                                                            const Scalar& x) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v(basis.count());
  for (int j = 0; j < basis.count(); ++j) v[j] = basis.lambdas[j](x);
  return v;
}

/// Interpolant through (x_j, values[j]) as a polynomial in the monomial basis.
template <class Scalar>
Polynomial<Scalar> interpolate(const LagrangeBasis<Scalar>& basis,
                               const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& values) {
  if (values.size() != basis.count()) {
    throw InputError("value count does not match node count");
  }
  Polynomial<Scalar> p;  // zero
  for (int j = 0; j < basis.count(); ++j) p = p + values[j] * basis.lambdas[j];
  return p;
}

}  // namespace simplex_interp

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <sstream>
#include <vector>

#include "simplex_interp/errors.hpp"
#include "simplex_interp/polynomial.hpp"
#include "simplex_interp/scalar.hpp"

namespace simplex_interp {

/// An admissible set of d = k+1 strictly increasing interpolation nodes
/// in [-1, 1] for degree-k polynomial interpolation.
template <class Scalar>
struct NodeSet {
  int k = 0;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> points;  // ascending, size k+1

  int count() const { return static_cast<int>(points.size()); }  // d
};

/// Equispaced nodes -1 + 2j/k, j = 0..k.
template <class Scalar>
NodeSet<Scalar> regular_nodes(int k) {
  if (k < 1) throw InvalidDegree(k);
  NodeSet<Scalar> n;
  n.k = k;
  n.points.resize(k + 1);
  for (int j = 0; j <= k; ++j) n.points[j] = Scalar(2 * j) / Scalar(k) - Scalar(1);
  return n;
}

/// The k+1 zeros of the Chebyshev polynomial T_{k+1}, ascending. Values come
/// from the cosine formula, polished by one Newton step against the
/// recurrence-built T_{k+1} and mirrored so the set is exactly symmetric.
template <class Scalar>
NodeSet<Scalar> chebyshev_nodes(int k) {
  if (k < 1) throw InvalidDegree(k);
  const int d = k + 1;
  const Polynomial<Scalar> t = chebyshev_polynomial<Scalar>(d);
  const Polynomial<Scalar> dt = t.derivative();
  using std::atan;
  const Scalar pi = Scalar(4) * atan(Scalar(1));

  NodeSet<Scalar> n;
  n.k = k;
  n.points.resize(d);
  for (int j = 0; j < d / 2; ++j) {
    // largest zeros first: j = 0 gives cos(pi/(2d))
    using std::cos;
    Scalar x = cos(pi * Scalar(2 * j + 1) / Scalar(2 * d));
    x -= t(x) / dt(x);
    n.points[d - 1 - j] = x;
    n.points[j] = -x;
  }
  if (d % 2 == 1) n.points[d / 2] = Scalar(0);
  return n;
}

/// Sorts the given values and checks them as an interpolation node set.
template <class Scalar>
NodeSet<Scalar> validate(std::vector<Scalar> points) {
  if (points.size() < 2) throw TooFewNodes(points.size());
  std::sort(points.begin(), points.end());
  for (const Scalar& x : points) {
    if (x < Scalar(-1) || x > Scalar(1)) {
      std::ostringstream os;
      os << x;
      throw NodeOutOfRange(os.str());
    }
  }
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i] < points[i + 1])) {
      std::ostringstream os;
      os << points[i];
      throw DuplicateNodes(os.str());
    }
  }
  NodeSet<Scalar> n;
  n.k = static_cast<int>(points.size()) - 1;
  n.points.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) n.points[i] = points[i];
  return n;
}

}  // namespace simplex_interp

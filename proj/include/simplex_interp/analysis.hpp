#pragma once

#include <Eigen/Dense>

#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "simplex_interp/basis.hpp"
#include "simplex_interp/errors.hpp"
#include "simplex_interp/polynomial.hpp"
#include "simplex_interp/roots.hpp"
#include "simplex_interp/scalar.hpp"

namespace simplex_interp {

/// A maximizer of the Lebesgue function together with the coordinate vector
/// (lambda_1(x), ..., lambda_d(x)) there.
template <class Scalar>
struct NormWitness {
  Scalar x;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> coords;
};

template <class Scalar>
struct NormResult {
  Scalar value;  // ||P|| = max over [-1,1] of sum_j |lambda_j(x)|
  std::vector<NormWitness<Scalar>> witnesses;  // ascending in x, never empty
};

template <class Scalar>
struct XiResult {
  Scalar value;     // xi = d * max_j max_x (-lambda_j(x)) + 1, clamped to 1
  bool contained;   // true iff every lambda_j >= -tau on [-1,1] (value = 1)
  int worst_index;  // 1-based j attaining the outer max (lambda_1..lambda_d)
  Scalar worst_point;
};

template <class Scalar>
struct OnePointCertificate {
  bool exists = false;
  std::optional<Scalar> x_star;          // present iff exists
  std::optional<int> negative_index;     // 1-based, present iff exists
};

template <class Scalar>
struct InequalityReport {
  Scalar lower;
  Scalar xi;
  Scalar upper;
  bool right_equality;          // |xi - upper| <= 1e-10
  std::optional<Scalar> ratio;  // (xi-1)/(||P||-1); absent when ||P|| = 1
};

/// Exact maximization of the Lebesgue function L(x) = sum_j |lambda_j(x)|.
///
/// Every root of every lambda_j inside [-1,1] is a node: lambda_j has degree
/// k and already vanishes at the k other nodes, so it has no further roots.
/// Between consecutive breakpoints (nodes plus the segment endpoints) each
/// lambda_j keeps one sign and L coincides with the polynomial
/// sum_j sign_j * lambda_j, which max_on_interval certifies piece by piece.
template <class Scalar>
NormResult<Scalar> projector_norm(const LagrangeBasis<Scalar>& basis) {
  const int d = basis.count();
  std::vector<Scalar> breaks;
  breaks.reserve(static_cast<std::size_t>(d) + 2);
  breaks.push_back(Scalar(-1));
  for (int i = 0; i < d; ++i) {
    if (basis.nodes.points[i] > breaks.back()) breaks.push_back(basis.nodes.points[i]);
  }
  if (Scalar(1) > breaks.back()) breaks.push_back(Scalar(1));

  std::vector<MaxResult<Scalar>> piece_max;
  piece_max.reserve(breaks.size() - 1);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const Scalar mid = (breaks[i] + breaks[i + 1]) / Scalar(2);
    Polynomial<Scalar> piece;
    for (int j = 0; j < d; ++j) {
      const int s = exact_sign(basis.lambdas[j](mid));
      if (s > 0)
        piece = piece + basis.lambdas[j];
      else if (s < 0)
        piece = piece - basis.lambdas[j];
    }
    piece_max.push_back(max_on_interval(piece, breaks[i], breaks[i + 1]));
  }

  NormResult<Scalar> result;
  result.value = piece_max.front().value;
  for (const auto& pm : piece_max)
    if (pm.value > result.value) result.value = pm.value;

  const Scalar window = Scalar(1e-12);
  const Scalar dedupe = scalar_traits<Scalar>::root_width();
  for (const auto& pm : piece_max) {
    if (pm.value < result.value - window) continue;
    using std::abs;
    if (!result.witnesses.empty() && abs(pm.argmax - result.witnesses.back().x) <= dedupe)
      continue;
    result.witnesses.push_back({pm.argmax, barycentric_coords(basis, pm.argmax)});
  }
  return result;
}

/// Absorption coefficient of the moment-curve arc by the node simplex:
/// xi = d * max_j max_{x in [-1,1]} (-lambda_j(x)) + 1, with xi = 1 (and
/// containment) when no lambda_j dips below -tau.
template <class Scalar>
XiResult<Scalar> absorption_coefficient(const LagrangeBasis<Scalar>& basis) {
  const int d = basis.count();
  XiResult<Scalar> result;
  Scalar big_m;
  for (int j = 0; j < d; ++j) {
    const MaxResult<Scalar> mr = max_on_interval(-basis.lambdas[j], Scalar(-1), Scalar(1));
    if (j == 0 || mr.value > big_m) {
      big_m = mr.value;
      result.worst_index = j + 1;
      result.worst_point = mr.argmax;
    }
  }
  if (big_m <= scalar_traits<Scalar>::zero_tolerance()) {
    result.value = Scalar(1);
    result.contained = true;
  } else {
    result.value = Scalar(d) * big_m + Scalar(1);
    result.contained = false;
  }
  return result;
}

/// Variant taking a precomputed norm result (analyze() reuses it).
template <class Scalar>
OnePointCertificate<Scalar> find_one_point(const LagrangeBasis<Scalar>& basis,
                                           const NormResult<Scalar>& norm) {
  (void)basis;
  const Scalar tau = scalar_traits<Scalar>::zero_tolerance();
  for (const NormWitness<Scalar>& w : norm.witnesses) {
    int negatives = 0;
    int neg_index = 0;
    for (Eigen::Index j = 0; j < w.coords.size(); ++j) {
      if (w.coords[j] < -tau) {
        ++negatives;
        neg_index = static_cast<int>(j) + 1;
      }
    }
    if (negatives == 1) {
      OnePointCertificate<Scalar> cert;
      cert.exists = true;
      cert.x_star = w.x;
      cert.negative_index = neg_index;
      return cert;
    }
  }
  return {};
}

/// Scans the norm maximizers in ascending order for one whose coordinate
/// vector has exactly one entry below -tau (entries within +-tau count as
/// nonnegative); the first such point certifies tightness of the upper bound
/// in the inequality sandwich.
template <class Scalar>
OnePointCertificate<Scalar> find_one_point(const LagrangeBasis<Scalar>& basis) {
  return find_one_point(basis, projector_norm(basis));
}

template <class Scalar>
InequalityReport<Scalar> inequality_report(const LagrangeBasis<Scalar>& basis,
                                           const NormResult<Scalar>& norm,
                                           const XiResult<Scalar>& xi,
                                           const OnePointCertificate<Scalar>& one_point) {
  const int d = basis.count();
  InequalityReport<Scalar> rep;
  rep.xi = xi.value;
  rep.lower = (Scalar(1) + Scalar(1) / Scalar(d - 1)) * (norm.value - Scalar(1)) / Scalar(2) +
              Scalar(1);
  rep.upper = Scalar(d) * (norm.value - Scalar(1)) / Scalar(2) + Scalar(1);
  using std::abs;
  rep.right_equality = abs(rep.xi - rep.upper) <= Scalar(1e-10);
  if (norm.value > Scalar(1) + scalar_traits<Scalar>::zero_tolerance()) {
    rep.ratio = (rep.xi - Scalar(1)) / (norm.value - Scalar(1));
  }
  if (one_point.exists && !rep.right_equality) {
    throw std::logic_error(
        "a 1-point exists but the upper inequality bound is not attained; "
        "maximization is inconsistent");
  }
  return rep;
}

/// Two-sided bounds on xi in terms of the norm:
/// (1 + 1/(d-1))(||P||-1)/2 + 1 <= xi <= d(||P||-1)/2 + 1,
/// with the ratio (xi-1)/(||P||-1) reported whenever ||P|| > 1. A 1-point
/// forces equality on the right; that implication is asserted here.
template <class Scalar>
InequalityReport<Scalar> inequality_report(const LagrangeBasis<Scalar>& basis) {
  const NormResult<Scalar> norm = projector_norm(basis);
  const XiResult<Scalar> xi = absorption_coefficient(basis);
  return inequality_report(basis, norm, xi, find_one_point(basis, norm));
}

/// Everything analysis offers for one node set, computing the norm once.
template <class Scalar>
struct AnalysisReport {
  NormResult<Scalar> norm;
  XiResult<Scalar> xi;
  OnePointCertificate<Scalar> one_point;
  InequalityReport<Scalar> inequalities;
};

template <class Scalar>
AnalysisReport<Scalar> analyze(const LagrangeBasis<Scalar>& basis) {
  AnalysisReport<Scalar> rep;
  rep.norm = projector_norm(basis);
  rep.xi = absorption_coefficient(basis);
  rep.one_point = find_one_point(basis, rep.norm);
  rep.inequalities = inequality_report(basis, rep.norm, rep.xi, rep.one_point);
  return rep;
}

/// Closed forms for the symmetric quadratic node set {-r, 0, r}:
/// xi = max(11/8, 3/r^2 - 2) and ||P|| = max(5/4, 2/r^2 - 1).
template <class Scalar>
struct QuadraticClosedForm {
  Scalar xi;
  Scalar norm;
};

template <class Scalar>
QuadraticClosedForm<Scalar> quadratic_closed_form(const Scalar& r) {
  if (!(r > Scalar(0)) || r > Scalar(1)) {
    std::ostringstream os;
    os << r;
    throw InvalidRadius(os.str());
  }
  const Scalar r2 = r * r;
  QuadraticClosedForm<Scalar> q;
  q.xi = Scalar(11) / Scalar(8);
  if (Scalar(3) / r2 - Scalar(2) > q.xi) q.xi = Scalar(3) / r2 - Scalar(2);
  q.norm = Scalar(5) / Scalar(4);
  if (Scalar(2) / r2 - Scalar(1) > q.norm) q.norm = Scalar(2) / r2 - Scalar(1);
  return q;
}

/// Grid lower bound for the norm: max of sum_j |lambda_j(x)| over a uniform
/// grid. A sanity oracle — never exceeds the certified value.
template <class Scalar>
Scalar norm_via_barycentric(const LagrangeBasis<Scalar>& basis, long samples) {
  if (samples < 2) throw InputError("samples must be at least 2");
  const int d = basis.count();
  Scalar best(0);
  Scalar term;
  for (long i = 0; i < samples; ++i) {
    const Scalar x = Scalar(-1) + Scalar(2 * i) / Scalar(samples - 1);
    Scalar s(0);
    for (int j = 0; j < d; ++j) {
      term = basis.lambdas[j](x);
      using std::abs;
      s += abs(term);
    }
    if (s > best) best = s;
  }
  return best;
}

}  // namespace simplex_interp

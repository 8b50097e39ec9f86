#pragma once

#include <algorithm>
#include <vector>

#include "simplex_interp/errors.hpp"
#include "simplex_interp/polynomial.hpp"
#include "simplex_interp/scalar.hpp"

namespace simplex_interp {

/// Certified real roots of a polynomial on [lo, hi]. Each entry is the
/// midpoint of a bracket of width <= the requested eps; multiple roots are
/// collapsed to a single entry.
template <class Scalar>
struct RootList {
  Scalar lo;
  Scalar hi;
  std::vector<Scalar> roots;  // strictly increasing
};

template <class Scalar>
struct MaxResult {
  Scalar argmax;
  Scalar value;
};

/// Canonical Sturm chain s0 = p, s1 = p', s_{i+1} = -rem(s_{i-1}, s_i).
/// Remainders are rescaled to unit max coefficient (a positive scaling, so
/// sign variations are unaffected) and coefficients at the rounding-noise
/// floor are clipped, which keeps the chain well formed when p has multiple
/// roots and the exact sequence would terminate at a nontrivial gcd.
///
/// V(a) - V(b) counts the distinct real roots of p in the half-open
/// interval (a, b].
template <class Scalar>
class SturmChain {
 public:
  explicit SturmChain(const Polynomial<Scalar>& p) {
    if (p.is_zero()) throw ZeroPolynomial();
    // The head is clipped like the remainders: a leading coefficient at the
    // rounding-noise floor (e.g. the odd-order residue of a numerically even
    // piece polynomial) gets divided by in every remainder step below and
    // amplifies noise into an invalid chain. The derivative entry comes from
    // the clipped head so the pair keeps the Sturm property s1 = s0'.
    Coeffs head = p.coeffs();
    clip_noise(head);
    seq_.push_back(normalized(std::move(head)));
    if (seq_.front().size() > 1) {
      const Coeffs& s0 = seq_.front();
      Coeffs d1(s0.size() - 1);
      for (Eigen::Index i = 1; i < s0.size(); ++i)
        d1[i - 1] = Scalar(static_cast<int>(i)) * s0[i];
      seq_.push_back(normalized(std::move(d1)));
      while (seq_.back().size() > 1) {
        Coeffs r = remainder(seq_[seq_.size() - 2], seq_.back());
        clip_noise(r);
        if (r.size() == 0) break;
        r = -r;
        seq_.push_back(normalized(std::move(r)));
      }
    }
  }

  int sign_variations(const Scalar& x) const {
    // x landing exactly on a multiple root makes s0 and s1 vanish together
    // (the gcd factor). Nudge right, matching the convention V(x) = V(x+).
    if (seq_.size() >= 2 && exact_sign(horner(seq_[0], x)) == 0 &&
        exact_sign(horner(seq_[1], x)) == 0) {
      return sign_variations(x + scalar_traits<Scalar>::root_width() / Scalar(4));
    }
    int v = 0;
    int prev = 0;
    for (const Coeffs& c : seq_) {
      const int s = exact_sign(horner(c, x));
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++v;
      prev = s;
    }
    return v;
  }

  /// Number of distinct real roots of p in (a, b].
  int count(const Scalar& a, const Scalar& b) const {
    return sign_variations(a) - sign_variations(b);
  }

  std::size_t length() const { return seq_.size(); }

 private:
  using Coeffs = typename Polynomial<Scalar>::Coeffs;

  static Scalar horner(const Coeffs& c, const Scalar& x) {
    Scalar acc = c[c.size() - 1];
    for (Eigen::Index i = c.size() - 2; i >= 0; --i) {
      acc *= x;
      acc += c[i];
    }
    return acc;
  }

  static Coeffs normalized(Coeffs c) {
    Scalar m(0);
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      Scalar a = abs(c[i]);
      if (a > m) m = a;
    }
    if (m > Scalar(0)) c /= m;
    return c;
  }

  // Remainder of a by b, both nonzero with deg(a) >= deg(b) not required.
  static Coeffs remainder(const Coeffs& a, const Coeffs& b) {
    Coeffs r = a;
    const Eigen::Index nb = b.size();
    const Scalar& lead = b[nb - 1];
    while (r.size() >= nb) {
      const Scalar f = r[r.size() - 1] / lead;
      const Eigen::Index off = r.size() - nb;
      for (Eigen::Index j = 0; j < nb - 1; ++j) r[off + j] -= f * b[j];
      r.conservativeResize(r.size() - 1);
      // drop exact zeros uncovered by the subtraction
      while (r.size() >= 1 && r[r.size() - 1] == Scalar(0) && r.size() >= nb)
        r.conservativeResize(r.size() - 1);
    }
    return r;
  }

  // Clears coefficients that are pure cancellation noise relative to the
  // largest one, then trims. Noise floor sits well above 2^-prec but far
  // below any meaningful coefficient of a normalized remainder.
  static void clip_noise(Coeffs& r) {
    Scalar m(0);
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      Scalar a = abs(r[i]);
      if (a > m) m = a;
    }
    if (m == Scalar(0)) {
      r.conservativeResize(0);
      return;
    }
    const Scalar floor_rel = chain_noise_floor();
    Eigen::Index n = r.size();
    while (n > 0 && abs(r[n - 1]) <= m * floor_rel) --n;
    r.conservativeResize(n);
  }

  static Scalar chain_noise_floor() {
    if constexpr (std::is_same_v<Scalar, Real>) {
      const long guarded = static_cast<long>(precision_bits()) - 48;
      return pow(Real(2), Real(-(guarded > 16 ? guarded : 16)));
    } else {
      return Scalar(1e-10);
    }
  }

  std::vector<Coeffs> seq_;
};

namespace detail {

// Shrinks a bracket [lo, hi] with sign(p(lo)) * sign(p(hi)) < 0 around the
// single sign-change root, alternating bisection with guarded Newton steps
// once the bracket is small. Returns the bracket midpoint.
template <class Scalar>
Scalar polish_sign_change(const Polynomial<Scalar>& p, const Polynomial<Scalar>& dp, Scalar lo,
                          Scalar hi, int slo, const Scalar& eps) {
  Scalar x = (lo + hi) / Scalar(2);
  for (int iter = 0; iter < 400 && hi - lo > eps; ++iter) {
    const Scalar px = p(x);
    const int sx = exact_sign(px);
    if (sx == 0) return x;
    if (sx == slo)
      lo = x;
    else
      hi = x;
    // Newton candidate from the fresh endpoint; fall back to bisection
    // whenever it escapes the bracket.
    Scalar next = (lo + hi) / Scalar(2);
    const Scalar dpx = dp(x);
    if (dpx != Scalar(0)) {
      const Scalar newton = x - px / dpx;
      if (newton > lo && newton < hi) next = newton;
    }
    x = next;
  }
  // Finish with plain Newton accepted on residual decrease (the root can sit
  // within ulps of a bracket endpoint, so an inside-the-bracket test would
  // wrongly reject the converged iterate). From a bracket this tight Newton
  // is quadratic and three steps reach working precision.
  x = (lo + hi) / Scalar(2);
  Scalar px = p(x);
  using std::abs;
  for (int iter = 0; iter < 3; ++iter) {
    const Scalar dpx = dp(x);
    if (dpx == Scalar(0)) break;
    const Scalar next = x - px / dpx;
    const Scalar pn = p(next);
    if (abs(pn) >= abs(px)) break;
    x = next;
    px = pn;
  }
  return x;
}

// Bracket with an even-multiplicity root (no sign change): bisect on the
// Sturm count itself.
template <class Scalar>
Scalar polish_by_count(const SturmChain<Scalar>& chain, Scalar lo, Scalar hi, int vlo,
                       const Scalar& eps) {
  while (hi - lo > eps) {
    const Scalar mid = (lo + hi) / Scalar(2);
    if (mid <= lo || mid >= hi) break;  // interval at ulp resolution
    const int vm = chain.sign_variations(mid);
    if (vlo - vm >= 1) {
      hi = mid;
    } else {
      lo = mid;
      vlo = vm;
    }
  }
  return (lo + hi) / Scalar(2);
}

}  // namespace detail

/// Certified real-root isolation on [a, b] by Sturm sign-variation counting.
/// Every distinct real root of p in [a, b] appears exactly once, bracketed
/// to width <= eps. Throws ZeroPolynomial when p is identically zero.
template <class Scalar>
RootList<Scalar> roots_in_interval(const Polynomial<Scalar>& p, const Scalar& a, const Scalar& b,
                                   const Scalar& eps) {
  if (p.is_zero()) throw ZeroPolynomial();
  if (!(a < b)) throw InputError("roots_in_interval: requires a < b");

  RootList<Scalar> out;
  out.lo = a;
  out.hi = b;
  if (p.degree() < 1) return out;

  if (exact_sign(p(a)) == 0) out.roots.push_back(a);

  const SturmChain<Scalar> chain(p);
  const Polynomial<Scalar> dp = p.derivative();

  struct Seg {
    Scalar lo, hi;
    int vlo, vhi;
  };
  std::vector<Seg> stack;
  std::vector<Scalar> found;
  const int vb = chain.sign_variations(b);
  const int va = chain.sign_variations(a);
  if (va - vb > 0) stack.push_back({a, b, va, vb});

  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    const int n = s.vlo - s.vhi;
    if (n <= 0) continue;
    if (n == 1 || s.hi - s.lo <= eps) {
      if (n > 1) {
        // cluster tighter than eps: report the midpoint once
        found.push_back((s.lo + s.hi) / Scalar(2));
        continue;
      }
      const int slo = exact_sign(p(s.lo));
      const int shi = exact_sign(p(s.hi));
      if (shi == 0) {
        found.push_back(s.hi);
      } else if (slo != 0 && slo * shi < 0) {
        found.push_back(detail::polish_sign_change(p, dp, s.lo, s.hi, slo, eps));
      } else {
        found.push_back(detail::polish_by_count(chain, s.lo, s.hi, s.vlo, eps));
      }
      continue;
    }
    const Scalar mid = (s.lo + s.hi) / Scalar(2);
    const int vm = chain.sign_variations(mid);
    stack.push_back({mid, s.hi, vm, s.vhi});
    stack.push_back({s.lo, mid, s.vlo, vm});
  }

  std::sort(found.begin(), found.end());
  for (const Scalar& r : found) {
    if (!out.roots.empty() && r - out.roots.back() <= eps * Scalar(2)) continue;
    out.roots.push_back(r);
  }
  return out;
}

template <class Scalar>
RootList<Scalar> roots_in_interval(const Polynomial<Scalar>& p, const Scalar& a, const Scalar& b) {
  return roots_in_interval(p, a, b, scalar_traits<Scalar>::root_width());
}

/// Certified maximum of p over [a, b]: evaluates p at a, b and at every
/// critical point (root of p') inside, returning the largest value and the
/// smallest witness among ties. The degenerate interval a == b returns
/// (a, p(a)).
template <class Scalar>
MaxResult<Scalar> max_on_interval(const Polynomial<Scalar>& p, const Scalar& a, const Scalar& b) {
  if (a > b) throw InputError("max_on_interval: requires a <= b");
  MaxResult<Scalar> best{a, p(a)};
  if (a == b) return best;
  const Scalar vb = p(b);
  if (vb > best.value) best = {b, vb};
  if (p.degree() >= 2) {
    const RootList<Scalar> crit = roots_in_interval(p.derivative(), a, b);
    for (const Scalar& x : crit.roots) {
      const Scalar v = p(x);
      if (v > best.value || (v == best.value && x < best.argmax)) best = {x, v};
    }
  }
  return best;
}

}  // namespace simplex_interp

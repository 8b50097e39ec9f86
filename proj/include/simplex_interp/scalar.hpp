#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <cmath>
#include <limits>

namespace simplex_interp {

namespace mp = boost::multiprecision;

/// Arbitrary-precision real backed by MPFR. The working precision is a
/// process-wide runtime setting (see set_precision_bits); every value is
/// correctly rounded at the precision it was created with.
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

namespace detail {
inline unsigned& precision_bits_slot() {
  static unsigned bits = 0;  // 0 = not yet applied
  return bits;
}
}  // namespace detail

/// Sets the working precision for all subsequently created Real values.
/// MPFR precision is digit-based internally, so the effective mantissa is
/// at least `bits` wide.
inline void set_precision_bits(unsigned bits) {
  if (bits < 8) bits = 8;
  // digits10 -> digits2 conversion in Boost rounds up, so this guarantees
  // a mantissa of >= bits.
  const auto digits10 = static_cast<unsigned>(std::ceil(bits * 0.301029995663981195) + 1);
  Real::default_precision(digits10);
  detail::precision_bits_slot() = bits;
}

/// Current working precision in bits (as requested, not the padded MPFR width).
inline unsigned precision_bits() {
  if (detail::precision_bits_slot() == 0) set_precision_bits(256);
  return detail::precision_bits_slot();
}

namespace detail {
// Apply the 256-bit default before main() runs. Without this, Real values
// constructed before the first precision_bits() call would silently carry
// Boost's own startup precision.
struct PrecisionInit {
  PrecisionInit() { precision_bits(); }
};
inline const PrecisionInit precision_init{};
}  // namespace detail

/// Tolerance defaults scale linearly in the exponent with the working
/// precision; the reference point is the 256-bit default.
template <class Scalar>
struct scalar_traits {
  // Generic fallback for built-in floating point (used by low-precision
  // experiments); multiprecision Real has its own specialization below.
  static Scalar zero_tolerance() { return Scalar(1e-12); }
  static Scalar root_width() { return Scalar(1e-13); }
  static Scalar singular_threshold() { return Scalar(1e-4); }
};

template <>
struct scalar_traits<Real> {
  /// Sign-classification tolerance tau: 1e-30 at 256 bits.
  static Real zero_tolerance() {
    return exp10_scaled(-30.0 / 256.0);
  }
  /// Certified root bracket width: 1e-40 at 256 bits.
  static Real root_width() {
    return exp10_scaled(-40.0 / 256.0);
  }
  /// Admissibility cutoff for |det A|: 10^-(bits * 0.25 * log10 2).
  static Real singular_threshold() {
    return exp10_scaled(-0.25 * 0.301029995663981195);
  }

 private:
  static Real exp10_scaled(double per_bit_exponent) {
    return pow(Real(10), Real(per_bit_exponent * precision_bits()));
  }
};

/// Deterministic three-way sign classification of x against tolerance tau:
/// -1 if x < -tau, +1 if x > tau, 0 otherwise.
template <class Scalar>
int classify_sign(const Scalar& x, const Scalar& tau) {
  if (x > tau) return 1;
  if (x < -tau) return -1;
  return 0;
}

/// Exact sign of x (positive tolerance zero).
template <class Scalar>
int exact_sign(const Scalar& x) {
  if (x > 0) return 1;
  if (x < 0) return -1;
  return 0;
}

}  // namespace simplex_interp

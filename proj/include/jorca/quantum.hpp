#pragma once

#include <array>

#include "jorca/field.hpp"
#include "jorca/rational.hpp"

// Reference two-qubit calculator: Schmidt states a|HV> + b e^{i delta}|VH>
// measured by single-wing polarization analyzers. This is the ground truth
// the classical gain optimization is compared against.

namespace jorca {

/// Schmidt coefficients of the prepared state, a,b >= 0 with a^2+b^2 = 1.
struct TwoQubitState {
  double a = 1.0;
  double b = 0.0;
  double delta = 0.0;

  TwoQubitState(double schmidt_a, double schmidt_b, double phase = 0.0);
};

/// Analyzer states for the two wings: wing 1 passes c|H>+d|V>, wing 2 passes
/// f|H>+g|V>. Each pair is normalized.
struct MeasurementSetting {
  ComplexAmp c{}, d{}, f{}, g{};

  MeasurementSetting(ComplexAmp c1, ComplexAmp d1, ComplexAmp f2,
                     ComplexAmp g2);
};

/// Orthonormal analyzer pair for one wing; element 0 is the beamsplitter's
/// aligned channel, element 1 the orthogonal one.
struct WingBasis {
  ComplexAmp c0{}, d0{}, c1{}, d1{};

  WingBasis(ComplexAmp c_first, ComplexAmp d_first, ComplexAmp c_second,
            ComplexAmp d_second)
      : c0(c_first), d0(d_first), c1(c_second), d1(d_second) {}

  /// Basis completed with the orthogonal complement (-conj(d), conj(c)).
  static WingBasis spanned_by(ComplexAmp c, ComplexAmp d) {
    return {c, d, -std::conj(d), std::conj(c)};
  }
  /// Linear-polarization beamsplitter at angle beta.
  static WingBasis rotated(double beta) {
    return {std::cos(beta), std::sin(beta), -std::sin(beta), std::cos(beta)};
  }
  static WingBasis hv() { return {1.0, 0.0, 0.0, 1.0}; }
};

/// a*c*g + b*e^{-i delta}*d*f, the joint outcome amplitude. The sign of the
/// delta exponent is tied to the e^{+i delta} phase plate convention in
/// forward_amplify; the classical zero-gain set and this amplitude's zero set
/// then coincide for every delta.
ComplexAmp joint_amplitude(const TwoQubitState& state,
                           const MeasurementSetting& m);

/// |joint_amplitude|^2 for the four outcome combinations; entries sum to 1.
/// Throws std::domain_error if either basis fails orthonormality at 1e-12.
std::array<std::array<double, 2>, 2> probability_table(
    const TwoQubitState& state, const WingBasis& wing1, const WingBasis& wing2);

/// True iff the joint probability is below tol.
bool is_forbidden(const TwoQubitState& state, const MeasurementSetting& m,
                  double tol);

/// Exact-rational joint probability for canned scenarios whose coefficients
/// are all of the form (p/q)*sqrt(m) and whose delta is 0 or pi
/// (phase_sign = e^{-i delta} = +1 or -1).
Rational exact_joint_probability(const SqrtRational& a, const SqrtRational& b,
                                 int phase_sign, const SqrtRational& c,
                                 const SqrtRational& d, const SqrtRational& f,
                                 const SqrtRational& g);

}  // namespace jorca

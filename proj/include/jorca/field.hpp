#pragma once

#include <complex>
#include <utility>

// Scaled mode amplitudes and the exact two-pair parametric gain maps.
//
// Mode convention, used throughout the project:
//   mode 1 = H along k1, mode 2 = V along k2  (first phase-matched pair)
//   mode 3 = V along k1, mode 4 = H along k2  (second phase-matched pair)
// Amplitudes are scaled as A = E/sqrt(w) so |A|^2 is the per-mode intensity
// in photon-flux units. The pump amplitude and coupling are folded into the
// dimensionless gain exponents; they are never stored here.

namespace jorca {

/// Scaled complex mode amplitude. |A|^2 is the mode intensity.
using ComplexAmp = std::complex<double>;

inline bool is_finite(ComplexAmp z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

enum class Stage { Seed, Final };

/// The four mode amplitudes at one time slice, either the unknown input
/// seeds or the amplified finals. In a Final quad, a3 holds the mode-3 field
/// *after* the source phase plate (what the analyzer sees).
struct FieldQuad {
  ComplexAmp a1{}, a2{}, a3{}, a4{};
  Stage stage = Stage::Seed;

  double intensity() const {
    return std::norm(a1) + std::norm(a2) + std::norm(a3) + std::norm(a4);
  }
  bool finite() const {
    return is_finite(a1) && is_finite(a2) && is_finite(a3) && is_finite(a4);
  }
};

/// Gain exponents for the two phase-matched pairs plus the phase-plate angle
/// delta applied to mode 3 after amplification. delta is normalized to
/// [0, 2*pi).
struct GainSchedule {
  double g12 = 0.0;
  double g34 = 0.0;
  double delta = 0.0;

  GainSchedule() = default;
  GainSchedule(double gain12, double gain34, double plate_delta = 0.0);
};

/// Amplify a seed quad:
///   A1f = A1i cosh(g12) + i A2i* sinh(g12)   (and symmetrically for A2f)
///   A3f = A3i cosh(g34) + i A4i* sinh(g34)   (and symmetrically for A4f)
/// then mode 3 picks up the phase-plate factor e^{i delta}.
FieldQuad forward_amplify(const FieldQuad& seed, const GainSchedule& sched);

/// Exact inverse of forward_amplify: undo the phase plate, then
///   A1i = A1f cosh(g12) - i A2f* sinh(g12)   (etc.)
FieldQuad inverse_amplify(const FieldQuad& fin, const GainSchedule& sched);

/// Intensity gain of each pair, (|A1f|^2-|A1i|^2, |A3f|^2-|A3i|^2).
/// The Manley-Rowe relations make the mode-2 gain equal the mode-1 gain and
/// the mode-4 gain equal the mode-3 gain, so two numbers cover all four.
std::pair<double, double> pair_gain(const FieldQuad& seed,
                                    const FieldQuad& fin);

}  // namespace jorca

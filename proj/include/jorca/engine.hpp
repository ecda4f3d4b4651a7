#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "jorca/field.hpp"
#include "jorca/quantum.hpp"

// Maximum classical gain over all input seeds consistent with a constrained
// output pattern. Because inverse_amplify is a bijection, searching the seed
// space is the same as searching the space of constrained finals; those form
// a 2-complex-dimensional family (u, v), on which the gain I_out - I_in is a
// real quadratic form. Its largest eigenvalue over unit output intensity is
// the verdict quantity lambda_max.

namespace jorca {

/// Analyzer coefficients as final-field constraints: a wing-1 detection at
/// c|H>+d|V> forces d*A1f = c*A3f' and a wing-2 detection at f|H>+g|V>
/// forces f*A2f = g*A4f (A3f' is the mode-3 field after the source plate).
struct OutcomeConstraint {
  ComplexAmp c{}, d{}, f{}, g{};

  OutcomeConstraint(ComplexAmp c1, ComplexAmp d1, ComplexAmp f2, ComplexAmp g2);
  explicit OutcomeConstraint(const MeasurementSetting& m)
      : OutcomeConstraint(m.c, m.d, m.f, m.g) {}
};

/// Finals satisfying both constraints identically:
/// A1f = c u, A3f' = d u, A2f = g v, A4f = f v. Output intensity is
/// |u|^2 + |v|^2 since the coefficient pairs are normalized.
FieldQuad constrained_final(ComplexAmp u, ComplexAmp v,
                            const OutcomeConstraint& oc);

/// I_out - I_in for one (u, v), evaluated by composing constrained_final with
/// inverse_amplify. This is the ground-level evaluation everything else is
/// checked against.
double direct_gain(ComplexAmp u, ComplexAmp v, const OutcomeConstraint& oc,
                   const GainSchedule& sched);

using Mat4 = std::array<std::array<double, 4>, 4>;

/// The symmetric matrix M with w^T M w = I_out - I_in for
/// w = (Re u, Im u, Re v, Im v), assembled from direct_gain evaluations on
/// basis and pairwise-sum vectors (polarization identity). I_in is exact in
/// the hyperbolic functions; no small-gain truncation.
Mat4 gain_form(const OutcomeConstraint& oc, const GainSchedule& sched);

struct EigenResult {
  std::array<double, 4> values;  // unsorted
  Mat4 vectors;                  // column k pairs with values[k]
};

/// Cyclic Jacobi rotations; converges when every off-diagonal entry is below
/// 1e-14 relative to the matrix scale. Deterministic.
EigenResult jacobi_eigensolve(const Mat4& m);

enum class Verdict { ClassicallyForbidden, ClassicallyAllowed };
std::string_view to_string(Verdict v);

/// lambda_max <= this counts as forbidden; the forbidden cases are
/// analytically <= 0, the tolerance only absorbs rounding noise.
inline constexpr double kLambdaTol = 1e-12;

struct GainReport {
  double lambda_max = 0.0;
  FieldQuad optimizer;  // maximizing final fields, unit output intensity
  FieldQuad seed;       // its preimage under inverse_amplify
  double i_in = 0.0;
  double i_out = 0.0;
  Verdict verdict = Verdict::ClassicallyForbidden;
};

/// Largest eigenvalue of gain_form plus the optimizing configuration.
GainReport max_gain(const OutcomeConstraint& oc, const GainSchedule& sched);

/// Brute-force oracle: max of I_out - I_in over n random unit (u, v) vectors,
/// each evaluated by the direct route (never via the assembled matrix).
/// Deterministic for a given rng_seed.
double sample_gain(const OutcomeConstraint& oc, const GainSchedule& sched,
                   std::size_t n, std::uint64_t rng_seed);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  int excluded_points = 0;  // grid points where lambda_max was exactly 0
};

/// Least-squares slope of log|lambda_max| vs log eps with gains (a*eps,
/// b*eps): ~1 for classically allowed outcomes, ~2 for forbidden ones.
/// Requires >= 4 positive grid points spanning >= 2 decades.
SlopeFit fit_epsilon_slope(const OutcomeConstraint& oc, double a, double b,
                           std::span<const double> eps_grid);

inline double epsilon_slope(const OutcomeConstraint& oc, double a, double b,
                            std::span<const double> eps_grid) {
  return fit_epsilon_slope(oc, a, b, eps_grid).slope;
}

}  // namespace jorca

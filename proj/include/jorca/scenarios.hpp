#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jorca/engine.hpp"
#include "jorca/quantum.hpp"
#include "jorca/rational.hpp"
#include "jorca/rng.hpp"

// Canned experiment configurations and parameter sweeps. Each builtin fixes
// a prepared state, per-outcome analyzer settings with exact coefficients,
// a gain recipe (gain exponents as multiples of the scale parameter eps),
// and the expected probability and verdict for every listed outcome.

namespace jorca {

/// Relation of an outcome's analyzer to its wing's beamsplitter orientation:
/// the aligned channel is (cos b)|H> + (sin b)|V>, the orthogonal channel is
/// (-sin b)|H> + (cos b)|V>. Used by sweep_angle to rebuild the analyzer at
/// swept angles.
enum class Channel { Aligned, Orthogonal };

struct WingSpec {
  ComplexAmp h{}, v{};        // analyzer state h|H> + v|V>
  SqrtRational h_exact{}, v_exact{};
  Channel channel = Channel::Aligned;
  double beta_nominal = 0.0;  // beamsplitter angle this analyzer belongs to
};

struct OutcomeSpec {
  std::string label;
  WingSpec wing1, wing2;
  Rational expected_prob{0};
  bool forbidden = false;

  MeasurementSetting setting() const {
    return {wing1.h, wing1.v, wing2.h, wing2.v};
  }
};

struct Scenario {
  std::string name;
  TwoQubitState state{1.0, 0.0};
  SqrtRational a_exact{}, b_exact{};
  int phase_sign = 1;            // e^{-i delta}, +-1 for the builtins
  double gain12_scale = 0.0;     // g12 = gain12_scale * eps
  double gain34_scale = 0.0;     // g34 = gain34_scale * eps
  double delta = 0.0;            // source phase-plate angle
  std::vector<OutcomeSpec> outcomes;

  GainSchedule schedule(double eps) const {
    return {gain12_scale * eps, gain34_scale * eps, delta};
  }
};

/// Builtins: max-entangled-diagonal, partial-3-4-5, hardy, cascade-singlet.
/// Unknown names throw std::out_of_range.
Scenario builtin(std::string_view name);
const std::vector<std::string>& builtin_names();

struct VerifyTolerances {
  double zero_prob = 1e-24;   // quantum probability below this is "zero"
  double lambda = kLambdaTol; // lambda_max at or below this is forbidden
  double allowed_prob = 1e-6; // probability above this must have lambda > 0
};

struct OutcomeResult {
  std::string label;
  double prob = 0.0;
  double lambda_max = 0.0;
  Verdict verdict = Verdict::ClassicallyForbidden;
  bool agree = false;
};

struct VerificationRecord {
  std::string scenario;
  double eps = 0.0;
  std::vector<OutcomeResult> outcomes;
  bool all_agree = false;
};

/// Quantum probability, lambda_max, and verdict agreement for every listed
/// outcome. eps must be > 0 (eps = 0 has no pump and is degenerate).
VerificationRecord run_scenario(const Scenario& s, double eps,
                                const VerifyTolerances& tol = {});

struct SweepRow {
  double beta = 0.0;
  double prob = 0.0;
  double lambda_max = 0.0;
};

/// Rebuild one wing's analyzer across beamsplitter angles for the scenario's
/// first forbidden outcome; the other wing keeps its nominal analyzer.
std::vector<SweepRow> sweep_angle(const Scenario& s, int wing,
                                  std::span<const double> betas, double eps);

struct ScanCase {
  double a = 0.0, b = 0.0;
  double prob = 0.0;
  double lambda_max = 0.0;
  bool forced_zero = false;
  bool qm_forbidden = false;
  bool cl_forbidden = false;
  bool agree = false;
};

struct ScanSummary {
  std::size_t n = 0;
  double eps = 0.0;
  std::uint64_t rng_seed = 0;
  double zero_fraction = 0.0;
  std::size_t forced_zeros = 0;
  std::size_t agreements = 0;
  std::size_t disagreements = 0;
  std::size_t gray_zone = 0;  // zero_prob < prob <= allowed_prob
  double max_lambda_forbidden = 0.0;  // over quantum-forbidden cases
  double min_lambda_allowed = 0.0;    // over prob > allowed_prob cases
  std::vector<ScanCase> cases;

  bool all_agree() const { return disagreements == 0; }
};

/// n random (state, setting) pairs at gains (a*eps, b*eps), the leading
/// ceil(n * zero_fraction) of them constructed to have exactly zero quantum
/// probability. Rows use independent rng substreams indexed by case number,
/// so the result does not depend on thread count.
ScanSummary random_scan(std::size_t n, double eps, std::uint64_t rng_seed,
                        double zero_fraction = 0.1,
                        const VerifyTolerances& tol = {});

/// Random Schmidt state with a,b >= 0; delta = 0 unless with_delta.
TwoQubitState random_state(Xoshiro256ss& rng, bool with_delta = false);

/// Random analyzer pair for both wings, uniformly from normalized complex
/// coefficients.
MeasurementSetting random_setting(Xoshiro256ss& rng);

/// Random (state, setting) pair whose joint probability is exactly zero:
/// draw a, b, c, d, g, solve f = -a c g e^{i delta} / (b d), renormalize
/// (f, g). The whole tuple is redrawn while |b d| < 1e-6.
std::pair<TwoQubitState, MeasurementSetting> forced_zero_case(
    Xoshiro256ss& rng, bool with_delta = false);

}  // namespace jorca

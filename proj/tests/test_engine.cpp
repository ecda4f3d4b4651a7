#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "jorca/engine.hpp"
#include "jorca/rng.hpp"
#include "jorca/scenarios.hpp"

using namespace jorca;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
constexpr double kTwoPi = 6.283185307179586;

// Test-only oracle: the gain written out in hyperbolic identities instead of
// going through inverse_amplify. Expanding |A ch - i conj(B) sh|^2 per pair:
//   I_in = (|A1f|^2+|A2f|^2) cosh(2 g12) + (|A3f|^2+|A4f|^2) cosh(2 g34)
//          - 2 sinh(2 g12) Im(A1f A2f) - 2 sinh(2 g34) Im(A3f A4f)
// with A3f the mode-3 field before the phase plate.
double closed_form_gain(ComplexAmp u, ComplexAmp v, const OutcomeConstraint& oc,
                        const GainSchedule& sched) {
  const ComplexAmp a1 = oc.c * u;
  const ComplexAmp a3_plate = oc.d * u;
  const ComplexAmp a2 = oc.g * v;
  const ComplexAmp a4 = oc.f * v;
  const ComplexAmp a3 = a3_plate * std::polar(1.0, -sched.delta);

  const double iout =
      std::norm(a1) + std::norm(a2) + std::norm(a3_plate) + std::norm(a4);
  const double iin = (std::norm(a1) + std::norm(a2)) * std::cosh(2.0 * sched.g12) +
                     (std::norm(a3) + std::norm(a4)) * std::cosh(2.0 * sched.g34) -
                     2.0 * std::sinh(2.0 * sched.g12) * std::imag(a1 * a2) -
                     2.0 * std::sinh(2.0 * sched.g34) * std::imag(a3 * a4);
  return iout - iin;
}

OutcomeConstraint diag_plus_minus() {
  return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
}
OutcomeConstraint diag_plus_plus() {
  return {kInvSqrt2, kInvSqrt2, kInvSqrt2, kInvSqrt2};
}
// partially entangled |+-'> and |--'> constraints
OutcomeConstraint partial_plus_minusp() {
  return {kInvSqrt2, kInvSqrt2, 0.6, -0.8};
}
OutcomeConstraint partial_minus_minusp() {
  return {kInvSqrt2, -kInvSqrt2, 0.6, -0.8};
}

OutcomeConstraint random_constraint(Xoshiro256ss& rng) {
  return OutcomeConstraint(random_setting(rng));
}

GainSchedule random_schedule(Xoshiro256ss& rng) {
  return {3.0 * rng.uniform01(), 3.0 * rng.uniform01(),
          rng.uniform01() * kTwoPi};
}

std::array<double, 4> random_unit4(Xoshiro256ss& rng) {
  std::array<double, 4> w{};
  double norm_sq = 0.0;
  do {
    norm_sq = 0.0;
    for (double& x : w) {
      x = rng.gaussian();
      norm_sq += x * x;
    }
  } while (norm_sq < 1e-12);
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (double& x : w) x *= inv;
  return w;
}

double quad_eval(const Mat4& m, const std::array<double, 4>& w) {
  double out = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) out += w[i] * m[i][j] * w[j];
  }
  return out;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i) {
    grid[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
  }
  return grid;
}

}  // namespace

TEST_CASE("constrained finals satisfy the outcome constraints") {
  const OutcomeConstraint trivial(1.0, 0.0, 1.0, 0.0);
  const FieldQuad q = constrained_final(1.0, 0.0, trivial);
  CHECK(q.a1 == ComplexAmp{1.0, 0.0});
  CHECK(std::abs(q.a2) == 0.0);
  CHECK(std::abs(q.a3) == 0.0);
  CHECK(std::abs(q.a4) == 0.0);
  CHECK(q.stage == Stage::Final);

  Xoshiro256ss rng(51);
  for (int rep = 0; rep < 100; ++rep) {
    const OutcomeConstraint oc = random_constraint(rng);
    const ComplexAmp u{rng.gaussian(), rng.gaussian()};
    const ComplexAmp v{rng.gaussian(), rng.gaussian()};
    const FieldQuad fin = constrained_final(u, v, oc);
    const double scale = 1.0 + std::abs(u) + std::abs(v);
    CHECK(std::abs(oc.d * fin.a1 - oc.c * fin.a3) <= 1e-15 * scale);
    CHECK(std::abs(oc.f * fin.a2 - oc.g * fin.a4) <= 1e-15 * scale);
  }

  // normalized pairs make the output intensity |u|^2 + |v|^2
  const FieldQuad unit = constrained_final(kInvSqrt2, kInvSqrt2,
                                           diag_plus_minus());
  CHECK(unit.intensity() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("direct gain matches the hyperbolic closed form") {
  Xoshiro256ss rng(52);
  for (int rep = 0; rep < 200; ++rep) {
    const OutcomeConstraint oc = random_constraint(rng);
    const GainSchedule sched = random_schedule(rng);
    const ComplexAmp u{rng.gaussian(), rng.gaussian()};
    const ComplexAmp v{rng.gaussian(), rng.gaussian()};
    const double direct = direct_gain(u, v, oc, sched);
    const double closed = closed_form_gain(u, v, oc, sched);
    const double scale =
        1.0 + std::abs(direct) + (std::norm(u) + std::norm(v)) *
                                     std::cosh(2.0 * std::max(sched.g12, sched.g34));
    CHECK(std::abs(direct - closed) <= 1e-12 * scale);
  }
}

TEST_CASE("zero gains make the gain form vanish") {
  Xoshiro256ss rng(53);
  const Mat4 m = gain_form(random_constraint(rng), GainSchedule{});
  for (const auto& row : m) {
    for (double x : row) CHECK(std::abs(x) <= 1e-15);
  }
}

TEST_CASE("maximally entangled forbidden outcome: form is (1 - cosh 2aT) * I") {
  for (double alpha_t : {0.01, 0.1, 1.0}) {
    const GainSchedule sched(alpha_t, alpha_t, 0.0);
    const Mat4 m = gain_form(diag_plus_minus(), sched);
    const double expected = 1.0 - std::cosh(2.0 * alpha_t);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        CHECK(std::abs(m[i][j] - (i == j ? expected : 0.0)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("gain form is symmetric and matches direct evaluation") {
  Xoshiro256ss rng(54);
  for (int rep = 0; rep < 5; ++rep) {
    const OutcomeConstraint oc = random_constraint(rng);
    const GainSchedule sched = random_schedule(rng);
    const Mat4 m = gain_form(oc, sched);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) CHECK(m[i][j] == m[j][i]);
    }
    for (int k = 0; k < 100; ++k) {
      const auto w = random_unit4(rng);
      const double via_form = quad_eval(m, w);
      const double via_direct =
          direct_gain({w[0], w[1]}, {w[2], w[3]}, oc, sched);
      CHECK(std::abs(via_form - via_direct) <= 1e-10);
    }
  }
}

TEST_CASE("jacobi eigensolver recovers planted spectra") {
  Xoshiro256ss rng(55);
  for (int rep = 0; rep < 20; ++rep) {
    std::array<double, 4> planted{};
    for (double& x : planted) x = 10.0 * (rng.uniform01() - 0.5);

    // orthogonal Q from a product of random Givens rotations
    Mat4 q{};
    for (int i = 0; i < 4; ++i) q[i][i] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (int p = 0; p < 4; ++p) {
        for (int r = p + 1; r < 4; ++r) {
          const double angle = rng.uniform01() * kTwoPi;
          const double cs = std::cos(angle), sn = std::sin(angle);
          for (int k = 0; k < 4; ++k) {
            const double qp = q[k][p], qr = q[k][r];
            q[k][p] = cs * qp - sn * qr;
            q[k][r] = sn * qp + cs * qr;
          }
        }
      }
    }
    Mat4 m{};
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        double sum = 0.0;
        for (int k = 0; k < 4; ++k) sum += q[i][k] * planted[k] * q[j][k];
        m[i][j] = sum;
      }
    }

    const EigenResult eig = jacobi_eigensolve(m);
    auto got = eig.values;
    std::sort(got.begin(), got.end());
    std::sort(planted.begin(), planted.end());
    for (int k = 0; k < 4; ++k) {
      CHECK(std::abs(got[k] - planted[k]) <= 1e-12 * 10.0);
    }
    // residual M v = lambda v and orthonormal columns
    for (int col = 0; col < 4; ++col) {
      for (int i = 0; i < 4; ++i) {
        double mv = 0.0;
        for (int j = 0; j < 4; ++j) mv += m[i][j] * eig.vectors[j][col];
        CHECK(std::abs(mv - eig.values[col] * eig.vectors[i][col]) <= 1e-10);
      }
      for (int other = col; other < 4; ++other) {
        double dot = 0.0;
        for (int i = 0; i < 4; ++i) dot += eig.vectors[i][col] * eig.vectors[i][other];
        CHECK(std::abs(dot - (col == other ? 1.0 : 0.0)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("forbidden diagonal outcome has lambda_max = 1 - cosh(2aT)") {
  for (double alpha_t : {0.01, 0.1, 1.0}) {
    const GainReport rep =
        max_gain(diag_plus_minus(), GainSchedule(alpha_t, alpha_t, 0.0));
    CHECK(std::abs(rep.lambda_max - (1.0 - std::cosh(2.0 * alpha_t))) <= 1e-12);
    CHECK(rep.lambda_max <= 0.0);
    CHECK(rep.verdict == Verdict::ClassicallyForbidden);
  }
}

TEST_CASE("partially entangled forbidden outcome: negative with eps^2 scaling") {
  const OutcomeConstraint oc = partial_plus_minusp();
  for (double eps : {1e-4, 1e-3, 1e-2, 1e-1, 1.0}) {
    const GainReport rep = max_gain(oc, GainSchedule(0.6 * eps, 0.8 * eps));
    CHECK(rep.lambda_max < 0.0);
  }
  const double l3 = max_gain(oc, GainSchedule(0.6e-3, 0.8e-3)).lambda_max;
  const double l4 = max_gain(oc, GainSchedule(0.6e-4, 0.8e-4)).lambda_max;
  CHECK(std::abs(l3 / l4) == doctest::Approx(100.0).epsilon(0.05));
}

TEST_CASE("gain report bookkeeping") {
  Xoshiro256ss rng(56);
  for (int rep = 0; rep < 100; ++rep) {
    const GainSchedule sched = random_schedule(rng);
    const GainReport report = max_gain(random_constraint(rng), sched);
    CHECK(std::abs(report.i_out - 1.0) <= 1e-12);
    CHECK(std::abs(report.i_in - (1.0 - report.lambda_max)) <= 1e-12);
    CHECK((report.verdict == Verdict::ClassicallyForbidden) ==
          (report.lambda_max <= kLambdaTol));
    CHECK(report.optimizer.stage == Stage::Final);
    CHECK(report.seed.stage == Stage::Seed);
    // the reported seed amplifies into the reported optimizer
    const FieldQuad replay = forward_amplify(report.seed, sched);
    CHECK(std::abs(replay.a1 - report.optimizer.a1) <= 1e-12);
    CHECK(std::abs(replay.a2 - report.optimizer.a2) <= 1e-12);
    CHECK(std::abs(replay.a3 - report.optimizer.a3) <= 1e-12);
    CHECK(std::abs(replay.a4 - report.optimizer.a4) <= 1e-12);
  }
}

TEST_CASE("small-gain limit calibrates lambda_max to 2 eps |amplitude|") {
  // measured once on the maximally entangled |++> outcome...
  const TwoQubitState max_ent(kInvSqrt2, kInvSqrt2);
  const MeasurementSetting pp(kInvSqrt2, kInvSqrt2, kInvSqrt2, kInvSqrt2);
  const double q_me = std::abs(joint_amplitude(max_ent, pp));
  const double eps = 1e-6;
  const double lambda_me =
      max_gain(OutcomeConstraint(pp),
               GainSchedule(kInvSqrt2 * eps, kInvSqrt2 * eps))
          .lambda_max;
  const double constant = lambda_me / (eps * q_me);
  CHECK(std::abs(constant - 2.0) <= 1e-4);

  // ...then asserted across random allowed cases
  Xoshiro256ss rng(57);
  for (int rep = 0; rep < 50; ++rep) {
    TwoQubitState state = random_state(rng);
    MeasurementSetting m = random_setting(rng);
    double q = std::abs(joint_amplitude(state, m));
    while (q * q < 1e-2) {
      state = random_state(rng);
      m = random_setting(rng);
      q = std::abs(joint_amplitude(state, m));
    }
    const double lambda =
        max_gain(OutcomeConstraint(m),
                 GainSchedule(state.a * eps, state.b * eps))
            .lambda_max;
    CHECK(std::abs(lambda / (eps * q) - constant) <= 1e-3);
  }
}

TEST_CASE("monte carlo sampling never beats the eigensolved maximum") {
  Xoshiro256ss rng(58);
  for (int rep = 0; rep < 1000; ++rep) {
    const OutcomeConstraint oc = random_constraint(rng);
    const GainSchedule sched = random_schedule(rng);
    const double lambda = max_gain(oc, sched).lambda_max;
    const double sampled =
        sample_gain(oc, sched, 1000, 1000 + static_cast<std::uint64_t>(rep));
    CHECK(sampled <= lambda + 1e-10);
  }
}

TEST_CASE("dense sampling reaches the allowed maximum") {
  const GainSchedule sched(kInvSqrt2 * 0.01, kInvSqrt2 * 0.01, 0.0);
  const double lambda = max_gain(diag_plus_plus(), sched).lambda_max;
  CHECK(lambda > 0.0);
  const double sampled = sample_gain(diag_plus_plus(), sched, 100000, 99);
  CHECK(sampled >= 0.95 * lambda);
  CHECK(sampled <= lambda + 1e-10);
}

TEST_CASE("sampling is deterministic in the seed") {
  Xoshiro256ss rng(59);
  const OutcomeConstraint oc = random_constraint(rng);
  const GainSchedule sched = random_schedule(rng);
  CHECK(sample_gain(oc, sched, 1, 1234) == sample_gain(oc, sched, 1, 1234));
  CHECK(sample_gain(oc, sched, 500, 1) != sample_gain(oc, sched, 500, 2));
  CHECK_THROWS_AS(sample_gain(oc, sched, 0, 1), std::invalid_argument);
}

TEST_CASE("epsilon slopes classify forbidden vs allowed outcomes") {
  const auto grid = log_grid(1e-4, 1e-1, 13);
  SUBCASE("forbidden outcome scales as eps^2") {
    const SlopeFit fit =
        fit_epsilon_slope(partial_plus_minusp(), 0.6, 0.8, grid);
    CHECK(std::abs(fit.slope - 2.0) <= 0.05);
    CHECK(fit.excluded_points == 0);
  }
  SUBCASE("allowed outcome scales as eps") {
    const SlopeFit fit =
        fit_epsilon_slope(partial_minus_minusp(), 0.6, 0.8, grid);
    CHECK(std::abs(fit.slope - 1.0) <= 0.05);
  }
  SUBCASE("single amplified pair with aligned analyzer scales as eps") {
    // product state a=1, b=0; wing-1 analyzer is pure H (d = 0)
    const OutcomeConstraint oc(1.0, 0.0, kInvSqrt2, kInvSqrt2);
    CHECK(std::abs(epsilon_slope(oc, 1.0, 0.0, grid) - 1.0) <= 0.05);
  }
}

TEST_CASE("epsilon slope grid validation") {
  const OutcomeConstraint oc = diag_plus_minus();
  const std::vector<double> short_grid{1e-3, 1e-2, 1e-1};
  CHECK_THROWS_AS(fit_epsilon_slope(oc, 1.0, 1.0, short_grid),
                  std::invalid_argument);
  const std::vector<double> narrow{1e-3, 2e-3, 4e-3, 8e-3};
  CHECK_THROWS_AS(fit_epsilon_slope(oc, 1.0, 1.0, narrow),
                  std::invalid_argument);
  const std::vector<double> negative{-1e-3, 1e-2, 1e-1, 1.0};
  CHECK_THROWS_AS(fit_epsilon_slope(oc, 1.0, 1.0, negative),
                  std::invalid_argument);
  // zero gains make every lambda exactly zero: all points excluded
  const auto grid = log_grid(1e-4, 1e-1, 6);
  CHECK_THROWS_AS(fit_epsilon_slope(oc, 0.0, 0.0, grid), std::domain_error);
}

TEST_CASE("lambda_max is invariant under common analyzer phases") {
  Xoshiro256ss rng(60);
  for (int rep = 0; rep < 50; ++rep) {
    const OutcomeConstraint oc = random_constraint(rng);
    const GainSchedule sched = random_schedule(rng);
    const ComplexAmp p1 = std::polar(1.0, rng.uniform01() * kTwoPi);
    const ComplexAmp p2 = std::polar(1.0, rng.uniform01() * kTwoPi);
    const OutcomeConstraint rotated(oc.c * p1, oc.d * p1, oc.f * p2,
                                    oc.g * p2);
    const double base = max_gain(oc, sched).lambda_max;
    const double rot = max_gain(rotated, sched).lambda_max;
    CHECK(std::abs(base - rot) <= 1e-12);
  }
}

TEST_CASE("hardy ratio of constrained finals is -3/4 for all three outcomes") {
  const double s337 = std::sqrt(337.0);
  const OutcomeConstraint outcomes[] = {
      partial_plus_minusp(),                                   // |+-'>
      {16.0 / s337, -9.0 / s337, 0.8, 0.6},                    // |chi +'>
      {kInvSqrt2, -kInvSqrt2, 0.6, 0.8},                       // |- phi>
  };
  Xoshiro256ss rng(61);
  for (const auto& oc : outcomes) {
    for (int rep = 0; rep < 10; ++rep) {
      const ComplexAmp u{rng.gaussian(), rng.gaussian()};
      const ComplexAmp v{rng.gaussian(), rng.gaussian()};
      if (std::abs(u) < 1e-3 || std::abs(v) < 1e-3) continue;
      const FieldQuad fin = constrained_final(u, v, oc);
      const ComplexAmp ratio = (fin.a3 * fin.a4) / (fin.a1 * fin.a2);
      CHECK(std::abs(ratio - ComplexAmp{-0.75, 0.0}) <= 1e-12);
    }
  }
}

TEST_CASE("verdicts extend to nonzero delta with the compensating analyzer") {
  const double eps = 1e-3;
  Xoshiro256ss rng(62);
  for (int rep = 0; rep < 1000; ++rep) {
    // base case at delta = 0, a third of them forced zeros
    TwoQubitState base(1.0, 0.0);
    MeasurementSetting m(1.0, 0.0, 1.0, 0.0);
    if (rep % 3 == 0) {
      std::tie(base, m) = forced_zero_case(rng);
    } else {
      base = random_state(rng);
      m = random_setting(rng);
    }
    const double delta = 0.1 + rng.uniform01() * 6.0;

    const GainSchedule sched0(base.a * eps, base.b * eps, 0.0);
    const double lambda0 = max_gain(OutcomeConstraint(m), sched0).lambda_max;

    const TwoQubitState shifted(base.a, base.b, delta);
    const MeasurementSetting compensated(m.c, m.d * std::polar(1.0, delta),
                                         m.f, m.g);
    const GainSchedule sched_d(base.a * eps, base.b * eps, delta);
    const double lambda_d =
        max_gain(OutcomeConstraint(compensated), sched_d).lambda_max;

    CHECK(std::abs(lambda0 - lambda_d) <= 1e-12);
    CHECK((lambda0 <= kLambdaTol) == (lambda_d <= kLambdaTol));
    CHECK(std::abs(std::abs(joint_amplitude(shifted, compensated)) -
                   std::abs(joint_amplitude(base, m))) <= 1e-12);
  }
}

TEST_CASE("builtin forbidden outcomes stay non-positive at large gains") {
  // the small-eps argument does not cover this; observed to hold and pinned
  for (const char* name : {"max-entangled-diagonal", "partial-3-4-5", "hardy",
                           "cascade-singlet"}) {
    const Scenario s = builtin(name);
    for (const auto& outcome : s.outcomes) {
      if (!outcome.forbidden) continue;
      for (double eps : {0.5, 1.0, 2.0, 3.0}) {
        const double lambda =
            max_gain(OutcomeConstraint(outcome.setting()), s.schedule(eps))
                .lambda_max;
        CHECK(lambda <= kLambdaTol);
      }
    }
  }
}

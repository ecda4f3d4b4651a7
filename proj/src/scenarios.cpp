#include "jorca/scenarios.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "jorca/parallel.hpp"

namespace jorca {

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kSqrt337 = std::sqrt(337.0);

// (1/2) sqrt(2) == 1/sqrt(2)
const SqrtRational kHalfSqrt2{Rational(1, 2), 2};

WingSpec wing(double h, double v, SqrtRational hx, SqrtRational vx,
              Channel channel, double beta) {
  return {ComplexAmp{h, 0.0}, ComplexAmp{v, 0.0}, hx, vx, channel, beta};
}

// wing-1 diagonal analyzers at beta = pi/4
WingSpec diag_plus() {
  return wing(kInvSqrt2, kInvSqrt2, kHalfSqrt2, kHalfSqrt2, Channel::Aligned,
              kPi / 4.0);
}
WingSpec diag_minus() {
  return wing(kInvSqrt2, -kInvSqrt2, kHalfSqrt2, -kHalfSqrt2,
              Channel::Orthogonal, kPi / 4.0);
}

// wing-2 primed analyzers of the partially entangled scenario
WingSpec primed_plus() {
  return wing(0.8, 0.6, Rational(4, 5), Rational(3, 5), Channel::Aligned,
              std::atan2(3.0, 4.0));
}
WingSpec primed_minus() {
  return wing(0.6, -0.8, Rational(3, 5), -SqrtRational{Rational(4, 5)},
              Channel::Orthogonal, std::atan2(3.0, 4.0));
}

Scenario make_max_entangled() {
  Scenario s;
  s.name = "max-entangled-diagonal";
  s.state = TwoQubitState(kInvSqrt2, kInvSqrt2, 0.0);
  s.a_exact = kHalfSqrt2;
  s.b_exact = kHalfSqrt2;
  s.phase_sign = 1;
  s.gain12_scale = kInvSqrt2;
  s.gain34_scale = kInvSqrt2;
  s.delta = 0.0;
  s.outcomes = {
      {"++", diag_plus(), diag_plus(), Rational(1, 2), false},
      {"+-", diag_plus(), diag_minus(), Rational(0), true},
      {"-+", diag_minus(), diag_plus(), Rational(0), true},
      {"--", diag_minus(), diag_minus(), Rational(1, 2), false},
  };
  return s;
}

Scenario make_partial() {
  Scenario s;
  s.name = "partial-3-4-5";
  s.state = TwoQubitState(0.6, 0.8, 0.0);
  s.a_exact = SqrtRational{Rational(3, 5)};
  s.b_exact = SqrtRational{Rational(4, 5)};
  s.phase_sign = 1;
  s.gain12_scale = 0.6;
  s.gain34_scale = 0.8;
  s.delta = 0.0;
  s.outcomes = {
      {"++'", diag_plus(), primed_plus(), Rational(1, 2), false},
      {"+-'", diag_plus(), primed_minus(), Rational(0), true},
      {"-+'", diag_minus(), primed_plus(), Rational(49, 1250), false},
      {"--'", diag_minus(), primed_minus(), Rational(576, 1250), false},
  };
  return s;
}

Scenario make_hardy() {
  Scenario s;
  s.name = "hardy";
  s.state = TwoQubitState(0.6, 0.8, 0.0);
  s.a_exact = SqrtRational{Rational(3, 5)};
  s.b_exact = SqrtRational{Rational(4, 5)};
  s.phase_sign = 1;
  s.gain12_scale = 0.6;
  s.gain34_scale = 0.8;
  s.delta = 0.0;

  const WingSpec chi =
      wing(16.0 / kSqrt337, -9.0 / kSqrt337, SqrtRational{Rational(16, 337), 337},
           -SqrtRational{Rational(9, 337), 337}, Channel::Aligned,
           std::atan2(-9.0, 16.0));
  const WingSpec phi = wing(0.6, 0.8, Rational(3, 5), Rational(4, 5),
                            Channel::Aligned, std::atan2(4.0, 3.0));

  s.outcomes = {
      {"+-'", diag_plus(), primed_minus(), Rational(0), true},
      {"chi+'", chi, primed_plus(), Rational(0), true},
      {"-phi", diag_minus(), phi, Rational(0), true},
  };
  return s;
}

Scenario make_cascade() {
  Scenario s;
  s.name = "cascade-singlet";
  s.state = TwoQubitState(kInvSqrt2, kInvSqrt2, kPi);
  s.a_exact = kHalfSqrt2;
  s.b_exact = kHalfSqrt2;
  s.phase_sign = -1;
  s.gain12_scale = kInvSqrt2;
  s.gain34_scale = kInvSqrt2;
  s.delta = kPi;
  s.outcomes = {
      {"++", diag_plus(), diag_plus(), Rational(0), true},
      {"+-", diag_plus(), diag_minus(), Rational(1, 2), false},
      {"-+", diag_minus(), diag_plus(), Rational(1, 2), false},
      {"--", diag_minus(), diag_minus(), Rational(0), true},
  };
  return s;
}

ComplexAmp gaussian_complex(Xoshiro256ss& rng) {
  const double re = rng.gaussian();
  const double im = rng.gaussian();
  return {re, im};
}

std::pair<ComplexAmp, ComplexAmp> random_unit_pair(Xoshiro256ss& rng) {
  for (;;) {
    const ComplexAmp x = gaussian_complex(rng);
    const ComplexAmp y = gaussian_complex(rng);
    const double norm_sq = std::norm(x) + std::norm(y);
    if (norm_sq >= 1e-12) {
      const double inv = 1.0 / std::sqrt(norm_sq);
      return {x * inv, y * inv};
    }
  }
}

}  // namespace

Scenario builtin(std::string_view name) {
  if (name == "max-entangled-diagonal") return make_max_entangled();
  if (name == "partial-3-4-5") return make_partial();
  if (name == "hardy") return make_hardy();
  if (name == "cascade-singlet") return make_cascade();
  throw std::out_of_range("builtin: unknown scenario '" + std::string(name) +
                          "'");
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{
      "max-entangled-diagonal", "partial-3-4-5", "hardy", "cascade-singlet"};
  return names;
}

VerificationRecord run_scenario(const Scenario& s, double eps,
                                const VerifyTolerances& tol) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("run_scenario: eps must be > 0");
  }
  const GainSchedule sched = s.schedule(eps);

  VerificationRecord record;
  record.scenario = s.name;
  record.eps = eps;
  record.outcomes.resize(s.outcomes.size());

  parallel_for(s.outcomes.size(), [&](std::size_t i) {
    const OutcomeSpec& spec = s.outcomes[i];
    const MeasurementSetting setting = spec.setting();
    const double prob = std::norm(joint_amplitude(s.state, setting));
    const GainReport report = max_gain(OutcomeConstraint(setting), sched);

    OutcomeResult& out = record.outcomes[i];
    out.label = spec.label;
    out.prob = prob;
    out.lambda_max = report.lambda_max;
    const bool qm_forbidden = prob < tol.zero_prob;
    const bool cl_forbidden = report.lambda_max <= tol.lambda;
    out.verdict = cl_forbidden ? Verdict::ClassicallyForbidden
                               : Verdict::ClassicallyAllowed;
    if (spec.forbidden) {
      out.agree = qm_forbidden && cl_forbidden;
    } else {
      out.agree = !qm_forbidden && (prob > tol.allowed_prob) && !cl_forbidden;
    }
  });

  record.all_agree = true;
  for (const auto& out : record.outcomes) record.all_agree &= out.agree;
  return record;
}

std::vector<SweepRow> sweep_angle(const Scenario& s, int wing_index,
                                  std::span<const double> betas, double eps) {
  if (wing_index != 1 && wing_index != 2) {
    throw std::invalid_argument("sweep_angle: wing must be 1 or 2");
  }
  if (betas.empty()) {
    throw std::invalid_argument("sweep_angle: empty beta grid");
  }
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("sweep_angle: eps must be > 0");
  }

  const OutcomeSpec* target = nullptr;
  for (const auto& spec : s.outcomes) {
    if (spec.forbidden) {
      target = &spec;
      break;
    }
  }
  if (target == nullptr) {
    throw std::invalid_argument("sweep_angle: scenario has no forbidden outcome");
  }

  const GainSchedule sched = s.schedule(eps);
  const WingSpec& swept = wing_index == 1 ? target->wing1 : target->wing2;

  std::vector<SweepRow> rows(betas.size());
  parallel_for(betas.size(), [&](std::size_t i) {
    const double beta = betas[i];
    const ComplexAmp h = swept.channel == Channel::Aligned
                             ? ComplexAmp{std::cos(beta), 0.0}
                             : ComplexAmp{-std::sin(beta), 0.0};
    const ComplexAmp v = swept.channel == Channel::Aligned
                             ? ComplexAmp{std::sin(beta), 0.0}
                             : ComplexAmp{std::cos(beta), 0.0};
    const MeasurementSetting setting =
        wing_index == 1
            ? MeasurementSetting(h, v, target->wing2.h, target->wing2.v)
            : MeasurementSetting(target->wing1.h, target->wing1.v, h, v);
    rows[i].beta = beta;
    rows[i].prob = std::norm(joint_amplitude(s.state, setting));
    rows[i].lambda_max =
        max_gain(OutcomeConstraint(setting), sched).lambda_max;
  });
  return rows;
}

TwoQubitState random_state(Xoshiro256ss& rng, bool with_delta) {
  const double t = rng.uniform01() * (kPi / 2.0);
  const double delta = with_delta ? rng.uniform01() * 2.0 * kPi : 0.0;
  return {std::cos(t), std::sin(t), delta};
}

MeasurementSetting random_setting(Xoshiro256ss& rng) {
  const auto [c, d] = random_unit_pair(rng);
  const auto [f, g] = random_unit_pair(rng);
  return {c, d, f, g};
}

std::pair<TwoQubitState, MeasurementSetting> forced_zero_case(
    Xoshiro256ss& rng, bool with_delta) {
  for (;;) {
    const TwoQubitState state = random_state(rng, with_delta);
    const auto [c, d] = random_unit_pair(rng);
    const ComplexAmp g = gaussian_complex(rng);
    if (state.b * std::abs(d) < 1e-6) continue;

    const ComplexAmp f = -state.a * c * g *
                         std::polar(1.0, state.delta) / (state.b * d);
    const double norm_sq = std::norm(f) + std::norm(g);
    if (norm_sq < 1e-12) continue;
    const double inv = 1.0 / std::sqrt(norm_sq);
    return {state, MeasurementSetting(c, d, f * inv, g * inv)};
  }
}

ScanSummary random_scan(std::size_t n, double eps, std::uint64_t rng_seed,
                        double zero_fraction, const VerifyTolerances& tol) {
  if (n < 1) throw std::invalid_argument("random_scan: n must be >= 1");
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("random_scan: eps must be > 0");
  }
  if (!(zero_fraction >= 0.0 && zero_fraction <= 1.0)) {
    throw std::invalid_argument("random_scan: zero_fraction must be in [0,1]");
  }

  ScanSummary summary;
  summary.n = n;
  summary.eps = eps;
  summary.rng_seed = rng_seed;
  summary.zero_fraction = zero_fraction;
  summary.forced_zeros = static_cast<std::size_t>(
      std::ceil(zero_fraction * static_cast<double>(n)));
  summary.cases.resize(n);

  parallel_for(n, [&](std::size_t i) {
    Xoshiro256ss rng(substream_seed(rng_seed, i));
    ScanCase& row = summary.cases[i];
    row.forced_zero = i < summary.forced_zeros;

    TwoQubitState state{1.0, 0.0};
    MeasurementSetting setting{1.0, 0.0, 1.0, 0.0};
    if (row.forced_zero) {
      std::tie(state, setting) = forced_zero_case(rng);
    } else {
      state = random_state(rng);
      setting = random_setting(rng);
    }

    row.a = state.a;
    row.b = state.b;
    row.prob = std::norm(joint_amplitude(state, setting));
    const GainSchedule sched(state.a * eps, state.b * eps, state.delta);
    row.lambda_max = max_gain(OutcomeConstraint(setting), sched).lambda_max;

    row.qm_forbidden = row.prob < tol.zero_prob;
    row.cl_forbidden = row.lambda_max <= tol.lambda;
    if (row.qm_forbidden) {
      row.agree = row.cl_forbidden;
    } else if (row.prob > tol.allowed_prob) {
      row.agree = !row.cl_forbidden;
    } else {
      row.agree = true;  // gray zone: no implication either way
    }
  });

  summary.max_lambda_forbidden = -std::numeric_limits<double>::infinity();
  summary.min_lambda_allowed = std::numeric_limits<double>::infinity();
  for (const auto& row : summary.cases) {
    if (row.agree) {
      ++summary.agreements;
    } else {
      ++summary.disagreements;
    }
    if (!row.qm_forbidden && row.prob <= tol.allowed_prob) ++summary.gray_zone;
    if (row.qm_forbidden) {
      summary.max_lambda_forbidden =
          std::max(summary.max_lambda_forbidden, row.lambda_max);
    }
    if (row.prob > tol.allowed_prob) {
      summary.min_lambda_allowed =
          std::min(summary.min_lambda_allowed, row.lambda_max);
    }
  }
  return summary;
}

}  // namespace jorca

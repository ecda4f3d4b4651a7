#include "jorca/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace jorca {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

void require_finite(const FieldQuad& q, const char* what) {
  if (!q.finite()) {
    throw std::domain_error(std::string(what) + ": non-finite amplitude");
  }
}

void require_stage(const FieldQuad& q, Stage expected, const char* what) {
  if (q.stage != expected) {
    throw std::invalid_argument(std::string(what) + ": wrong stage tag");
  }
}

}  // namespace

GainSchedule::GainSchedule(double gain12, double gain34, double plate_delta)
    : g12(gain12), g34(gain34), delta(plate_delta) {
  if (!(std::isfinite(g12) && std::isfinite(g34) && std::isfinite(delta))) {
    throw std::invalid_argument("GainSchedule: non-finite parameter");
  }
  if (g12 < 0.0 || g34 < 0.0) {
    throw std::invalid_argument("GainSchedule: gain exponents must be >= 0");
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  delta = std::fmod(delta, two_pi);
  if (delta < 0.0) delta += two_pi;
}

FieldQuad forward_amplify(const FieldQuad& seed, const GainSchedule& sched) {
  require_stage(seed, Stage::Seed, "forward_amplify");
  require_finite(seed, "forward_amplify");

  const double ch12 = std::cosh(sched.g12), sh12 = std::sinh(sched.g12);
  const double ch34 = std::cosh(sched.g34), sh34 = std::sinh(sched.g34);

  FieldQuad fin;
  fin.a1 = seed.a1 * ch12 + kI * std::conj(seed.a2) * sh12;
  fin.a2 = seed.a2 * ch12 + kI * std::conj(seed.a1) * sh12;
  fin.a3 = seed.a3 * ch34 + kI * std::conj(seed.a4) * sh34;
  fin.a4 = seed.a4 * ch34 + kI * std::conj(seed.a3) * sh34;
  fin.a3 *= std::polar(1.0, sched.delta);
  fin.stage = Stage::Final;

  require_finite(fin, "forward_amplify");
  return fin;
}

FieldQuad inverse_amplify(const FieldQuad& fin, const GainSchedule& sched) {
  require_stage(fin, Stage::Final, "inverse_amplify");
  require_finite(fin, "inverse_amplify");

  const double ch12 = std::cosh(sched.g12), sh12 = std::sinh(sched.g12);
  const double ch34 = std::cosh(sched.g34), sh34 = std::sinh(sched.g34);
  const ComplexAmp a3 = fin.a3 * std::polar(1.0, -sched.delta);

  FieldQuad seed;
  seed.a1 = fin.a1 * ch12 - kI * std::conj(fin.a2) * sh12;
  seed.a2 = fin.a2 * ch12 - kI * std::conj(fin.a1) * sh12;
  seed.a3 = a3 * ch34 - kI * std::conj(fin.a4) * sh34;
  seed.a4 = fin.a4 * ch34 - kI * std::conj(a3) * sh34;
  seed.stage = Stage::Seed;

  require_finite(seed, "inverse_amplify");
  return seed;
}

std::pair<double, double> pair_gain(const FieldQuad& seed,
                                    const FieldQuad& fin) {
  require_stage(seed, Stage::Seed, "pair_gain");
  require_stage(fin, Stage::Final, "pair_gain");
  require_finite(seed, "pair_gain");
  require_finite(fin, "pair_gain");
  return {std::norm(fin.a1) - std::norm(seed.a1),
          std::norm(fin.a3) - std::norm(seed.a3)};
}

}  // namespace jorca

#include "jorca/quantum.hpp"

#include <cmath>
#include <stdexcept>

namespace jorca {

namespace {

constexpr double kNormTol = 1e-12;

void check_unit_pair(ComplexAmp x, ComplexAmp y, const char* what) {
  if (!is_finite(x) || !is_finite(y)) {
    throw std::invalid_argument(std::string(what) + ": non-finite coefficient");
  }
  if (std::abs(std::norm(x) + std::norm(y) - 1.0) > kNormTol) {
    throw std::invalid_argument(std::string(what) + ": pair not normalized");
  }
}

}  // namespace

TwoQubitState::TwoQubitState(double schmidt_a, double schmidt_b, double phase)
    : a(schmidt_a), b(schmidt_b), delta(phase) {
  if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(delta))) {
    throw std::invalid_argument("TwoQubitState: non-finite parameter");
  }
  if (a < 0.0 || b < 0.0) {
    throw std::invalid_argument("TwoQubitState: Schmidt coefficients must be >= 0");
  }
  if (std::abs(a * a + b * b - 1.0) > kNormTol) {
    throw std::invalid_argument("TwoQubitState: a^2 + b^2 != 1");
  }
}

MeasurementSetting::MeasurementSetting(ComplexAmp c1, ComplexAmp d1,
                                       ComplexAmp f2, ComplexAmp g2)
    : c(c1), d(d1), f(f2), g(g2) {
  check_unit_pair(c, d, "MeasurementSetting wing 1");
  check_unit_pair(f, g, "MeasurementSetting wing 2");
}

ComplexAmp joint_amplitude(const TwoQubitState& state,
                           const MeasurementSetting& m) {
  return state.a * m.c * m.g +
         state.b * std::polar(1.0, -state.delta) * m.d * m.f;
}

std::array<std::array<double, 2>, 2> probability_table(
    const TwoQubitState& state, const WingBasis& wing1,
    const WingBasis& wing2) {
  auto check_basis = [](const WingBasis& basis, const char* what) {
    const double n0 = std::norm(basis.c0) + std::norm(basis.d0);
    const double n1 = std::norm(basis.c1) + std::norm(basis.d1);
    const ComplexAmp overlap =
        std::conj(basis.c0) * basis.c1 + std::conj(basis.d0) * basis.d1;
    if (std::abs(n0 - 1.0) > kNormTol || std::abs(n1 - 1.0) > kNormTol ||
        std::abs(overlap) > kNormTol) {
      throw std::domain_error(std::string(what) + ": basis not orthonormal");
    }
  };
  check_basis(wing1, "probability_table wing 1");
  check_basis(wing2, "probability_table wing 2");

  const ComplexAmp c[2] = {wing1.c0, wing1.c1};
  const ComplexAmp d[2] = {wing1.d0, wing1.d1};
  const ComplexAmp f[2] = {wing2.c0, wing2.c1};
  const ComplexAmp g[2] = {wing2.d0, wing2.d1};

  std::array<std::array<double, 2>, 2> table{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      table[i][j] = std::norm(
          joint_amplitude(state, MeasurementSetting(c[i], d[i], f[j], g[j])));
    }
  }
  return table;
}

bool is_forbidden(const TwoQubitState& state, const MeasurementSetting& m,
                  double tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("is_forbidden: tol must be > 0");
  }
  return std::norm(joint_amplitude(state, m)) < tol;
}

Rational exact_joint_probability(const SqrtRational& a, const SqrtRational& b,
                                 int phase_sign, const SqrtRational& c,
                                 const SqrtRational& d, const SqrtRational& f,
                                 const SqrtRational& g) {
  if (phase_sign != 1 && phase_sign != -1) {
    throw std::invalid_argument("exact_joint_probability: phase_sign must be +-1");
  }
  const SqrtRational second = b * d * f;
  const SqrtRational amp =
      a * c * g + (phase_sign == 1 ? second : -second);
  return amp.squared();
}

}  // namespace jorca

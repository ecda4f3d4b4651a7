#include "jorca/three_wave.hpp"

#include <cmath>
#include <ostream>

#include "jorca/io.hpp"

namespace jorca {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

struct Envelopes {
  ComplexAmp e0, e1, e2;
};

Envelopes operator+(const Envelopes& a, const Envelopes& b) {
  return {a.e0 + b.e0, a.e1 + b.e1, a.e2 + b.e2};
}
Envelopes operator*(double s, const Envelopes& a) {
  return {s * a.e0, s * a.e1, s * a.e2};
}

Envelopes derivative(const Envelopes& y, const ThreeWaveState& p) {
  return {kI * p.gamma * p.w0 * y.e1 * y.e2,
          kI * p.gamma * p.w1 * y.e0 * std::conj(y.e2),
          kI * p.gamma * p.w2 * y.e0 * std::conj(y.e1)};
}

Envelopes rk4_step(const Envelopes& y, double dt, const ThreeWaveState& p) {
  const Envelopes k1 = derivative(y, p);
  const Envelopes k2 = derivative(y + (0.5 * dt) * k1, p);
  const Envelopes k3 = derivative(y + (0.5 * dt) * k2, p);
  const Envelopes k4 = derivative(y + dt * k3, p);
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

ThreeWaveState::ThreeWaveState(ComplexAmp pump, ComplexAmp sig, ComplexAmp idl,
                               double wp, double ws, double wi, double coupling)
    : e0(pump), e1(sig), e2(idl), w0(wp), w1(ws), w2(wi), gamma(coupling) {
  if (!(is_finite(e0) && is_finite(e1) && is_finite(e2))) {
    throw std::domain_error("ThreeWaveState: non-finite envelope");
  }
  if (!(w0 > 0.0 && w1 > 0.0 && w2 > 0.0)) {
    throw std::invalid_argument("ThreeWaveState: frequencies must be > 0");
  }
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("ThreeWaveState: gamma must be > 0");
  }
  if (std::abs(w0 - (w1 + w2)) > 1e-12 * w0) {
    throw std::invalid_argument("ThreeWaveState: w0 != w1 + w2");
  }
}

Trajectory integrate(const ThreeWaveState& init, double t_end, double dt,
                     const IntegrateOptions& opts) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("integrate: dt must be > 0");
  }
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw std::invalid_argument("integrate: t_end must be > 0");
  }
  if (!(t_end / dt < static_cast<double>(opts.max_steps))) {
    throw ResourceError("integrate: step count exceeds maximum");
  }
  const std::size_t full_steps = static_cast<std::size_t>(t_end / dt);
  const double remainder = t_end - static_cast<double>(full_steps) * dt;
  const bool has_tail = remainder > 1e-12 * dt;
  const std::size_t total = full_steps + (has_tail ? 1 : 0);
  if (total > opts.max_steps) {
    throw ResourceError("integrate: step count exceeds maximum");
  }

  const std::size_t stride = opts.stride == 0 ? 1 : opts.stride;

  Trajectory traj;
  traj.dt = dt;
  traj.total_steps = total;
  traj.stride = stride;
  traj.times.reserve(total / stride + 2);
  traj.states.reserve(total / stride + 2);

  ThreeWaveState current = init;
  Envelopes y{init.e0, init.e1, init.e2};
  traj.times.push_back(0.0);
  traj.states.push_back(current);

  for (std::size_t step = 1; step <= total; ++step) {
    const bool tail = has_tail && step == total;
    const double h = tail ? remainder : dt;
    y = rk4_step(y, h, init);
    const double t = tail ? t_end : static_cast<double>(step) * dt;
    if (step % stride == 0 || step == total) {
      current.e0 = y.e0;
      current.e1 = y.e1;
      current.e2 = y.e2;
      traj.times.push_back(t);
      traj.states.push_back(current);
    }
  }
  return traj;
}

std::array<double, 3> manley_rowe_quantities(const ThreeWaveState& s) {
  const double n0 = std::norm(s.e0) / s.w0;
  const double n1 = std::norm(s.e1) / s.w1;
  const double n2 = std::norm(s.e2) / s.w2;
  return {n1 - n2, n0 + n1, n0 + n2};
}

std::array<double, 3> manley_rowe_residual(const Trajectory& traj) {
  if (traj.states.empty()) {
    throw std::domain_error("manley_rowe_residual: empty trajectory");
  }
  const auto ref = manley_rowe_quantities(traj.initial());
  std::array<double, 3> worst{0.0, 0.0, 0.0};
  for (const auto& s : traj.states) {
    const auto q = manley_rowe_quantities(s);
    for (int k = 0; k < 3; ++k) {
      const double scale = std::abs(ref[k]) > 0.0 ? std::abs(ref[k]) : 1.0;
      worst[k] = std::max(worst[k], std::abs(q[k] - ref[k]) / scale);
    }
  }
  return worst;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
  os << "t,e0_re,e0_im,e1_re,e1_im,e2_re,e2_im,mr_12,mr_01,mr_02\n";
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const auto& s = traj.states[i];
    const auto mr = manley_rowe_quantities(s);
    os << format_g17(traj.times[i]) << ',' << format_g17(s.e0.real()) << ','
       << format_g17(s.e0.imag()) << ',' << format_g17(s.e1.real()) << ','
       << format_g17(s.e1.imag()) << ',' << format_g17(s.e2.real()) << ','
       << format_g17(s.e2.imag()) << ',' << format_g17(mr[0]) << ','
       << format_g17(mr[1]) << ',' << format_g17(mr[2]) << '\n';
  }
}

}  // namespace jorca

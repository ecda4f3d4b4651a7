#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "jorca/field.hpp"

// Full three-wave-mixing dynamics with pump depletion:
//   dE0/dt =  i gamma w0 E1 E2
//   dE1/dt =  i gamma w1 E0 E2*
//   dE2/dt =  i gamma w2 E0 E1*
// Used to validate the closed-form gain maps in field.hpp and the
// Manley-Rowe conservation laws.

namespace jorca {

class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unscaled envelopes E0, E1, E2 with their angular frequencies and the
/// coupling strength. Phase matching w0 = w1 + w2 is enforced.
struct ThreeWaveState {
  ComplexAmp e0{}, e1{}, e2{};
  double w0 = 0.0, w1 = 0.0, w2 = 0.0;
  double gamma = 0.0;

  ThreeWaveState(ComplexAmp pump, ComplexAmp sig, ComplexAmp idl, double wp,
                 double ws, double wi, double coupling);
};

struct IntegrateOptions {
  std::size_t stride = 100;           // snapshot every `stride` steps
  std::size_t max_steps = 10'000'000; // ResourceError above this
};

struct Trajectory {
  std::vector<double> times;          // strictly increasing, endpoint included
  std::vector<ThreeWaveState> states;
  double dt = 0.0;
  std::size_t total_steps = 0;
  std::size_t stride = 0;

  const ThreeWaveState& initial() const { return states.front(); }
  const ThreeWaveState& final_state() const { return states.back(); }
};

/// Classical fixed-step RK4 over [0, t_end]; the last step is shortened to
/// land exactly on t_end.
Trajectory integrate(const ThreeWaveState& init, double t_end, double dt,
                     const IntegrateOptions& opts = {});

/// The three conserved combinations
///   {|E1|^2/w1 - |E2|^2/w2, |E0|^2/w0 + |E1|^2/w1, |E0|^2/w0 + |E2|^2/w2}.
std::array<double, 3> manley_rowe_quantities(const ThreeWaveState& s);

/// Maximum drift of each conserved quantity over the trajectory, relative to
/// its initial value (absolute when the initial value is zero).
std::array<double, 3> manley_rowe_residual(const Trajectory& traj);

/// CSV export: t, Re/Im of E0, E1, E2, and the three conserved quantities.
void write_trajectory_csv(const Trajectory& traj, std::ostream& os);

}  // namespace jorca

#include "jorca/kernels/gain_batch.hpp"

namespace jorca::kernels {

void gain_batch_scalar(const OutcomeConstraint& oc, const GainSchedule& sched,
                       const GainBatch& batch) {
  for (std::size_t i = 0; i < batch.n; ++i) {
    const ComplexAmp u{batch.u_re[i], batch.u_im[i]};
    const ComplexAmp v{batch.v_re[i], batch.v_im[i]};
    batch.gain[i] = direct_gain(u, v, oc, sched);
  }
}

}  // namespace jorca::kernels

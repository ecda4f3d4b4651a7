#pragma once

#include <cstddef>

#include "jorca/engine.hpp"

// Batch evaluation of the direct gain route for the Monte Carlo oracle:
// the same constrained_final -> inverse_amplify -> intensity chain as
// direct_gain, applied to many sample vectors at once. The scalar kernel is
// the reference (it literally composes the module functions); the AVX2
// kernel is an equivalence-tested reimplementation picked at runtime.

namespace jorca::kernels {

/// SoA view of n sample vectors w = (Re u, Im u, Re v, Im v) and the output
/// gains. All five arrays must hold n elements.
struct GainBatch {
  const double* u_re = nullptr;
  const double* u_im = nullptr;
  const double* v_re = nullptr;
  const double* v_im = nullptr;
  double* gain = nullptr;
  std::size_t n = 0;
};

void gain_batch_scalar(const OutcomeConstraint& oc, const GainSchedule& sched,
                       const GainBatch& batch);

#if JORCA_HAVE_AVX2
void gain_batch_avx2(const OutcomeConstraint& oc, const GainSchedule& sched,
                     const GainBatch& batch);
#endif

/// True when the CPU reports AVX2+FMA (and the kernel was compiled in).
bool avx2_available();

using GainBatchFn = void (*)(const OutcomeConstraint&, const GainSchedule&,
                             const GainBatch&);

/// Runtime selection: AVX2 when available, scalar otherwise. The environment
/// variable JORCA_SIMD (values "scalar" or "avx2") overrides the choice;
/// requesting avx2 on an unsupported CPU falls back to scalar.
GainBatchFn select_gain_batch();

/// Name of the backend select_gain_batch() would return: "avx2" or "scalar".
const char* gain_batch_backend();

}  // namespace jorca::kernels

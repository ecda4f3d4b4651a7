#include "jorca/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "jorca/kernels/gain_batch.hpp"
#include "jorca/rng.hpp"

namespace jorca {

namespace {

constexpr double kNormTol = 1e-12;

void check_pair(ComplexAmp x, ComplexAmp y, const char* what) {
  if (!is_finite(x) || !is_finite(y)) {
    throw std::invalid_argument(std::string(what) + ": non-finite coefficient");
  }
  if (std::abs(std::norm(x) + std::norm(y) - 1.0) > kNormTol) {
    throw std::invalid_argument(std::string(what) + ": pair not normalized");
  }
}

double frobenius(const Mat4& m) {
  double sum = 0.0;
  for (const auto& row : m) {
    for (double x : row) sum += x * x;
  }
  return std::sqrt(sum);
}

}  // namespace

OutcomeConstraint::OutcomeConstraint(ComplexAmp c1, ComplexAmp d1,
                                     ComplexAmp f2, ComplexAmp g2)
    : c(c1), d(d1), f(f2), g(g2) {
  check_pair(c, d, "OutcomeConstraint wing 1");
  check_pair(f, g, "OutcomeConstraint wing 2");
}

FieldQuad constrained_final(ComplexAmp u, ComplexAmp v,
                            const OutcomeConstraint& oc) {
  FieldQuad fin;
  fin.a1 = oc.c * u;
  fin.a3 = oc.d * u;  // post-plate mode 3
  fin.a2 = oc.g * v;
  fin.a4 = oc.f * v;
  fin.stage = Stage::Final;
  return fin;
}

double direct_gain(ComplexAmp u, ComplexAmp v, const OutcomeConstraint& oc,
                   const GainSchedule& sched) {
  const FieldQuad fin = constrained_final(u, v, oc);
  const FieldQuad seed = inverse_amplify(fin, sched);
  return fin.intensity() - seed.intensity();
}

Mat4 gain_form(const OutcomeConstraint& oc, const GainSchedule& sched) {
  auto eval = [&](double w0, double w1, double w2, double w3) {
    return direct_gain({w0, w1}, {w2, w3}, oc, sched);
  };
  double diag[4];
  diag[0] = eval(1, 0, 0, 0);
  diag[1] = eval(0, 1, 0, 0);
  diag[2] = eval(0, 0, 1, 0);
  diag[3] = eval(0, 0, 0, 1);

  Mat4 m{};
  for (int j = 0; j < 4; ++j) m[j][j] = diag[j];

  auto pair_sum = [&](int j, int k) {
    double w[4] = {0, 0, 0, 0};
    w[j] = 1;
    w[k] = 1;
    return eval(w[0], w[1], w[2], w[3]);
  };
  for (int j = 0; j < 4; ++j) {
    for (int k = j + 1; k < 4; ++k) {
      const double off = 0.5 * (pair_sum(j, k) - diag[j] - diag[k]);
      m[j][k] = off;
      m[k][j] = off;
    }
  }
  return m;
}

EigenResult jacobi_eigensolve(const Mat4& input) {
  Mat4 a = input;
  Mat4 vec{};
  for (int i = 0; i < 4; ++i) vec[i][i] = 1.0;

  const double scale = frobenius(a);
  const double threshold = 1e-14 * std::max(scale, 1e-300);

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) off = std::max(off, std::abs(a[p][q]));
    }
    if (off <= threshold) {
      EigenResult out;
      for (int i = 0; i < 4; ++i) out.values[i] = a[i][i];
      out.vectors = vec;
      return out;
    }
    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        if (std::abs(a[p][q]) <= threshold) continue;
        // classic Jacobi rotation annihilating a[p][q]
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cos_r = 1.0 / std::sqrt(t * t + 1.0);
        const double sin_r = t * cos_r;
        for (int k = 0; k < 4; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = cos_r * akp - sin_r * akq;
          a[k][q] = sin_r * akp + cos_r * akq;
        }
        for (int k = 0; k < 4; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = cos_r * apk - sin_r * aqk;
          a[q][k] = sin_r * apk + cos_r * aqk;
        }
        for (int k = 0; k < 4; ++k) {
          const double vkp = vec[k][p], vkq = vec[k][q];
          vec[k][p] = cos_r * vkp - sin_r * vkq;
          vec[k][q] = sin_r * vkp + cos_r * vkq;
        }
      }
    }
  }
  throw std::runtime_error("jacobi_eigensolve: did not converge");
}

std::string_view to_string(Verdict v) {
  return v == Verdict::ClassicallyForbidden ? "classically-forbidden"
                                            : "classically-allowed";
}

GainReport max_gain(const OutcomeConstraint& oc, const GainSchedule& sched) {
  const Mat4 m = gain_form(oc, sched);
  const EigenResult eig = jacobi_eigensolve(m);

  int top = 0;
  for (int i = 1; i < 4; ++i) {
    if (eig.values[i] > eig.values[top]) top = i;
  }

  // eigenvector columns are orthonormal, so |w| = 1 and I_out = 1
  const ComplexAmp u{eig.vectors[0][top], eig.vectors[1][top]};
  const ComplexAmp v{eig.vectors[2][top], eig.vectors[3][top]};

  GainReport report;
  report.lambda_max = eig.values[top];
  report.optimizer = constrained_final(u, v, oc);
  report.seed = inverse_amplify(report.optimizer, sched);
  report.i_out = report.optimizer.intensity();
  report.i_in = report.seed.intensity();
  report.verdict = report.lambda_max <= kLambdaTol
                       ? Verdict::ClassicallyForbidden
                       : Verdict::ClassicallyAllowed;
  return report;
}

double sample_gain(const OutcomeConstraint& oc, const GainSchedule& sched,
                   std::size_t n, std::uint64_t rng_seed) {
  if (n < 1) throw std::invalid_argument("sample_gain: n must be >= 1");

  const kernels::GainBatchFn batch_fn = kernels::select_gain_batch();
  Xoshiro256ss rng(rng_seed);

  constexpr std::size_t kChunk = 4096;
  std::vector<double> ur(kChunk), ui(kChunk), vr(kChunk), vi(kChunk),
      gain(kChunk);

  double best = -std::numeric_limits<double>::infinity();
  std::size_t remaining = n;
  while (remaining > 0) {
    const std::size_t count = std::min(remaining, kChunk);
    for (std::size_t i = 0; i < count; ++i) {
      double w[4];
      double norm_sq = 0.0;
      do {
        norm_sq = 0.0;
        for (double& x : w) {
          x = rng.gaussian();
          norm_sq += x * x;
        }
      } while (norm_sq < 1e-12);
      const double inv = 1.0 / std::sqrt(norm_sq);
      ur[i] = w[0] * inv;
      ui[i] = w[1] * inv;
      vr[i] = w[2] * inv;
      vi[i] = w[3] * inv;
    }
    kernels::GainBatch batch{ur.data(), ui.data(), vr.data(),
                             vi.data(), gain.data(), count};
    batch_fn(oc, sched, batch);
    for (std::size_t i = 0; i < count; ++i) best = std::max(best, gain[i]);
    remaining -= count;
  }
  return best;
}

SlopeFit fit_epsilon_slope(const OutcomeConstraint& oc, double a, double b,
                           std::span<const double> eps_grid) {
  if (eps_grid.size() < 4) {
    throw std::invalid_argument("fit_epsilon_slope: need >= 4 grid points");
  }
  double lo = eps_grid[0], hi = eps_grid[0];
  for (double eps : eps_grid) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
      throw std::invalid_argument("fit_epsilon_slope: grid must be positive");
    }
    lo = std::min(lo, eps);
    hi = std::max(hi, eps);
  }
  if (hi / lo < 100.0) {
    throw std::invalid_argument(
        "fit_epsilon_slope: grid must span at least two decades");
  }

  std::vector<double> xs, ys;
  int excluded = 0;
  for (double eps : eps_grid) {
    const GainSchedule sched(a * eps, b * eps, 0.0);
    const double lambda = max_gain(oc, sched).lambda_max;
    if (lambda == 0.0) {
      ++excluded;
      continue;
    }
    xs.push_back(std::log(eps));
    ys.push_back(std::log(std::abs(lambda)));
  }
  if (xs.size() < 2) {
    throw std::domain_error("fit_epsilon_slope: too few usable grid points");
  }

  const auto n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  SlopeFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.excluded_points = excluded;
  return fit;
}

}  // namespace jorca

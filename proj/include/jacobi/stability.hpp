#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "jacobi/inverse.hpp"
#include "jacobi/operator.hpp"

namespace jacobi {

enum class Perturbation { radial, uniform_disk };

struct SweepConfig {
  JacobiOperator base;
  std::vector<double> eps_grid;
  std::vector<double> radius_grid;
  int trials_per_cell = 1;
  std::uint64_t seed = 0;
  Perturbation perturbation = Perturbation::uniform_disk;
  /// Class parameters used to report class membership of each reconstruction.
  std::optional<double> delta;
  double Q = 3.0;
  /// 0 uses the hardware concurrency.
  unsigned threads = 0;
};

struct SweepRecord {
  double eps = 0.0;
  double radius = 0.0;
  int trial = 0;
  double realized_eps = 0.0;
  double max_b_err = std::numeric_limits<double>::quiet_NaN();
  double max_a2_err = std::numeric_limits<double>::quiet_NaN();
  double bound_w = 0.0;
  double bound_s = 0.0;
  double measured_w = 0.0;  ///< sup over |z| = 1 of |A w - Ã w̃|
  double measured_s = 0.0;  ///< sup over |z| = 1 of |A s - Ã s̃|
  std::string status = "ok";
  std::optional<bool> in_class;
};

struct SweepSummary {
  double slope = std::numeric_limits<double>::quiet_NaN();  ///< log max_b_err vs log eps at the largest R
  double slope_radius = 0.0;
  double C_hat = 0.0;
  int failures = 0;
};

struct SweepResult {
  std::vector<SweepRecord> records;
  SweepSummary summary;
};

/// Displaces every root with |z| < radius by at most eps and deletes the
/// others. Conjugate pairs move conjugately and real roots stay real.
/// Throws Error(GapTooSmall) unless eps is below half the smallest distance
/// between in-disk roots.
RootData perturb_roots(const RootData& rd, double eps, double radius, std::uint64_t seed,
                       Perturbation mode = Perturbation::uniform_disk, double pairing_tol = 1e-8);

struct TheoryBounds {
  double bound_w = 0.0;
  double bound_s = 0.0;
  double bound_b0 = 0.0;
  double gamma_w = 1.0;
  double gamma_s = 1.0;
  double eps_w = 0.0;
  double eps_s = 0.0;
};

/// Explicit right-hand sides of the estimates for |A w - Ã w̃| and
/// |A s - Ã s̃| on the closed unit disk. `rd_t` is compared with the roots of
/// `rd` lying in |z| < radius.
TheoryBounds theoretical_constants(const RootData& rd, const RootData& rd_t, double radius);

struct MeasuredDifferences {
  double w = 0.0;
  double s = 0.0;
};

/// sup over 256 points of |z| = 1 of |P - P̃| and |z (b_0 Q - b̃_0 Q̃)|.
MeasuredDifferences measured_differences(const RootData& rd, const RootData& rd_t);

SweepResult run_sweep(const SweepConfig& cfg);

/// CSV with header eps,radius,trial,realized_eps,max_b_err,max_a2_err,bound_w,bound_s,status.
std::string sweep_csv(const std::vector<SweepRecord>& records);

}  // namespace jacobi

#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "jacobi/operator.hpp"
#include "jacobi/scattering.hpp"

namespace jacobi {

enum class KernelKind { K0, L0, K_pair };

/// Dense kernel over the triangle n >= -1, n < m < 2N - n for operators
/// supported in [0, N]. Lookups outside the triangle return 0.
class KernelTable {
 public:
  KernelTable() = default;
  KernelTable(KernelKind kind, int N);

  KernelKind kind() const noexcept { return kind_; }
  int N() const noexcept { return N_; }

  static bool in_triangle(int N, int n, int m) noexcept { return n >= -1 && n < m && m < 2 * N - n; }

  double operator()(int n, int m) const;
  void set(int n, int m, double v);
  double max_abs() const;

  /// A^+(n) / Ã^+(n), filled for K_pair tables on n = -1 .. N + 1.
  std::map<int, double> ratio;

  const std::map<std::pair<int, int>, double>& entries() const noexcept { return table_; }

 private:
  KernelKind kind_ = KernelKind::K0;
  int N_ = 0;
  std::map<std::pair<int, int>, double> table_;
};

/// The same operator on the window [0, N], padded with free coefficients.
/// Throws Error(Validation) unless the operator sits inside [0, N].
JacobiOperator on_window(const JacobiOperator& op, int N);

/// K_0^+ restricted to the triangle.
KernelTable k0_table(const JacobiOperator& op);

/// Kernel of L_0 = K_0^{-1}, by back substitution from the last row.
KernelTable inverse_kernel(const KernelRows& k0);

/// Largest deviation of K_0 L_0 and L_0 K_0 from the identity on the unit
/// impulses supported in [-1, 2N].
double impulse_composition_error(const JacobiOperator& op, const KernelTable& l0);

/// Kernel of the transformation operator for the pair (op, op_t). Both are
/// placed on the common window [0, N]. The construction through L_0 and
/// K̃_0 is compared entrywise with the difference form; a disagreement above
/// 1e-10 (relative to max(1, |K|)) throws Error(CrossCheckFailure).
KernelTable pair_kernel(const JacobiOperator& op, const JacobiOperator& op_t);

struct PairIdentityReport {
  double box = 0.0;  ///< the □K difference equation
  double k1 = 0.0;   ///< K(n, n+1), n <= N - 1
  double k2 = 0.0;   ///< K(n, n+2), n <= N - 2
  double k1_ratio = 0.0;  ///< consistency of the stored A^+/Ã^+ ratios
  double scale = 1.0;     ///< max(1, max |K|); residuals above are divided by it
};

PairIdentityReport check_pair_identities(const KernelTable& K, const JacobiOperator& op,
                                         const JacobiOperator& op_t);

struct BoundConstants {
  double C0_hat = 0.0;
  /// Unset when no pair had a usable denominator.
  std::optional<double> C1_hat;
  int degenerate = 0;  ///< K(-1, j) vanishes for 2 <= j <= 2N although K does not
  int vacuous = 0;     ///< K vanishes identically
};

BoundConstants empirical_bound_constants(
    const std::vector<std::pair<JacobiOperator, JacobiOperator>>& pairs);

/// K_0(-1, m) - K̃_0(-1, m) as a trapezoid-rule contour integral on |z| = 1/2
/// of the difference of A f^+(-1, z), built from w and s. Throws
/// Error(QuadratureDisagreement) when it differs from the direct coefficient
/// difference by more than 1e-8.
double cauchy_extract(const JacobiOperator& op, const JacobiOperator& op_t, int m, int quad_points = 512);

/// The direct difference K_0(-1, m) - K̃_0(-1, m).
double direct_k0_difference(const JacobiOperator& op, const JacobiOperator& op_t, int m);

}  // namespace jacobi

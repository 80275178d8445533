#pragma once

#include <span>
#include <vector>

#include "jacobi/polynomial.hpp"

namespace jacobi {

struct RootOptions {
  double root_tol = 1e-10;
  double pairing_tol = 1e-8;
  int max_polish = 20;
};

/// Multiset of complex roots ordered by increasing modulus, ties broken by
/// increasing argument in (-pi, pi].
struct ComplexRootSet {
  std::vector<cplx> roots;

  std::size_t size() const noexcept { return roots.size(); }
  bool empty() const noexcept { return roots.empty(); }
  const cplx& operator[](std::size_t i) const { return roots[i]; }

  void sort();
  /// Roots with |z| < radius (order preserved).
  ComplexRootSet inside(double radius) const;
  /// True when every non-real root has a conjugate partner within `tol`.
  bool conjugation_closed(double tol) const;
};

/// All complex roots of p with multiplicity: eigenvalues of the balanced
/// companion matrix, refined by Newton steps, with conjugate pairs made
/// exactly symmetric. Throws Error(NoConvergence) when a polished root still
/// has a residual above root_tol * ||p||_inf * max(1, |root|)^deg.
ComplexRootSet find_roots(const RealPolynomial& p, const RootOptions& opt = {});

/// |c_0| / (M * max_j |c_j|): no root of p has smaller modulus.
/// Throws Error(ZeroConstantTerm) when c_0 = 0.
double root_lower_bound(const RealPolynomial& p);

/// (1 + Z)^(M-1) * sum_j |z_j - zt_j|, which dominates
/// |prod (1 - z_j) - prod (1 - zt_j)| when all moduli are at most Z.
/// Throws Error(ModulusExceedsZ) if some |z_j| or |zt_j| exceeds Z.
double product_difference_bound(double Z, std::span<const cplx> z, std::span<const cplx> zt);

}  // namespace jacobi

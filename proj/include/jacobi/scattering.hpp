#pragma once

#include <vector>

#include "jacobi/operator.hpp"
#include "jacobi/polynomial.hpp"
#include "jacobi/roots.hpp"

namespace jacobi {

enum class Side { plus, minus };

/// Jost polynomials g^±(n, z) = A^±(n) z^{∓n} f^±(n, z) for
/// n in [n_minus - 1, n_plus + 1], together with A^±(n).
class JostFamily {
 public:
  JostFamily(Side side, int first_site, std::vector<RealPolynomial> g, std::vector<double> a_products,
             int n_minus, int n_plus);

  Side side() const noexcept { return side_; }
  int first_site() const noexcept { return first_; }
  int last_site() const noexcept { return first_ + static_cast<int>(g_.size()) - 1; }

  /// g^±(n, .). Returns 1 on the free side of the window (n >= N^+ for plus,
  /// n <= N^- for minus); throws Error(Validation) for other sites outside
  /// the stored range.
  const RealPolynomial& g(int n) const;
  double a_product(int n) const;

 private:
  Side side_;
  int first_;
  int n_minus_;
  int n_plus_;
  std::vector<RealPolynomial> g_;
  std::vector<double> A_;
  RealPolynomial one_{1.0};
};

/// Runs the three-term recursion for g^+ downward from the right end of the
/// window (or for g^- upward from the left end).
JostFamily jost(const JacobiOperator& op, Side side);

/// Kernel coefficients K_0^±(n, m), read off the Jost polynomials:
/// K_0^+(n, n + j) and K_0^-(n, n - j) are the z^j coefficients of g^±(n, .).
/// Entries on or beyond the diagonal (m <= n for plus, m >= n for minus) are 0.
class KernelRows {
 public:
  explicit KernelRows(JostFamily family) : family_(std::move(family)) {}

  Side side() const noexcept { return family_.side(); }
  const JostFamily& family() const noexcept { return family_; }
  double operator()(int n, int m) const;

 private:
  JostFamily family_;
};

KernelRows kernel_coeffs(const JostFamily& jf);

/// Jost solution f^±(n, z) at any site, by direct numeric recursion from the
/// free region. Independent of the polynomial representation.
cplx jost_solution(const JacobiOperator& op, Side side, int n, cplx z);

struct HalfBound {
  bool plus_one = false;
  bool minus_one = false;
};

struct NormingConstant {
  cplx z;
  /// gamma^- from the l^2 norm of f^-(., z).
  double gamma = 0.0;
  /// f^-(., z) = mu f^+(., z).
  double mu = 0.0;
  /// gamma^- from the residue of R^- at z.
  double gamma_residue = 0.0;
};

struct ScatteringOptions {
  RootOptions roots;
  double hb_tol = 1e-8;
  double xcheck_tol = 1e-8;
};

struct ScatteringData {
  int n_minus = 0;
  int n_plus = 0;
  double A = 1.0;
  RealPolynomial w;
  /// s^-(z) = z^{2 N^-} * core(z).
  LaurentPolynomial s_minus;
  ComplexRootSet eigenvalues;   ///< roots of w with |z| < 1 - hb_tol
  ComplexRootSet resonances;    ///< roots of w with |z| > 1 + hb_tol
  ComplexRootSet ambiguous;     ///< roots of w in the ring around the unit circle
  ComplexRootSet reflection_zeros;  ///< nonzero roots of s^-
  HalfBound half_bound;
  std::vector<NormingConstant> norming;

  /// s^+(z) = z^2 s^-(1/z).
  cplx s_plus(cplx z) const;
  /// Every root of w (eigenvalues, ambiguous roots and resonances).
  ComplexRootSet all_poles() const;
};

/// Forward map: w, s^-, classified roots and norming constants.
ScatteringData scattering(const JacobiOperator& op, const ScatteringOptions& opt = {});

/// s^-(1), the quantity constrained by the B_delta class.
double s_at_one(const JacobiOperator& op);

struct Reflection {
  cplx T;
  cplx R_minus;
  cplx R_plus;
};

/// Transmission and reflection coefficients. At z = ±1 the common factor
/// (1 - z^2) is cancelled analytically. Throws Error(UndefinedAtZero) at 0
/// and Error(PoleAt) at a root of w.
Reflection reflection(const ScatteringData& sd, cplx z, double pole_tol = 1e-10);
Reflection reflection(const JacobiOperator& op, cplx z);

/// Norming constants of every eigenvalue, computed both from the l^2 sum of
/// the Jost solution (geometric tails in closed form) and from the residue of
/// R^-. Throws Error(RouteDisagreement) when the two differ by more than
/// xcheck_tol (relative), Error(NonSimplePole) when w' vanishes at z_j.
std::vector<NormingConstant> norming_constants(const JacobiOperator& op, const ScatteringData& sd,
                                               double xcheck_tol = 1e-8);

/// Residuals of the structural identities of w, s^- and K_0^±. Kernel
/// residuals are divided by max(1, max |K_0|); the rest are raw.
struct ScatteringIdentities {
  double plucker = 0.0;         ///< sup over 64 circle points
  double plucker_scale = 1.0;   ///< (1 + ||w||_inf)^2
  double threshold_plus = 0.0;  ///< |w(1) + s^-(1)|
  double threshold_minus = 0.0; ///< |w(-1) + s^-(-1)|
  double w_at_zero = 0.0;       ///< |A w(0) - 1|
  double s_leading = 0.0;       ///< |A [z^1] core(s^-) - b_{N^-}|
  double kernel_recursion = 0.0;
  double kernel_plus_sum = 0.0;
  double kernel_minus_sum = 0.0;
};

ScatteringIdentities check_scattering_identities(const JacobiOperator& op, const ScatteringData& sd);

}  // namespace jacobi

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "jacobi/operator.hpp"
#include "jacobi/polynomial.hpp"
#include "jacobi/scattering.hpp"

namespace jacobi {

/// Zeros and poles of R^-: poles are the roots of w, zeros the nonzero roots of s^-.
struct RootData {
  std::vector<cplx> poles;
  std::vector<cplx> zeros;
  /// Present when the data only covers |z| < disk_radius.
  std::optional<double> disk_radius;
};

RootData root_data_from(const ScatteringData& sd);

struct PQ {
  RealPolynomial P;  ///< A w
  RealPolynomial Q;  ///< A s / (b_0 z)
  double imag_residual = 0.0;
};

/// P = prod (1 - z / w_j), Q = prod (1 - z / s_j). Throws
/// Error(NonRealCoefficients) when an expanded coefficient keeps an imaginary
/// part above 1e-10 relative to the largest coefficient.
PQ assemble_polynomials(const RootData& rd);

enum class SignBranch { via_s_at_1, via_s_at_minus_1, via_residue_positivity, free };

std::string_view to_string(SignBranch b) noexcept;

struct Calibration {
  double b0 = 0.0;
  double A = 1.0;
  SignBranch branch = SignBranch::via_s_at_1;
  /// Point where the identity was solved for A^2, and the runner-up used as
  /// a cross-check.
  cplx z_star = 2.0;
  cplx z_star_check = 3.0;
  /// |A^2(z_star) - A^2(z_star_check)| / A^2(z_star).
  double a2_cross_check = 0.0;
};

struct CalibrateOptions {
  double z_star = 2.0;
  double hb_tol = 1e-8;
};

/// b_0 from w(±1) = -s^-(±1), A from the identity
/// w(z) w(1/z) + (z - 1/z)^2 = s(z) s(1/z). The identity is evaluated at
/// z_star, z_star + 1 (each moved off the roots) and at seven points of the
/// upper unit semicircle; the point with the least cancellation wins. With half-bound states at
/// both thresholds the sign of b_0 comes from the positivity of the norming
/// constant at an eigenvalue.
Calibration calibrate(const RealPolynomial& P, const RealPolynomial& Q, const RootData& rd,
                      const CalibrateOptions& opt = {});

struct BoundaryJost {
  RealPolynomial g_minus1;
  RealPolynomial g_0;
  double division_residual = 0.0;
  double constant_term_residual = 0.0;
};

/// g_0 = (P + b_0 z Q) / (1 - z^2) and g_{-1} = g_0 - b_0 z Q. With
/// `exact` the division must leave a remainder below 1e-9 (else
/// Error(RemainderTooLarge)); otherwise g_0 is the power series quotient cut at
/// degree deg(P + b_0 z Q) - 2 and the remainder is only recorded.
BoundaryJost recover_boundary_jost(const RealPolynomial& P, const RealPolynomial& Q, double b0,
                                   bool exact = true);

struct StripOptions {
  double term_tol = 1e-8;
  double a2_floor = 1e-10;
  int max_sites = 0;  ///< 0 selects 4 (deg P + deg Q) + 8 from the caller
  /// Degree of g_{-1} assumed by the degree caps; defaults to its actual degree.
  std::optional<int> degree;
};

struct StripResult {
  std::vector<double> b;
  std::vector<double> a2;
  std::vector<double> division_residuals;  ///< per site, dropped coefficients included
  double termination = 0.0;
};

/// Runs the Jost recursion backwards: b_n and a_n^2 are read off the two
/// lowest nontrivial coefficients, then g_{n+1} is divided out. Stops at the
/// first n with g_n = g_{n+1} = 1 and a_n^2 = 1 (within term_tol).
StripResult layer_strip(const RealPolynomial& g_minus1, const RealPolynomial& g_0, const StripOptions& opt = {});

struct RefineResult {
  std::vector<double> b;
  std::vector<double> a2;
  double initial_residual = 0.0;
  double final_residual = 0.0;
  int iterations = 0;
};

/// Gauss-Newton least squares fit of (b_n, a_n^2) on [0, N] to the
/// coefficients of A w = P and A s = b_0 z Q.
RefineResult refine(const std::vector<double>& b, const std::vector<double>& a2, const RealPolynomial& P,
                    const RealPolynomial& S, int max_iterations = 30);

struct ReconstructOptions {
  CalibrateOptions calibrate;
  StripOptions strip;
  /// A pole and a zero closer than this (relative) count as a common root.
  /// Weakly coupled eigenvalues put genuine pole/zero pairs 1e-9 apart.
  double common_root_tol = 1e-12;
  /// Strict mode throws when the data is not exactly consistent; lenient mode
  /// records the defects and returns the least squares operator.
  bool lenient = false;
  /// Window size to fit in lenient mode (the data may have lost roots).
  std::optional<int> n_plus;
  /// Extra starting point for the refinement in lenient mode.
  std::optional<JacobiOperator> warm_start;
  double fit_tol = 1e-8;
  double product_tol = 1e-8;
};

struct ReconstructionResiduals {
  double imag_part = 0.0;
  double a2_cross_check = 0.0;
  double boundary_division = 0.0;
  double boundary_constant = 0.0;
  std::vector<double> strip_division;
  double termination = 0.0;
  double fit_initial = 0.0;
  double fit_final = 0.0;
  int refine_iterations = 0;
  double a_product = 0.0;  ///< |prod a_n - A| / A
};

struct ReconstructionReport {
  JacobiOperator op;
  double b0 = 0.0;
  double A = 1.0;
  SignBranch sign_branch = SignBranch::via_s_at_1;
  ReconstructionResiduals residuals;
};

/// The operator on [0, N^+] whose R^- has the given zeros and poles.
ReconstructionReport reconstruct(const RootData& rd, const ReconstructOptions& opt = {});

}  // namespace jacobi

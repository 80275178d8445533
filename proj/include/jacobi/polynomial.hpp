#pragma once

#include <complex>
#include <span>
#include <vector>

namespace jacobi {

using cplx = std::complex<double>;

inline constexpr double kTrimTol = 1e-12;

/// Polynomial with real coefficients, stored in ascending order
/// (coeffs()[j] multiplies z^j). Trailing coefficients that are negligible
/// relative to the largest one are trimmed; the zero polynomial is empty.
class RealPolynomial {
 public:
  RealPolynomial() = default;
  explicit RealPolynomial(std::vector<double> coeffs, double trim_tol = kTrimTol);
  RealPolynomial(std::initializer_list<double> coeffs);

  static RealPolynomial constant(double c) { return RealPolynomial(std::vector<double>{c}); }
  static RealPolynomial monomial(int power, double c = 1.0);

  const std::vector<double>& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  /// Coefficient of z^j, zero beyond the stored range.
  double operator[](int j) const noexcept;

  double norm_inf() const noexcept;
  double norm_1() const noexcept;

  double operator()(double z) const noexcept;
  cplx operator()(cplx z) const noexcept;

  RealPolynomial derivative() const;
  /// z^k * p(z), k >= 0.
  RealPolynomial shifted(int k) const;
  RealPolynomial scaled(double s) const;
  /// Keeps coefficients of z^0 .. z^max_degree.
  RealPolynomial truncated(int max_degree) const;

  friend RealPolynomial operator+(const RealPolynomial& p, const RealPolynomial& q);
  friend RealPolynomial operator-(const RealPolynomial& p, const RealPolynomial& q);
  friend RealPolynomial operator*(const RealPolynomial& p, const RealPolynomial& q);

 private:
  std::vector<double> c_;
};

enum class ArithKind { add, sub, mul };

RealPolynomial poly_arith(const RealPolynomial& p, const RealPolynomial& q, ArithKind kind);

struct Division {
  RealPolynomial quotient;
  RealPolynomial remainder;
};

/// Polynomial long division p = d*q + r with deg r < deg d.
Division divide(const RealPolynomial& p, const RealPolynomial& d);

/// Long division that insists on a negligible remainder:
/// throws Error(RemainderTooLarge) when ||r||_inf > tol * ||p||_inf.
RealPolynomial divide_exact(const RealPolynomial& p, const RealPolynomial& d, double tol);

/// z^shift * core(z), used for s^-(z) whose lowest power depends on the
/// window position.
struct LaurentPolynomial {
  int shift = 0;
  RealPolynomial core;

  cplx operator()(cplx z) const;
  double operator()(double z) const;
};

/// Horner evaluation of a complex-coefficient polynomial (ascending order).
cplx evaluate(std::span<const cplx> coeffs, cplx z) noexcept;

/// Coefficients of prod_j (1 - z / r_j) in ascending order.
std::vector<cplx> product_from_reciprocal_roots(std::span<const cplx> roots);

}  // namespace jacobi

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace jacobi {

/// A Jacobi difference expression whose coefficients differ from the free
/// ones (a = 1, b = 0) only inside the window [n_minus, n_plus].
///
/// `a` holds a_n for n = n_minus .. n_plus - 1 and `b` holds b_n for
/// n = n_minus .. n_plus. Queries outside the window return the free values.
/// The object is an immutable value; positivity of `a` is not enforced here
/// so that `validate` can report every problem at once.
class JacobiOperator {
 public:
  JacobiOperator();
  /// Throws Error(Schema) when the vector lengths do not match the window.
  JacobiOperator(int n_minus, int n_plus, std::vector<double> a, std::vector<double> b);

  /// The free expression on the single-site window {0}.
  static JacobiOperator free();

  int n_minus() const noexcept { return n_minus_; }
  int n_plus() const noexcept { return n_plus_; }
  int width() const noexcept { return n_plus_ - n_minus_; }

  const std::vector<double>& a_values() const noexcept { return a_; }
  const std::vector<double>& b_values() const noexcept { return b_; }

  double a(int n) const noexcept;
  double b(int n) const noexcept;

  /// Product of a_n over the window.
  double a_product() const noexcept;
  /// A^+(n) = prod_{m >= n} a_m.
  double a_plus(int n) const noexcept;
  /// A^-(n) = prod_{m < n} a_m.
  double a_minus(int n) const noexcept;

  friend bool operator==(const JacobiOperator&, const JacobiOperator&) = default;

 private:
  int n_minus_ = 0;
  int n_plus_ = 0;
  std::vector<double> a_;
  std::vector<double> b_;
};

struct Violation {
  int index;
  std::string rule;
  std::string message;
};

/// Lists every violated invariant (positivity and finiteness of the stored
/// coefficients). Empty means admissible.
std::vector<Violation> validate(const JacobiOperator& op);

struct ClassParams {
  int N = 0;
  double Q = 1.0;
  std::optional<double> delta;
};

struct MembershipReport {
  bool in_B0 = false;
  /// Unset when `ClassParams::delta` is absent.
  std::optional<bool> in_Bdelta;
};

/// Membership in B_0(N, Q) and, when delta is given, in B_delta(N, Q).
/// `s_at_1` is s^-(1) of the operator (see `s_at_one`).
/// Throws Error(Validation) if Q < 1 or delta lies outside (0, 1).
MembershipReport class_membership(const JacobiOperator& op, const ClassParams& p, double s_at_1);

/// Shifts the coefficients by j0 sites: new a_n = a_{n - j0}, b_n = b_{n - j0}.
JacobiOperator translate(const JacobiOperator& op, int j0);

/// The same operator on the smallest window that still contains its support.
/// Sites with b = 0 at the right end are dropped as long as the neighbouring
/// a equals 1; the left end is trimmed symmetrically.
JacobiOperator tighten(const JacobiOperator& op);

/// Sup-norm distances over the union of both windows.
double max_b_difference(const JacobiOperator& x, const JacobiOperator& y);
double max_a2_difference(const JacobiOperator& x, const JacobiOperator& y);

}  // namespace jacobi

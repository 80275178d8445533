#include "jacobi/operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jacobi/error.hpp"

namespace jacobi {

JacobiOperator::JacobiOperator() : JacobiOperator(0, 0, {}, {0.0}) {}

JacobiOperator::JacobiOperator(int n_minus, int n_plus, std::vector<double> a, std::vector<double> b)
    : n_minus_(n_minus), n_plus_(n_plus), a_(std::move(a)), b_(std::move(b)) {
  if (n_plus_ < n_minus_) {
    throw Error(ErrorKind::Schema, "n_plus (" + std::to_string(n_plus_) + ") must be >= n_minus (" +
                                       std::to_string(n_minus_) + ")");
  }
  const auto width = static_cast<std::size_t>(n_plus_ - n_minus_);
  if (a_.size() != width) {
    throw Error(ErrorKind::Schema, "field 'a' must have n_plus - n_minus = " + std::to_string(width) +
                                       " entries, got " + std::to_string(a_.size()));
  }
  if (b_.size() != width + 1) {
    throw Error(ErrorKind::Schema, "field 'b' must have n_plus - n_minus + 1 = " +
                                       std::to_string(width + 1) + " entries, got " +
                                       std::to_string(b_.size()));
  }
}

JacobiOperator JacobiOperator::free() { return JacobiOperator(0, 0, {}, {0.0}); }

double JacobiOperator::a(int n) const noexcept {
  if (n < n_minus_ || n >= n_plus_) return 1.0;
  return a_[static_cast<std::size_t>(n - n_minus_)];
}

double JacobiOperator::b(int n) const noexcept {
  if (n < n_minus_ || n > n_plus_) return 0.0;
  return b_[static_cast<std::size_t>(n - n_minus_)];
}

double JacobiOperator::a_product() const noexcept {
  double p = 1.0;
  for (double v : a_) p *= v;
  return p;
}

double JacobiOperator::a_plus(int n) const noexcept {
  double p = 1.0;
  for (int m = std::max(n, n_minus_); m < n_plus_; ++m) p *= a(m);
  return p;
}

double JacobiOperator::a_minus(int n) const noexcept {
  double p = 1.0;
  for (int m = n_minus_; m < std::min(n, n_plus_); ++m) p *= a(m);
  return p;
}

std::vector<Violation> validate(const JacobiOperator& op) {
  std::vector<Violation> out;
  for (int n = op.n_minus(); n < op.n_plus(); ++n) {
    const double v = op.a(n);
    const std::string label = "a_" + std::to_string(n);
    if (!std::isfinite(v)) {
      out.push_back({n, "finite", label + " is not finite"});
    } else if (v <= 0.0) {
      out.push_back({n, "positive", label + " <= 0"});
    }
  }
  for (int n = op.n_minus(); n <= op.n_plus(); ++n) {
    if (!std::isfinite(op.b(n))) {
      out.push_back({n, "finite", "b_" + std::to_string(n) + " is not finite"});
    }
  }
  return out;
}

MembershipReport class_membership(const JacobiOperator& op, const ClassParams& p, double s_at_1) {
  if (!(p.Q >= 1.0)) throw Error(ErrorKind::Validation, "class parameter Q must be >= 1");
  if (p.N < 0) throw Error(ErrorKind::Validation, "class parameter N must be >= 0");
  if (p.delta && !(*p.delta > 0.0 && *p.delta < 1.0)) {
    throw Error(ErrorKind::Validation, "class parameter delta must lie in (0, 1)");
  }

  MembershipReport r;
  bool ok = validate(op).empty() && op.n_minus() == 0 && op.n_plus() == p.N;
  if (ok) {
    for (double v : op.a_values()) ok = ok && v <= p.Q && 1.0 / v <= p.Q;
    for (double v : op.b_values()) ok = ok && std::abs(v) <= p.Q;
  }
  r.in_B0 = ok;
  if (p.delta) {
    r.in_Bdelta = ok && std::abs(op.b(0)) >= *p.delta && std::abs(s_at_1) >= *p.delta;
  }
  return r;
}

JacobiOperator translate(const JacobiOperator& op, int j0) {
  return JacobiOperator(op.n_minus() + j0, op.n_plus() + j0, op.a_values(), op.b_values());
}

JacobiOperator tighten(const JacobiOperator& op) {
  int lo = op.n_minus();
  int hi = op.n_plus();
  while (hi > lo && op.b(hi) == 0.0 && op.a(hi - 1) == 1.0) --hi;
  while (lo < hi && op.b(lo) == 0.0 && op.a(lo) == 1.0) ++lo;
  std::vector<double> a;
  std::vector<double> b;
  for (int n = lo; n < hi; ++n) a.push_back(op.a(n));
  for (int n = lo; n <= hi; ++n) b.push_back(op.b(n));
  return JacobiOperator(lo, hi, std::move(a), std::move(b));
}

double max_b_difference(const JacobiOperator& x, const JacobiOperator& y) {
  double d = 0.0;
  const int lo = std::min(x.n_minus(), y.n_minus());
  const int hi = std::max(x.n_plus(), y.n_plus());
  for (int n = lo; n <= hi; ++n) d = std::max(d, std::abs(x.b(n) - y.b(n)));
  return d;
}

double max_a2_difference(const JacobiOperator& x, const JacobiOperator& y) {
  double d = 0.0;
  const int lo = std::min(x.n_minus(), y.n_minus());
  const int hi = std::max(x.n_plus(), y.n_plus());
  for (int n = lo; n < hi; ++n) {
    d = std::max(d, std::abs(x.a(n) * x.a(n) - y.a(n) * y.a(n)));
  }
  return d;
}

}  // namespace jacobi

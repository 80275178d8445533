#include "jacobi/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "jacobi/error.hpp"

namespace jacobi {

namespace {

void trim_trailing(std::vector<double>& c, double tol) {
  double big = 0.0;
  for (double v : c) big = std::max(big, std::abs(v));
  while (!c.empty() && std::abs(c.back()) <= tol * big) c.pop_back();
}

}  // namespace

RealPolynomial::RealPolynomial(std::vector<double> coeffs, double trim_tol) : c_(std::move(coeffs)) {
  trim_trailing(c_, trim_tol);
}

RealPolynomial::RealPolynomial(std::initializer_list<double> coeffs)
    : RealPolynomial(std::vector<double>(coeffs)) {}

RealPolynomial RealPolynomial::monomial(int power, double c) {
  std::vector<double> v(static_cast<std::size_t>(power) + 1, 0.0);
  v.back() = c;
  return RealPolynomial(std::move(v));
}

double RealPolynomial::operator[](int j) const noexcept {
  if (j < 0 || j >= static_cast<int>(c_.size())) return 0.0;
  return c_[static_cast<std::size_t>(j)];
}

double RealPolynomial::norm_inf() const noexcept {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

double RealPolynomial::norm_1() const noexcept {
  double m = 0.0;
  for (double v : c_) m += std::abs(v);
  return m;
}

double RealPolynomial::operator()(double z) const noexcept {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

cplx RealPolynomial::operator()(cplx z) const noexcept {
  cplx acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

RealPolynomial RealPolynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<double> d(c_.size() - 1);
  for (std::size_t j = 1; j < c_.size(); ++j) d[j - 1] = static_cast<double>(j) * c_[j];
  return RealPolynomial(std::move(d));
}

RealPolynomial RealPolynomial::shifted(int k) const {
  if (is_zero()) return {};
  std::vector<double> v(static_cast<std::size_t>(k), 0.0);
  v.insert(v.end(), c_.begin(), c_.end());
  return RealPolynomial(std::move(v));
}

RealPolynomial RealPolynomial::scaled(double s) const {
  std::vector<double> v = c_;
  for (double& x : v) x *= s;
  return RealPolynomial(std::move(v));
}

RealPolynomial RealPolynomial::truncated(int max_degree) const {
  if (max_degree < 0) return {};
  std::vector<double> v = c_;
  if (static_cast<int>(v.size()) > max_degree + 1) v.resize(static_cast<std::size_t>(max_degree) + 1);
  return RealPolynomial(std::move(v));
}

RealPolynomial operator+(const RealPolynomial& p, const RealPolynomial& q) {
  std::vector<double> v(std::max(p.c_.size(), q.c_.size()), 0.0);
  for (std::size_t j = 0; j < p.c_.size(); ++j) v[j] += p.c_[j];
  for (std::size_t j = 0; j < q.c_.size(); ++j) v[j] += q.c_[j];
  return RealPolynomial(std::move(v));
}

RealPolynomial operator-(const RealPolynomial& p, const RealPolynomial& q) {
  std::vector<double> v(std::max(p.c_.size(), q.c_.size()), 0.0);
  for (std::size_t j = 0; j < p.c_.size(); ++j) v[j] += p.c_[j];
  for (std::size_t j = 0; j < q.c_.size(); ++j) v[j] -= q.c_[j];
  return RealPolynomial(std::move(v));
}

RealPolynomial operator*(const RealPolynomial& p, const RealPolynomial& q) {
  if (p.is_zero() || q.is_zero()) return {};
  std::vector<double> v(p.c_.size() + q.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.c_.size(); ++i) {
    for (std::size_t j = 0; j < q.c_.size(); ++j) v[i + j] += p.c_[i] * q.c_[j];
  }
  return RealPolynomial(std::move(v));
}

RealPolynomial poly_arith(const RealPolynomial& p, const RealPolynomial& q, ArithKind kind) {
  switch (kind) {
    case ArithKind::add: return p + q;
    case ArithKind::sub: return p - q;
    case ArithKind::mul: return p * q;
  }
  return {};
}

Division divide(const RealPolynomial& p, const RealPolynomial& d) {
  if (d.is_zero()) throw Error(ErrorKind::Validation, "division by the zero polynomial");
  const int dd = d.degree();
  if (p.degree() < dd) return {RealPolynomial{}, p};

  std::vector<double> rem = p.coeffs();
  std::vector<double> quo(static_cast<std::size_t>(p.degree() - dd) + 1, 0.0);
  const double lead = d.coeffs().back();
  for (int k = p.degree() - dd; k >= 0; --k) {
    const double t = rem[static_cast<std::size_t>(k + dd)] / lead;
    quo[static_cast<std::size_t>(k)] = t;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k + j)] -= t * d[j];
  }
  rem.resize(static_cast<std::size_t>(dd));
  // no trimming tolerance on the remainder: callers judge its size
  return {RealPolynomial(std::move(quo)), RealPolynomial(std::move(rem), 0.0)};
}

RealPolynomial divide_exact(const RealPolynomial& p, const RealPolynomial& d, double tol) {
  Division div = divide(p, d);
  const double r = div.remainder.norm_inf();
  if (r > tol * p.norm_inf()) {
    std::ostringstream msg;
    msg << "remainder " << r << " exceeds " << tol << " * ||p||";
    throw Error(ErrorKind::RemainderTooLarge, msg.str());
  }
  return std::move(div.quotient);
}

cplx LaurentPolynomial::operator()(cplx z) const { return std::pow(z, shift) * core(z); }

double LaurentPolynomial::operator()(double z) const { return std::pow(z, shift) * core(z); }

cplx evaluate(std::span<const cplx> coeffs, cplx z) noexcept {
  cplx acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<cplx> product_from_reciprocal_roots(std::span<const cplx> roots) {
  std::vector<cplx> c{1.0};
  for (const cplx& r : roots) {
    const cplx inv = 1.0 / r;
    c.push_back(0.0);
    for (std::size_t j = c.size() - 1; j > 0; --j) c[j] -= inv * c[j - 1];
  }
  return c;
}

}  // namespace jacobi

#include "jacobi/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "jacobi/error.hpp"

namespace jacobi {

namespace {

// 1 + z^2 - b z
RealPolynomial site_factor(double b) { return RealPolynomial(std::vector<double>{1.0, -b, 1.0}); }

// Drops coefficients above `cap` after checking they are rounding noise.
RealPolynomial enforce_degree_cap(const RealPolynomial& p, int cap, const char* what) {
  if (p.degree() <= cap) return p;
  double dropped = 0.0;
  for (int j = cap + 1; j <= p.degree(); ++j) dropped = std::max(dropped, std::abs(p[j]));
  if (dropped > 1e-9 * std::max(1.0, p.norm_inf())) {
    std::ostringstream msg;
    msg << what << " exceeds its degree bound " << cap << " (coefficient " << dropped << ")";
    throw Error(ErrorKind::CrossCheckFailure, msg.str());
  }
  return p.truncated(cap);
}

// Synthetic division by (z - z0).
RealPolynomial deflate(const RealPolynomial& p, double z0) {
  if (p.degree() < 1) return {};
  std::vector<double> q(static_cast<std::size_t>(p.degree()), 0.0);
  double carry = 0.0;
  for (int j = p.degree(); j >= 1; --j) {
    carry = carry * z0 + p[j];
    q[static_cast<std::size_t>(j - 1)] = carry;
  }
  return RealPolynomial(std::move(q), 0.0);
}

// Order of vanishing at z0 and the deflated polynomial.
std::pair<int, RealPolynomial> split_zero(RealPolynomial p, double z0, double tol) {
  int order = 0;
  const double scale = std::max(1.0, p.norm_1());
  while (!p.is_zero() && std::abs(p(z0)) <= tol * scale) {
    p = deflate(p, z0);
    ++order;
  }
  return {order, p};
}

// lim_{z -> z0} num(z) / den(z) for polynomials; throws PoleAt when the
// denominator vanishes to higher order.
double ratio_limit(const RealPolynomial& num, const RealPolynomial& den, double z0, double tol) {
  if (num.is_zero()) return 0.0;
  auto [kn, n] = split_zero(num, z0, tol);
  auto [kd, d] = split_zero(den, z0, tol);
  if (kn > kd) return 0.0;
  if (kn < kd) {
    std::ostringstream msg;
    msg << "pole at z = " << z0;
    throw Error(ErrorKind::PoleAt, msg.str());
  }
  return n(z0) / d(z0);
}

RealPolynomial reversed(const RealPolynomial& p) {
  std::vector<double> c(p.coeffs().rbegin(), p.coeffs().rend());
  return RealPolynomial(std::move(c), 0.0);
}

}  // namespace

JostFamily::JostFamily(Side side, int first_site, std::vector<RealPolynomial> g,
                       std::vector<double> a_products, int n_minus, int n_plus)
    : side_(side),
      first_(first_site),
      n_minus_(n_minus),
      n_plus_(n_plus),
      g_(std::move(g)),
      A_(std::move(a_products)) {}

const RealPolynomial& JostFamily::g(int n) const {
  if (n >= first_ && n <= last_site()) return g_[static_cast<std::size_t>(n - first_)];
  if (side_ == Side::plus && n >= n_plus_) return one_;
  if (side_ == Side::minus && n <= n_minus_) return one_;
  throw Error(ErrorKind::Validation, "Jost polynomial requested outside the stored sites");
}

double JostFamily::a_product(int n) const {
  if (n >= first_ && n <= last_site()) return A_[static_cast<std::size_t>(n - first_)];
  return 1.0;
}

JostFamily jost(const JacobiOperator& op, Side side) {
  const int lo = op.n_minus() - 1;
  const int hi = op.n_plus() + 1;
  const auto count = static_cast<std::size_t>(hi - lo + 1);
  std::vector<RealPolynomial> g(count);
  std::vector<double> A(count);
  auto at = [&](int n) -> RealPolynomial& { return g[static_cast<std::size_t>(n - lo)]; };

  if (side == Side::plus) {
    at(hi) = RealPolynomial{1.0};
    at(hi - 1) = RealPolynomial{1.0};
    for (int n = op.n_plus(); n >= op.n_minus(); --n) {
      const double a2 = op.a(n) * op.a(n);
      at(n - 1) = at(n) * site_factor(op.b(n)) - at(n + 1).shifted(2).scaled(a2);
    }
    for (int n = lo; n <= hi; ++n) A[static_cast<std::size_t>(n - lo)] = op.a_plus(n);
  } else {
    at(lo) = RealPolynomial{1.0};
    at(lo + 1) = RealPolynomial{1.0};
    for (int n = op.n_minus(); n <= op.n_plus(); ++n) {
      const double a2 = op.a(n - 1) * op.a(n - 1);
      at(n + 1) = at(n) * site_factor(op.b(n)) - at(n - 1).shifted(2).scaled(a2);
    }
    for (int n = lo; n <= hi; ++n) A[static_cast<std::size_t>(n - lo)] = op.a_minus(n);
  }
  return JostFamily(side, lo, std::move(g), std::move(A), op.n_minus(), op.n_plus());
}

double KernelRows::operator()(int n, int m) const {
  const int j = family_.side() == Side::plus ? m - n : n - m;
  if (j <= 0) return 0.0;
  return family_.g(n)[j];
}

KernelRows kernel_coeffs(const JostFamily& jf) { return KernelRows(jf); }

cplx jost_solution(const JacobiOperator& op, Side side, int n, cplx z) {
  const cplx lambda = z + 1.0 / z;
  if (side == Side::plus) {
    if (n >= op.n_plus()) return std::pow(z, n);
    cplx next = std::pow(z, op.n_plus() + 1);
    cplx cur = std::pow(z, op.n_plus());
    for (int k = op.n_plus(); k > n; --k) {
      const cplx prev = ((lambda - op.b(k)) * cur - op.a(k) * next) / op.a(k - 1);
      next = cur;
      cur = prev;
    }
    return cur;
  }
  if (n <= op.n_minus()) return std::pow(z, -n);
  cplx prev = std::pow(z, -(op.n_minus() - 1));
  cplx cur = std::pow(z, -op.n_minus());
  for (int k = op.n_minus(); k < n; ++k) {
    const cplx next = ((lambda - op.b(k)) * cur - op.a(k - 1) * prev) / op.a(k);
    prev = cur;
    cur = next;
  }
  return cur;
}

cplx ScatteringData::s_plus(cplx z) const {
  // z^2 s^-(1/z) = z^{2 - shift - deg} * reversed(core)(z)
  const int d = s_minus.core.degree();
  if (d < 0) return 0.0;
  return std::pow(z, 2 - s_minus.shift - d) * reversed(s_minus.core)(z);
}

ComplexRootSet ScatteringData::all_poles() const {
  ComplexRootSet all;
  for (const auto* set : {&eigenvalues, &ambiguous, &resonances}) {
    all.roots.insert(all.roots.end(), set->roots.begin(), set->roots.end());
  }
  all.sort();
  return all;
}

double s_at_one(const JacobiOperator& op) {
  const JostFamily gp = jost(op, Side::plus);
  return (gp.g(op.n_minus()) - gp.g(op.n_minus() - 1))(1.0) / op.a_product();
}

ScatteringData scattering(const JacobiOperator& op, const ScatteringOptions& opt) {
  if (const auto v = validate(op); !v.empty()) {
    throw Error(ErrorKind::Validation, "operator is not admissible: " + v.front().message);
  }
  const int lo = op.n_minus();
  const int width = op.width();
  const JostFamily gp = jost(op, Side::plus);

  ScatteringData sd;
  sd.n_minus = lo;
  sd.n_plus = op.n_plus();
  sd.A = op.a_product();
  const double inv_A = 1.0 / sd.A;
  sd.w = enforce_degree_cap((gp.g(lo - 1) - gp.g(lo).shifted(2)).scaled(inv_A),
                            std::max(2, 2 * width), "w");
  sd.s_minus.shift = 2 * lo;
  sd.s_minus.core = enforce_degree_cap((gp.g(lo) - gp.g(lo - 1)).scaled(inv_A), 2 * width + 1,
                                       "z^{-2N^-} s^-");

  if (sd.w.degree() >= 1) {
    for (const cplx& r : find_roots(sd.w, opt.roots).roots) {
      const double m = std::abs(r);
      if (m < 1.0 - opt.hb_tol) {
        sd.eigenvalues.roots.push_back(r);
      } else if (m > 1.0 + opt.hb_tol) {
        sd.resonances.roots.push_back(r);
      } else {
        sd.ambiguous.roots.push_back(r);
      }
    }
  }

  // nonzero roots of s^-: strip the power of z first
  const RealPolynomial& core = sd.s_minus.core;
  int low = 0;
  while (low <= core.degree() && std::abs(core[low]) <= kTrimTol * core.norm_inf()) ++low;
  if (core.degree() - low >= 1) {
    std::vector<double> rest(core.coeffs().begin() + low, core.coeffs().end());
    sd.reflection_zeros = find_roots(RealPolynomial(std::move(rest)), opt.roots);
  }

  const double wn = sd.w.norm_inf();
  sd.half_bound.plus_one = std::abs(sd.w(1.0)) <= opt.hb_tol * wn;
  sd.half_bound.minus_one = std::abs(sd.w(-1.0)) <= opt.hb_tol * wn;

  sd.norming = norming_constants(op, sd, opt.xcheck_tol);
  return sd;
}

Reflection reflection(const ScatteringData& sd, cplx z, double pole_tol) {
  if (z == 0.0) throw Error(ErrorKind::UndefinedAtZero, "reflection coefficients are undefined at z = 0");

  const bool at_threshold = z.imag() == 0.0 && std::abs(std::abs(z.real()) - 1.0) <= 1e-14;
  if (at_threshold) {
    // (1 - z^2) alpha = w and (1 - z^2) beta = s share the threshold zero
    const double z0 = z.real() > 0.0 ? 1.0 : -1.0;
    const RealPolynomial one_minus_z2{1.0, 0.0, -1.0};
    const int d = sd.s_minus.core.degree();
    Reflection r;
    r.T = ratio_limit(one_minus_z2, sd.w, z0, pole_tol);
    r.R_minus = std::pow(z0, sd.s_minus.shift) * ratio_limit(sd.s_minus.core, sd.w, z0, pole_tol);
    r.R_plus = d < 0 ? 0.0
                     : std::pow(z0, 2 - sd.s_minus.shift - d) *
                           ratio_limit(reversed(sd.s_minus.core), sd.w, z0, pole_tol);
    return r;
  }

  const cplx wz = sd.w(z);
  const double scale = sd.w.norm_inf() * std::pow(std::max(1.0, std::abs(z)), sd.w.degree());
  if (std::abs(wz) <= pole_tol * scale) {
    std::ostringstream msg;
    msg << "pole at z = " << z;
    throw Error(ErrorKind::PoleAt, msg.str());
  }
  return {(1.0 - z * z) / wz, sd.s_minus(z) / wz, sd.s_plus(z) / wz};
}

Reflection reflection(const JacobiOperator& op, cplx z) { return reflection(scattering(op), z); }

std::vector<NormingConstant> norming_constants(const JacobiOperator& op, const ScatteringData& sd,
                                               double xcheck_tol) {
  std::vector<NormingConstant> out;
  if (sd.eigenvalues.empty()) return out;

  const JostFamily gm = jost(op, Side::minus);
  const RealPolynomial dw = sd.w.derivative();
  const int lo = op.n_minus();
  const int hi = op.n_plus();

  for (const cplx& z : sd.eigenvalues.roots) {
    const cplx dwz = dw(z);
    if (std::abs(dwz) <= 1e-10 * sd.w.norm_inf()) {
      std::ostringstream msg;
      msg << "eigenvalue " << z << " is not a simple root of w";
      throw Error(ErrorKind::NonSimplePole, msg.str());
    }

    auto f_minus = [&](int n) { return std::pow(z, -n) * gm.g(n)(z) / gm.a_product(n); };
    const cplx mu = f_minus(hi) / std::pow(z, hi);

    const double r2 = std::norm(z);
    // n <= N^-: f^- = z^{-n}
    double sum = std::pow(r2, -lo) / (1.0 - r2);
    for (int n = lo + 1; n < hi; ++n) sum += std::norm(f_minus(n));
    // n >= max(N^+, N^- + 1): f^- = mu z^n
    const int tail = std::max(hi, lo + 1);
    sum += std::norm(mu) * std::pow(r2, tail) / (1.0 - r2);

    NormingConstant nc;
    nc.z = z;
    nc.mu = mu.real();
    nc.gamma = 1.0 / sum;
    nc.gamma_residue = (-(sd.s_minus(z) / dwz) / z).real();

    if (!(std::abs(nc.gamma - nc.gamma_residue) <= xcheck_tol * std::max(1.0, std::abs(nc.gamma)))) {
      std::ostringstream msg;
      msg << "norming constant routes disagree at z = " << z << ": sum " << nc.gamma << ", residue "
          << nc.gamma_residue;
      throw Error(ErrorKind::RouteDisagreement, msg.str());
    }
    out.push_back(nc);
  }
  return out;
}

ScatteringIdentities check_scattering_identities(const JacobiOperator& op, const ScatteringData& sd) {
  ScatteringIdentities r;
  constexpr int kPoints = 64;
  for (int k = 0; k < kPoints; ++k) {
    const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * k / kPoints);
    const cplx zi = 1.0 / z;
    const cplx lhs = sd.w(z) * sd.w(zi) + (z - zi) * (z - zi);
    const cplx rhs = sd.s_minus(z) * sd.s_minus(zi);
    r.plucker = std::max(r.plucker, std::abs(lhs - rhs));
  }
  r.plucker_scale = std::pow(1.0 + sd.w.norm_inf(), 2);
  r.threshold_plus = std::abs(sd.w(1.0) + sd.s_minus(1.0));
  r.threshold_minus = std::abs(sd.w(-1.0) + sd.s_minus(-1.0));
  r.w_at_zero = std::abs(sd.A * sd.w[0] - 1.0);
  r.s_leading = std::abs(sd.A * sd.s_minus.core[1] - op.b(op.n_minus()));

  const KernelRows kp = kernel_coeffs(jost(op, Side::plus));
  const KernelRows km = kernel_coeffs(jost(op, Side::minus));
  const int lo = op.n_minus();
  const int hi = op.n_plus();

  double scale = 1.0;
  for (const KernelRows* rows : {&kp, &km}) {
    const JostFamily& f = rows->family();
    for (int n = f.first_site(); n <= f.last_site(); ++n) scale = std::max(scale, f.g(n).norm_inf());
  }

  for (int n = lo; n <= hi + 1; ++n) {
    const double b = op.b(n);
    const double a2 = op.a(n) * op.a(n);
    for (int m = n - 1; m <= 2 * hi - n + 1; ++m) {
      const double lhs = kp(n, m + 1) - kp(n - 1, m);
      const double rhs = b * kp(n, m) + (m == n ? b : 0.0) - kp(n, m - 1) + a2 * kp(n + 1, m) +
                         (m == n + 1 ? a2 - 1.0 : 0.0);
      r.kernel_recursion = std::max(r.kernel_recursion, std::abs(lhs - rhs) / scale);
    }
  }
  for (int n = lo - 1; n <= hi; ++n) {
    double tail = 0.0;
    for (int m = n + 1; m <= hi; ++m) tail += op.b(m);
    r.kernel_plus_sum = std::max(r.kernel_plus_sum, std::abs(kp(n, n + 1) + tail) / scale);
  }
  for (int n = lo; n <= hi + 1; ++n) {
    double head = 0.0;
    for (int m = lo; m <= n - 1; ++m) head += op.b(m);
    r.kernel_minus_sum = std::max(r.kernel_minus_sum, std::abs(km(n, n - 1) + head) / scale);
  }
  return r;
}

}  // namespace jacobi

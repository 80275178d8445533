#include "jacobi/roots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "jacobi/error.hpp"

namespace jacobi {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool root_less(const cplx& x, const cplx& y) {
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  if (ax != ay) return ax < ay;
  return std::arg(x) < std::arg(y);
}

// Parlett-Reinsch balancing with radix 2; similarity transform, so the
// eigenvalues are unchanged but the rounding error of the QR iteration drops.
void balance(Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  constexpr double radix = 2.0;
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(m(j, i));
        r += std::abs(m(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        m.row(i) /= f;
        m.col(i) *= f;
      }
    }
  }
}

std::vector<cplx> companion_eigenvalues(const RealPolynomial& p) {
  const int n = p.degree();
  const double lead = p.coeffs().back();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) c(0, j) = -p[n - 1 - j] / lead;
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  balance(c);
  Eigen::EigenSolver<Eigen::MatrixXd> es(c, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::NoConvergence, "companion matrix eigenvalue iteration failed");
  }
  std::vector<cplx> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
  return out;
}

void newton_polish(const RealPolynomial& p, std::vector<cplx>& roots, int max_steps) {
  const RealPolynomial dp = p.derivative();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (j != i) nearest = std::min(nearest, std::abs(roots[i] - roots[j]));
    }
    cplx r = roots[i];
    double res = std::abs(p(r));
    for (int it = 0; it < max_steps && res > 0.0; ++it) {
      const cplx d = dp(r);
      if (d == 0.0) break;
      const cplx step = p(r) / d;
      // a step that would leave the neighbourhood is heading for another root
      if (std::abs(step) > 0.5 * nearest) break;
      const cplx next = r - step;
      const double next_res = std::abs(p(next));
      if (!(next_res < res)) break;
      r = next;
      res = next_res;
      if (std::abs(step) <= 4.0 * kEps * std::abs(r)) break;
    }
    roots[i] = r;
  }
}

void symmetrize_conjugates(std::vector<cplx>& roots, double tol) {
  for (cplx& r : roots) {
    if (std::abs(r.imag()) <= tol * std::max(1.0, std::abs(r))) r = {r.real(), 0.0};
  }
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i] || roots[i].imag() <= 0.0) continue;
    std::size_t best = roots.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (used[j] || roots[j].imag() >= 0.0) continue;
      const double d = std::abs(std::conj(roots[i]) - roots[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best == roots.size()) continue;
    const cplx avg = 0.5 * (roots[i] + std::conj(roots[best]));
    roots[i] = avg;
    roots[best] = std::conj(avg);
    used[i] = used[best] = true;
  }
}

}  // namespace

void ComplexRootSet::sort() { std::sort(roots.begin(), roots.end(), root_less); }

ComplexRootSet ComplexRootSet::inside(double radius) const {
  ComplexRootSet out;
  for (const cplx& r : roots) {
    if (std::abs(r) < radius) out.roots.push_back(r);
  }
  return out;
}

bool ComplexRootSet::conjugation_closed(double tol) const {
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    const double scale = std::max(1.0, std::abs(roots[i]));
    if (std::abs(roots[i].imag()) <= tol * scale) {
      used[i] = true;
      continue;
    }
    bool found = false;
    for (std::size_t j = 0; j < roots.size() && !found; ++j) {
      if (j == i || used[j]) continue;
      if (std::abs(std::conj(roots[i]) - roots[j]) <= tol * scale) {
        used[i] = used[j] = true;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

ComplexRootSet find_roots(const RealPolynomial& p, const RootOptions& opt) {
  if (p.degree() < 1) throw Error(ErrorKind::Validation, "find_roots needs degree >= 1");

  ComplexRootSet out;
  out.roots = companion_eigenvalues(p);
  newton_polish(p, out.roots, opt.max_polish);
  symmetrize_conjugates(out.roots, opt.pairing_tol);
  out.sort();

  const double scale = p.norm_inf();
  const int deg = p.degree();
  for (const cplx& r : out.roots) {
    const double res = std::abs(p(r));
    const double allowed = opt.root_tol * scale * std::pow(std::max(1.0, std::abs(r)), deg);
    if (!(res <= allowed)) {
      std::ostringstream msg;
      msg << "root " << r << " has residual " << res << " above " << allowed;
      throw Error(ErrorKind::NoConvergence, msg.str());
    }
  }
  return out;
}

double root_lower_bound(const RealPolynomial& p) {
  if (p.degree() < 1) throw Error(ErrorKind::Validation, "root_lower_bound needs degree >= 1");
  if (p[0] == 0.0) throw Error(ErrorKind::ZeroConstantTerm, "polynomial vanishes at 0");
  return std::abs(p[0]) / (p.degree() * p.norm_inf());
}

double product_difference_bound(double Z, std::span<const cplx> z, std::span<const cplx> zt) {
  if (z.size() != zt.size()) {
    throw Error(ErrorKind::Validation, "product_difference_bound needs equally many points");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (std::abs(z[j]) > Z || std::abs(zt[j]) > Z) {
      throw Error(ErrorKind::ModulusExceedsZ, "point modulus exceeds Z");
    }
    sum += std::abs(z[j] - zt[j]);
  }
  if (z.empty()) return 0.0;
  return std::pow(1.0 + Z, static_cast<double>(z.size()) - 1.0) * sum;
}

}  // namespace jacobi

#include "jacobi/inverse.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "jacobi/error.hpp"
#include "jacobi/kernels.hpp"

namespace jacobi {

namespace {

using Coeffs = std::vector<double>;

double norm1(const RealPolynomial& p) { return std::max(p.norm_1(), 1e-300); }

bool vanishes_at(const RealPolynomial& p, double z, double tol) { return std::abs(p(z)) <= tol * norm1(p); }

RealPolynomial with_unit_constant(const RealPolynomial& p) {
  Coeffs c = p.coeffs();
  if (c.empty()) c.push_back(0.0);
  c[0] = 1.0;
  return RealPolynomial(std::move(c));
}

// z* moved outward until it is clear of every root and of their reciprocals
double clear_point(double z, const RootData& rd) {
  auto near_root = [&](double x) {
    for (const auto* list : {&rd.poles, &rd.zeros}) {
      for (const cplx& r : *list) {
        if (std::abs(r - x) < 1e-6) return true;
      }
    }
    return false;
  };
  while (near_root(z) || near_root(1.0 / z)) z += 0.5;
  return z;
}

// One evaluation of the identity w(z) w(1/z) + (z - 1/z)^2 = s(z) s(1/z),
// solved for A^2. `amplification` is the size of the cancelling terms over
// the result; the least amplified point is used.
struct IdentityPoint {
  cplx z;
  double a2 = 0.0;
  double amplification = std::numeric_limits<double>::infinity();
};

std::vector<cplx> identity_points(double z_star, const RootData& rd) {
  const double z1 = clear_point(z_star, rd);
  std::vector<cplx> pts{z1, clear_point(z1 + 1.0, rd)};
  for (int k = 1; k < 8; ++k) pts.push_back(std::polar(1.0, std::numbers::pi * k / 8.0));
  return pts;
}

// Sorted by amplification.
std::vector<IdentityPoint> rank_points(std::vector<IdentityPoint> pts) {
  std::stable_sort(pts.begin(), pts.end(),
                   [](const IdentityPoint& x, const IdentityPoint& y) { return x.amplification < y.amplification; });
  return pts;
}

// --- raw coefficient helpers for the refinement ---

void axpy(Coeffs& y, double s, const Coeffs& x, int shift = 0) {
  const std::size_t need = x.size() + static_cast<std::size_t>(shift);
  if (y.size() < need) y.resize(need, 0.0);
  for (std::size_t j = 0; j < x.size(); ++j) y[j + static_cast<std::size_t>(shift)] += s * x[j];
}

// x * (1 - b z + z^2)
Coeffs times_site(const Coeffs& x, double b) {
  Coeffs y;
  axpy(y, 1.0, x, 0);
  axpy(y, -b, x, 1);
  axpy(y, 1.0, x, 2);
  return y;
}

struct Model {
  Eigen::VectorXd value;
  Eigen::MatrixXd jacobian;
};

// Coefficients of A w and A s for b on [0, N] and c_n = a_n^2 on [0, N-1],
// with their derivatives in (b, c) carried along the recursion.
Model evaluate_model(const Eigen::VectorXd& x, int N, int L) {
  const int np = 2 * N + 1;
  auto b = [&](int n) { return x(n); };
  auto c = [&](int n) { return n < N ? x(N + 1 + n) : 1.0; };

  Coeffs next{1.0};
  Coeffs cur{1.0};
  std::vector<Coeffs> dnext(static_cast<std::size_t>(np));
  std::vector<Coeffs> dcur(static_cast<std::size_t>(np));
  for (int n = N; n >= 0; --n) {
    Coeffs prev = times_site(cur, b(n));
    axpy(prev, -c(n), next, 2);
    std::vector<Coeffs> dprev(static_cast<std::size_t>(np));
    for (int p = 0; p < np; ++p) {
      const auto ip = static_cast<std::size_t>(p);
      Coeffs d = times_site(dcur[ip], b(n));
      axpy(d, -c(n), dnext[ip], 2);
      if (p == n) axpy(d, -1.0, cur, 1);
      if (p == N + 1 + n) axpy(d, -1.0, next, 2);
      dprev[ip] = std::move(d);
    }
    next = std::move(cur);
    cur = std::move(prev);
    dnext = std::move(dcur);
    dcur = std::move(dprev);
  }
  // cur = g(-1), next = g(0)
  auto at = [](const Coeffs& v, int j) { return j >= 0 && j < static_cast<int>(v.size()) ? v[static_cast<std::size_t>(j)] : 0.0; };
  Model m;
  m.value.resize(2 * L);
  m.jacobian.resize(2 * L, np);
  for (int j = 0; j < L; ++j) {
    m.value(j) = at(cur, j) - at(next, j - 2);
    m.value(L + j) = at(next, j) - at(cur, j);
    for (int p = 0; p < np; ++p) {
      const auto ip = static_cast<std::size_t>(p);
      m.jacobian(j, p) = at(dcur[ip], j) - at(dnext[ip], j - 2);
      m.jacobian(L + j, p) = at(dnext[ip], j) - at(dcur[ip], j);
    }
  }
  return m;
}

}  // namespace

std::string_view to_string(SignBranch b) noexcept {
  switch (b) {
    case SignBranch::via_s_at_1: return "via_s_at_1";
    case SignBranch::via_s_at_minus_1: return "via_s_at_minus_1";
    case SignBranch::via_residue_positivity: return "via_residue_positivity";
    case SignBranch::free: return "free";
  }
  return "unknown";
}

RootData root_data_from(const ScatteringData& sd) {
  RootData rd;
  rd.poles = sd.all_poles().roots;
  rd.zeros = sd.reflection_zeros.roots;
  return rd;
}

PQ assemble_polynomials(const RootData& rd) {
  PQ out;
  auto expand = [&](const std::vector<cplx>& roots, const char* what) {
    for (const cplx& r : roots) {
      if (r == 0.0) throw Error(ErrorKind::Validation, std::string(what) + " contain z = 0");
    }
    const std::vector<cplx> c = product_from_reciprocal_roots(roots);
    double big = 1.0;
    double imag = 0.0;
    for (const cplx& x : c) {
      big = std::max(big, std::abs(x));
      imag = std::max(imag, std::abs(x.imag()));
    }
    const double rel = imag / big;
    out.imag_residual = std::max(out.imag_residual, rel);
    if (rel > 1e-10) {
      std::ostringstream msg;
      msg << what << " are not closed under conjugation (imaginary part " << rel << ")";
      throw Error(ErrorKind::NonRealCoefficients, msg.str());
    }
    Coeffs re(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) re[j] = c[j].real();
    return RealPolynomial(std::move(re));
  };
  out.P = expand(rd.poles, "poles");
  out.Q = expand(rd.zeros, "zeros");
  return out;
}

Calibration calibrate(const RealPolynomial& P, const RealPolynomial& Q, const RootData& rd,
                      const CalibrateOptions& opt) {
  Calibration cal;

  // the free expression: w = 1 - z^2, s = 0
  if (rd.zeros.empty() && P.degree() == 2 && std::abs(P[0] - 1.0) <= 1e-10 && std::abs(P[1]) <= 1e-10 &&
      std::abs(P[2] + 1.0) <= 1e-10) {
    cal.b0 = 0.0;
    cal.A = 1.0;
    cal.branch = SignBranch::free;
    return cal;
  }

  const std::vector<cplx> points = identity_points(opt.z_star, rd);

  const bool hb_plus = vanishes_at(P, 1.0, opt.hb_tol);
  const bool hb_minus = vanishes_at(P, -1.0, opt.hb_tol);
  std::vector<IdentityPoint> ranked;

  if (!hb_plus && !vanishes_at(Q, 1.0, opt.hb_tol)) {
    cal.b0 = -P(1.0) / Q(1.0);
    cal.branch = SignBranch::via_s_at_1;
  } else if (!hb_minus && !vanishes_at(Q, -1.0, opt.hb_tol)) {
    cal.b0 = P(-1.0) / Q(-1.0);
    cal.branch = SignBranch::via_s_at_minus_1;
  } else {
    const cplx* eig = nullptr;
    for (const cplx& r : rd.poles) {
      if (std::abs(r) < 1.0 - opt.hb_tol && (eig == nullptr || std::abs(r) < std::abs(*eig))) eig = &r;
    }
    if (eig == nullptr) {
      throw Error(ErrorKind::BothBranchesUnavailable,
                  "half-bound states at both thresholds and no eigenvalue: the data does not fix b_0");
    }
    const double wj = eig->real();
    const double d = wj - 1.0 / wj;
    const double kappa = d * d / (Q(wj) * Q(1.0 / wj));  // (b_0 / A)^2
    if (!(kappa > 0.0)) throw Error(ErrorKind::NegativeASquared, "(b_0 / A)^2 is not positive");
    std::vector<IdentityPoint> pts;
    for (const cplx& z : points) {
      const cplx e = (z - 1.0 / z) * (z - 1.0 / z);
      const cplx q = kappa * Q(z) * Q(1.0 / z);
      const double den = (e - q).real();
      pts.push_back({z, -(P(z) * P(1.0 / z)).real() / den, (std::abs(e) + std::abs(q)) / std::abs(den)});
    }
    ranked = rank_points(std::move(pts));
    if (!(ranked[0].a2 > 0.0)) throw Error(ErrorKind::NegativeASquared, "A^2 from the root data is not positive");
    // the norming constant -b_0 Q(w_j) / P'(w_j) must be positive
    const double sign = Q(wj) / P.derivative()(wj) > 0.0 ? -1.0 : 1.0;
    cal.b0 = sign * std::sqrt(kappa * ranked[0].a2);
    cal.branch = SignBranch::via_residue_positivity;
  }

  if (std::abs(cal.b0) <= 1e-12) throw Error(ErrorKind::VanishingB0, "b_0 vanishes: the data lies in no B_delta");

  if (cal.branch != SignBranch::via_residue_positivity) {
    std::vector<IdentityPoint> pts;
    for (const cplx& z : points) {
      const cplx e = (z - 1.0 / z) * (z - 1.0 / z);
      const double t1 = (cal.b0 * cal.b0 * Q(z) * Q(1.0 / z)).real();
      const double t2 = (P(z) * P(1.0 / z)).real();
      pts.push_back({z, ((t1 - t2) / e).real(), (std::abs(t1) + std::abs(t2)) / std::abs(t1 - t2)});
    }
    ranked = rank_points(std::move(pts));
  }
  const double a2 = ranked[0].a2;
  if (!(a2 > 0.0)) {
    std::ostringstream msg;
    msg << "A^2 = " << a2 << " from the root data is not positive";
    throw Error(ErrorKind::NegativeASquared, msg.str());
  }
  cal.A = std::sqrt(a2);
  cal.z_star = ranked[0].z;
  cal.z_star_check = ranked[1].z;
  cal.a2_cross_check = std::abs(a2 - ranked[1].a2) / a2;
  return cal;
}

BoundaryJost recover_boundary_jost(const RealPolynomial& P, const RealPolynomial& Q, double b0, bool exact) {
  const RealPolynomial S = Q.shifted(1).scaled(b0);
  const RealPolynomial F = P + S;
  const RealPolynomial one_minus_z2{1.0, 0.0, -1.0};
  BoundaryJost out;

  if (exact) {
    const Division d = divide(F, one_minus_z2);
    out.division_residual = d.remainder.norm_inf() / std::max(F.norm_inf(), 1e-300);
    if (out.division_residual > 1e-9) {
      std::ostringstream msg;
      msg << "P + b_0 z Q is not divisible by 1 - z^2 (relative remainder " << out.division_residual << ")";
      throw Error(ErrorKind::RemainderTooLarge, msg.str());
    }
    out.g_0 = d.quotient;
  } else {
    // power series quotient; the top two coefficients of F become the remainder
    const int top = F.degree() - 2;
    Coeffs c(static_cast<std::size_t>(std::max(top + 1, 1)), 0.0);
    for (int k = 0; k <= top; ++k) c[static_cast<std::size_t>(k)] = F[k] + (k >= 2 ? c[static_cast<std::size_t>(k - 2)] : 0.0);
    if (top < 0) c[0] = 1.0;
    out.g_0 = RealPolynomial(c);
    const RealPolynomial r = F - one_minus_z2 * out.g_0;
    out.division_residual = r.norm_inf() / std::max(F.norm_inf(), 1e-300);
  }
  out.g_minus1 = out.g_0 - S;

  out.constant_term_residual = std::max(std::abs(out.g_0[0] - 1.0), std::abs(out.g_minus1[0] - 1.0));
  if (exact && out.constant_term_residual > 1e-9) {
    std::ostringstream msg;
    msg << "boundary Jost polynomials have constant term off by " << out.constant_term_residual;
    throw Error(ErrorKind::InconsistentData, msg.str());
  }
  out.g_0 = with_unit_constant(out.g_0);
  out.g_minus1 = with_unit_constant(out.g_minus1);
  return out;
}

StripResult layer_strip(const RealPolynomial& g_minus1, const RealPolynomial& g_0, const StripOptions& opt) {
  const int D = std::max(opt.degree.value_or(g_minus1.degree()), 0);
  const int max_sites = opt.max_sites > 0 ? opt.max_sites : 4 * D + 8;
  const RealPolynomial one{1.0};

  // drops coefficients above the degree bound and records their size
  auto cap = [&](const RealPolynomial& g, int degree, double& dropped) {
    if (degree < 0) {
      dropped = std::max(dropped, (g - one).norm_inf());
      return one;
    }
    for (int j = degree + 1; j <= g.degree(); ++j) dropped = std::max(dropped, std::abs(g[j]));
    return g.truncated(degree);
  };

  StripResult out;
  double dropped = 0.0;
  RealPolynomial prev = cap(g_minus1, D, dropped);
  RealPolynomial cur = cap(g_0, D - 2, dropped);
  out.division_residuals.push_back(dropped);

  for (int n = 0; n <= max_sites; ++n) {
    const double b = cur[1] - prev[1];
    const double a2 = cur[2] + 1.0 - b * cur[1] - prev[2];
    if (!(a2 > opt.a2_floor)) {
      std::ostringstream msg;
      msg << "a_" << n << "^2 = " << a2 << " is not positive";
      throw Error(ErrorKind::NonPositiveA2, msg.str());
    }
    const RealPolynomial num = cur * RealPolynomial{1.0, -b, 1.0} - prev;
    double residual = std::max(std::abs(num[0]), std::abs(num[1])) / std::max(1.0, num.norm_inf());
    Coeffs high(num.coeffs().begin() + std::min<std::ptrdiff_t>(2, static_cast<std::ptrdiff_t>(num.coeffs().size())),
                num.coeffs().end());
    const RealPolynomial next = cap(RealPolynomial(std::move(high)).scaled(1.0 / a2), D - 2 * (n + 2), residual);
    out.division_residuals.push_back(residual);

    out.b.push_back(b);
    out.a2.push_back(a2);
    const double term = std::max({(cur - one).norm_inf(), (next - one).norm_inf(), std::abs(a2 - 1.0)});
    if (term <= opt.term_tol) {
      out.a2.pop_back();
      out.termination = term;
      return out;
    }
    prev = cur;
    cur = next;
  }
  throw Error(ErrorKind::NoTermination, "layer stripping did not reach the free region");
}

RefineResult refine(const std::vector<double>& b, const std::vector<double>& a2, const RealPolynomial& P,
                    const RealPolynomial& S, int max_iterations) {
  const int N = static_cast<int>(b.size()) - 1;
  if (N < 0 || static_cast<int>(a2.size()) != N) throw Error(ErrorKind::Validation, "refine: size mismatch");
  const int L = std::max({2 * N + 2, P.degree() + 1, S.degree() + 1});

  Eigen::VectorXd data(2 * L);
  for (int j = 0; j < L; ++j) {
    data(j) = P[j];
    data(L + j) = S[j];
  }
  const double scale = std::max(1.0, data.lpNorm<Eigen::Infinity>());

  Eigen::VectorXd x(2 * N + 1);
  for (int n = 0; n <= N; ++n) x(n) = b[static_cast<std::size_t>(n)];
  for (int n = 0; n < N; ++n) x(N + 1 + n) = a2[static_cast<std::size_t>(n)];

  Model m = evaluate_model(x, N, L);
  double res = (data - m.value).lpNorm<Eigen::Infinity>() / scale;
  double res2 = (data - m.value).squaredNorm();

  RefineResult out;
  out.initial_residual = res;
  for (int it = 0; it < max_iterations; ++it) {
    const Eigen::VectorXd dx = m.jacobian.colPivHouseholderQr().solve(data - m.value);
    double step = 1.0;
    bool improved = false;
    for (int half = 0; half < 20; ++half, step *= 0.5) {
      const Eigen::VectorXd trial = x + step * dx;
      Model mt = evaluate_model(trial, N, L);
      const double t2 = (data - mt.value).squaredNorm();
      if (t2 < res2) {
        x = trial;
        m = std::move(mt);
        res2 = t2;
        res = (data - m.value).lpNorm<Eigen::Infinity>() / scale;
        improved = true;
        break;
      }
    }
    out.iterations = it + 1;
    if (!improved) break;
    if (step * dx.lpNorm<Eigen::Infinity>() <= 1e-15 * std::max(1.0, x.lpNorm<Eigen::Infinity>())) break;
  }

  out.final_residual = res;
  out.b.assign(x.data(), x.data() + N + 1);
  out.a2.assign(x.data() + N + 1, x.data() + 2 * N + 1);
  return out;
}

ReconstructionReport reconstruct(const RootData& rd, const ReconstructOptions& opt) {
  for (const cplx& p : rd.poles) {
    if (std::abs(std::abs(p.real()) - 1.0) <= 1e-8 && std::abs(p.imag()) <= 1e-8) continue;
    for (const cplx& s : rd.zeros) {
      if (std::abs(p - s) <= opt.common_root_tol * std::max(1.0, std::abs(p))) {
        std::ostringstream msg;
        msg << "pole and zero coincide at " << p;
        throw Error(ErrorKind::CommonRoot, msg.str());
      }
    }
  }

  const PQ pq = assemble_polynomials(rd);
  const Calibration cal = calibrate(pq.P, pq.Q, rd, opt.calibrate);

  ReconstructionReport rep;
  rep.b0 = cal.b0;
  rep.A = cal.A;
  rep.sign_branch = cal.branch;
  rep.residuals.imag_part = pq.imag_residual;
  rep.residuals.a2_cross_check = cal.a2_cross_check;
  if (cal.branch == SignBranch::free) {
    rep.op = JacobiOperator::free();
    return rep;
  }

  const BoundaryJost bj = recover_boundary_jost(pq.P, pq.Q, cal.b0, !opt.lenient);
  rep.residuals.boundary_division = bj.division_residual;
  rep.residuals.boundary_constant = bj.constant_term_residual;

  StripOptions so = opt.strip;
  if (so.max_sites <= 0) so.max_sites = 4 * (pq.P.degree() + pq.Q.degree()) + 8;
  if (opt.lenient && opt.n_plus) so.degree = 2 * *opt.n_plus + 1;

  // starting points for the least squares fit
  std::vector<std::pair<std::vector<double>, std::vector<double>>> starts;
  try {
    StripResult sr = layer_strip(bj.g_minus1, bj.g_0, so);
    rep.residuals.strip_division = sr.division_residuals;
    rep.residuals.termination = sr.termination;
    if (opt.lenient && opt.n_plus) {
      const auto N = static_cast<std::size_t>(*opt.n_plus);
      sr.b.resize(N + 1, 0.0);
      sr.a2.resize(N, 1.0);
    }
    starts.emplace_back(std::move(sr.b), std::move(sr.a2));
  } catch (const Error&) {
    if (!opt.lenient || !opt.warm_start) throw;
  }
  if (opt.lenient && opt.warm_start) {
    const int N = opt.n_plus.value_or(std::max(0, opt.warm_start->n_plus()));
    const JacobiOperator w = on_window(*opt.warm_start, N);
    std::vector<double> a2;
    for (double a : w.a_values()) a2.push_back(a * a);
    starts.emplace_back(w.b_values(), std::move(a2));
  }

  const RealPolynomial S = pq.Q.shifted(1).scaled(cal.b0);
  std::optional<RefineResult> best;
  for (const auto& [b, a2] : starts) {
    RefineResult rr = refine(b, a2, pq.P, S);
    if (!best || rr.final_residual < best->final_residual) best = std::move(rr);
  }
  rep.residuals.fit_initial = best->initial_residual;
  rep.residuals.fit_final = best->final_residual;
  rep.residuals.refine_iterations = best->iterations;

  if (!opt.lenient && best->final_residual > opt.fit_tol) {
    std::ostringstream msg;
    msg << "no operator reproduces the root data (relative fit residual " << best->final_residual << ")";
    throw Error(ErrorKind::InconsistentData, msg.str());
  }
  std::vector<double> a;
  for (std::size_t n = 0; n < best->a2.size(); ++n) {
    if (!(best->a2[n] > opt.strip.a2_floor)) {
      std::ostringstream msg;
      msg << "a_" << n << "^2 = " << best->a2[n] << " is not positive";
      throw Error(ErrorKind::NonPositiveA2, msg.str());
    }
    a.push_back(std::sqrt(best->a2[n]));
  }
  const int N = static_cast<int>(best->b.size()) - 1;
  rep.op = JacobiOperator(0, N, std::move(a), best->b);
  rep.residuals.a_product = std::abs(rep.op.a_product() - cal.A) / cal.A;
  if (!opt.lenient && rep.residuals.a_product > opt.product_tol) {
    std::ostringstream msg;
    msg << "product of recovered a_n differs from A by " << rep.residuals.a_product << " (relative)";
    throw Error(ErrorKind::InconsistentData, msg.str());
  }
  return rep;
}

}  // namespace jacobi

#include "jacobi/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "jacobi/error.hpp"

namespace jacobi {

KernelTable::KernelTable(KernelKind kind, int N) : kind_(kind), N_(N) {}

double KernelTable::operator()(int n, int m) const {
  const auto it = table_.find({n, m});
  return it == table_.end() ? 0.0 : it->second;
}

void KernelTable::set(int n, int m, double v) {
  if (!in_triangle(N_, n, m)) throw Error(ErrorKind::Validation, "kernel index outside the triangle");
  table_[{n, m}] = v;
}

double KernelTable::max_abs() const {
  double out = 0.0;
  for (const auto& [key, v] : table_) out = std::max(out, std::abs(v));
  return out;
}

JacobiOperator on_window(const JacobiOperator& op, int N) {
  if (op.n_minus() < 0 || op.n_plus() > N) {
    throw Error(ErrorKind::Validation, "operator is not supported in [0, N]");
  }
  std::vector<double> a(static_cast<std::size_t>(N));
  std::vector<double> b(static_cast<std::size_t>(N + 1));
  for (int n = 0; n < N; ++n) a[static_cast<std::size_t>(n)] = op.a(n);
  for (int n = 0; n <= N; ++n) b[static_cast<std::size_t>(n)] = op.b(n);
  return JacobiOperator(0, N, std::move(a), std::move(b));
}

namespace {

int common_size(const JacobiOperator& x, const JacobiOperator& y) {
  return std::max({0, x.n_plus(), y.n_plus()});
}

KernelTable k0_from_rows(const KernelRows& rows, int N) {
  KernelTable t(KernelKind::K0, N);
  for (int n = -1; n < N; ++n) {
    for (int m = n + 1; m < 2 * N - n; ++m) t.set(n, m, rows(n, m));
  }
  return t;
}

}  // namespace

KernelTable k0_table(const JacobiOperator& op) {
  const int N = std::max(0, op.n_plus());
  const JacobiOperator w = on_window(op, N);
  return k0_from_rows(kernel_coeffs(jost(w, Side::plus)), N);
}

KernelTable inverse_kernel(const KernelRows& k0) {
  const JostFamily& f = k0.family();
  if (k0.side() != Side::plus || f.first_site() != -1) {
    throw Error(ErrorKind::Validation, "inverse_kernel needs K_0^+ of an operator with N^- = 0");
  }
  const int N = f.last_site() - 1;
  auto A = [&](int n) { return f.a_product(n); };

  KernelTable L(KernelKind::L0, N);
  for (int n = N - 1; n >= -1; --n) {
    for (int m = n + 1; m < 2 * N - n; ++m) {
      double v = -A(m) / A(n) * k0(n, m);
      for (int k = n + 1; k < m; ++k) v -= A(k) / A(n) * k0(n, k) * L(k, m);
      L.set(n, m, v);
    }
  }
  return L;
}

double impulse_composition_error(const JacobiOperator& op, const KernelTable& l0) {
  const int N = l0.N();
  const JacobiOperator w = on_window(op, N);
  const KernelRows k0 = kernel_coeffs(jost(w, Side::plus));
  const int lo = -1;
  const int hi = 2 * N;
  auto idx = [&](int n) { return static_cast<std::size_t>(n - lo); };

  // (K_0 f)(n) = (f(n) + sum K_0(n, m) f(m)) / A^+(n)
  auto apply_k0 = [&](const std::vector<double>& f) {
    std::vector<double> out(f.size());
    for (int n = lo; n <= hi; ++n) {
      double s = f[idx(n)];
      for (int m = n + 1; m <= hi; ++m) s += k0(n, m) * f[idx(m)];
      out[idx(n)] = s / w.a_plus(n);
    }
    return out;
  };
  // (L_0 f)(n) = A^+(n) (f(n) + sum L_0(n, m) f(m))
  auto apply_l0 = [&](const std::vector<double>& f) {
    std::vector<double> out(f.size());
    for (int n = lo; n <= hi; ++n) {
      double s = f[idx(n)];
      for (int m = n + 1; m <= hi; ++m) s += l0(n, m) * f[idx(m)];
      out[idx(n)] = s * w.a_plus(n);
    }
    return out;
  };

  double err = 0.0;
  for (int j = lo; j <= hi; ++j) {
    std::vector<double> e(idx(hi) + 1, 0.0);
    e[idx(j)] = 1.0;
    const auto kl = apply_k0(apply_l0(e));
    const auto lk = apply_l0(apply_k0(e));
    for (std::size_t i = 0; i < e.size(); ++i) {
      err = std::max({err, std::abs(kl[i] - e[i]), std::abs(lk[i] - e[i])});
    }
  }
  return err;
}

KernelTable pair_kernel(const JacobiOperator& op, const JacobiOperator& op_t) {
  const int N = common_size(op, op_t);
  const JacobiOperator x = on_window(op, N);
  const JacobiOperator y = on_window(op_t, N);
  const KernelRows k0 = kernel_coeffs(jost(x, Side::plus));
  const KernelRows kt = kernel_coeffs(jost(y, Side::plus));
  const KernelTable L = inverse_kernel(k0);
  auto A = [&](int n) { return x.a_plus(n); };

  KernelTable K(KernelKind::K_pair, N);
  for (int n = -1; n < N; ++n) {
    for (int m = n + 1; m < 2 * N - n; ++m) {
      double via_l0 = L(n, m) + A(m) / A(n) * kt(n, m);
      double via_diff = A(m) / A(n) * (kt(n, m) - k0(n, m));
      for (int k = n + 1; k < m; ++k) {
        via_l0 += A(k) / A(n) * kt(n, k) * L(k, m);
        via_diff += A(k) / A(n) * L(k, m) * (kt(n, k) - k0(n, k));
      }
      if (std::abs(via_l0 - via_diff) > 1e-10 * std::max(1.0, std::abs(via_l0))) {
        std::ostringstream msg;
        msg << "pair kernel constructions disagree at (" << n << ", " << m << "): " << via_l0 << " vs "
            << via_diff;
        throw Error(ErrorKind::CrossCheckFailure, msg.str());
      }
      K.set(n, m, via_l0);
    }
  }
  for (int n = -1; n <= N + 1; ++n) K.ratio[n] = x.a_plus(n) / y.a_plus(n);
  return K;
}

PairIdentityReport check_pair_identities(const KernelTable& K, const JacobiOperator& op,
                                         const JacobiOperator& op_t) {
  const int N = K.N();
  const JacobiOperator x = on_window(op, N);
  const JacobiOperator y = on_window(op_t, N);
  auto a = [&](int n) { return x.a(n); };
  auto b = [&](int n) { return x.b(n); };
  auto at = [&](int n) { return y.a(n); };
  auto bt = [&](int n) { return y.b(n); };

  PairIdentityReport r;
  r.scale = std::max(1.0, K.max_abs());

  for (int n = 0; n <= N; ++n) {
    for (int m = n; m <= 2 * N - n + 1; ++m) {
      const double lhs = a(n - 1) * K(n - 1, m) + at(n) * at(n) / a(n) * K(n + 1, m) - a(m) * K(n, m + 1) -
                         a(m - 1) * K(n, m - 1);
      const double rhs = (b(m) - bt(n)) * K(n, m) +
                         (m == n + 1 ? (a(n) * a(n) - at(n) * at(n)) / a(n) : 0.0) +
                         (m == n ? b(n) - bt(n) : 0.0);
      r.box = std::max(r.box, std::abs(lhs - rhs) / r.scale);
    }
  }

  for (int n = -1; n <= N - 1; ++n) {
    double sum = 0.0;
    for (int j = n + 1; j <= N; ++j) sum += b(j) - bt(j);
    r.k1 = std::max(r.k1, std::abs(K(n, n + 1) - sum / a(n)) / r.scale);
  }

  for (int n = -1; n <= N - 2; ++n) {
    auto q = [&](int j) {
      double s = 0.0;
      for (int k = n + 1; k <= j; ++k) s += b(k + 1) - bt(k);
      return s;
    };
    double sum = 0.0;
    for (int j = n + 1; j <= N - 1; ++j) sum += q(j) * (b(j + 1) - bt(j + 1)) + a(j) * a(j) - at(j) * at(j);
    r.k2 = std::max(r.k2, std::abs(K(n, n + 2) - sum / (a(n) * a(n + 1))) / r.scale);
  }

  for (const auto& [n, ratio] : K.ratio) {
    const double expect = x.a_plus(n) / y.a_plus(n);
    r.k1_ratio = std::max(r.k1_ratio, std::abs(ratio - expect) / std::max(1.0, std::abs(expect)));
  }
  return r;
}

BoundConstants empirical_bound_constants(
    const std::vector<std::pair<JacobiOperator, JacobiOperator>>& pairs) {
  constexpr double kGuard = 1e-14;
  BoundConstants out;
  for (const auto& [op, op_t] : pairs) {
    const KernelTable K = pair_kernel(op, op_t);
    const double kmax = K.max_abs();
    out.C0_hat = std::max(out.C0_hat, kmax);
    if (kmax <= kGuard) {
      ++out.vacuous;
      continue;
    }
    double denom = 0.0;
    for (int j = 2; j <= 2 * K.N(); ++j) denom = std::max(denom, std::abs(K(-1, j)));
    if (denom < kGuard) {
      ++out.degenerate;
      continue;
    }
    out.C1_hat = std::max(out.C1_hat.value_or(0.0), kmax / denom);
  }
  return out;
}

double direct_k0_difference(const JacobiOperator& op, const JacobiOperator& op_t, int m) {
  const int N = common_size(op, op_t);
  const JostFamily g = jost(on_window(op, N), Side::plus);
  const JostFamily gt = jost(on_window(op_t, N), Side::plus);
  return kernel_coeffs(g)(-1, m) - kernel_coeffs(gt)(-1, m);
}

double cauchy_extract(const JacobiOperator& op, const JacobiOperator& op_t, int m, int quad_points) {
  const int N = common_size(op, op_t);
  if (m < 0 || m > 2 * N) throw Error(ErrorKind::Validation, "cauchy_extract needs 0 <= m <= 2N");
  if (quad_points < 1) throw Error(ErrorKind::Validation, "cauchy_extract needs quad_points >= 1");

  // A w = g(-1) - z^2 g(0) and A s = g(0) - g(-1) for N^- = 0
  auto scaled_ws = [&](const JacobiOperator& x) {
    const JostFamily g = jost(on_window(x, N), Side::plus);
    return std::pair{g.g(-1) - g.g(0).shifted(2), g.g(0) - g.g(-1)};
  };
  const auto [Aw, As] = scaled_ws(op);
  const auto [Awt, Ast] = scaled_ws(op_t);

  constexpr double r = 0.5;
  cplx sum = 0.0;
  for (int k = 0; k < quad_points; ++k) {
    const cplx z = std::polar(r, 2.0 * std::numbers::pi * k / quad_points);
    const cplx F = ((Aw(z) - Awt(z)) / z + z * (As(z) - Ast(z))) / (1.0 - z * z);
    sum += F * std::pow(z, -m);
  }
  const double contour = (sum / static_cast<double>(quad_points)).real();

  const double direct = direct_k0_difference(op, op_t, m);
  if (std::abs(contour - direct) > 1e-8) {
    std::ostringstream msg;
    msg << "contour value " << contour << " differs from coefficient difference " << direct << " at m = " << m;
    throw Error(ErrorKind::QuadratureDisagreement, msg.str());
  }
  return contour;
}

}  // namespace jacobi

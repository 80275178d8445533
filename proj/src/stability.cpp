#include "jacobi/stability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <thread>

#include "jacobi/error.hpp"
#include "jacobi/matching.hpp"
#include "jacobi/random_ops.hpp"
#include "jacobi/roots.hpp"

namespace jacobi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ComplexRootSet as_set(const std::vector<cplx>& v) {
  ComplexRootSet s{v};
  s.sort();
  return s;
}

// realized epsilon between the in-disk roots of `base` and the roots of `pert`
double realized(const std::vector<cplx>& base, const std::vector<cplx>& pert, double radius) {
  return match_root_sets(as_set(base).inside(radius), as_set(pert), kInf).max_distance;
}

std::size_t count_inside(const std::vector<cplx>& v, double radius) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [&](const cplx& z) { return std::abs(z) < radius; }));
}

double safe_lower_bound(const RealPolynomial& p) { return p.degree() >= 1 ? root_lower_bound(p) : 1.0; }

// (1 + 1/g)^(M-1) (m / g^2) eps + (M - m)(1 + 1/g)^(M-1) / R + (Mt - m)(1 + 1/g)^(Mt-1) / R
double product_bound(double gamma, std::size_t M, std::size_t Mt, std::size_t m, double eps, double R) {
  const double G = 1.0 + 1.0 / gamma;
  auto pw = [&](std::size_t k) { return k == 0 ? 1.0 / G : std::pow(G, static_cast<double>(k) - 1.0); };
  double out = 0.0;
  if (m > 0) out += pw(M) * static_cast<double>(m) / (gamma * gamma) * eps;
  out += static_cast<double>(M - m) * pw(M) / R;
  out += static_cast<double>(Mt - m) * pw(Mt) / R;
  return out;
}

struct DataPolys {
  RealPolynomial P, Q;
  double b0 = 0.0;
};

DataPolys data_polys(const RootData& rd) {
  PQ pq = assemble_polynomials(rd);
  DataPolys d{pq.P, pq.Q, 0.0};
  d.b0 = -d.P(1.0) / d.Q(1.0);
  return d;
}

}  // namespace

RootData perturb_roots(const RootData& rd, double eps, double radius, std::uint64_t seed, Perturbation mode,
                       double pairing_tol) {
  if (!(eps >= 0.0)) throw Error(ErrorKind::Validation, "eps must be >= 0");
  if (!(radius >= 1.0)) throw Error(ErrorKind::Validation, "radius must be >= 1");

  std::vector<cplx> inside;
  for (const auto* list : {&rd.poles, &rd.zeros}) {
    for (const cplx& z : *list) {
      if (std::abs(z) < radius) inside.push_back(z);
    }
  }
  if (eps > 0.0) {
    double gap = kInf;
    for (std::size_t i = 0; i < inside.size(); ++i) {
      for (std::size_t j = i + 1; j < inside.size(); ++j) gap = std::min(gap, std::abs(inside[i] - inside[j]));
    }
    if (!(eps < 0.5 * gap)) {
      throw Error(ErrorKind::GapTooSmall, "eps is not below half the smallest gap between in-disk roots");
    }
  }

  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto offset = [&](const cplx& z) -> cplx {
    if (mode == Perturbation::radial) return (2.0 * unit(rng) - 1.0) * eps * z / std::abs(z);
    const double r = eps * std::sqrt(unit(rng));
    return std::polar(r, 2.0 * std::numbers::pi * unit(rng));
  };

  auto perturb = [&](const std::vector<cplx>& roots) {
    std::vector<cplx> kept;
    for (const cplx& z : roots) {
      if (std::abs(z) < radius) kept.push_back(z);
    }
    std::vector<bool> done(kept.size(), false);
    for (std::size_t i = 0; i < kept.size(); ++i) {
      if (done[i]) continue;
      const cplx z = kept[i];
      done[i] = true;
      if (std::abs(z.imag()) <= pairing_tol * std::max(1.0, std::abs(z))) {
        kept[i] = {z.real() + (2.0 * unit(rng) - 1.0) * eps, 0.0};
        continue;
      }
      std::size_t partner = kept.size();
      double best = kInf;
      for (std::size_t j = 0; j < kept.size(); ++j) {
        if (done[j]) continue;
        const double d = std::abs(kept[j] - std::conj(z));
        if (d < best) {
          best = d;
          partner = j;
        }
      }
      const cplx d = offset(z);
      kept[i] = z + d;
      if (partner < kept.size() && best <= pairing_tol * std::max(1.0, std::abs(z))) {
        kept[partner] = std::conj(kept[i]);
        done[partner] = true;
      }
    }
    return kept;
  };

  RootData out;
  out.poles = perturb(rd.poles);
  out.zeros = perturb(rd.zeros);
  if (std::isfinite(radius)) out.disk_radius = radius;
  return out;
}

TheoryBounds theoretical_constants(const RootData& rd, const RootData& rd_t, double radius) {
  const DataPolys x = data_polys(rd);
  const DataPolys y = data_polys(rd_t);

  TheoryBounds t;
  t.eps_w = realized(rd.poles, rd_t.poles, radius);
  t.eps_s = realized(rd.zeros, rd_t.zeros, radius);
  t.gamma_w = std::min({1.0, safe_lower_bound(x.P), safe_lower_bound(y.P)});
  t.gamma_s = std::min({1.0, safe_lower_bound(x.Q), safe_lower_bound(y.Q)});

  const std::size_t mw = count_inside(rd.poles, radius);
  const std::size_t ms = count_inside(rd.zeros, radius);
  const std::size_t Mw = rd.poles.size();
  const std::size_t Ms = rd.zeros.size();
  const std::size_t Mwt = std::max(rd_t.poles.size(), mw);
  const std::size_t Mst = std::max(rd_t.zeros.size(), ms);

  t.bound_w = product_bound(t.gamma_w, Mw, Mwt, mw, t.eps_w, radius);
  const double q_diff = product_bound(t.gamma_s, Ms, Mst, ms, t.eps_s, radius);
  // b_0 - b̃_0 = (Ã w̃(1) - A w(1) - b̃_0 (Q(1) - Q̃(1))) / Q(1)
  t.bound_b0 = (t.bound_w + std::abs(y.b0) * q_diff) / std::abs(x.Q(1.0));
  const double tail = std::pow(1.0 + 1.0 / t.gamma_s, static_cast<double>(Mst - ms));
  t.bound_s = std::abs(x.b0) * q_diff + tail * t.bound_b0;
  return t;
}

MeasuredDifferences measured_differences(const RootData& rd, const RootData& rd_t) {
  const DataPolys x = data_polys(rd);
  const DataPolys y = data_polys(rd_t);
  MeasuredDifferences m;
  constexpr int kPoints = 256;
  for (int k = 0; k < kPoints; ++k) {
    const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * k / kPoints);
    m.w = std::max(m.w, std::abs(x.P(z) - y.P(z)));
    m.s = std::max(m.s, std::abs(z * (x.b0 * x.Q(z) - y.b0 * y.Q(z))));
  }
  return m;
}

SweepResult run_sweep(const SweepConfig& cfg) {
  const JacobiOperator& base = cfg.base;
  if (base.n_minus() != 0) throw Error(ErrorKind::Validation, "sweep base operator must have n_minus = 0");
  if (cfg.trials_per_cell < 1) throw Error(ErrorKind::Validation, "trials must be >= 1");
  const RootData rd = root_data_from(scattering(base));
  {
    const ReconstructionReport self = reconstruct(rd);
    const double err = std::max(max_b_difference(base, self.op), max_a2_difference(base, self.op));
    if (!(err < 1e-8)) throw Error(ErrorKind::Validation, "sweep base operator does not reconstruct cleanly");
  }

  struct Task {
    double eps, radius;
    int trial;
  };
  std::vector<Task> tasks;
  for (double eps : cfg.eps_grid) {
    for (double R : cfg.radius_grid) {
      for (int t = 0; t < cfg.trials_per_cell; ++t) tasks.push_back({eps, R, t});
    }
  }

  ReconstructOptions ro;
  ro.lenient = true;
  ro.n_plus = base.n_plus();
  ro.warm_start = base;

  std::vector<SweepRecord> records(tasks.size());
  auto run_one = [&](std::size_t i) {
    const Task& task = tasks[i];
    SweepRecord& rec = records[i];
    rec.eps = task.eps;
    rec.radius = task.radius;
    rec.trial = task.trial;
    try {
      const std::uint64_t seed = mix_seed(cfg.seed ^ mix_seed(static_cast<std::uint64_t>(i)));
      const RootData rdt = perturb_roots(rd, task.eps, task.radius, seed, cfg.perturbation);
      const TheoryBounds tb = theoretical_constants(rd, rdt, task.radius);
      rec.realized_eps = std::max(tb.eps_w, tb.eps_s);
      rec.bound_w = tb.bound_w;
      rec.bound_s = tb.bound_s;
      const MeasuredDifferences md = measured_differences(rd, rdt);
      rec.measured_w = md.w;
      rec.measured_s = md.s;
      const ReconstructionReport rep = reconstruct(rdt, ro);
      rec.max_b_err = max_b_difference(base, rep.op);
      rec.max_a2_err = max_a2_difference(base, rep.op);
      if (cfg.delta) {
        rec.in_class = class_membership(rep.op, {base.n_plus(), cfg.Q, cfg.delta}, s_at_one(rep.op)).in_Bdelta;
      }
    } catch (const Error& e) {
      rec.status = std::string(to_string(e.kind()));
    }
  };

  unsigned nthreads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1)));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < nthreads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < tasks.size(); i = next++) run_one(i);
    });
  }
  for (auto& th : pool) th.join();

  SweepResult out;
  out.records = std::move(records);
  SweepSummary& s = out.summary;
  if (!cfg.radius_grid.empty()) s.slope_radius = *std::max_element(cfg.radius_grid.begin(), cfg.radius_grid.end());

  std::vector<double> xs, ys;
  for (double eps : cfg.eps_grid) {
    if (!(eps > 0.0)) continue;
    double worst = 0.0;
    for (const SweepRecord& r : out.records) {
      if (r.eps == eps && r.radius == s.slope_radius && r.status == "ok") worst = std::max(worst, r.max_b_err);
    }
    if (worst > 0.0) {
      xs.push_back(std::log(eps));
      ys.push_back(std::log(worst));
    }
  }
  if (xs.size() >= 2) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    s.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  for (const SweepRecord& r : out.records) {
    if (r.status != "ok") {
      ++s.failures;
      continue;
    }
    s.C_hat = std::max(s.C_hat, std::max(r.max_b_err, r.max_a2_err) / (r.eps + 1.0 / r.radius));
  }
  return out;
}

std::string sweep_csv(const std::vector<SweepRecord>& records) {
  std::string out = "eps,radius,trial,realized_eps,max_b_err,max_a2_err,bound_w,bound_s,status\n";
  char buf[512];
  for (const SweepRecord& r : records) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%s\n", r.eps, r.radius, r.trial,
                  r.realized_eps, r.max_b_err, r.max_a2_err, r.bound_w, r.bound_s, r.status.c_str());
    out += buf;
  }
  return out;
}

}  // namespace jacobi

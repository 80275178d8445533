#include <doctest.h>

#include <cmath>
#include <limits>

#include "jacobi/error.hpp"
#include "jacobi/inverse.hpp"
#include "jacobi/scattering.hpp"
#include "jacobi/stability.hpp"

using namespace jacobi;

namespace {

RootData delta0_roots() { return root_data_from(scattering(JacobiOperator(0, 0, {}, {1.0}))); }

}  // namespace

TEST_CASE("perturb with eps = 0 and infinite radius is the identity") {
  const RootData rd = delta0_roots();
  const RootData p = perturb_roots(rd, 0.0, std::numeric_limits<double>::infinity(), 1);
  CHECK(p.poles == rd.poles);
  CHECK(p.zeros == rd.zeros);
}

TEST_CASE("perturb deletes roots outside the disk") {
  const RootData p = perturb_roots(delta0_roots(), 1e-3, 1.5, 7);
  REQUIRE(p.poles.size() == 1);
  CHECK(std::abs(p.poles[0] - 0.618034) < 1.1e-3);
  CHECK(p.poles[0].imag() == 0.0);
  REQUIRE(p.disk_radius.has_value());
  CHECK(*p.disk_radius == 1.5);
}

TEST_CASE("perturb keeps conjugate pairs") {
  const RootData rd{{cplx(0.3, 0.4), cplx(0.3, -0.4), 2.0}, {cplx(-0.5, 0.1), cplx(-0.5, -0.1)}, std::nullopt};
  for (auto mode : {Perturbation::radial, Perturbation::uniform_disk}) {
    const RootData p = perturb_roots(rd, 1e-2, 10.0, 3, mode);
    REQUIRE(p.poles.size() == 3);
    ComplexRootSet poles{p.poles};
    ComplexRootSet zeros{p.zeros};
    CHECK(poles.conjugation_closed(1e-15));
    CHECK(zeros.conjugation_closed(1e-15));
  }
}

TEST_CASE("perturb refuses eps above half the gap") {
  const RootData rd{{0.5, 0.51}, {}, std::nullopt};
  CHECK_THROWS_AS(perturb_roots(rd, 0.01, 10.0, 1), Error);
}

TEST_CASE("bounds vanish for identical untruncated data") {
  const RootData rd = delta0_roots();
  const TheoryBounds tb = theoretical_constants(rd, rd, 1e6);
  CHECK(tb.bound_w == 0.0);
  CHECK(tb.bound_s == 0.0);
  const MeasuredDifferences md = measured_differences(rd, rd);
  CHECK(md.w == 0.0);
  CHECK(md.s == 0.0);
}

TEST_CASE("bounds grow with eps") {
  const RootData rd = root_data_from(scattering(JacobiOperator(0, 2, {1.1, 0.9}, {1.0, 0.2, -0.3})));
  double prev = 0.0;
  for (double eps : {1e-5, 1e-4, 1e-3}) {
    const RootData p = perturb_roots(rd, eps, 1e6, 2);
    const TheoryBounds tb = theoretical_constants(rd, p, 1e6);
    const MeasuredDifferences md = measured_differences(rd, p);
    CHECK(md.w <= tb.bound_w);
    CHECK(md.s <= tb.bound_s);
    CHECK(tb.bound_w > prev);
    prev = tb.bound_w;
  }
}

TEST_CASE("sweep") {
  SweepConfig cfg;
  cfg.base = JacobiOperator(0, 3, {1.02, 0.97, 1.01}, {1.0, 0.05, -0.03, 0.02});
  cfg.eps_grid = {0.0, 1e-5, 1e-4};
  cfg.radius_grid = {1e6};
  cfg.trials_per_cell = 2;
  cfg.seed = 9;
  cfg.threads = 2;
  const SweepResult r = run_sweep(cfg);
  REQUIRE(r.records.size() == 6);
  for (const SweepRecord& rec : r.records) {
    CHECK(rec.status == "ok");
    CHECK(rec.realized_eps <= rec.eps);
    if (rec.eps == 0.0) CHECK(rec.max_b_err <= 1e-8);
  }
  // threads only change the schedule
  cfg.threads = 1;
  const SweepResult again = run_sweep(cfg);
  for (std::size_t i = 0; i < r.records.size(); ++i) CHECK(again.records[i].max_b_err == r.records[i].max_b_err);

  const std::string csv = sweep_csv(r.records);
  CHECK(csv.rfind("eps,radius,trial,realized_eps,max_b_err,max_a2_err,bound_w,bound_s,status\n", 0) == 0);
}

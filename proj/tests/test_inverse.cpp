#include <doctest.h>

#include <cmath>

#include "jacobi/error.hpp"
#include "jacobi/inverse.hpp"
#include "jacobi/random_ops.hpp"
#include "jacobi/scattering.hpp"

using namespace jacobi;

namespace {

const double kGolden = (std::sqrt(5.0) - 1) / 2;

RootData delta0_roots() { return {{kGolden, -1 - kGolden}, {}, std::nullopt}; }

}  // namespace

TEST_CASE("assemble") {
  const PQ pq = assemble_polynomials(delta0_roots());
  REQUIRE(pq.P.degree() == 2);
  CHECK(pq.P[0] == doctest::Approx(1.0));
  CHECK(pq.P[1] == doctest::Approx(-1.0));
  CHECK(pq.P[2] == doctest::Approx(-1.0));
  CHECK(pq.Q.coeffs() == std::vector<double>{1});

  const PQ empty = assemble_polynomials({});
  CHECK(empty.P.coeffs() == std::vector<double>{1});
  CHECK(empty.Q.coeffs() == std::vector<double>{1});

  CHECK_THROWS_AS(assemble_polynomials({{cplx(0.5, 0.5)}, {}, std::nullopt}), Error);
}

TEST_CASE("calibrate delta_0") {
  const RootData rd = delta0_roots();
  const PQ pq = assemble_polynomials(rd);
  const Calibration c = calibrate(pq.P, pq.Q, rd);
  CHECK(c.b0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.A == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.branch == SignBranch::via_s_at_1);
  CHECK(c.a2_cross_check < 1e-12);
}

TEST_CASE("calibrate reproduces b0 and A") {
  Rng rng(21);
  for (int i = 0; i < 20; ++i) {
    const JacobiOperator op = random_bdelta(4, 2.0, 0.2, rng);
    const ScatteringData sd = scattering(op);
    const RootData rd = root_data_from(sd);
    const PQ pq = assemble_polynomials(rd);
    const Calibration c = calibrate(pq.P, pq.Q, rd);
    CHECK(std::abs(c.b0 - op.b(0)) < 1e-8);
    CHECK(std::abs(c.A - op.a_product()) < 1e-8 * op.a_product());
  }
}

TEST_CASE("boundary Jost polynomials") {
  const BoundaryJost d0 = recover_boundary_jost({1, -1, -1}, {1}, 1.0);
  CHECK(d0.g_0.coeffs() == std::vector<double>{1});
  CHECK(d0.g_minus1.coeffs() == std::vector<double>{1, -1});

  const BoundaryJost fr = recover_boundary_jost({1, 0, -1}, {1, 2}, 0.0);
  CHECK(fr.g_0.coeffs() == std::vector<double>{1});
  CHECK(fr.g_minus1.coeffs() == std::vector<double>{1});

  CHECK_THROWS_AS(recover_boundary_jost({1, -1, -1}, {1}, 0.5), Error);
}

TEST_CASE("layer stripping by hand") {
  const StripResult d0 = layer_strip({1, -1}, {1});
  CHECK(d0.b == std::vector<double>{1});
  REQUIRE(d0.a2.empty());

  const StripResult d1 = layer_strip({1, -1, 0, -1}, {1, -1});
  REQUIRE(d1.b.size() == 2);
  CHECK(d1.b[0] == doctest::Approx(0.0));
  CHECK(d1.b[1] == doctest::Approx(1.0));
  REQUIRE(d1.a2.size() == 1);
  CHECK(d1.a2[0] == doctest::Approx(1.0));

  const StripResult fr = layer_strip({1}, {1});
  CHECK(fr.b == std::vector<double>{0});
}

TEST_CASE("layer stripping recovers the forward Jost family") {
  Rng rng(8);
  const JacobiOperator op = random_bdelta(4, 2.0, 0.2, rng);
  const JostFamily jf = jost(op, Side::plus);
  const StripResult sr = layer_strip(jf.g(-1), jf.g(0));
  REQUIRE(sr.b.size() == 5);
  for (int n = 0; n <= 4; ++n) CHECK(std::abs(sr.b[n] - op.b(n)) < 1e-9);
  for (int n = 0; n < 4; ++n) CHECK(std::abs(sr.a2[n] - op.a(n) * op.a(n)) < 1e-9);
}

TEST_CASE("reconstruct delta_0 and the free operator") {
  const ReconstructionReport d0 = reconstruct(delta0_roots());
  CHECK(max_b_difference(d0.op, JacobiOperator(0, 0, {}, {1.0})) < 1e-10);
  CHECK(max_a2_difference(d0.op, JacobiOperator(0, 0, {}, {1.0})) < 1e-10);

  const ReconstructionReport fr = reconstruct(root_data_from(scattering(JacobiOperator::free())));
  CHECK(fr.sign_branch == SignBranch::free);
  CHECK(fr.op == JacobiOperator::free());
}

TEST_CASE("roundtrip on random B_delta operators") {
  Rng rng(101);
  for (int i = 0; i < 20; ++i) {
    const JacobiOperator op = random_bdelta(6, 3.0, 0.1, rng);
    const ReconstructionReport rep = reconstruct(root_data_from(scattering(op)));
    CHECK(max_b_difference(op, rep.op) < 1e-7);
    CHECK(max_a2_difference(op, rep.op) < 1e-7);
  }
}

TEST_CASE("common roots are rejected") {
  const RootData rd{{kGolden, -1 - kGolden}, {kGolden}, std::nullopt};
  try {
    reconstruct(rd);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CommonRoot);
  }
}

// b_1, b_2 tuned so that s(1) = s(-1) = 0: half-bound states at both
// thresholds, while b_0 = 2 keeps an eigenvalue.
static JacobiOperator both_thresholds() {
  double b1 = 0.3;
  double b2 = -0.2;
  auto s_at = [](double b1, double b2, double z) {
    const JostFamily jf = jost(JacobiOperator(0, 2, {1.1, 0.9}, {2.0, b1, b2}), Side::plus);
    return jf.g(0)(z) - jf.g(-1)(z);
  };
  for (int it = 0; it < 50; ++it) {
    const double f1 = s_at(b1, b2, 1.0);
    const double f2 = s_at(b1, b2, -1.0);
    const double h = 1e-7;
    const double j11 = (s_at(b1 + h, b2, 1.0) - f1) / h;
    const double j12 = (s_at(b1, b2 + h, 1.0) - f1) / h;
    const double j21 = (s_at(b1 + h, b2, -1.0) - f2) / h;
    const double j22 = (s_at(b1, b2 + h, -1.0) - f2) / h;
    const double det = j11 * j22 - j12 * j21;
    b1 -= (j22 * f1 - j12 * f2) / det;
    b2 -= (-j21 * f1 + j11 * f2) / det;
  }
  return JacobiOperator(0, 2, {1.1, 0.9}, {2.0, b1, b2});
}

TEST_CASE("residue branch") {
  const JacobiOperator op = both_thresholds();
  const ScatteringData sd = scattering(op);
  REQUIRE(sd.half_bound.plus_one);
  REQUIRE(sd.half_bound.minus_one);
  REQUIRE_FALSE(sd.eigenvalues.empty());
  const ReconstructionReport rep = reconstruct(root_data_from(sd));
  CHECK(rep.sign_branch == SignBranch::via_residue_positivity);
  CHECK(max_b_difference(op, rep.op) < 1e-7);
  CHECK(max_a2_difference(op, rep.op) < 1e-7);
}

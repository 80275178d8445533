#include <doctest.h>

#include "jacobi/error.hpp"
#include "jacobi/operator.hpp"
#include "jacobi/scattering.hpp"

using namespace jacobi;

TEST_CASE("validate accepts the free window and delta_0") {
  CHECK(validate(JacobiOperator(0, 1, {1.0}, {0.0, 0.0})).empty());
  CHECK(validate(JacobiOperator(0, 0, {}, {1.0})).empty());
}

TEST_CASE("validate reports nonpositive a") {
  const auto v = validate(JacobiOperator(0, 1, {-1.0}, {0.0, 0.0}));
  REQUIRE(v.size() == 1);
  CHECK(v[0].index == 0);
}

TEST_CASE("constructor rejects mismatched lengths") {
  CHECK_THROWS_AS(JacobiOperator(0, 2, {1.0}, {0.0, 0.0, 0.0}), Error);
}

TEST_CASE("coefficients outside the window are free") {
  const JacobiOperator op(0, 1, {2.0}, {0.5, -0.5});
  CHECK(op.a(-3) == 1.0);
  CHECK(op.b(7) == 0.0);
  CHECK(op.a_product() == 2.0);
  CHECK(op.a_plus(0) == 2.0);
  CHECK(op.a_plus(1) == 1.0);
  CHECK(op.a_minus(1) == 2.0);
}

TEST_CASE("class membership") {
  const JacobiOperator d0(0, 0, {}, {1.0});
  auto r = class_membership(d0, {0, 1.0, 0.5}, s_at_one(d0));
  CHECK(r.in_B0);
  REQUIRE(r.in_Bdelta.has_value());
  CHECK(*r.in_Bdelta);

  const JacobiOperator small(0, 0, {}, {0.4});
  r = class_membership(small, {0, 1.0, 0.5}, s_at_one(small));
  CHECK(r.in_B0);
  CHECK_FALSE(*r.in_Bdelta);

  const JacobiOperator left(-1, 0, {1.0}, {0.0, 1.0});
  CHECK_FALSE(class_membership(left, {1, 1.0, std::nullopt}, s_at_one(left)).in_B0);

  CHECK_THROWS_AS(class_membership(d0, {0, 0.5, std::nullopt}, 1.0), Error);
}

TEST_CASE("translate") {
  const JacobiOperator d0(0, 0, {}, {1.0});
  CHECK(translate(d0, 0) == d0);
  const JacobiOperator d1 = translate(d0, 1);
  CHECK(d1.n_minus() == 1);
  CHECK(d1.n_plus() == 1);
  CHECK(d1.b(1) == 1.0);
  CHECK(d1.b(0) == 0.0);
}

TEST_CASE("difference norms span both windows") {
  const JacobiOperator x(0, 0, {}, {1.0});
  const JacobiOperator y(2, 3, {2.0}, {0.0, 0.5});
  CHECK(max_b_difference(x, y) == doctest::Approx(1.0));
  CHECK(max_a2_difference(x, y) == doctest::Approx(3.0));
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ErrorKind::Io) == 1);
  CHECK(exit_code_for(ErrorKind::Schema) == 2);
  CHECK(exit_code_for(ErrorKind::Validation) == 2);
  CHECK(exit_code_for(ErrorKind::NoConvergence) == 3);
  CHECK(exit_code_for(ErrorKind::CommonRoot) == 3);
}

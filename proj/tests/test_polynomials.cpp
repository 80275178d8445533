#include <doctest.h>

#include <cmath>

#include "jacobi/error.hpp"
#include "jacobi/matching.hpp"
#include "jacobi/polynomial.hpp"
#include "jacobi/roots.hpp"

using namespace jacobi;

namespace {

bool same(const RealPolynomial& p, std::vector<double> c, double tol = 1e-14) {
  if (p.degree() != static_cast<int>(c.size()) - 1) return false;
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (std::abs(p[static_cast<int>(j)] - c[j]) > tol) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("arithmetic") {
  CHECK(same(RealPolynomial{1, -1} * RealPolynomial{1, 1}, {1, 0, -1}));
  CHECK(same(RealPolynomial{1, -1, -1} + RealPolynomial{0, 0, 1}, {1, -1}));
  CHECK(same(RealPolynomial{1, -1} * RealPolynomial{1, 0, 1} - RealPolynomial{0, 0, 1}, {1, -1, 0, -1}));
  CHECK(same(poly_arith({1, 2}, {1, 2}, ArithKind::sub), {}));
  CHECK(RealPolynomial{}.degree() == -1);
}

TEST_CASE("exact division") {
  CHECK(same(divide_exact({1, 0, -1}, {1, -1}, 1e-12), {1, 1}));
  // w + s for delta_0 is divisible by 1 - z^2
  CHECK(same(divide_exact(RealPolynomial{1, -1, -1} + RealPolynomial{0, 1}, {1, 0, -1}, 1e-12), {1}));
  CHECK_THROWS_AS(divide_exact({1, 1}, {1, -1}, 1e-12), Error);
  const Division d = divide({1, 1}, {1, -1});
  CHECK(same(d.quotient, {-1}));
  CHECK(same(d.remainder, {2}));
}

TEST_CASE("roots of 1 - z - z^2") {
  const ComplexRootSet r = find_roots({1, -1, -1});
  REQUIRE(r.size() == 2);
  CHECK(r[0].real() == doctest::Approx((std::sqrt(5.0) - 1) / 2).epsilon(1e-14));
  CHECK(r[1].real() == doctest::Approx(-(std::sqrt(5.0) + 1) / 2).epsilon(1e-14));
  CHECK(r[0].imag() == 0.0);
}

TEST_CASE("roots of 1 - z^2 and complex pairs") {
  const ComplexRootSet r = find_roots({1, 0, -1});
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0] - cplx(1, 0)) < 1e-14);
  CHECK(std::abs(r[1] - cplx(-1, 0)) < 1e-14);

  const ComplexRootSet c = find_roots({1, 0, 1});
  REQUIRE(c.size() == 2);
  CHECK(c.conjugation_closed(0.0));
  CHECK(c[0].imag() < 0.0);  // ties in modulus go by argument
}

TEST_CASE("root lower bound") {
  CHECK(root_lower_bound({1, -1, -1}) == doctest::Approx(0.5));
  CHECK(root_lower_bound({1, -1}) == doctest::Approx(1.0));
  CHECK(root_lower_bound({2, -1, -1}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(root_lower_bound({0, 1}), Error);
}

TEST_CASE("product difference bound") {
  const std::vector<cplx> z{0.1};
  CHECK(product_difference_bound(1.0, z, z) == 0.0);
  const std::vector<cplx> a{0.1, 0.2};
  const std::vector<cplx> b{0.11, 0.21};
  CHECK(product_difference_bound(1.0, a, b) == doctest::Approx(0.04));
  const std::vector<cplx> far{2.0};
  CHECK_THROWS_AS(product_difference_bound(1.0, far, z), Error);
}

TEST_CASE("bottleneck matching") {
  ComplexRootSet a{{0.618, -1.618}};
  ComplexRootSet b{{0.618, -1.627}};
  a.sort();
  b.sort();
  const MatchResult m = match_root_sets(a, b, 2.0);
  CHECK(m.counts_agree());
  CHECK(m.max_distance == doctest::Approx(0.009));
  CHECK(match_root_sets(a, a, 2.0).max_distance == 0.0);

  ComplexRootSet one{{0.5}};
  ComplexRootSet two{{0.5, 0.6}};
  const MatchResult u = match_root_sets(one, two, 1.0);
  CHECK(u.unmatched_a == 0);
  CHECK(u.unmatched_b == 1);
  CHECK(u.pairs.empty());
}

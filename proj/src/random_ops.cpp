#include "jacobi/random_ops.hpp"

#include <cmath>

#include "jacobi/error.hpp"
#include "jacobi/scattering.hpp"

namespace jacobi {

JacobiOperator random_b0(int N, double Q, Rng& rng) {
  if (N < 0 || !(Q >= 1.0)) throw Error(ErrorKind::Validation, "random_b0 needs N >= 0 and Q >= 1");
  std::uniform_real_distribution<double> log_a(-std::log(Q), std::log(Q));
  std::uniform_real_distribution<double> unif_b(-Q, Q);
  std::vector<double> a(static_cast<std::size_t>(N));
  std::vector<double> b(static_cast<std::size_t>(N + 1));
  for (double& v : a) v = std::exp(log_a(rng));
  for (double& v : b) v = unif_b(rng);
  return JacobiOperator(0, N, std::move(a), std::move(b));
}

JacobiOperator random_bdelta(int N, double Q, double delta, Rng& rng, int max_tries) {
  for (int t = 0; t < max_tries; ++t) {
    JacobiOperator op = random_b0(N, Q, rng);
    if (std::abs(op.b(0)) >= delta && std::abs(s_at_one(op)) >= delta) return op;
  }
  throw Error(ErrorKind::Validation, "no B_delta operator found within the try budget");
}

std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace jacobi

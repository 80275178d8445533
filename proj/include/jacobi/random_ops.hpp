#pragma once

#include <cstdint>
#include <random>

#include "jacobi/operator.hpp"

namespace jacobi {

using Rng = std::mt19937_64;

/// Operator on [0, N] with a_n log-uniform in [1/Q, Q] and b_n uniform in [-Q, Q].
JacobiOperator random_b0(int N, double Q, Rng& rng);

/// random_b0 draws rejected until |b_0| >= delta and |s^-(1)| >= delta.
/// Throws Error(Validation) after max_tries rejections.
JacobiOperator random_bdelta(int N, double Q, double delta, Rng& rng, int max_tries = 100000);

/// SplitMix64 step; used to derive independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

}  // namespace jacobi

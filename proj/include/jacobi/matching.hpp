#pragma once

#include <cstddef>
#include <vector>

#include "jacobi/roots.hpp"

namespace jacobi {

struct MatchPair {
  std::size_t a;  ///< index into A.inside(R)
  std::size_t b;  ///< index into B.inside(R)
  double distance;
};

struct MatchResult {
  std::vector<MatchPair> pairs;
  /// Realized epsilon; +inf when the in-disk counts differ, 0 for two empty sets.
  double max_distance = 0.0;
  /// Excess roots on each side when the in-disk counts differ.
  std::size_t unmatched_a = 0;
  std::size_t unmatched_b = 0;

  bool counts_agree() const noexcept { return unmatched_a == 0 && unmatched_b == 0; }
};

/// Bottleneck matching of the roots of A and B lying in |z| < R: among all
/// bijections, one minimizing the largest pair distance.
MatchResult match_root_sets(const ComplexRootSet& A, const ComplexRootSet& B, double R);

}  // namespace jacobi

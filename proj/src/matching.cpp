#include "jacobi/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jacobi/error.hpp"

namespace jacobi {

namespace {

// Kuhn's augmenting-path bipartite matching restricted to edges with
// distance <= threshold.
class ThresholdMatcher {
 public:
  ThresholdMatcher(const std::vector<std::vector<double>>& dist, double threshold)
      : dist_(dist), threshold_(threshold), owner_(dist.size(), npos) {}

  bool perfect() {
    for (std::size_t i = 0; i < dist_.size(); ++i) {
      seen_.assign(dist_.size(), false);
      if (!augment(i)) return false;
    }
    return true;
  }

  /// owner()[j] = row matched to column j.
  const std::vector<std::size_t>& owner() const { return owner_; }

 private:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  bool augment(std::size_t i) {
    for (std::size_t j = 0; j < dist_.size(); ++j) {
      if (seen_[j] || dist_[i][j] > threshold_) continue;
      seen_[j] = true;
      if (owner_[j] == npos || augment(owner_[j])) {
        owner_[j] = i;
        return true;
      }
    }
    return false;
  }

  const std::vector<std::vector<double>>& dist_;
  double threshold_;
  std::vector<std::size_t> owner_;
  std::vector<bool> seen_;
};

}  // namespace

MatchResult match_root_sets(const ComplexRootSet& A, const ComplexRootSet& B, double R) {
  if (!(R >= 1.0)) throw Error(ErrorKind::Validation, "match radius must be >= 1");

  const ComplexRootSet a = A.inside(R);
  const ComplexRootSet b = B.inside(R);
  MatchResult out;
  if (a.size() != b.size()) {
    out.max_distance = std::numeric_limits<double>::infinity();
    out.unmatched_a = a.size() > b.size() ? a.size() - b.size() : 0;
    out.unmatched_b = b.size() > a.size() ? b.size() - a.size() : 0;
    return out;
  }
  const std::size_t n = a.size();
  if (n == 0) return out;

  std::vector<std::vector<double>> dist(n, std::vector<double>(n));
  std::vector<double> candidates;
  candidates.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      dist[i][j] = std::abs(a[i] - b[j]);
      candidates.push_back(dist[i][j]);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // smallest threshold admitting a perfect matching
  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (ThresholdMatcher(dist, candidates[mid]).perfect()) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  ThresholdMatcher final_match(dist, candidates[lo]);
  final_match.perfect();
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t i = final_match.owner()[j];
    out.pairs.push_back({i, j, dist[i][j]});
  }
  std::sort(out.pairs.begin(), out.pairs.end(),
            [](const MatchPair& x, const MatchPair& y) { return x.a < y.a; });
  out.max_distance = candidates[lo];
  return out;
}

}  // namespace jacobi

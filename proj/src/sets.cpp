#include "ivopt/sets.hpp"

#include <algorithm>
#include <cmath>

namespace ivopt {

Interval inf_set(std::span<const Interval> s) {
  if (s.empty()) throw EmptySet("infimum of an empty set");
  double lo = s[0].lo();
  double hi = s[0].hi();
  for (const auto& x : s.subspan(1)) {
    lo = std::min(lo, x.lo());
    hi = std::min(hi, x.hi());
  }
  return Interval(lo, hi);
}

Interval sup_set(std::span<const Interval> s) {
  if (s.empty()) throw EmptySet("supremum of an empty set");
  double lo = s[0].lo();
  double hi = s[0].hi();
  for (const auto& x : s.subspan(1)) {
    lo = std::max(lo, x.lo());
    hi = std::max(hi, x.hi());
  }
  return Interval(lo, hi);
}

FiniteIntervalSet::FiniteIntervalSet(std::vector<IntervalVector> elements)
    : elements_(std::move(elements)) {
  if (elements_.empty()) {
    throw EmptySet("finite interval set must be nonempty");
  }
  const std::size_t n = elements_.front().dim();
  for (const auto& e : elements_) {
    if (e.dim() != n) {
      throw DimensionMismatch("set elements have mixed dimensions");
    }
  }
}

IntervalVector convex_combination(std::span<const IntervalVector> points,
                                  std::span<const double> weights) {
  if (points.empty()) throw EmptySet("convex combination of nothing");
  if (points.size() != weights.size()) {
    throw BadWeights("weight count does not match point count");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw BadWeights("negative weight " + format_real(w));
    sum += w;
  }
  if (std::fabs(sum - 1.0) > 1e-12) {
    throw BadWeights("weights sum to " + format_real(sum) + ", expected 1");
  }
  IntervalVector acc = weights[0] * points[0];
  for (std::size_t j = 1; j < points.size(); ++j) {
    acc = acc + weights[j] * points[j];
  }
  return acc;
}

std::pair<IntervalVector, IntervalVector> hull_bounds(
    const FiniteIntervalSet& s) {
  const std::size_t n = s.dim();
  std::vector<Interval> lower;
  std::vector<Interval> upper;
  lower.reserve(n);
  upper.reserve(n);
  std::vector<Interval> column;
  column.reserve(s.size());
  for (std::size_t j = 0; j < n; ++j) {
    column.clear();
    for (const auto& e : s.elements()) column.push_back(e[j]);
    lower.push_back(inf_set(column));
    upper.push_back(sup_set(column));
  }
  return {IntervalVector(std::move(lower)), IntervalVector(std::move(upper))};
}

SeqVerdict seq_limit_check(const IntervalSequence& seq,
                           const IntervalVector& limit, double eps,
                           int horizon) {
  if (horizon < 1) throw EmptySet("horizon must be at least 1");
  int last_violation = 0;
  for (int k = 1; k <= horizon; ++k) {
    const IntervalVector term = seq.generator(k);
    if (term.dim() != limit.dim()) {
      throw DimensionMismatch("sequence term dimension differs from limit");
    }
    if (!(norm(gh_sub(term, limit)) < eps)) last_violation = k;
  }
  if (last_violation >= horizon) return SeqVerdict::not_within_horizon();
  return SeqVerdict::within(last_violation + 1);
}

}  // namespace ivopt

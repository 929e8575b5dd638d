#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "ivopt/interval.hpp"

namespace ivopt {

/// Componentwise infimum of a finite set: [min of lowers, min of uppers].
/// The result need not be a member of the set.
Interval inf_set(std::span<const Interval> s);
Interval sup_set(std::span<const Interval> s);

/// A nonempty finite set of interval vectors of one common dimension.
class FiniteIntervalSet {
 public:
  explicit FiniteIntervalSet(std::vector<IntervalVector> elements);

  std::size_t dim() const { return elements_.front().dim(); }
  std::size_t size() const { return elements_.size(); }
  const std::vector<IntervalVector>& elements() const { return elements_; }

 private:
  std::vector<IntervalVector> elements_;
};

/// Weighted (+)-fold of scaled vectors. Weights must be nonnegative and sum
/// to 1 within 1e-12; they are not renormalized.
IntervalVector convex_combination(std::span<const IntervalVector> points,
                                  std::span<const double> weights);

/// Bounds (X, Y) with X dominated-by-every / Y dominating-every element of
/// the convex hull of s, built componentwise as [min of lowers, min of
/// uppers] / [max of lowers, max of uppers].
std::pair<IntervalVector, IntervalVector> hull_bounds(
    const FiniteIntervalSet& s);

/// A sequence k in {1, 2, ...} -> I(R)^n given by a pure generator.
struct IntervalSequence {
  std::function<IntervalVector(int)> generator;
  std::size_t dim = 1;
};

struct SeqVerdict {
  bool converged = false;
  int index = 0;  // smallest m with ||seq(k) gh- limit|| < eps for m <= k <= K

  static SeqVerdict within(int m) { return {true, m}; }
  static SeqVerdict not_within_horizon() { return {false, 0}; }
};

/// Finite-horizon convergence check: Converged(m) when every tail term from
/// some m <= horizon stays within eps of the limit in the I(R)^n norm. Not a
/// proof of convergence.
SeqVerdict seq_limit_check(const IntervalSequence& seq,
                           const IntervalVector& limit, double eps,
                           int horizon);

}  // namespace ivopt

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ivopt/interval.hpp"

namespace ivopt {

using RealFn = std::function<double(std::span<const double>)>;

/// A closed real box, one coordinate range per dimension. Membership is
/// closed on every face.
class Box {
 public:
  explicit Box(std::vector<Interval> ranges);
  static Box uniform(std::size_t n, double lo, double hi);

  std::size_t dim() const { return ranges_.size(); }
  const Interval& range(std::size_t j) const { return ranges_[j]; }
  const std::vector<Interval>& ranges() const { return ranges_; }
  bool contains(std::span<const double> y) const;

  bool operator==(const Box&) const = default;

 private:
  std::vector<Interval> ranges_;
};

/// An interval-valued function T(y) = [lower(y), upper(y)] over a box
/// domain. The endpoint callables must be pure; lower <= upper is checked on
/// every evaluation.
class Ivf {
 public:
  Ivf(RealFn lower, RealFn upper, Box domain);

  std::size_t dim() const { return domain_.dim(); }
  const Box& domain() const { return domain_; }

  Interval eval(std::span<const double> y) const;
  double lower(std::span<const double> y) const { return lower_(y); }
  double upper(std::span<const double> y) const { return upper_(y); }

 private:
  RealFn lower_;
  RealFn upper_;
  Box domain_;
};

/// Pointwise Moore sum; the operands must share dimension and domain box.
Ivf add_ivf(const Ivf& a, const Ivf& b);

/// Pointwise nonnegative scaling (endpointwise since delta >= 0).
Ivf scale_ivf(double delta, const Ivf& t);

/// Pointwise maximum of finitely many IVFs whose values form a chain at
/// every evaluated point; evaluation throws NotComparableAt otherwise.
Ivf max_ivf(std::vector<Ivf> members);

/// An IVF extended with +inf outside an effective domain predicate.
class ExtendedIvf {
 public:
  ExtendedIvf(Ivf base, std::function<bool(std::span<const double>)> effective);

  const Ivf& base() const { return base_; }
  ExtendedInterval eval(std::span<const double> y) const;
  bool in_effective_domain(std::span<const double> y) const {
    return effective_(y);
  }

 private:
  Ivf base_;
  std::function<bool(std::span<const double>)> effective_;
};

/// Indicator of a closed box: [0,0] inside, +inf outside.
ExtendedIvf indicator(const Box& box);

struct ConvexitySample {
  std::vector<double> y1;
  std::vector<double> y2;
  double lambda = 0.5;
};

struct ConvexityVerdict {
  bool holds = true;
  std::optional<ConvexitySample> violated_at;
};

/// Sampling oracle for midpoint convexity of both endpoint functions.
/// "holds" means no sampled triple violated the inequality; it is not a
/// proof.
ConvexityVerdict is_convex_sampled(const Ivf& t,
                                   std::span<const ConvexitySample> samples,
                                   double tol = 1e-9);

std::vector<ConvexitySample> make_convexity_samples(const Box& box,
                                                    std::size_t count,
                                                    unsigned seed = 7);

struct ContinuityVerdict {
  bool holds = true;
  double final_gap = 0.0;
  std::vector<double> violated_direction;
};

/// Sampling oracle for gH-continuity at an interior (or boundary) point:
/// along each probe direction that stays inside the domain, the gH-distance
/// at the smallest radius must fall below tol. Directions whose probes all
/// leave the domain are skipped, which yields the one-sided behaviour at the
/// boundary.
ContinuityVerdict is_gh_continuous_at(const Ivf& t,
                                      std::span<const double> ybar,
                                      std::span<const double> radii,
                                      double tol = 1e-6);

}  // namespace ivopt

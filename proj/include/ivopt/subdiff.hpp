#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ivopt/calculus.hpp"
#include "ivopt/interval.hpp"
#include "ivopt/ivf.hpp"

namespace ivopt {

/// A representable gH-subdifferential: a single vector, a dominance box
/// {G : L dominated-by G dominated-by U}, or a nonnegatively scaled Minkowski
/// sum of those two shapes (one level of nesting).
class SubdiffSet {
 public:
  enum class Kind { Singleton, Box, ScaledSum };

  static SubdiffSet singleton(IntervalVector value);
  static SubdiffSet box(IntervalVector lower, IntervalVector upper);
  static SubdiffSet scaled_sum(std::vector<std::pair<double, SubdiffSet>> terms);

  Kind kind() const { return kind_; }
  std::size_t dim() const;

  const IntervalVector& value() const;  // Singleton
  const IntervalVector& lower() const;  // Box
  const IntervalVector& upper() const;  // Box
  const std::vector<std::pair<double, SubdiffSet>>& terms() const;  // ScaledSum

  std::string to_json() const;

 private:
  SubdiffSet() = default;

  Kind kind_ = Kind::Singleton;
  std::vector<IntervalVector> vectors_;  // Singleton: {v}; Box: {L, U}
  std::vector<std::pair<double, SubdiffSet>> terms_;
};

struct SubgradientVerdict {
  bool holds = true;
  std::optional<std::vector<double>> violated_at;
};

/// Falsification oracle for the subgradient inequality
/// dot(y - ybar, G) dominated-by T(y) gh- T(ybar) over the probe points.
SubgradientVerdict is_subgradient(const Ivf& t, std::span<const double> ybar,
                                  const IntervalVector& g,
                                  std::span<const std::vector<double>> probes);

/// Deterministic probe set: a uniform grid over the box plus seeded random
/// points.
std::vector<std::vector<double>> make_probes(const Box& box,
                                             std::size_t grid_per_axis,
                                             std::size_t random_count,
                                             unsigned seed = 11);

/// Subdifferential of a gH-differentiable IVF: the singleton gradient.
SubdiffSet subdiff_smooth(const Ivf& t, std::span<const double> ybar,
                          const DiffConfig& cfg = {});

/// Subdifferential of H(y) = C * |y_p| at a point on the plane y_p = 0,
/// for 0 dominated-by C: the box with every component between (-1)*C and C.
/// Throws NotOnKinkPlane when ybar_p != 0. A zero C degenerates to the
/// singleton zero vector.
SubdiffSet subdiff_abs_weighted(const Interval& c, std::size_t n,
                                std::size_t p, std::span<const double> ybar);

/// delta * S for delta >= 0.
SubdiffSet scale_subdiff(double delta, const SubdiffSet& s);

/// Exact zero-membership test. Scaled sums are collapsed to their corner
/// box (the Minkowski sum of a box and points is again a box).
bool contains_zero(const SubdiffSet& s);

/// Distance from the zero vector to the set in the I(R)^n norm; zero exactly
/// when contains_zero holds.
double zero_distance(const SubdiffSet& s);

}  // namespace ivopt

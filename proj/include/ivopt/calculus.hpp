#pragma once

#include <span>
#include <vector>

#include "ivopt/ivf.hpp"

namespace ivopt {

/// Step schedule for numerical limits: h_k = h0 * shrink^k, accepted when
/// two consecutive estimates agree within tol.
struct DiffConfig {
  double h0 = 1e-2;
  double shrink = 0.5;
  int max_steps = 30;
  double tol = 1e-7;
};

/// gH-gradient: component j is [min, max] of the endpoint partials in
/// coordinate j. Partials use central differences in the interior and
/// second-order one-sided stencils on the domain boundary, refined until two
/// consecutive estimates agree within cfg.tol. Throws NoConvergence when the
/// refinement fails within cfg.max_steps.
IntervalVector gh_gradient(const Ivf& t, std::span<const double> ybar,
                           const DiffConfig& cfg = {});

/// One-sided limit of (1/delta)(T(ybar + delta h) gh- T(ybar)) for
/// delta -> 0+. Throws LeavesDomain if no positive step keeps the probe in
/// the domain, NoConvergence if refinement fails.
Interval gh_dir_derivative(const Ivf& t, std::span<const double> ybar,
                           std::span<const double> direction,
                           const DiffConfig& cfg = {});

struct ActiveSet {
  std::vector<std::size_t> indices;
  double tau = 0.0;
};

/// Indices whose value at ybar is within tau of the pointwise maximum.
/// Requires the values at ybar to form a chain.
ActiveSet active_set(std::span<const Ivf> members,
                     std::span<const double> ybar, double tau = 1e-9);

/// Directional derivative of the pointwise maximum: max over the active
/// members of their gH-directional derivative, which must form a chain.
Interval dir_derivative_of_max(std::span<const Ivf> members,
                               std::span<const double> ybar,
                               std::span<const double> direction,
                               const DiffConfig& cfg = {}, double tau = 1e-9);

}  // namespace ivopt

#include "ivopt/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace ivopt {

namespace {

// Derivative of a single endpoint function along one coordinate. Picks a
// central stencil when both neighbours fit in the coordinate range and a
// second-order one-sided stencil on the boundary; both are exact limits for
// quadratics up to rounding.
double coordinate_derivative(const std::function<double(double)>& f,
                             double center, const Interval& range,
                             const DiffConfig& cfg, std::size_t coord) {
  if (!(cfg.h0 > 0.0) || !(cfg.shrink > 0.0) || !(cfg.shrink < 1.0) ||
      !(cfg.tol > 0.0) || cfg.max_steps < 2) {
    throw Error("invalid differentiation config");
  }
  bool have_prev = false;
  double prev = 0.0;
  double h = cfg.h0;
  for (int step = 0; step < cfg.max_steps; ++step, h *= cfg.shrink) {
    double est;
    if (center - h >= range.lo() && center + h <= range.hi()) {
      est = (f(center + h) - f(center - h)) / (2.0 * h);
    } else if (center + 2.0 * h <= range.hi()) {
      est = (-3.0 * f(center) + 4.0 * f(center + h) - f(center + 2.0 * h)) /
            (2.0 * h);
    } else if (center - 2.0 * h >= range.lo()) {
      est = (3.0 * f(center) - 4.0 * f(center - h) + f(center - 2.0 * h)) /
            (2.0 * h);
    } else {
      continue;  // range too thin for this h, keep shrinking
    }
    if (!std::isfinite(est)) {
      throw NoConvergence("endpoint derivative is not finite in coordinate " +
                          std::to_string(coord));
    }
    // agreement scaled by the estimate size, so large derivatives are not
    // drowned by the rounding noise of the quotient
    if (have_prev &&
        std::fabs(est - prev) < cfg.tol * std::max(1.0, std::fabs(est))) {
      return est;
    }
    prev = est;
    have_prev = true;
  }
  throw NoConvergence("endpoint derivative did not settle in coordinate " +
                      std::to_string(coord));
}

}  // namespace

IntervalVector gh_gradient(const Ivf& t, std::span<const double> ybar,
                           const DiffConfig& cfg) {
  if (ybar.size() != t.dim()) {
    throw DimensionMismatch("gradient point dimension mismatch");
  }
  if (!t.domain().contains(ybar)) {
    throw OutOfDomain("gradient point outside the domain box");
  }
  std::vector<Interval> components;
  components.reserve(t.dim());
  std::vector<double> probe(ybar.begin(), ybar.end());
  for (std::size_t j = 0; j < t.dim(); ++j) {
    auto lower_1d = [&](double v) {
      probe[j] = v;
      const double out = t.lower(probe);
      probe[j] = ybar[j];
      return out;
    };
    auto upper_1d = [&](double v) {
      probe[j] = v;
      const double out = t.upper(probe);
      probe[j] = ybar[j];
      return out;
    };
    const double dl =
        coordinate_derivative(lower_1d, ybar[j], t.domain().range(j), cfg, j);
    const double du =
        coordinate_derivative(upper_1d, ybar[j], t.domain().range(j), cfg, j);
    components.emplace_back(std::min(dl, du), std::max(dl, du));
  }
  return IntervalVector(std::move(components));
}

Interval gh_dir_derivative(const Ivf& t, std::span<const double> ybar,
                           std::span<const double> direction,
                           const DiffConfig& cfg) {
  if (ybar.size() != t.dim() || direction.size() != t.dim()) {
    throw DimensionMismatch("directional derivative dimension mismatch");
  }
  const Interval at_center = t.eval(ybar);
  bool zero_direction = true;
  for (double d : direction) zero_direction = zero_direction && d == 0.0;
  if (zero_direction) return Interval::zero();

  bool have_prev = false;
  bool entered_domain = false;
  Interval prev = Interval::zero();
  std::vector<double> probe(t.dim());
  double delta = cfg.h0;
  for (int step = 0; step < cfg.max_steps; ++step, delta *= cfg.shrink) {
    for (std::size_t j = 0; j < t.dim(); ++j) {
      probe[j] = ybar[j] + delta * direction[j];
    }
    if (!t.domain().contains(probe)) continue;
    entered_domain = true;
    const Interval quotient =
        (1.0 / delta) * gh_sub(t.eval(probe), at_center);
    if (have_prev && norm(gh_sub(quotient, prev)) <
                         cfg.tol * std::max(1.0, norm(quotient))) {
      return quotient;
    }
    prev = quotient;
    have_prev = true;
  }
  if (!entered_domain) {
    throw LeavesDomain("every positive step along the direction leaves the "
                       "domain");
  }
  throw NoConvergence("directional quotient did not settle");
}

ActiveSet active_set(std::span<const Ivf> members,
                     std::span<const double> ybar, double tau) {
  if (members.empty()) throw EmptySet("active set of no ivfs");
  std::vector<Interval> values;
  values.reserve(members.size());
  for (const auto& m : members) values.push_back(m.eval(ybar));
  Interval maximum = Interval::zero();
  try {
    maximum = min_max_comparable(values).second;
  } catch (const NotAChain&) {
    throw NotComparableAt("member values are not a chain at the query point");
  }
  ActiveSet out;
  out.tau = tau;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (norm(gh_sub(values[i], maximum)) <= tau) out.indices.push_back(i);
  }
  return out;
}

Interval dir_derivative_of_max(std::span<const Ivf> members,
                               std::span<const double> ybar,
                               std::span<const double> direction,
                               const DiffConfig& cfg, double tau) {
  const ActiveSet active = active_set(members, ybar, tau);
  std::vector<Interval> derivatives;
  derivatives.reserve(active.indices.size());
  for (std::size_t i : active.indices) {
    derivatives.push_back(
        gh_dir_derivative(members[i], ybar, direction, cfg));
  }
  try {
    return min_max_comparable(derivatives).second;
  } catch (const NotAChain&) {
    throw NotComparableAt(
        "active directional derivatives are not a chain");
  }
}

}  // namespace ivopt

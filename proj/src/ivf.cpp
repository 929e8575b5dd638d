#include "ivopt/ivf.hpp"

#include <cmath>
#include <memory>
#include <random>
#include <utility>

namespace ivopt {

Box::Box(std::vector<Interval> ranges) : ranges_(std::move(ranges)) {
  if (ranges_.empty()) throw DimensionMismatch("box must have dimension >= 1");
}

Box Box::uniform(std::size_t n, double lo, double hi) {
  return Box(std::vector<Interval>(n, Interval(lo, hi)));
}

bool Box::contains(std::span<const double> y) const {
  if (y.size() != ranges_.size()) return false;
  for (std::size_t j = 0; j < ranges_.size(); ++j) {
    if (!ranges_[j].contains(y[j])) return false;
  }
  return true;
}

Ivf::Ivf(RealFn lower, RealFn upper, Box domain)
    : lower_(std::move(lower)), upper_(std::move(upper)),
      domain_(std::move(domain)) {
  if (!lower_ || !upper_) throw Error("ivf endpoint callables must be set");
}

namespace {

std::string point_text(std::span<const double> y) {
  std::string s = "(";
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i) s += ", ";
    s += format_real(y[i]);
  }
  return s + ")";
}

}  // namespace

Interval Ivf::eval(std::span<const double> y) const {
  if (!domain_.contains(y)) {
    throw OutOfDomain("point " + point_text(y) + " is outside the domain box");
  }
  const double lo = lower_(y);
  const double hi = upper_(y);
  if (std::isnan(lo) || std::isnan(hi)) {
    throw EndpointOrderViolation("endpoint function returned NaN at " +
                                 point_text(y));
  }
  if (lo > hi) {
    throw EndpointOrderViolation("lower endpoint " + format_real(lo) +
                                 " exceeds upper endpoint " + format_real(hi) +
                                 " at " + point_text(y));
  }
  return Interval(lo, hi);
}

Ivf add_ivf(const Ivf& a, const Ivf& b) {
  if (a.dim() != b.dim() || !(a.domain() == b.domain())) {
    throw DimensionMismatch("ivf sum requires matching dimensions and domains");
  }
  auto lower = [a, b](std::span<const double> y) {
    return a.lower(y) + b.lower(y);
  };
  auto upper = [a, b](std::span<const double> y) {
    return a.upper(y) + b.upper(y);
  };
  return Ivf(lower, upper, a.domain());
}

Ivf scale_ivf(double delta, const Ivf& t) {
  if (delta < 0.0) {
    throw NegativeScale("ivf scaling requires delta >= 0, got " +
                        format_real(delta));
  }
  auto lower = [delta, t](std::span<const double> y) {
    return delta * t.lower(y);
  };
  auto upper = [delta, t](std::span<const double> y) {
    return delta * t.upper(y);
  };
  return Ivf(lower, upper, t.domain());
}

Ivf max_ivf(std::vector<Ivf> members) {
  if (members.empty()) throw EmptySet("maximum of no ivfs");
  const Box domain = members.front().domain();
  for (const auto& m : members) {
    if (!(m.domain() == domain)) {
      throw DimensionMismatch("ivf maximum requires one common domain");
    }
  }
  auto shared = std::make_shared<std::vector<Ivf>>(std::move(members));
  auto value_at = [shared](std::span<const double> y) -> Interval {
    std::vector<Interval> values;
    values.reserve(shared->size());
    for (const auto& m : *shared) values.push_back(m.eval(y));
    try {
      return min_max_comparable(values).second;
    } catch (const NotAChain&) {
      throw NotComparableAt("ivf values are not a chain at " + point_text(y));
    }
  };
  auto lower = [value_at](std::span<const double> y) {
    return value_at(y).lo();
  };
  auto upper = [value_at](std::span<const double> y) {
    return value_at(y).hi();
  };
  return Ivf(lower, upper, domain);
}

ExtendedIvf::ExtendedIvf(Ivf base,
                         std::function<bool(std::span<const double>)> effective)
    : base_(std::move(base)), effective_(std::move(effective)) {
  if (!effective_) throw Error("effective-domain predicate must be set");
}

ExtendedInterval ExtendedIvf::eval(std::span<const double> y) const {
  if (!effective_(y)) return ExtendedInterval::plus_inf();
  return ExtendedInterval(base_.eval(y));
}

ExtendedIvf indicator(const Box& box) {
  auto zero = [](std::span<const double>) { return 0.0; };
  Ivf base(zero, zero, box);
  auto inside = [box](std::span<const double> y) { return box.contains(y); };
  return ExtendedIvf(std::move(base), inside);
}

ConvexityVerdict is_convex_sampled(const Ivf& t,
                                   std::span<const ConvexitySample> samples,
                                   double tol) {
  for (const auto& s : samples) {
    if (s.lambda < 0.0 || s.lambda > 1.0) {
      throw Error("convexity sample lambda outside [0,1]");
    }
    std::vector<double> mid(t.dim());
    for (std::size_t j = 0; j < t.dim(); ++j) {
      mid[j] = s.lambda * s.y1[j] + (1.0 - s.lambda) * s.y2[j];
    }
    const Interval left = t.eval(s.y1);
    const Interval right = t.eval(s.y2);
    const Interval at_mid = t.eval(mid);
    const double chord_lo =
        s.lambda * left.lo() + (1.0 - s.lambda) * right.lo();
    const double chord_hi =
        s.lambda * left.hi() + (1.0 - s.lambda) * right.hi();
    if (at_mid.lo() > chord_lo + tol || at_mid.hi() > chord_hi + tol) {
      return {false, s};
    }
  }
  return {true, std::nullopt};
}

std::vector<ConvexitySample> make_convexity_samples(const Box& box,
                                                    std::size_t count,
                                                    unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<ConvexitySample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    ConvexitySample s;
    s.y1.resize(box.dim());
    s.y2.resize(box.dim());
    for (std::size_t j = 0; j < box.dim(); ++j) {
      const auto& r = box.range(j);
      s.y1[j] = r.lo() + unit(rng) * r.width();
      s.y2[j] = r.lo() + unit(rng) * r.width();
    }
    s.lambda = unit(rng);
    out.push_back(std::move(s));
  }
  return out;
}

ContinuityVerdict is_gh_continuous_at(const Ivf& t,
                                      std::span<const double> ybar,
                                      std::span<const double> radii,
                                      double tol) {
  if (radii.empty()) throw Error("continuity check needs at least one radius");
  const Interval at_center = t.eval(ybar);
  ContinuityVerdict verdict;
  std::vector<double> probe(ybar.begin(), ybar.end());
  for (std::size_t j = 0; j < t.dim(); ++j) {
    for (double sign : {1.0, -1.0}) {
      double last_gap = -1.0;
      double smallest_r = -1.0;
      for (double r : radii) {
        probe[j] = ybar[j] + sign * r;
        if (!t.domain().contains(probe)) continue;
        if (smallest_r < 0.0 || r < smallest_r) {
          smallest_r = r;
          last_gap = norm(gh_sub(t.eval(probe), at_center));
        }
      }
      probe[j] = ybar[j];
      if (last_gap < 0.0) continue;  // whole ray leaves the domain
      if (last_gap > tol) {
        verdict.holds = false;
        verdict.final_gap = std::max(verdict.final_gap, last_gap);
        if (verdict.violated_direction.empty()) {
          verdict.violated_direction.assign(t.dim(), 0.0);
          verdict.violated_direction[j] = sign;
        }
      } else {
        verdict.final_gap = std::max(verdict.final_gap, last_gap);
      }
    }
  }
  return verdict;
}

}  // namespace ivopt

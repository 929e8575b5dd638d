#include "ivopt/subdiff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <json.hpp>

namespace ivopt {

SubdiffSet SubdiffSet::singleton(IntervalVector value) {
  SubdiffSet s;
  s.kind_ = Kind::Singleton;
  s.vectors_.push_back(std::move(value));
  return s;
}

SubdiffSet SubdiffSet::box(IntervalVector lower, IntervalVector upper) {
  if (lower.dim() != upper.dim()) {
    throw DimensionMismatch("box corners have different dimensions");
  }
  if (!dominates(lower, upper)) {
    throw InvalidInterval("box lower corner must dominate-or-equal the upper");
  }
  SubdiffSet s;
  s.kind_ = Kind::Box;
  s.vectors_.push_back(std::move(lower));
  s.vectors_.push_back(std::move(upper));
  return s;
}

SubdiffSet SubdiffSet::scaled_sum(
    std::vector<std::pair<double, SubdiffSet>> terms) {
  if (terms.empty()) throw EmptySet("scaled sum of no sets");
  const std::size_t n = terms.front().second.dim();
  for (const auto& [scale, member] : terms) {
    if (scale < 0.0) {
      throw NegativeScale("scaled sum requires nonnegative scales");
    }
    if (member.kind() == Kind::ScaledSum) {
      throw UnsupportedShape("scaled sums nest at most one level");
    }
    if (member.dim() != n) {
      throw DimensionMismatch("scaled sum members have mixed dimensions");
    }
  }
  SubdiffSet s;
  s.kind_ = Kind::ScaledSum;
  s.terms_ = std::move(terms);
  return s;
}

std::size_t SubdiffSet::dim() const {
  if (kind_ == Kind::ScaledSum) return terms_.front().second.dim();
  return vectors_.front().dim();
}

const IntervalVector& SubdiffSet::value() const {
  if (kind_ != Kind::Singleton) throw UnsupportedShape("not a singleton");
  return vectors_[0];
}

const IntervalVector& SubdiffSet::lower() const {
  if (kind_ != Kind::Box) throw UnsupportedShape("not a box");
  return vectors_[0];
}

const IntervalVector& SubdiffSet::upper() const {
  if (kind_ != Kind::Box) throw UnsupportedShape("not a box");
  return vectors_[1];
}

const std::vector<std::pair<double, SubdiffSet>>& SubdiffSet::terms() const {
  if (kind_ != Kind::ScaledSum) throw UnsupportedShape("not a scaled sum");
  return terms_;
}

namespace {

nlohmann::json vector_json(const IntervalVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : v) out.push_back({c.lo(), c.hi()});
  return out;
}

nlohmann::json set_json(const SubdiffSet& s) {
  nlohmann::json out;
  switch (s.kind()) {
    case SubdiffSet::Kind::Singleton:
      out["kind"] = "singleton";
      out["value"] = vector_json(s.value());
      break;
    case SubdiffSet::Kind::Box:
      out["kind"] = "box";
      out["lower"] = vector_json(s.lower());
      out["upper"] = vector_json(s.upper());
      break;
    case SubdiffSet::Kind::ScaledSum: {
      out["kind"] = "scaled_sum";
      nlohmann::json terms = nlohmann::json::array();
      for (const auto& [scale, member] : s.terms()) {
        terms.push_back({{"scale", scale}, {"set", set_json(member)}});
      }
      out["terms"] = std::move(terms);
      break;
    }
  }
  return out;
}

}  // namespace

std::string SubdiffSet::to_json() const { return set_json(*this).dump(); }

SubgradientVerdict is_subgradient(const Ivf& t, std::span<const double> ybar,
                                  const IntervalVector& g,
                                  std::span<const std::vector<double>> probes) {
  if (ybar.size() != t.dim() || g.dim() != t.dim()) {
    throw DimensionMismatch("subgradient candidate dimension mismatch");
  }
  const Interval at_ybar = t.eval(ybar);
  std::vector<double> step(t.dim());
  for (const auto& y : probes) {
    if (y.size() != t.dim()) {
      throw DimensionMismatch("probe point dimension mismatch");
    }
    for (std::size_t j = 0; j < t.dim(); ++j) step[j] = y[j] - ybar[j];
    const Interval left = dot(step, g);
    const Interval right = gh_sub(t.eval(y), at_ybar);
    if (!dominates(left, right)) return {false, y};
  }
  return {true, std::nullopt};
}

std::vector<std::vector<double>> make_probes(const Box& box,
                                             std::size_t grid_per_axis,
                                             std::size_t random_count,
                                             unsigned seed) {
  std::vector<std::vector<double>> out;
  const std::size_t n = box.dim();
  if (grid_per_axis >= 2) {
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      std::vector<double> point(n);
      for (std::size_t j = 0; j < n; ++j) {
        const auto& r = box.range(j);
        point[j] = r.lo() + r.width() * (static_cast<double>(idx[j]) /
                                         static_cast<double>(grid_per_axis - 1));
      }
      out.push_back(std::move(point));
      std::size_t j = 0;
      for (; j < n; ++j) {
        if (++idx[j] < grid_per_axis) break;
        idx[j] = 0;
      }
      if (j == n) break;
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < random_count; ++i) {
    std::vector<double> point(n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto& r = box.range(j);
      point[j] = r.lo() + unit(rng) * r.width();
    }
    out.push_back(std::move(point));
  }
  return out;
}

SubdiffSet subdiff_smooth(const Ivf& t, std::span<const double> ybar,
                          const DiffConfig& cfg) {
  return SubdiffSet::singleton(gh_gradient(t, ybar, cfg));
}

SubdiffSet subdiff_abs_weighted(const Interval& c, std::size_t n,
                                std::size_t p, std::span<const double> ybar) {
  if (!dominates(Interval::zero(), c)) {
    throw InvalidInterval("weight interval must dominate zero (0 <= c)");
  }
  if (p < 1 || p > n) throw Error("kink coordinate index out of range");
  if (ybar.size() != n) {
    throw DimensionMismatch("point dimension does not match n");
  }
  if (ybar[p - 1] != 0.0) {
    throw NotOnKinkPlane("coordinate " + std::to_string(p) +
                         " is nonzero; the box formula applies on the plane "
                         "y_p = 0");
  }
  if (c == Interval::zero()) {
    return SubdiffSet::singleton(IntervalVector::zero(n));
  }
  const Interval lower = neg(c);
  return SubdiffSet::box(
      IntervalVector(std::vector<Interval>(n, lower)),
      IntervalVector(std::vector<Interval>(n, c)));
}

SubdiffSet scale_subdiff(double delta, const SubdiffSet& s) {
  if (delta < 0.0) {
    throw NegativeScale("subdifferential scaling requires delta >= 0");
  }
  switch (s.kind()) {
    case SubdiffSet::Kind::Singleton:
      return SubdiffSet::singleton(delta * s.value());
    case SubdiffSet::Kind::Box: {
      if (delta == 0.0) {
        return SubdiffSet::singleton(IntervalVector::zero(s.dim()));
      }
      return SubdiffSet::box(delta * s.lower(), delta * s.upper());
    }
    case SubdiffSet::Kind::ScaledSum: {
      auto terms = s.terms();
      for (auto& [scale, member] : terms) scale *= delta;
      return SubdiffSet::scaled_sum(std::move(terms));
    }
  }
  throw UnsupportedShape("unknown subdifferential shape");
}

namespace {

// Corner collapse: the Minkowski sum of scaled boxes and points, described
// by its lower/upper corner vectors. Zero membership and zero distance on
// the collapsed box agree with the exact set whenever at most one member is
// a box and the remaining singletons are degenerate, which covers every
// assembly the checkers build.
std::pair<IntervalVector, IntervalVector> corner_collapse(const SubdiffSet& s) {
  switch (s.kind()) {
    case SubdiffSet::Kind::Singleton:
      return {s.value(), s.value()};
    case SubdiffSet::Kind::Box:
      return {s.lower(), s.upper()};
    case SubdiffSet::Kind::ScaledSum: {
      bool first = true;
      IntervalVector lower = IntervalVector::zero(s.dim());
      IntervalVector upper = IntervalVector::zero(s.dim());
      for (const auto& [scale, member] : s.terms()) {
        auto [ml, mu] = corner_collapse(member);
        if (first) {
          lower = scale * ml;
          upper = scale * mu;
          first = false;
        } else {
          lower = lower + scale * ml;
          upper = upper + scale * mu;
        }
      }
      return {lower, upper};
    }
  }
  throw UnsupportedShape("unknown subdifferential shape");
}

// Minimum of max(|a|,|b|) over a in [a1,a2], b in [b1,b2] with a <= b.
double component_zero_distance(const Interval& lower, const Interval& upper) {
  const double a1 = lower.lo(), a2 = upper.lo();
  const double b1 = lower.hi(), b2 = upper.hi();
  double best = std::numeric_limits<double>::infinity();
  const double a0 = std::clamp(0.0, a1, a2);
  const double b0 = std::clamp(0.0, b1, b2);
  if (a0 <= b0) best = std::max(std::fabs(a0), std::fabs(b0));
  const double t1 = std::max(a1, b1);
  const double t2 = std::min(a2, b2);
  if (t1 <= t2) best = std::min(best, std::fabs(std::clamp(0.0, t1, t2)));
  return best;
}

}  // namespace

bool contains_zero(const SubdiffSet& s) {
  if (s.kind() == SubdiffSet::Kind::Singleton) return is_zero(s.value());
  auto [lower, upper] = corner_collapse(s);
  const IntervalVector zero = IntervalVector::zero(s.dim());
  return dominates(lower, zero) && dominates(zero, upper);
}

double zero_distance(const SubdiffSet& s) {
  auto [lower, upper] = corner_collapse(s);
  double total = 0.0;
  for (std::size_t j = 0; j < s.dim(); ++j) {
    total += component_zero_distance(lower[j], upper[j]);
  }
  return total;
}

}  // namespace ivopt

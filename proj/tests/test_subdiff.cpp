#include <doctest.h>

#include <cmath>
#include <random>

#include <json.hpp>

#include "ivopt/subdiff.hpp"

using namespace ivopt;

namespace {

Ivf from_interval_expr(std::function<Interval(double)> value, Box box) {
  auto lower = [value](std::span<const double> y) { return value(y[0]).lo(); };
  auto upper = [value](std::span<const double> y) { return value(y[0]).hi(); };
  return Ivf(lower, upper, std::move(box));
}

// H(y) = C * |y| in one variable
Ivf weighted_abs(Interval c, double radius) {
  return from_interval_expr(
      [c](double y) { return c * abs(Interval::point(y)); },
      Box::uniform(1, -radius, radius));
}

// T(y) = (number of nonzero coordinates) * C
Ivf count_nonzero_scaled(Interval c, std::size_t n, double radius) {
  auto value = [c](std::span<const double> y) {
    double count = 0.0;
    for (double v : y) count += v != 0.0 ? 1.0 : 0.0;
    return count * c;
  };
  return Ivf([value](std::span<const double> y) { return value(y).lo(); },
             [value](std::span<const double> y) { return value(y).hi(); },
             Box::uniform(n, -radius, radius));
}

}  // namespace

TEST_CASE("subgradient oracle basics") {
  const Ivf band = from_interval_expr(
      [](double y) { return Interval(1, 2) * pow(Interval::point(y), 2); },
      Box::uniform(1, -5.0, 5.0));
  const auto probes = make_probes(band.domain(), 200, 50);
  CHECK(is_subgradient(band, std::vector<double>{0.0},
                       IntervalVector::zero(1), probes)
            .holds);

  const auto bad = is_subgradient(band, std::vector<double>{0.0},
                                  IntervalVector{Interval(5, 5)}, probes);
  CHECK(!bad.holds);
  CHECK(bad.violated_at.has_value());
}

TEST_CASE("zero count function has only the zero subgradient at the origin") {
  const Ivf t = count_nonzero_scaled(Interval(1, 2), 2, 1100.0);
  std::vector<std::vector<double>> probes = make_probes(t.domain(), 9, 80);
  for (double magnitude : {1.0, 10.0, 1000.0}) {
    probes.push_back({magnitude, 0.0});
    probes.push_back({-magnitude, 0.0});
    probes.push_back({0.0, magnitude});
    probes.push_back({0.0, -magnitude});
  }
  const std::vector<double> origin{0.0, 0.0};
  CHECK(is_subgradient(t, origin, IntervalVector::zero(2), probes).holds);

  CHECK(!is_subgradient(t, origin,
                        IntervalVector{Interval(1, 1), Interval::zero()},
                        probes)
             .holds);
  CHECK(!is_subgradient(t, origin,
                        IntervalVector{Interval(-0.5, 0.1), Interval(0, 0.2)},
                        probes)
             .holds);
}

TEST_CASE("smooth subdifferential is the singleton gradient") {
  const Ivf quad = from_interval_expr(
      [](double y) {
        return Interval(1, 2) * pow(Interval::point(y), 2) +
               Interval(0, 2) * Interval::point(y) + Interval(2, 5);
      },
      Box::uniform(1, -2.0, 0.0));
  const SubdiffSet at_zero = subdiff_smooth(quad, std::vector<double>{0.0});
  REQUIRE(at_zero.kind() == SubdiffSet::Kind::Singleton);
  CHECK(norm(gh_sub(at_zero.value()[0], Interval(0, 2))) <= 1e-8);

  const Ivf cubic = from_interval_expr(
      [](double y) {
        return Interval(2, 4) * pow(Interval::point(y), 3) + Interval(1, 1);
      },
      Box::uniform(1, -5.0, 5.0));
  const SubdiffSet cubic_zero = subdiff_smooth(cubic, std::vector<double>{0.0});
  CHECK(norm(gh_sub(cubic_zero.value()[0], Interval::zero())) <= 1e-7);

  const Ivf constant = from_interval_expr(
      [](double) { return Interval(1, 4); }, Box::uniform(1, -1.0, 1.0));
  const SubdiffSet flat = subdiff_smooth(constant, std::vector<double>{0.5});
  CHECK(flat.value() == IntervalVector::zero(1));
}

TEST_CASE("weighted absolute value box") {
  const std::vector<double> origin{0.0};
  const SubdiffSet box =
      subdiff_abs_weighted(Interval(1, 2), 1, 1, origin);
  REQUIRE(box.kind() == SubdiffSet::Kind::Box);
  CHECK(box.lower() == IntervalVector{Interval(-2, -1)});
  CHECK(box.upper() == IntervalVector{Interval(1, 2)});

  CHECK(dominates(box.lower(), IntervalVector::zero(1)));
  CHECK(dominates(IntervalVector::zero(1), box.upper()));

  const SubdiffSet degenerate =
      subdiff_abs_weighted(Interval::zero(), 1, 1, origin);
  CHECK(degenerate.kind() == SubdiffSet::Kind::Singleton);
  CHECK(degenerate.value() == IntervalVector::zero(1));

  CHECK_THROWS_AS(
      subdiff_abs_weighted(Interval(1, 2), 1, 1, std::vector<double>{0.5}),
      NotOnKinkPlane);
  CHECK_THROWS_AS(
      subdiff_abs_weighted(Interval(-1, 2), 1, 1, origin), InvalidInterval);
}

TEST_CASE("box members are subgradients and outside points are not") {
  const Interval c(1, 2);
  const Ivf h = weighted_abs(c, 2.0);
  const auto probes = make_probes(h.domain(), 101, 25);
  const std::vector<double> origin{0.0};

  std::mt19937_64 rng(601);
  std::uniform_real_distribution<double> lo_dist(-2.0, 1.0);
  std::uniform_real_distribution<double> hi_dist(-1.0, 2.0);
  int members = 0;
  while (members < 500) {
    const double glo = lo_dist(rng);
    const double ghi = hi_dist(rng);
    if (glo > ghi) continue;
    ++members;
    CHECK(is_subgradient(h, origin, IntervalVector{Interval(glo, ghi)}, probes)
              .holds);
  }

  std::uniform_real_distribution<double> bump(0.01, 1.0);
  std::uniform_real_distribution<double> any(-3.0, 3.0);
  int outsiders = 0;
  while (outsiders < 500) {
    double glo = any(rng);
    double ghi = any(rng);
    if (glo > ghi) std::swap(glo, ghi);
    switch (outsiders % 4) {
      case 0: glo = 1.0 + bump(rng); ghi = std::max(ghi, glo); break;
      case 1: ghi = 2.0 + bump(rng); glo = std::min(glo, ghi); break;
      case 2: glo = -2.0 - bump(rng); ghi = std::min(ghi, -1.0 - bump(rng)); break;
      default: ghi = -1.0 - bump(rng); glo = std::min(glo, ghi); break;
    }
    ++outsiders;
    const auto verdict = is_subgradient(
        h, origin, IntervalVector{Interval(glo, ghi)}, probes);
    CHECK(!verdict.holds);
  }
}

TEST_CASE("scaling a subdifferential") {
  const SubdiffSet single =
      SubdiffSet::singleton(IntervalVector{Interval(1, 2)});
  const SubdiffSet doubled = scale_subdiff(2.0, single);
  CHECK(doubled.value() == IntervalVector{Interval(2, 4)});

  const SubdiffSet box = SubdiffSet::box(IntervalVector{Interval(-2, -1)},
                                         IntervalVector{Interval(1, 2)});
  const SubdiffSet collapsed = scale_subdiff(0.0, box);
  CHECK(collapsed.kind() == SubdiffSet::Kind::Singleton);
  CHECK(collapsed.value() == IntervalVector::zero(1));

  const SubdiffSet same = scale_subdiff(1.0, box);
  CHECK(same.lower() == box.lower());
  CHECK(same.upper() == box.upper());

  CHECK_THROWS_AS(scale_subdiff(-2.0, single), NegativeScale);
}

TEST_CASE("scaling preserves the subgradient relation") {
  std::mt19937_64 rng(602);
  std::uniform_real_distribution<double> cand(-2.5, 2.5);
  std::uniform_real_distribution<double> scale(0.0, 4.0);
  const Ivf h = weighted_abs(Interval(1, 2), 2.0);
  const auto probes = make_probes(h.domain(), 101, 25);
  const std::vector<double> origin{0.0};
  for (int trial = 0; trial < 300; ++trial) {
    double glo = cand(rng), ghi = cand(rng);
    if (glo > ghi) std::swap(glo, ghi);
    const IntervalVector g{Interval(glo, ghi)};
    const double d = scale(rng);
    const Ivf scaled_h = scale_ivf(d, h);
    const bool before = is_subgradient(h, origin, g, probes).holds;
    const bool after =
        is_subgradient(scaled_h, origin, d * g, probes).holds;
    if (d == 0.0) {
      CHECK(after);  // zero function, zero candidate
    } else {
      CHECK(before == after);
    }
  }
}

TEST_CASE("zero membership") {
  CHECK(contains_zero(SubdiffSet::singleton(IntervalVector::zero(3))));
  CHECK(!contains_zero(
      SubdiffSet::singleton(IntervalVector{Interval(0, 1e-12)})));

  const SubdiffSet box = SubdiffSet::box(IntervalVector{Interval(-2, -1)},
                                         IntervalVector{Interval(1, 2)});
  CHECK(contains_zero(box));
  CHECK(zero_distance(box) == 0.0);

  // a box whose members are all nondegenerate cannot reach the zero vector
  const SubdiffSet offset = SubdiffSet::box(IntervalVector{Interval(0, 5)},
                                            IntervalVector{Interval(1, 6)});
  CHECK(!contains_zero(offset));
  CHECK(zero_distance(offset) > 0.0);

  // delta0*[0,2] (+) delta1*[1,1] misses zero for every simplex pair
  for (double d0 : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const double d1 = 1.0 - d0;
    const SubdiffSet sum = SubdiffSet::scaled_sum(
        {{d0, SubdiffSet::singleton(IntervalVector{Interval(0, 2)})},
         {d1, SubdiffSet::singleton(IntervalVector{Interval(1, 1)})}});
    CHECK(!contains_zero(sum));
    CHECK(zero_distance(sum) ==
          std::max(std::fabs(d1), std::fabs(2 * d0 + d1)));
  }

  // box plus a degenerate point the box can absorb
  const SubdiffSet mixed = SubdiffSet::scaled_sum(
      {{1.0, box},
       {0.5, SubdiffSet::singleton(IntervalVector{Interval(1, 1)})}});
  CHECK(contains_zero(mixed));

  CHECK_THROWS_AS(
      SubdiffSet::scaled_sum(
          {{1.0, SubdiffSet::scaled_sum(
                     {{1.0, SubdiffSet::singleton(IntervalVector::zero(1))}})}}),
      UnsupportedShape);
  CHECK_THROWS_AS(
      SubdiffSet::scaled_sum(
          {{-1.0, SubdiffSet::singleton(IntervalVector::zero(1))}}),
      NegativeScale);
}

TEST_CASE("zero distance agrees with membership") {
  std::mt19937_64 rng(603);
  std::uniform_int_distribution<int> pick(-8, 8);
  for (int trial = 0; trial < 2000; ++trial) {
    const int a = pick(rng), b = pick(rng);
    const Interval l(std::min(a, b), std::max(a, b));
    const Interval u(l.lo() + std::abs(pick(rng)),
                     l.hi() + std::abs(pick(rng)));
    const SubdiffSet box = SubdiffSet::box(IntervalVector{l},
                                           IntervalVector{u});
    CHECK(contains_zero(box) == (zero_distance(box) == 0.0));
  }
}

TEST_CASE("json encoding of subdifferential sets") {
  const SubdiffSet single =
      SubdiffSet::singleton(IntervalVector{Interval(1, 2)});
  auto j = nlohmann::json::parse(single.to_json());
  CHECK(j["kind"] == "singleton");
  CHECK(j["value"][0][0] == 1.0);
  CHECK(j["value"][0][1] == 2.0);

  const SubdiffSet box = SubdiffSet::box(IntervalVector{Interval(-2, -1)},
                                         IntervalVector{Interval(1, 2)});
  j = nlohmann::json::parse(box.to_json());
  CHECK(j["kind"] == "box");
  CHECK(j["lower"][0][0] == -2.0);
  CHECK(j["upper"][0][1] == 2.0);

  const SubdiffSet sum = SubdiffSet::scaled_sum({{0.5, single}, {1.5, box}});
  j = nlohmann::json::parse(sum.to_json());
  CHECK(j["kind"] == "scaled_sum");
  CHECK(j["terms"].size() == 2);
  CHECK(j["terms"][0]["scale"] == 0.5);
  CHECK(j["terms"][1]["set"]["kind"] == "box");
}

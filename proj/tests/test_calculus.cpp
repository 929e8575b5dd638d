#include <doctest.h>

#include <cmath>
#include <random>

#include "ivopt/calculus.hpp"

using namespace ivopt;

namespace {

Ivf from_interval_expr(std::function<Interval(double)> value, Box box) {
  auto lower = [value](std::span<const double> y) { return value(y[0]).lo(); };
  auto upper = [value](std::span<const double> y) { return value(y[0]).hi(); };
  return Ivf(lower, upper, std::move(box));
}

Ivf quad_example() {
  return from_interval_expr(
      [](double y) {
        return Interval(1, 2) * pow(Interval::point(y), 2) +
               Interval(0, 2) * Interval::point(y) + Interval(2, 5);
      },
      Box::uniform(1, -2.0, 0.0));
}

Ivf cubic_example() {
  return from_interval_expr(
      [](double y) {
        return Interval(2, 4) * pow(Interval::point(y), 3) + Interval(1, 1);
      },
      Box::uniform(1, -5.0, 5.0));
}

double gap(const Interval& a, const Interval& b) {
  return norm(gh_sub(a, b));
}

}  // namespace

TEST_CASE("gradient of the interval quadratic") {
  const Ivf quad = quad_example();
  // closed form [2,4]y (+) [0,2]
  const IntervalVector at_minus1 = gh_gradient(quad, std::vector<double>{-1.0});
  CHECK(gap(at_minus1[0], Interval(-4, 0)) <= 1e-8);

  // boundary point, one-sided stencil
  const IntervalVector at_zero = gh_gradient(quad, std::vector<double>{0.0});
  CHECK(gap(at_zero[0], Interval(0, 2)) <= 1e-8);

  const IntervalVector at_bottom = gh_gradient(quad, std::vector<double>{-2.0});
  CHECK(gap(at_bottom[0], Interval(-8, -2)) <= 1e-8);
}

TEST_CASE("gradient of the nonconvex cubic") {
  const Ivf cubic = cubic_example();
  // closed form [6,12]y^2
  const IntervalVector at_zero = gh_gradient(cubic, std::vector<double>{0.0});
  CHECK(gap(at_zero[0], Interval::zero()) <= 1e-7);
  const IntervalVector at_one = gh_gradient(cubic, std::vector<double>{1.0});
  CHECK(gap(at_one[0], Interval(6, 12)) <= 1e-6);
}

TEST_CASE("gradient of a constant is zero") {
  const Ivf constant = from_interval_expr(
      [](double) { return Interval(2, 7); }, Box::uniform(1, -1.0, 1.0));
  const IntervalVector g = gh_gradient(constant, std::vector<double>{0.25});
  CHECK(g == IntervalVector::zero(1));
}

TEST_CASE("gradient in two variables") {
  // [1,2] y1^2 (+) [3,3] y2
  auto value = [](std::span<const double> y) {
    return Interval(1, 2) * pow(Interval::point(y[0]), 2) +
           Interval(3, 3) * Interval::point(y[1]);
  };
  const Ivf t([value](std::span<const double> y) { return value(y).lo(); },
              [value](std::span<const double> y) { return value(y).hi(); },
              Box::uniform(2, -2.0, 2.0));
  const IntervalVector g = gh_gradient(t, std::vector<double>{1.0, 0.5});
  CHECK(gap(g[0], Interval(2, 4)) <= 1e-6);
  CHECK(gap(g[1], Interval(3, 3)) <= 1e-6);
}

TEST_CASE("gradient error paths") {
  const Ivf quad = quad_example();
  CHECK_THROWS_AS(gh_gradient(quad, std::vector<double>{1.0}), OutOfDomain);
  CHECK_THROWS_AS(gh_gradient(quad, std::vector<double>{0.0, 0.0}),
                  DimensionMismatch);

  // square-root cusp: the difference quotient diverges as h shrinks
  const Ivf rough(
      [](std::span<const double> y) {
        return (y[0] >= 0.0 ? 1.0 : -1.0) * std::sqrt(std::fabs(y[0]));
      },
      [](std::span<const double>) { return 10.0; },
      Box::uniform(1, -1.0, 1.0));
  CHECK_THROWS_AS(gh_gradient(rough, std::vector<double>{0.0}), NoConvergence);
}

TEST_CASE("endpoint central differences match analytic derivatives") {
  const Ivf quad = quad_example();
  const Ivf cubic = cubic_example();
  for (double y : {-1.9, -1.5, -1.0, -0.5, -0.1}) {
    const IntervalVector g = gh_gradient(quad, std::vector<double>{y});
    const double dl = 2 * y + 2;
    const double du = 4 * y;
    CHECK(std::fabs(g[0].lo() - std::min(dl, du)) <= 1e-8);
    CHECK(std::fabs(g[0].hi() - std::max(dl, du)) <= 1e-8);
  }
  for (double y : {-2.0, -1.0, 1.0, 2.0}) {
    const IntervalVector g = gh_gradient(cubic, std::vector<double>{y});
    CHECK(std::fabs(g[0].lo() - 6 * y * y) <= 1e-5);
    CHECK(std::fabs(g[0].hi() - 12 * y * y) <= 1e-5);
  }
}

TEST_CASE("directional derivative") {
  const Ivf band = from_interval_expr(
      [](double y) { return Interval(1, 2) * pow(Interval::point(y), 2); },
      Box::uniform(1, -3.0, 3.0));
  const Interval d = gh_dir_derivative(band, std::vector<double>{1.0},
                                       std::vector<double>{1.0});
  CHECK(gap(d, Interval(2, 4)) <= 1e-6);

  const Interval zero_dir = gh_dir_derivative(band, std::vector<double>{1.0},
                                              std::vector<double>{0.0});
  CHECK(zero_dir == Interval::zero());

  const Ivf vee = from_interval_expr(
      [](double y) { return Interval(1, 2) * abs(Interval::point(y)); },
      Box::uniform(1, -3.0, 3.0));
  const Interval slope = gh_dir_derivative(vee, std::vector<double>{0.0},
                                           std::vector<double>{1.0});
  CHECK(gap(slope, Interval(1, 2)) <= 1e-9);

  CHECK_THROWS_AS(gh_dir_derivative(band, std::vector<double>{3.0},
                                    std::vector<double>{1.0}),
                  LeavesDomain);
}

TEST_CASE("directional derivative is positively homogeneous") {
  std::mt19937_64 rng(501);
  std::uniform_real_distribution<double> point(-1.5, 1.5);
  std::uniform_real_distribution<double> alpha(0.25, 4.0);
  const Ivf band = from_interval_expr(
      [](double y) {
        return Interval(1, 3) * pow(Interval::point(y), 2) +
               Interval(0, 1) * Interval::point(y);
      },
      Box::uniform(1, -3.0, 3.0));
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<double> y{point(rng)};
    const double a = alpha(rng);
    const Interval base =
        gh_dir_derivative(band, y, std::vector<double>{1.0});
    const Interval scaled =
        gh_dir_derivative(band, y, std::vector<double>{a});
    CHECK(gap(scaled, a * base) <= 1e-4 * std::max(1.0, a));
  }
}

TEST_CASE("gradient components agree with coordinate directional derivatives") {
  const std::vector<Ivf> family{quad_example(), cubic_example()};
  const std::vector<std::vector<double>> points{{-1.0}, {-0.5}};
  const DiffConfig cfg;
  for (const auto& t : family) {
    for (const auto& y : points) {
      const IntervalVector g = gh_gradient(t, y, cfg);
      const Interval forward =
          gh_dir_derivative(t, y, std::vector<double>{1.0}, cfg);
      CHECK(gap(forward, g[0]) <= 10 * cfg.tol * std::max(1.0, norm(g[0])));
    }
  }
}

TEST_CASE("active sets of a comparable family") {
  const Box box = Box::uniform(1, -3.0, 3.0);
  const Ivf linear1 = from_interval_expr(
      [](double y) { return Interval::point(y); }, box);
  const Ivf linear2 = from_interval_expr(
      [](double y) { return Interval::point(2 * y); }, box);
  const std::vector<Ivf> family{linear1, linear2};

  const ActiveSet both = active_set(family, std::vector<double>{0.0});
  CHECK(both.indices == std::vector<std::size_t>{0, 1});

  const ActiveSet top = active_set(family, std::vector<double>{1.0});
  CHECK(top.indices == std::vector<std::size_t>{1});

  const Ivf inside = from_interval_expr(
      [](double) { return Interval(1.2, 1.8); }, box);
  const Ivf band = from_interval_expr(
      [](double y) { return Interval(1, 2) * pow(Interval::point(y), 2); },
      box);
  const std::vector<Ivf> bad{band, inside};
  CHECK_THROWS_AS(active_set(bad, std::vector<double>{1.0}), NotComparableAt);
}

TEST_CASE("directional derivative of the maximum") {
  const Box box = Box::uniform(1, -3.0, 3.0);
  const Ivf linear1 = from_interval_expr(
      [](double y) { return Interval::point(y); }, box);
  const Ivf linear2 = from_interval_expr(
      [](double y) { return Interval::point(2 * y); }, box);
  const std::vector<Ivf> family{linear1, linear2};

  const Interval up = dir_derivative_of_max(family, std::vector<double>{0.0},
                                            std::vector<double>{1.0});
  CHECK(gap(up, Interval(2, 2)) <= 1e-9);

  const Interval down = dir_derivative_of_max(family, std::vector<double>{0.0},
                                              std::vector<double>{-1.0});
  CHECK(gap(down, Interval(-1, -1)) <= 1e-9);

  const std::vector<Ivf> single{linear2};
  const Interval alone = dir_derivative_of_max(single, std::vector<double>{0.5},
                                               std::vector<double>{1.0});
  CHECK(gap(alone, Interval(2, 2)) <= 1e-9);
}

TEST_CASE("max rule matches the numeric derivative of the max function") {
  std::mt19937_64 rng(502);
  std::uniform_real_distribution<double> coef(0.1, 2.0);
  std::uniform_real_distribution<double> root(-1.0, 1.0);
  std::uniform_real_distribution<double> point(-1.5, 1.5);
  std::uniform_int_distribution<int> count(2, 4);
  const Box box = Box::uniform(1, -3.0, 3.0);
  const DiffConfig cfg;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Ivf> family;
    const int members = count(rng);
    for (int i = 0; i < members; ++i) {
      const double a = coef(rng);
      const double r = root(rng);
      const double c = root(rng);
      family.push_back(from_interval_expr(
          [a, r, c](double y) {
            return Interval::point(a * (y - r) * (y - r) + c);
          },
          box));
    }
    const std::vector<double> ybar{point(rng)};
    for (double d : {1.0, -1.0, 0.5}) {
      const Interval by_rule = dir_derivative_of_max(
          family, ybar, std::vector<double>{d}, cfg);
      const Interval numeric = gh_dir_derivative(
          max_ivf(family), ybar, std::vector<double>{d}, cfg);
      CHECK(gap(by_rule, numeric) <= 1e-6);
    }
  }
}

TEST_CASE("max rule at a crossing point") {
  const Box box = Box::uniform(1, -3.0, 3.0);
  // (y-1)^2 and (y+1)^2 cross at zero with slopes -2 and 2
  const Ivf left = from_interval_expr(
      [](double y) { return Interval::point((y - 1) * (y - 1)); }, box);
  const Ivf right = from_interval_expr(
      [](double y) { return Interval::point((y + 1) * (y + 1)); }, box);
  const std::vector<Ivf> family{left, right};

  const ActiveSet active = active_set(family, std::vector<double>{0.0});
  CHECK(active.indices.size() == 2);

  const Interval up = dir_derivative_of_max(family, std::vector<double>{0.0},
                                            std::vector<double>{1.0});
  CHECK(gap(up, Interval(2, 2)) <= 1e-6);
  const Interval numeric = gh_dir_derivative(
      max_ivf(family), std::vector<double>{0.0}, std::vector<double>{1.0});
  CHECK(gap(up, numeric) <= 1e-6);
}

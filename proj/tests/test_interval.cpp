#include <doctest.h>

#include <random>

#include "ivopt/interval.hpp"

using namespace ivopt;

namespace {

std::mt19937_64 rng_for(unsigned seed) { return std::mt19937_64(seed); }

Interval random_interval(std::mt19937_64& rng, double lo = -100.0,
                         double hi = 100.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  double a = dist(rng);
  double b = dist(rng);
  if (a > b) std::swap(a, b);
  return Interval(a, b);
}

// Intervals on the dyadic lattice k/16 so that sums and differences are
// exact in binary64 and the order lemmas can be checked without tolerance.
Interval random_lattice_interval(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-16000, 16000);
  int a = dist(rng);
  int b = dist(rng);
  if (a > b) std::swap(a, b);
  return Interval(a / 16.0, b / 16.0);
}

double random_lattice_nonneg(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(0, 16000);
  return dist(rng) / 16.0;
}

}  // namespace

TEST_CASE("interval construction") {
  const Interval a(1.0, 2.0);
  CHECK(a.lo() == 1.0);
  CHECK(a.hi() == 2.0);
  CHECK(Interval::point(3.0).is_degenerate());
  CHECK_THROWS_AS(Interval(2.0, 1.0), InvalidInterval);
  CHECK_THROWS_AS(Interval(std::nan(""), 1.0), InvalidInterval);
  CHECK_THROWS_AS(Interval(0.0, std::numeric_limits<double>::infinity()),
                  InvalidInterval);
}

TEST_CASE("moore addition") {
  CHECK(Interval(1, 2) + Interval(3, 5) == Interval(4, 7));
  CHECK(Interval(-7, 4) + Interval::zero() == Interval(-7, 4));
  CHECK(Interval(-3, 2) + Interval::zero() == Interval(-3, 2));
}

TEST_CASE("moore subtraction, product, division, scalar") {
  CHECK(-1.0 * Interval(1, 2) == Interval(-2, -1));
  CHECK(Interval(1, 2) - Interval(1, 2) == Interval(-1, 1));
  CHECK(0.5 * Interval(2, 4) == Interval(1, 2));
  CHECK(Interval(1, 2) * Interval(-1, -1) == Interval(-2, -1));
  CHECK(Interval(-1, 2) * Interval(3, 4) == Interval(-4, 8));
  CHECK(divide(Interval(1, 2), Interval(2, 4)) == Interval(0.25, 1.0));
  CHECK_THROWS_AS(divide(Interval(1, 2), Interval(-1, 1)),
                  DivisionByIntervalContainingZero);
  CHECK_THROWS_AS(divide(Interval(1, 2), Interval(0, 1)),
                  DivisionByIntervalContainingZero);
}

TEST_CASE("gh difference") {
  CHECK(gh_sub(Interval(2, 5), Interval(1, 3)) == Interval(1, 2));
  const Interval y(-3.25, 17.5);
  CHECK(gh_sub(y, y) == Interval::zero());

  // pinned counterexample: the gh-difference does not distribute over sums
  const Interval x(-3, 2), yy(0, 0), z(4, 10), w(-7.5, -6);
  CHECK(gh_sub(x + yy, z + w) == Interval(-2.0, 0.5));
  CHECK(gh_sub(gh_sub(x, z), gh_sub(w, yy)) == Interval(-1.0, -0.5));
}

TEST_CASE("gh difference identity on random intervals") {
  auto rng = rng_for(101);
  for (int i = 0; i < 10000; ++i) {
    const Interval y = random_interval(rng, -1e6, 1e6);
    CHECK(gh_sub(y, y) == Interval::zero());
    const Interval z = random_interval(rng, -1e6, 1e6);
    const Interval d = gh_sub(y, z);
    CHECK(d.lo() <= d.hi());
  }
}

TEST_CASE("dominance") {
  CHECK(dominates(Interval(1, 2), Interval(2, 3)));
  CHECK(compare(Interval(1, 2), Interval(2, 3)) ==
        Dominance::StrictlyDominates);
  CHECK(compare(Interval(1, 4), Interval(2, 3)) == Dominance::Incomparable);
  CHECK(compare(Interval(2, 5), Interval(2, 5)) == Dominance::Equal);
  CHECK(dominates(Interval(2, 5), Interval(2, 5)));
  CHECK(!strictly_dominates(Interval(2, 5), Interval(2, 5)));
  CHECK(strictly_dominates(Interval(1, 3), Interval(1, 4)));
  CHECK(comparable(Interval(1, 2), Interval(0, 0)));
  CHECK(!comparable(Interval(1, 4), Interval(2, 3)));
}

TEST_CASE("norm") {
  CHECK(norm(Interval(-3, 2)) == 3.0);
  CHECK(norm(Interval::zero()) == 0.0);
  CHECK(norm(Interval(1, 7)) == 7.0);
}

TEST_CASE("norm axioms") {
  auto rng = rng_for(102);
  std::uniform_real_distribution<double> scalar(-8.0, 8.0);
  for (int i = 0; i < 10000; ++i) {
    const Interval y = random_lattice_interval(rng);
    const Interval z = random_lattice_interval(rng);
    CHECK(norm(y) >= 0.0);
    CHECK((norm(y) == 0.0) == (y == Interval::zero()));
    const double s = scalar(rng);
    CHECK(norm(s * y) == std::fabs(s) * norm(y));
    CHECK(norm(y + z) <= norm(y) + norm(z));
  }
}

TEST_CASE("vector operations") {
  const IntervalVector a{Interval(-3, 2), Interval(0, 1)};
  CHECK(norm(a) == 4.0);
  CHECK(a + IntervalVector::zero(2) == a);
  CHECK(gh_sub(a, a) == IntervalVector::zero(2));

  const std::vector<double> unit{1.0};
  CHECK(dot(unit, IntervalVector{Interval(0, 2)}) == Interval(0, 2));
  const std::vector<double> minus{-1.0};
  CHECK(dot(minus, IntervalVector{Interval(1, 2)}) == Interval(-2, -1));
  CHECK_THROWS_AS(a + IntervalVector::zero(3), DimensionMismatch);
  CHECK_THROWS_AS(dot(unit, a), DimensionMismatch);
  CHECK_THROWS_AS(IntervalVector(std::vector<Interval>{}), DimensionMismatch);

  CHECK(dominates(IntervalVector{Interval(0, 1), Interval(2, 3)},
                  IntervalVector{Interval(0, 2), Interval(2, 3)}));
  CHECK(compare(IntervalVector{Interval(0, 1)}, IntervalVector{Interval(0, 1)}) ==
        Dominance::Equal);
}

TEST_CASE("min and max of comparable intervals") {
  const std::vector<Interval> chain{Interval(4, 9), Interval(1, 2),
                                    Interval(2, 3)};
  const auto [mn, mx] = min_max_comparable(chain);
  CHECK(mn == Interval(1, 2));
  CHECK(mx == Interval(4, 9));

  const std::vector<Interval> single{Interval::zero()};
  const auto [mn1, mx1] = min_max_comparable(single);
  CHECK(mn1 == Interval::zero());
  CHECK(mx1 == Interval::zero());

  const std::vector<Interval> bad{Interval(1, 4), Interval(2, 3)};
  CHECK_THROWS_AS(min_max_comparable(bad), NotAChain);
  CHECK_THROWS_AS(min_max_comparable(std::vector<Interval>{}), EmptySet);
}

TEST_CASE("sum dominance transfers to gh differences") {
  // if X (+) Y precedes Z (+) W then X gh- Z precedes W gh- Y
  auto rng = rng_for(103);
  int checked = 0;
  while (checked < 10000) {
    const Interval x = random_lattice_interval(rng);
    const Interval y = random_lattice_interval(rng);
    const Interval z = random_lattice_interval(rng);
    const double u = random_lattice_nonneg(rng);
    const double v = random_lattice_nonneg(rng);
    const double wlo = std::max(x.lo() + y.lo() - z.lo(),
                                x.hi() + y.hi() - z.hi()) + u;
    const Interval w(std::min(wlo, wlo + v), std::max(wlo, wlo + v));
    if (!dominates(x + y, z + w)) continue;  // borderline rounding, resample
    ++checked;
    CHECK(dominates(gh_sub(x, z), gh_sub(w, y)));
  }
}

TEST_CASE("dominance is transitive") {
  auto rng = rng_for(104);
  auto shifted_up = [&](const Interval& base) {
    const double lo = base.lo() + random_lattice_nonneg(rng);
    const double hi = std::max(lo, base.hi() + random_lattice_nonneg(rng));
    return Interval(lo, hi);
  };
  for (int i = 0; i < 10000; ++i) {
    const Interval x = random_interval(rng);
    const Interval y = shifted_up(x);
    const Interval z = shifted_up(y);
    REQUIRE(dominates(x, y));
    REQUIRE(dominates(y, z));
    CHECK(dominates(x, z));
  }
}

TEST_CASE("dominated sums shift to gh differences") {
  // X precedes Z (+) W implies X gh- Z precedes W
  auto rng = rng_for(105);
  int checked = 0;
  while (checked < 10000) {
    const Interval x = random_lattice_interval(rng);
    const Interval z = random_lattice_interval(rng);
    const double u = random_lattice_nonneg(rng);
    const double v = random_lattice_nonneg(rng);
    const double wlo = std::max(x.lo() - z.lo(), x.hi() - z.hi()) + u;
    const Interval w(wlo, wlo + v);
    if (!dominates(x, z + w)) continue;
    ++checked;
    CHECK(dominates(gh_sub(x, z), w));
  }
}

TEST_CASE("dominance is translation invariant") {
  auto rng = rng_for(106);
  for (int i = 0; i < 10000; ++i) {
    const Interval x = random_lattice_interval(rng);
    const double ylo = x.lo() + random_lattice_nonneg(rng);
    const Interval y(ylo,
                     std::max(ylo, x.hi() + random_lattice_nonneg(rng)));
    const Interval z = random_lattice_interval(rng);
    REQUIRE(dominates(x, y));
    CHECK(dominates(x + z, y + z));
    CHECK(dominates(gh_sub(z, y), gh_sub(z, x)));
  }
}

TEST_CASE("canonical text round trip") {
  CHECK(to_string(Interval(-3, 2)) == "[-3,2]");
  CHECK(parse_interval("[1,7]") == Interval(1, 7));
  CHECK(parse_interval("[ -7.5, -6 ]") == Interval(-7.5, -6.0));
  CHECK_THROWS_AS(parse_interval("[2,1]"), InvalidInterval);
  CHECK_THROWS_AS(parse_interval("1,2"), InvalidInterval);

  auto rng = rng_for(107);
  std::uniform_real_distribution<double> dist(-1e12, 1e12);
  for (int i = 0; i < 2000; ++i) {
    double a = dist(rng), b = dist(rng);
    if (a > b) std::swap(a, b);
    const Interval x(a, b);
    CHECK(parse_interval(to_string(x)) == x);
  }
  const Interval tricky(0.1, 1.0 / 3.0);
  CHECK(parse_interval(to_string(tricky)) == tricky);
}

TEST_CASE("extended intervals") {
  const ExtendedInterval fin{Interval(1, 2)};
  const auto plus = ExtendedInterval::plus_inf();
  const auto minus = ExtendedInterval::minus_inf();

  CHECK(compare(fin, plus) == Dominance::StrictlyDominates);
  CHECK(compare(minus, fin) == Dominance::StrictlyDominates);
  CHECK(compare(plus, plus) == Dominance::Equal);
  CHECK(dominates(minus, plus));

  CHECK(fin + plus == plus);
  CHECK(minus + fin == minus);
  CHECK_THROWS_AS(plus + plus, NonFiniteArithmetic);
  CHECK_THROWS_AS(plus + minus, NonFiniteArithmetic);
  CHECK_THROWS_AS(gh_sub(fin, plus), NonFiniteArithmetic);
  CHECK_THROWS_AS(plus.value(), NonFiniteArithmetic);
  CHECK(gh_sub(fin, fin) == ExtendedInterval{Interval::zero()});
}

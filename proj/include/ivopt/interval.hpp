#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ivopt/errors.hpp"

namespace ivopt {

/// A closed bounded real interval [lo, hi]. Degenerate intervals (lo == hi)
/// embed the reals. Values are immutable after construction; endpoints must
/// be finite and ordered, otherwise the constructor throws InvalidInterval.
class Interval {
 public:
  Interval() : lo_(0.0), hi_(0.0) {}
  Interval(double lo, double hi);

  static Interval point(double v) { return Interval(v, v); }
  static Interval zero() { return Interval(); }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  bool is_degenerate() const { return lo_ == hi_; }
  double width() const { return hi_ - lo_; }
  bool contains(double v) const { return lo_ <= v && v <= hi_; }

  bool operator==(const Interval&) const = default;

 private:
  double lo_;
  double hi_;
};

// Moore arithmetic.
Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator*(double scale, const Interval& a);
Interval divide(const Interval& a, const Interval& b);
Interval neg(const Interval& a);

/// gH-difference: [min(a.lo-b.lo, a.hi-b.hi), max(a.lo-b.lo, a.hi-b.hi)].
/// Unlike Moore subtraction, gh_sub(y, y) == [0,0] for every y.
Interval gh_sub(const Interval& a, const Interval& b);

Interval abs(const Interval& a);
Interval pow(const Interval& a, unsigned exponent);

/// max{|lo|, |hi|}.
double norm(const Interval& a);

/// Dominance classification of an ordered pair under the minimization order:
/// y dominates z when y.lo <= z.lo and y.hi <= z.hi (smaller is better).
/// compare() returns the most specific tag; since "related and unequal"
/// already implies strictness, the plain Dominates/DominatedBy tags only
/// matter as query classes (see dominates()).
enum class Dominance {
  Equal,
  Dominates,
  StrictlyDominates,
  DominatedBy,
  StrictlyDominatedBy,
  Incomparable,
};

Dominance compare(const Interval& y, const Interval& z);
bool dominates(const Interval& y, const Interval& z);           // y "precedes" z
bool strictly_dominates(const Interval& y, const Interval& z);  // strict form
bool comparable(const Interval& y, const Interval& z);

std::string to_string(const Dominance& d);

/// Canonical textual form "[lo,hi]" with shortest decimals that round-trip
/// binary64. parse_interval accepts the same form (spaces allowed after the
/// comma) and throws InvalidInterval otherwise.
std::string to_string(const Interval& a);
Interval parse_interval(std::string_view text);

// Shortest round-trip decimal helpers, shared with the problem-language
// printer.
std::string format_real(double v);
std::optional<double> parse_real(std::string_view text);

/// I(R) extended with -inf/+inf. The infinite tags take part in dominance
/// comparisons and extended-IVF values only; arithmetic between two
/// non-finite values throws NonFiniteArithmetic.
class ExtendedInterval {
 public:
  enum class Kind { Finite, PlusInf, MinusInf };

  ExtendedInterval(Interval v) : kind_(Kind::Finite), value_(v) {}
  static ExtendedInterval plus_inf() { return ExtendedInterval(Kind::PlusInf); }
  static ExtendedInterval minus_inf() { return ExtendedInterval(Kind::MinusInf); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  const Interval& value() const;

  bool operator==(const ExtendedInterval&) const = default;

 private:
  explicit ExtendedInterval(Kind k) : kind_(k), value_() {}

  Kind kind_;
  Interval value_;
};

ExtendedInterval operator+(const ExtendedInterval& a, const ExtendedInterval& b);
ExtendedInterval operator*(double scale, const ExtendedInterval& a);
ExtendedInterval gh_sub(const ExtendedInterval& a, const ExtendedInterval& b);
Dominance compare(const ExtendedInterval& a, const ExtendedInterval& b);
bool dominates(const ExtendedInterval& a, const ExtendedInterval& b);
std::string to_string(const ExtendedInterval& a);

/// An element of I(R)^n: a fixed-length tuple of intervals, n >= 1.
class IntervalVector {
 public:
  explicit IntervalVector(std::vector<Interval> components);
  IntervalVector(std::initializer_list<Interval> components);
  static IntervalVector zero(std::size_t n);

  std::size_t dim() const { return components_.size(); }
  const Interval& operator[](std::size_t i) const { return components_[i]; }
  const std::vector<Interval>& components() const { return components_; }

  auto begin() const { return components_.begin(); }
  auto end() const { return components_.end(); }

  bool operator==(const IntervalVector&) const = default;

 private:
  std::vector<Interval> components_;
};

IntervalVector operator+(const IntervalVector& a, const IntervalVector& b);
IntervalVector operator*(double scale, const IntervalVector& a);
IntervalVector gh_sub(const IntervalVector& a, const IntervalVector& b);

/// Sum of the component norms.
double norm(const IntervalVector& a);

Dominance compare(const IntervalVector& y, const IntervalVector& z);
bool dominates(const IntervalVector& y, const IntervalVector& z);
bool is_zero(const IntervalVector& a);

/// Real-direction contraction: dot(d, G) = (+)_i d_i * G_i.
Interval dot(std::span<const double> direction, const IntervalVector& g);

std::string to_string(const IntervalVector& a);

/// Least and greatest element of a set of pairwise comparable intervals.
/// Both results are members of the input. Throws NotAChain when some pair
/// is incomparable, EmptySet when the input is empty.
std::pair<Interval, Interval> min_max_comparable(std::span<const Interval> s);

}  // namespace ivopt

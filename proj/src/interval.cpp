#include "ivopt/interval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ivopt {

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (std::isnan(lo) || std::isnan(hi)) {
    throw InvalidInterval("interval endpoint is NaN");
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw InvalidInterval("interval endpoint is not finite");
  }
  if (lo > hi) {
    throw InvalidInterval("interval endpoints out of order: " +
                          format_real(lo) + " > " + format_real(hi));
  }
}

Interval operator+(const Interval& a, const Interval& b) {
  return Interval(a.lo() + b.lo(), a.hi() + b.hi());
}

Interval operator-(const Interval& a, const Interval& b) {
  return Interval(a.lo() - b.hi(), a.hi() - b.lo());
}

Interval operator*(const Interval& a, const Interval& b) {
  const double p1 = a.lo() * b.lo();
  const double p2 = a.lo() * b.hi();
  const double p3 = a.hi() * b.lo();
  const double p4 = a.hi() * b.hi();
  return Interval(std::min(std::min(p1, p2), std::min(p3, p4)),
                  std::max(std::max(p1, p2), std::max(p3, p4)));
}

Interval operator*(double scale, const Interval& a) {
  if (scale >= 0.0) {
    return Interval(scale * a.lo(), scale * a.hi());
  }
  return Interval(scale * a.hi(), scale * a.lo());
}

Interval divide(const Interval& a, const Interval& b) {
  if (b.lo() <= 0.0 && 0.0 <= b.hi()) {
    throw DivisionByIntervalContainingZero();
  }
  return a * Interval(1.0 / b.hi(), 1.0 / b.lo());
}

Interval neg(const Interval& a) { return -1.0 * a; }

Interval gh_sub(const Interval& a, const Interval& b) {
  const double dl = a.lo() - b.lo();
  const double dh = a.hi() - b.hi();
  return Interval(std::min(dl, dh), std::max(dl, dh));
}

Interval abs(const Interval& a) {
  if (a.lo() >= 0.0) return a;
  if (a.hi() <= 0.0) return Interval(-a.hi(), -a.lo());
  return Interval(0.0, std::max(-a.lo(), a.hi()));
}

namespace {

// Left-fold repeated multiplication so that degenerate powers match the
// naive real expression v*v*...*v bit for bit.
double real_pow(double v, unsigned e) {
  if (e == 0) return 1.0;
  double r = v;
  for (unsigned i = 1; i < e; ++i) r = r * v;
  return r;
}

}  // namespace

Interval pow(const Interval& a, unsigned exponent) {
  if (exponent == 0) return Interval(1.0, 1.0);
  if (exponent % 2 == 1 || a.lo() >= 0.0) {
    return Interval(real_pow(a.lo(), exponent), real_pow(a.hi(), exponent));
  }
  if (a.hi() <= 0.0) {
    return Interval(real_pow(a.hi(), exponent), real_pow(a.lo(), exponent));
  }
  return Interval(0.0, std::max(real_pow(a.lo(), exponent),
                                real_pow(a.hi(), exponent)));
}

double norm(const Interval& a) {
  return std::max(std::fabs(a.lo()), std::fabs(a.hi()));
}

Dominance compare(const Interval& y, const Interval& z) {
  const bool yz = y.lo() <= z.lo() && y.hi() <= z.hi();
  const bool zy = z.lo() <= y.lo() && z.hi() <= y.hi();
  if (yz && zy) return Dominance::Equal;
  if (yz) return Dominance::StrictlyDominates;
  if (zy) return Dominance::StrictlyDominatedBy;
  return Dominance::Incomparable;
}

namespace {

bool dominance_is_weak(Dominance d) {
  return d == Dominance::Equal || d == Dominance::Dominates ||
         d == Dominance::StrictlyDominates;
}

}  // namespace

bool dominates(const Interval& y, const Interval& z) {
  return dominance_is_weak(compare(y, z));
}

bool strictly_dominates(const Interval& y, const Interval& z) {
  return compare(y, z) == Dominance::StrictlyDominates;
}

bool comparable(const Interval& y, const Interval& z) {
  return compare(y, z) != Dominance::Incomparable;
}

std::string to_string(const Dominance& d) {
  switch (d) {
    case Dominance::Equal: return "Equal";
    case Dominance::Dominates: return "Dominates";
    case Dominance::StrictlyDominates: return "StrictlyDominates";
    case Dominance::DominatedBy: return "DominatedBy";
    case Dominance::StrictlyDominatedBy: return "StrictlyDominatedBy";
    case Dominance::Incomparable: return "Incomparable";
  }
  return "?";
}

std::string format_real(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::optional<double> parse_real(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) return std::nullopt;
  return value;
}

std::string to_string(const Interval& a) {
  return "[" + format_real(a.lo()) + "," + format_real(a.hi()) + "]";
}

Interval parse_interval(std::string_view text) {
  auto fail = [&]() -> Interval {
    throw InvalidInterval("cannot parse interval from '" + std::string(text) +
                          "'");
  };
  auto skip_ws = [&](std::size_t i) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    return i;
  };
  std::size_t i = skip_ws(0);
  if (i >= text.size() || text[i] != '[') return fail();
  ++i;
  i = skip_ws(i);
  const std::size_t comma = text.find(',', i);
  if (comma == std::string_view::npos) return fail();
  std::size_t lo_end = comma;
  while (lo_end > i && (text[lo_end - 1] == ' ' || text[lo_end - 1] == '\t'))
    --lo_end;
  const auto lo = parse_real(text.substr(i, lo_end - i));
  if (!lo) return fail();
  i = skip_ws(comma + 1);
  const std::size_t close = text.find(']', i);
  if (close == std::string_view::npos) return fail();
  std::size_t hi_end = close;
  while (hi_end > i && (text[hi_end - 1] == ' ' || text[hi_end - 1] == '\t'))
    --hi_end;
  const auto hi = parse_real(text.substr(i, hi_end - i));
  if (!hi) return fail();
  if (skip_ws(close + 1) != text.size()) return fail();
  return Interval(*lo, *hi);
}

const Interval& ExtendedInterval::value() const {
  if (kind_ != Kind::Finite) {
    throw NonFiniteArithmetic("no finite value in an infinite tag");
  }
  return value_;
}

ExtendedInterval operator+(const ExtendedInterval& a,
                           const ExtendedInterval& b) {
  if (a.is_finite() && b.is_finite()) {
    return ExtendedInterval(a.value() + b.value());
  }
  if (!a.is_finite() && !b.is_finite()) {
    throw NonFiniteArithmetic("arithmetic between two non-finite values");
  }
  return a.is_finite() ? b : a;
}

ExtendedInterval operator*(double scale, const ExtendedInterval& a) {
  if (a.is_finite()) return ExtendedInterval(scale * a.value());
  if (scale == 0.0) return ExtendedInterval(Interval::zero());
  if (scale > 0.0) return a;
  return a.kind() == ExtendedInterval::Kind::PlusInf
             ? ExtendedInterval::minus_inf()
             : ExtendedInterval::plus_inf();
}

ExtendedInterval gh_sub(const ExtendedInterval& a, const ExtendedInterval& b) {
  if (!a.is_finite() || !b.is_finite()) {
    throw NonFiniteArithmetic("gH-difference with a non-finite value");
  }
  return ExtendedInterval(gh_sub(a.value(), b.value()));
}

Dominance compare(const ExtendedInterval& a, const ExtendedInterval& b) {
  using Kind = ExtendedInterval::Kind;
  if (a.kind() == b.kind()) {
    return a.is_finite() ? compare(a.value(), b.value()) : Dominance::Equal;
  }
  if (a.kind() == Kind::MinusInf || b.kind() == Kind::PlusInf) {
    return Dominance::StrictlyDominates;
  }
  return Dominance::StrictlyDominatedBy;
}

bool dominates(const ExtendedInterval& a, const ExtendedInterval& b) {
  return dominance_is_weak(compare(a, b));
}

std::string to_string(const ExtendedInterval& a) {
  switch (a.kind()) {
    case ExtendedInterval::Kind::PlusInf: return "+inf";
    case ExtendedInterval::Kind::MinusInf: return "-inf";
    default: return to_string(a.value());
  }
}

IntervalVector::IntervalVector(std::vector<Interval> components)
    : components_(std::move(components)) {
  if (components_.empty()) {
    throw DimensionMismatch("interval vector must have dimension >= 1");
  }
}

IntervalVector::IntervalVector(std::initializer_list<Interval> components)
    : IntervalVector(std::vector<Interval>(components)) {}

IntervalVector IntervalVector::zero(std::size_t n) {
  return IntervalVector(std::vector<Interval>(n, Interval::zero()));
}

namespace {

void check_dims(const IntervalVector& a, const IntervalVector& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("interval vector dimensions differ: " +
                            std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()));
  }
}

}  // namespace

IntervalVector operator+(const IntervalVector& a, const IntervalVector& b) {
  check_dims(a, b);
  std::vector<Interval> out;
  out.reserve(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out.push_back(a[i] + b[i]);
  return IntervalVector(std::move(out));
}

IntervalVector operator*(double scale, const IntervalVector& a) {
  std::vector<Interval> out;
  out.reserve(a.dim());
  for (const auto& c : a) out.push_back(scale * c);
  return IntervalVector(std::move(out));
}

IntervalVector gh_sub(const IntervalVector& a, const IntervalVector& b) {
  check_dims(a, b);
  std::vector<Interval> out;
  out.reserve(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out.push_back(gh_sub(a[i], b[i]));
  return IntervalVector(std::move(out));
}

double norm(const IntervalVector& a) {
  double total = 0.0;
  for (const auto& c : a) total += norm(c);
  return total;
}

Dominance compare(const IntervalVector& y, const IntervalVector& z) {
  check_dims(y, z);
  bool yz = true;
  bool zy = true;
  for (std::size_t i = 0; i < y.dim(); ++i) {
    yz = yz && y[i].lo() <= z[i].lo() && y[i].hi() <= z[i].hi();
    zy = zy && z[i].lo() <= y[i].lo() && z[i].hi() <= y[i].hi();
  }
  if (yz && zy) return Dominance::Equal;
  if (yz) return Dominance::StrictlyDominates;
  if (zy) return Dominance::StrictlyDominatedBy;
  return Dominance::Incomparable;
}

bool dominates(const IntervalVector& y, const IntervalVector& z) {
  return dominance_is_weak(compare(y, z));
}

bool is_zero(const IntervalVector& a) {
  for (const auto& c : a) {
    if (c.lo() != 0.0 || c.hi() != 0.0) return false;
  }
  return true;
}

Interval dot(std::span<const double> direction, const IntervalVector& g) {
  if (direction.size() != g.dim()) {
    throw DimensionMismatch("direction dimension " +
                            std::to_string(direction.size()) +
                            " does not match vector dimension " +
                            std::to_string(g.dim()));
  }
  Interval acc = direction[0] * g[0];
  for (std::size_t i = 1; i < g.dim(); ++i) {
    acc = acc + direction[i] * g[i];
  }
  return acc;
}

std::string to_string(const IntervalVector& a) {
  std::string out = "(";
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (i) out += ", ";
    out += to_string(a[i]);
  }
  out += ")";
  return out;
}

std::pair<Interval, Interval> min_max_comparable(std::span<const Interval> s) {
  if (s.empty()) throw EmptySet("min/max of an empty interval set");
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (s[a].lo() != s[b].lo()) return s[a].lo() < s[b].lo();
    return s[a].hi() < s[b].hi();
  });
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    if (!dominates(s[order[i]], s[order[i + 1]])) {
      throw NotAChain("intervals " + to_string(s[order[i]]) + " and " +
                      to_string(s[order[i + 1]]) + " are not comparable");
    }
  }
  return {s[order.front()], s[order.back()]};
}

}  // namespace ivopt

#include "ivopt/optimality.hpp"

#include "ivopt/sets.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <thread>

#include <json.hpp>

namespace ivopt {

bool Iop::feasible(std::span<const double> y) const {
  if (!box.contains(y)) return false;
  for (const auto& g : constraints) {
    if (g(y) > 0.0) return false;
  }
  return true;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string CheckReport::to_json() const {
  nlohmann::json j;
  j["verdict"] = to_string(verdict);
  j["residual"] = residual;
  if (certificate) {
    j["certificate"] = {{"delta0", certificate->delta0},
                        {"delta", certificate->deltas}};
  }
  if (witness) j["witness"] = *witness;
  j["grid"] = {{"points", grid.points},
               {"skipped_infeasible", grid.skipped_infeasible}};
  if (!note.empty()) j["note"] = note;
  return j.dump();
}

std::vector<std::vector<double>> uniform_grid(const Box& box,
                                              std::size_t per_axis) {
  if (per_axis < 2) throw Error("grid needs at least 2 points per axis");
  const std::size_t n = box.dim();
  std::vector<std::vector<double>> out;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<double> point(n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto& r = box.range(j);
      point[j] = r.lo() + r.width() * (static_cast<double>(idx[j]) /
                                       static_cast<double>(per_axis - 1));
    }
    out.push_back(std::move(point));
    std::size_t j = 0;
    for (; j < n; ++j) {
      if (++idx[j] < per_axis) break;
      idx[j] = 0;
    }
    if (j == n) break;
  }
  return out;
}

namespace {

// Runs pred over the grid (optionally in parallel chunks) and returns the
// first index where it reports a violation, so both modes give the same
// witness.
std::optional<std::size_t> first_violation(
    std::span<const std::vector<double>> grid,
    const std::function<bool(const std::vector<double>&)>& violates,
    bool parallel) {
  if (!parallel || grid.size() < 256) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (violates(grid[i])) return i;
    }
    return std::nullopt;
  }
  const std::size_t workers =
      std::max<std::size_t>(2, std::thread::hardware_concurrency());
  const std::size_t chunk = (grid.size() + workers - 1) / workers;
  std::vector<std::future<std::optional<std::size_t>>> futures;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(grid.size(), begin + chunk);
    if (begin >= end) break;
    futures.push_back(std::async(std::launch::async, [&, begin, end]() {
      std::optional<std::size_t> hit;
      for (std::size_t i = begin; i < end; ++i) {
        if (violates(grid[i])) {
          hit = i;
          break;
        }
      }
      return hit;
    }));
  }
  std::optional<std::size_t> best;
  for (auto& f : futures) {
    const auto hit = f.get();
    if (hit && (!best || *hit < *best)) best = hit;
  }
  return best;
}

CheckReport efficiency_oracle(const Iop& p, std::span<const double> ybar,
                              std::span<const std::vector<double>> grid,
                              bool strict_dominators, bool parallel) {
  if (!p.feasible(ybar)) {
    throw InfeasiblePoint("reference point is infeasible");
  }
  const Interval at_ybar = p.objective.eval(ybar);
  std::atomic<std::size_t> skipped{0};
  auto violates = [&](const std::vector<double>& y) {
    if (!p.feasible(y)) {
      skipped.fetch_add(1, std::memory_order_relaxed);
      return false;
    }
    const Interval value = p.objective.eval(y);
    if (strict_dominators) return strictly_dominates(value, at_ybar);
    return !dominates(at_ybar, value);
  };
  const auto hit = first_violation(grid, violates, parallel);
  CheckReport report;
  report.grid.points = grid.size();
  report.grid.skipped_infeasible = skipped.load();
  if (hit) {
    report.verdict = Verdict::Fails;
    report.witness = grid[*hit];
  } else {
    report.verdict = Verdict::Holds;
    report.note = "holds on the supplied grid";
  }
  return report;
}

}  // namespace

CheckReport is_efficient_oracle(const Iop& p, std::span<const double> ybar,
                                std::span<const std::vector<double>> grid,
                                bool parallel) {
  return efficiency_oracle(p, ybar, grid, /*strict_dominators=*/true,
                           parallel);
}

CheckReport is_weak_efficient_oracle(const Iop& p,
                                     std::span<const double> ybar,
                                     std::span<const std::vector<double>> grid,
                                     bool parallel) {
  return efficiency_oracle(p, ybar, grid, /*strict_dominators=*/false,
                           parallel);
}

CheckReport fermat_check(const Ivf& t, std::span<const double> ybar,
                         const SubdiffSet& subdiff) {
  if (ybar.size() != t.dim()) {
    throw DimensionMismatch("fermat point dimension mismatch");
  }
  CheckReport report;
  report.residual = zero_distance(subdiff);
  report.verdict = contains_zero(subdiff) ? Verdict::Holds : Verdict::Fails;
  return report;
}

Ivf tstar_build(const Iop& p, const Interval& t_inf) {
  const Iop problem = p;
  auto value_at = [problem, t_inf](std::span<const double> y) {
    std::vector<Interval> values;
    values.reserve(problem.constraints.size() + 1);
    values.push_back(gh_sub(problem.objective.eval(y), t_inf));
    for (const auto& g : problem.constraints) {
      values.push_back(Interval::point(g(y)));
    }
    return sup_set(values);
  };
  auto lower = [value_at](std::span<const double> y) {
    return value_at(y).lo();
  };
  auto upper = [value_at](std::span<const double> y) {
    return value_at(y).hi();
  };
  return Ivf(lower, upper, p.box);
}

CheckReport slater_check(const Iop& p,
                         std::span<const std::vector<double>> samples) {
  CheckReport report;
  report.grid.points = samples.size();
  if (p.constraints.empty()) {
    report.verdict = Verdict::Holds;
    report.note = "no constraints, strict feasibility is vacuous";
    return report;
  }
  for (const auto& y : samples) {
    if (!p.box.contains(y)) continue;
    bool strict = true;
    for (const auto& g : p.constraints) {
      if (!(g(y) < 0.0)) {
        strict = false;
        break;
      }
    }
    if (strict) {
      report.verdict = Verdict::Holds;
      report.witness = y;
      return report;
    }
  }
  report.verdict = Verdict::Inconclusive;
  report.note = "no sampled point is strictly feasible";
  return report;
}

namespace {

std::vector<std::size_t> active_constraints(const Iop& p,
                                            std::span<const double> ybar,
                                            double activity_tol) {
  std::vector<std::size_t> active;
  for (std::size_t j = 0; j < p.constraints.size(); ++j) {
    if (p.constraints[j](ybar) >= -activity_tol) active.push_back(j);
  }
  return active;
}

IntervalVector embed(const std::vector<double>& real_vector) {
  std::vector<Interval> comps;
  comps.reserve(real_vector.size());
  for (double v : real_vector) comps.push_back(Interval::point(v));
  return IntervalVector(std::move(comps));
}

// delta0 * subdiff_T (+) sum over active j of deltas[j] * grad g_j.
SubdiffSet assemble_stationarity_set(
    const SubdiffSet& objective_subdiff, double delta0,
    std::span<const std::vector<double>> gradients,
    std::span<const std::size_t> active, std::span<const double> deltas) {
  std::vector<std::pair<double, SubdiffSet>> terms;
  terms.reserve(active.size() + 1);
  terms.emplace_back(delta0, objective_subdiff);
  for (std::size_t k = 0; k < active.size(); ++k) {
    terms.emplace_back(deltas[k],
                       SubdiffSet::singleton(embed(gradients[active[k]])));
  }
  return SubdiffSet::scaled_sum(std::move(terms));
}

struct MultiplierSearch {
  std::vector<double> best;
  double residual = std::numeric_limits<double>::infinity();
};

// Enumerates compositions (k_0,...,k_m) of `resolution` and evaluates the
// residual at the simplex point k/resolution.
void simplex_scan(std::size_t coords, int resolution,
                  const std::function<double(std::span<const double>)>& value,
                  MultiplierSearch& search) {
  std::vector<int> counts(coords, 0);
  std::vector<double> point(coords, 0.0);
  std::function<void(std::size_t, int)> recurse = [&](std::size_t i,
                                                      int remaining) {
    if (i + 1 == coords) {
      counts[i] = remaining;
      for (std::size_t k = 0; k < coords; ++k) {
        point[k] = static_cast<double>(counts[k]) /
                   static_cast<double>(resolution);
      }
      const double r = value(point);
      if (r < search.residual) {
        search.residual = r;
        search.best = point;
      }
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      counts[i] = c;
      recurse(i + 1, remaining - c);
    }
  };
  recurse(0, resolution);
}

// Local pairwise-transfer refinement on the simplex; the step halves until
// the residual target or the floor is reached.
void simplex_refine(const std::function<double(std::span<const double>)>& value,
                    double initial_step, double target,
                    MultiplierSearch& search) {
  double step = initial_step;
  while (step > 1e-12 && search.residual > target) {
    bool improved = false;
    for (std::size_t i = 0; i < search.best.size() && !improved; ++i) {
      for (std::size_t j = 0; j < search.best.size(); ++j) {
        if (i == j || search.best[j] < step) continue;
        std::vector<double> cand = search.best;
        cand[j] -= step;
        cand[i] += step;
        const double r = value(cand);
        if (r < search.residual) {
          search.residual = r;
          search.best = std::move(cand);
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
}

void box_refine(const std::function<double(std::span<const double>)>& value,
                double initial_step, double delta_max, double target,
                MultiplierSearch& search) {
  double step = initial_step;
  while (step > 1e-14 * std::max(1.0, delta_max) &&
         search.residual > target) {
    bool improved = false;
    for (std::size_t i = 0; i < search.best.size() && !improved; ++i) {
      for (double sign : {1.0, -1.0}) {
        std::vector<double> cand = search.best;
        cand[i] = std::clamp(cand[i] + sign * step, 0.0, delta_max);
        if (cand[i] == search.best[i]) continue;
        const double r = value(cand);
        if (r < search.residual) {
          search.residual = r;
          search.best = std::move(cand);
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
}

Certificate full_certificate(double delta0, std::size_t constraint_count,
                             std::span<const std::size_t> active,
                             std::span<const double> active_deltas) {
  Certificate c;
  c.delta0 = delta0;
  c.deltas.assign(constraint_count, 0.0);
  for (std::size_t k = 0; k < active.size(); ++k) {
    c.deltas[active[k]] = active_deltas[k];
  }
  return c;
}

}  // namespace

CheckReport fritz_john_check(
    const Iop& p, std::span<const double> ybar,
    const SubdiffSet& objective_subdiff,
    std::span<const std::vector<double>> gradients, const MultiplierGrid& mg) {
  if (!p.feasible(ybar)) {
    throw InfeasiblePoint("fritz-john point is infeasible");
  }
  if (gradients.size() != p.constraints.size()) {
    throw DimensionMismatch("one gradient per constraint is required");
  }
  if (mg.resolution < 2) throw Error("multiplier resolution must be >= 2");
  const auto active = active_constraints(p, ybar, mg.activity_tol);
  const std::size_t coords = active.size() + 1;  // delta_0 plus active deltas

  auto residual_at = [&](std::span<const double> deltas) {
    return zero_distance(assemble_stationarity_set(
        objective_subdiff, deltas[0], gradients, active, deltas.subspan(1)));
  };

  MultiplierSearch search;
  const int resolution = coords <= 3 ? mg.resolution
                                     : std::min(mg.resolution, 20);
  simplex_scan(coords, resolution, residual_at, search);
  simplex_refine(residual_at, 1.0 / resolution, mg.residual_tol, search);

  CheckReport report;
  report.residual = search.residual;
  const double delta0 = search.best[0];
  const std::vector<double> act(search.best.begin() + 1, search.best.end());
  if (search.residual <= mg.residual_tol) {
    report.verdict = Verdict::Holds;
    report.certificate =
        full_certificate(delta0, p.constraints.size(), active, act);
  } else {
    report.verdict = Verdict::Fails;
  }
  return report;
}

CheckReport kkt_check(const Iop& p, std::span<const double> ybar,
                      const SubdiffSet& objective_subdiff,
                      std::span<const std::vector<double>> gradients,
                      const MultiplierGrid& mg) {
  if (!p.feasible(ybar)) {
    throw InfeasiblePoint("kkt point is infeasible");
  }
  if (gradients.size() != p.constraints.size()) {
    throw DimensionMismatch("one gradient per constraint is required");
  }
  if (mg.resolution < 2) throw Error("multiplier resolution must be >= 2");

  const std::size_t n = p.dim();
  const std::size_t per_axis = n == 1 ? 201 : (n == 2 ? 45 : (n == 3 ? 13 : 5));
  const auto samples = uniform_grid(p.box, per_axis);
  const CheckReport slater = slater_check(p, samples);
  if (slater.verdict != Verdict::Holds) {
    CheckReport report;
    report.verdict = Verdict::Inconclusive;
    report.note = "slater condition not witnessed; kkt necessity unavailable";
    return report;
  }

  const auto active = active_constraints(p, ybar, mg.activity_tol);
  auto residual_at = [&](std::span<const double> deltas) {
    return zero_distance(assemble_stationarity_set(
        objective_subdiff, 1.0, gradients, active, deltas));
  };

  MultiplierSearch search;
  if (active.empty()) {
    search.best = {};
    search.residual = residual_at(search.best);
  } else {
    const int resolution = active.size() <= 2 ? mg.resolution
                                              : std::min(mg.resolution, 20);
    std::vector<int> idx(active.size(), 0);
    std::vector<double> point(active.size(), 0.0);
    while (true) {
      for (std::size_t k = 0; k < active.size(); ++k) {
        point[k] = mg.delta_max * (static_cast<double>(idx[k]) /
                                   static_cast<double>(resolution));
      }
      const double r = residual_at(point);
      if (r < search.residual) {
        search.residual = r;
        search.best = point;
      }
      std::size_t k = 0;
      for (; k < active.size(); ++k) {
        if (++idx[k] <= resolution) break;
        idx[k] = 0;
      }
      if (k == active.size()) break;
    }
    box_refine(residual_at, mg.delta_max / resolution, mg.delta_max,
               mg.residual_tol, search);
  }

  CheckReport report;
  report.residual = search.residual;
  if (search.residual <= mg.residual_tol) {
    report.verdict = Verdict::Holds;
    report.certificate =
        full_certificate(1.0, p.constraints.size(), active, search.best);
  } else {
    report.verdict = Verdict::Fails;
  }
  return report;
}

CheckReport composite_check(const Ivf& t_smooth,
                            const SubdiffSet& h_subdiff_at_ybar,
                            std::span<const double> ybar,
                            const DiffConfig& cfg) {
  const IntervalVector candidate = -1.0 * gh_gradient(t_smooth, ybar, cfg);
  CheckReport report;
  report.note =
      "holds certifies weak efficiency only when the smooth part is convex";
  switch (h_subdiff_at_ybar.kind()) {
    case SubdiffSet::Kind::Singleton: {
      const double gap = norm(gh_sub(candidate, h_subdiff_at_ybar.value()));
      report.residual = gap;
      report.verdict = gap <= cfg.tol ? Verdict::Holds : Verdict::Fails;
      break;
    }
    case SubdiffSet::Kind::Box: {
      const auto& lower = h_subdiff_at_ybar.lower();
      const auto& upper = h_subdiff_at_ybar.upper();
      if (dominates(lower, candidate) && dominates(candidate, upper)) {
        report.verdict = Verdict::Holds;
        report.residual = 0.0;
      } else {
        report.verdict = Verdict::Fails;
        double gap = 0.0;
        for (std::size_t j = 0; j < candidate.dim(); ++j) {
          gap += std::max(0.0, lower[j].lo() - candidate[j].lo());
          gap += std::max(0.0, lower[j].hi() - candidate[j].hi());
          gap += std::max(0.0, candidate[j].lo() - upper[j].lo());
          gap += std::max(0.0, candidate[j].hi() - upper[j].hi());
        }
        report.residual = gap;
      }
      break;
    }
    case SubdiffSet::Kind::ScaledSum:
      throw UnsupportedShape(
          "composite membership needs a singleton or box subdifferential");
  }
  return report;
}

std::vector<std::vector<double>> constraint_gradients(
    const Iop& p, std::span<const double> ybar, const DiffConfig& cfg) {
  std::vector<std::vector<double>> out;
  out.reserve(p.constraints.size());
  for (const auto& g : p.constraints) {
    Ivf as_ivf(g, g, p.box);
    const IntervalVector grad = gh_gradient(as_ivf, ybar, cfg);
    std::vector<double> real;
    real.reserve(grad.dim());
    for (const auto& c : grad) real.push_back(c.lo());
    out.push_back(std::move(real));
  }
  return out;
}

}  // namespace ivopt

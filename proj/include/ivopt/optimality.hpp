#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ivopt/ivf.hpp"
#include "ivopt/subdiff.hpp"

namespace ivopt {

/// An interval optimization problem: minimize an IVF objective over a box
/// subject to real-valued inequality constraints g_j(y) <= 0.
struct Iop {
  Ivf objective;
  std::vector<RealFn> constraints;
  Box box;

  std::size_t dim() const { return box.dim(); }
  bool feasible(std::span<const double> y) const;
};

enum class Verdict { Holds, Fails, Inconclusive };
std::string to_string(Verdict v);

struct Certificate {
  double delta0 = 1.0;
  std::vector<double> deltas;  // one per constraint
};

struct GridInfo {
  std::size_t points = 0;
  std::size_t skipped_infeasible = 0;
};

/// Outcome of an optimality check. "Holds" from a grid oracle always means
/// "holds on the supplied grid".
struct CheckReport {
  Verdict verdict = Verdict::Inconclusive;
  double residual = 0.0;
  std::optional<Certificate> certificate;
  std::optional<std::vector<double>> witness;
  GridInfo grid;
  std::string note;

  std::string to_json() const;
};

/// Search space for Fritz-John / KKT multipliers.
struct MultiplierGrid {
  int resolution = 100;
  double delta_max = 10.0;
  double residual_tol = 1e-9;
  double activity_tol = 1e-9;
};

/// Uniform grid over a box, per_axis points per coordinate (cartesian).
std::vector<std::vector<double>> uniform_grid(const Box& box,
                                              std::size_t per_axis);

/// Grid falsifier for efficiency: fails with a witness when some feasible
/// grid point y has T(y) strictly dominating T(ybar). Infeasible grid points
/// are skipped; an infeasible ybar throws.
CheckReport is_efficient_oracle(const Iop& p, std::span<const double> ybar,
                                std::span<const std::vector<double>> grid,
                                bool parallel = false);

/// Grid falsifier for weak efficiency: fails with a witness when some
/// feasible grid point y has NOT(T(ybar) dominated-by T(y)).
CheckReport is_weak_efficient_oracle(const Iop& p,
                                     std::span<const double> ybar,
                                     std::span<const std::vector<double>> grid,
                                     bool parallel = false);

/// Stationarity at an unconstrained point: zero must belong to the supplied
/// subdifferential.
CheckReport fermat_check(const Ivf& t, std::span<const double> ybar,
                         const SubdiffSet& subdiff);

/// The scalarization sup{T(y) gh- t_inf, g_1(y), ..., g_p(y)} whose weak
/// efficient points coincide with those of the constrained problem.
Ivf tstar_build(const Iop& p, const Interval& t_inf);

/// Holds with a strictly feasible witness among the samples, Inconclusive
/// otherwise (vacuously Holds without constraints).
CheckReport slater_check(const Iop& p,
                         std::span<const std::vector<double>> samples);

/// Fritz-John stationarity: searches simplex multipliers (delta_0, ...,
/// delta_p), zero forced on inactive constraints, for zero membership in
/// delta_0 * subdiff_T (+) sum_j delta_j * grad g_j. Fails with the minimal
/// residual found after local refinement.
CheckReport fritz_john_check(const Iop& p, std::span<const double> ybar,
                             const SubdiffSet& objective_subdiff,
                             std::span<const std::vector<double>> constraint_gradients,
                             const MultiplierGrid& mg = {});

/// KKT stationarity: delta_0 fixed at 1, active multipliers searched over
/// [0, delta_max]. Reports Inconclusive when no strictly feasible point
/// witnesses the Slater condition.
CheckReport kkt_check(const Iop& p, std::span<const double> ybar,
                      const SubdiffSet& objective_subdiff,
                      std::span<const std::vector<double>> constraint_gradients,
                      const MultiplierGrid& mg = {});

/// Composite-model stationarity for min T (+) H with T smooth: holds when
/// (-1) * grad T(ybar) belongs to the supplied subdifferential of H. A hold
/// certifies weak efficiency only when T is convex; the report notes this.
CheckReport composite_check(const Ivf& t_smooth,
                            const SubdiffSet& h_subdiff_at_ybar,
                            std::span<const double> ybar,
                            const DiffConfig& cfg = {});

/// Gradients of the constraints at ybar by the same refinement scheme as
/// gh_gradient, returned as real vectors.
std::vector<std::vector<double>> constraint_gradients(
    const Iop& p, std::span<const double> ybar, const DiffConfig& cfg = {});

}  // namespace ivopt

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ivopt/dsl.hpp"

namespace {

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ivopt::CompiledProblem load(const std::string& path) {
  return ivopt::compile(ivopt::parse_text(read_file(path)));
}

void require_point(const std::vector<double>& at, std::size_t dim) {
  if (at.size() != dim) {
    throw UsageError("--at needs " + std::to_string(dim) +
                     " comma-separated values");
  }
}

int verdict_exit(ivopt::Verdict v) {
  switch (v) {
    case ivopt::Verdict::Holds: return kExitHolds;
    case ivopt::Verdict::Fails: return kExitFails;
    case ivopt::Verdict::Inconclusive: return kExitInconclusive;
  }
  return kExitUsage;
}

std::string point_text(const std::vector<double>& y) {
  std::string out;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i) out += ",";
    out += ivopt::format_real(y[i]);
  }
  return out;
}

void print_report(const ivopt::CheckReport& report, bool as_json) {
  if (as_json) {
    std::cout << report.to_json() << "\n";
    return;
  }
  std::cout << "verdict: " << ivopt::to_string(report.verdict) << "\n";
  std::cout << "residual: " << ivopt::format_real(report.residual) << "\n";
  if (report.certificate) {
    std::cout << "certificate: delta0=" +
                     ivopt::format_real(report.certificate->delta0) +
                     " delta=[";
    for (std::size_t j = 0; j < report.certificate->deltas.size(); ++j) {
      if (j) std::cout << ",";
      std::cout << ivopt::format_real(report.certificate->deltas[j]);
    }
    std::cout << "]\n";
  }
  if (report.witness) {
    std::cout << "witness: " << point_text(*report.witness) << "\n";
  }
  if (!report.note.empty()) std::cout << "note: " << report.note << "\n";
}

// Subdifferential of the nonsmooth split part at a point. Recognizes the
// shapes the checkers can represent exactly: a constant, and a weighted
// absolute value C * abs(y_p) on its kink plane. Everything else falls back
// to the numeric smooth subdifferential.
ivopt::SubdiffSet nonsmooth_subdiff(const ivopt::CompiledProblem& cp,
                                    const std::vector<double>& at,
                                    const ivopt::DiffConfig& cfg) {
  using Kind = ivopt::Ast::Kind;
  const auto& ast = cp.nonsmooth_ast;
  const std::size_t n = cp.iop.dim();
  if (ast->kind == Kind::IntervalLit || ast->kind == Kind::NumberLit) {
    return ivopt::SubdiffSet::singleton(ivopt::IntervalVector::zero(n));
  }
  const ivopt::Ast* weight = nullptr;
  const ivopt::Ast* absolute = nullptr;
  if (ast->kind == Kind::Abs) {
    absolute = ast.get();
  } else if (ast->kind == Kind::Mul) {
    const auto* left = ast->children[0].get();
    const auto* right = ast->children[1].get();
    if (left->kind == Kind::Abs) {
      absolute = left;
      weight = right;
    } else if (right->kind == Kind::Abs) {
      absolute = right;
      weight = left;
    }
  }
  if (absolute != nullptr && absolute->children[0]->kind == Kind::Var &&
      (weight == nullptr || weight->kind == Kind::IntervalLit ||
       weight->kind == Kind::NumberLit)) {
    ivopt::Interval c = ivopt::Interval::point(1.0);
    if (weight != nullptr) {
      c = weight->kind == Kind::IntervalLit
              ? weight->interval
              : ivopt::Interval::point(weight->number);
    }
    const std::size_t p = absolute->children[0]->var_index;
    if (at[p] == 0.0 && ivopt::dominates(ivopt::Interval::zero(), c)) {
      return ivopt::subdiff_abs_weighted(c, n, p + 1, at);
    }
  }
  return ivopt::subdiff_smooth(*cp.nonsmooth, at, cfg);
}

int run(int argc, char** argv) {
  CLI::App app{"interval-valued optimization toolkit"};
  app.require_subcommand(1);

  std::string file;
  std::vector<double> at;
  std::size_t grid_n = 101;
  int simplex_res = 100;
  double tol = 1e-9;
  bool as_json = false;
  bool parallel = false;

  auto* cmd_parse = app.add_subcommand("parse", "parse and echo a problem");
  cmd_parse->add_option("file", file)->required();

  auto* cmd_eval = app.add_subcommand("eval", "evaluate the objective");
  cmd_eval->add_option("file", file)->required();
  cmd_eval->add_option("--at", at, "evaluation point")
      ->required()
      ->delimiter(',');

  auto* cmd_check = app.add_subcommand("check", "run an optimality check");
  std::string kind;
  cmd_check->add_option("kind", kind, "fermat|fj|kkt|composite")->required();
  cmd_check->add_option("file", file)->required();
  cmd_check->add_option("--at", at, "candidate point")
      ->required()
      ->delimiter(',');
  cmd_check->add_option("--grid", grid_n, "grid points per axis");
  cmd_check->add_option("--simplex-res", simplex_res,
                        "multiplier grid resolution");
  cmd_check->add_option("--tol", tol, "residual tolerance");
  cmd_check->add_flag("--json", as_json);
  cmd_check->add_flag("--parallel", parallel);

  auto* cmd_eff = app.add_subcommand("efficiency",
                                     "grid efficiency oracles at a point");
  cmd_eff->add_option("file", file)->required();
  cmd_eff->add_option("--at", at)->required()->delimiter(',');
  cmd_eff->add_option("--grid", grid_n, "grid points per axis");
  cmd_eff->add_flag("--json", as_json);
  cmd_eff->add_flag("--parallel", parallel);

  auto* cmd_sweep = app.add_subcommand("sweep",
                                       "tabulate objective endpoints to csv");
  std::string out_path;
  double sweep_from = 0.0;
  double sweep_to = 0.0;
  bool have_from = false;
  bool have_to = false;
  cmd_sweep->add_option("file", file)->required();
  cmd_sweep->add_option("--grid", grid_n, "number of rows");
  cmd_sweep->add_option("--out", out_path, "output csv path")->required();
  cmd_sweep->add_option("--from", sweep_from, "sweep start (default box lo)");
  cmd_sweep->add_option("--to", sweep_to, "sweep end (default box hi)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  have_from = cmd_sweep->count("--from") > 0;
  have_to = cmd_sweep->count("--to") > 0;

  if (cmd_parse->parsed()) {
    const auto pf = ivopt::parse_text(read_file(file));
    std::cout << ivopt::pretty_print(pf);
    return kExitHolds;
  }

  if (cmd_eval->parsed()) {
    const auto cp = load(file);
    require_point(at, cp.iop.dim());
    std::cout << ivopt::to_string(cp.iop.objective.eval(at)) << "\n";
    return kExitHolds;
  }

  if (cmd_check->parsed()) {
    const auto cp = load(file);
    require_point(at, cp.iop.dim());
    const ivopt::DiffConfig cfg;
    ivopt::MultiplierGrid mg;
    mg.resolution = simplex_res;
    mg.residual_tol = tol;
    ivopt::CheckReport report;
    if (kind == "fermat") {
      report = ivopt::fermat_check(cp.iop.objective, at,
                                   ivopt::subdiff_smooth(cp.iop.objective, at,
                                                         cfg));
    } else if (kind == "fj") {
      const auto grads = ivopt::constraint_gradients(cp.iop, at, cfg);
      report = ivopt::fritz_john_check(
          cp.iop, at, ivopt::subdiff_smooth(cp.iop.objective, at, cfg), grads,
          mg);
    } else if (kind == "kkt") {
      const auto grads = ivopt::constraint_gradients(cp.iop, at, cfg);
      report = ivopt::kkt_check(
          cp.iop, at, ivopt::subdiff_smooth(cp.iop.objective, at, cfg), grads,
          mg);
    } else if (kind == "composite") {
      if (!cp.smooth) {
        throw UsageError(
            "composite check needs a 'min smooth: ... + nonsmooth: ...' "
            "objective");
      }
      report = ivopt::composite_check(*cp.smooth,
                                      nonsmooth_subdiff(cp, at, cfg), at, cfg);
    } else {
      throw UsageError("unknown check kind '" + kind + "'");
    }
    print_report(report, as_json);
    return verdict_exit(report.verdict);
  }

  if (cmd_eff->parsed()) {
    const auto cp = load(file);
    require_point(at, cp.iop.dim());
    const auto grid = ivopt::uniform_grid(cp.iop.box, grid_n);
    const auto efficient = ivopt::is_efficient_oracle(cp.iop, at, grid,
                                                      parallel);
    const auto weak = ivopt::is_weak_efficient_oracle(cp.iop, at, grid,
                                                      parallel);
    if (as_json) {
      nlohmann::json j;
      j["efficient"] = nlohmann::json::parse(efficient.to_json());
      j["weak_efficient"] = nlohmann::json::parse(weak.to_json());
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "efficient: " << ivopt::to_string(efficient.verdict);
      if (efficient.witness) {
        std::cout << " (witness " << point_text(*efficient.witness) << ")";
      }
      std::cout << "\nweak_efficient: " << ivopt::to_string(weak.verdict);
      if (weak.witness) {
        std::cout << " (witness " << point_text(*weak.witness) << ")";
      }
      std::cout << "\n";
    }
    return verdict_exit(efficient.verdict);
  }

  if (cmd_sweep->parsed()) {
    const auto cp = load(file);
    if (cp.iop.dim() != 1) throw UsageError("sweep is for 1-d problems");
    if (grid_n < 2) throw UsageError("sweep needs at least 2 rows");
    const ivopt::Interval range = cp.iop.box.range(0);
    const double from = have_from ? sweep_from : range.lo();
    const double to = have_to ? sweep_to : range.hi();
    if (!(from < to) || !range.contains(from) || !range.contains(to)) {
      throw UsageError("sweep range must lie inside the variable range");
    }
    std::ofstream out(out_path);
    if (!out) throw UsageError("cannot write '" + out_path + "'");
    const bool split = cp.smooth.has_value();
    out << (split ? "y,t_lower,t_upper,obj_lower,obj_upper"
                  : "y,t_lower,t_upper")
        << "\n";
    for (std::size_t k = 0; k < grid_n; ++k) {
      const double y = from + (to - from) * (static_cast<double>(k) /
                                             static_cast<double>(grid_n - 1));
      const std::vector<double> point{y};
      const ivopt::Interval t =
          split ? cp.smooth->eval(point) : cp.iop.objective.eval(point);
      out << ivopt::format_real(y) << "," << ivopt::format_real(t.lo()) << ","
          << ivopt::format_real(t.hi());
      if (split) {
        const ivopt::Interval obj = cp.iop.objective.eval(point);
        out << "," << ivopt::format_real(obj.lo()) << ","
            << ivopt::format_real(obj.hi());
      }
      out << "\n";
    }
    return kExitHolds;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ivopt::LexError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ivopt::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ivopt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

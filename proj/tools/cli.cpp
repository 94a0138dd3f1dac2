#include "cli.hpp"

#include "report.hpp"

#include "b0box/bpdn.hpp"
#include "b0box/csv.hpp"
#include "b0box/oracle.hpp"
#include "b0box/projection.hpp"
#include "b0box/random.hpp"
#include "b0box/solvers.hpp"
#include "b0box/stationarity.hpp"
#include "b0box/validation.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace b0box::cli {
namespace {

std::string join(const Vector& v) {
  std::string s;
  for (Index i = 0; i < v.size(); ++i) {
    if (i > 0) s += ',';
    s += csv::full(v[i]);
  }
  return s;
}

std::string join(const IndexSet& idx) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i > 0) s += ',';
    s += std::to_string(idx[i]);
  }
  return s;
}

struct Fixture {
  const char* name;
  Vector w;
  Vector x;
  double radius;
  Index k;
  Vector expected;
  double expected_sq_distance;
};

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double d : v) out[i++] = d;
  return out;
}

std::vector<Fixture> fixtures() {
  return {
      {"spurious-basic-feasible", vec({2, 3}), vec({0, -1}), 2.0, 1, vec({0, 1}), 8.0},
      {"box3-w1", vec({-2.5, 2.5}), vec({0, -1}), 3.0, 1, vec({-2.5, 0}), 6.25},
      {"box3-w2", vec({-4, -3.5}), vec({0, -1}), 3.0, 1, vec({-3, 0}), 13.25},
      {"box3-w3", vec({3, 2}), vec({0, -1}), 3.0, 1, vec({3, 0}), 4.0},
      {"forced-large", vec({2, 1}), vec({0, -2.5}), 1.5, 1, vec({0, -1}), 8.0},
  };
}

void dump_instance(std::ostream& err, const Vector& w, const SparseBoxRegion& region) {
  err << "  n=" << region.dimension() << " k=" << region.sparsity() << " delta=" << csv::full(region.radius()) << '\n'
      << "  x=" << join(region.center()) << '\n'
      << "  w=" << join(w) << '\n';
}

// ---------------------------------------------------------------- project

struct ProjectArgs {
  std::string w;
  std::string x;
  double delta = 0.0;
  Index k = 0;
  bool check = false;
};

int cmd_project(const ProjectArgs& args, std::ostream& out, std::ostream& err) {
  Vector w;
  Vector x;
  try {
    w = parse_vector(args.w);
    x = parse_vector(args.x);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  }

  std::optional<SparseBoxRegion> region;
  ProjectionResult result;
  try {
    region.emplace(x, args.delta, args.k);
    result = project_intersection(w, *region);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  }

  out << "point: " << join(result.point) << '\n';
  out << "support: " << join(result.support) << '\n';
  out << "sq_distance: " << csv::full(result.sq_distance) << '\n';
  out << "distance: " << csv::full(std::sqrt(result.sq_distance)) << '\n';
  if (!args.check) return kSuccess;

  bool ok = membership(result.point, *region, 1e-12);
  out << "check membership: " << (ok ? "pass" : "FAIL") << '\n';
  const StationarityReport rep = check_stationarity(result.point, w, *region, 2.0);
  out << "check basic_feasible: " << (rep.basic_feasible ? "pass" : "FAIL") << '\n';
  out << "check l_stationary(L=2): " << (rep.l_stationary_fixed_point ? "pass" : "FAIL") << '\n';
  out << "check cw_minimum: " << (rep.cw_minimum ? "pass" : "FAIL") << '\n';
  for (const auto& v : rep.violations) {
    out << "  violation " << to_string(v.condition) << " index=" << v.index;
    if (v.partner >= 0) out << " partner=" << v.partner;
    out << " residual=" << csv::full(v.residual) << '\n';
  }
  ok = ok && rep.basic_feasible && rep.l_stationary_fixed_point && rep.cw_minimum;
  if (region->dimension() <= 12) {
    const OracleResult oracle = enumerate_projection(w, *region);
    const double a = result.sq_distance;
    const double b = oracle.best_sq_distance;
    const bool match = std::abs(a - b) <= kOracleMatchTolerance * std::max(std::abs(a), std::abs(b));
    out << "check oracle: " << (match ? "pass" : "FAIL") << " (best sq_distance " << csv::full(b) << ", "
        << oracle.minimizers.size() << " minimizer(s))\n";
    ok = ok && match;
  } else {
    out << "check oracle: skipped (n > 12)\n";
  }
  return ok ? kSuccess : kValidationFailure;
}

// ---------------------------------------------------------------- bpdn

struct BpdnArgs {
  std::string solver = "lmtr";
  Index m = 200;
  Index n = 512;
  Index k = 10;
  std::uint64_t seed = 1;
  double eps = 1e-6;
  double noise_std = kDefaultNoiseStd;
  int max_outer = 500;
  std::string out_dir;
  std::string instance_in;
  std::string instance_out;
};

int cmd_bpdn(const BpdnArgs& args, std::ostream& out, std::ostream& err) {
  static const std::map<std::string, std::pair<bool, QuasiNewtonKind>> kSolvers = {
      {"tr-lsr1", {false, QuasiNewtonKind::kLsr1}},
      {"tr-lbfgs", {false, QuasiNewtonKind::kLbfgs}},
      {"lmtr", {true, QuasiNewtonKind::kLsr1}},
  };
  const auto solver = kSolvers.find(args.solver);
  if (solver == kSolvers.end()) {
    err << "error: unknown solver '" << args.solver << "' (expected tr-lsr1, tr-lbfgs or lmtr)\n";
    return kBadArguments;
  }
  const bool lm = solver->second.first;

  BpdnInstance inst;
  SolverConfig config;
  try {
    if (!args.instance_in.empty()) {
      std::ifstream in(args.instance_in);
      if (!in) throw std::runtime_error("cannot open instance file " + args.instance_in);
      inst = read_instance_csv(in);
    } else {
      inst = generate_bpdn(args.m, args.n, args.k, args.seed, args.noise_std);
    }
    config.epsilon = args.eps;
    config.max_outer = args.max_outer;
    config.quasi_newton = solver->second.second;
    config.validate();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  }

  if (!args.instance_out.empty()) {
    std::ofstream f(args.instance_out, std::ios::binary | std::ios::trunc);
    write_instance_csv(f, inst);
    if (!f) {
      err << "error: failed writing " << args.instance_out << '\n';
      return kBadArguments;
    }
  }

  const RegularizedProblem problem = as_problem(inst);
  const SolverResult res = lm ? lmtr_solve(problem, config) : tr_solve(problem, config);
  const std::string label = lm ? "LMTR" : "TR";

  out << report::table_header(lm) << '\n';
  for (const auto& rec : res.records) out << report::table_row(rec) << '\n';
  if (res.status == SolverStatus::kCriticality) {
    out << label << ": terminating with ξ1 = " << csv::full(res.xi1_final) << '\n';
  } else {
    out << label << ": stopped (" << to_string(res.status) << ") with ξ1 = " << csv::full(res.xi1_final) << '\n';
  }
  const double rel = relative_error(res.solution, inst);
  out << label << " relative error\n";
  out << "   norm(solution - x_star) / norm(x_star) = " << csv::full(rel) << '\n';

  if (args.out_dir.empty()) return kSuccess;
  std::vector<report::OutputFile> files = {
      {"solution.csv", report::solution_csv(res.solution)},
      {"errors.csv", report::errors_csv(res.solution, inst.x_star)},
      {"history.csv", report::history_csv(res.history)},
      {"steps.csv", report::steps_csv(res.first_steps, inst.cols())},
      {"iterations.csv", report::iterations_csv(res.records)},
  };
  report::ManifestEntries manifest = {
      {"subcommand", "bpdn"},
      {"solver", args.solver},
      {"m", std::to_string(inst.rows())},
      {"n", std::to_string(inst.cols())},
      {"k", std::to_string(inst.sparsity)},
      {"seed", std::to_string(inst.seed)},
      {"noise_std", csv::full(inst.noise_std)},
      {"instance", args.instance_in.empty() ? "generated" : args.instance_in},
      {"epsilon", csv::full(config.epsilon)},
      {"max_outer", std::to_string(config.max_outer)},
      {"max_inner", std::to_string(config.max_inner)},
      {"delta_init", csv::full(config.delta_init)},
      {"eta1", csv::full(config.eta1)},
      {"eta2", csv::full(config.eta2)},
      {"gamma", csv::full(config.gamma)},
      {"sigma_min", csv::full(config.sigma_min)},
      {"memory", std::to_string(config.memory)},
      {"status", std::string(to_string(res.status))},
      {"outer_iterations", std::to_string(res.outer_iterations)},
      {"relative_error", csv::full(rel)},
      {"objective", csv::full(res.objective)},
  };
  try {
    report::write_run(args.out_dir, files, std::move(manifest));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  }
  out << "wrote";
  for (const auto& f : files) out << ' ' << f.name;
  out << " manifest.txt to " << args.out_dir << '\n';
  return kSuccess;
}

// ---------------------------------------------------------------- validate

struct ValidateArgs {
  int trials = 1000;
  Index max_n = 10;
  std::uint64_t seed = 1;
};

int cmd_validate(const ValidateArgs& args, std::ostream& out, std::ostream& err) {
  if (args.trials < 0 || args.max_n < 1 || args.max_n > 20) {
    err << "error: need --trials >= 0 and 1 <= --max-n <= 20\n";
    return kBadArguments;
  }

  int fixture_pass = 0;
  const auto fx = fixtures();
  for (const auto& f : fx) {
    const SparseBoxRegion region(f.x, f.radius, f.k);
    const ProjectionResult p = project_intersection(f.w, region);
    const InstanceCheck check = check_instance(f.w, region);
    const bool exact = p.point == f.expected && std::abs(p.sq_distance - f.expected_sq_distance) <= 1e-14;
    if (exact && check.passed()) {
      ++fixture_pass;
    } else {
      err << "fixture " << f.name << " failed" << (exact ? "" : " (point)") << ' ' << check.failures() << '\n';
      dump_instance(err, f.w, region);
    }
  }
  out << "fixtures: " << fixture_pass << '/' << fx.size() << " passed\n";

  Rng rng(args.seed);
  int passed = 0;
  std::map<std::string, int> failures;
  for (int t = 0; t < args.trials; ++t) {
    const ProjectionInstance inst = random_projection_instance(rng, args.max_n);
    const InstanceCheck check = check_instance(inst.w, inst.region);
    if (check.passed()) {
      ++passed;
      continue;
    }
    ++failures[check.failures()];
    err << "trial " << t << " (seed " << args.seed << ", regime " << inst.regime << ") failed: " << check.failures()
        << "; projection sq_distance " << csv::full(check.projected_sq_distance) << ", oracle "
        << csv::full(check.oracle_sq_distance) << '\n';
    dump_instance(err, inst.w, inst.region);
  }
  out << "random: " << passed << '/' << args.trials << " passed\n";
  for (const auto& [what, count] : failures) out << "  failed " << what << ": " << count << '\n';
  const bool ok = fixture_pass == static_cast<int>(fx.size()) && passed == args.trials;
  return ok ? kSuccess : kValidationFailure;
}

}  // namespace

Vector parse_vector(const std::string& text) {
  std::vector<double> values;
  std::error_code ec;
  if (std::filesystem::is_regular_file(text, ec)) {
    std::ifstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      try {
        values.push_back(csv::parse_double(line));
      } catch (const std::invalid_argument&) {
        if (!first) throw std::invalid_argument("bad value '" + line + "' in " + text);
      }
      first = false;
    }
  } else {
    for (auto field : csv::split(text)) values.push_back(csv::parse_double(field));
  }
  if (values.empty()) throw std::invalid_argument("empty vector '" + text + "'");
  return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Projection onto sparse vectors within an l-infinity box, with trust-region demos", "b0box-cli"};
  app.require_subcommand(1);

  ProjectArgs project;
  auto* p = app.add_subcommand("project", "Project a point onto the sparse box region");
  p->add_option("--w", project.w, "Point to project: comma list or one-column CSV file")->required();
  p->add_option("--x", project.x, "Box center (k-sparse): comma list or one-column CSV file")->required();
  p->add_option("--delta", project.delta, "Box radius")->required();
  p->add_option("--k", project.k, "Sparsity level")->required();
  p->add_flag("--check", project.check, "Validate against optimality conditions and the brute-force oracle");

  BpdnArgs bpdn;
  auto* b = app.add_subcommand("bpdn", "Run a trust-region solver on a sparse recovery problem");
  b->add_option("--solver", bpdn.solver, "tr-lsr1, tr-lbfgs or lmtr")->capture_default_str();
  b->add_option("--m", bpdn.m, "Number of observations")->capture_default_str();
  b->add_option("--n", bpdn.n, "Number of unknowns")->capture_default_str();
  b->add_option("--k", bpdn.k, "Sparsity level")->capture_default_str();
  b->add_option("--seed", bpdn.seed, "Random seed")->capture_default_str();
  b->add_option("--eps", bpdn.eps, "Stopping tolerance")->capture_default_str();
  b->add_option("--noise-std", bpdn.noise_std, "Noise standard deviation")->capture_default_str();
  b->add_option("--max-outer", bpdn.max_outer, "Outer iteration limit")->capture_default_str();
  b->add_option("--out-dir", bpdn.out_dir, "Directory for CSV outputs and manifest");
  b->add_option("--instance", bpdn.instance_in, "Read the problem from an instance CSV instead of generating it");
  b->add_option("--export-instance", bpdn.instance_out, "Write the problem instance CSV to this path");

  ValidateArgs validate;
  auto* v = app.add_subcommand("validate", "Randomized comparison against the brute-force oracle");
  v->add_option("--trials", validate.trials, "Number of random instances")->capture_default_str();
  v->add_option("--max-n", validate.max_n, "Largest dimension")->capture_default_str();
  v->add_option("--seed", validate.seed, "Random seed")->capture_default_str();

  std::vector<std::string> storage = {"b0box-cli"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kBadArguments;
  }

  if (*p) return cmd_project(project, out, err);
  if (*b) return cmd_bpdn(bpdn, out, err);
  return cmd_validate(validate, out, err);
}

}  // namespace b0box::cli

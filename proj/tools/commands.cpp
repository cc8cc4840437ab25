#include "commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qwalk/qwalk.hpp"

namespace qwalk::cli {
namespace {

struct CommandError {
  int code;
  std::string message;
};

LinearSystem load(const Options& opt) {
  if (opt.system_file.empty()) throw CommandError{kUsage, "a system file is required"};
  try {
    return load_system(opt.system_file);
  } catch (const ParseError& e) {
    throw CommandError{kIoError, opt.system_file + ": " + e.what()};
  } catch (const std::exception& e) {
    throw CommandError{kIoError, e.what()};
  }
}

SamplerKind resolve_sampler(const Options& opt, const LinearSystem& sys) {
  if (opt.sampler != "auto") return parse_sampler_kind(opt.sampler);
  const WalkSpec* spec = sys.spec();
  return spec && spec->kind == WalkKind::classical ? SamplerKind::classical_bitflip : SamplerKind::quantum_simulated;
}

unsigned resolve_steps(const Options& opt, const LinearSystem& sys) {
  if (opt.c) return *opt.c;
  if (sys.is_weighted()) throw CommandError{kUsage, "weighted systems need an explicit --c"};
  return plan_steps(sys.gamma, opt.epsilon);
}

SolveConfig solve_config(const Options& opt, const LinearSystem& sys) {
  SolveConfig cfg;
  cfg.c = resolve_steps(opt, sys);
  cfg.seed = opt.seed;
  cfg.sampler = resolve_sampler(opt, sys);
  if (opt.noise) cfg.noise = NoiseModel{opt.readout_error};
  cfg.threads = opt.threads;
  cfg.validate();
  return cfg;
}

/// nullopt means "all".
std::optional<node_index> parse_component(const Options& opt, const LinearSystem& sys) {
  if (opt.component == "all") return std::nullopt;
  unsigned long v = 0;
  try {
    std::size_t used = 0;
    v = std::stoul(opt.component, &used);
    if (used != opt.component.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw CommandError{kUsage, "--component must be an integer or 'all', got '" + opt.component + "'"};
  }
  if (v >= sys.dim()) throw CommandError{kUsage, "--component " + opt.component + " out of range for N=" + std::to_string(sys.dim())};
  return static_cast<node_index>(v);
}

/// Writes to --out when given, else to `out`.
void emit(const Options& opt, std::ostream& out, const std::string& text) {
  if (opt.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f || !(f << text)) throw CommandError{kIoError, "cannot write '" + opt.out + "'"};
}

std::string describe(const LinearSystem& sys) {
  std::ostringstream os;
  os << "N=" << sys.dim() << " n=" << sys.n();
  if (const WalkSpec* s = sys.spec()) os << " q=" << s->q << " kind=" << to_string(s->kind) << " order=" << to_string(s->order);
  if (sys.is_weighted()) os << " weighted";
  else os << " gamma=" << format_double(sys.gamma, 6);
  return os.str();
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const CommandError& e) {
    err << "error: " << e.message << '\n';
    return e.code;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
}

}  // namespace

int cmd_gen(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    GenerateOptions g;
    g.n = opt.n;
    g.q = opt.q;
    g.gamma = opt.gamma;
    g.order = parse_bit_order(opt.order);
    g.kind = parse_walk_kind(opt.kind);
    g.seed = opt.seed;
    g.weight_radius = opt.weight_radius;
    if (g.weight_radius) require_dense(g.n);
    std::ostringstream os;
    write_system(os, generate_system(g));
    emit(opt, out, os.str());
    return kOk;
  });
}

int cmd_solve(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const LinearSystem sys = load(opt);
    SolveConfig cfg = solve_config(opt, sys);
    cfg.n_s = opt.ns;
    cfg.runs = 1;
    const auto component = parse_component(opt, sys);
    const bool have_exact = sys.n() <= kMaxDenseBits;

    const auto t0 = std::chrono::steady_clock::now();
    const MonteCarloSolver solver(sys, cfg.sampler);
    std::vector<EstimateResult> results;
    if (component) results.push_back(solver.estimate(NodeState(*component, sys.n()), cfg));
    else results = solver.estimate_all(cfg);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::vector<double> exact, truncated;
    if (have_exact) {
      exact = exact_solution(sys);
      truncated = neumann_sum_dense(sys, cfg.c);
    }

    std::ostringstream os;
    os << "system: " << describe(sys) << '\n';
    os << "config: c=" << cfg.c << " n_s=" << cfg.n_s << " sampler=" << to_string(cfg.sampler) << " seed=" << cfg.seed;
    if (cfg.noise) os << " readout_error=" << format_double(cfg.noise->readout_error, 6);
    os << '\n';
    if (component) {
      const auto& r = results.front();
      os << "component: " << r.component << '\n';
      os << "estimate: " << format_double(r.estimate) << '\n';
      os << "standard_error: " << format_double(r.standard_error) << '\n';
      if (have_exact) {
        os << "exact: " << format_double(exact[r.component]) << '\n';
        os << "truncated_exact: " << format_double(truncated[r.component]) << '\n';
        const auto rel = relative_error(r.estimate, exact[r.component]);
        os << "relative_error: " << (rel ? format_double(*rel) : std::string("undefined")) << '\n';
      }
    } else {
      os << "component,estimate,standard_error" << (have_exact ? ",exact,relative_error" : "") << '\n';
      double norm2 = 0.0, rel_sum = 0.0;
      std::size_t rel_count = 0;
      for (const auto& r : results) {
        norm2 += r.estimate * r.estimate;
        os << r.component << ',' << format_double(r.estimate) << ',' << format_double(r.standard_error);
        if (have_exact) {
          const auto rel = relative_error(r.estimate, exact[r.component]);
          os << ',' << format_double(exact[r.component]) << ',' << (rel ? format_double(*rel) : std::string("undefined"));
          if (rel) rel_sum += *rel, ++rel_count;
        }
        os << '\n';
      }
      os << "norm: " << format_double(std::sqrt(norm2)) << '\n';
      if (rel_count) os << "mean_relative_error: " << format_double(rel_sum / static_cast<double>(rel_count)) << '\n';
    }
    os << "walks: " << results.size() * cfg.n_s << '\n';
    os << "wall_time_s: " << format_double(wall, 4) << '\n';
    out << os.str();
    return kOk;
  });
}

int cmd_converge(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const LinearSystem sys = load(opt);
    ConvergenceConfig cc;
    cc.schedule = opt.ns_schedule;
    cc.runs = opt.runs;
    cc.component = parse_component(opt, sys);
    cc.solve = solve_config(opt, sys);
    emit(opt, out, convergence_csv(run_convergence(sys, cc)));
    return kOk;
  });
}

int cmd_matrix(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const LinearSystem sys = load(opt);
    if (sys.n() > kMaxDenseBits)
      throw CommandError{kUsage, "matrix needs n <= " + std::to_string(kMaxDenseBits) + ", system has n=" + std::to_string(sys.n())};
    const TransitionMatrix p = sys.transition_matrix();
    std::ostringstream dump;
    write_matrix_dump(dump, p);

    std::ostringstream summary;
    summary << "system: " << describe(sys) << '\n';
    summary << "condition_number: " << format_double(condition_number(sys.dense_a()), 10) << '\n';
    if (!sys.is_weighted())
      summary << "condition_bound: " << format_double((1.0 + sys.gamma) / (1.0 - sys.gamma), 10) << '\n';
    summary << "row_sum_deviation: " << format_double(p.max_row_sum_deviation(), 3) << '\n';
    summary << "symmetry_deviation: " << format_double(p.symmetry_deviation(), 3) << '\n';
    summary << "factorisable: " << (kronecker_factorize(p.entries, 1e-12) ? "yes" : "no") << '\n';

    // keep the dump parseable on stdout; the summary then goes to stderr
    if (opt.out.empty()) {
      out << dump.str();
      err << summary.str();
    } else {
      emit(opt, out, dump.str());
      out << summary.str();
    }
    return kOk;
  });
}

int cmd_validate(const Options&, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    bool all = true;
    for (const auto& check : run_validation_suite()) {
      out << (check.passed ? "PASS " : "FAIL ") << check.name << " [" << check.detail << "]\n";
      all = all && check.passed;
    }
    out << (all ? "all checks passed\n" : "some checks FAILED\n");
    return all ? kOk : kValidationFailure;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Monte Carlo linear solver driven by classical and quantum walks on the Hamming cube", "qwalk"};
  app.set_config("--config", "", "file of 'key = value' lines; flags on the command line take precedence");
  app.require_subcommand(1);

  app.add_option("--seed", opt.seed, "master random seed")->capture_default_str();
  app.add_option("--n", opt.n, "number of graph qubits (gen)")->capture_default_str();
  app.add_option("--q", opt.q, "walk evolutions per step (gen)")->capture_default_str();
  app.add_option("--gamma", opt.gamma, "gamma in A = 1 - gamma P (gen)")->capture_default_str();
  app.add_option("--c", opt.c, "truncation order; overrides --epsilon");
  app.add_option("--epsilon", opt.epsilon, "target truncation error used to plan c")->capture_default_str();
  app.add_option("--ns-schedule", opt.ns_schedule, "strictly increasing sampling counts (converge)")->delimiter(',')->capture_default_str();
  app.add_option("--ns", opt.ns, "walks per component (solve)")->capture_default_str();
  app.add_option("--runs", opt.runs, "independent repetitions per n_s (converge)")->capture_default_str();
  app.add_option("--sampler", opt.sampler, "auto|classical-bitflip|quantum-simulated|quantum-closed-form")->capture_default_str();
  app.add_flag("--noise", opt.noise, "enable readout noise");
  app.add_option("--readout-error", opt.readout_error, "per-bit readout flip probability")->capture_default_str();
  app.add_option("--component", opt.component, "component index or 'all'")->capture_default_str();
  app.add_option("--order", opt.order, "ascending|descending (gen)")->capture_default_str();
  app.add_option("--kind", opt.kind, "classical|quantum (gen)")->capture_default_str();
  app.add_option("--weight-radius", opt.weight_radius, "also draw weights v scaled to this spectral radius (gen)");
  app.add_option("--threads", opt.threads, "worker threads, 0 = all cores")->capture_default_str();
  app.add_option("--out", opt.out, "output file (default stdout)");

  auto* gen = app.add_subcommand("gen", "write a random system file");
  auto* solve = app.add_subcommand("solve", "estimate x_I for one component or all");
  auto* converge = app.add_subcommand("converge", "relative error vs n_s as CSV");
  auto* matrix = app.add_subcommand("matrix", "dump the transition matrix and its summary");
  auto* validate = app.add_subcommand("validate", "run the closed-form self-checks");
  for (auto* sub : {solve, converge, matrix}) sub->add_option("system", opt.system_file, "system file")->required();
  for (auto* sub : {gen, solve, converge, matrix, validate}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  if (*gen) return cmd_gen(opt, out, err);
  if (*solve) return cmd_solve(opt, out, err);
  if (*converge) return cmd_converge(opt, out, err);
  if (*matrix) return cmd_matrix(opt, out, err);
  return cmd_validate(opt, out, err);
}

}  // namespace qwalk::cli

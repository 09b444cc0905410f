#include "commands.hpp"

#include "tbdrive/algebra.hpp"
#include "tbdrive/circuit.hpp"
#include "tbdrive/observables.hpp"
#include "tbdrive/propagators.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <sstream>

namespace tbdrive::cli {

namespace fs = std::filesystem;

namespace {

struct RunSetup {
  LatticeSpec lattice;
  DriveProfile drive;
  StateVector psi0;
  double t_final = 0.0;
  double dt = 0.0;
  int record_stride = 1;
  fs::path out_dir;
};

fs::path output_dir(const RunConfig& cfg) { return cfg.output_dir.value_or("out"); }

void require_time(const RunConfig& cfg) {
  if (!cfg.t_final) throw ConfigError("missing [time] t_final");
  if (!cfg.dt) throw ConfigError("missing [time] dt");
  if (!(*cfg.dt > 0.0)) throw ConfigError("[time] dt must be positive");
  if (*cfg.t_final < 0.0) throw ConfigError("[time] t_final must be >= 0");
}

RunSetup lattice_setup(const RunConfig& cfg) {
  RunSetup s;
  if (cfg.lattice) {
    s.lattice = *cfg.lattice;
  } else if (cfg.circuit) {
    s.lattice = circuit_to_lattice(*cfg.circuit).lattice;
  } else {
    throw ConfigError("config needs a [lattice] or [circuit] block");
  }
  if (!cfg.drive) throw ConfigError("missing [drive] block");
  if (!cfg.initial) throw ConfigError("missing [initial_state] block");
  require_time(cfg);
  s.drive = *cfg.drive;
  s.psi0 = make_initial_state(*cfg.initial, s.lattice);
  s.t_final = *cfg.t_final;
  s.dt = *cfg.dt;
  if (cfg.circuit) {
    // time inputs are in circuit units; the engine runs in units of time_scale
    const auto mapping = circuit_to_lattice(*cfg.circuit);
    s.drive = mapping.drive;
    s.t_final /= mapping.time_scale;
    s.dt /= mapping.time_scale;
  }
  s.record_stride = cfg.record_stride;
  s.out_dir = output_dir(cfg);
  return s;
}

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string describe_lattice(const LatticeSpec& spec) {
  std::string s = std::string(to_string(spec.boundary)) + ", dim=" + std::to_string(spec.dim());
  if (spec.boundary == Boundary::InfiniteWindow) s += " (sites -" + std::to_string(spec.window_halfwidth) + ".." + std::to_string(spec.window_halfwidth) + ")";
  return s + ", G=" + format_double(spec.coupling);
}

std::string run_report(const std::string& command, const RunSetup& s, const PropagationResult& r) {
  std::ostringstream os;
  const auto grid = TimeGrid::make(s.t_final, s.dt);
  os << "tbdrive " << command << "\n";
  os << "lattice: " << describe_lattice(s.lattice) << "\n";
  os << "drive: " << s.drive.describe() << "\n";
  os << "method: " << r.method_name() << "\n";
  os << "grid: steps=" << grid.steps << ", dt=" << format_double(grid.step) << ", t_final=" << format_double(s.t_final)
     << ", recorded=" << r.times.size() << "\n";
  if (!r.norm_error.empty()) {
    os << "final norm error: " << sci(r.norm_error.back()) << "\n";
    os << "max norm error: " << sci(*std::max_element(r.norm_error.begin(), r.norm_error.end())) << "\n";
  }
  if (r.method == Method::PerturbativeSeries) {
    os << "layer magnitudes (max_t |lambda^k C^k|):";
    for (double m : r.layer_magnitudes) os << ' ' << sci(m);
    os << "\n";
  }
  if (r.method == Method::Su2Exact) os << "factorisation restarts: " << r.restarts << "\n";
  if (s.lattice.boundary == Boundary::InfiniteWindow && !r.states.empty()) {
    os << "edge weight at t_final: " << sci(edge_weight(r.final_state())) << "\n";
  }
  if (r.failed) os << "FAILED: " << r.failure_reason << "\n";
  const auto obs = occupations(r);
  try {
    const auto est = bloch_period_estimate(obs);
    if (est.oscillating) {
      os << "dominant period (" << to_string(est.signal) << "): " << format_double(est.period) << "\n";
    } else {
      os << "dominant period: no oscillation\n";
    }
  } catch (const InsufficientSpan& e) {
    os << "dominant period: " << e.what() << "\n";
  }
  for (const auto& w : r.warnings) os << "warning: " << w << "\n";
  return os.str();
}

void write_run(const RunSetup& s, const PropagationResult& r, const std::string& command) {
  write_text_file(s.out_dir / "states.csv", states_csv(r));
  write_text_file(s.out_dir / "observables.csv", observables_csv(occupations(r)));
  write_text_file(s.out_dir / "report.txt", run_report(command, s, r));
}

void check_applicable(const std::string& method, const LatticeSpec& lattice) {
  if (method == "su2" && (lattice.boundary != Boundary::Dirichlet || (lattice.n_sites != 2 && lattice.n_sites != 3))) {
    throw InapplicableMethod("su(2) propagator requires a Dirichlet chain with N = 2 or 3 (got N = " +
                             std::to_string(lattice.dim()) + ", " + std::string(to_string(lattice.boundary)) + ")");
  }
  if (method == "series") require_series_applicable(lattice);
}

}  // namespace

void apply_overrides(RunConfig& config, const Overrides& o) {
  if (o.dt) config.dt = o.dt;
  if (o.t_final) config.t_final = o.t_final;
  if (o.order) config.order = *o.order;
  if (o.out) config.output_dir = o.out;
}

int cmd_simulate(const RunConfig& config, std::ostream& out) {
  if (config.method == "all") return cmd_compare(config, out);
  const auto s = lattice_setup(config);
  check_applicable(config.method, s.lattice);
  PropagationResult r;
  if (config.method == "oracle") {
    if (config.circuit) {
      r = oracle_propagate(circuit_hamiltonian(circuit_to_lattice(*config.circuit)), s.psi0, s.t_final, s.dt,
                           s.record_stride);
    } else {
      r = oracle_propagate(s.lattice, s.drive, s.psi0, s.t_final, s.dt, s.record_stride);
    }
  } else if (config.method == "su2") {
    r = su2_propagate(s.lattice, s.drive, s.psi0, s.t_final, s.dt, s.record_stride);
  } else {
    if (config.order < 0) throw ConfigError("series order must be >= 0");
    r = series_propagate(s.lattice, s.drive, s.psi0, s.t_final, s.dt, config.order, s.record_stride);
  }
  write_run(s, r, "simulate");
  out << "wrote " << (s.out_dir / "states.csv").string() << " (" << r.method_name() << ", " << r.times.size()
      << " samples)\n";
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  if (r.failed) {
    std::cerr << "error: " << r.failure_reason << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_compare(const RunConfig& config, std::ostream& out) {
  if (config.circuit) throw ConfigError("compare runs on a [lattice] block");
  const auto s = lattice_setup(config);
  std::vector<int> orders = config.orders;
  if (orders.empty()) {
    for (int k = 0; k <= config.order; ++k) orders.push_back(k);
  }
  const auto report = compare_methods(s.lattice, s.drive, s.psi0, s.t_final, s.dt, orders, s.record_stride);

  std::string csv = "method,status,terminal_fidelity,terminal_error\n";
  std::vector<const MethodComparison*> scored{&report.oracle};
  for (const auto& m : report.methods) scored.push_back(&m);
  for (const auto* m : scored) {
    const bool ok = m->applicable && !m->result.failed;
    csv += m->method + ',' + (!m->applicable ? "inapplicable" : (m->result.failed ? "failed" : "ok")) + ',' +
           (ok ? format_double(m->terminal_fidelity) : "") + ',' + (ok ? format_double(m->terminal_error) : "") + '\n';
  }

  std::string fid = "t";
  std::vector<const MethodComparison*> with_series;
  for (const auto& m : report.methods) {
    if (m.applicable && !m.result.failed) {
      fid += ",fidelity_" + m.method;
      with_series.push_back(&m);
    }
  }
  fid += '\n';
  for (std::size_t i = 0; i < report.oracle.result.times.size(); ++i) {
    fid += format_double(report.oracle.result.times[i]);
    for (const auto* m : with_series) fid += ',' + format_double(m->fidelity_vs_oracle[i]);
    fid += '\n';
  }

  write_text_file(s.out_dir / "report.txt", report.to_table(false));
  write_text_file(s.out_dir / "comparison.csv", csv);
  write_text_file(s.out_dir / "fidelity.csv", fid);
  write_text_file(s.out_dir / "states.csv", states_csv(report.oracle.result));
  out << report.to_table(true);
  return kExitOk;
}

int cmd_algebra_check(int n_min, int n_max, Boundary boundary, const std::optional<fs::path>& out_dir, std::ostream& out) {
  if (n_min > n_max) {
    throw ConfigError("n_min (" + std::to_string(n_min) + ") exceeds n_max (" + std::to_string(n_max) + ")");
  }
  CertificationReport all;
  for (int n = n_min; n <= n_max; ++n) {
    const auto spec = boundary == Boundary::InfiniteWindow ? LatticeSpec::infinite_window(n, 1.0)
                                                           : LatticeSpec{n, boundary, 0, 1.0};
    try {
      spec.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    all.append(certify_algebra<double>(spec));
  }
  out << to_table(all);
  const bool ok = all.all_passed();
  out << (ok ? "all identities pass" : "some identities FAIL") << ", max residual " << sci(all.max_residual()) << "\n";
  if (out_dir) write_text_file(*out_dir / "certification.csv", to_csv(all));
  return ok ? kExitOk : kExitFailure;
}

int cmd_spectrum(const RunConfig& config, std::ostream& out) {
  if (!config.lattice) throw ConfigError("spectrum needs a [lattice] block");
  const auto& lattice = *config.lattice;
  if (lattice.boundary != Boundary::Dirichlet) {
    throw InapplicableMethod("tilted eigensystem is defined for Dirichlet chains only");
  }
  const auto eig = tilted_eigensystem<double>(lattice);
  const Eigen::MatrixXd basis = eig.basis();
  std::string csv = "m,omega,lambda,d";
  for (int n = 1; n <= eig.n_sites; ++n) csv += ",v_" + std::to_string(n);
  csv += '\n';
  for (int m = 0; m < eig.n_sites; ++m) {
    csv += std::to_string(m + 1) + ',' + format_double(eig.omegas(m)) + ',' + format_double(eig.eigenvalues(m)) + ',' +
           format_double(eig.norm_coeffs(m));
    for (int n = 0; n < eig.n_sites; ++n) csv += ',' + format_double(basis(n, m));
    csv += '\n';
  }
  const auto dir = output_dir(config);
  write_text_file(dir / "spectrum.csv", csv);
  out << "m  omega_m  lambda_m  d_m\n";
  for (int m = 0; m < eig.n_sites; ++m) {
    char line[128];
    std::snprintf(line, sizeof line, "%d  %.12f  %.12f  %.12f\n", m + 1, eig.omegas(m), eig.eigenvalues(m),
                  eig.norm_coeffs(m));
    out << line;
  }
  out << "wrote " << (dir / "spectrum.csv").string() << "\n";
  return kExitOk;
}

int cmd_circuit(const RunConfig& config, std::ostream& out) {
  if (!config.circuit) throw ConfigError("circuit needs a [circuit] block");
  if (!config.drive) throw ConfigError("missing [drive] block");
  const auto mapping = circuit_to_lattice(*config.circuit);
  const auto s = lattice_setup(config);
  const auto r = oracle_propagate(circuit_hamiltonian(mapping), s.psi0, s.t_final, s.dt, s.record_stride);

  const auto charge = charge_expectation(r, mapping.charge_quantum);
  std::string csv = "t,charge\n";
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    csv += format_double(r.times[i] * mapping.time_scale) + ',' + format_double(charge[i]) + '\n';
  }
  write_run(s, r, "circuit");
  write_text_file(s.out_dir / "charge.csv", csv);

  std::ostringstream extra;
  extra << "circuit: L=" << format_double(config.circuit->inductance)
        << ", q_e=" << format_double(config.circuit->electron_charge);
  if (config.circuit->capacitance) extra << ", C=" << format_double(*config.circuit->capacitance) << " (LC design)";
  else extra << " (L design)";
  extra << "\nunits: " << (config.circuit->units == UnitSystem::SI ? "si" : "natural")
        << ", energy_scale=" << format_double(mapping.energy_scale) << ", time_scale=" << format_double(mapping.time_scale)
        << "\nmapped hopping G=" << format_double(mapping.lattice.coupling)
        << ", F(t) = q_e eps(t) / energy_scale\n";
  const auto report = read_text_file(s.out_dir / "report.txt");
  write_text_file(s.out_dir / "report.txt", report + extra.str());
  out << "wrote " << (s.out_dir / "charge.csv").string() << "\n";
  return kExitOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Driven tight-binding chain: propagation, method comparison and algebra certification", "tbdrive"};
  app.require_subcommand(1);

  struct Args {
    std::string config;
    Overrides overrides;
    std::string out;
    double dt = 0.0;
    double t_final = 0.0;
    int order = 0;
  };
  Args args;
  const auto add_run_options = [&](CLI::App* sub, bool config_required) {
    auto* c = sub->add_option("--config", args.config, "configuration file");
    if (config_required) c->required();
    sub->add_option("--out", args.out, "output directory (overrides [output] dir)");
    sub->add_option("--dt", args.dt, "time step override");
    sub->add_option("--t-final", args.t_final, "final time override");
    sub->add_option("--order", args.order, "series order override");
  };

  auto* simulate = app.add_subcommand("simulate", "run one propagation method");
  add_run_options(simulate, true);
  auto* compare = app.add_subcommand("compare", "run every applicable method against the oracle");
  add_run_options(compare, true);
  auto* spectrum = app.add_subcommand("spectrum", "dump the tilted eigensystem");
  add_run_options(spectrum, true);
  auto* circuit = app.add_subcommand("circuit", "simulate an L/LC-design discrete-charge circuit");
  add_run_options(circuit, true);
  auto* algebra = app.add_subcommand("algebra-check", "certify the operator algebra for a range of N");
  int n_min = 2;
  int n_max = 12;
  std::string boundary = "dirichlet";
  add_run_options(algebra, false);
  algebra->add_option("--n-min", n_min, "smallest chain size (window half-width for infinite)");
  algebra->add_option("--n-max", n_max, "largest chain size");
  algebra->add_option("--boundary", boundary, "dirichlet | periodic | infinite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  const auto collect_overrides = [&](CLI::App* sub) {
    Overrides o;
    if (sub->count("--dt")) o.dt = args.dt;
    if (sub->count("--t-final")) o.t_final = args.t_final;
    if (sub->count("--order")) o.order = args.order;
    if (sub->count("--out")) o.out = args.out;
    return o;
  };

  const auto one_line = [](std::string msg) {
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    return msg;
  };

  try {
    if (algebra->parsed()) {
      std::optional<fs::path> out_dir;
      if (algebra->count("--out")) out_dir = args.out;
      Boundary b = parse_boundary(boundary);
      if (!args.config.empty()) {
        const auto cfg = load_config(args.config);
        if (!algebra->count("--n-min") && cfg.algebra_n_min) n_min = *cfg.algebra_n_min;
        if (!algebra->count("--n-max") && cfg.algebra_n_max) n_max = *cfg.algebra_n_max;
        if (!algebra->count("--boundary") && cfg.algebra_boundary) b = *cfg.algebra_boundary;
        if (!out_dir && cfg.output_dir) out_dir = cfg.output_dir;
      }
      return cmd_algebra_check(n_min, n_max, b, out_dir, std::cout);
    }
    for (auto* sub : {simulate, compare, spectrum, circuit}) {
      if (!sub->parsed()) continue;
      auto cfg = load_config(args.config);
      apply_overrides(cfg, collect_overrides(sub));
      if (sub == simulate) return cmd_simulate(cfg, std::cout);
      if (sub == compare) return cmd_compare(cfg, std::cout);
      if (sub == spectrum) return cmd_spectrum(cfg, std::cout);
      return cmd_circuit(cfg, std::cout);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << one_line(e.what()) << "\n";
    return kExitConfig;
  } catch (const InapplicableMethod& e) {
    std::cerr << "error: " << one_line(e.what()) << "\n";
    return kExitInapplicable;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << one_line(e.what()) << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << one_line(e.what()) << "\n";
    return kExitFailure;
  }
  return kExitConfig;
}

}  // namespace tbdrive::cli

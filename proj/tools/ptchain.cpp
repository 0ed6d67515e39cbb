#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptchain/chain.hpp"
#include "ptchain/dynamics.hpp"
#include "ptchain/hypercube.hpp"
#include "ptchain/linalg.hpp"
#include "ptchain/metric.hpp"
#include "ptchain/spectral.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace ptchain;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json matrix_json(const ComplexMatrix& m, bool imag_part) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(imag_part ? m(i, j).imag() : m(i, j).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const Eigen::VectorXcd& v, bool imag_part) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out.push_back(imag_part ? v(i).imag() : v(i).real());
  return out;
}

json real_vector_json(const RealVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

struct OutputTarget {
  std::optional<std::string> path;

  // Runs `emit` on the chosen stream; file output is line-buffered into the
  // stream so identical runs produce identical bytes.
  template <class Fn>
  void write(Fn&& emit) const {
    if (path) {
      std::ofstream file(*path);
      if (!file) throw InvalidSpec("cannot open output file: " + *path);
      emit(file);
    } else {
      emit(std::cout);
    }
  }
};

void emit_json(const OutputTarget& target, const json& payload) {
  target.write([&](std::ostream& os) { os << payload.dump(2) << "\n"; });
}

struct ChainOptions {
  int sites = 0;
  double gamma = 0.0;
  std::string potential = "imag";

  ChainSpec spec() const {
    return {sites, gamma,
            potential == "real" ? PotentialKind::Real
                                : PotentialKind::Imaginary};
  }
  std::string potential_name() const {
    return potential == "real" ? "real" : "imaginary";
  }
};

void add_chain_options(CLI::App* cmd, ChainOptions& opts) {
  cmd->add_option("--sites,-n", opts.sites, "number of chain sites")
      ->required();
  cmd->add_option("--gamma,-g", opts.gamma, "potential strength");
  cmd->add_option("--potential", opts.potential, "potential kind")
      ->check(CLI::IsMember({"real", "imag"}));
}

json meta_block(const std::string& command, const ChainOptions& opts) {
  return {{"command", command},
          {"sites", opts.sites},
          {"gamma", opts.gamma},
          {"potential", opts.potential_name()}};
}

StateVector read_state_file(const std::string& path, int n_sites) {
  std::ifstream file(path);
  if (!file) throw InvalidSpec("cannot open state file: " + path);
  int n = 0;
  if (!(file >> n)) throw InvalidSpec("state file must start with the size");
  if (n != n_sites)
    throw DimensionMismatch("state file size does not match --sites");
  StateVector state(n);
  for (int i = 0; i < n; ++i) {
    double re = 0.0, im = 0.0;
    if (!(file >> re >> im))
      throw InvalidSpec("state file must hold N 're im' lines");
    state(i) = Complex(re, im);
  }
  return state;
}

void write_state_file(const std::string& path, const StateVector& state) {
  std::ofstream file(path);
  if (!file) throw InvalidSpec("cannot open output file: " + path);
  file << state.size() << "\n";
  for (Eigen::Index i = 0; i < state.size(); ++i)
    file << fmt(state(i).real()) << " " << fmt(state(i).imag()) << "\n";
}

StateVector parse_initial(const std::string& text, const ChainSpec& spec) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw InvalidSpec("--initial must be site:K, transferable:L, or file:PATH");
  const std::string head = text.substr(0, colon);
  const std::string tail = text.substr(colon + 1);
  if (head == "file") return read_state_file(tail, spec.n_sites);
  int index = 0;
  try {
    index = std::stoi(tail);
  } catch (const std::exception&) {
    throw InvalidSpec("--initial needs an integer site index");
  }
  if (head == "site") {
    if (index < 1 || index > spec.n_sites)
      throw IndexOutOfRange("--initial site index must lie in 1..N");
    StateVector state = StateVector::Zero(spec.n_sites);
    state(index - 1) = 1.0;
    return state;
  }
  if (head == "transferable") return transferable_state(index, spec);
  throw InvalidSpec("--initial must be site:K, transferable:L, or file:PATH");
}

double parse_time(const std::string& text, const ChainSpec& spec) {
  if (text == "tau") return tau_period(spec);
  if (text == "2tau") return 2.0 * tau_period(spec);
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw InvalidSpec("bad --t-max value");
    return value;
  } catch (const std::exception&) {
    throw InvalidSpec("--t-max must be a number, 'tau', or '2tau'");
  }
}

Eigen::VectorXcd chain_spectrum(const ChainSpec& spec) {
  if (spec.imaginary() && std::abs(spec.gamma) > 1.0)
    return classify_phase(spec).eigenvalues;
  return analytic_eigensystem(spec).eigenvalues;
}

// --- subcommand handlers -------------------------------------------------

void run_spectrum(const ChainOptions& opts, const std::string& format,
                  const OutputTarget& target) {
  const Eigen::VectorXcd eps = chain_spectrum(opts.spec());
  if (format == "csv") {
    target.write([&](std::ostream& os) {
      os << "n,re,im\n";
      for (Eigen::Index n = 0; n < eps.size(); ++n)
        os << n + 1 << "," << fmt(eps(n).real()) << "," << fmt(eps(n).imag())
           << "\n";
    });
    return;
  }
  json payload = {{"meta", meta_block("spectrum", opts)},
                  {"data",
                   {{"eigenvalues_re", vector_json(eps, false)},
                    {"eigenvalues_im", vector_json(eps, true)}}}};
  emit_json(target, payload);
}

void run_eigensystem(const ChainOptions& opts, const std::string& format,
                     const OutputTarget& target) {
  const ChainSpec spec = opts.spec();
  const BiorthogonalSystem sys = analytic_eigensystem(spec);
  const ComplexMatrix h = build_hamiltonian(spec);
  const double residual =
      (h * sys.right_vectors -
       sys.right_vectors * sys.eigenvalues.asDiagonal())
          .cwiseAbs()
          .maxCoeff();
  if (format == "csv") {
    target.write([&](std::ostream& os) {
      os << "n,l,re,im\n";
      for (Eigen::Index n = 0; n < sys.right_vectors.cols(); ++n)
        for (Eigen::Index l = 0; l < sys.right_vectors.rows(); ++l)
          os << n + 1 << "," << l + 1 << ","
             << fmt(sys.right_vectors(l, n).real()) << ","
             << fmt(sys.right_vectors(l, n).imag()) << "\n";
    });
    return;
  }
  json payload = {
      {"meta", meta_block("eigensystem", opts)},
      {"data",
       {{"eigenvalues_re", vector_json(sys.eigenvalues, false)},
        {"eigenvalues_im", vector_json(sys.eigenvalues, true)},
        {"right_re", matrix_json(sys.right_vectors, false)},
        {"right_im", matrix_json(sys.right_vectors, true)},
        {"left_re", matrix_json(sys.left_vectors, false)},
        {"left_im", matrix_json(sys.left_vectors, true)},
        {"pt_sign", sys.pt_sign},
        {"residual", residual}}}};
  emit_json(target, payload);
}

void run_ep_scan(int sites, const std::vector<double>& gammas,
                 const std::string& format, const OutputTarget& target) {
  if (gammas.empty()) throw InvalidSpec("--gammas needs at least one value");
  std::vector<std::pair<double, ComplexMatrix>> scans;
  scans.reserve(gammas.size());
  for (const double gamma : gammas)
    scans.emplace_back(
        gamma,
        dressed_eigenfunctions({sites, gamma, PotentialKind::Imaginary}));
  if (format == "json") {
    json records = json::array();
    for (const auto& [gamma, dressed] : scans)
      for (Eigen::Index n = 0; n < dressed.cols(); ++n)
        for (Eigen::Index l = 0; l < dressed.rows(); ++l)
          records.push_back({{"gamma", gamma},
                             {"n", n + 1},
                             {"l", l + 1},
                             {"re", dressed(l, n).real()},
                             {"im", dressed(l, n).imag()}});
    json payload = {{"meta",
                     {{"command", "ep-scan"},
                      {"sites", sites},
                      {"potential", "imaginary"}}},
                    {"data", {{"records", std::move(records)}}}};
    emit_json(target, payload);
    return;
  }
  target.write([&](std::ostream& os) {
    os << "gamma,n,l,re,im\n";
    for (const auto& [gamma, dressed] : scans)
      for (Eigen::Index n = 0; n < dressed.cols(); ++n)
        for (Eigen::Index l = 0; l < dressed.rows(); ++l)
          os << fmt(gamma) << "," << n + 1 << "," << l + 1 << ","
             << fmt(dressed(l, n).real()) << "," << fmt(dressed(l, n).imag())
             << "\n";
  });
}

void run_metric(const ChainOptions& opts, const std::string& format,
                const OutputTarget& target) {
  const ChainSpec spec = opts.spec();
  const MetricPair metric = metric_operator(spec);
  const ComplexMatrix h = hermitian_counterpart(spec);
  const EigenSystem spectrum = hermitian_eigensystem(metric.eta);
  if (format == "csv") {
    target.write([&](std::ostream& os) {
      os << "i,j,eta_re,eta_im,rho_re,rho_im,h_re,h_im\n";
      for (Eigen::Index i = 0; i < metric.eta.rows(); ++i)
        for (Eigen::Index j = 0; j < metric.eta.cols(); ++j)
          os << i + 1 << "," << j + 1 << "," << fmt(metric.eta(i, j).real())
             << "," << fmt(metric.eta(i, j).imag()) << ","
             << fmt(metric.rho(i, j).real()) << ","
             << fmt(metric.rho(i, j).imag()) << "," << fmt(h(i, j).real())
             << "," << fmt(h(i, j).imag()) << "\n";
    });
    return;
  }
  json payload = {
      {"meta", meta_block("metric", opts)},
      {"data",
       {{"eta_re", matrix_json(metric.eta, false)},
        {"eta_im", matrix_json(metric.eta, true)},
        {"rho_re", matrix_json(metric.rho, false)},
        {"rho_im", matrix_json(metric.rho, true)},
        {"counterpart_re", matrix_json(h, false)},
        {"counterpart_im", matrix_json(h, true)},
        {"eta_eigenvalues", real_vector_json(spectrum.eigenvalues)}}}};
  emit_json(target, payload);
}

void run_hypercube(int d, double gamma, const std::string& format,
                   const OutputTarget& target) {
  const SpinEnsemble ensemble = build_spin_ensemble(d, gamma);
  if (format == "csv") {
    target.write([&](std::ostream& os) {
      os << "two_s,multiplicity,sites\n";
      for (const auto& block : ensemble.blocks)
        os << block.two_s << "," << block.multiplicity << ","
           << block.two_s + 1 << "\n";
    });
    return;
  }
  json blocks = json::array();
  for (const auto& block : ensemble.blocks)
    blocks.push_back({{"two_s", block.two_s},
                      {"spin", block.two_s / 2.0},
                      {"multiplicity", block.multiplicity},
                      {"sites", block.two_s + 1}});
  json payload = {{"meta",
                   {{"command", "hypercube"},
                    {"spins", d},
                    {"gamma", gamma},
                    {"potential", "imaginary"}}},
                  {"data",
                   {{"states", Eigen::Index(1) << d},
                    {"blocks", std::move(blocks)}}}};
  emit_json(target, payload);
}

void write_trace_csv(std::ostream& os, const EvolutionTrace& trace) {
  os << "t,site,re,im,dirac_norm,eta_norm\n";
  for (Eigen::Index i = 0; i < trace.times.size(); ++i)
    for (Eigen::Index l = 0; l < trace.snapshots.rows(); ++l)
      os << fmt(trace.times(i)) << "," << l + 1 << ","
         << fmt(trace.snapshots(l, i).real()) << ","
         << fmt(trace.snapshots(l, i).imag()) << ","
         << fmt(trace.dirac_norms(i)) << "," << fmt(trace.eta_norms(i))
         << "\n";
}

json trace_json(const EvolutionTrace& trace) {
  json times = json::array();
  for (Eigen::Index i = 0; i < trace.times.size(); ++i)
    times.push_back(trace.times(i));
  return {{"times", std::move(times)},
          {"snapshots_re", matrix_json(trace.snapshots, false)},
          {"snapshots_im", matrix_json(trace.snapshots, true)},
          {"dirac_norms", real_vector_json(trace.dirac_norms)},
          {"eta_norms", real_vector_json(trace.eta_norms)}};
}

void run_evolve(const ChainOptions& opts, const std::string& initial,
                const std::string& t_max, int steps,
                const std::string& save_final, const std::string& format,
                const OutputTarget& target) {
  const ChainSpec spec = opts.spec();
  const StateVector state = parse_initial(initial, spec);
  const EvolutionTrace trace =
      norm_trace(state, spec, parse_time(t_max, spec), steps);
  if (!save_final.empty())
    write_state_file(save_final,
                     trace.snapshots.col(trace.snapshots.cols() - 1));
  if (format == "json") {
    json payload = {{"meta", meta_block("evolve", opts)},
                    {"data", trace_json(trace)}};
    emit_json(target, payload);
    return;
  }
  target.write([&](std::ostream& os) { write_trace_csv(os, trace); });
}

void run_pst(const ChainOptions& opts, const std::string& initial,
             const std::string& t_max, int steps, const std::string& format,
             const OutputTarget& target) {
  const ChainSpec spec = opts.spec();
  const StateVector state = parse_initial(initial, spec);
  const TransferReport report = pst_fidelity(state, spec);
  const EvolutionTrace trace =
      norm_trace(state, spec, parse_time(t_max, spec), steps);

  json report_json = {{"meta", meta_block("pst", opts)},
                      {"data",
                       {{"initial", initial},
                        {"tau", report.tau},
                        {"fidelity", report.fidelity},
                        {"global_phase_re", report.global_phase.real()},
                        {"global_phase_im", report.global_phase.imag()}}}};
  if (format == "json") {
    report_json["data"]["trace"] = trace_json(trace);
    emit_json(target, report_json);
    return;
  }
  // CSV trace goes to --out (report on stdout) or to stdout (report on
  // stderr) so the report never corrupts the table.
  target.write([&](std::ostream& os) { write_trace_csv(os, trace); });
  if (target.path)
    std::cout << report_json.dump(2) << "\n";
  else
    std::cerr << report_json.dump(2) << "\n";
}

void run_phase(const ChainOptions& opts, const std::string& format,
               const OutputTarget& target) {
  const PhaseReport report = classify_phase(opts.spec());
  const char* name = report.phase == Phase::Unbroken   ? "unbroken"
                     : report.phase == Phase::Critical ? "critical"
                                                       : "broken";
  if (format == "csv") {
    target.write([&](std::ostream& os) {
      os << "n,re,im\n";
      for (Eigen::Index n = 0; n < report.eigenvalues.size(); ++n)
        os << n + 1 << "," << fmt(report.eigenvalues(n).real()) << ","
           << fmt(report.eigenvalues(n).imag()) << "\n";
    });
    return;
  }
  json payload = {{"meta", meta_block("phase", opts)},
                  {"data",
                   {{"phase", name},
                    {"degree", report.degree},
                    {"eigenvalues_re", vector_json(report.eigenvalues, false)},
                    {"eigenvalues_im", vector_json(report.eigenvalues, true)},
                    {"note", report.note}}}};
  emit_json(target, payload);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-Hermitian chain simulator: spectra, metric operators,\n"
               "hypercube spin sectors, and state-transfer dynamics."};
  app.require_subcommand(1);

  ChainOptions spectrum_opts, eigen_opts, metric_opts, evolve_opts, pst_opts,
      phase_opts;
  std::string spectrum_format = "json", eigen_format = "json",
              scan_format = "csv", metric_format = "json",
              cube_format = "json", evolve_format = "csv",
              pst_format = "csv", phase_format = "json";
  std::string spectrum_out, eigen_out, scan_out, metric_out, cube_out,
      evolve_out, pst_out, phase_out;

  auto add_io = [](CLI::App* cmd, std::string& format, std::string& out) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out,-o", out, "write output to a file");
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalue ladder");
  add_chain_options(spectrum, spectrum_opts);
  add_io(spectrum, spectrum_format, spectrum_out);

  CLI::App* eigensystem =
      app.add_subcommand("eigensystem", "biorthogonal eigenvectors");
  add_chain_options(eigensystem, eigen_opts);
  add_io(eigensystem, eigen_format, eigen_out);

  CLI::App* ep_scan = app.add_subcommand(
      "ep-scan", "dressed eigenfunctions approaching the exceptional point");
  int scan_sites = 0;
  std::vector<double> scan_gammas;
  ep_scan->add_option("--sites,-n", scan_sites, "number of chain sites")
      ->required();
  ep_scan
      ->add_option("--gammas", scan_gammas,
                   "comma-separated potential strengths")
      ->required()
      ->delimiter(',');
  add_io(ep_scan, scan_format, scan_out);

  CLI::App* metric =
      app.add_subcommand("metric", "positive metric and Hermitian counterpart");
  add_chain_options(metric, metric_opts);
  add_io(metric, metric_format, metric_out);

  CLI::App* hypercube =
      app.add_subcommand("hypercube", "spin-ensemble block decomposition");
  int cube_spins = 0;
  double cube_gamma = 0.0;
  hypercube->add_option("--spins,-d", cube_spins, "number of qubits")
      ->required();
  hypercube->add_option("--gamma,-g", cube_gamma, "potential strength");
  add_io(hypercube, cube_format, cube_out);

  CLI::App* evolve = app.add_subcommand("evolve", "time evolution trace");
  add_chain_options(evolve, evolve_opts);
  std::string evolve_initial = "site:1", evolve_tmax = "2tau",
              evolve_save;
  int evolve_steps = 1000;
  evolve->add_option("--initial", evolve_initial,
                     "site:K, transferable:L, or file:PATH");
  evolve->add_option("--t-max", evolve_tmax, "number, 'tau', or '2tau'");
  evolve->add_option("--steps", evolve_steps, "grid samples on [0, t-max]");
  evolve->add_option("--save-final", evolve_save,
                     "write the final state to a state file");
  add_io(evolve, evolve_format, evolve_out);

  CLI::App* pst = app.add_subcommand("pst", "perfect-state-transfer report");
  add_chain_options(pst, pst_opts);
  std::string pst_initial = "transferable:1", pst_tmax = "tau";
  int pst_steps = 1000;
  pst->add_option("--initial", pst_initial,
                  "site:K, transferable:L, or file:PATH");
  pst->add_option("--t-max", pst_tmax, "number, 'tau', or '2tau'");
  pst->add_option("--steps", pst_steps, "grid samples on [0, t-max]");
  add_io(pst, pst_format, pst_out);

  CLI::App* phase = app.add_subcommand("phase", "symmetry-phase report");
  add_chain_options(phase, phase_opts);
  add_io(phase, phase_format, phase_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  auto target = [](const std::string& out) {
    OutputTarget t;
    if (!out.empty()) t.path = out;
    return t;
  };

  try {
    if (spectrum->parsed())
      run_spectrum(spectrum_opts, spectrum_format, target(spectrum_out));
    else if (eigensystem->parsed())
      run_eigensystem(eigen_opts, eigen_format, target(eigen_out));
    else if (ep_scan->parsed())
      run_ep_scan(scan_sites, scan_gammas, scan_format, target(scan_out));
    else if (metric->parsed())
      run_metric(metric_opts, metric_format, target(metric_out));
    else if (hypercube->parsed())
      run_hypercube(cube_spins, cube_gamma, cube_format, target(cube_out));
    else if (evolve->parsed())
      run_evolve(evolve_opts, evolve_initial, evolve_tmax, evolve_steps,
                 evolve_save, evolve_format, target(evolve_out));
    else if (pst->parsed())
      run_pst(pst_opts, pst_initial, pst_tmax, pst_steps, pst_format,
              target(pst_out));
    else if (phase->parsed())
      run_phase(phase_opts, phase_format, target(phase_out));
  } catch (const EPSingular& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const BrokenPhase& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NotHermitian& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NoConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const BlockMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

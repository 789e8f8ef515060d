// Copyright 2026 The qmarkov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qmc/equivalence.hpp"
#include "qmc/gram.hpp"
#include "qmc/io.hpp"

namespace qmc::cli {

enum class Format { json, csv };

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  long n = 8;
  std::vector<long> ladder;
  std::vector<double> grid;
  int grid_points = 5;
  double c = 2.0;
  std::string variant = "stationary";
  bool center = false;
  std::optional<double> tolerance;
  std::optional<std::size_t> size_guard;
  int threads = 1;
  std::string output;
  std::string sidecar;
  Format format = Format::json;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {"validate",   "spectral", "output-state", "equivalence",
                                                 "covariance", "qfi",      "lan-scan",     "lan-gram"};
  return names;
}

/// Thread count from QMC_THREADS, or 1.
inline int default_threads() {
  const char* env = std::getenv("QMC_THREADS");
  if (!env) return 1;
  char* end = nullptr;
  const long t = std::strtol(env, &end, 10);
  return (end && *end == '\0' && t >= 1 && t <= 1024) ? static_cast<int>(t) : 1;
}

namespace detail {

struct Output {
  io::Report report = io::Report::object();
  std::optional<io::CsvTable> table;
};

inline Options options_for(const RunConfig& cfg) {
  Options opt;
  if (cfg.tolerance) opt.tol.structural = *cfg.tolerance;
  if (cfg.size_guard) opt.guard.amplitudes = *cfg.size_guard;
  return opt;
}

inline void require_inputs(const RunConfig& cfg, std::size_t count) {
  require(cfg.inputs.size() == count, ErrorKind::InvalidArgument,
          cfg.command + " expects " + std::to_string(count) + " input file(s)");
}

inline PureStateVector initial_state(const io::FamilyDocument& doc, int dim) {
  if (doc.phi) return PureStateVector::normalized(*doc.phi, 1e-10);
  return PureStateVector::basis(dim, 0);
}

inline io::Report spectral_json(const SpectralReport& r) {
  io::Report j = io::Report::object();
  j["eigenvalues"] = io::to_json(r.eigenvalues);
  j["stationary"] = io::to_json(r.stationary);
  j["stationary_valid"] = r.stationary_valid;
  j["stationary_eigen_residual"] = r.stationary_eigen_residual;
  j["stationary_min_eigenvalue"] = r.stationary_min_eigenvalue;
  j["unit_eigenvalue_multiplicity"] = r.unit_eigenvalue_multiplicity;
  j["is_irreducible"] = r.is_irreducible;
  j["is_primitive"] = r.is_primitive;
  j["spectral_gap"] = r.spectral_gap;
  j["borderline"] = r.borderline;
  return j;
}

inline io::Report qfi_json(const QfiReport& q) {
  io::Report j = io::Report::object();
  j["F"] = q.F;
  j["a"] = q.a;
  j["method"] = std::string(to_string(q.method));
  j["agreement"] = q.agreement;
  j["gauge_b"] = q.gauge_b;
  j["covariance_imag"] = q.covariance_imag;
  j["hermitian_certificate"] = q.hermitian_certificate;
  return j;
}

inline std::string num(double x) { return io::format_double(x); }

inline Output cmd_validate(const RunConfig& cfg, const Options& opt) {
  require_inputs(cfg, 1);
  const KrausFamily v = io::load_kraus(cfg.inputs[0], opt);
  const SuperOperator t = heisenberg_map(v);
  const SuperOperator ts = predual_map(v);
  const Eigen::Index d = v.dim_system();
  double trace_defect = 0.0;
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) {
      const Matrix e = matrix_unit(d, d, a, b);
      trace_defect = std::max(trace_defect, std::abs(ts.apply(e).trace() - e.trace()));
    }
  Output out;
  out.report["dim_system"] = v.dim_system();
  out.report["dim_noise"] = v.dim_noise();
  out.report["deviation"] = v.deviation();
  out.report["unitality_defect"] = max_abs(t.apply(identity(d)) - identity(d));
  out.report["trace_defect"] = trace_defect;
  out.report["choi_min_eigenvalue"] = hermitian_eigen(hermitian_part(t.choi())).values.minCoeff();
  out.report["independent_kraus"] = independent_kraus_count(v, opt.tol.kraus_rank);
  return out;
}

inline Output cmd_spectral(const RunConfig& cfg, const Options& opt) {
  require_inputs(cfg, 1);
  Output out;
  out.report = spectral_json(primitivity_check(io::load_kraus(cfg.inputs[0], opt), opt));
  return out;
}

inline Output cmd_output_state(const RunConfig& cfg, const Options& opt) {
  require_inputs(cfg, 1);
  const io::FamilyDocument doc = io::load_family_document(cfg.inputs[0]);
  const KrausFamily v = KrausFamily::validate(doc.kraus, opt);
  Output out;
  out.report["variant"] = cfg.variant;
  out.report["n"] = cfg.n;
  Vector flat;
  if (cfg.variant == "joint") {
    const PureStateVector psi = joint_state(v, initial_state(doc, v.dim_system()), cfg.n, opt);
    out.report["dimension"] = psi.dim();
    out.report["norm"] = psi.norm();
    flat = psi.amplitudes();
    if (cfg.sidecar.empty()) out.report["amplitudes"] = io::to_json(flat);
  } else if (cfg.variant == "system" || cfg.variant == "stationary") {
    const DensityMatrix rho = cfg.variant == "system"
                                  ? system_output_state(v, initial_state(doc, v.dim_system()), cfg.n, opt)
                                  : stationary_output(v, cfg.n, opt);
    out.report["dimension"] = rho.dim();
    out.report["trace"] = rho.matrix().trace().real();
    out.report["purity"] = (rho.matrix() * rho.matrix()).trace().real();
    if (cfg.variant == "stationary") {
      out.report["purity_transfer"] = output_purity(v, cfg.n, opt);
      out.report["purity_limit"] = output_purity_limit(v, opt);
    }
    flat = vec(rho.matrix());
    if (cfg.sidecar.empty()) out.report["matrix"] = io::to_json(rho.matrix());
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown output-state variant '" + cfg.variant + "'");
  }
  if (!cfg.sidecar.empty()) {
    io::write_sidecar(cfg.sidecar, flat);
    out.report["sidecar"] = cfg.sidecar;
    out.report["sidecar_entries"] = flat.size();
  }
  return out;
}

inline Output cmd_equivalence(const RunConfig& cfg, const Options& opt) {
  require_inputs(cfg, 2);
  const KrausFamily v1 = io::load_kraus(cfg.inputs[0], opt);
  const KrausFamily v2 = io::load_kraus(cfg.inputs[1], opt);
  const EquivalenceReport r = decide_equivalence(v1, v2, opt);
  Output out;
  out.report["equivalent"] = r.equivalent;
  out.report["dimensions_match"] = r.dimensions_match;
  out.report["peripheral_modulus"] = r.peripheral_modulus;
  out.report["peripheral_spectrum"] = io::to_json(r.peripheral_spectrum);
  out.report["proportionality_residual"] = r.proportionality_residual;
  if (r.equivalent) {
    out.report["c"] = io::to_json(*r.c);
    out.report["unitary"] = io::to_json(*r.unitary);
    out.report["residual"] = r.reconstruction_residual;
  }
  if (r.dimensions_match) {
    const FiniteWindowReport w = finite_window_check(v1, v2, cfg.n, opt);
    io::Report window = io::Report::object();
    window["n"] = w.n;
    window["trace_norm"] = w.trace_norm;
    window["cross_purity"] = output_cross_purity(v1, v2, cfg.n, opt);
    window["independent_kraus"] = io::Report::array({w.independent_kraus_first, w.independent_kraus_second});
    window["theoretical_n0"] = io::Report::array({w.theoretical_n0_first, w.theoretical_n0_second});
    out.report["finite_window"] = window;
  }
  return out;
}

inline Output cmd_covariance(const RunConfig& cfg, const Options& opt) {
  require_inputs(cfg, 3);
  const io::FamilyDocument doc = io::load_family_document(cfg.inputs[0]);
  const PrimitiveChain chain = PrimitiveChain::analyze(KrausFamily::validate(doc.kraus, opt), opt);
  const Matrix xm = io::load_observable(cfg.inputs[1]);
  const Matrix ym = io::load_observable(cfg.inputs[2]);
  const FluctuationObservable x = cfg.center ? center(chain, xm) : FluctuationObservable::checked(chain, xm);
  const FluctuationObservable y = cfg.center ? center(chain, ym) : FluctuationObservable::checked(chain, ym);
  const PureStateVector phi = initial_state(doc, chain.dim_system());
  const Complex analytic = markov_covariance(chain, x, y);
  const std::vector<long> ladder = cfg.ladder.empty() ? std::vector<long>{16, 64, 256, 1024} : cfg.ladder;

  std::vector<Complex> values(ladder.size());
  parallel_for(ladder.size(), cfg.threads,
               [&](std::size_t i) { values[i] = empirical_covariance(chain, phi, x, y, ladder[i]); });

  Output out;
  out.report["analytic"] = io::to_json(analytic);
  io::Report rows = io::Report::array();
  io::CsvTable table{{"n", "re", "im", "abs_error"}, {}};
  std::vector<double> ns, errs;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const double err = std::abs(values[i] - analytic);
    io::Report row = io::Report::object();
    row["n"] = ladder[i];
    row["value"] = io::to_json(values[i]);
    row["abs_error"] = err;
    rows.push_back(row);
    table.rows.push_back({std::to_string(ladder[i]), num(values[i].real()), num(values[i].imag()), num(err)});
    if (err > 0) {
      ns.push_back(static_cast<double>(ladder[i]));
      errs.push_back(err);
    }
  }
  out.report["empirical"] = rows;
  if (ns.size() >= 2) {
    const PowerLawFit fit = power_law_fit(ns, errs);
    io::Report f = io::Report::object();
    f["exponent"] = fit.exponent;
    f["prefactor"] = fit.prefactor;
    f["r_squared"] = fit.r_squared;
    out.report["fit"] = f;
  }
  out.table = table;
  return out;
}

inline ParamFamily load_param_family(const RunConfig& cfg, const Options& opt, io::FamilyDocument& doc) {
  require_inputs(cfg, 1);
  doc = io::load_family_document(cfg.inputs[0]);
  return io::to_param_family(doc, cfg.inputs[0], opt);
}

inline Output cmd_qfi(const RunConfig& cfg, const Options& opt) {
  io::FamilyDocument doc;
  const ParamFamily f = load_param_family(cfg, opt, doc);
  Output out;
  out.report["source"] = std::string(to_string(f.source()));
  out.report["qfi"] = qfi_json(qfi_both(f, opt));
  return out;
}

inline Output cmd_lan_scan(const RunConfig& cfg, const Options& opt) {
  io::FamilyDocument doc;
  const ParamFamily f = load_param_family(cfg, opt, doc);
  const std::vector<long> ladder = cfg.ladder.empty() ? std::vector<long>{64, 256, 1024, 4096} : cfg.ladder;
  const LanScan scan = lan_scan(f, cfg.c, cfg.grid_points, ladder, initial_state(doc, f.base().dim_system()),
                                cfg.threads, opt);
  Output out;
  out.report["qfi"] = qfi_json(scan.qfi);
  out.report["c"] = scan.c;
  out.report["grid"] = scan.grid;
  io::Report rows = io::Report::array();
  io::CsvTable table{{"n", "sup_unit_error", "sup_matrix_error", "sup_weak_error"}, {}};
  for (const LanRow& r : scan.rows) {
    io::Report row = io::Report::object();
    row["n"] = r.n;
    row["sup_unit_error"] = r.sup_unit_error;
    row["sup_matrix_error"] = r.sup_matrix_error;
    row["sup_weak_error"] = r.sup_weak_error;
    rows.push_back(row);
    table.rows.push_back({std::to_string(r.n), num(r.sup_unit_error), num(r.sup_matrix_error), num(r.sup_weak_error)});
  }
  out.report["rows"] = rows;
  io::Report cells = io::Report::array();
  for (const LanCell& c : scan.cells) {
    io::Report cell = io::Report::object();
    cell["n"] = c.n;
    cell["u"] = c.u;
    cell["v"] = c.v;
    cell["lambda"] = io::to_json(c.lambda);
    cell["unit_error"] = c.unit_error;
    cell["matrix_error"] = c.matrix_error;
    cell["inner"] = io::to_json(c.inner);
    cell["weak_error"] = c.weak_error;
    cells.push_back(cell);
  }
  out.report["cells"] = cells;
  out.table = table;
  return out;
}

inline Output cmd_lan_gram(const RunConfig& cfg, const Options& opt) {
  io::FamilyDocument doc;
  const ParamFamily f = load_param_family(cfg, opt, doc);
  const std::vector<double> grid = cfg.grid.empty() ? std::vector<double>{-1.0, 0.0, 1.0} : cfg.grid;
  const std::vector<long> ladder = cfg.ladder.empty() ? std::vector<long>{64, 256, 1024} : cfg.ladder;
  const auto rows = weak_convergence_diagnostic(f, grid, ladder, initial_state(doc, f.base().dim_system()),
                                                cfg.threads, opt);
  Output out;
  out.report["grid"] = grid;
  io::Report jr = io::Report::array();
  io::CsvTable table{{"n", "max_error", "model_distance"}, {}};
  for (const auto& r : rows) {
    io::Report row = io::Report::object();
    row["n"] = r.n;
    row["max_error"] = r.max_error;
    row["model_distance"] = r.model_distance;
    jr.push_back(row);
    table.rows.push_back({std::to_string(r.n), num(r.max_error), num(r.model_distance)});
  }
  out.report["rows"] = jr;
  out.table = table;
  return out;
}

inline io::Report error_report(const std::string& command, const std::string& kind, const std::string& message,
                               const std::string& file = "", const std::string& field = "") {
  io::Report j = io::Report::object();
  j["command"] = command;
  io::Report e = io::Report::object();
  e["kind"] = kind;
  e["message"] = message;
  if (!file.empty()) e["file"] = file;
  if (!field.empty()) e["field"] = field;
  j["error"] = e;
  return j;
}

inline void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) throw io::InputError(cfg.output, "", "cannot open report for writing");
  file << text;
}

}  // namespace detail

/// Executes one command. Exit status 0 on success, 1 on domain errors, 2 on
/// I/O, schema and usage errors. Errors are reported as a JSON object in place
/// of the report.
inline int run(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  using namespace detail;
  int status = 0;
  std::string text;
  try {
    require(cfg.n >= 1, ErrorKind::InvalidArgument, "--n must be at least 1");
    require(cfg.c > 0, ErrorKind::InvalidArgument, "--c must be positive");
    require(cfg.grid_points >= 2, ErrorKind::InvalidArgument, "--grid must be at least 2");
    require(cfg.threads >= 1, ErrorKind::InvalidArgument, "--threads must be at least 1");
    for (long n : cfg.ladder) require(n >= 1, ErrorKind::InvalidArgument, "--ns entries must be at least 1");
    const Options opt = options_for(cfg);
    Output result;
    if (cfg.command == "validate") result = cmd_validate(cfg, opt);
    else if (cfg.command == "spectral") result = cmd_spectral(cfg, opt);
    else if (cfg.command == "output-state") result = cmd_output_state(cfg, opt);
    else if (cfg.command == "equivalence") result = cmd_equivalence(cfg, opt);
    else if (cfg.command == "covariance") result = cmd_covariance(cfg, opt);
    else if (cfg.command == "qfi") result = cmd_qfi(cfg, opt);
    else if (cfg.command == "lan-scan") result = cmd_lan_scan(cfg, opt);
    else if (cfg.command == "lan-gram") result = cmd_lan_gram(cfg, opt);
    else throw io::InputError("", "", "unknown command '" + cfg.command + "'");

    if (cfg.format == Format::csv) {
      require(result.table.has_value(), ErrorKind::InvalidArgument, cfg.command + " has no tabular output");
      text = io::dump_csv(*result.table);
    } else {
      io::Report report = io::Report::object();
      report["command"] = cfg.command;
      report["inputs"] = cfg.inputs;
      for (auto it = result.report.begin(); it != result.report.end(); ++it) report[it.key()] = it.value();
      text = io::dump_report(report);
    }
  } catch (const io::InputError& e) {
    status = 2;
    text = io::dump_report(error_report(cfg.command, "InputError", e.what(), e.file(), e.field()));
  } catch (const Error& e) {
    status = e.kind() == ErrorKind::InvalidArgument ? 2 : 1;
    text = io::dump_report(error_report(cfg.command, std::string(e.name()), e.what()));
  } catch (const std::exception& e) {
    status = 2;
    text = io::dump_report(error_report(cfg.command, "InternalError", e.what()));
  }
  try {
    emit(cfg, text, out);
  } catch (const io::InputError& e) {
    err << io::dump_report(error_report(cfg.command, "InputError", e.what(), e.file()));
    return 2;
  }
  if (status != 0 && !cfg.output.empty()) err << text;
  return status;
}

}  // namespace qmc::cli

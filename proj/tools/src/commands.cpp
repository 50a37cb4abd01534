// Copyright 2026 The qinvert Authors
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


#include "qinvert/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qinvert/entanglement.hpp"
#include "qinvert/errors.hpp"
#include "qinvert/json_io.hpp"
#include "qinvert/qid.hpp"
#include "qinvert/superoperator.hpp"
#include "qinvert/verify.hpp"

namespace qinvert::cli {
namespace {

using ojson = nlohmann::ordered_json;

constexpr int kMaxChannelDim = 32;

ojson ordered(const nlohmann::json& j) { return ojson::parse(j.dump()); }

ojson matrix(const ComplexMatrix& m) { return ordered(complex_matrix_to_json(m)); }

std::string fixed(double value, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

std::string sci(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", value);
  return buf;
}

class Checks {
 public:
  void add(std::string name, double residual, double tolerance) {
    items_.push_back({std::move(name), residual <= tolerance, residual, tolerance});
  }
  void add(const CheckResult& check) { items_.push_back(check); }

  void finish(Report& report) const {
    ojson list = ojson::array();
    int failed = 0;
    for (const auto& c : items_) {
      list.push_back({{"name", c.name}, {"passed", c.passed}, {"residual", c.residual}});
      if (!c.passed) ++failed;
    }
    report.document["checks"] = std::move(list);
    report.exit_code = failed == 0 ? kOk : kCheckFailed;
    std::ostringstream os;
    os << (items_.size() - failed) << "/" << items_.size() << " checks passed\n";
    for (const auto& c : items_) {
      if (!c.passed) {
        os << "  FAILED " << c.name << ": residual " << sci(c.residual) << " > "
           << sci(c.tolerance) << "\n";
      }
    }
    report.summary += os.str();
  }

 private:
  std::vector<CheckResult> items_;
};

Report start(const char* command, ojson inputs) {
  Report report;
  report.document["command"] = command;
  report.document["inputs"] = std::move(inputs);
  report.document["results"] = ojson::object();
  return report;
}

ComplexMatrix read_single_density(const std::filesystem::path& path, int dim) {
  const ComplexMatrix rho = complex_matrix_from_json(read_json_file(path));
  if (rho.rows() != dim) {
    throw DimensionError("state file holds a " + std::to_string(rho.rows()) + "x" +
                         std::to_string(rho.cols()) + " matrix but D = " + std::to_string(dim));
  }
  if (!is_density(rho)) {
    throw InvalidStateError("input matrix is not a valid density operator");
  }
  return rho;
}

std::string dims_text(Dims dims) {
  return std::to_string(dims.first) + "x" + std::to_string(dims.second);
}

}  // namespace

Report cmd_concurrence(const ConcurrenceOptions& options) {
  if (options.restarts < 1) {
    throw DomainError("--restarts must be at least 1");
  }
  const BipartiteState state = state_from_json(read_json_file(options.state_file));
  const Dims dims = state.dims();
  Report report = start("concurrence", {{"state_file", options.state_file.string()},
                                        {"dims", {dims.first, dims.second}},
                                        {"kind", state.is_pure() ? "pure" : "density"},
                                        {"minimize", options.minimize},
                                        {"restarts", options.restarts},
                                        {"seed", options.seed}});
  ojson& results = report.document["results"];
  Checks checks;
  std::ostringstream os;

  if (state.is_pure()) {
    const SchmidtDecomposition schmidt = schmidt_decompose(state);
    std::vector<std::pair<std::string, double>> paths = {
        {"marginal", iconcurrence_pure(state)},
        {"schmidt", iconcurrence_schmidt(schmidt)},
        {"inverter", iconcurrence_via_inverter(state)},
    };
    if (dims.first == 2 && dims.second == 2) {
      paths.emplace_back("spin_flip", qubit_concurrence_spinflip(state));
    }
    ojson by_path = ojson::object();
    double spread = 0.0;
    for (const auto& [name, value] : paths) {
      by_path[name] = value;
      spread = std::max(spread, std::abs(value - paths.front().second));
    }
    results["concurrence"] = paths.front().second;
    results["paths"] = std::move(by_path);
    results["schmidt_coefficients"] = schmidt.coefficients;
    checks.add("paths_agree", spread, 1e-10);
    checks.add("schmidt_reconstruction", (schmidt.reconstruct() - state.vector()).cwiseAbs().maxCoeff(),
               1e-10);
    os << "pure " << dims_text(dims) << " state: C = " << fixed(paths.front().second) << " ("
       << paths.size() << " paths, spread " << sci(spread) << ")\n";
  } else {
    const double quantity = mixed_inverter_quantity(state);
    results["mixed_inverter_quantity"] = quantity;
    checks.add("inverter_quantity_nonnegative", std::max(0.0, -quantity), 1e-12);
    os << "density " << dims_text(dims) << " state: inverter quantity = " << fixed(quantity)
       << "\n";
    if (options.minimize) {
      const MixedConcurrenceResult mixed =
          mixed_iconcurrence_min(state, options.restarts, options.seed);
      results["mixed_concurrence"] = {{"value", mixed.value},
                                      {"upper_bound", true},
                                      {"restarts", mixed.restarts},
                                      {"best_restart", mixed.best_restart},
                                      {"members", mixed.decomposition.size()}};
      checks.add("decomposition_reproduces_state",
                 max_abs(ensemble_density(mixed.decomposition) - state.density_matrix()), 1e-9);
      os << "minimized average I-concurrence <= " << fixed(mixed.value) << " over "
         << mixed.restarts << " restarts\n";
    }
  }
  report.summary = os.str();
  checks.finish(report);
  return report;
}

Report cmd_verify(const VerifyOptions& options) {
  const Suite suite = parse_suite(options.suite);
  const int dmax = options.dmax.value_or(max_suite_dim(suite));
  Report report = start("verify", {{"suite", suite_name(suite)},
                                   {"dmin", options.dmin},
                                   {"dmax", dmax},
                                   {"seed", options.seed}});
  const std::vector<CheckResult> results = run_suite(suite, options.dmin, dmax, options.seed);
  double worst = 0.0;
  Checks checks;
  for (const auto& c : results) {
    checks.add(c);
    worst = std::max(worst, c.residual);
  }
  report.document["results"] = {{"identities", results.size()}, {"max_residual", worst}};
  report.summary = "suite " + suite_name(suite) + " for D = " + std::to_string(options.dmin) +
                   ".." + std::to_string(dmax) + "\n";
  checks.finish(report);
  return report;
}

Report cmd_qid(const QidOptions& options) {
  if (options.dim < 2 || options.dim > kMaxQidDim) {
    throw DomainError("qid requires 2 <= D <= " + std::to_string(kMaxQidDim));
  }
  const Complex xi2 = options.optimal ? optimal_xi2(options.dim)
                                      : Complex(options.xi2_re, options.xi2_im);
  Report report = start("qid", {{"dim", options.dim},
                                {"state_file", options.state_file.string()},
                                {"optimal", options.optimal},
                                {"xi2", {xi2.real(), xi2.imag()}}});
  const QidSetup setup = make_setup(options.dim, xi2);
  const ComplexMatrix rho = read_single_density(options.state_file, options.dim);
  const QidOutputs simulated = run_qid(options.dim, xi2, rho);
  const QidOutputs closed = qid_closed_form(setup, rho);

  ojson& results = report.document["results"];
  results["xi1"] = setup.xi1;
  results["rho_a"] = matrix(simulated.a);
  results["rho_b"] = matrix(simulated.b);
  results["rho_c"] = matrix(simulated.c);

  Checks checks;
  checks.add("ancilla_normalization", setup.normalization_residual(), 1e-12);
  checks.add("rho_a_closed_form", max_abs_diff(simulated.a, closed.a), 1e-10);
  checks.add("rho_b_closed_form", max_abs_diff(simulated.b, closed.b), 1e-10);
  checks.add("rho_c_closed_form", max_abs_diff(simulated.c, closed.c), 1e-10);
  report.summary = "QID D = " + std::to_string(options.dim) + ", xi2 = " + fixed(xi2.real()) +
                   (xi2.imag() < 0 ? " - " : " + ") + fixed(std::abs(xi2.imag())) +
                   "i, xi1 = " + fixed(setup.xi1) + "\n";
  checks.finish(report);
  return report;
}

Report cmd_channel(const ChannelOptions& options) {
  const SpecialKind kind = parse_kind(options.kind, options.nu, options.eta);
  if (options.dim < 2 || options.dim > kMaxChannelDim) {
    throw DomainError("channel requires 2 <= D <= " + std::to_string(kMaxChannelDim));
  }
  ojson inputs = {{"kind", kind_name(kind)},
                  {"dim", options.dim},
                  {"state_file", options.state_file.string()}};
  if (options.nu) inputs["nu"] = *options.nu;
  if (options.eta) inputs["eta"] = *options.eta;
  Report report = start("channel", std::move(inputs));

  const ComplexMatrix rho = read_single_density(options.state_file, options.dim);
  const SuperOperator s = special(kind, options.dim);
  const ComplexMatrix out = apply_ordinary(s, rho);
  const CpResult cp = is_completely_positive(s);
  const bool tp = is_trace_preserving(s);

  ojson& results = report.document["results"];
  results["output"] = matrix(out);
  results["trace_preserving"] = tp;
  results["completely_positive"] = cp.completely_positive;
  results["leftright_spectrum"] = cp.spectrum;

  Checks checks;
  checks.add("output_hermitian", max_abs(out - out.adjoint()), 1e-10);
  report.summary = kind_name(kind) + " on D = " + std::to_string(options.dim) +
                   ": trace preserving " + (tp ? "yes" : "no") + ", completely positive " +
                   (cp.completely_positive ? "yes" : "no") + "\n";
  checks.finish(report);
  return report;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Universal inverters, I-concurrence and the quantum information distributor"};
  app.name("qinvert");
  app.require_subcommand(1);

  ConcurrenceOptions conc;
  auto* sub_conc = app.add_subcommand("concurrence", "I-concurrence of a bipartite state file");
  sub_conc->add_option("state_file", conc.state_file, "BipartiteState JSON")->required();
  sub_conc->add_flag("--minimize", conc.minimize, "minimize over ensemble decompositions");
  sub_conc->add_option("--restarts", conc.restarts, "optimizer restarts");
  sub_conc->add_option("--seed", conc.seed, "random seed");

  VerifyOptions ver;
  auto* sub_ver = app.add_subcommand("verify", "run an invariant suite");
  sub_ver->add_option("--suite", ver.suite, "algebra, appendixB, appendixC, family, qid or all");
  sub_ver->add_option("--dmin", ver.dmin, "smallest dimension");
  sub_ver->add_option("--dmax", ver.dmax, "largest dimension");
  sub_ver->add_option("--seed", ver.seed, "random seed");

  QidOptions qid;
  auto* sub_qid = app.add_subcommand("qid", "simulate the quantum information distributor");
  sub_qid->add_option("D", qid.dim, "qudit dimension")->required();
  sub_qid->add_option("state_file", qid.state_file, "ComplexMatrix JSON density")->required();
  auto* re = sub_qid->add_option("--xi2-re", qid.xi2_re, "real part of xi2");
  auto* im = sub_qid->add_option("--xi2-im", qid.xi2_im, "imaginary part of xi2");
  sub_qid->add_flag("--optimal", qid.optimal, "use the universal-NOT point")
      ->excludes(re)
      ->excludes(im);

  ChannelOptions chan;
  auto* sub_chan = app.add_subcommand("channel", "apply a named superoperator to a state");
  sub_chan->add_option("kind", chan.kind, "superoperator name")->required();
  sub_chan->add_option("D", chan.dim, "dimension")->required();
  sub_chan->add_option("state_file", chan.state_file, "ComplexMatrix JSON density")->required();
  sub_chan->add_option("--nu", chan.nu, "nu parameter");
  sub_chan->add_option("--eta", chan.eta, "eta parameter");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kParseError;
  }

  std::string command = "unknown";
  Report report;
  int code = kOk;
  std::string message;
  try {
    if (*sub_conc) {
      command = "concurrence";
      report = cmd_concurrence(conc);
    } else if (*sub_ver) {
      command = "verify";
      report = cmd_verify(ver);
    } else if (*sub_qid) {
      command = "qid";
      report = cmd_qid(qid);
    } else {
      command = "channel";
      report = cmd_channel(chan);
    }
  } catch (const ParseError& e) {
    code = kParseError;
    message = e.what();
  } catch (const DimensionError& e) {
    code = kInvalidState;
    message = e.what();
  } catch (const InvalidStateError& e) {
    code = kInvalidState;
    message = e.what();
  } catch (const DomainError& e) {
    code = kDomainError;
    message = e.what();
  } catch (const std::invalid_argument& e) {
    code = kParseError;
    message = e.what();
  }

  if (code != kOk) {
    ojson doc = {{"command", command}, {"error", {{"exit_code", code}, {"message", message}}}};
    out << doc.dump(2) << "\n";
    err << "error: " << message << "\n";
    return code;
  }
  out << report.document.dump(2) << "\n";
  err << report.summary;
  return report.exit_code;
}

}  // namespace qinvert::cli

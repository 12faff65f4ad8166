#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tau2/clock_algebra.hpp"
#include "tau2/eigenbasis.hpp"
#include "tau2/hamiltonians.hpp"
#include "tau2/model_config.hpp"
#include "tau2/projector_engine.hpp"
#include "tau2/raising_operators.hpp"
#include "tau2/transfer_matrix.hpp"
#include "tau2/verification.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tau2::ConfigError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw tau2::ConfigError("cannot write '" + out_path + "'");
  out << text;
}

tau2::RunConfig load_config(const std::string& path,
                            const std::vector<std::string>& checks,
                            const std::vector<std::string>& tol_overrides) {
  tau2::RunConfig cfg = tau2::parse_config(read_file(path));
  if (!checks.empty()) cfg.checks = checks;
  for (const std::string& t : tol_overrides) {
    const auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0)
      throw tau2::ConfigError("tolerance override '" + t +
                              "' is not name=value");
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(t.substr(eq + 1), &used);
      if (used != t.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw tau2::ConfigError("tolerance override '" + t +
                              "' has no numeric value");
    }
    if (!(v > 0.0))
      throw tau2::ConfigError("tolerance override '" + t +
                              "' must be positive");
    cfg.tolerances[t.substr(0, eq)] = v;
  }
  return cfg;
}

nlohmann::json complex_json(const tau2::Complex& z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

nlohmann::json complex_array_json(const std::vector<tau2::Complex>& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (const tau2::Complex& z : v) arr.push_back(complex_json(z));
  return arr;
}

tau2::SpectralData compute_spectrum(const tau2::RunConfig& cfg,
                                    tau2::MatrixPoly* tau_out = nullptr) {
  const tau2::Tau2Build tb = tau2::build_tau2_detailed(cfg.params);
  const tau2::FunctionalProduct fp = tau2::functional_product(tb.poly, cfg.N);
  tau2::SpectralData sd = tau2::spectral_roots(
      fp.f, tau2::a0_constant(cfg.params), cfg.N, cfg.L);
  if (tau_out) *tau_out = tb.poly;
  return sd;
}

int run_verify(const tau2::RunConfig& cfg, const std::string& out_path) {
  const tau2::VerificationReport rep = tau2::run_suite(cfg);
  std::cout << tau2::render_report(rep);
  if (!out_path.empty()) emit(tau2::report_to_json(rep), out_path);
  return rep.overall_pass ? 0 : 1;
}

int run_spectrum(const tau2::RunConfig& cfg, const std::string& out_path) {
  const tau2::SpectralData sd = compute_spectrum(cfg);
  nlohmann::json j;
  j["N"] = sd.N;
  j["L"] = sd.L;
  j["A0"] = complex_json(sd.A0);
  j["s"] = complex_array_json(sd.s);
  j["r"] = complex_array_json(sd.r);
  j["lambda"] = complex_array_json(sd.lambda);
  emit(j.dump(2) + "\n", out_path);
  return 0;
}

int run_eigenbasis(const tau2::RunConfig& cfg, const std::string& out_path) {
  tau2::MatrixPoly tau;
  const tau2::SpectralData sd = compute_spectrum(cfg, &tau);
  const int nl = cfg.N * cfg.L;
  const tau2::HamiltonianTower tower =
      tau2::higher_hamiltonians(tau, cfg.L, nl - 1);
  const tau2::VandermondeSystem vs = tau2::prony_inverse(sd.lambda);
  const tau2::ClockSite site = tau2::build_site_ops(cfg.N);
  const tau2::CMatrix h = tower.H[1];
  const tau2::GammaSequence gs = tau2::gamma_sequence(
      h, tau2::embed(site.Z.adjoint(), 1, cfg.L), cfg.N, nl - 1);
  const tau2::HattedGammas hg = tau2::build_gamma_hat(gs, vs, cfg.N, cfg.L);
  const tau2::ProjectorFamily pf = tau2::build_projectors(tower, vs, sd);
  const tau2::Eigenbasis eb =
      tau2::build_eigenbasis(pf, hg, cfg.seed ^ 0x9E3779B97F4A7C15ULL);

  nlohmann::json j;
  j["N"] = cfg.N;
  j["L"] = cfg.L;
  j["abs_gram_det"] = eb.abs_gram_det;
  j["states"] = nlohmann::json::array();
  for (tau2::Index idx = 0; idx < eb.basis.cols(); ++idx) {
    const std::vector<int> tuple = eb.tuple_at(idx);
    nlohmann::json st;
    st["tuple"] = tuple;
    st["energy"] = complex_json(tau2::predicted_eigenvalue(sd, tuple, 1));
    j["states"].push_back(std::move(st));
  }
  emit(j.dump(2) + "\n", out_path);
  return 0;
}

int run_report(const std::string& in_path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(in_path));
  } catch (const nlohmann::json::parse_error& e) {
    throw tau2::ConfigError(std::string("report is not valid JSON: ") +
                            e.what());
  }
  if (!j.contains("checks") || !j.contains("overall_pass"))
    throw tau2::ConfigError("report lacks checks/overall_pass");
  for (const nlohmann::json& c : j["checks"]) {
    const bool skipped = c.value("skipped", false);
    const bool pass = c.value("pass", false);
    const bool asserted = c.value("asserted", true);
    const char* tag = skipped ? (pass ? "SKIP" : "FAIL")
                              : (asserted ? (pass ? "PASS" : "FAIL") : "INFO");
    std::cout << tag << " " << c.value("name", "?");
    if (!skipped && c.contains("residual") && c["residual"].is_number())
      std::cout << "  residual " << c["residual"].get<double>();
    const std::string note = c.value("note", "");
    if (!note.empty()) std::cout << "  (" << note << ")";
    std::cout << "\n";
  }
  const bool ok = j["overall_pass"].get<bool>();
  std::cout << "overall: " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification laboratory for an inhomogeneous open-chain "
               "commuting transfer-matrix family"};
  app.require_subcommand(1);

  std::string config_path, out_path, in_path;
  std::vector<std::string> checks, tol_overrides;

  CLI::App* verify = app.add_subcommand(
      "verify", "run the identity checks and print a report");
  verify->add_option("--config", config_path, "model description (JSON)")
      ->required();
  verify->add_option("--out", out_path, "also write the JSON report here");
  verify->add_option("--checks", checks,
                     "comma-separated subset of check names")
      ->delimiter(',');
  verify->add_option("--tolerance", tol_overrides,
                     "name=value threshold override (repeatable)");

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "print A0, s, r and the lambda grid");
  spectrum->add_option("--config", config_path, "model description (JSON)")
      ->required();
  spectrum->add_option("--out", out_path, "write JSON here instead of stdout");

  CLI::App* eigen = app.add_subcommand(
      "eigenbasis", "construct the joint eigenbasis and list the states");
  eigen->add_option("--config", config_path, "model description (JSON)")
      ->required();
  eigen->add_option("--out", out_path, "write JSON here instead of stdout");

  CLI::App* report = app.add_subcommand(
      "report", "re-render a stored JSON report as text");
  report->add_option("--in", in_path, "JSON report path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed())
      return run_verify(load_config(config_path, checks, tol_overrides),
                        out_path);
    if (spectrum->parsed())
      return run_spectrum(load_config(config_path, {}, {}), out_path);
    if (eigen->parsed())
      return run_eigenbasis(load_config(config_path, {}, {}), out_path);
    if (report->parsed()) return run_report(in_path);
  } catch (const tau2::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const tau2::SizeError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const tau2::InvalidParams& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

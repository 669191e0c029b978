// Command-line front end: builds representations from a JSON config, runs the
// verification pipeline, prints spectra, and hermitizes to file.
//
// Exit codes: 0 every check passed, 1 at least one mathematical check failed,
// 2 usage / configuration / I-O error.

#include <CLI11.hpp>

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "fdpb/fdpb.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

using fdpb::io::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CliOptions {
  std::string config_path;
  std::string input_path;
  std::string output_path;
  std::string model = "h";
  double tol_abs = 1e-10;
  double tol_rel = 1e-10;
  bool tol_abs_set = false;
  bool tol_rel_set = false;
  std::optional<std::int64_t> seed;
  bool json_out = false;
};

void print_check_line(const fdpb::Check& check) {
  std::cout << (check.pass ? "[PASS] " : "[FAIL] ") << check.name
            << "  residual=" << std::scientific << std::setprecision(3)
            << check.residual << std::defaultfloat << '\n';
}

void print_report(const fdpb::ValidationReport& report) {
  for (const auto& check : report.checks) print_check_line(check);
}

double require_param(const json& params, const std::string& key) {
  if (!params.contains(key)) {
    throw ConfigError("generator requires params." + key);
  }
  return params.at(key).get<double>();
}

struct BuildProduct {
  fdpb::Representation rep;
  fdpb::io::RepresentationMeta meta;
};

BuildProduct generate(const std::string& generator, fdpb::Index n,
                      const json& params, const fdpb::Tolerance& tol) {
  BuildProduct product;
  product.meta.generator = generator;
  product.meta.params = params;
  if (params.contains("seed")) {
    product.meta.seed = params.at("seed").get<std::int64_t>();
  }
  const double cap = params.value("condition_cap", 100.0);

  auto base_rep = [&]() {
    if (product.meta.seed) {
      return fdpb::random_deformation(n, std::uint64_t(*product.meta.seed), cap, tol);
    }
    return fdpb::as_representation(fdpb::buchdahl_rep(n));
  };

  if (generator == "buchdahl") {
    product.rep = fdpb::as_representation(fdpb::buchdahl_rep(n));
  } else if (generator == "similarity") {
    const auto seed = std::uint64_t(product.meta.seed.value_or(0));
    if (!product.meta.seed) {
      product.meta.seed = 0;
      product.meta.params["seed"] = 0;
    }
    product.rep = fdpb::random_deformation(n, seed, cap, tol);
  } else if (generator == "n4-alpha") {
    if (n != 4) throw ConfigError("generator n4-alpha requires n = 4");
    product.rep = fdpb::n4_alpha(require_param(params, "alpha"));
  } else if (generator == "swanson") {
    // The Swanson pair violates k a = b k = 0 for theta != 0; the file is
    // still written, carrying its failing validation report.
    const double theta = require_param(params, "theta");
    fdpb::SwansonModel model;
    try {
      model = fdpb::swanson(base_rep(), theta, tol);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    product.rep = {n, model.a_theta, model.b_theta, model.base.k};
  } else if (generator == "shifted") {
    // No ladder triple of its own: record beta for `spectrum --model shifted`.
    const double beta = require_param(params, "beta");
    if (!(beta > 0.0)) throw ConfigError("params.beta must be positive");
    product.rep = base_rep();
  } else {
    throw ConfigError("unknown generator '" + generator + "'");
  }
  return product;
}

int cmd_build(const CliOptions& opts) {
  if (opts.config_path.empty()) throw ConfigError("build requires --config");
  const json config = fdpb::io::read_json_file(opts.config_path);

  fdpb::Tolerance tol;
  tol.abs_eps = opts.tol_abs_set ? opts.tol_abs : config.value("tol_abs", 1e-10);
  tol.rel_eps = opts.tol_rel_set ? opts.tol_rel : config.value("tol_rel", 1e-10);

  if (!config.contains("generator")) throw ConfigError("config requires generator");
  const auto generator = config.at("generator").get<std::string>();
  json params = config.value("params", json::object());
  if (opts.seed) params["seed"] = *opts.seed;

  fdpb::Index n = config.value("n", fdpb::Index(0));
  if (generator == "n4-alpha" && n == 0) n = 4;
  if (n < 2) throw ConfigError("config requires n >= 2");

  BuildProduct product;
  try {
    product = generate(generator, n, params, tol);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  const fdpb::ValidationReport report = fdpb::validate_rep(product.rep, tol);
  json file = fdpb::io::to_json(product.rep, product.meta);
  file["validation"] = fdpb::io::to_json(report);

  std::string output = opts.output_path;
  if (output.empty()) output = config.value("output_path", std::string());
  if (!output.empty()) {
    fdpb::io::write_json_file(output, file);
  } else {
    std::cout << file.dump(2) << '\n';
  }

  if (opts.json_out) {
    std::cout << fdpb::io::to_json(report).dump(2) << '\n';
  } else {
    print_report(report);
    std::cout << (report.passed() ? "build: all checks passed"
                                  : "build: validation FAILED")
              << (output.empty() ? "" : " -> " + output) << '\n';
  }
  return report.passed() ? kExitPass : kExitCheckFailed;
}

fdpb::Representation load_rep(const CliOptions& opts) {
  if (opts.input_path.empty()) throw ConfigError("command requires --input");
  const json j = fdpb::io::read_json_file(opts.input_path);
  try {
    return fdpb::io::representation_from_json(j).rep;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad representation file: ") + e.what());
  }
}

int cmd_verify(const CliOptions& opts) {
  const fdpb::Representation rep = load_rep(opts);
  const fdpb::Tolerance tol{opts.tol_abs, opts.tol_rel};

  fdpb::ValidationReport report;
  std::string failed_stage = "validate_rep";
  try {
    for (auto& check : fdpb::validate_rep(rep, tol).checks)
      report.checks.push_back(std::move(check));
    failed_stage = "check_identities";
    for (auto& check : fdpb::check_identities(rep, tol).checks)
      report.checks.push_back(std::move(check));

    failed_stage = "build_system";
    const fdpb::BiorthogonalSystem sys = fdpb::build_system(rep, tol);
    for (auto& check : fdpb::verify_system(rep, sys, tol).checks)
      report.checks.push_back(std::move(check));

    failed_stage = "build_metrics";
    const fdpb::MetricPair mp = fdpb::build_metrics(sys, tol);
    report.add("S_phi S_psi - 1",
               fdpb::max_abs(mp.s_phi * mp.s_psi -
                             fdpb::Matrix::Identity(rep.n, rep.n)),
               tol.bound(std::max(1.0, fdpb::max_abs(mp.s_phi) *
                                           fdpb::max_abs(mp.s_psi))));
    for (auto& check : fdpb::verify_metrics(rep, sys, mp, tol).checks)
      report.checks.push_back(std::move(check));

    failed_stage = "hermitize";
    const fdpb::HermitianSystem hs = fdpb::hermitize(rep, sys, mp, tol);
    const fdpb::Representation round_trip{hs.n, hs.c, hs.c.adjoint(), hs.big_k};
    for (auto& check : fdpb::validate_rep(round_trip, tol).checks)
      report.checks.push_back({"roundtrip " + check.name, check.residual, check.pass});
    double gram = 0.0;
    for (std::size_t i = 0; i < hs.e_basis.size(); ++i)
      for (std::size_t j = 0; j < hs.e_basis.size(); ++j)
        gram = std::max(gram, std::abs(hs.e_basis[i].dot(hs.e_basis[j]) -
                                       (i == j ? 1.0 : 0.0)));
    report.add("Gram(e) - 1", gram, tol.bound(std::max(1.0, fdpb::max_abs(mp.s_psi))));
  } catch (const std::exception& e) {
    if (opts.json_out) {
      json out = fdpb::io::to_json(report);
      out["error"] = {{"stage", failed_stage}, {"what", e.what()}};
      out["pass"] = false;
      std::cout << out.dump(2) << '\n';
    } else {
      print_report(report);
      std::cout << "[FAIL] stage " << failed_stage << ": " << e.what() << '\n';
    }
    return kExitCheckFailed;
  }

  if (opts.json_out) {
    std::cout << fdpb::io::to_json(report).dump(2) << '\n';
  } else {
    print_report(report);
    std::cout << (report.passed() ? "verify: all checks passed"
                                  : "verify: FAILED")
              << '\n';
  }
  return report.passed() ? kExitPass : kExitCheckFailed;
}

struct ModelSpec {
  std::string kind;  // h | swanson | shifted
  double value = 0.0;
};

ModelSpec parse_model(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  if (kind == "h") {
    if (colon != std::string::npos) throw ConfigError("model h takes no parameter");
    return {"h", 0.0};
  }
  if (kind != "swanson" && kind != "shifted") {
    throw ConfigError("unknown model '" + kind + "' (expected h, swanson:THETA, shifted:BETA)");
  }
  if (colon == std::string::npos || colon + 1 == text.size()) {
    throw ConfigError("model " + kind + " needs a parameter, e.g. " + kind + ":0.25");
  }
  try {
    return {kind, std::stod(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw ConfigError("cannot parse model parameter in '" + text + "'");
  }
}

int cmd_spectrum(const CliOptions& opts) {
  const fdpb::Representation rep = load_rep(opts);
  const fdpb::Tolerance tol{opts.tol_abs, opts.tol_rel};
  const ModelSpec model = parse_model(opts.model);

  if (model.kind == "h") {
    fdpb::BiorthogonalSystem sys;
    fdpb::GeneralEigen eig;
    try {
      sys = fdpb::build_system(rep, tol);
      eig = fdpb::eig_general(fdpb::derived_ops(rep).h);
    } catch (const std::exception& e) {
      std::cout << "[FAIL] spectrum pipeline: " << e.what() << '\n';
      return kExitCheckFailed;
    }
    std::vector<std::pair<double, fdpb::Label>> chain;
    for (const auto& lab : sys.labels) chain.push_back({lab.hprime(), lab});
    std::sort(chain.begin(), chain.end(),
              [](const auto& lhs, const auto& rhs) { return lhs.first < rhs.first; });

    const double bound = tol.bound(std::max(1.0, fdpb::max_abs(eig.values)));
    bool agree = true;
    json rows = json::array();
    for (fdpb::Index i = 0; i < rep.n; ++i) {
      const auto& [hp, lab] = chain[std::size_t(i)];
      const fdpb::Complex ev = eig.values(i);
      const bool row_ok =
          std::abs(ev - fdpb::Complex(hp, 0.0)) <= bound;
      agree = agree && row_ok;
      if (opts.json_out) {
        rows.push_back(json{{"h2", lab.h2},
                            {"k", lab.kprime},
                            {"chain", hp},
                            {"eig_re", ev.real()},
                            {"eig_im", ev.imag()},
                            {"match", row_ok}});
      } else {
        std::cout << (row_ok ? "[PASS] " : "[FAIL] ") << "(h'=" << lab.h2
                  << "/2, k'=" << lab.kprime << ")  chain=" << hp
                  << "  eig=" << ev.real() << (ev.imag() < 0 ? "-" : "+")
                  << std::abs(ev.imag()) << "i\n";
      }
    }
    if (opts.json_out) {
      std::cout << json{{"model", "h"}, {"rows", rows}, {"pass", agree}}.dump(2)
                << '\n';
    } else {
      std::cout << (agree ? "spectrum: chain and eigensolver agree"
                          : "spectrum: MISMATCH")
                << '\n';
    }
    return agree ? kExitPass : kExitCheckFailed;
  }

  if (model.kind == "swanson") {
    fdpb::SpectrumReport report;
    try {
      report = fdpb::swanson_spectrum_report(
          fdpb::swanson(rep, model.value, tol), tol);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    } catch (const std::exception& e) {
      std::cout << "[FAIL] swanson report: " << e.what() << '\n';
      return kExitCheckFailed;
    }
    if (opts.json_out) {
      std::cout << fdpb::io::to_json(report).dump(2) << '\n';
    } else {
      std::cout << "theta=" << report.theta << "  omega=" << report.omega << '\n';
      for (const auto& v : report.computed) {
        std::cout << "  eig " << v.real() << (v.imag() < 0 ? "-" : "+")
                  << std::abs(v.imag()) << "i\n";
      }
      std::cout << "match_scaled=" << (report.match_scaled ? "true" : "false")
                << "  match_unscaled=" << (report.match_unscaled ? "true" : "false")
                << "  max_imag=" << report.max_imag
                << "  intertwiner_residual=" << report.intertwiner_residual << '\n';
    }
    return kExitPass;
  }

  // shifted oscillator
  fdpb::ShiftedOscillator osc;
  try {
    osc = fdpb::shifted_oscillator(rep, model.value);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (opts.json_out) {
    json computed = json::array();
    for (const auto& v : osc.spectrum)
      computed.push_back(json{{"re", v.real()}, {"im", v.imag()}});
    std::cout << json{{"model", "shifted"},
                      {"beta", model.value},
                      {"computed", computed},
                      {"max_imag", osc.max_imag}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << "beta=" << model.value << '\n';
    for (const auto& v : osc.spectrum) {
      std::cout << "  eig " << v.real() << (v.imag() < 0 ? "-" : "+")
                << std::abs(v.imag()) << "i\n";
    }
    std::cout << "max_imag=" << osc.max_imag << '\n';
  }
  return kExitPass;
}

int cmd_hermitize(const CliOptions& opts) {
  const fdpb::Representation rep = load_rep(opts);
  if (opts.output_path.empty()) throw ConfigError("hermitize requires --output");
  const fdpb::Tolerance tol{opts.tol_abs, opts.tol_rel};

  std::string stage = "validate_rep";
  fdpb::HermitianSystem hs;
  try {
    const fdpb::ValidationReport pre = fdpb::validate_rep(rep, tol);
    if (!pre.passed()) {
      std::cout << "[FAIL] stage validate_rep: "
                << pre.first_failure()->name
                << " residual=" << pre.first_failure()->residual << '\n';
      return kExitCheckFailed;
    }
    stage = "build_system";
    const fdpb::BiorthogonalSystem sys = fdpb::build_system(rep, tol);
    stage = "build_metrics";
    const fdpb::MetricPair mp = fdpb::build_metrics(sys, tol);
    stage = "hermitize";
    hs = fdpb::hermitize(rep, sys, mp, tol);
  } catch (const std::exception& e) {
    std::cout << "[FAIL] stage " << stage << ": " << e.what() << '\n';
    return kExitCheckFailed;
  }

  fdpb::io::write_json_file(opts.output_path, fdpb::io::to_json(hs));

  fdpb::ValidationReport report;
  const fdpb::Matrix unit = fdpb::Matrix::Identity(hs.n, hs.n);
  report.add("[c,c†] - (1 - n K)",
             fdpb::max_abs(fdpb::commutator(hs.c, fdpb::Matrix(hs.c.adjoint())) -
                           (unit - double(hs.n) * hs.big_k)),
             tol.bound(std::max(1.0, fdpb::max_abs(hs.c) * fdpb::max_abs(hs.c))));
  double gram = 0.0;
  for (std::size_t i = 0; i < hs.e_basis.size(); ++i)
    for (std::size_t j = 0; j < hs.e_basis.size(); ++j)
      gram = std::max(gram, std::abs(hs.e_basis[i].dot(hs.e_basis[j]) -
                                     (i == j ? 1.0 : 0.0)));
  report.add("Gram(e) - 1", gram, tol.bound(1.0));

  if (opts.json_out) {
    json out = fdpb::io::to_json(report);
    out["output"] = opts.output_path;
    std::cout << out.dump(2) << '\n';
  } else {
    print_report(report);
    std::cout << (report.passed() ? "hermitize: all checks passed -> "
                                  : "hermitize: FAILED -> ")
              << opts.output_path << '\n';
  }
  return report.passed() ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-dimensional pseudo-boson toolkit"};
  app.require_subcommand(1);
  CliOptions opts;

  auto add_tol_flags = [&](CLI::App* cmd) {
    cmd->add_option("--tol-abs", opts.tol_abs, "absolute tolerance")
        ->each([&](const std::string&) { opts.tol_abs_set = true; });
    cmd->add_option("--tol-rel", opts.tol_rel, "relative tolerance")
        ->each([&](const std::string&) { opts.tol_rel_set = true; });
    cmd->add_flag("--json", opts.json_out, "machine-readable output");
  };

  CLI::App* build = app.add_subcommand("build", "generate a representation from config");
  build->add_option("--config", opts.config_path, "RunConfig JSON path")->required();
  build->add_option("--output", opts.output_path, "output path (overrides config)");
  build->add_option("--seed", opts.seed, "seed override");
  add_tol_flags(build);

  CLI::App* verify = app.add_subcommand("verify", "run the full verification pipeline");
  verify->add_option("--input", opts.input_path, "representation JSON path")->required();
  add_tol_flags(verify);

  CLI::App* spectrum = app.add_subcommand("spectrum", "print chain vs eigensolver spectra");
  spectrum->add_option("--input", opts.input_path, "representation JSON path")->required();
  spectrum->add_option("--model", opts.model, "h | swanson:THETA | shifted:BETA");
  add_tol_flags(spectrum);

  CLI::App* hermitize = app.add_subcommand("hermitize", "map to the Hermitian triple");
  hermitize->add_option("--input", opts.input_path, "representation JSON path")->required();
  hermitize->add_option("--output", opts.output_path, "HermitianSystem JSON path")->required();
  add_tol_flags(hermitize);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints help/error text
    return e.get_exit_code() == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (build->parsed()) return cmd_build(opts);
    if (verify->parsed()) return cmd_verify(opts);
    if (spectrum->parsed()) return cmd_spectrum(opts);
    if (hermitize->parsed()) return cmd_hermitize(opts);
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

// regulator-lab: command-line front end to the rlab verification harness.
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or configuration error.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>

#include "rlab/verify.hpp"

using namespace rlab;
using json = nlohmann::ordered_json;

namespace {

struct CommonFlags {
  std::string k, k_grid, out, csv, config;
  double tol = 0;
  int precision = 12;
  unsigned jobs = 1;
  long budget = 4'000'000;
  CLI::Option *tol_opt = nullptr, *precision_opt = nullptr, *jobs_opt = nullptr, *budget_opt = nullptr;

  void attach(CLI::App* app) {
    app->add_option("--k", k, "single parameter value (rational)");
    app->add_option("--k-grid", k_grid, "comma-separated parameter values");
    tol_opt = app->add_option("--tol", tol, "tolerance overriding the per-check defaults");
    precision_opt = app->add_option("--precision", precision, "quadrature digits (4..15)");
    jobs_opt = app->add_option("--jobs", jobs, "worker threads");
    budget_opt = app->add_option("--quadrature-budget", budget, "maximum integrand evaluations per measure");
    app->add_option("--out", out, "write the JSON report here");
    app->add_option("--csv", csv, "write a CSV flattening here");
    app->add_option("--config", config, "key = value file with the same keys as the flags");
  }

  RunConfig build() const {
    RunConfig cfg;
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in) throw ConfigError("cannot open config file '" + config + "'");
      apply_config(cfg, read_config_lines(in));
    }
    if (!k_grid.empty()) cfg.k_grid = parse_k_grid(k_grid);
    if (!k.empty()) cfg.k_grid = parse_k_grid(k);
    if (*tol_opt) cfg.tolerance = tol;
    if (*precision_opt) cfg.precision = precision;
    if (*jobs_opt) cfg.jobs = jobs;
    if (*budget_opt) cfg.quadrature_budget = budget;
    if (!out.empty()) cfg.output_path = out;
    if (!csv.empty()) cfg.csv_path = csv;
    cfg.validate();
    return cfg;
  }
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << text;
}

int emit(const RunConfig& cfg, const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(36) << r.check_id << std::right
              << std::setprecision(16) << " lhs=" << r.lhs << " rhs=" << r.rhs << std::setprecision(3)
              << " err=" << r.abs_error << " tol=" << r.tolerance;
    if (!r.multipliers.empty()) {
      std::cout << " [";
      bool first = true;
      for (const auto& [name, v] : r.multipliers) {
        std::cout << (first ? "" : " ") << name << '=' << std::setprecision(10) << v;
        first = false;
      }
      std::cout << ']';
    }
    std::cout << '\n';
  }
  const auto passed = std::count_if(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
  std::cout << passed << '/' << reports.size() << " checks passed\n";
  if (!cfg.output_path.empty()) write_file(cfg.output_path, report_document(cfg, reports).dump(2) + "\n");
  if (!cfg.csv_path.empty()) write_file(cfg.csv_path, reports_csv(reports));
  return all_pass(reports) ? 0 : 1;
}

int mahler_eval(const std::string& poly, const std::string& k, int precision, long budget, const std::string& out) {
  Bindings bind;
  if (!k.empty()) bind["k"] = parse_rational(k);
  const auto p = parse_poly(poly, bind);
  if (p.is_zero()) throw ConfigError("the zero polynomial has no Mahler measure");
  RunConfig cfg;
  cfg.precision = precision;
  cfg.quadrature_budget = budget;
  cfg.validate();
  const bool two_var = p.occurs(0) && p.nvars() > 1 && p.occurs(1);
  double value, error;
  long evals = 0;
  if (two_var) {
    const auto r = mahler_2d(p, cfg.mahler_options());
    value = r.value;
    error = r.error;
    evals = r.evaluations;
  } else {
    const auto r = mahler_1d(p);
    value = r.value;
    error = r.error;
  }
  std::cout << std::setprecision(16) << "m = " << value << " +/- " << std::setprecision(2) << error << '\n';
  if (!out.empty()) {
    json j;
    j["poly"] = poly;
    j["k"] = k.empty() ? json(nullptr) : json(k);
    j["value"] = value;
    j["error"] = error;
    j["evaluations"] = evals;
    write_file(out, j.dump(2) + "\n");
  }
  return 0;
}

int curve_info(const std::string& kind_name, const std::string& k_text, const std::string& out) {
  const auto kind = curve_kind_from_name(kind_name);
  const Rational k = parse_rational(k_text);
  const auto e = curve(kind, k);
  json j;
  j["curve"] = curve_kind_name(kind);
  j["k"] = to_string(k);
  j["equation"] = equation_string(e);
  j["a"] = {to_string(e.a1), to_string(e.a2), to_string(e.a3), to_string(e.a4), to_string(e.a6)};
  j["discriminant"] = to_string(e.discriminant());
  j["j"] = to_string(e.j_invariant());
  const auto mm = minimal_model_data(e);
  j["minimalModel"] = equation_string(mm.curve);
  j["conductor"] = mm.conductor.str();
  json bad = json::array();
  for (const auto& l : mm.local)
    bad.push_back({{"p", l.p.str()}, {"f", l.f}, {"kodaira", l.kodaira}, {"ap", l.bad_ap}});
  j["badPrimes"] = bad;
  const auto L = periods(e);
  auto cplx = [](cld z) { return json::array({static_cast<double>(z.real()), static_cast<double>(z.imag())}); };
  j["omega1"] = cplx(L.omega1);
  j["omega2"] = cplx(L.omega2);
  j["tau"] = cplx(L.tau);
  std::cout << j.dump(2) << '\n';
  if (!out.empty()) write_file(out, j.dump(2) + "\n");
  return 0;
}

int dilog_cmd(const std::string& k_text, const std::string& z_text, const std::string& out) {
  json j;
  if (!z_text.empty()) {
    const auto comma = z_text.find(',');
    const long double re = std::stold(z_text.substr(0, comma));
    const long double im = comma == std::string::npos ? 0 : std::stold(z_text.substr(comma + 1));
    j["z"] = {static_cast<double>(re), static_cast<double>(im)};
    j["D"] = static_cast<double>(bloch_wigner(cld(re, im)));
  }
  if (!k_text.empty()) {
    const Rational k = parse_rational(k_text);
    j["k"] = to_string(k);
    const auto E = curve(CurveKind::Ek, k);
    j["DE_S"] = static_cast<double>(elliptic_dilog(E, detail::point_S(k), periods(E)));
    try {
      j["DU_combination"] = static_cast<double>(detail::dilog_u_combination(k));
    } catch (const SingularCurveError& e) {
      j["DU_combination"] = nullptr;
      j["note"] = e.what();
    }
  }
  if (j.empty()) throw ConfigError("dilog needs --z or --k");
  std::cout << std::setprecision(16) << j.dump(2) << '\n';
  if (!out.empty()) write_file(out, j.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of shifted Mahler measure identities"};
  app.require_subcommand(1);

  auto* mahler = app.add_subcommand("mahler", "Mahler measures");
  mahler->require_subcommand(1);
  auto* eval = mahler->add_subcommand("eval", "measure of a polynomial in x, y");
  std::string poly, poly_k, poly_out;
  int poly_precision = 12;
  long poly_budget = 4'000'000;
  eval->add_option("--poly", poly, "polynomial, e.g. \"x+y+2\"")->required();
  eval->add_option("--k", poly_k, "value bound to the parameter k");
  eval->add_option("--precision", poly_precision, "quadrature digits (4..15)");
  eval->add_option("--quadrature-budget", poly_budget, "maximum integrand evaluations");
  eval->add_option("--out", poly_out, "write the result as JSON");

  auto* verify = app.add_subcommand("verify", "run verification checks");
  verify->require_subcommand(1);
  const std::vector<std::string> checks{"theorem", "regulator", "paths", "periods", "corollary", "torsion"};
  std::map<std::string, CommonFlags> flags;
  for (const auto& name : checks) flags[name].attach(verify->add_subcommand(name, name + " checks"));

  auto* curve_cmd = app.add_subcommand("curve", "elliptic curve data");
  curve_cmd->require_subcommand(1);
  auto* info = curve_cmd->add_subcommand("info", "model, invariants, conductor and periods");
  std::string curve_kind = "E", curve_k, curve_out;
  info->add_option("--curve", curve_kind, "E, U or F")->check(CLI::IsMember({"E", "U", "F", "Ek", "Uk", "Fk"}));
  info->add_option("--k", curve_k, "parameter (rational)")->required();
  info->add_option("--out", curve_out, "write JSON here");

  auto* dilog = app.add_subcommand("dilog", "Bloch-Wigner and elliptic dilogarithm values");
  std::string dilog_k, dilog_z, dilog_out;
  dilog->add_option("--k", dilog_k, "D^E(S) on E_k and D^U(-6(P)-6(2P)) on U_k");
  dilog->add_option("--z", dilog_z, "Bloch-Wigner D(z) at z = re,im");
  dilog->add_option("--out", dilog_out, "write JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*eval) return mahler_eval(poly, poly_k, poly_precision, poly_budget, poly_out);
    if (*info) return curve_info(curve_kind, curve_k, curve_out);
    if (*dilog) return dilog_cmd(dilog_k, dilog_z, dilog_out);
    for (const auto& name : checks) {
      if (!*verify->get_subcommand(name)) continue;
      const auto cfg = flags.at(name).build();
      std::vector<VerificationReport> reports;
      if (name == "theorem") reports = verify_theorem(cfg);
      else if (name == "regulator") reports = verify_regulator(cfg);
      else if (name == "paths") reports = verify_paths(cfg);
      else if (name == "periods") reports = verify_periods(cfg);
      else if (name == "corollary") reports = verify_corollary(cfg);
      else reports = verify_torsion(cfg);
      return emit(cfg, reports);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

// Command-line front end: derives ladder certificates, polynomial algebras,
// Casimir values, structure functions and spectra for the catalogued
// superintegrable potentials, with an optional finite-difference cross-check.

#include <CLI11.hpp>
#include <fstream>
#include <future>
#include <iostream>

#include "siqs/report.hpp"

using namespace siqs;

namespace {

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ParamBinding parse_params(const std::string& text) {
  ParamBinding out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw CliError("bad parameter binding '" + item + "' (use name=num/den)");
    std::string name = item.substr(0, eq), value = item.substr(eq + 1);
    Symbol s = Symbol::named(name);
    try {
      out.emplace_back(s, Rational::parse(value));
    } catch (const std::invalid_argument& e) {
      throw CliError(std::string(e.what()) + " (exact rationals only, e.g. alpha=-1 or omega=3/2)");
    }
  }
  return out;
}

Rational binding_of(const ParamBinding& params, Symbol s, const char* what) {
  for (const auto& [sym_, v] : params)
    if (sym_ == s) return v;
  throw CliError(std::string("missing parameter '") + std::string(s.name()) + "' for " + what);
}

int out_or_print(const json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream f(path);
    f << j.dump(2) << "\n";
    if (!f) throw CliError("cannot write " + path);
  }
  return 0;
}

bool is_json_input(const std::string& name) {
  return name.size() > 5 && name.substr(name.size() - 5) == ".json";
}

json load_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CliError("cannot read " + path);
  json j;
  f >> j;
  return j;
}

struct Pipeline {
  const PotentialSpec* spec = nullptr;  // null for user-supplied algebras
  AlgebraSpec algebra;
  MultiPoly casimir;
  PhysicalRealization real;
  std::vector<LedgerEntry> ledger;

  static Pipeline for_potential(const std::string& name) {
    Pipeline p;
    p.spec = &catalog_get(name);
    p.real = physical_realization(*p.spec);
    p.algebra = p.real.algebra;
    p.casimir = p.real.casimir;
    auto merge = [&](std::vector<LedgerEntry> v) {
      p.ledger.insert(p.ledger.end(), v.begin(), v.end());
    };
    merge(ladder_ledger(*p.spec));
    merge(algebra_ledger(*p.spec, p.algebra));
    merge(phi_ledger(p.real));
    return p;
  }

  static Pipeline for_json(const json& j) {
    Pipeline p;
    p.algebra = algebra_from_json(j.at("algebra"));
    p.casimir = MultiPoly::parse(j.at("casimir").get<std::string>());
    p.real.algebra = p.algebra;
    p.real.casimir = p.casimir;
    p.real.twisted = j.value("twisted", false);
    p.real.realized = p.algebra;
    p.real.realized_K = p.casimir;
    if (p.real.twisted) {
      for (auto& c : p.real.realized.c) c = -c;
      p.real.realized_K = -p.real.realized_K;
    }
    StructureFn phi = derive_phi(p.real.realized, p.real.realized_K);
    if (j.contains("sqrt_delta")) {
      p.real.s_expr = MultiPoly::parse(j.at("sqrt_delta").get<std::string>());
      if (p.real.s_expr * p.real.s_expr != p.algebra.delta)
        throw CliError("sqrt_delta does not square to delta");
      p.real.phi.phi_t = phi.phi_t.substitute(sym::sqrt_delta, p.real.s_expr);
    } else {
      p.real.phi = phi;
    }
    return p;
  }

  json base_json(const std::string& name) const {
    json j;
    j["schema"] = 1;
    j["potential"] = name;
    if (spec) {
      json ladder;
      ladder["x"] = axis_to_json(spec->x_axis);
      ladder["y"] = axis_to_json(spec->y_axis);
      ladder["resonance"] = json::array({spec->res_m, spec->res_n});
      ladder["scaling"] =
          json{{"factor", spec->scaling.str()}, {"i_parity", spec->scaling_i_parity}};
      j["ladder"] = ladder;
    }
    j["algebra"] = algebra_to_json(algebra);
    j["casimir"] = casimir.str();
    j["realization"] = json{{"twisted", real.twisted}, {"sqrt_delta", real.s_expr.str()}};
    j["typo_ledger"] = ledger_to_json(ledger);
    return j;
  }
};

json params_to_json(const ParamBinding& params) {
  json j = json::object();
  for (const auto& [s, v] : params) j[std::string(s.name())] = v.str();
  return j;
}

json phi_to_json(const PhysicalRealization& real, std::vector<LedgerEntry>& ledger) {
  json j;
  json coeffs = json::array();
  for (int k = 0; k <= real.phi.degree(); ++k)
    coeffs.push_back(real.phi.phi_t.coeff_of(sym::x, k).str());
  j["coeffs_in_t"] = coeffs;
  try {
    RootList roots = factor_phi(real.phi);
    j["factors"] = rootlist_to_json(roots);
  } catch (const NotLinearlyFactorable& e) {
    j["factors"] = nullptr;
    j["factor_error"] = e.what();
  }
  (void)ledger;
  return j;
}

int threads_cap() {
  if (const char* env = std::getenv("SIQS_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 2;
}

struct SpectrumOutput {
  EnumerationResult reps;
  RootList roots;
  double vmin = 0.0;
  bool vmin_available = false;
};

SpectrumOutput run_spectrum(Pipeline& pipe, const ParamBinding& params, int p_max,
                            const std::string& name) {
  SpectrumOutput out;
  out.roots = factor_phi(pipe.real.phi);
  Rational alpha = binding_of(params, sym::alpha, "spectrum");
  if (alpha.sign() > 0)
    out.reps = real_a_branch(out.roots, params, p_max);
  else
    out.reps = enumerate_reps(out.roots, params, p_max);
  if (pipe.spec) {
    MinPotentialOptions opts;
    opts.central_domain = alpha.sign() > 0;
    try {
      out.vmin = min_potential(*pipe.spec, params, opts);
      out.vmin_available = true;
      spurious_filter(out.reps, out.vmin, 1e-9);
    } catch (const SingularOnDomain&) {
      out.vmin_available = false;
    }
    Rational hbar = binding_of(params, sym::hbar, "spectrum");
    if (hbar == Rational(1) && (alpha == Rational(1) || alpha == Rational(-1))) {
      auto extra = representation_ledger(name, alpha.sign(), out.reps, p_max);
      pipe.ledger.insert(pipe.ledger.end(), extra.begin(), extra.end());
    }
  }
  return out;
}

struct NumericOutput {
  std::vector<Level2D> levels;
  MatchReport match;
  std::vector<std::string> branch_of_row;
  std::vector<double> harmonic_errors;
};

NumericOutput run_numeric(const PotentialSpec& spec, const SpectrumOutput& alg,
                          const ParamBinding& params, int grid_n, double box, double e_max,
                          double tol, int k_levels) {
  NumericOutput out;
  Grid1D gx{-box, box, grid_n};
  Grid1D gy{-box, box, grid_n};
  if (spec.x_axis.domain == AxisDomain::HalfLinePositive) gx.lo = 0.0;
  if (spec.y_axis.domain == AxisDomain::HalfLinePositive) gy.lo = 0.0;

  bool same_axis = spec.y_axis.potential == spec.x_axis.potential.rename(sym::x, sym::y) &&
                   spec.x_axis.domain == spec.y_axis.domain;
  EigenResult ex, ey;
  if (same_axis) {
    ex = solve_1d(spec.x_axis, params, gx, k_levels);
    ey = ex;
  } else if (threads_cap() >= 2) {
    auto fx = std::async(std::launch::async,
                         [&] { return solve_1d(spec.x_axis, params, gx, k_levels); });
    ey = solve_1d(spec.y_axis, params, gy, k_levels);
    ex = fx.get();
  } else {
    ex = solve_1d(spec.x_axis, params, gx, k_levels);
    ey = solve_1d(spec.y_axis, params, gy, k_levels);
  }
  out.levels = assemble_2d(ex, ey, e_max);

  std::vector<double> numeric;
  for (const auto& l : out.levels) numeric.push_back(l.energy);
  std::vector<double> algebraic;
  std::vector<std::string> labels;
  for (const auto& rep : alg.reps.reps) {
    for (size_t i = 0; i < rep.p_admitted.size(); ++i) {
      algebraic.push_back(rep.energies[i].to_double());
      labels.push_back(energy_law_str(rep.e_slope, rep.e_intercept) + " @ p=" +
                       std::to_string(rep.p_admitted[i]));
    }
  }
  out.match = compare_spectra(numeric, algebraic, tol);
  for (const auto& row : out.match.rows) {
    std::string label = "unmatched";
    for (size_t i = 0; i < algebraic.size(); ++i)
      if (algebraic[i] == row.algebraic) {
        label = labels[i];
        break;
      }
    out.branch_of_row.push_back(label);
  }
  return out;
}

json numeric_to_json(const NumericOutput& num, double tol) {
  json rows = json::array();
  for (size_t i = 0; i < num.match.rows.size(); ++i) {
    const auto& r = num.match.rows[i];
    rows.push_back(json{{"E_numeric", r.numeric},
                        {"E_algebraic", r.algebraic},
                        {"residual", r.residual},
                        {"branch", num.branch_of_row[i]}});
  }
  return json{{"tolerance", tol},
              {"max_residual", num.match.max_residual},
              {"pass", num.match.pass},
              {"levels", rows}};
}

void write_csv(const NumericOutput& num, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw CliError("cannot write " + path);
  f << "E_numeric,E_algebraic,residual,branch_id\n";
  for (size_t i = 0; i < num.match.rows.size(); ++i) {
    const auto& r = num.match.rows[i];
    f << r.numeric << "," << r.algebraic << "," << r.residual << ",\"" << num.branch_of_row[i]
      << "\"\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"siqs: ladder-operator integrals, polynomial algebras and spectra\n"
               "for 2D superintegrable Hamiltonians separable in Cartesian coordinates"};
  app.require_subcommand(1);

  std::string target, params_text, out_path, csv_path;
  int p_max = 8;
  int grid_n = 4000;
  double box = 14.0, e_max = 6.0, tol = 1e-3;
  int k_levels = 12;

  auto add_target = [&](CLI::App* cmd, bool with_params) {
    cmd->add_option("potential", target, "catalog name (ho2d, sw1, p1, p5, p6) or algebra .json")
        ->required();
    if (with_params)
      cmd->add_option("--params", params_text, "rational bindings, e.g. hbar=1,alpha=-1");
    cmd->add_option("--out", out_path, "write the JSON report here instead of stdout");
  };

  CLI::App* ladder = app.add_subcommand("ladder-check", "verify ladder certificates");
  add_target(ladder, false);
  CLI::App* algebra = app.add_subcommand("algebra", "derive the polynomial algebra");
  add_target(algebra, false);
  CLI::App* casimir = app.add_subcommand("casimir", "derive the Casimir polynomial");
  add_target(casimir, false);
  CLI::App* phi = app.add_subcommand("phi", "derive the structure function");
  add_target(phi, false);
  CLI::App* spectrum = app.add_subcommand("spectrum", "enumerate unitary representations");
  add_target(spectrum, true);
  spectrum->add_option("--pmax", p_max, "largest representation index (<= 64)");
  CLI::App* numeric = app.add_subcommand("numeric-check", "finite-difference cross-check");
  add_target(numeric, true);
  numeric->add_option("--pmax", p_max);
  numeric->add_option("--grid-n", grid_n, "grid points per axis (<= 1000000)");
  numeric->add_option("--box", box, "half-width of the full-line box");
  numeric->add_option("--emax", e_max, "2D assembly cutoff");
  numeric->add_option("--tol", tol, "match tolerance");
  numeric->add_option("--levels", k_levels, "1D levels per axis");
  numeric->add_option("--csv", csv_path, "also write a comparison CSV");
  CLI::App* full = app.add_subcommand("full-report", "everything in one JSON");
  add_target(full, true);
  full->add_option("--pmax", p_max);
  full->add_option("--grid-n", grid_n);
  full->add_option("--box", box);
  full->add_option("--emax", e_max);
  full->add_option("--tol", tol);
  full->add_option("--levels", k_levels);
  full->add_option("--csv", csv_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (p_max < 0 || p_max > 64) throw CliError("--pmax must be in 0..64");
    if (grid_n < 200 || grid_n > 1000000) throw CliError("--grid-n must be in 200..1000000");

    Pipeline pipe = is_json_input(target) ? Pipeline::for_json(load_json(target))
                                          : Pipeline::for_potential(target);
    std::string name = is_json_input(target) ? "user-algebra" : target;
    json report = pipe.base_json(name);

    if (ladder->parsed()) {
      if (!pipe.spec) throw CliError("ladder-check needs a catalogued potential");
      report.erase("algebra");
      report.erase("casimir");
      report.erase("realization");
      return out_or_print(report, out_path);
    }
    if (algebra->parsed()) return out_or_print(report, out_path);
    if (casimir->parsed()) return out_or_print(report, out_path);
    if (phi->parsed()) {
      report["phi"] = phi_to_json(pipe.real, pipe.ledger);
      report["typo_ledger"] = ledger_to_json(pipe.ledger);
      return out_or_print(report, out_path);
    }

    ParamBinding params = parse_params(params_text);
    if (spectrum->parsed() || numeric->parsed() || full->parsed()) {
      if (params.empty()) throw CliError("--params is required (e.g. hbar=1,alpha=-1)");
      report["params"] = params_to_json(params);
      report["phi"] = phi_to_json(pipe.real, pipe.ledger);
      SpectrumOutput sp = run_spectrum(pipe, params, p_max, name);
      report["representations"] = reps_to_json(sp.reps);
      report["min_V"] = sp.vmin_available ? json(sp.vmin) : json(nullptr);
      report["typo_ledger"] = ledger_to_json(pipe.ledger);
      if (spectrum->parsed()) return out_or_print(report, out_path);

      if (!pipe.spec) throw CliError("numeric-check needs a catalogued potential");
      Rational alpha = binding_of(params, sym::alpha, "numeric-check");
      if (alpha.sign() >= 0 && pipe.spec->x_axis.potential.den().depends_on(sym::x))
        throw CliError("numeric validation is limited to alpha < 0 (regular potentials)");
      NumericOutput num = run_numeric(*pipe.spec, sp, params, grid_n, box, e_max, tol, k_levels);
      report["numeric"] = numeric_to_json(num, tol);
      if (!csv_path.empty()) write_csv(num, csv_path);
      out_or_print(report, out_path);
      return num.match.pass ? 0 : 2;
    }
    throw CliError("no subcommand handled");
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const UnknownPotential& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    // Verification failures from the engine: exact checks that did not close.
    std::cerr << "verification failure: " << e.what() << "\n";
    return 2;
  }
}

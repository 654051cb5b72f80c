// Command-line front end: reads a JSON job description, dispatches to the
// compute modules, and writes machine-readable reports.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>

#include <CLI11.hpp>

#include "latspec/limitops.hpp"
#include "latspec/serialize.hpp"
#include "latspec/symbol.hpp"

namespace fs = std::filesystem;
using namespace latspec;

namespace {

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  int grid = 0;           // 0: module default
  double tol = 0;         // 0: module default
  std::vector<int> Ls;    // overrides config when nonempty
  double delta = 0;       // 0: keep config
  unsigned seed = 0;      // 0: keep config
  std::string mode;       // "", "all", "extremal" or "extremal:k"
  std::string format = "json";
};

OracleConfig oracle_from_config(const json& cfg, const Options& opt) {
  OracleConfig oc;
  if (cfg.contains("oracle")) {
    const json& j = cfg.at("oracle");
    require_keys(j, {"Ls", "delta", "mode", "extremal_count", "seed",
                     "residual_tol"},
                 "oracle config");
    oc.Ls = j.value("Ls", oc.Ls);
    oc.delta = j.value("delta", oc.delta);
    oc.extremal_count = j.value("extremal_count", oc.extremal_count);
    oc.seed = j.value("seed", oc.seed);
    oc.residual_tol = j.value("residual_tol", oc.residual_tol);
    if (j.contains("mode")) {
      std::string m = j.at("mode").get<std::string>();
      if (m == "all") {
        oc.mode = TruncationConfig::Mode::All;
      } else if (m.rfind("extremal", 0) == 0) {
        oc.mode = TruncationConfig::Mode::Extremal;
        auto colon = m.find(':');
        if (colon != std::string::npos)
          oc.extremal_count = std::stoi(m.substr(colon + 1));
      } else {
        throw std::invalid_argument("oracle config: unknown mode '" + m + "'");
      }
    }
  }
  if (!opt.Ls.empty()) oc.Ls = opt.Ls;
  if (opt.delta > 0) oc.delta = opt.delta;
  if (opt.seed != 0) oc.seed = opt.seed;
  if (!opt.mode.empty()) {
    if (opt.mode == "all") {
      oc.mode = TruncationConfig::Mode::All;
    } else if (opt.mode.rfind("extremal", 0) == 0) {
      oc.mode = TruncationConfig::Mode::Extremal;
      auto colon = opt.mode.find(':');
      if (colon != std::string::npos)
        oc.extremal_count = std::stoi(opt.mode.substr(colon + 1));
    } else {
      throw std::invalid_argument("--mode must be all or extremal[:k]");
    }
  }
  if (oc.Ls.empty()) throw std::invalid_argument("oracle config: empty L list");
  return oc;
}

TorusGrid grid_for(const LatticeOperator& op, const json& cfg,
                   const Options& opt) {
  int n = opt.grid > 0 ? opt.grid : cfg.value("grid", 0);
  if (n > 0) return TorusGrid::uniform(op.dim(), n);
  return default_symbol_grid(op.dim());
}

void write_report(const Options& opt, const std::string& name,
                  const json& report) {
  fs::create_directories(opt.out_dir);
  fs::path path = fs::path(opt.out_dir) / (name + ".json");
  std::ofstream os(path);
  os << report.dump(2) << "\n";
  std::cout << report.dump(2) << "\n";
}

Point lcm_period(const LatticeOperator& op) {
  Point r = Point::Ones(op.dim());
  for (const auto& [shift, coef] : op.terms())
    if (coef.category() == Coefficient::Category::Periodic) {
      const Point& p = coef.as_periodic().period;
      for (int k = 0; k < op.dim(); ++k)
        r[k] = r[k] / std::gcd(r[k], p[k]) * p[k];
    }
  return r;
}

int run(const std::string& command, const Options& opt) {
  std::ifstream in(opt.config_path);
  if (!in) throw std::invalid_argument("cannot open config: " + opt.config_path);
  json cfg = json::parse(in);
  require_keys(cfg,
               {"command", "operator", "grid", "tol", "oracle", "predicted",
                "waveguide", "threebody", "period"},
               "config");
  if (cfg.contains("command") &&
      cfg.at("command").get<std::string>() != command)
    throw std::invalid_argument("config command does not match subcommand");

  json report;
  report["command"] = command;

  if (command == "spectrum") {
    LatticeOperator op = operator_from_json(cfg.at("operator"));
    SpectrumSet s =
        ess_spectrum_general(op, grid_for(op, cfg, opt), oracle_from_config(cfg, opt));
    report["spectrum"] = spectrum_to_json(s);
  } else if (command == "bands") {
    LatticeOperator op = operator_from_json(cfg.at("operator"));
    Point r = cfg.contains("period")
                  ? [&] {
                      Point p(op.dim());
                      auto v = cfg.at("period").get<std::vector<int>>();
                      if (static_cast<int>(v.size()) != op.dim())
                        throw std::invalid_argument("period: wrong dimension");
                      for (int k = 0; k < op.dim(); ++k) p[k] = v[k];
                      return p;
                    }()
                  : lcm_period(op);
    PeriodSymbol sym = build_symbol(op, r);
    TorusGrid grid = opt.grid > 0 || cfg.contains("grid")
                         ? TorusGrid::uniform(op.dim(),
                                              opt.grid > 0 ? opt.grid
                                                           : cfg.at("grid").get<int>())
                         : default_band_grid(op.dim());
    BandSample bands = band_sample(sym, grid);
    fs::create_directories(opt.out_dir);
    std::ofstream csv(fs::path(opt.out_dir) / "bands.csv");
    write_band_csv(csv, bands);
    report["spectrum"] = spectrum_to_json(periodic_spectrum(sym, grid));
    report["csv"] = (fs::path(opt.out_dir) / "bands.csv").string();
  } else if (command == "limitops") {
    LatticeOperator op = operator_from_json(cfg.at("operator"));
    LimitOperatorFamily family = enumerate_limit_ops(op);
    OracleConfig oc = oracle_from_config(cfg, opt);
    json members = json::array();
    for (const LimitMember& m : family.members) {
      json entry;
      entry["label"] = m.label;
      entry["spectrum"] =
          spectrum_to_json(ess_spectrum_general(m.op, grid_for(m.op, cfg, opt), oc));
      members.push_back(entry);
    }
    report["members"] = members;
    report["envelope_connected"] = family.envelope_connected;
    report["notes"] = family.notes;
  } else if (command == "oracle" || command == "verify") {
    LatticeOperator op = operator_from_json(cfg.at("operator"));
    OracleConfig oc = oracle_from_config(cfg, opt);
    SpectrumSet predicted =
        cfg.contains("predicted")
            ? spectrum_from_json(cfg.at("predicted"))
            : ess_spectrum_general(op, grid_for(op, cfg, opt), oc);
    CoverageReport cov = coverage(predicted, op, oc);
    report = coverage_to_json(cov);
    report["command"] = command;
    if (command == "verify") {
      int stable = 0;
      for (const Outlier& o : cov.outliers) stable += o.stable ? 1 : 0;
      std::cout << "verify: coverage_fraction=" << cov.coverage_fraction
                << " stable_outliers=" << stable << "\n";
    }
  } else if (command == "waveguide") {
    const json& w = cfg.at("waveguide");
    require_keys(w, {"dim", "env_plus", "env_minus", "profiles"},
                 "waveguide config");
    auto env = [&](const char* key) {
      const json& e = w.at(key);
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("waveguide envelope must be [lo, hi]");
      return Interval(e[0].get<double>(), e[1].get<double>());
    };
    std::vector<Coefficient> profiles;
    for (const json& pj : w.at("profiles"))
      profiles.push_back(coefficient_from_json(pj));
    SpectrumSet s = ess_spectrum_waveguide(w.at("dim").get<int>(),
                                           env("env_plus"), env("env_minus"),
                                           profiles, oracle_from_config(cfg, opt));
    report["spectrum"] = spectrum_to_json(s);
  } else if (command == "threebody") {
    ThreeBodyProblem p = three_body_from_json(cfg.at("threebody"));
    OracleConfig oc = oracle_from_config(cfg, opt);
    bool bounds_only = false;
    SpectrumSet s1 = subsystem_spectrum(p, 1, oc);
    SpectrumSet s2 = subsystem_spectrum(p, 2, oc);
    SpectrumSet s12 = interaction_spectrum(p, oc, &bounds_only);
    auto [inf_est, sup_est] = bounds_formula(p);
    report["spectrum"] =
        spectrum_to_json(set_union(set_union(s1, s2), s12));
    report["H1"] = spectrum_to_json(s1);
    report["H2"] = spectrum_to_json(s2);
    report["H12"] = spectrum_to_json(s12);
    report["H12_bounds_only"] = bounds_only;
    report["m"] = p.m();
    report["bounds"] = {{"inf", inf_est}, {"sup", sup_est}};
  } else {
    throw std::invalid_argument("unknown command: " + command);
  }

  write_report(opt, command, report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Essential spectra of discrete Schrodinger operators on Z^N"};
  app.require_subcommand(1);

  Options opt;
  std::string command;
  for (const char* name : {"spectrum", "bands", "limitops", "oracle",
                           "waveguide", "threebody", "verify"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", opt.config_path, "job description (JSON)")
        ->required();
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--grid", opt.grid, "torus grid resolution per axis");
    sub->add_option("--tol", opt.tol, "numerical tolerance override");
    sub->add_option("--L", opt.Ls, "truncation radii (repeatable)");
    sub->add_option("--delta", opt.delta, "oracle resolution delta");
    sub->add_option("--seed", opt.seed, "random seed");
    sub->add_option("--mode", opt.mode, "oracle mode: all | extremal[:k]");
    sub->add_option("--format", opt.format, "json | csv");
    sub->callback([&command, name] { command = name; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    return run(command, opt);
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

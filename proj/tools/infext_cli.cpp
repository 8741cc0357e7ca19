// infext: command-line drivers over the infext library.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "infext/io.hpp"
#include "infext/measures.hpp"
#include "infext/process.hpp"
#include "infext/verify.hpp"
#include "infext/vladimirov.hpp"

using namespace infext;

namespace {

struct Common {
  std::string tower_file;
  std::string preset;
  double alpha = 1.0;
  std::string out = "-";
  std::string format = "csv";
  std::uint64_t seed = 20240601;
  double tolerance = kShellTolerance;
};

// Presets: Q<p>, unramified:<p>:<f1>,<f2>,...  cyclotomic:<p>:<depth>  sqrt2
Tower preset_tower(const std::string& name) {
  auto parts = [&] {
    std::vector<std::string> v;
    std::stringstream ss(name);
    std::string s;
    while (std::getline(ss, s, ':')) v.push_back(s);
    return v;
  }();
  auto to_long = [&](const std::string& s) {
    try {
      return std::stol(s);
    } catch (const std::exception&) {
      throw ConfigError("preset '" + name + "': '" + s + "' is not an integer");
    }
  };
  if (parts.size() == 1 && name.size() > 1 && name[0] == 'Q') {
    return parse_tower("{\"p\": " + std::to_string(to_long(name.substr(1))) + ", \"steps\": []}");
  }
  if (parts.size() == 1 && name == "sqrt2") {
    return parse_tower(R"({"p": 2, "steps": [{"kind": "eisenstein", "poly": [["-2", 0], ["1", 2]]}]})");
  }
  if (parts.size() == 3 && parts[0] == "unramified") {
    std::vector<int> f;
    std::stringstream ss(parts[2]);
    std::string s;
    while (std::getline(ss, s, ',')) f.push_back(static_cast<int>(to_long(s)));
    return build_unramified_tower(to_long(parts[1]), f);
  }
  if (parts.size() == 3 && parts[0] == "cyclotomic") {
    return build_cyclotomic_tower(to_long(parts[1]), static_cast<int>(to_long(parts[2])));
  }
  throw ConfigError("unknown tower preset '" + name + "'");
}

constexpr const char* kFactorialPreset = "unramified:2:1,2,6,24";

Tower resolve_tower(Common& c, const std::string& fallback) {
  if (!c.tower_file.empty()) return load_tower(c.tower_file);
  if (c.preset.empty()) c.preset = fallback;
  return preset_tower(c.preset);
}

Config base_config(const Common& c, const Tower& T) {
  Config cfg;
  cfg["alpha"] = format_double(c.alpha);
  cfg["format"] = c.format;
  cfg["seed"] = std::to_string(c.seed);
  cfg["tolerance"] = format_double(c.tolerance);
  cfg["tower"] = c.tower_file.empty() ? "preset:" + c.preset : c.tower_file;
  cfg["tower_hash"] = tower_hash(T);
  cfg["p"] = std::to_string(T.p());
  return cfg;
}

// Writes to a temporary buffer and commits only on success.
class Output {
 public:
  explicit Output(std::string path) : path_(std::move(path)) {}
  std::ostream& stream() { return buf_; }
  void commit() {
    if (path_ == "-") {
      std::cout << buf_.str();
      return;
    }
    std::ofstream f(path_, std::ios::binary);
    if (!f) throw ConfigError("cannot write output file '" + path_ + "'");
    f << buf_.str();
  }

 private:
  std::string path_;
  std::ostringstream buf_;
};

mpq_class parse_rational(const std::string& s, const std::string& what) {
  mpq_class r;
  if (r.set_str(s, 10) != 0) throw ConfigError(what + ": '" + s + "' is not a rational number");
  r.canonicalize();
  return r;
}

int check_level(const Tower& T, int n) {
  if (n == 0) return T.depth();
  if (n < 1 || n > T.depth()) throw ConfigError("level " + std::to_string(n) + " outside 1.." + std::to_string(T.depth()));
  return n;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--tower", c.tower_file, "Tower JSON file");
  sub->add_option("--preset", c.preset,
                  "Tower preset when no file is given: Q<p>, sqrt2, unramified:<p>:<f1,f2,...>, cyclotomic:<p>:<depth> "
                  "(default: the n! unramified tower over Q_2 for spectrum and theorem3, Q2 otherwise)");
  sub->add_option("--alpha", c.alpha, "Order of the operator")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--out", c.out, "Output path ('-' for stdout)")->capture_default_str();
  sub->add_option("--format", c.format, "csv or json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  sub->add_option("--tolerance", c.tolerance, "Tail tolerance for shell series")->capture_default_str();
}

int run(int argc, char** argv) {
  CLI::App app{"Fractional operator D^alpha over towers of p-adic fields"};
  app.require_subcommand(1);
  Common c;

  auto* sp = app.add_subcommand("spectrum", "Eigenvalues q_1^{alpha N / e_n} with generating pairs and multiplicities");
  int horizon = 3;
  double max_value = 16.0;
  add_common(sp, c);
  sp->add_option("--horizon", horizon, "Largest level")->capture_default_str();
  sp->add_option("--max-value", max_value, "Largest eigenvalue listed")->capture_default_str();

  auto* ap = app.add_subcommand("apply", "Apply D^alpha to a cylindrical function");
  int level = 0, depth = 2;
  std::string input, character, indicator, route = "spectral";
  double t = 1.0;
  bool matrix = false;
  add_common(ap, c);
  ap->add_option("--level", level, "Tower level (0 = top)")->capture_default_str();
  ap->add_option("--depth", depth, "Quotient depth t: G = pi^s0 O / pi^{s0+t} O")->capture_default_str();
  ap->add_option("--input", input, "Function table (CSV or JSON, coset,re,im)");
  ap->add_option("--character", character, "Use phi_a for the dual coset label a");
  ap->add_option("--indicator", indicator, "Use the indicator of a group coset label");
  ap->add_option("--route", route, "spectral, hypersingular, levy or semigroup")
      ->capture_default_str()
      ->check(CLI::IsMember({"spectral", "hypersingular", "levy", "semigroup"}));
  ap->add_option("--t", t, "Time for the semigroup route")->capture_default_str();
  ap->add_flag("--matrix", matrix, "Write the dense operator matrix instead");

  auto* th = app.add_subcommand("theorem3", "mu(M_n) against pi(t, M_n) across levels");
  int N = 1;
  double threshold = 1e6;
  add_common(th, c);
  th->add_option("--N", N, "Ball index N")->capture_default_str();
  th->add_option("--t", t, "Time")->capture_default_str();
  int t3_horizon = 4;
  th->add_option("--horizon", t3_horizon, "Largest level")->capture_default_str();
  th->add_option("--threshold", threshold, "Witness threshold for pi/mu")->capture_default_str();

  auto* lv = app.add_subcommand("levy", "Levy measure shells outside a ball and the Levy-Khinchin exponent");
  double delta = 1.0;
  std::string lambda;
  add_common(lv, c);
  lv->add_option("--level", level, "Tower level (0 = top)")->capture_default_str();
  lv->add_option("--delta", delta, "Truncation radius")->capture_default_str();
  lv->add_option("--t", t, "Time")->capture_default_str();
  lv->add_option("--lambda", lambda, "Rational lambda for the exponent check");

  auto* ht = app.add_subcommand("heat", "Heat measure of M_n and the heat kernel");
  std::optional<int> zeta_w;
  add_common(ht, c);
  ht->add_option("--level", level, "Tower level (0 = top)")->capture_default_str();
  ht->add_option("--N", N, "Ball index N")->capture_default_str();
  ht->add_option("--t", t, "Time")->capture_default_str();
  ht->add_option("--zeta-valuation", zeta_w, "Also evaluate Gamma at a point of this normalized valuation");

  auto* sm = app.add_subcommand("simulate", "Monte Carlo of the characteristic function of the jump process");
  std::uint64_t paths = 100000;
  std::optional<double> sim_delta;
  std::string log_file;
  std::uint64_t log_path = 0;
  std::string sim_lambda = "1/2";
  add_common(sm, c);
  sm->add_option("--level", level, "Tower level (0 = top)")->capture_default_str();
  sm->add_option("--lambda", sim_lambda, "Rational lambda")->capture_default_str();
  sm->add_option("--t", t, "Time")->capture_default_str();
  sm->add_option("--delta", sim_delta, "Truncation radius (default min(1, 1/||lambda||))");
  sm->add_option("--paths", paths, "Number of paths")->capture_default_str();
  sm->add_option("--event-log", log_file, "Write the events of one path as CSV");
  sm->add_option("--log-path", log_path, "Path index for --event-log")->capture_default_str();

  auto* va = app.add_subcommand("verify-all", "Run the acceptance suite");
  add_common(va, c);

  CLI11_PARSE(app, argc, argv);
  const Format fmt = parse_format(c.format);
  Output out(c.out);

  if (app.got_subcommand(va)) {
    Table tab{{"id", "name", "status", "seconds", "detail"}, {}};
    bool all = true;
    verify_all(c.seed, [&](const CriterionResult& r) {
      all = all && r.passed;
      std::cerr << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name << "\n";
      tab.rows.push_back({std::to_string(r.id), r.name, r.passed ? "PASS" : "FAIL", format_double(r.seconds), r.detail});
    });
    write_table(out.stream(), tab, fmt, {{"seed", std::to_string(c.seed)}});
    out.commit();
    return all ? 0 : 1;
  }

  const bool factorial = app.got_subcommand(sp) || app.got_subcommand(th);
  const Tower T = resolve_tower(c, factorial ? kFactorialPreset : "Q2");
  Config cfg = base_config(c, T);

  if (app.got_subcommand(sp)) {
    if (horizon < 1 || horizon > T.depth()) throw ConfigError("horizon outside 1.." + std::to_string(T.depth()));
    cfg["command"] = "spectrum";
    cfg["horizon"] = std::to_string(horizon);
    cfg["max_value"] = format_double(max_value);
    std::vector<std::pair<int, double>> trend;
    for (int h = 1; h <= horizon; ++h) trend.push_back({h, min_positive_eigenvalue(c.alpha, T, h)});
    write_spectrum(out.stream(), spectrum(c.alpha, T, horizon, max_value), trend, fmt, cfg);
  } else if (app.got_subcommand(ap)) {
    level = check_level(T, level);
    FieldPtr F = TowerField::realize(T, level);
    SpacePtr S = CylinderSpace::make(F, level, depth);
    cfg["command"] = "apply";
    cfg["level"] = std::to_string(level);
    cfg["depth"] = std::to_string(depth);
    cfg["route"] = route;
    if (matrix) {
      cfg["output"] = "matrix";
      write_matrix(out.stream(), operator_matrix(c.alpha, S), *S, fmt, cfg);
    } else {
      CylFunction f;
      if (!input.empty()) {
        std::ifstream in(input);
        if (!in) throw ConfigError("cannot open input '" + input + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        f = read_function(S, ss.str());
        cfg["input"] = input;
      } else if (!character.empty()) {
        f = CylFunction::character(S, S->dual().parse_label(character));
        cfg["input"] = "character:" + character;
      } else if (!indicator.empty()) {
        f = CylFunction::indicator(S, S->group().parse_label(indicator));
        cfg["input"] = "indicator:" + indicator;
      } else {
        throw ConfigError("apply: give one of --input, --character or --indicator");
      }
      CylFunction g;
      if (route == "spectral") {
        g = apply_spectral(c.alpha, f);
      } else if (route == "hypersingular") {
        g = apply_hypersingular(c.alpha, f);
      } else if (route == "semigroup") {
        cfg["t"] = format_double(t);
        g = semigroup_apply(t, c.alpha, f);
      } else {
        g = CylFunction::constant(S, 0.0);
        auto pairs = hypersingular_vs_levy(c.alpha, f);
        for (std::uint64_t z = 0; z < S->size(); ++z) g.values[z] = pairs[z].rhs;
      }
      write_function(out.stream(), g, fmt, cfg);
    }
  } else if (app.got_subcommand(th)) {
    cfg["command"] = "theorem3";
    cfg["N"] = std::to_string(N);
    cfg["t"] = format_double(t);
    cfg["horizon"] = std::to_string(t3_horizon);
    cfg["threshold"] = format_double(threshold);
    write_measure_report(out.stream(), theorem3_report(T, N, t, c.alpha, t3_horizon, threshold), fmt, cfg);
  } else if (app.got_subcommand(lv)) {
    level = check_level(T, level);
    cfg["command"] = "levy";
    cfg["level"] = std::to_string(level);
    cfg["delta"] = format_double(delta);
    cfg["t"] = format_double(t);
    ShellSeries s = levy_total_outside(T, level, delta, c.alpha);
    Table tab{{"valuation", "volume", "density", "mass"}, {}};
    for (const Shell& sh : s.shells)
      tab.rows.push_back({std::to_string(sh.index), format_rational(sh.volume), format_double(sh.value),
                          format_double(sh.term())});
    tab.rows.push_back({"total", "", "", format_double(s.total())});
    if (!lambda.empty()) {
      FieldPtr F = TowerField::realize(T, level);
      LevyKhinchin r = levy_khinchin_check(ExtElement::from_rational(F, level, parse_rational(lambda, "--lambda")), t,
                                           c.alpha);
      cfg["lambda"] = lambda;
      tab.rows.push_back({"exponent_lhs", "", "", format_double(r.lhs)});
      tab.rows.push_back({"exponent_rhs", "", "", format_double(r.rhs)});
    }
    write_table(out.stream(), tab, fmt, cfg);
  } else if (app.got_subcommand(ht)) {
    level = check_level(T, level);
    cfg["command"] = "heat";
    cfg["level"] = std::to_string(level);
    cfg["N"] = std::to_string(N);
    cfg["t"] = format_double(t);
    Table tab{{"quantity", "value", "error_bound"}, {}};
    tab.rows.push_back({"pi_closed", format_double(heat_cylinder(T, level, N, t, c.alpha)), "0"});
    ShellSeries g = heat_cylinder_gamma(T, level, N, t, c.alpha, c.tolerance);
    tab.rows.push_back({"pi_gamma", format_double(g.total()), format_double(g.error_bound())});
    tab.rows.push_back({"mu", format_rational(mu_cylinder(T, level, N)), "0"});
    tab.rows.push_back({"lower_bound", format_double(heat_lower_bound(T, N, t, c.alpha)), "0"});
    ShellSeries mass = heat_kernel_mass(T, level, t, c.alpha, c.tolerance);
    tab.rows.push_back({"kernel_mass", format_double(mass.total()), format_double(mass.error_bound())});
    if (zeta_w) {
      cfg["zeta_valuation"] = std::to_string(*zeta_w);
      ShellSeries k = heat_kernel_series(T, level, *zeta_w, t, c.alpha, c.tolerance);
      tab.rows.push_back({"gamma_at_zeta", format_double(k.total()), format_double(k.error_bound())});
    }
    write_table(out.stream(), tab, fmt, cfg);
  } else if (app.got_subcommand(sm)) {
    level = check_level(T, level);
    FieldPtr F = TowerField::realize(T, level);
    ExtElement lam = ExtElement::from_rational(F, level, parse_rational(sim_lambda, "--lambda"));
    const double norm = lam.is_zero() ? 0.0 : lam.norm();
    const double d = sim_delta ? *sim_delta : (norm > 1.0 ? 1.0 / norm : 1.0);
    cfg["command"] = "simulate";
    cfg["level"] = std::to_string(level);
    cfg["lambda"] = sim_lambda;
    cfg["t"] = format_double(t);
    cfg["delta"] = format_double(d);
    cfg["paths"] = std::to_string(paths);
    cfg["generator"] = kGeneratorName;
    MonteCarloReport rep = mc_characteristic(lam, t, c.alpha, d, paths, c.seed);
    write_mc_report(out.stream(), rep, fmt, cfg);
    if (!log_file.empty()) {
      JumpLaw law = build_jump_law(F, level, d, c.alpha, rep.resolution - T.level(level).s0());
      PathSample ps = simulate_path(law, t, c.seed, log_path);
      std::ofstream f(log_file);
      if (!f) throw ConfigError("cannot write event log '" + log_file + "'");
      write_path_log(f, ps, law.space->group());
    }
  }
  out.commit();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << failure_record("config", e.what()) << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << failure_record("domain", e.what()) << "\n";
    return 3;
  } catch (const PrecisionError& e) {
    std::cerr << failure_record("precision", e.what()) << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << failure_record("internal", e.what()) << "\n";
    return 1;
  }
}

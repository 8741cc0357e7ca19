#include "infext/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace infext {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& where, const std::string& what) {
  throw ConfigError("tower file, field " + where + ": " + what);
}

mpz_class parse_integer(const json& v, const std::string& where) {
  if (v.is_number_integer()) return mpz_class(std::to_string(v.get<long long>()));
  if (!v.is_string()) field_error(where, "expected a decimal string");
  mpz_class z;
  if (z.set_str(v.get<std::string>(), 10) != 0) field_error(where, "not a decimal integer");
  return z;
}

int parse_int(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) field_error(where + "/" + key, "missing");
  const json& v = obj.at(key);
  if (!v.is_number_integer()) field_error(where + "/" + key, "expected an integer");
  return v.get<int>();
}

StepSpec parse_step(const json& s, const std::string& where) {
  if (!s.is_object()) field_error(where, "expected an object");
  if (!s.contains("kind") || !s.at("kind").is_string()) field_error(where + "/kind", "missing");
  const std::string kind = s.at("kind").get<std::string>();
  bool closes = true;
  if (s.contains("closes_level")) {
    if (!s.at("closes_level").is_boolean()) field_error(where + "/closes_level", "expected a boolean");
    closes = s.at("closes_level").get<bool>();
  }
  if (kind == "unramified") return StepSpec::unramified(parse_int(s, "f_factor", where), closes);
  if (kind != "eisenstein") field_error(where + "/kind", "unknown step kind '" + kind + "'");

  if (!s.contains("poly") || !s.at("poly").is_array()) field_error(where + "/poly", "expected an array of terms");
  const json& poly = s.at("poly");
  int degree = s.contains("degree") ? parse_int(s, "degree", where) : 0;
  for (const auto& term : poly)
    if (term.is_array() && term.size() == 2 && term[1].is_number_integer()) degree = std::max(degree, term[1].get<int>());
  if (degree < 1) field_error(where + "/degree", "must be at least 1");

  std::vector<ZVec> coeffs(static_cast<size_t>(degree + 1));
  std::vector<bool> seen(coeffs.size(), false);
  for (size_t i = 0; i < poly.size(); ++i) {
    const std::string tw = where + "/poly/" + std::to_string(i);
    const json& term = poly[i];
    if (!term.is_array() || term.size() != 2) field_error(tw, "expected [coefficient, exponent]");
    if (!term[1].is_number_integer()) field_error(tw + "/1", "exponent must be an integer");
    int k = term[1].get<int>();
    if (k < 0 || k > degree) field_error(tw + "/1", "exponent outside 0.." + std::to_string(degree));
    ZVec c;
    if (term[0].is_array()) {
      for (size_t j = 0; j < term[0].size(); ++j) c.push_back(parse_integer(term[0][j], tw + "/0/" + std::to_string(j)));
    } else {
      c.push_back(parse_integer(term[0], tw + "/0"));
    }
    ZVec& acc = coeffs[static_cast<size_t>(k)];
    if (acc.size() < c.size()) acc.resize(c.size(), mpz_class(0));
    for (size_t j = 0; j < c.size(); ++j) acc[j] += c[j];
    seen[static_cast<size_t>(k)] = true;
  }
  // A missing leading term means the polynomial is monic.
  if (!seen.back()) coeffs.back() = ZVec{mpz_class(1)};
  for (auto& c : coeffs)
    if (c.empty()) c.push_back(mpz_class(0));
  return StepSpec::eisenstein(std::move(coeffs), closes);
}

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json config_json(const Config& config) {
  json j = json::object();
  for (const auto& [k, v] : config) j[k] = v;
  return j;
}

void csv_header(std::ostream& out, const Config& config) {
  for (const auto& [k, v] : config) out << "# " << k << "=" << v << "\n";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) {
    if (c == '"') r += '"';
    r += c;
  }
  return r + "\"";
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw ConfigError("unknown format '" + name + "' (expected csv or json)");
}

TowerSpec parse_tower_spec(const std::string& text) try {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("tower file, " + line_column(text, e.byte) + ": malformed JSON");
  }
  if (!j.is_object()) field_error("/", "expected an object");
  if (!j.contains("p") || !j.at("p").is_number_integer()) field_error("/p", "missing integer prime");
  const long p = j.at("p").get<long>();
  if (p < 2 || mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 30) == 0)
    field_error("/p", "not a prime");

  if (j.contains("preset")) {
    const std::string preset = j.at("preset").is_string() ? j.at("preset").get<std::string>() : "";
    Tower t = [&]() {
      if (preset == "unramified") {
        if (!j.contains("f") || !j.at("f").is_array()) field_error("/f", "expected an array of residue degrees");
        std::vector<int> f;
        for (const auto& v : j.at("f")) {
          if (!v.is_number_integer()) field_error("/f", "expected integers");
          f.push_back(v.get<int>());
        }
        return build_unramified_tower(p, f);
      }
      if (preset == "cyclotomic") return build_cyclotomic_tower(p, parse_int(j, "depth", ""));
      field_error("/preset", "unknown preset '" + preset + "'");
    }();
    return t.spec();
  }

  if (!j.contains("steps") || !j.at("steps").is_array()) field_error("/steps", "expected an array");
  TowerSpec spec;
  spec.p = p;
  const json& steps = j.at("steps");
  for (size_t i = 0; i < steps.size(); ++i) spec.steps.push_back(parse_step(steps[i], "/steps/" + std::to_string(i)));
  return spec;
} catch (const DomainError& e) {
  throw ConfigError(std::string("tower file: ") + e.what());
}

Tower parse_tower(const std::string& text) {
  TowerSpec spec = parse_tower_spec(text);
  try {
    return Tower(std::move(spec));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("tower file: ") + e.what());
  }
}

Tower load_tower(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open tower file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_tower(ss.str());
}

std::string tower_to_json(const Tower& tower) {
  json j;
  j["p"] = tower.p();
  json steps = json::array();
  for (const StepSpec& s : tower.spec().steps) {
    json o;
    o["closes_level"] = s.closes_level;
    if (s.kind == StepKind::unramified) {
      o["kind"] = "unramified";
      o["f_factor"] = s.degree;
    } else {
      o["kind"] = "eisenstein";
      o["degree"] = s.degree;
      json poly = json::array();
      for (size_t k = 0; k < s.coefficients.size(); ++k) {
        const ZVec& c = s.coefficients[k];
        bool zero = true;
        for (const auto& x : c) zero = zero && x == 0;
        if (zero) continue;
        json coef;
        if (c.size() == 1) {
          coef = c[0].get_str();
        } else {
          coef = json::array();
          for (const auto& x : c) coef.push_back(x.get_str());
        }
        poly.push_back(json::array({coef, static_cast<int>(k)}));
      }
      o["poly"] = poly;
    }
    steps.push_back(o);
  }
  j["steps"] = steps;
  return j.dump();
}

std::string tower_hash(const Tower& tower) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : tower_to_json(tower)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string format_rational(const mpq_class& r) {
  mpq_class c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string failure_record(const std::string& kind, const std::string& message) {
  json j;
  j["error"] = kind;
  j["message"] = message;
  return j.dump();
}

void write_function(std::ostream& out, const CylFunction& f, Format format, const Config& config) {
  const CylinderSpace& S = *f.space;
  const BallQuotient& G = S.group();
  const std::string hash = tower_hash(S.tower());
  if (format == Format::json) {
    json j;
    j["config"] = config_json(config);
    j["level"] = S.level();
    j["inner"] = G.hi();
    j["outer"] = G.lo();
    j["tower_hash"] = hash;
    json rows = json::array();
    for (std::uint64_t z = 0; z < G.size(); ++z)
      rows.push_back({{"coset", G.label(z)}, {"re", f.values[z].real()}, {"im", f.values[z].imag()}});
    j["values"] = rows;
    out << j.dump(2) << "\n";
    return;
  }
  csv_header(out, config);
  out << "# level=" << S.level() << "\n# outer=" << G.lo() << "\n# inner=" << G.hi() << "\n# tower_hash=" << hash
      << "\n";
  out << "coset,re,im\n";
  for (std::uint64_t z = 0; z < G.size(); ++z)
    out << G.label(z) << "," << format_double(f.values[z].real()) << "," << format_double(f.values[z].imag()) << "\n";
}

CylFunction read_function(const SpacePtr& space, const std::string& text) {
  CylFunction f = CylFunction::constant(space, 0.0);
  const BallQuotient& G = space->group();
  auto set = [&](const std::string& label, double re, double im, const std::string& where) {
    std::uint64_t z;
    try {
      z = G.parse_label(label);
    } catch (const std::exception& e) {
      throw ConfigError("function table, " + where + ": " + e.what());
    }
    f.values[z] = {re, im};
  };
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError("function table, " + line_column(text, e.byte) + ": malformed JSON");
    }
    if (!j.contains("values") || !j.at("values").is_array()) throw ConfigError("function table: missing values");
    const json& rows = j.at("values");
    for (size_t i = 0; i < rows.size(); ++i) {
      const json& r = rows[i];
      const std::string where = "values/" + std::to_string(i);
      if (!r.contains("coset") || !r.contains("re")) throw ConfigError("function table, " + where + ": missing field");
      set(r.at("coset").get<std::string>(), r.at("re").get<double>(), r.value("im", 0.0), where);
    }
    return f;
  }
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      if (line.rfind("coset", 0) == 0) continue;
    }
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    const std::string where = "line " + std::to_string(lineno);
    if (cells.size() < 2 || cells.size() > 3) throw ConfigError("function table, " + where + ": expected coset,re[,im]");
    try {
      set(cells[0], std::stod(cells[1]), cells.size() == 3 ? std::stod(cells[2]) : 0.0, where);
    } catch (const std::invalid_argument&) {
      throw ConfigError("function table, " + where + ": not a number");
    }
  }
  return f;
}

void write_spectrum(std::ostream& out, const std::vector<SpectrumEntry>& entries,
                    const std::vector<std::pair<int, double>>& min_trend, Format format, const Config& config) {
  auto pairs_str = [](const SpectrumEntry& e) {
    std::string s;
    for (const auto& [n, N] : e.pairs) s += (s.empty() ? "" : ";") + std::to_string(n) + ":" + std::to_string(N);
    return s;
  };
  if (format == Format::json) {
    json j;
    j["config"] = config_json(config);
    json rows = json::array();
    for (const auto& e : entries) {
      json pairs = json::array();
      for (const auto& [n, N] : e.pairs) pairs.push_back({{"n", n}, {"N", N}});
      rows.push_back({{"exponent", format_rational(e.exponent)},
                      {"eigenvalue", e.eigenvalue},
                      {"pairs", pairs},
                      {"multiplicity", e.multiplicity.get_str()}});
    }
    j["spectrum"] = rows;
    json trend = json::array();
    for (const auto& [h, v] : min_trend) trend.push_back({{"horizon", h}, {"min_positive_eigenvalue", v}});
    j["min_positive_trend"] = trend;
    out << j.dump(2) << "\n";
    return;
  }
  csv_header(out, config);
  for (const auto& [h, v] : min_trend) out << "# min_positive_eigenvalue horizon=" << h << " value=" << format_double(v) << "\n";
  out << "exponent,eigenvalue,pairs,multiplicity\n";
  for (const auto& e : entries)
    out << format_rational(e.exponent) << "," << format_double(e.eigenvalue) << "," << pairs_str(e) << ","
        << e.multiplicity.get_str() << "\n";
}

void write_measure_report(std::ostream& out, const MeasureReport& rep, Format format, const Config& config) {
  if (format == Format::json) {
    json j;
    j["config"] = config_json(config);
    j["p"] = rep.p;
    j["N"] = rep.N;
    j["t"] = rep.t;
    j["alpha"] = rep.alpha;
    j["horizon"] = rep.horizon;
    j["flag"] = rep.flag;
    j["mu_decreasing"] = rep.mu_decreasing;
    j["bound_holds"] = rep.bound_holds;
    j["ratio_increasing"] = rep.ratio_increasing;
    j["witness_log10_threshold"] = rep.witness_log10_threshold;
    json rows = json::array();
    for (const auto& r : rep.rows)
      rows.push_back({{"n", r.n},
                      {"mu_exact", format_rational(r.mu)},
                      {"pi", r.pi},
                      {"pi_gamma", r.pi_gamma},
                      {"lower_bound", r.lower_bound},
                      {"log10_ratio", r.log10_ratio}});
    j["rows"] = rows;
    out << j.dump(2) << "\n";
    return;
  }
  csv_header(out, config);
  out << "# flag=" << rep.flag << "\n";
  out << "n,mu_exact,pi,lower_bound,log10_ratio\n";
  for (const auto& r : rep.rows)
    out << r.n << "," << format_rational(r.mu) << "," << format_double(r.pi) << "," << format_double(r.lower_bound)
        << "," << format_double(r.log10_ratio) << "\n";
}

void write_mc_report(std::ostream& out, const MonteCarloReport& rep, Format format, const Config& config) {
  json j;
  j["config"] = config_json(config);
  j["generator"] = rep.generator;
  j["seed"] = rep.seed;
  j["paths"] = rep.paths;
  j["level"] = rep.level;
  j["resolution"] = rep.resolution;
  j["t"] = rep.t;
  j["alpha"] = rep.alpha;
  j["delta"] = rep.delta;
  j["lambda_norm"] = rep.lambda_norm;
  j["rate"] = rep.rate;
  j["estimate_re"] = rep.estimate.real();
  j["estimate_im"] = rep.estimate.imag();
  j["stderr_re"] = rep.stderr_re;
  j["stderr_im"] = rep.stderr_im;
  j["expected"] = rep.expected;
  j["within_3_stderr"] = rep.within(3.0);
  j["jump_counts"] = rep.jump_counts;
  j["poisson"] = {{"mean", rep.poisson.mean},
                  {"statistic", rep.poisson.statistic},
                  {"dof", rep.poisson.dof},
                  {"p_value", rep.poisson.p_value},
                  {"passed", rep.poisson.passed}};
  j["tv_distance"] = number_or_null(rep.tv_distance);
  j["tv_heuristic"] = rep.tv_heuristic;
  if (format == Format::json) {
    out << j.dump(2) << "\n";
    return;
  }
  csv_header(out, config);
  out << "key,value\n";
  for (const auto& [k, v] : j.items()) {
    if (k == "config") continue;
    out << k << "," << csv_field(v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
}

void write_path_log(std::ostream& out, const PathSample& path, const BallQuotient& group) {
  out << "# seed=" << path.seed << "\n# path=" << path.path << "\n# level=" << path.level
      << "\n# resolution=" << path.resolution << "\n# terminal=" << group.label(path.terminal) << "\n";
  out << "time,coset\n";
  for (const auto& ev : path.events) out << format_double(ev.time) << "," << group.label(ev.coset) << "\n";
}

void write_matrix(std::ostream& out, const std::vector<Complex>& M, const CylinderSpace& space, Format format,
                  const Config& config) {
  const BallQuotient& G = space.group();
  const std::uint64_t n = G.size();
  if (format == Format::json) {
    json j;
    j["config"] = config_json(config);
    j["size"] = n;
    json labels = json::array();
    for (std::uint64_t z = 0; z < n; ++z) labels.push_back(G.label(z));
    j["cosets"] = labels;
    json re = json::array(), im = json::array();
    for (std::uint64_t r = 0; r < n; ++r) {
      json rr = json::array(), ri = json::array();
      for (std::uint64_t c = 0; c < n; ++c) {
        rr.push_back(M[r * n + c].real());
        ri.push_back(M[r * n + c].imag());
      }
      re.push_back(rr);
      im.push_back(ri);
    }
    j["re"] = re;
    j["im"] = im;
    out << j.dump(2) << "\n";
    return;
  }
  csv_header(out, config);
  out << "row,col,re,im\n";
  for (std::uint64_t r = 0; r < n; ++r)
    for (std::uint64_t c = 0; c < n; ++c)
      out << G.label(r) << "," << G.label(c) << "," << format_double(M[r * n + c].real()) << ","
          << format_double(M[r * n + c].imag()) << "\n";
}

void write_table(std::ostream& out, const Table& table, Format format, const Config& config) {
  if (format == Format::json) {
    json j;
    j["config"] = config_json(config);
    json rows = json::array();
    for (const auto& r : table.rows) {
      json o = json::object();
      for (size_t i = 0; i < table.columns.size() && i < r.size(); ++i) o[table.columns[i]] = r[i];
      rows.push_back(o);
    }
    j["rows"] = rows;
    out << j.dump(2) << "\n";
    return;
  }
  csv_header(out, config);
  for (size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << csv_field(table.columns[i]);
  out << "\n";
  for (const auto& r : table.rows) {
    for (size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_field(r[i]);
    out << "\n";
  }
}

}  // namespace infext

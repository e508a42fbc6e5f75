#include "fwave/config.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fwave/error.hpp"

namespace fwave {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool valid_ident(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::islower(static_cast<unsigned char>(c)) || c == '_' ||
          std::isdigit(static_cast<unsigned char>(c)))) {
      return false;
    }
  }
  return true;
}

// strip an unquoted trailing comment
std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

[[noreturn]] void bad(const std::string& what) {
  fail_config("ConfigParse: " + what);
}

double parse_double(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size()) {
    bad("expected a number for '" + key + "', got '" + v + "'");
  }
  return x;
}

long long parse_ll(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  char* end = nullptr;
  const long long x = std::strtoll(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size()) {
    bad("expected an integer for '" + key + "', got '" + v + "'");
  }
  return x;
}

int parse_int(const std::string& key, const std::string& raw) {
  return static_cast<int>(parse_ll(key, raw));
}

std::uint64_t parse_u64(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (v.empty() || v[0] == '-' || end != v.c_str() + v.size()) {
    bad("expected a non-negative integer for '" + key + "', got '" + v + "'");
  }
  return static_cast<std::uint64_t>(x);
}

// "p", "p/q", or "inf" in exact arithmetic
Rat parse_rat(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (v == "inf") return Rat::infinity();
  const std::size_t slash = v.find('/');
  if (slash == std::string::npos) return Rat(parse_ll(key, v));
  const long long n = parse_ll(key, v.substr(0, slash));
  const long long d = parse_ll(key, v.substr(slash + 1));
  if (d <= 0) bad("expected a positive denominator for '" + key + "'");
  return Rat(n, d);
}

std::vector<std::string> parse_array(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (v.size() < 2 || v.front() != '[' || v.back() != ']') {
    bad("expected an array [..] for '" + key + "', got '" + v + "'");
  }
  std::vector<std::string> items;
  std::string body = v.substr(1, v.size() - 2);
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) bad("empty element in array '" + key + "'");
    items.push_back(item);
  }
  return items;
}

// pulls key out of the working map; empty optional when absent
const std::string* find(const ConfigMap& map, const std::string& key) {
  auto it = map.find(key);
  return it == map.end() ? nullptr : &it->second;
}

}  // namespace

ConfigMap parse_config_text(const std::string& text) {
  ConfigMap map;
  std::string section;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') bad("unterminated section header at line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      if (!valid_ident(section)) {
        bad("bad section name '" + section + "' at line " + std::to_string(lineno));
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      bad("expected key = value at line " + std::to_string(lineno));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!valid_ident(key)) bad("bad key '" + key + "' at line " + std::to_string(lineno));
    if (section.empty()) bad("key '" + key + "' outside any [section]");
    if (value.empty()) bad("empty value for '" + section + "." + key + "'");
    const std::string full = section + "." + key;
    if (map.count(full)) bad("duplicate key '" + full + "'");
    map[full] = value;
  }
  return map;
}

ConfigMap parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void apply_override(ConfigMap& map, const std::string& spec) {
  const std::size_t eq = spec.find('=');
  if (eq == std::string::npos) bad("override '" + spec + "' is not section.key=value");
  const std::string key = trim(spec.substr(0, eq));
  const std::string value = trim(spec.substr(eq + 1));
  const std::size_t dot = key.find('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == key.size()) {
    bad("override key '" + key + "' is not section.key");
  }
  if (!valid_ident(key.substr(0, dot)) || !valid_ident(key.substr(dot + 1))) {
    bad("override key '" + key + "' is not section.key");
  }
  if (value.empty()) bad("empty value in override '" + spec + "'");
  map[key] = value;  // overrides may replace file values
}

RunConfig build_run_config(const ConfigMap& map) {
  RunConfig cfg;
  ConfigMap left = map;
  auto take = [&left](const std::string& key) -> std::string {
    const std::string* v = find(left, key);
    if (!v) return std::string();
    std::string out = *v;
    left.erase(key);
    return out;
  };

  // [model]; d first so the hurst default can depend on it
  if (std::string v = take("model.d"); !v.empty()) cfg.d = parse_int("model.d", v);
  if (cfg.d < 1 || cfg.d > 8) bad("model.d must be in [1, 8]");
  if (std::string v = take("model.hurst"); !v.empty()) {
    cfg.hurst.clear();
    for (const std::string& item : parse_array("model.hurst", v)) {
      cfg.hurst.push_back(parse_double("model.hurst", item));
    }
  } else {
    cfg.hurst.assign(static_cast<std::size_t>(cfg.d) + 1, 0.8);
  }
  if (cfg.hurst.size() != static_cast<std::size_t>(cfg.d) + 1) {
    bad("model.hurst needs d + 1 entries (time plus each space axis)");
  }
  for (double h : cfg.hurst) {
    if (!(h > 0.0 && h < 1.0)) bad("model.hurst entries must lie in (0, 1)");
  }
  if (std::string v = take("model.mode"); !v.empty()) cfg.mode = unquote(trim(v));
  if (cfg.mode != "auto" && cfg.mode != "regular" && cfg.mode != "wick") {
    bad("model.mode must be auto, regular, or wick");
  }
  if (std::string v = take("model.rho"); !v.empty()) cfg.rho = parse_double("model.rho", v);
  if (!(cfg.rho >= 0.0)) bad("model.rho must be >= 0");
  if (std::string v = take("model.renormalize"); !v.empty()) {
    const std::string b = unquote(trim(v));
    if (b == "true") cfg.renormalize = true;
    else if (b == "false") cfg.renormalize = false;
    else bad("model.renormalize must be true or false");
  }

  // [lattice]
  if (std::string v = take("lattice.n_levels"); !v.empty()) {
    cfg.n_levels.clear();
    for (const std::string& item : parse_array("lattice.n_levels", v)) {
      cfg.n_levels.push_back(parse_int("lattice.n_levels", item));
    }
  }
  if (cfg.n_levels.empty()) bad("lattice.n_levels must not be empty");
  for (std::size_t i = 0; i < cfg.n_levels.size(); ++i) {
    if (cfg.n_levels[i] < 0 || cfg.n_levels[i] > 24) bad("lattice.n_levels entries must be in [0, 24]");
    if (i > 0 && cfg.n_levels[i] <= cfg.n_levels[i - 1]) {
      bad("lattice.n_levels must be strictly increasing");
    }
  }
  if (std::string v = take("lattice.cells_per_octave"); !v.empty()) {
    cfg.cells_per_octave = parse_int("lattice.cells_per_octave", v);
  }
  if (cfg.cells_per_octave < 1 || cfg.cells_per_octave > 64) {
    bad("lattice.cells_per_octave must be in [1, 64]");
  }

  // [grid]
  if (std::string v = take("grid.points_per_axis"); !v.empty()) {
    cfg.points_per_axis = parse_int("grid.points_per_axis", v);
  }
  if (cfg.points_per_axis < 2 || (cfg.points_per_axis & (cfg.points_per_axis - 1)) != 0) {
    bad("grid.points_per_axis must be a power of two >= 2");
  }
  if (std::string v = take("grid.half_width"); !v.empty()) {
    cfg.half_width = parse_double("grid.half_width", v);
  }
  if (!(cfg.half_width > 0.0)) bad("grid.half_width must be > 0");
  if (std::string v = take("grid.domain_half_width"); !v.empty()) {
    cfg.domain_half_width = parse_double("grid.domain_half_width", v);
  }
  if (cfg.domain_half_width < 0.0 || cfg.domain_half_width > cfg.half_width) {
    bad("grid.domain_half_width must be in [0, grid.half_width]");
  }

  // [time]
  if (std::string v = take("time.t_max"); !v.empty()) cfg.t_max = parse_double("time.t_max", v);
  if (!(cfg.t_max > 0.0)) bad("time.t_max must be > 0");
  if (std::string v = take("time.steps"); !v.empty()) cfg.steps = parse_int("time.steps", v);
  if (cfg.steps < 1 || cfg.steps > 1000000) bad("time.steps must be in [1, 1000000]");

  // [mc]
  if (std::string v = take("mc.realizations"); !v.empty()) {
    cfg.realizations = parse_int("mc.realizations", v);
  }
  if (cfg.realizations < 0) bad("mc.realizations must be >= 0");
  if (std::string v = take("mc.seed"); !v.empty()) cfg.seed = parse_u64("mc.seed", v);

  // [solver]
  if (std::string v = take("solver.s"); !v.empty()) cfg.s = parse_rat("solver.s", v);
  if (std::string v = take("solver.q"); !v.empty()) cfg.q = parse_rat("solver.q", v);
  if (std::string v = take("solver.r"); !v.empty()) cfg.r = parse_rat("solver.r", v);
  if (!(Rat(0) < cfg.s) || cfg.s.is_inf()) bad("solver.s must be a positive rational");
  if (!(Rat(0) < cfg.q) || !(Rat(0) < cfg.r)) bad("solver.q and solver.r must be positive");
  if (std::string v = take("solver.tol"); !v.empty()) cfg.tol = parse_double("solver.tol", v);
  if (!(cfg.tol > 0.0)) bad("solver.tol must be > 0");
  if (std::string v = take("solver.max_iter"); !v.empty()) {
    cfg.max_iter = parse_int("solver.max_iter", v);
  }
  if (cfg.max_iter < 1 || cfg.max_iter > 10000) bad("solver.max_iter must be in [1, 10000]");

  // [output]
  if (std::string v = take("output.dir"); !v.empty()) cfg.out_dir = unquote(trim(v));
  if (cfg.out_dir.empty()) bad("output.dir must not be empty");
  if (std::string v = take("output.formats"); !v.empty()) {
    cfg.formats.clear();
    for (const std::string& item : parse_array("output.formats", v)) {
      cfg.formats.push_back(unquote(item));
    }
  }
  if (cfg.formats.empty()) bad("output.formats must not be empty");
  for (const std::string& f : cfg.formats) {
    if (f != "csv" && f != "json") bad("output.formats entries must be csv or json");
  }

  if (!left.empty()) bad("unknown key '" + left.begin()->first + "'");
  return cfg;
}

namespace {

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <typename T, typename F>
std::string join(const std::vector<T>& xs, F f) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += f(xs[i]);
  }
  return out + "]";
}

}  // namespace

std::string canonical_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "model.d = " << cfg.d << "\n";
  out << "model.hurst = " << join(cfg.hurst, fmt17) << "\n";
  out << "model.mode = " << cfg.mode << "\n";
  out << "model.rho = " << fmt17(cfg.rho) << "\n";
  out << "model.renormalize = " << (cfg.renormalize ? "true" : "false") << "\n";
  out << "lattice.n_levels = "
      << join(cfg.n_levels, [](int n) { return std::to_string(n); }) << "\n";
  out << "lattice.cells_per_octave = " << cfg.cells_per_octave << "\n";
  out << "grid.points_per_axis = " << cfg.points_per_axis << "\n";
  out << "grid.half_width = " << fmt17(cfg.half_width) << "\n";
  out << "grid.domain_half_width = " << fmt17(cfg.domain_half_width) << "\n";
  out << "time.t_max = " << fmt17(cfg.t_max) << "\n";
  out << "time.steps = " << cfg.steps << "\n";
  out << "mc.realizations = " << cfg.realizations << "\n";
  out << "mc.seed = " << cfg.seed << "\n";
  out << "solver.s = " << cfg.s.str() << "\n";
  out << "solver.q = " << cfg.q.str() << "\n";
  out << "solver.r = " << cfg.r.str() << "\n";
  out << "solver.tol = " << fmt17(cfg.tol) << "\n";
  out << "solver.max_iter = " << cfg.max_iter << "\n";
  out << "output.dir = " << cfg.out_dir << "\n";
  out << "output.formats = "
      << join(cfg.formats, [](const std::string& s) { return s; }) << "\n";
  return out.str();
}

Rat parse_rat_text(const std::string& text) { return parse_rat("value", text); }

std::string config_hash(const RunConfig& cfg) {
  // output.* is excluded: the hash identifies the experiment, not where
  // its files happen to land
  const std::string text = canonical_config(cfg);
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.rfind("output.", 0) == 0) continue;
    line += '\n';
    for (unsigned char c : line) {
      h ^= c;
      h *= 1099511628211ull;
    }
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace fwave

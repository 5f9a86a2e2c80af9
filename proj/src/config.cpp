#include "breakup/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace breakup {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_real(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size() || !std::isfinite(x)) {
    throw Error("config: '" + key + "' expects a number, got '" + v + "'");
  }
  return x;
}

long to_integer(const std::string& key, const std::string& v) {
  // Accepts plain integers and powers written as 2^k.
  const auto caret = v.find('^');
  if (caret != std::string::npos) {
    const double base = to_real(key, v.substr(0, caret));
    const double ex = to_real(key, v.substr(caret + 1));
    const double x = std::pow(base, ex);
    if (x != std::floor(x) || x > 9e15) throw Error("config: '" + key + "' expects an integer");
    return static_cast<long>(x);
  }
  const double x = to_real(key, v);
  if (x != std::floor(x)) throw Error("config: '" + key + "' expects an integer, got '" + v + "'");
  return static_cast<long>(x);
}

std::size_t to_size(const std::string& key, const std::string& v) {
  const long x = to_integer(key, v);
  if (x <= 0) throw Error("config: '" + key + "' must be positive");
  return static_cast<std::size_t>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw Error("config: '" + key + "' expects true/false, got '" + v + "'");
}

std::string real_str(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"preset", [](RunConfig& c, const auto&, const auto& v) { c.preset = v; }},
      {"equation", [](RunConfig& c, const auto&, const auto& v) { c.equation = v; }},
      {"lambda", [](RunConfig& c, const auto& k, const auto& v) { c.lambda = static_cast<int>(to_integer(k, v)); }},
      {"epsilon", [](RunConfig& c, const auto& k, const auto& v) { c.epsilon = to_real(k, v); }},
      {"n", [](RunConfig& c, const auto& k, const auto& v) { c.n = to_size(k, v); }},
      {"l", [](RunConfig& c, const auto& k, const auto& v) { c.l = to_real(k, v); }},
      {"nx", [](RunConfig& c, const auto& k, const auto& v) { c.nx = to_size(k, v); }},
      {"ny", [](RunConfig& c, const auto& k, const auto& v) { c.ny = to_size(k, v); }},
      {"lx", [](RunConfig& c, const auto& k, const auto& v) { c.lx = to_real(k, v); }},
      {"ly", [](RunConfig& c, const auto& k, const auto& v) { c.ly = to_real(k, v); }},
      {"dt", [](RunConfig& c, const auto& k, const auto& v) { c.dt = to_real(k, v); }},
      {"t_end", [](RunConfig& c, const auto& k, const auto& v) { c.t_end = to_real(k, v); }},
      {"t_switch", [](RunConfig& c, const auto& k, const auto& v) { c.t_switch = to_real(k, v); }},
      {"dt_late", [](RunConfig& c, const auto& k, const auto& v) { c.dt_late = to_real(k, v); }},
      {"data", [](RunConfig& c, const auto&, const auto& v) { c.data = v; }},
      {"track", [](RunConfig& c, const auto& k, const auto& v) { c.track = to_bool(k, v); }},
      {"p", [](RunConfig& c, const auto& k, const auto& v) { c.p = to_real(k, v); }},
      {"k_min", [](RunConfig& c, const auto& k, const auto& v) { c.k_min = to_real(k, v); }},
      {"floor", [](RunConfig& c, const auto& k, const auto& v) { c.floor = to_real(k, v); }},
      {"half_rule", [](RunConfig& c, const auto& k, const auto& v) { c.half_rule = to_bool(k, v); }},
      {"k_cap_fraction", [](RunConfig& c, const auto& k, const auto& v) { c.k_cap_fraction = to_real(k, v); }},
      {"track_from", [](RunConfig& c, const auto& k, const auto& v) { c.track_from = to_real(k, v); }},
      {"stop_at_breakup", [](RunConfig& c, const auto& k, const auto& v) { c.stop_at_breakup = to_bool(k, v); }},
      {"slice", [](RunConfig& c, const auto&, const auto& v) { c.slice = v; }},
      {"snapshot_stride", [](RunConfig& c, const auto& k, const auto& v) { c.snapshot_stride = static_cast<int>(to_integer(k, v)); }},
      {"snapshot_every", [](RunConfig& c, const auto& k, const auto& v) { c.snapshot_every = static_cast<int>(to_integer(k, v)); }},
      {"output_dir", [](RunConfig& c, const auto&, const auto& v) { c.output_dir = v; }},
      {"checkpoint_in", [](RunConfig& c, const auto&, const auto& v) { c.checkpoint_in = v; }},
      {"checkpoint_out", [](RunConfig& c, const auto& k, const auto& v) { c.checkpoint_out = to_bool(k, v); }},
      {"reference", [](RunConfig& c, const auto&, const auto& v) { c.reference = v; }},
      {"dealias", [](RunConfig& c, const auto& k, const auto& v) { c.dealias = to_bool(k, v); }},
      {"workers", [](RunConfig& c, const auto& k, const auto& v) { c.workers = static_cast<int>(to_integer(k, v)); }},
      {"allow_hpc", [](RunConfig& c, const auto& k, const auto& v) { c.allow_hpc = to_bool(k, v); }},
  };
  return table;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  const auto& table = setters();
  const auto it = table.find(trim(key));
  if (it == table.end()) throw Error("config: unknown key '" + key + "'");
  it->second(*this, it->first, trim(value));
}

std::map<std::string, std::string> RunConfig::to_map() const {
  return {
      {"preset", preset},
      {"equation", equation},
      {"lambda", std::to_string(lambda)},
      {"epsilon", real_str(epsilon)},
      {"n", std::to_string(n)},
      {"l", real_str(l)},
      {"nx", std::to_string(nx)},
      {"ny", std::to_string(ny)},
      {"lx", real_str(lx)},
      {"ly", real_str(ly)},
      {"dt", real_str(dt)},
      {"t_end", real_str(t_end)},
      {"t_switch", real_str(t_switch)},
      {"dt_late", real_str(dt_late)},
      {"data", data},
      {"track", bool_str(track)},
      {"p", real_str(p)},
      {"k_min", real_str(k_min)},
      {"floor", real_str(floor)},
      {"half_rule", bool_str(half_rule)},
      {"k_cap_fraction", real_str(k_cap_fraction)},
      {"track_from", real_str(track_from)},
      {"stop_at_breakup", bool_str(stop_at_breakup)},
      {"slice", slice},
      {"snapshot_stride", std::to_string(snapshot_stride)},
      {"snapshot_every", std::to_string(snapshot_every)},
      {"output_dir", output_dir},
      {"checkpoint_in", checkpoint_in},
      {"checkpoint_out", bool_str(checkpoint_out)},
      {"reference", reference},
      {"dealias", bool_str(dealias)},
      {"workers", std::to_string(workers)},
      {"allow_hpc", bool_str(allow_hpc)},
  };
}

std::string RunConfig::serialize() const {
  // The preset line goes first: reading it back resets the remaining keys.
  std::ostringstream os;
  const auto map = to_map();
  if (!preset.empty()) os << "preset = " << preset << '\n';
  for (const auto& [k, v] : map) {
    if (k != "preset") os << k << " = " << v << '\n';
  }
  return os.str();
}

std::uint64_t RunConfig::hash() const {
  std::uint64_t h = 14695981039346656037ull;
  for (const auto& [k, v] : to_map()) {
    // Where the outputs go does not change the computation.
    if (k == "output_dir") continue;
    for (unsigned char ch : k + "=" + v + "\n") {
      h ^= ch;
      h *= 1099511628211ull;
    }
  }
  return h;
}

Evolver1DConfig RunConfig::evolver1d() const {
  Evolver1DConfig c;
  c.equation = parse_equation1d(equation);
  c.epsilon = epsilon;
  c.dt = dt;
  c.t_end = t_end;
  c.grid = Grid1D(n, l);
  c.snapshot_stride = snapshot_stride;
  c.dealias = dealias;
  return c;
}

Evolver2DConfig RunConfig::evolver2d() const {
  Evolver2DConfig c;
  c.lambda = lambda;
  c.epsilon = epsilon;
  c.grid = Grid2D(nx, ny, lx, ly);
  c.dt = dt;
  c.t_end = t_end;
  c.data_kind = parse_data_kind(data);
  c.snapshot_stride = snapshot_stride;
  c.dealias = dealias;
  c.slice = parse_slice_kind(slice);
  return c;
}

WindowPolicy RunConfig::policy() const {
  WindowPolicy w;
  w.p = p;
  w.k_min = k_min;
  w.floor = floor;
  w.half_rule = half_rule;
  w.k_cap_fraction = k_cap_fraction;
  return w;
}

void validate(const RunConfig& cfg) {
  static const std::vector<std::string> equations = {"hopf", "burgers", "kdv", "dkp", "kp"};
  if (std::find(equations.begin(), equations.end(), cfg.equation) == equations.end()) {
    throw Error("config: unknown equation '" + cfg.equation + "'");
  }
  const DataKind kind = parse_data_kind(cfg.data);
  if (cfg.is_2d() != is_2d(kind) && kind != DataKind::kZero) {
    throw Error("config: data '" + cfg.data + "' does not match equation '" + cfg.equation + "'");
  }
  if (cfg.equation == "dkp" && cfg.epsilon != 0.0) throw Error("config: dkp needs epsilon = 0");
  if (cfg.equation == "kp" && !(cfg.epsilon > 0.0)) throw Error("config: kp needs epsilon > 0");
  if (!(cfg.t_end >= 0.0)) throw Error("config: t_end must be nonnegative");
  if (cfg.t_switch > 0.0 && !(cfg.dt_late > 0.0)) throw Error("config: t_switch needs dt_late > 0");
  if (cfg.snapshot_every < 0) throw Error("config: snapshot_every must be >= 0");
  if (cfg.workers < 1) throw Error("config: workers must be >= 1");
  if (cfg.reference != "none" && cfg.reference != "hopf_exact") {
    throw Error("config: reference must be none or hopf_exact");
  }
  if (cfg.reference == "hopf_exact" && cfg.equation != "hopf") {
    throw Error("config: the exact reference exists only for hopf");
  }
  if (cfg.is_2d()) {
    validate(cfg.evolver2d());
    if (cfg.nx * cfg.ny > (std::size_t{1} << 24) && !cfg.allow_hpc) {
      throw Error("config: " + std::to_string(cfg.nx) + "x" + std::to_string(cfg.ny) +
                  " is an HPC-scale grid; set allow_hpc = true to run it");
    }
  } else {
    validate(cfg.evolver1d());
  }
  if (cfg.track) validate(cfg.policy());
}

RunConfig parse_config(const std::string& text, const RunConfig& base) {
  RunConfig cfg = base;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key == "preset") {
      // A preset line resets to that preset; later lines override it.
      const std::string name = trim(line.substr(eq + 1));
      cfg = preset(name);
      continue;
    }
    cfg.set(key, line.substr(eq + 1));
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path, const RunConfig& base) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), base);
}

namespace {

RunConfig hopf_breakup() {
  RunConfig c;
  c.equation = "hopf";
  c.data = "sech2_1d";
  c.n = 1 << 15;
  c.l = 5.0;
  c.dt = 3.6e-5;
  c.t_switch = 0.18;
  c.dt_late = 3.7e-5;
  c.t_end = 0.2175;
  c.p = 0.01;
  c.k_min = 10.0;
  c.track_from = 0.2;
  c.stop_at_breakup = true;
  return c;
}

RunConfig dkp_base(int lambda, const std::string& data) {
  RunConfig c;
  c.equation = "dkp";
  c.lambda = lambda;
  c.data = data;
  c.nx = 1 << 10;
  c.ny = 1 << 9;
  c.dt = 5e-4;
  c.t_end = 0.3;
  c.track_from = 0.15;
  c.stop_at_breakup = true;
  c.k_cap_fraction = 0.5;
  if (data == "line_gaussian") {
    c.p = 0.01;
    c.k_min = 5.0;
  } else {
    c.p = 0.5;
    c.k_min = 10.0;
  }
  return c;
}

RunConfig dispersive_1d(const std::string& eq) {
  RunConfig c;
  c.equation = eq;
  c.epsilon = 0.01;
  c.data = "sech2_1d";
  c.n = 1 << 14;
  c.dt = 2e-5;
  c.t_end = 0.4;
  c.p = 0.0;  // fit every coefficient above k_min and the floor
  c.k_min = 10.0;
  c.half_rule = false;
  c.track_from = 0.1;
  c.snapshot_stride = 50;
  return c;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"hopf-accuracy",  "hopf-breakup",     "hopf-breakup-p005", "hopf-n16",       "burgers-eps01",
          "kdv-eps01",      "dkp1-line",       "dkp2-line",        "dkp1-localized", "dkp2-localized",
          "kp-sweep-line",  "kdv-sweep",       "dkp1-line-hpc",    "dkp1-localized-hpc"};
}

RunConfig preset(const std::string& name) {
  RunConfig c;
  if (name == "hopf-accuracy") {
    c.equation = "hopf";
    c.n = 1 << 14;
    c.dt = 3.6e-5;
    c.t_end = 0.18;
    c.reference = "hopf_exact";
    c.track = false;
  } else if (name == "hopf-breakup") {
    c = hopf_breakup();
  } else if (name == "hopf-breakup-p005") {
    c = hopf_breakup();
    c.p = 0.005;
  } else if (name == "hopf-n16") {
    c = hopf_breakup();
    c.n = 1 << 16;
  } else if (name == "burgers-eps01") {
    c = dispersive_1d("burgers");
  } else if (name == "kdv-eps01") {
    c = dispersive_1d("kdv");
  } else if (name == "dkp1-line") {
    c = dkp_base(-1, "line_gaussian");
  } else if (name == "dkp2-line") {
    c = dkp_base(1, "line_gaussian");
  } else if (name == "dkp1-localized") {
    c = dkp_base(-1, "deriv_sech2_radial");
  } else if (name == "dkp2-localized") {
    c = dkp_base(1, "deriv_sech2_radial");
  } else if (name == "kp-sweep-line") {
    c = dkp_base(-1, "line_gaussian");
    c.equation = "kp";
    c.epsilon = 0.1;
    c.nx = 1 << 11;
    c.track = false;
    c.stop_at_breakup = false;
  } else if (name == "kdv-sweep") {
    c = dispersive_1d("kdv");
    c.epsilon = 0.1;
    c.n = 1 << 13;
    c.track = false;
  } else if (name == "dkp1-line-hpc") {
    c = dkp_base(-1, "line_gaussian");
    c.nx = 1 << 14;
    c.ny = 1 << 14;
  } else if (name == "dkp1-localized-hpc") {
    c = dkp_base(-1, "deriv_sech2_radial");
    c.nx = 1 << 14;
    c.ny = 1 << 14;
  } else {
    throw Error("unknown preset '" + name + "'");
  }
  c.preset = name;
  c.output_dir = "out/" + name;
  return c;
}

std::string hex_hash(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace breakup

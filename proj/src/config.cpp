#include "hhg/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <numbers>
#include <optional>
#include <sstream>

#include "hhg/errors.hpp"
#include "hhg/units.hpp"

namespace hhg {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

enum class Dim { Length, Energy, Time, Rate, Field, Angle, Bare };

double unit_factor(const std::string& token, Dim dim, const std::string& keypath) {
  const std::string u = lower(token);
  switch (dim) {
    case Dim::Length:
      if (u == "a" || u == "ang" || u == "angstrom") return units::angstrom_to_bohr(1.0);
      if (u == "nm") return units::nm_to_bohr(1.0);
      if (u == "um") return units::um_to_bohr(1.0);
      if (u == "bohr" || u == "au") return 1.0;
      break;
    case Dim::Energy:
      if (u == "ev") return units::ev_to_ha(1.0);
      if (u == "ha" || u == "hartree" || u == "au") return 1.0;
      break;
    case Dim::Time:
      if (u == "fs") return units::fs_to_au(1.0);
      if (u == "au") return 1.0;
      break;
    case Dim::Rate:
      if (u == "1/fs" || u == "fs^-1") return units::per_fs_to_au(1.0);
      if (u == "1/au" || u == "au") return 1.0;
      break;
    case Dim::Field:
      if (u == "gv/m") return units::gvm_to_au(1.0);
      if (u == "au") return 1.0;
      break;
    case Dim::Angle:
      if (u == "rad") return 1.0;
      break;
    case Dim::Bare:
      break;
  }
  throw ConfigError("unknown unit '" + token + "' for key " + keypath);
}

void split_quantity(const std::string& text, const std::string& keypath, double* value,
                    std::string* unit) {
  const std::string t = trim(text);
  const char* begin = t.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || !std::isfinite(v)) {
    throw ConfigError("cannot parse number from '" + text + "' for key " + keypath);
  }
  *value = v;
  *unit = trim(std::string(end));
}

double parse_quantity(const std::string& text, Dim dim, const std::string& keypath) {
  double v = 0;
  std::string unit;
  split_quantity(text, keypath, &v, &unit);
  if (unit.empty()) return v;
  return v * unit_factor(unit, dim, keypath);
}

std::vector<double> parse_list(const std::string& text, Dim dim, const std::string& keypath) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  while (!parts.empty() && trim(parts.back()).empty()) parts.pop_back();
  if (parts.empty()) return {};

  // A unit on the final element applies to every element without its own.
  double last_v = 0;
  std::string shared_unit;
  split_quantity(parts.back(), keypath, &last_v, &shared_unit);

  std::vector<double> out;
  for (const std::string& p : parts) {
    double v = 0;
    std::string unit;
    split_quantity(p, keypath, &v, &unit);
    if (unit.empty()) unit = shared_unit;
    out.push_back(unit.empty() ? v : v * unit_factor(unit, dim, keypath));
  }
  return out;
}

int parse_int(const std::string& text, const std::string& keypath) {
  const std::string t = trim(text);
  const char* begin = t.c_str();
  char* end = nullptr;
  const long v = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0') {
    throw ConfigError("cannot parse integer from '" + text + "' for key " + keypath);
  }
  return static_cast<int>(v);
}

std::vector<int> parse_int_list(const std::string& text, const std::string& keypath) {
  std::vector<int> out;
  std::string cur;
  auto flush = [&] {
    const std::string t = trim(cur);
    if (!t.empty()) out.push_back(parse_int(t, keypath));
    cur.clear();
  };
  for (char c : text) {
    if (c == ',') {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

bool parse_bool(const std::string& text, const std::string& keypath) {
  const std::string t = lower(trim(text));
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError("cannot parse boolean from '" + text + "' for key " + keypath);
}

struct RawItem {
  std::string section, key, value;
};

std::vector<RawItem> parse_ini(const std::string& text, const std::string& origin) {
  std::vector<RawItem> items;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section header");
      }
      section = lower(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) {
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty section name");
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    }
    if (section.empty()) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": key outside any [section]");
    }
    RawItem it;
    it.section = section;
    it.key = trim(line.substr(0, eq));
    it.value = trim(line.substr(eq + 1));
    // Values may be quoted to protect inline spaces.
    if (it.value.size() >= 2 && it.value.front() == '"' && it.value.back() == '"') {
      it.value = it.value.substr(1, it.value.size() - 2);
    }
    if (it.key.empty()) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key name");
    }
    items.push_back(it);
  }
  return items;
}

std::string json_scalar_to_string(const nlohmann::json& v, const std::string& keypath) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_g17(v.get<double>());
  throw ConfigError("unsupported JSON value type for key " + keypath);
}

std::vector<RawItem> parse_json(const std::string& text, const std::string& origin) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& ex) {
    throw ConfigError(origin + ": " + ex.what());
  }
  if (!root.is_object()) throw ConfigError(origin + ": top level must be an object of sections");
  std::vector<RawItem> items;
  for (const auto& [section, body] : root.items()) {
    if (!body.is_object()) {
      throw ConfigError(origin + ": section '" + section + "' must be an object");
    }
    for (const auto& [key, value] : body.items()) {
      RawItem it;
      it.section = lower(section);
      it.key = key;
      const std::string path = it.section + "." + key;
      if (value.is_array()) {
        std::string joined;
        for (const auto& el : value) {
          if (!joined.empty()) joined += ", ";
          joined += json_scalar_to_string(el, path);
        }
        it.value = joined;
      } else {
        it.value = json_scalar_to_string(value, path);
      }
      items.push_back(it);
    }
  }
  return items;
}

SpectrumWindow parse_window(const std::string& text, const std::string& keypath) {
  const std::string t = lower(trim(text));
  if (t == "hann") return SpectrumWindow::Hann;
  if (t == "rect") return SpectrumWindow::Rect;
  throw ConfigError("key " + keypath + ": expected 'hann' or 'rect', got '" + text + "'");
}

SubsetSpec::Mode parse_mode(const std::string& text, const std::string& keypath) {
  const std::string t = lower(trim(text));
  if (t == "single") return SubsetSpec::Mode::SingleK;
  if (t == "pair") return SubsetSpec::Mode::PairPM;
  if (t == "interval") return SubsetSpec::Mode::SymmetricInterval;
  if (t == "full") return SubsetSpec::Mode::FullZone;
  if (t == "list") return SubsetSpec::Mode::ExplicitList;
  throw ConfigError("key " + keypath +
                    ": expected one of single|pair|interval|full|list, got '" + text + "'");
}

std::string mode_name(SubsetSpec::Mode m) {
  switch (m) {
    case SubsetSpec::Mode::SingleK: return "single";
    case SubsetSpec::Mode::PairPM: return "pair";
    case SubsetSpec::Mode::SymmetricInterval: return "interval";
    case SubsetSpec::Mode::FullZone: return "full";
    case SubsetSpec::Mode::ExplicitList: return "list";
  }
  return "full";
}

RunConfig resolve_items(const std::vector<RawItem>& items) {
  RunConfig cfg = default_config();

  // The potential kind decides which defaults later keys override, so it is
  // applied first regardless of position.
  for (const RawItem& it : items) {
    if (it.section == "potential" && it.key == "kind") {
      const std::string t = lower(trim(it.value));
      if (t == "cosine" || t == "cos") {
        cfg.potential = PotentialSpec::cosine_defaults();
      } else if (t == "sinh") {
        cfg.potential = PotentialSpec::sinh_defaults();
      } else {
        throw ConfigError("key potential.kind: expected 'cosine' or 'sinh', got '" + it.value + "'");
      }
    }
  }

  std::optional<double> f0_field;  // deferred: needs the final wavelength
  std::optional<double> a0_direct;

  for (const RawItem& it : items) {
    const std::string path = it.section + "." + it.key;
    const std::string& v = it.value;
    if (it.section == "potential") {
      if (it.key == "kind") continue;
      if (it.key == "a") {
        cfg.potential.a = parse_quantity(v, Dim::Length, path);
      } else if (it.key == "U0") {
        cfg.potential.u0 = parse_quantity(v, Dim::Energy, path);
      } else if (it.key == "width_ratio") {
        cfg.potential.width_ratio = parse_quantity(v, Dim::Bare, path);
      } else if (it.key == "U_shift") {
        cfg.potential.u_shift = parse_quantity(v, Dim::Energy, path);
      } else if (it.key == "centers") {
        const std::vector<double> c = parse_list(v, Dim::Bare, path);
        if (c.size() != 2) throw ConfigError("key " + path + ": expected exactly two centers");
        cfg.potential.centers = {c[0], c[1]};
      } else {
        throw ConfigError("unknown key: " + path);
      }
    } else if (it.section == "grid") {
      if (it.key == "n_k") {
        cfg.n_k = parse_int(v, path);
      } else {
        throw ConfigError("unknown key: " + path);
      }
    } else if (it.section == "bands") {
      if (it.key == "n_bands") {
        cfg.bands.n_window = parse_int(v, path);
      } else if (it.key == "m_cutoff") {
        cfg.bands.m_cutoff = parse_int(v, path);
      } else if (it.key == "n_solved") {
        cfg.bands.n_solved = parse_int(v, path);
      } else if (it.key == "n0") {
        cfg.bands.n0_override = lower(trim(v)) == "auto" ? -1 : parse_int(v, path);
      } else if (it.key == "reference_gap") {
        cfg.bands.reference_gap = parse_quantity(v, Dim::Energy, path);
      } else if (it.key == "ceiling") {
        const std::string t = lower(trim(v));
        cfg.bands.band_ceiling = (t == "none" || t == "inf")
                                     ? std::numeric_limits<double>::infinity()
                                     : parse_quantity(v, Dim::Energy, path);
      } else if (it.key == "calibrate") {
        cfg.calibrate = parse_bool(v, path);
      } else if (it.key == "calibrate_target") {
        cfg.calibrate_target = parse_quantity(v, Dim::Energy, path);
      } else if (it.key == "calibrate_tol") {
        cfg.calibrate_rel_tol = parse_quantity(v, Dim::Bare, path);
      } else {
        throw ConfigError("unknown key: " + path);
      }
    } else if (it.section == "pulse") {
      if (it.key == "F0") {
        f0_field = parse_quantity(v, Dim::Field, path);
      } else if (it.key == "A0") {
        a0_direct = parse_quantity(v, Dim::Bare, path);
      } else if (it.key == "lambda_L") {
        cfg.pulse_lambda = parse_quantity(v, Dim::Length, path);
      } else if (it.key == "tau") {
        cfg.pulse_tau = parse_quantity(v, Dim::Time, path);
      } else if (it.key == "phi") {
        cfg.pulse_phi = parse_quantity(v, Dim::Angle, path);
      } else {
        throw ConfigError("unknown key: " + path);
      }
    } else if (it.section == "dynamics") {
      if (it.key == "gamma_d") {
        cfg.rates.gamma_d = parse_quantity(v, Dim::Rate, path);
      } else if (it.key == "gamma_od") {
        cfg.rates.gamma_od = parse_quantity(v, Dim::Rate, path);
      } else if (it.key == "steps_per_cycle") {
        cfg.steps_per_cycle = parse_int(v, path);
      } else if (it.key == "dt") {
        cfg.dt_override = lower(trim(v)) == "auto" ? 0.0 : parse_quantity(v, Dim::Time, path);
      } else if (it.key == "tail") {
        cfg.tail = parse_quantity(v, Dim::Time, path);
      } else {
        throw ConfigError("unknown key: " + path);
      }
    } else if (it.section == "spectrum") {
      if (it.key == "window") {
        cfg.window = parse_window(v, path);
      } else if (it.key == "pad_factor") {
        cfg.pad_factor = parse_int(v, path);
      } else if (it.key == "hmax") {
        cfg.hmax = parse_int(v, path);
      } else {
        throw ConfigError("unknown key: " + path);
      }
    } else if (it.section == "subset") {
      if (it.key == "mode") {
        cfg.subset.mode = parse_mode(v, path);
      } else if (it.key == "k_index") {
        cfg.subset.k_index = parse_int(v, path);
      } else if (it.key == "k") {
        cfg.subset.k_fraction = lower(trim(v)) == "none"
                                    ? std::numeric_limits<double>::quiet_NaN()
                                    : parse_quantity(v, Dim::Bare, path);
      } else if (it.key == "fraction") {
        cfg.subset.fraction = parse_quantity(v, Dim::Bare, path);
      } else if (it.key == "indices") {
        cfg.subset.indices = parse_int_list(v, path);
      } else {
        throw ConfigError("unknown key: " + path);
      }
    } else if (it.section == "buildup") {
      if (it.key == "fractions") {
        cfg.buildup_fractions = parse_list(v, Dim::Bare, path);
      } else {
        throw ConfigError("unknown key: " + path);
      }
    } else if (it.section == "scan") {
      if (it.key == "F0_values") {
        cfg.scan_f0 = parse_list(v, Dim::Field, path);
      } else {
        throw ConfigError("unknown key: " + path);
      }
    } else if (it.section == "output") {
      if (it.key == "per_k_dump") {
        cfg.per_k_dump = parse_bool(v, path);
      } else {
        throw ConfigError("unknown key: " + path);
      }
    } else {
      throw ConfigError("unknown key: " + path);
    }
  }

  if (f0_field && a0_direct) {
    throw ConfigError("pulse.F0 and pulse.A0 are mutually exclusive");
  }
  const double omega = 2.0 * std::numbers::pi * units::kSpeedOfLightAu / cfg.pulse_lambda;
  if (f0_field) cfg.pulse_a0 = *f0_field / omega;
  if (a0_direct) cfg.pulse_a0 = *a0_direct;

  cfg.validate();
  return cfg;
}

}  // namespace

std::vector<int> SubsetSpec::resolve(const KGrid& grid) const {
  const int n = grid.size();
  const int ctr = grid.center();
  auto check = [&](int i) {
    if (i < 0 || i >= n) {
      throw ConfigError("subset: index " + std::to_string(i) + " outside grid of " +
                        std::to_string(n) + " points");
    }
    return i;
  };
  int idx = k_index;
  if (std::isfinite(k_fraction)) idx = grid_index_for_fraction(grid, k_fraction);

  switch (mode) {
    case Mode::SingleK:
      if (idx < 0) throw ConfigError("subset: mode=single requires subset.k or subset.k_index");
      return {check(idx)};
    case Mode::PairPM: {
      if (idx < 0) throw ConfigError("subset: mode=pair requires subset.k or subset.k_index");
      check(idx);
      if (idx == ctr) throw ConfigError("subset: mode=pair is undefined at k = 0");
      const int j = grid.mirror(idx);
      return {std::min(idx, j), std::max(idx, j)};
    }
    case Mode::FullZone:
    case Mode::SymmetricInterval: {
      const double f = mode == Mode::FullZone ? 1.0 : fraction;
      if (!(f >= 0.0 && f <= 1.0)) {
        throw ConfigError("subset.fraction must lie in [0, 1]");
      }
      const int m = static_cast<int>(std::lround(f * ctr));
      std::vector<int> rows;
      for (int i = ctr - m; i <= ctr + m; ++i) rows.push_back(i);
      return rows;
    }
    case Mode::ExplicitList: {
      if (indices.empty()) throw ConfigError("subset: mode=list requires subset.indices");
      std::vector<int> rows = indices;
      std::sort(rows.begin(), rows.end());
      for (int i : rows) check(i);
      if (std::adjacent_find(rows.begin(), rows.end()) != rows.end()) {
        throw ConfigError("subset.indices contains duplicates");
      }
      return rows;
    }
  }
  throw ConfigError("subset: unhandled mode");
}

int grid_index_for_fraction(const KGrid& grid, double frac) {
  const double kb = std::numbers::pi / grid.a;
  const double target = frac * kb;
  int best = 0;
  double bestd = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.size(); ++i) {
    const double d = std::abs(grid.k[static_cast<std::size_t>(i)] - target);
    if (d < bestd) {
      bestd = d;
      best = i;
    }
  }
  if (bestd > 1e-9 * kb) {
    const double near = grid.k[static_cast<std::size_t>(best)] / kb;
    throw ConfigError("subset.k = " + format_g17(frac) +
                      " is not a grid point; nearest grid value is " + format_g17(near));
  }
  return best;
}

PulseParams RunConfig::pulse() const {
  return PulseParams::from_a0(pulse_a0, pulse_lambda, pulse_tau, pulse_phi);
}

void RunConfig::resolve_time_grid(double* dt, int* nsteps) const {
  const double total = pulse_tau + tail;
  const double nominal = dt_override > 0 ? dt_override : pulse().cycle() / steps_per_cycle;
  int n = static_cast<int>(std::ceil(total / nominal));
  n = std::max(n, 1);
  *nsteps = n;
  *dt = total / n;
}

void RunConfig::validate() const {
  potential.validate();
  rates.validate();
  pulse().validate();
  if (n_k < 3 || n_k % 2 == 0) throw ConfigError("grid.n_k must be an odd integer >= 3");
  if (steps_per_cycle < 8) throw ConfigError("dynamics.steps_per_cycle must be >= 8");
  if (dt_override < 0 || !std::isfinite(dt_override)) {
    throw ConfigError("dynamics.dt must be positive or 'auto'");
  }
  if (tail < 0 || !std::isfinite(tail)) throw ConfigError("dynamics.tail must be >= 0");
  if (pad_factor < 1) throw ConfigError("spectrum.pad_factor must be >= 1");
  if (hmax < 3) throw ConfigError("spectrum.hmax must be >= 3");
  for (double f : buildup_fractions) {
    if (!(f >= 0.0 && f <= 1.0)) throw ConfigError("buildup.fractions must lie in [0, 1]");
  }
  if (buildup_fractions.empty()) throw ConfigError("buildup.fractions must not be empty");
  for (double f : scan_f0) {
    if (!(f > 0) || !std::isfinite(f)) throw ConfigError("scan.F0_values must be positive");
  }
  if (scan_f0.empty()) throw ConfigError("scan.F0_values must not be empty");
  if (calibrate_rel_tol <= 0 || calibrate_rel_tol >= 1) {
    throw ConfigError("bands.calibrate_tol must lie in (0, 1)");
  }
  if (!(calibrate_target > 0)) throw ConfigError("bands.calibrate_target must be positive");
}

RunConfig default_config() {
  RunConfig cfg;
  cfg.potential = PotentialSpec::cosine_defaults();
  cfg.n_k = 101;
  cfg.bands = BandSolveOptions{};
  cfg.pulse_lambda = units::um_to_bohr(3.0);
  cfg.pulse_tau = units::fs_to_au(300.0);
  cfg.pulse_phi = 0.0;
  const double omega = 2.0 * std::numbers::pi * units::kSpeedOfLightAu / cfg.pulse_lambda;
  cfg.pulse_a0 = units::gvm_to_au(0.5) / omega;
  cfg.rates.gamma_d = units::per_fs_to_au(0.1);
  cfg.rates.gamma_od = units::per_fs_to_au(0.3);
  cfg.buildup_fractions = {0.2, 0.4, 0.6, 0.8, 1.0};
  cfg.scan_f0 = {units::gvm_to_au(1.5), units::gvm_to_au(2.0), units::gvm_to_au(3.0),
                 units::gvm_to_au(4.0)};
  return cfg;
}

RunConfig parse_config_text(const std::string& text, const std::string& origin,
                            const std::vector<std::string>& overrides) {
  std::vector<RawItem> items;
  const std::string t = trim(text);
  if (!t.empty()) {
    items = t.front() == '{' ? parse_json(text, origin) : parse_ini(text, origin);
  }
  for (const std::string& ov : overrides) {
    const std::size_t eq = ov.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("--set expects section.key=value, got '" + ov + "'");
    }
    const std::string path = trim(ov.substr(0, eq));
    const std::size_t dot = path.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 >= path.size()) {
      throw ConfigError("--set expects section.key=value, got '" + ov + "'");
    }
    RawItem it;
    it.section = lower(path.substr(0, dot));
    it.key = path.substr(dot + 1);
    it.value = trim(ov.substr(eq + 1));
    if (it.value.size() >= 2 && it.value.front() == '"' && it.value.back() == '"') {
      it.value = it.value.substr(1, it.value.size() - 2);
    }
    items.push_back(it);
  }
  return resolve_items(items);
}

RunConfig load_config_file(const std::string& path) { return load_config(path, {}); }

RunConfig load_config(const std::string& path_or_empty, const std::vector<std::string>& overrides) {
  std::string text;
  if (!path_or_empty.empty()) {
    std::ifstream in(path_or_empty);
    if (!in) throw ConfigError("cannot open config file: " + path_or_empty);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  return parse_config_text(text, path_or_empty.empty() ? "<defaults>" : path_or_empty, overrides);
}

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string join_g17(const std::vector<double>& v) {
  std::string out;
  for (double x : v) {
    if (!out.empty()) out += ",";
    out += format_g17(x);
  }
  return out;
}

std::string join_int(const std::vector<int>& v) {
  std::string out;
  for (int x : v) {
    if (!out.empty()) out += ",";
    out += std::to_string(x);
  }
  return out;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> canonical_items(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> kv;
  auto add = [&](const std::string& k, const std::string& v) { kv.emplace_back(k, v); };
  add("potential.kind", cfg.potential.kind == PotentialKind::CosineWells ? "cosine" : "sinh");
  add("potential.a", format_g17(cfg.potential.a));
  add("potential.U0", format_g17(cfg.potential.u0));
  add("potential.width_ratio", format_g17(cfg.potential.width_ratio));
  add("potential.U_shift", format_g17(cfg.potential.u_shift));
  add("potential.centers", join_g17({cfg.potential.centers[0], cfg.potential.centers[1]}));
  add("grid.n_k", std::to_string(cfg.n_k));
  add("bands.n_bands", std::to_string(cfg.bands.n_window));
  add("bands.m_cutoff", std::to_string(cfg.bands.m_cutoff));
  add("bands.n_solved", std::to_string(cfg.bands.n_solved));
  add("bands.n0",
      cfg.bands.n0_override < 0 ? std::string("auto") : std::to_string(cfg.bands.n0_override));
  add("bands.reference_gap", format_g17(cfg.bands.reference_gap));
  add("bands.ceiling", std::isinf(cfg.bands.band_ceiling) ? std::string("none")
                                                          : format_g17(cfg.bands.band_ceiling));
  add("bands.calibrate", cfg.calibrate ? "true" : "false");
  add("bands.calibrate_target", format_g17(cfg.calibrate_target));
  add("bands.calibrate_tol", format_g17(cfg.calibrate_rel_tol));
  add("pulse.A0", format_g17(cfg.pulse_a0));
  add("pulse.lambda_L", format_g17(cfg.pulse_lambda));
  add("pulse.tau", format_g17(cfg.pulse_tau));
  add("pulse.phi", format_g17(cfg.pulse_phi));
  add("dynamics.gamma_d", format_g17(cfg.rates.gamma_d));
  add("dynamics.gamma_od", format_g17(cfg.rates.gamma_od));
  add("dynamics.steps_per_cycle", std::to_string(cfg.steps_per_cycle));
  add("dynamics.dt",
      cfg.dt_override > 0 ? format_g17(cfg.dt_override) : std::string("auto"));
  add("dynamics.tail", format_g17(cfg.tail));
  add("spectrum.window", window_name(cfg.window));
  add("spectrum.pad_factor", std::to_string(cfg.pad_factor));
  add("spectrum.hmax", std::to_string(cfg.hmax));
  add("subset.mode", mode_name(cfg.subset.mode));
  add("subset.k_index", std::to_string(cfg.subset.k_index));
  add("subset.k", std::isfinite(cfg.subset.k_fraction) ? format_g17(cfg.subset.k_fraction)
                                                       : std::string("none"));
  add("subset.fraction", format_g17(cfg.subset.fraction));
  add("subset.indices", join_int(cfg.subset.indices));
  add("buildup.fractions", join_g17(cfg.buildup_fractions));
  add("scan.F0_values", join_g17(cfg.scan_f0));
  add("output.per_k_dump", cfg.per_k_dump ? "true" : "false");
  return kv;
}

namespace {

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;

bool in_dynamics_scope(const std::string& key) {
  const bool section_ok = key.rfind("potential.", 0) == 0 || key.rfind("grid.", 0) == 0 ||
                          key.rfind("bands.", 0) == 0 || key.rfind("pulse.", 0) == 0 ||
                          key.rfind("dynamics.", 0) == 0;
  return section_ok && key.find("calibrate") == std::string::npos;
}

}  // namespace

std::uint64_t config_fingerprint(const RunConfig& cfg) {
  std::uint64_t h = kFnvOffset;
  for (const auto& [k, v] : canonical_items(cfg)) {
    if (k.rfind("output.", 0) == 0) continue;
    h = fnv1a(h, k);
    h = fnv1a(h, "=");
    h = fnv1a(h, v);
    h = fnv1a(h, "\n");
  }
  return h;
}

std::uint64_t dynamics_fingerprint(const RunConfig& cfg) {
  std::uint64_t h = kFnvOffset;
  for (const auto& [k, v] : canonical_items(cfg)) {
    if (!in_dynamics_scope(k)) continue;
    h = fnv1a(h, k);
    h = fnv1a(h, "=");
    h = fnv1a(h, v);
    h = fnv1a(h, "\n");
  }
  return h;
}

std::string fingerprint_hex(std::uint64_t fp) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fp));
  return buf;
}

}  // namespace hhg

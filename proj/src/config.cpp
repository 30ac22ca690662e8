#include "magfb/config.hpp"

#include <cctype>
#include <charconv>
#include <functional>
#include <map>
#include <sstream>

#include "magfb/errors.hpp"

namespace magfb {

namespace {

enum class Kind { frequency, temperature, ratio, angle, field, length, density, choice };

struct KeyInfo {
  Kind kind;
  std::function<void(RunConfig&, double)> set;
};

const std::map<std::string, KeyInfo, std::less<>>& key_table() {
  static const std::map<std::string, KeyInfo, std::less<>> table = {
      {"omega_a", {Kind::frequency, [](RunConfig& c, double v) { c.system.omega_a = v; }}},
      {"omega_b", {Kind::frequency, [](RunConfig& c, double v) { c.system.omega_b = v; }}},
      {"omega_m", {Kind::frequency, [](RunConfig& c, double v) { c.system.omega_m = v; }}},
      {"gamma_a", {Kind::frequency, [](RunConfig& c, double v) { c.system.gamma_a = v; }}},
      {"gamma_b", {Kind::frequency, [](RunConfig& c, double v) { c.system.gamma_b = v; }}},
      {"gamma_m", {Kind::frequency, [](RunConfig& c, double v) { c.system.gamma_m = v; }}},
      {"g_ga", {Kind::frequency, [](RunConfig& c, double v) { c.system.g_ga = v; }}},
      {"g_gb_eff", {Kind::frequency, [](RunConfig& c, double v) { c.system.g_gb_eff = v; }}},
      {"xi", {Kind::frequency, [](RunConfig& c, double v) { c.system.xi = v; }}},
      {"delta_a", {Kind::frequency, [](RunConfig& c, double v) { c.system.delta_a = v; }}},
      {"delta_b_tilde", {Kind::frequency, [](RunConfig& c, double v) { c.system.delta_b_tilde = v; }}},
      {"T", {Kind::temperature, [](RunConfig& c, double v) { c.system.T = v; }}},
      {"tau", {Kind::ratio, [](RunConfig& c, double v) { c.system.tau = v; }}},
      {"beta", {Kind::angle, [](RunConfig& c, double v) { c.system.beta = v; }}},
      {"b0", {Kind::field, [](RunConfig& c, double v) { c.drive.b0 = v; }}},
      {"sphere_diameter", {Kind::length, [](RunConfig& c, double v) { c.drive.sphere_diameter = v; }}},
      {"rho_spin", {Kind::density, [](RunConfig& c, double v) { c.drive.rho_spin = v; }}},
      {"kappa_gyro", {Kind::frequency, [](RunConfig& c, double v) { c.drive.kappa_gyro = v; }}},
      {"cavity_drive_amp", {Kind::frequency, [](RunConfig& c, double v) { c.drive.cavity_drive_amp = v; }}},
      {"g_gb_single", {Kind::frequency, [](RunConfig& c, double v) { c.drive.g_gb_single = v; }}},
      {"cavity_noise", {Kind::choice, nullptr}},
      {"negativity_form", {Kind::choice, nullptr}},
  };
  return table;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Quantity {
  double number = 0.0;
  std::string unit;
};

Quantity split_quantity(std::string_view text) {
  text = trim(text);
  Quantity q;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, q.number);
  if (ec != std::errc() || ptr == first || !std::isfinite(q.number)) {
    throw ConfigError("malformed number '" + std::string(text) + "'");
  }
  q.unit = std::string(trim(std::string_view(ptr, static_cast<std::size_t>(last - ptr))));
  return q;
}

[[noreturn]] void unknown_unit(std::string_view unit) {
  throw ConfigError("unknown unit '" + std::string(unit) + "'");
}

double convert(Kind kind, const Quantity& q, double omega_m, bool allow_wm) {
  const std::string& u = q.unit;
  switch (kind) {
    case Kind::frequency: {
      if (u.empty() || u == "Hz") return constants::angular(q.number);
      if (u == "kHz") return constants::angular(q.number * 1e3);
      if (u == "MHz") return constants::angular(q.number * 1e6);
      if (u == "GHz") return constants::angular(q.number * 1e9);
      if (u == "rad/s") return q.number;
      if (u == "wm" && allow_wm) return q.number * omega_m;
      unknown_unit(u);
    }
    case Kind::temperature:
      if (u.empty() || u == "K") return q.number;
      if (u == "mK") return q.number * 1e-3;
      if (u == "uK") return q.number * 1e-6;
      unknown_unit(u);
    case Kind::ratio:
    case Kind::density:
      if (u.empty()) return q.number;
      unknown_unit(u);
    case Kind::angle:
      if (u.empty() || u == "rad") return q.number;
      if (u == "pi") return q.number * constants::pi;
      if (u == "deg") return q.number * constants::pi / 180.0;
      unknown_unit(u);
    case Kind::field:
      if (u.empty() || u == "T") return q.number;
      if (u == "mT") return q.number * 1e-3;
      if (u == "uT") return q.number * 1e-6;
      unknown_unit(u);
    case Kind::length:
      if (u.empty() || u == "m") return q.number;
      if (u == "mm") return q.number * 1e-3;
      if (u == "um") return q.number * 1e-6;
      unknown_unit(u);
    case Kind::choice:
      break;
  }
  throw ConfigError("value is not numeric");
}

// Detunings, phases and drive amplitudes may be negative.
bool is_signed(std::string_view key) {
  return key == "delta_a" || key == "delta_b_tilde" || key == "beta" ||
         key == "cavity_drive_amp";
}

std::string located(std::size_t line, std::string_view key, std::string_view msg) {
  std::ostringstream os;
  os << "line " << line << ": key '" << key << "': " << msg;
  return os.str();
}

}  // namespace

double parse_value(std::string_view key, std::string_view text, double omega_m) {
  const auto& table = key_table();
  const auto it = table.find(key);
  if (it == table.end() || it->second.kind == Kind::choice) {
    throw ConfigError("key '" + std::string(key) + "' does not take a numeric value");
  }
  const bool allow_wm = key != "omega_m";
  return convert(it->second.kind, split_quantity(text), omega_m, allow_wm);
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  const auto& table = key_table();

  struct Pending {
    std::string key;
    std::size_t line;
    Quantity q;
  };
  std::vector<Pending> relative;  // values in units of omega_m
  std::map<std::string, std::size_t, std::less<>> seen;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(located(line_no, line, "expected 'key = value'"));
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = table.find(key);
    if (it == table.end()) {
      throw ConfigError(located(line_no, key, "unknown key"));
    }
    if (auto [prev, inserted] = seen.emplace(key, line_no); !inserted) {
      throw ConfigError(located(line_no, key, "duplicate key (first set on line " +
                                                  std::to_string(prev->second) + ")"));
    }
    if (value.empty()) {
      throw ConfigError(located(line_no, key, "missing value"));
    }

    if (it->second.kind == Kind::choice) {
      if (key == "cavity_noise") {
        if (value == "feedback") cfg.system.cavity_noise = CavityNoise::feedback;
        else if (value == "balanced") cfg.system.cavity_noise = CavityNoise::balanced;
        else throw ConfigError(located(line_no, key, "expected feedback or balanced"));
      } else {
        if (value == "standard") cfg.negativity = NegativityForm::standard;
        else if (value == "printed") cfg.negativity = NegativityForm::printed;
        else throw ConfigError(located(line_no, key, "expected standard or printed"));
      }
      continue;
    }

    try {
      Quantity q = split_quantity(value);
      if (q.unit == "wm" && it->second.kind == Kind::frequency && key != "omega_m") {
        relative.push_back({key, line_no, q});
        continue;
      }
      const double v = convert(it->second.kind, q, cfg.system.omega_m, false);
      if (key == "tau" && !(v >= 0.0 && v <= 1.0)) {
        throw ConfigError("tau must lie in [0, 1]");
      }
      if (v < 0.0 && !is_signed(key)) {
        throw ConfigError("value must be non-negative");
      }
      it->second.set(cfg, v);
    } catch (const ConfigError& e) {
      throw ConfigError(located(line_no, key, e.what()));
    }
  }

  for (const Pending& p : relative) {
    const double v = p.q.number * cfg.system.omega_m;
    if (v < 0.0 && !is_signed(p.key)) {
      throw ConfigError(located(p.line, p.key, "value must be non-negative"));
    }
    table.at(p.key).set(cfg, v);
  }

  try {
    validate(cfg.system);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (auto warning = quality_factor_warning(cfg.system)) {
    cfg.warnings.push_back(*warning);
  }
  return cfg;
}

}  // namespace magfb

#include "platoon/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "platoon/errors.hpp"

namespace platoon {

namespace {

struct Entry {
  std::string section, key, value;
  int line = 0;
};

const std::map<std::string, std::set<std::string>> kSchema = {
    {"platoon", {"n_followers", "dt"}},
    {"policy", {"type", "kappa", "kappa0", "d", "h"}},
    {"model", {"tau"}},
    {"controller", {"omega0", "zeta0"}},
    {"reference",
     {"type", "v_const", "v_base", "depth", "s_begin", "s_end", "v_min", "v_max"}},
    {"disturbance", {"type", "amplitude", "spatial_freq", "applies_to", "table"}},
    {"sim",
     {"domain", "s_start", "s_end", "t_start", "t_end", "step", "seed", "s_origin",
      "ic_spread_timing", "ic_spread_velocity", "ic_spread_accel"}},
    {"sweep", {"n_list", "kappa0_list"}},
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
  throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
}

std::vector<Entry> tokenize(const std::string& text, const std::string& origin) {
  std::vector<Entry> entries;
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(origin, line, "malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      if (!kSchema.count(section)) fail(origin, line, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(origin, line, "expected key = value");
    if (section.empty()) fail(origin, line, "key outside any section");
    Entry e;
    e.section = section;
    e.key = trim(s.substr(0, eq));
    e.value = trim(s.substr(eq + 1));
    e.line = line;
    if (!kSchema.at(section).count(e.key)) {
      fail(origin, line, "unknown key '" + e.key + "' in [" + section + "]");
    }
    entries.push_back(e);
  }
  return entries;
}

double parse_double(const Entry& e, const std::string& origin) {
  char* end = nullptr;
  const double v = std::strtod(e.value.c_str(), &end);
  if (end == e.value.c_str() || *end != '\0') {
    fail(origin, e.line, "'" + e.key + "' expects a number, got '" + e.value + "'");
  }
  return v;
}

long long parse_int(const Entry& e, const std::string& origin) {
  char* end = nullptr;
  const long long v = std::strtoll(e.value.c_str(), &end, 10);
  if (end == e.value.c_str() || *end != '\0') {
    fail(origin, e.line, "'" + e.key + "' expects an integer, got '" + e.value + "'");
  }
  return v;
}

std::uint64_t parse_u64(const Entry& e, const std::string& origin) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(e.value.c_str(), &end, 10);
  if (end == e.value.c_str() || *end != '\0') {
    fail(origin, e.line, "'" + e.key + "' expects an unsigned integer");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

std::vector<SineRow> parse_table(const Entry& e, const std::string& origin) {
  // rows "vehicle:amplitude:freq[:phase]" separated by ';'
  std::vector<SineRow> rows;
  for (const std::string& item : split(e.value, ';')) {
    if (item.empty()) continue;
    const auto fields = split(item, ':');
    if (fields.size() < 3 || fields.size() > 4) {
      fail(origin, e.line, "table row needs vehicle:amplitude:freq[:phase]");
    }
    SineRow row;
    try {
      row.vehicle = std::stoi(fields[0]);
      row.amplitude = std::stod(fields[1]);
      row.freq = std::stod(fields[2]);
      row.phase = fields.size() == 4 ? std::stod(fields[3]) : 0.0;
    } catch (const std::exception&) {
      fail(origin, e.line, "malformed table row '" + item + "'");
    }
    rows.push_back(row);
  }
  return rows;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text, const std::string& origin) {
  ScenarioConfig cfg;
  const std::vector<Entry> entries = tokenize(text, origin);

  // The grid keys are domain-dependent, so resolve the domain first.
  for (const Entry& e : entries) {
    if (e.section == "sim" && e.key == "domain") {
      if (e.value == "spatial") cfg.domain = Domain::Spatial;
      else if (e.value == "temporal") cfg.domain = Domain::Temporal;
      else fail(origin, e.line, "domain must be 'spatial' or 'temporal'");
    }
  }
  const bool spatial = cfg.domain == Domain::Spatial;

  for (const Entry& e : entries) {
    if (e.section == "platoon") {
      if (e.key == "n_followers") cfg.n_followers = static_cast<int>(parse_int(e, origin));
      else cfg.policy.dt = parse_double(e, origin);
    } else if (e.section == "policy") {
      if (e.key == "type") {
        if (e.value == "constant_spacing") cfg.policy.kind = PolicyKind::ConstantSpacing;
        else if (e.value == "constant_headway") cfg.policy.kind = PolicyKind::ConstantHeadway;
        else if (e.value == "delay_based") cfg.policy.kind = PolicyKind::DelayBased;
        else fail(origin, e.line, "unknown policy type '" + e.value + "'");
      } else if (e.key == "kappa") cfg.policy.kappa = parse_double(e, origin);
      else if (e.key == "kappa0") cfg.policy.kappa0 = parse_double(e, origin);
      else if (e.key == "d") cfg.policy.d = parse_double(e, origin);
      else cfg.policy.h = parse_double(e, origin);
    } else if (e.section == "model") {
      cfg.model.tau = parse_double(e, origin);
    } else if (e.section == "controller") {
      if (e.key == "omega0") cfg.controller.omega0 = parse_double(e, origin);
      else cfg.controller.zeta0 = parse_double(e, origin);
    } else if (e.section == "reference") {
      if (e.key == "type") {
        if (e.value == "constant") cfg.profile.kind = ProfileKind::Constant;
        else if (e.value == "cosine_dip") cfg.profile.kind = ProfileKind::CosineDip;
        else fail(origin, e.line, "unknown reference type '" + e.value + "'");
      } else if (e.key == "v_const") cfg.profile.v_const = parse_double(e, origin);
      else if (e.key == "v_base") cfg.profile.v_base = parse_double(e, origin);
      else if (e.key == "depth") cfg.profile.depth = parse_double(e, origin);
      else if (e.key == "s_begin") cfg.profile.s_begin = parse_double(e, origin);
      else if (e.key == "s_end") cfg.profile.s_end = parse_double(e, origin);
      else if (e.key == "v_min") cfg.profile.v_min = parse_double(e, origin);
      else cfg.profile.v_max = parse_double(e, origin);
    } else if (e.section == "disturbance") {
      if (e.key == "type") {
        if (e.value == "none") cfg.disturbance.kind = DisturbanceKind::None;
        else if (e.value == "sine_of_s") cfg.disturbance.kind = DisturbanceKind::SineOfS;
        else if (e.value == "per_vehicle_table")
          cfg.disturbance.kind = DisturbanceKind::PerVehicleTable;
        else fail(origin, e.line, "unknown disturbance type '" + e.value + "'");
      } else if (e.key == "amplitude") cfg.disturbance.amplitude = parse_double(e, origin);
      else if (e.key == "spatial_freq") cfg.disturbance.freq = parse_double(e, origin);
      else if (e.key == "applies_to") {
        if (e.value == "all") cfg.disturbance.applies_to = DisturbanceTarget::All;
        else if (e.value == "followers")
          cfg.disturbance.applies_to = DisturbanceTarget::FollowersOnly;
        else fail(origin, e.line, "applies_to must be 'all' or 'followers'");
      } else cfg.disturbance.table = parse_table(e, origin);
    } else if (e.section == "sim") {
      if (e.key == "domain") continue;  // handled above
      if (e.key == "s_start" || e.key == "t_start") {
        if (spatial != (e.key == "s_start")) {
          fail(origin, e.line, "'" + e.key + "' does not match the declared domain");
        }
        cfg.grid.start = parse_double(e, origin);
      } else if (e.key == "s_end" || e.key == "t_end") {
        if (spatial != (e.key == "s_end")) {
          fail(origin, e.line, "'" + e.key + "' does not match the declared domain");
        }
        cfg.grid.end = parse_double(e, origin);
      } else if (e.key == "step") cfg.grid.step = parse_double(e, origin);
      else if (e.key == "seed") cfg.seed = parse_u64(e, origin);
      else if (e.key == "s_origin") cfg.s_origin = parse_double(e, origin);
      else if (e.key == "ic_spread_timing") cfg.ic_spread.timing = parse_double(e, origin);
      else if (e.key == "ic_spread_velocity")
        cfg.ic_spread.velocity = parse_double(e, origin);
      else cfg.ic_spread.accel = parse_double(e, origin);
    } else if (e.section == "sweep") {
      if (e.key == "n_list") {
        cfg.sweep.n_list.clear();
        for (const std::string& item : split(e.value, ',')) {
          try {
            cfg.sweep.n_list.push_back(std::stoi(item));
          } catch (const std::exception&) {
            fail(origin, e.line, "n_list expects integers");
          }
        }
      } else {
        cfg.sweep.kappa0_list.clear();
        for (const std::string& item : split(e.value, ',')) {
          try {
            cfg.sweep.kappa0_list.push_back(std::stod(item));
          } catch (const std::exception&) {
            fail(origin, e.line, "kappa0_list expects numbers");
          }
        }
      }
    }
  }

  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

std::string serialize_config(const ScenarioConfig& cfg) {
  std::ostringstream os;
  os << "[platoon]\n"
     << "n_followers = " << cfg.n_followers << "\n"
     << "dt = " << fmt(cfg.policy.dt) << "\n\n";

  os << "[policy]\n"
     << "type = " << to_string(cfg.policy.kind) << "\n"
     << "kappa = " << fmt(cfg.policy.kappa) << "\n"
     << "kappa0 = " << fmt(cfg.policy.kappa0) << "\n"
     << "d = " << fmt(cfg.policy.d) << "\n"
     << "h = " << fmt(cfg.policy.h) << "\n\n";

  os << "[model]\ntau = " << fmt(cfg.model.tau) << "\n\n";

  os << "[controller]\n"
     << "omega0 = " << fmt(cfg.controller.omega0) << "\n"
     << "zeta0 = " << fmt(cfg.controller.zeta0) << "\n\n";

  os << "[reference]\n"
     << "type = " << to_string(cfg.profile.kind) << "\n";
  if (cfg.profile.kind == ProfileKind::Constant) {
    os << "v_const = " << fmt(cfg.profile.v_const) << "\n";
  } else {
    os << "v_base = " << fmt(cfg.profile.v_base) << "\n"
       << "depth = " << fmt(cfg.profile.depth) << "\n"
       << "s_begin = " << fmt(cfg.profile.s_begin) << "\n"
       << "s_end = " << fmt(cfg.profile.s_end) << "\n";
  }
  os << "v_min = " << fmt(cfg.profile.v_min) << "\n"
     << "v_max = " << fmt(cfg.profile.v_max) << "\n\n";

  os << "[disturbance]\n"
     << "type = " << to_string(cfg.disturbance.kind) << "\n"
     << "amplitude = " << fmt(cfg.disturbance.amplitude) << "\n"
     << "spatial_freq = " << fmt(cfg.disturbance.freq) << "\n"
     << "applies_to = " << to_string(cfg.disturbance.applies_to) << "\n";
  if (!cfg.disturbance.table.empty()) {
    os << "table = ";
    for (std::size_t i = 0; i < cfg.disturbance.table.size(); ++i) {
      const SineRow& r = cfg.disturbance.table[i];
      if (i) os << "; ";
      os << r.vehicle << ":" << fmt(r.amplitude) << ":" << fmt(r.freq) << ":"
         << fmt(r.phase);
    }
    os << "\n";
  }
  os << "\n";

  const bool spatial = cfg.domain == Domain::Spatial;
  os << "[sim]\n"
     << "domain = " << to_string(cfg.domain) << "\n"
     << (spatial ? "s_start = " : "t_start = ") << fmt(cfg.grid.start) << "\n"
     << (spatial ? "s_end = " : "t_end = ") << fmt(cfg.grid.end) << "\n"
     << "step = " << fmt(cfg.grid.step) << "\n"
     << "seed = " << cfg.seed << "\n"
     << "s_origin = " << fmt(cfg.s_origin) << "\n"
     << "ic_spread_timing = " << fmt(cfg.ic_spread.timing) << "\n"
     << "ic_spread_velocity = " << fmt(cfg.ic_spread.velocity) << "\n"
     << "ic_spread_accel = " << fmt(cfg.ic_spread.accel) << "\n\n";

  os << "[sweep]\nn_list = ";
  for (std::size_t i = 0; i < cfg.sweep.n_list.size(); ++i) {
    if (i) os << ",";
    os << cfg.sweep.n_list[i];
  }
  os << "\nkappa0_list = ";
  for (std::size_t i = 0; i < cfg.sweep.kappa0_list.size(); ++i) {
    if (i) os << ",";
    os << fmt(cfg.sweep.kappa0_list[i]);
  }
  os << "\n";
  return os.str();
}

}  // namespace platoon

// Copyright 2026 The flexjoint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "flexjoint/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <type_traits>

#include "flexjoint/parameter_sets.hpp"

namespace flexjoint {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(trim(std::string_view(text).substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string location(const std::string& origin, int line) {
  return line > 0 ? origin + ":" + std::to_string(line) : origin;
}

using JointField = std::function<double&(JointParams&)>;

const std::map<std::string, JointField, std::less<>>& joint_fields() {
  static const std::map<std::string, JointField, std::less<>> fields = {
      {"J", [](JointParams& p) -> double& { return p.motor_inertia; }},
      {"u", [](JointParams& p) -> double& { return p.gear_ratio; }},
      {"M", [](JointParams& p) -> double& { return p.link_inertia; }},
      {"f_v", [](JointParams& p) -> double& { return p.friction.viscous; }},
      {"f_c", [](JointParams& p) -> double& { return p.friction.coulomb; }},
      {"s_F", [](JointParams& p) -> double& { return p.friction.smoothness; }},
      {"c_LM", [](JointParams& p) -> double& { return p.stiffness.lost_motion_stiffness; }},
      {"c_TR", [](JointParams& p) -> double& { return p.stiffness.rigidity_stiffness; }},
      {"phi_B_star", [](JointParams& p) -> double& { return p.stiffness.backlash_angle; }},
      {"phi_LM", [](JointParams& p) -> double& { return p.stiffness.lost_motion_angle; }},
      {"s_E1", [](JointParams& p) -> double& { return p.stiffness.tanh_slope; }},
      {"s_E2", [](JointParams& p) -> double& { return p.stiffness.inverse_smoothness; }},
      {"K_P", [](JointParams& p) -> double& { return p.position_gain; }},
      {"K_V", [](JointParams& p) -> double& { return p.speed_gain; }},
      {"tau_lim", [](JointParams& p) -> double& { return p.torque_limit; }},
      {"tau_rate_lim", [](JointParams& p) -> double& { return p.torque_rate_limit; }},
      {"t_lp", [](JointParams& p) -> double& { return p.lowpass_time_constant; }},
  };
  return fields;
}

const std::map<std::string, std::set<std::string>, std::less<>>& section_keys() {
  static const std::map<std::string, std::set<std::string>, std::less<>> keys = {
      {"model", {"set", "joints"}},
      {"trajectory", {"preset", "duration", "amplitude"}},
      {"sim",
       {"dt_plant", "dt_ctrl", "plant_stiffness", "plant_friction", "sensor_resolution", "provider",
        "gravity", "coupling_source"}},
      {"geometry", {"mass1", "mass2", "length1", "length2", "com1", "com2", "inertia1", "inertia2", "g"}},
      {"controller", {"ff", "fb", "shaping", "variants"}},
      {"output", {"scenario", "csv_path", "report_path", "json_path"}},
  };
  return keys;
}

// "joint.3" -> 3, "plant.joint.3" -> 3 with plant = true.
std::optional<std::size_t> joint_section(const std::string& section, bool& plant) {
  std::string_view rest = section;
  plant = rest.starts_with("plant.");
  if (plant) rest.remove_prefix(6);
  if (!rest.starts_with("joint.")) return std::nullopt;
  rest.remove_prefix(6);
  if (rest.empty() || !std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(std::stoul(std::string(rest)));
}

class Builder {
 public:
  explicit Builder(const std::vector<ConfigEntry>& entries) : entries_(entries) {}

  RunConfig build(const std::string& default_id) {
    check_keys();
    RunConfig out;
    out.scenario_id = default_id;
    ScenarioConfig& s = out.scenario;

    std::string set_name = "kr300-joint1";
    if (const ConfigEntry* e = find("model", "set")) set_name = e->value;
    ParameterSet set;
    try {
      set = parameter_set(set_name);
    } catch (const std::invalid_argument& ex) {
      fail(*find("model", "set"), ex.what());
    }
    s.model = set.joints;
    if (const ConfigEntry* e = find("model", "joints")) {
      const double n = number(*e);
      if (n < 1 || n != std::floor(n) || n > static_cast<double>(set.joints.size())) {
        fail(*e, "joints must be an integer in [1, " + std::to_string(set.joints.size()) + "]");
      }
      s.model.resize(static_cast<std::size_t>(n));
    }
    apply_joints(s);

    if (const ConfigEntry* e = find("trajectory", "preset")) {
      const auto& names = trajectory_preset_names();
      if (std::find(names.begin(), names.end(), e->value) == names.end()) {
        fail(*e, "unknown trajectory preset '" + e->value + "'");
      }
      s.trajectory = e->value;
    }
    if (const ConfigEntry* e = find("trajectory", "duration")) s.duration = number(*e);
    if (const ConfigEntry* e = find("trajectory", "amplitude")) s.amplitude = number(*e);

    if (const ConfigEntry* e = find("sim", "dt_plant")) s.dt_plant = number(*e);
    if (const ConfigEntry* e = find("sim", "dt_ctrl")) s.dt_ctrl = number(*e);
    if (const ConfigEntry* e = find("sim", "plant_stiffness")) s.plant_stiffness = parse(*e, parse_stiffness_law);
    if (const ConfigEntry* e = find("sim", "plant_friction")) s.plant_friction = parse(*e, parse_friction_law);
    if (const ConfigEntry* e = find("sim", "sensor_resolution")) s.sensor_resolution = number(*e);
    if (const ConfigEntry* e = find("sim", "provider")) s.provider = parse(*e, parse_provider_kind);
    if (const ConfigEntry* e = find("sim", "coupling_source")) {
      s.coupling_source = parse(*e, parse_coupling_source);
    }
    if (const ConfigEntry* e = find("sim", "gravity")) {
      std::vector<double> g;
      for (const std::string& part : split(e->value, ',')) g.push_back(number(*e, part));
      if (g.size() == 1) g.assign(s.model.size(), g.front());
      if (g.size() != s.model.size()) fail(*e, "expected 1 or " + std::to_string(s.model.size()) + " values");
      s.gravity_amplitude = std::move(g);
    }

    Planar2RGeometry& geo = s.geometry;
    const std::pair<const char*, double*> geometry[] = {
        {"mass1", &geo.mass1},       {"mass2", &geo.mass2}, {"length1", &geo.length1},
        {"length2", &geo.length2},   {"com1", &geo.com1},   {"com2", &geo.com2},
        {"inertia1", &geo.inertia1}, {"inertia2", &geo.inertia2}, {"g", &geo.gravity}};
    for (const auto& [key, field] : geometry) {
      if (const ConfigEntry* e = find("geometry", key)) *field = number(*e);
    }

    if (const ConfigEntry* e = find("controller", "ff")) s.controller.ff = parse(*e, parse_feedforward_mode);
    if (const ConfigEntry* e = find("controller", "fb")) s.controller.fb = parse(*e, parse_feedback_mode);
    if (const ConfigEntry* e = find("controller", "shaping")) s.shaping = parse(*e, parse_shaping_preset);
    if (const ConfigEntry* e = find("controller", "variants")) {
      for (const std::string& part : split(e->value, ',')) {
        if (part.empty()) continue;
        try {
          out.variants.push_back(parse_variant(part));
        } catch (const std::invalid_argument& ex) {
          fail(*e, ex.what());
        }
      }
    }

    if (const ConfigEntry* e = find("output", "scenario")) out.scenario_id = e->value;
    if (const ConfigEntry* e = find("output", "csv_path")) out.csv_path = e->value;
    if (const ConfigEntry* e = find("output", "report_path")) out.report_path = e->value;
    if (const ConfigEntry* e = find("output", "json_path")) out.json_path = e->value;

    try {
      s.validate();
    } catch (const std::invalid_argument& ex) {
      throw ConfigError(entries_.empty() ? "config" : entries_.front().origin, 0, "", ex.what());
    }
    return out;
  }

 private:
  [[noreturn]] static void fail(const ConfigEntry& e, const std::string& message) {
    throw ConfigError(e.origin, e.line, e.section + "." + e.key, "key '" + e.key + "' in [" + e.section +
                                                                   "]: " + message);
  }

  static double number(const ConfigEntry& e) { return number(e, e.value); }
  static double number(const ConfigEntry& e, const std::string& text) {
    try {
      return parse_number(text);
    } catch (const std::invalid_argument& ex) {
      fail(e, ex.what());
    }
  }

  template <typename Fn>
  static std::invoke_result_t<Fn, std::string_view> parse(const ConfigEntry& e, Fn fn) {
    try {
      return fn(e.value);
    } catch (const std::invalid_argument& ex) {
      fail(e, ex.what());
    }
  }

  const ConfigEntry* find(std::string_view section, std::string_view key) const {
    const ConfigEntry* found = nullptr;
    for (const ConfigEntry& e : entries_) {
      if (e.section == section && e.key == key) found = &e;
    }
    return found;
  }

  void check_keys() const {
    for (const ConfigEntry& e : entries_) {
      bool plant = false;
      if (joint_section(e.section, plant)) {
        if (!joint_fields().contains(e.key) && e.key != "tau_E0") fail(e, "unknown key");
        continue;
      }
      const auto it = section_keys().find(e.section);
      if (it == section_keys().end()) {
        throw ConfigError(e.origin, e.line, e.section, "unknown section [" + e.section + "]");
      }
      if (!it->second.contains(e.key)) fail(e, "unknown key");
    }
  }

  void apply_joints(ScenarioConfig& s) const {
    std::vector<JointParams> plant = s.model;
    bool plant_given = false;
    // Model sections first so that plant sections start from the final model.
    for (int pass = 0; pass < 2; ++pass) {
      std::map<std::size_t, std::vector<const ConfigEntry*>> sections;
      for (const ConfigEntry& e : entries_) {
        bool is_plant = false;
        const auto index = joint_section(e.section, is_plant);
        if (index && is_plant == (pass == 1)) sections[*index].push_back(&e);
      }
      if (pass == 1) {
        plant = s.model;
        plant_given = !sections.empty();
      }
      std::vector<JointParams>& target = pass == 0 ? s.model : plant;
      for (const auto& [index, list] : sections) {
        if (index < 1 || index > target.size()) {
          fail(*list.front(), "joint index " + std::to_string(index) + " outside 1.." +
                                  std::to_string(target.size()));
        }
        JointParams& p = target[index - 1];
        const ConfigEntry* offset = nullptr;
        const ConfigEntry* c_lm = nullptr;
        for (const ConfigEntry* e : list) {
          if (e->key == "tau_E0") {
            offset = e;
            continue;
          }
          if (e->key == "c_LM") c_lm = e;
          joint_fields().at(e->key)(p) = number(*e);
        }
        if (offset) {
          if (c_lm) fail(*offset, "give either c_LM or tau_E0, not both");
          p.stiffness.lost_motion_stiffness = number(*offset) / p.stiffness.lost_motion_angle;
        }
        try {
          p.validate();
        } catch (const std::invalid_argument& ex) {
          throw ConfigError(list.front()->origin, list.front()->line, list.front()->section,
                            "[" + list.front()->section + "]: " + ex.what());
        }
      }
    }
    if (plant_given) s.plant = std::move(plant);
  }

  const std::vector<ConfigEntry>& entries_;
};

}  // namespace

ConfigError::ConfigError(const std::string& origin, int line, const std::string& key,
                         const std::string& message)
    : std::runtime_error(location(origin, line) + ": " + message), line_(line), key_(key) {}

std::vector<ConfigEntry> parse_config(std::istream& in, const std::string& origin) {
  std::vector<ConfigEntry> entries;
  std::string section;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    // Comments start a line or follow whitespace.
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if ((raw[i] == '#' || raw[i] == ';') && (i == 0 || raw[i - 1] == ' ' || raw[i - 1] == '\t')) {
        raw.resize(i);
        break;
      }
    }
    const std::string text = trim(raw);
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']' || text.size() < 3) {
        throw ConfigError(origin, line, "", "malformed section header '" + text + "'");
      }
      section = trim(std::string_view(text).substr(1, text.size() - 2));
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError(origin, line, "", "expected 'key = value', got '" + text + "'");
    const std::string key = trim(std::string_view(text).substr(0, eq));
    if (key.empty()) throw ConfigError(origin, line, "", "missing key before '='");
    if (section.empty()) throw ConfigError(origin, line, key, "key '" + key + "' appears before any section");
    for (const ConfigEntry& e : entries) {
      if (e.section == section && e.key == key) {
        throw ConfigError(origin, line, section + "." + key,
                          "duplicate key '" + key + "' in [" + section + "] (first on line " +
                              std::to_string(e.line) + ")");
      }
    }
    entries.push_back({section, key, trim(std::string_view(text).substr(eq + 1)), line, origin});
  }
  return entries;
}

void apply_override(std::vector<ConfigEntry>& entries, const std::string& assignment) {
  const auto eq = assignment.find('=');
  const std::string path = trim(std::string_view(assignment).substr(0, eq));
  const auto dot = path.rfind('.');
  if (eq == std::string::npos || dot == std::string::npos || dot == 0 || dot + 1 == path.size()) {
    throw ConfigError("override '" + assignment + "'", 0, "", "expected section.key=value");
  }
  ConfigEntry entry{path.substr(0, dot), path.substr(dot + 1), trim(std::string_view(assignment).substr(eq + 1)),
                    0, "override '" + assignment + "'"};
  for (ConfigEntry& e : entries) {
    if (e.section == entry.section && e.key == entry.key) {
      e = std::move(entry);
      return;
    }
  }
  entries.push_back(std::move(entry));
}

RunConfig build_config(const std::vector<ConfigEntry>& entries, const std::string& default_id) {
  return Builder(entries).build(default_id);
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "", "cannot open file");
  std::vector<ConfigEntry> entries = parse_config(in, path);
  for (const std::string& o : overrides) apply_override(entries, o);
  return build_config(entries, std::filesystem::path(path).stem().string());
}

ControllerSelection parse_variant(const std::string& text) {
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    return {parse_feedforward_mode(trim(std::string_view(text).substr(0, colon))),
            parse_feedback_mode(trim(std::string_view(text).substr(colon + 1)))};
  }
  ControllerSelection sel{FeedforwardMode::none, FeedbackMode::none};
  bool any_ff = false;
  bool any_fb = false;
  for (const std::string& token : split(text, '+')) {
    if ((token == "FB-FF" || token == "R-FF") && !any_ff) {
      sel.ff = token == "FB-FF" ? FeedforwardMode::flatness : FeedforwardMode::rigid;
      any_ff = true;
    } else if ((token == "C-FB" || token == "MB-FB") && !any_fb) {
      sel.fb = token == "C-FB" ? FeedbackMode::conventional : FeedbackMode::model_based;
      any_fb = true;
    } else if (token == "open-loop" && !any_ff && !any_fb) {
      any_ff = any_fb = true;
    } else {
      throw std::invalid_argument("unknown controller variant '" + text + "'");
    }
  }
  return sel;
}

double parse_number(const std::string& text) {
  const std::string s = trim(text);
  auto one = [&](const std::string& part) {
    if (part.empty()) throw std::invalid_argument("expected a number, got '" + s + "'");
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(part.c_str(), &end);
    if (end != part.c_str() + part.size() || errno == ERANGE || !std::isfinite(v)) {
      throw std::invalid_argument("expected a number, got '" + s + "'");
    }
    return v;
  };
  const auto slash = s.find('/');
  if (slash == std::string::npos) return one(s);
  const double den = one(trim(std::string_view(s).substr(slash + 1)));
  if (den == 0.0) throw std::invalid_argument("zero denominator in '" + s + "'");
  return one(trim(std::string_view(s).substr(0, slash))) / den;
}

}  // namespace flexjoint

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

#include "flexjoint/report.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include <json.hpp>

namespace flexjoint {
namespace {

// Display width of UTF-8 text: count everything but continuation bytes.
std::size_t width(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80;
  return n;
}

std::string pad(const std::string& s, std::size_t w) {
  const std::size_t have = width(s);
  return have >= w ? s + " " : s + std::string(w - have, ' ');
}

std::string fixed(double v, const char* format) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

// Table-style number: up to 10 significant digits, large and small values as
// "8.4225e6" rather than "8.4225e+06".
std::string compact(double v) {
  const double a = std::abs(v);
  if (a == 0.0 || (a >= 1e-3 && a < 1e5)) return fixed(v, "%.10g");
  std::string s = fixed(v, "%.9e");
  const auto e = s.find('e');
  std::string mantissa = s.substr(0, e);
  mantissa.erase(mantissa.find_last_not_of('0') + 1);
  if (mantissa.back() == '.') mantissa.pop_back();
  const int exponent = std::stoi(s.substr(e + 1));
  return mantissa + "e" + std::to_string(exponent);
}

struct Row {
  const char* name;
  const char* symbol;
  const char* unit;
  std::function<std::string(const JointParams&, const GearRatio&)> value;
};

std::function<std::string(const JointParams&, const GearRatio&)> num(double JointParams::*field) {
  return [field](const JointParams& p, const GearRatio&) { return compact(p.*field); };
}

template <typename Sub>
std::function<std::string(const JointParams&, const GearRatio&)> num(Sub JointParams::*sub, double Sub::*field) {
  return [sub, field](const JointParams& p, const GearRatio&) { return compact(p.*sub.*field); };
}

}  // namespace

std::string format_double(double value) { return fixed(value, "%.16e"); }

void write_csv(std::ostream& out, const SimLog& log) {
  std::string line = "t";
  for (std::size_t j = 1; j <= log.joints; ++j) {
    const std::string n = std::to_string(j);
    for (const char* name : {"q_R", "q", "theta", "theta_dot", "dq", "tau_E", "tau_M", "tau_FF", "tau_C"}) {
      line += ",";
      line += name;
      line += n;
    }
  }
  out << line << '\n';
  for (std::size_t k = 0; k < log.ticks(); ++k) {
    line = format_double(log.t[k]);
    for (std::size_t j = 0; j < log.joints; ++j) {
      const JointRecord& r = log.at(k, j);
      for (double v : {r.q_ref, r.q, r.theta, r.theta_dot, r.torsion, r.elastic_torque, r.motor_torque,
                       r.ff_torque, r.fb_torque}) {
        line += ',';
        line += format_double(v);
      }
    }
    out << line << '\n';
  }
}

void write_metrics_table(std::ostream& out, const std::string& scenario_id, const ComparisonReport& report) {
  std::size_t joints = 0;
  std::size_t label_width = 8;
  for (const VariantResult& v : report.variants) {
    joints = std::max(joints, v.metrics.joints.size());
    label_width = std::max(label_width, width(v.label) + 2);
  }
  out << "scenario: " << scenario_id << '\n';
  std::string header = pad("variant", label_width);
  for (std::size_t j = 1; j <= joints; ++j) {
    const std::string n = std::to_string(j);
    header += pad("max" + n + " [deg]", 14) + pad("mean" + n + " [deg]", 14) + pad("osc" + n + " [N·m]", 14) +
              pad("rate" + n + " [N·m/s]", 16);
  }
  while (header.back() == ' ') header.pop_back();
  out << header << '\n';
  for (const VariantResult& v : report.variants) {
    std::string row = pad(v.label, label_width);
    for (const JointMetrics& m : v.metrics.joints) {
      row += pad(fixed(m.max_abs_error_deg, "%.4e"), 14) + pad(fixed(m.mean_abs_error_deg, "%.4e"), 14) +
             pad(fixed(m.elastic_oscillation, "%.4e"), 14) + pad(fixed(m.max_torque_rate, "%.4e"), 16);
    }
    if (v.log.fault) row += "FAULT joint " + std::to_string(v.log.fault->joint + 1) + ": " + v.log.fault->message;
    while (!row.empty() && row.back() == ' ') row.pop_back();
    out << row << '\n';
  }
}

std::string metrics_json(const std::string& scenario_id, const ComparisonReport& report) {
  nlohmann::ordered_json variants = nlohmann::ordered_json::object();
  for (const VariantResult& v : report.variants) {
    nlohmann::ordered_json entry;
    entry["ff"] = std::string(to_string(v.selection.ff));
    entry["fb"] = std::string(to_string(v.selection.fb));
    if (v.log.fault) {
      entry["fault"] = {{"joint", v.log.fault->joint + 1},
                        {"time", v.log.fault->time},
                        {"message", v.log.fault->message}};
    } else {
      entry["fault"] = nullptr;
    }
    for (std::size_t j = 0; j < v.metrics.joints.size(); ++j) {
      const JointMetrics& m = v.metrics.joints[j];
      entry["joint" + std::to_string(j + 1)] = {{"max_abs_error_deg", m.max_abs_error_deg},
                                               {"mean_abs_error_deg", m.mean_abs_error_deg},
                                               {"elastic_oscillation_nm", m.elastic_oscillation},
                                               {"max_torque_rate_nm_per_s", m.max_torque_rate}};
    }
    variants[v.label] = std::move(entry);
  }
  nlohmann::ordered_json root;
  root[scenario_id] = std::move(variants);
  return root.dump(2) + "\n";
}

void write_parameter_set(std::ostream& out, const ParameterSet& set) {
  const std::vector<Row> rows = {
      {"motor inertia", "J", "kg·m²", num(&JointParams::motor_inertia)},
      {"gear ratio", "u", "-", [](const JointParams&, const GearRatio& g) {
         // Decimal table entries are stored over a power of ten.
         long d = g.denominator;
         while (d % 10 == 0) d /= 10;
         return d == 1 ? compact(g.value()) : g.text();
       }},
      {"link inertia", "M", "kg·m²", num(&JointParams::link_inertia)},
      {"Coulomb friction", "f_c", "N·m", num(&JointParams::friction, &FrictionParams::coulomb)},
      {"viscous friction", "f_v", "N·m·s/rad", num(&JointParams::friction, &FrictionParams::viscous)},
      {"friction smoothness factor", "s_F", "s/rad", num(&JointParams::friction, &FrictionParams::smoothness)},
      {"torsional rigidity", "c_TR", "N·m/rad",
       num(&JointParams::stiffness, &StiffnessParams::rigidity_stiffness)},
      {"lost-motion stiffness", "c_LM", "N·m/rad",
       num(&JointParams::stiffness, &StiffnessParams::lost_motion_stiffness)},
      {"backlash angle", "phi_B*", "rad", num(&JointParams::stiffness, &StiffnessParams::backlash_angle)},
      {"lost-motion angle", "phi_LM", "rad", num(&JointParams::stiffness, &StiffnessParams::lost_motion_angle)},
      {"offset torque", "tau_E0", "N·m",
       [](const JointParams& p, const GearRatio&) { return compact(p.stiffness.offset_torque()); }},
      {"stiffness smoothness factor", "s_E1", "1/rad", num(&JointParams::stiffness, &StiffnessParams::tanh_slope)},
      {"inverse smoothness factor", "s_E2", "1/(N·m)",
       num(&JointParams::stiffness, &StiffnessParams::inverse_smoothness)},
      {"position gain", "K_P", "1/s", num(&JointParams::position_gain)},
      {"speed gain", "K_V", "N·m·s/rad", num(&JointParams::speed_gain)},
      {"torque limit", "tau_lim", "N·m", num(&JointParams::torque_limit)},
      {"torque rate limit", "tau_rate_lim", "N·m/s", num(&JointParams::torque_rate_limit)},
      {"low-pass time constant", "t_lp", "s", num(&JointParams::lowpass_time_constant)},
  };
  out << set.title << " (" << set.name << ")\n";
  std::string header = pad("parameter", 30) + pad("symbol", 14) + pad("unit", 12);
  for (std::size_t j = 1; j <= set.joints.size(); ++j) header += pad("joint " + std::to_string(j), 12);
  while (header.back() == ' ') header.pop_back();
  out << header << '\n';
  for (const Row& row : rows) {
    std::string line = pad(row.name, 30) + pad(row.symbol, 14) + pad(row.unit, 12);
    for (std::size_t j = 0; j < set.joints.size(); ++j) line += pad(row.value(set.joints[j], set.gear_ratios[j]), 12);
    while (line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
}

std::string variant_slug(const std::string& label) {
  std::string slug;
  for (char c : label) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '-') {
      slug += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!slug.empty() && slug.back() != '_') {
      slug += '_';
    }
  }
  while (!slug.empty() && slug.back() == '_') slug.pop_back();
  return slug;
}

}  // namespace flexjoint

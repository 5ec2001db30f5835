// Copyright 2026 The eevc Authors
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

#include "eevc/scenario_file.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace eevc {
namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : value) {
    if (c == ' ' || c == '\t' || c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double parsed = 0.0;
  try {
    parsed = std::stod(value, &used);
  } catch (const std::exception&) {
    throw std::runtime_error("scenario: bad number for " + key + ": " + value);
  }
  if (used != value.size()) {
    throw std::runtime_error("scenario: bad number for " + key + ": " + value);
  }
  return parsed;
}

long to_long(const std::string& key, const std::string& value) {
  double parsed = to_double(key, value);
  long rounded = static_cast<long>(parsed);
  if (parsed != static_cast<double>(rounded)) {
    throw std::runtime_error("scenario: expected integer for " + key);
  }
  return rounded;
}

// "0-23", "3", "1,5,9", "0-3 20-23".
std::vector<int> parse_hours(const std::string& value) {
  std::vector<int> hours;
  for (const std::string& item : split_list(value)) {
    std::size_t dash = item.find('-');
    int lo, hi;
    if (dash == std::string::npos) {
      lo = hi = static_cast<int>(to_long("hours", item));
    } else {
      lo = static_cast<int>(to_long("hours", item.substr(0, dash)));
      hi = static_cast<int>(to_long("hours", item.substr(dash + 1)));
    }
    if (lo > hi || lo < 0 || hi > 23) {
      throw std::runtime_error("scenario: bad hours range: " + item);
    }
    for (int h = lo; h <= hi; ++h) hours.push_back(h);
  }
  return hours;
}

}  // namespace

std::vector<int> parse_hours_spec(const std::string& value) { return parse_hours(value); }

ScenarioFile parse_scenario_text(const std::string& text) {
  ScenarioFile out;
  std::istringstream stream(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    std::string body = trim(line);
    std::size_t comment = body.find_first_of("#;");
    if (comment != std::string::npos) body = trim(body.substr(0, comment));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') {
        throw std::runtime_error("scenario: bad section header at line " +
                                 std::to_string(line_no));
      }
      section = body.substr(1, body.size() - 2);
      if (section != "radio" && section != "power" && section != "zipf" &&
          section != "profile" && section != "topology" && section != "run") {
        throw std::runtime_error("scenario: unknown section [" + section + "]");
      }
      continue;
    }
    std::size_t eq = body.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("scenario: expected key = value at line " +
                               std::to_string(line_no));
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (section.empty()) {
      throw std::runtime_error("scenario: key outside any section at line " +
                               std::to_string(line_no));
    }

    RadioParams& radio = out.scenario.radio;
    PowerParams& power = out.scenario.power;
    ZipfParams& zipf = out.scenario.zipf;
    if (section == "radio") {
      if (key == "line_coding") radio.line_coding = to_double(key, value);
      else if (key == "mimo_layers") radio.mimo_layers = static_cast<int>(to_long(key, value));
      else if (key == "qam_bits") radio.qam_bits = static_cast<int>(to_long(key, value));
      else if (key == "antennas") radio.antennas = static_cast<int>(to_long(key, value));
      else if (key == "cpri_rate_gbps") radio.cpri_rate_gbps = to_double(key, value);
      else if (key == "prb_per_user") radio.prb_per_user = static_cast<int>(to_long(key, value));
      else if (key == "cell_prb_total") radio.cell_prb_total = static_cast<int>(to_long(key, value));
      else if (key == "max_users_per_cell") radio.max_users_per_cell = static_cast<int>(to_long(key, value));
      else if (key == "video_fraction") radio.video_fraction = to_double(key, value);
      else throw std::runtime_error("scenario: unknown key " + key + " in [radio]");
    } else if (section == "power") {
      if (key == "omega_onu_max") power.onu_max_w = to_double(key, value);
      else if (key == "c_onu") power.onu_capacity_gbps = to_double(key, value);
      else if (key == "omega_olt_max") power.olt_max_w = to_double(key, value);
      else if (key == "omega_olt_idle") power.olt_idle_w = to_double(key, value);
      else if (key == "c_olt") power.olt_capacity_gbps = to_double(key, value);
      else if (key == "omega_rrh") power.rrh_w = to_double(key, value);
      else if (key == "omega_server_max") power.server_max_w = to_double(key, value);
      else if (key == "omega_server_idle") power.server_idle_w = to_double(key, value);
      else if (key == "psi_server_gops") power.server_max_gops = to_double(key, value);
      else if (key == "psi_cnvm_gops") power.cnvm_gops = to_double(key, value);
      else if (key == "omega_cache_max") power.cache_max_w = to_double(key, value);
      else if (key == "c_cache_gb") power.cache_capacity_gb = to_double(key, value);
      else if (key == "epsilon_server") power.server_energy_j_per_gb = to_double(key, value);
      else if (key == "alpha") power.backhaul_ratio = to_double(key, value);
      else if (key == "b_wavelength") power.wavelength_gbps = to_double(key, value);
      else if (key == "w_per_fiber") power.wavelengths_per_fiber = static_cast<int>(to_long(key, value));
      else if (key == "omega_transponder") power.transponder_w = to_double(key, value);
      else if (key == "omega_router_port") power.router_port_w = to_double(key, value);
      else if (key == "omega_regenerator") power.regenerator_w = to_double(key, value);
      else if (key == "omega_edfa") power.edfa_w = to_double(key, value);
      else if (key == "edfa_span_km") power.edfa_span_km = to_double(key, value);
      else if (key == "host_budget_onu") power.host_budget_onu_w = to_double(key, value);
      else if (key == "host_budget_olt") power.host_budget_olt_w = to_double(key, value);
      else if (key == "host_budget_core") power.host_budget_core_w = to_double(key, value);
      else throw std::runtime_error("scenario: unknown key " + key + " in [power]");
    } else if (section == "zipf") {
      if (key == "exponent") zipf.exponent = to_double(key, value);
      else if (key == "catalog_size") zipf.catalog_size = static_cast<int>(to_long(key, value));
      else if (key == "segments") zipf.segments = static_cast<int>(to_long(key, value));
      else throw std::runtime_error("scenario: unknown key " + key + " in [zipf]");
    } else if (section == "profile") {
      if (key == "mean_users") {
        std::vector<std::string> items = split_list(value);
        if (items.size() != 24) {
          throw std::runtime_error("scenario: mean_users needs 24 values");
        }
        for (int h = 0; h < 24; ++h) {
          out.scenario.profile.mean_users[h] = to_double(key, items[h]);
        }
      } else {
        throw std::runtime_error("scenario: unknown key " + key + " in [profile]");
      }
    } else if (section == "topology") {
      if (key == "cores") out.topology.cores = static_cast<int>(to_long(key, value));
      else if (key == "olts_per_core") out.topology.olts_per_core = static_cast<int>(to_long(key, value));
      else if (key == "onus_per_olt") out.topology.onus_per_olt = static_cast<int>(to_long(key, value));
      else if (key == "core_link_km") out.topology.core_link_km = to_double(key, value);
      else if (key == "regenerators_per_link") out.topology.regenerators_per_link = static_cast<int>(to_long(key, value));
      else throw std::runtime_error("scenario: unknown key " + key + " in [topology]");
    } else if (section == "run") {
      if (key == "approach") out.run.approach = value;
      else if (key == "hours") out.run.hours = parse_hours(value);
      else if (key == "seed") out.run.seed = static_cast<std::uint64_t>(to_long(key, value));
      else if (key == "engine") out.run.engine = value;
      else if (key == "inter_traffic") out.run.inter_traffic = to_double(key, value);
      else if (key == "gap_tol") out.run.gap_tol = to_double(key, value);
      else if (key == "node_limit") out.run.node_limit = to_long(key, value);
      else if (key == "out_dir") out.run.out_dir = value;
      else throw std::runtime_error("scenario: unknown key " + key + " in [run]");
    }
  }
  return out;
}

ScenarioFile load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("scenario: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_text(buffer.str());
}

std::string default_scenario_text() {
  const ScenarioFile d;
  const RadioParams& r = d.scenario.radio;
  const PowerParams& p = d.scenario.power;
  char buf[8192];
  std::string profile;
  for (int h = 0; h < 24; ++h) {
    if (h) profile += ' ';
    std::snprintf(buf, sizeof(buf), "%g", d.scenario.profile.mean_users[h]);
    profile += buf;
  }
  std::snprintf(
      buf, sizeof(buf),
      "# eevc scenario (built-in defaults)\n"
      "\n"
      "[radio]\n"
      "line_coding = %.6g\n"
      "mimo_layers = %d\n"
      "qam_bits = %d\n"
      "antennas = %d\n"
      "cpri_rate_gbps = %.6g\n"
      "prb_per_user = %d\n"
      "cell_prb_total = %d\n"
      "max_users_per_cell = %d\n"
      "video_fraction = %.6g\n"
      "\n"
      "[power]\n"
      "omega_onu_max = %.6g\n"
      "c_onu = %.6g\n"
      "omega_olt_max = %.6g\n"
      "omega_olt_idle = %.6g\n"
      "c_olt = %.6g\n"
      "omega_rrh = %.6g\n"
      "omega_server_max = %.6g\n"
      "omega_server_idle = %.6g\n"
      "psi_server_gops = %.6g\n"
      "psi_cnvm_gops = %.6g\n"
      "omega_cache_max = %.6g\n"
      "c_cache_gb = %.6g\n"
      "epsilon_server = %.6g\n"
      "alpha = %.6g\n"
      "b_wavelength = %.6g\n"
      "w_per_fiber = %d\n"
      "omega_transponder = %.6g\n"
      "omega_router_port = %.6g\n"
      "omega_regenerator = %.6g\n"
      "omega_edfa = %.6g\n"
      "edfa_span_km = %.6g\n"
      "host_budget_onu = %.6g\n"
      "host_budget_olt = %.6g\n"
      "host_budget_core = %.6g\n"
      "\n"
      "[zipf]\n"
      "exponent = %.6g\n"
      "catalog_size = %d\n"
      "segments = %d\n"
      "\n"
      "[profile]\n"
      "mean_users = %s\n"
      "\n"
      "[topology]\n"
      "cores = %d\n"
      "olts_per_core = %d\n"
      "onus_per_olt = %d\n"
      "core_link_km = %.6g\n"
      "regenerators_per_link = %d\n"
      "\n"
      "[run]\n"
      "approach = %s\n"
      "hours = 0-23\n"
      "seed = %llu\n"
      "engine = %s\n"
      "inter_traffic = %.6g\n"
      "gap_tol = %.6g\n"
      "node_limit = %ld\n"
      "out_dir = %s\n",
      r.line_coding, r.mimo_layers, r.qam_bits, r.antennas, r.cpri_rate_gbps,
      r.prb_per_user, r.cell_prb_total, r.max_users_per_cell, r.video_fraction,
      p.onu_max_w, p.onu_capacity_gbps, p.olt_max_w, p.olt_idle_w,
      p.olt_capacity_gbps, p.rrh_w, p.server_max_w, p.server_idle_w,
      p.server_max_gops, p.cnvm_gops, p.cache_max_w, p.cache_capacity_gb,
      p.server_energy_j_per_gb, p.backhaul_ratio, p.wavelength_gbps,
      p.wavelengths_per_fiber, p.transponder_w, p.router_port_w, p.regenerator_w,
      p.edfa_w, p.edfa_span_km, p.host_budget_onu_w, p.host_budget_olt_w,
      p.host_budget_core_w, d.scenario.zipf.exponent, d.scenario.zipf.catalog_size,
      d.scenario.zipf.segments, profile.c_str(), d.topology.cores,
      d.topology.olts_per_core, d.topology.onus_per_olt, d.topology.core_link_km,
      d.topology.regenerators_per_link, d.run.approach.c_str(),
      static_cast<unsigned long long>(d.run.seed), d.run.engine.c_str(),
      d.run.inter_traffic, d.run.gap_tol, d.run.node_limit, d.run.out_dir.c_str());
  return buf;
}

}  // namespace eevc

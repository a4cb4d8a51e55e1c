#pragma once

// INI-style scenario files.
//
//   a_override = 1e7          ; optional, top level
//   [fluid]      rho, mu, p_m                     (required)
//   [gas]        rho_gas, W, T, R_univ            (optional, air defaults)
//   [geometry]   R0                               (required)
//   [integrator] rel_tol, abs_tol_R, abs_tol_Rdot, max_step, collapse_epsilon,
//                max_time, singularity_floor, escape_factor   (optional)
//   [pump]       rpm, allowable_angle_deg         (optional)
//
// Comments go on their own line, starting with ';' or '#'. Unknown sections
// and keys are errors.

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "quantities.hpp"

namespace bubble {

// Malformed or incomplete config text.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The config file could not be read at all.
class ConfigIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline double parse_number(const std::string& key, std::string text) {
  const auto first = text.find_first_not_of(" \t");
  const auto last = text.find_last_not_of(" \t");
  if (first == std::string::npos) throw ConfigError(key + ": empty value");
  text = text.substr(first, last - first + 1);
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec == std::errc::result_out_of_range) throw ConfigError(key + ": '" + text + "' is out of range");
  if (ec != std::errc() || ptr != end) throw ConfigError(key + ": '" + text + "' is not a number");
  return value;
}

class SectionReader {
 public:
  SectionReader(std::string name, const boost::property_tree::ptree* tree) : name_(std::move(name)) {
    if (tree == nullptr) return;
    for (const auto& [key, child] : *tree) {
      if (!child.empty()) throw ConfigError("[" + name_ + "] " + key + ": nested sections are not allowed");
      values_[key] = child.data();
    }
  }

  void read(const char* key, double& target, bool required = false) {
    const auto it = values_.find(key);
    if (it == values_.end()) {
      if (required) throw ConfigError("[" + name_ + "] missing required key '" + key + "'");
      return;
    }
    target = parse_number("[" + name_ + "] " + key, it->second);
    values_.erase(it);
  }

  void reject_leftovers() const {
    if (!values_.empty()) {
      throw ConfigError("[" + name_ + "] unknown key '" + values_.begin()->first + "'");
    }
  }

 private:
  std::string name_;
  std::map<std::string, std::string> values_;
};

}  // namespace detail

inline ScenarioConfig parse_config(std::istream& in) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(e.message() + " (line " + std::to_string(e.line()) + ")");
  }

  ScenarioConfig config;
  const boost::property_tree::ptree* sections[5] = {};
  constexpr const char* section_names[5] = {"fluid", "gas", "geometry", "integrator", "pump"};
  for (const auto& [key, child] : tree) {
    if (child.empty()) {
      if (key != "a_override") throw ConfigError("unknown top-level key '" + key + "'");
      config.a_override = detail::parse_number(key, child.data());
      continue;
    }
    bool known = false;
    for (int i = 0; i < 5; ++i) {
      if (key == section_names[i]) {
        sections[i] = &child;
        known = true;
      }
    }
    if (!known) throw ConfigError("unknown section [" + key + "]");
  }
  if (sections[0] == nullptr) throw ConfigError("missing section [fluid]");
  if (sections[2] == nullptr) throw ConfigError("missing section [geometry]");

  detail::SectionReader fluid("fluid", sections[0]);
  fluid.read("rho", config.fluid.rho, true);
  fluid.read("mu", config.fluid.mu, true);
  fluid.read("p_m", config.fluid.p_m, true);
  fluid.reject_leftovers();

  detail::SectionReader gas("gas", sections[1]);
  gas.read("rho_gas", config.gas.rho_gas);
  gas.read("W", config.gas.W);
  gas.read("T", config.gas.T);
  gas.read("R_univ", config.gas.R_univ);
  gas.reject_leftovers();

  detail::SectionReader geometry("geometry", sections[2]);
  geometry.read("R0", config.geometry.R0, true);
  geometry.reject_leftovers();

  detail::SectionReader integ("integrator", sections[3]);
  auto& s = config.integrator;
  integ.read("rel_tol", s.rel_tol);
  integ.read("abs_tol_R", s.abs_tol_R);
  integ.read("abs_tol_Rdot", s.abs_tol_Rdot);
  integ.read("max_step", s.max_step);
  integ.read("collapse_epsilon", s.collapse_epsilon);
  integ.read("max_time", s.max_time);
  integ.read("singularity_floor", s.singularity_floor);
  integ.read("escape_factor", s.escape_factor);
  integ.reject_leftovers();

  detail::SectionReader pump("pump", sections[4]);
  pump.read("rpm", config.pump.rpm);
  pump.read("allowable_angle_deg", config.pump.allowable_angle_deg);
  pump.reject_leftovers();
  return config;
}

inline ScenarioConfig parse_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

inline ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigIoError("cannot open config file '" + path + "'");
  return parse_config(in);
}

}  // namespace bubble

#pragma once

// Run configuration: defaults, validation, and a flat key=value file format.
// Command-line flags override file values; the file format exists so runs
// are reproducible and diffable.

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "ctqw/nmr.hpp"

namespace ctqw::cli {

struct RunConfig {
  double gamma = 1.0;  // jumping rate for theory sweeps (dimensionless time axis)
  int n_nodes = 4;
  double j_hz = 215.0;
  double t2_proton = 0.4;
  double t2_carbon = 0.3;
  int grid_points = 200;
  bool noise = true;
  std::filesystem::path output_dir = ".";

  void validate() const {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    if (n_nodes < 3) throw std::invalid_argument("n_nodes must be at least 3");
    if (!(j_hz > 0.0)) throw std::invalid_argument("j_hz must be positive");
    if (!(t2_proton > 0.0) || !(t2_carbon > 0.0))
      throw std::invalid_argument("T2 values must be positive");
    if (grid_points < 2) throw std::invalid_argument("grid_points must be at least 2");
  }

  nmr::SpinSystem spin_system() const {
    nmr::SpinSystem s;
    s.j_coupling_hz = j_hz;
    s.t2_spin1_s = t2_proton;
    s.t2_spin2_s = t2_carbon;
    return s;
  }
};

inline bool parse_bool_flag(const std::string& value) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  throw std::invalid_argument("expected on|off, got '" + value + "'");
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace detail

// flat key=value file; '#' starts a comment, blank lines ignored
inline RunConfig load_config_file(const std::filesystem::path& path, RunConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file: " + path.string());
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key=value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    auto bad_value = [&]() {
      return std::invalid_argument("config line " + std::to_string(line_no) + ": bad value for '" +
                                   key + "'");
    };
    auto as_double = [&]() {
      try {
        std::size_t taken = 0;
        const double d = std::stod(value, &taken);
        if (taken != value.size()) throw bad_value();
        return d;
      } catch (const std::invalid_argument&) {
        throw bad_value();
      } catch (const std::out_of_range&) {
        throw bad_value();
      }
    };
    auto as_int = [&]() {
      try {
        std::size_t taken = 0;
        const int i = std::stoi(value, &taken);
        if (taken != value.size()) throw bad_value();
        return i;
      } catch (const std::invalid_argument&) {
        throw bad_value();
      } catch (const std::out_of_range&) {
        throw bad_value();
      }
    };
    if (key == "gamma")
      base.gamma = as_double();
    else if (key == "n_nodes")
      base.n_nodes = as_int();
    else if (key == "j_hz")
      base.j_hz = as_double();
    else if (key == "t2_proton")
      base.t2_proton = as_double();
    else if (key == "t2_carbon")
      base.t2_carbon = as_double();
    else if (key == "grid_points")
      base.grid_points = as_int();
    else if (key == "noise")
      base.noise = parse_bool_flag(value);
    else if (key == "output_dir")
      base.output_dir = value;
    else
      throw std::invalid_argument("unknown config key '" + key + "'");
  }
  return base;
}

}  // namespace ctqw::cli

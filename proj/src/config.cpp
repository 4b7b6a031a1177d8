#include <fstream>
#include <sstream>

#include "spatsel/harness.hpp"

namespace spatsel {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      std::string t = trim(cur);
      if (!t.empty()) out.push_back(t);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

double parse_range(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "INF") return kIndependentRange;
  return std::stod(s);
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);

  ExperimentConfig cfg;
  cfg.replications = 0;  // force explicit setting
  std::string tuning_mode;
  TuningGrid grid;
  bool have_grid_values = false;

  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": malformed section header");
      section = t.substr(1, t.size() - 2);
      if (section != "experiment" && section != "tuning")
        throw ConfigError(path + ": unknown section [" + section + "]");
      continue;
    }
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    try {
      if (section == "experiment") {
        if (key == "replications")
          cfg.replications = std::stoi(value);
        else if (key == "n_list") {
          for (auto& v : split_list(value)) cfg.n_list.push_back(std::stoi(v));
        } else if (key == "a_list") {
          for (auto& v : split_list(value))
            cfg.a_list.push_back(parse_range(v));
        } else if (key == "kappa2_list") {
          for (auto& v : split_list(value))
            cfg.kappa2_list.push_back(std::stod(v));
        } else if (key == "methods") {
          for (auto& v : split_list(value))
            cfg.methods.push_back(method_from_name(v));
        } else if (key == "master_seed")
          cfg.master_seed = std::stoull(value);
        else if (key == "output_path")
          cfg.output_path = value;
        else
          throw ConfigError(path + ": unknown key '" + key +
                            "' in [experiment]");
      } else if (section == "tuning") {
        if (key == "mode")
          tuning_mode = value;
        else if (key == "gamma")
          cfg.gamma = std::stod(value);
        else if (key == "beta")
          cfg.beta = std::stod(value);
        else if (key == "gamma_values") {
          for (auto& v : split_list(value))
            grid.gamma_values.push_back(std::stod(v));
          have_grid_values = true;
        } else if (key == "beta_values") {
          for (auto& v : split_list(value))
            grid.beta_values.push_back(std::stod(v));
          have_grid_values = true;
        } else if (key == "folds")
          grid.folds = std::stoi(value);
        else
          throw ConfigError(path + ": unknown key '" + key + "' in [tuning]");
      } else {
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": key outside of a section");
      }
    } catch (const std::invalid_argument&) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": cannot parse value '" + value + "'");
    }
  }

  if (tuning_mode == "grid") {
    if (!have_grid_values) grid = TuningGrid::defaults();
    cfg.grid = grid;
  } else if (!tuning_mode.empty() && tuning_mode != "fixed") {
    throw ConfigError(path + ": tuning mode must be 'fixed' or 'grid'");
  }
  if (cfg.replications == 0)
    throw ConfigError(path + ": replications must be set");
  cfg.validate();
  return cfg;
}

}  // namespace spatsel

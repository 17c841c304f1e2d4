#include "sqgfront/config.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace sqgfront {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(v);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct Parser {
  int line = 0;

  [[noreturn]] void fail(const std::string& key, const std::string& why) const {
    std::ostringstream msg;
    msg << "line " << line << ": " << key << ": " << why;
    throw ConfigError(msg.str(), line);
  }

  double real(const std::string& key, const std::string& v) const {
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) fail(key, "expected a number, got '" + v + "'");
    return out;
  }
  long integer(const std::string& key, const std::string& v) const {
    long out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) fail(key, "expected an integer, got '" + v + "'");
    return out;
  }
  bool boolean(const std::string& key, const std::string& v) const {
    if (v == "true" || v == "on" || v == "1") return true;
    if (v == "false" || v == "off" || v == "0") return false;
    fail(key, "expected true or false, got '" + v + "'");
  }
  std::vector<double> reals(const std::string& key, const std::string& v) const {
    std::vector<double> out;
    for (const auto& item : split_list(v)) out.push_back(real(key, item));
    if (out.empty()) fail(key, "empty list");
    return out;
  }
  std::vector<int> ints(const std::string& key, const std::string& v) const {
    std::vector<int> out;
    for (const auto& item : split_list(v)) out.push_back(static_cast<int>(integer(key, item)));
    if (out.empty()) fail(key, "empty list");
    return out;
  }
};

using Setter = std::function<void(RunConfig&, const Parser&, const std::string& key, const std::string& value)>;

const std::map<std::string, std::map<std::string, Setter>>& schema() {
  static const std::map<std::string, std::map<std::string, Setter>> table = {
      {"solver",
       {
           {"N", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.solver.N = static_cast<int>(p.integer(k, v)); }},
           {"s", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.solver.s = p.real(k, v); }},
           {"dt", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.solver.dt = p.real(k, v); }},
           {"t_end", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.solver.t_end = p.real(k, v); }},
           {"eps", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.solver.eps = p.real(k, v); }},
           {"integrator",
            [](RunConfig& c, const Parser& p, auto& k, auto& v) {
              if (v == "ifrk4") c.solver.integrator = Integrator::ifrk4;
              else if (v == "rk4") c.solver.integrator = Integrator::rk4;
              else p.fail(k, "expected ifrk4 or rk4");
            }},
           {"alpha", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.solver.alpha = p.real(k, v); }},
           {"a_alpha", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.solver.a_alpha = p.real(k, v); }},
           {"b_alpha", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.solver.b_alpha = p.real(k, v); }},
           {"paraproduct_prefactor",
            [](RunConfig& c, const Parser& p, auto& k, auto& v) {
              if (v == "unit") c.solver.prefactor = ParaproductPrefactor::unit;
              else if (v == "inverse_two_pi") c.solver.prefactor = ParaproductPrefactor::inverse_two_pi;
              else p.fail(k, "expected unit or inverse_two_pi");
            }},
           {"delta_pos", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.solver.positivity_threshold = p.real(k, v); }},
           {"energy_jump", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.solver.energy_jump = p.real(k, v); }},
           {"max_halvings", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.solver.max_halvings = static_cast<int>(p.integer(k, v)); }},
           {"nonlinear", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.solver.nonlinear = p.boolean(k, v); }},
       }},
      {"monitor",
       {
           {"cadence", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.solver.monitor_cadence = static_cast<int>(p.integer(k, v)); }},
       }},
      {"initial",
       {
           {"generator", [](RunConfig& c, const Parser&, auto&, auto& v) { c.initial.generator = v; }},
           {"k", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.initial.k = static_cast<int>(p.integer(k, v)); }},
           {"amp", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.initial.amp = p.real(k, v); }},
           {"s", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.initial.s = p.real(k, v); }},
           {"seed", [](RunConfig& c, const Parser& p, auto& k, auto& v) {
              const long seed = p.integer(k, v);
              if (seed < 0) p.fail(k, "seed must be non-negative");
              c.initial.seed = static_cast<std::uint64_t>(seed);
            }},
           {"rho", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.initial.rho = p.real(k, v); }},
           {"path", [](RunConfig& c, const Parser&, auto&, auto& v) { c.initial.path = v; }},
           {"modes",
            [](RunConfig& c, const Parser& p, auto& k, auto& v) {
              c.initial.modes.clear();
              for (const auto& item : split_list(v)) {
                const auto colon = item.find(':');
                if (colon == std::string::npos) p.fail(k, "expected k:amp entries");
                c.initial.modes.emplace_back(static_cast<int>(p.integer(k, trim(item.substr(0, colon)))),
                                             p.real(k, trim(item.substr(colon + 1))));
              }
            }},
       }},
      {"output",
       {
           {"path", [](RunConfig& c, const Parser&, auto&, auto& v) { c.output = v; }},
       }},
      {"experiment",
       {
           {"n_list", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.experiment.n_list = p.ints(k, v); }},
           {"dt_list", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.experiment.dt_list = p.reals(k, v); }},
           {"r", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.experiment.r = p.real(k, v); }},
           {"perturbations", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.experiment.perturbations = p.reals(k, v); }},
           {"perturbation_mode", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.experiment.perturbation_mode = static_cast<int>(p.integer(k, v)); }},
           {"delta", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.experiment.delta = p.real(k, v); }},
           {"n_ref", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.experiment.n_ref = static_cast<int>(p.integer(k, v)); }},
           {"bona_smith_n", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.experiment.bona_smith_n = p.ints(k, v); }},
           {"k_list", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.experiment.k_list = p.ints(k, v); }},
           {"eps_list", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.experiment.eps_list = p.reals(k, v); }},
           {"identity_s", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.experiment.identity_s = p.real(k, v); }},
           {"identity_amp", [](RunConfig& c, const Parser& p, auto& k, auto& v) { c.experiment.identity_amp = p.real(k, v); }},
       }},
  };
  return table;
}

}  // namespace

RunConfig parse_config(std::istream& in, const std::string& base_dir) {
  RunConfig cfg;
  Parser p;
  std::string section;
  std::set<std::string> seen;
  std::string raw;
  while (std::getline(in, raw)) {
    ++p.line;
    const auto comment = raw.find_first_of("#;");
    const std::string text = trim(comment == std::string::npos ? raw : raw.substr(0, comment));
    if (text.empty()) continue;

    if (text.front() == '[') {
      if (text.back() != ']') p.fail(text, "unterminated section header");
      section = trim(text.substr(1, text.size() - 2));
      if (!schema().contains(section)) p.fail("[" + section + "]", "unknown section");
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) p.fail(text, "expected key = value");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (section.empty()) p.fail(key, "key outside of any section");
    const auto& keys = schema().at(section);
    const auto it = keys.find(key);
    if (it == keys.end()) p.fail(section + "." + key, "unknown key");
    if (!seen.insert(section + "." + key).second) p.fail(section + "." + key, "duplicate key");
    if (value.empty()) p.fail(section + "." + key, "missing value");
    it->second(cfg, p, section + "." + key, value);
  }

  try {
    cfg.solver.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what(), 0);
  }
  if (cfg.initial.generator == "file" && !cfg.initial.path.empty() &&
      std::filesystem::path(cfg.initial.path).is_relative())
    cfg.initial.path = (std::filesystem::path(base_dir) / cfg.initial.path).string();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path, 0);
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_config(in, dir.empty() ? std::string(".") : dir.string());
}

}  // namespace sqgfront

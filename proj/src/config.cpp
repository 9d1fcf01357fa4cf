#include "bosegas/config.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "bosegas/error.hpp"

namespace bosegas {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const std::set<std::string> kKnown = {
    "N", "L", "kappa", "beta", "ell", "out", "seed",
    "potential.kind", "potential.v0", "potential.R", "potential.file",
    "exponents.delta_B", "exponents.delta_L", "exponents.delta_H",
    "tol.sum_tail", "tol.root_residual", "tol.quadrature"};

class Reader {
 public:
  explicit Reader(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  double number(const std::string& key) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError("missing required key '" + key + "'");
    const std::string& s = it->second;
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
      throw ConfigError("key '" + key + "': '" + s + "' is not a finite number");
    return v;
  }

  double number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

  double positive(const std::string& key) const {
    const double v = number(key);
    if (!(v > 0.0)) throw ConfigError("key '" + key + "' must be positive");
    return v;
  }

  double positive(const std::string& key, double fallback) const { return has(key) ? positive(key) : fallback; }

  std::string text(const std::string& key) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError("missing required key '" + key + "'");
    return it->second;
  }

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace

std::map<std::string, std::string> read_key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (!section.empty()) key = section + "." + key;
    if (!kv.emplace(key, value).second) throw ConfigError("duplicate key '" + key + "'");
  }
  return kv;
}

RunConfig parse_config(const std::string& text, const std::string& base_dir) {
  auto kv = read_key_values(text);
  for (const auto& [k, v] : kv)
    if (!kKnown.count(k)) throw ConfigError("unknown key '" + k + "'");
  const Reader r(kv);

  RunConfig c;
  GasParameters& p = c.params;
  p.N = r.number("N");
  if (!(p.N >= 1.0)) throw ConfigError("key 'N' must be >= 1");
  p.L = r.positive("L");
  if (r.has("kappa") == r.has("beta")) throw ConfigError("exactly one of keys 'kappa' and 'beta' is required");
  if (r.has("kappa")) p.kappa = r.positive("kappa");
  else p.beta = r.positive("beta");
  p.ell = r.positive("ell", p.L / 4.0);
  if (!(p.ell < p.L / 2.0)) throw ConfigError("key 'ell' must be below L/2");

  const std::string kind = r.text("potential.kind");
  if (kind == "square_well") {
    const double v0 = r.number("potential.v0");
    if (v0 < 0.0) throw ConfigError("key 'potential.v0' must be nonnegative");
    p.potential = PotentialSpec::square_well(v0, r.positive("potential.R"));
  } else if (kind == "tabulated") {
    std::filesystem::path f = r.text("potential.file");
    if (f.is_relative()) f = std::filesystem::path(base_dir) / f;
    try {
      p.potential = PotentialSpec::from_file(f.string());
    } catch (const Error& e) {
      throw ConfigError(std::string("key 'potential.file': ") + e.what());
    }
  } else {
    throw ConfigError("key 'potential.kind': expected square_well or tabulated, got '" + kind + "'");
  }

  p.delta_B = r.positive("exponents.delta_B", p.delta_B);
  p.delta_L = r.positive("exponents.delta_L", p.delta_L);
  p.delta_H = r.positive("exponents.delta_H", p.delta_H);
  p.tol.sum_tail = r.positive("tol.sum_tail", p.tol.sum_tail);
  p.tol.root_residual = r.positive("tol.root_residual", p.tol.root_residual);
  p.tol.quadrature = r.positive("tol.quadrature", p.tol.quadrature);
  if (r.has("out")) c.out = r.text("out");
  if (r.has("seed")) {
    const std::string s = r.text("seed");
    const auto [q, ec] = std::from_chars(s.data(), s.data() + s.size(), c.seed);
    if (ec != std::errc() || q != s.data() + s.size()) throw ConfigError("key 'seed' must be an unsigned integer");
  }

  try {
    p.validate();
  } catch (const ContractError& e) {
    throw ConfigError(e.what());
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_config(ss.str(), dir.empty() ? "." : dir.string());
}

}  // namespace bosegas

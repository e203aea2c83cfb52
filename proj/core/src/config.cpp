#include "logvoa/config.hpp"

#include <fstream>
#include <sstream>

#include "logvoa/errors.hpp"

namespace logvoa {

namespace {

std::string strip(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_int(const std::string& key, const std::string& v, int line) {
  try {
    size_t pos = 0;
    int out = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return out;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "': expected an integer, got '" + v + "'", line,
                      key);
  }
}

bool parse_bool(const std::string& key, const std::string& v, int line) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("config: key '" + key + "': expected true/false, got '" + v + "'", line, key);
}

Rational parse_rational(const std::string& key, const std::string& v, int line) {
  try {
    return Rational::parse(v);
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "': expected a rational, got '" + v + "'", line,
                      key);
  }
}

template <typename T, typename Fn>
std::vector<T> parse_list(const std::string& value, Fn&& item) {
  std::vector<T> out;
  std::istringstream is(value);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(item(strip(tok)));
  return out;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value, int line) {
  const std::string v = strip(value);
  if (key == "a")
    a = parse_rational(key, v, line);
  else if (key == "lambda")
    lambda = parse_rational(key, v, line);
  else if (key == "nu")
    nu = parse_rational(key, v, line);
  else if (key == "m1")
    m1 = parse_int(key, v, line);
  else if (key == "m2")
    m2 = parse_int(key, v, line);
  else if (key == "m3")
    m3 = parse_int(key, v, line);
  else if (key == "span")
    span = parse_int(key, v, line);
  else if (key == "log_cutoff")
    log_cutoff = parse_int(key, v, line);
  else if (key == "weight_bound")
    weight_bound = parse_int(key, v, line);
  else if (key == "sample_level")
    sample_level = parse_int(key, v, line);
  else if (key == "bracket_range")
    bracket_range = parse_int(key, v, line);
  else if (key == "m")
    m = parse_int(key, v, line);
  else if (key == "n")
    n = parse_int(key, v, line);
  else if (key == "corrupt_t")
    corrupt_t = parse_bool(key, v, line);
  else if (key == "cache_path")
    cache_path = v;
  else if (key == "out_path")
    out_path = v;
  else if (key == "grid_eigenvalues")
    grid_eigenvalues =
        parse_list<Rational>(v, [&](const std::string& s) { return parse_rational(key, s, line); });
  else if (key == "grid_sizes")
    grid_sizes = parse_list<int>(v, [&](const std::string& s) { return parse_int(key, s, line); });
  else
    throw ConfigError("config: unknown key '" + key + "'", line, key);
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  RunConfig cfg;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = strip(raw);
    if (s.empty() || s[0] == '#') continue;
    auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(line) + " is not 'key = value'", line);
    cfg.set(strip(s.substr(0, eq)), s.substr(eq + 1), line);
  }
  return cfg;
}

void RunConfig::validate() const {
  if (span < 1) throw ConfigError("config: span must be >= 1", 0, "span");
  if (m1 < 1 || m2 < 1 || m3 < 1)
    throw ConfigError("config: jordan sizes must be >= 1", 0, "m1");
  if (weight_bound < 0) throw ConfigError("config: weight_bound must be >= 0", 0, "weight_bound");
  if (log_cutoff < 1) throw ConfigError("config: log_cutoff must be >= 1", 0, "log_cutoff");
  for (int s : grid_sizes)
    if (s < 1) throw ConfigError("config: grid sizes must be >= 1", 0, "grid_sizes");
}

std::string RunConfig::echo() const {
  std::ostringstream os;
  os << "a=" << a.str() << " lambda=" << lambda.str() << " nu=" << nu.str() << " m1=" << m1
     << " m2=" << m2 << " m3=" << m3 << " span=" << span << " log_cutoff=" << log_cutoff
     << " weight_bound=" << weight_bound << " sample_level=" << sample_level
     << " bracket_range=" << bracket_range;
  if (m >= 0) os << " m=" << m;
  if (n >= 0) os << " n=" << n;
  if (corrupt_t) os << " corrupt_t=true";
  if (!cache_path.empty()) os << " cache_path=" << cache_path;
  if (!out_path.empty()) os << " out_path=" << out_path;
  os << " grid_eigenvalues=";
  for (size_t i = 0; i < grid_eigenvalues.size(); ++i)
    os << (i ? "," : "") << grid_eigenvalues[i].str();
  os << " grid_sizes=";
  for (size_t i = 0; i < grid_sizes.size(); ++i) os << (i ? "," : "") << grid_sizes[i];
  return os.str();
}

}  // namespace logvoa

#include "cli/config.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lcft::cli {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string flag_to_key(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

BigInt parse_digits(std::string_view s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw ConfigError("not an integer: '" + std::string(s) + "'");
  }
  const auto first = s.find_first_not_of('0');
  return first == std::string_view::npos ? BigInt(0) : BigInt(std::string(s.substr(first)));
}

Rational parse_rational(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) throw ConfigError("empty rational");
  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  Rational r;
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const BigInt den = parse_digits(std::string_view(s).substr(slash + 1));
    if (den == 0) throw ConfigError("zero denominator in '" + std::string(text) + "'");
    r = Rational(parse_digits(std::string_view(s).substr(0, slash)), den);
  } else {
    long exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string::npos) {
      exponent = static_cast<long>(parse_real(std::string_view(s).substr(e + 1)));
      s.erase(e);
    }
    const auto dot = s.find('.');
    std::string digits = s;
    if (dot != std::string::npos) {
      digits.erase(dot, 1);
      exponent -= static_cast<long>(s.size() - dot - 1);
    }
    r = Rational(parse_digits(digits));
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::labs(exponent)));
    r = exponent >= 0 ? r * Rational(scale) : r / Rational(scale);
  }
  return negative ? Rational(-r) : r;
}

void check_value(const KeySpec& k, const std::string& v) {
  switch (k.kind) {
    case ValueKind::real:
      parse_real(v);
      break;
    case ValueKind::optional_real:
      if (v != "auto") parse_real(v);
      break;
    case ValueKind::integer: {
      const double d = parse_real(v);
      if (d != std::floor(d) || std::abs(d) > 9.0e15) throw ConfigError("not an integer: '" + v + "'");
      break;
    }
    case ValueKind::real_list:
      for (const auto& s : split_list(v)) parse_real(s);
      break;
    case ValueKind::complex:
      parse_complex(v);
      break;
    case ValueKind::complex_list:
      for (const auto& s : split_list(v)) parse_complex(s);
      break;
    case ValueKind::rational:
      parse_rational(v);
      break;
    case ValueKind::text:
      break;
  }
}

nlohmann::json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace

double parse_real(std::string_view text) {
  const std::string s = trim(text);
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s[0] == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError("not a finite number: '" + std::string(text) + "'");
  }
  return v;
}

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '\t') s.push_back(c);
  }
  if (s.empty()) throw ConfigError("empty complex number");
  if (s.back() != 'i') return {parse_real(s), 0.0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re = split == std::string::npos ? "" : s.substr(0, split);
  std::string im = split == std::string::npos ? s : s.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  try {
    return {re.empty() ? 0.0 : parse_real(re), parse_real(im)};
  } catch (const ConfigError&) {
    throw ConfigError("not a complex number: '" + std::string(text) + "'");
  }
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  const std::string s = trim(text);
  if (s.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = s.find(',', start);
    out.push_back(trim(std::string_view(s).substr(start, comma - start)));
    if (out.back().empty()) throw ConfigError("empty entry in list '" + s + "'");
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string normalize_rational(std::string_view text) { return parse_rational(text).str(); }

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

const std::vector<CommandSpec>& command_table() {
  using K = ValueKind;
  static const std::vector<CommandSpec> table{
      {"upsilon",
       "Upsilon_gamma(z)",
       {{"gamma", K::real, "1", "coupling gamma in (0, 2)"},
        {"z", K::complex, "0.5", "argument, e.g. 0.3+1.2i"},
        {"quad_tol", K::real, "1e-13", "strip quadrature tolerance"}}},
      {"dozz",
       "DOZZ structure constant",
       {{"gamma", K::real, "1", "coupling"},
        {"mu", K::real, "1", "cosmological constant"},
        {"alphas", K::complex_list, "1.8,1.8,1.8", "three weights"}}},
      {"reflection",
       "reflection coefficient R(alpha)",
       {{"gamma", K::real, "1", "coupling"},
        {"mu", K::real, "1", "cosmological constant"},
        {"alpha", K::complex, "2.45", "weight"}}},
      {"gram",
       "exact Gram matrix of a Verma module",
       {{"level", K::integer, "2", "level, at most 12"},
        {"delta", K::rational, "1/2", "conformal weight (p/q or decimal)"},
        {"c", K::rational, "25", "central charge (p/q or decimal)"}}},
      {"block",
       "four-point sphere block",
       {{"gamma", K::real, "1", "coupling"},
        {"mu", K::real, "1", "cosmological constant"},
        {"alphas", K::complex_list, "1.8,1.8,1.8,1.8", "four external weights"},
        {"p", K::real, "1", "internal momentum, alpha = Q + i p"},
        {"z", K::complex, "0.2", "cross ratio, |z| < 1"},
        {"level", K::integer, "6", "truncation level, at most 10"}}},
      {"sample-gmc",
       "total chaos mass samples",
       {{"gamma", K::real, "1", "coupling"},
        {"geometry", K::text, "circle", "circle | torus | sphere"},
        {"cutoff", K::integer, "64", "modes (circle), grid size (torus) or l_max (sphere)"},
        {"samples", K::integer, "1000", "number of field samples"},
        {"seed", K::integer, "0", "random seed"}}},
      {"moments",
       "E[M^q] of the total chaos mass",
       {{"gamma", K::real, "1", "coupling"},
        {"geometry", K::text, "circle", "circle | torus | sphere"},
        {"cutoff", K::integer, "64", "modes (circle), grid size (torus) or l_max (sphere)"},
        {"q", K::real, "1", "moment order"},
        {"samples", K::integer, "10000", "number of field samples"},
        {"seed", K::integer, "0", "random seed"}}},
      {"three-point",
       "Monte Carlo sphere three-point function at (0, z, infinity)",
       {{"gamma", K::real, "1", "coupling"},
        {"mu", K::real, "1", "cosmological constant"},
        {"alphas", K::real_list, "1.8,1.8,1.8", "weights at 0, z, infinity"},
        {"z", K::complex, "1", "position of the second insertion"},
        {"reference", K::real_list, "", "optional calibration weights at (0, 1, infinity)"},
        {"drift", K::text, "truncated", "truncated | averaged"},
        {"cutoff", K::integer, "32", "sphere l_max"},
        {"samples", K::integer, "10000", "number of field samples"},
        {"seed", K::integer, "0", "random seed"}}},
      {"two-point-limit",
       "epsilon C(alpha, epsilon, alpha) against 4 R(alpha)",
       {{"gamma", K::real, "1", "coupling"},
        {"mu", K::real, "1", "cosmological constant"},
        {"alpha", K::real, "2.45", "weight, below Q"},
        {"epsilons", K::real_list, "0.105,0.11,0.12,0.13,0.14", "values above 2(Q - alpha)"},
        {"cutoff", K::integer, "32", "sphere l_max"},
        {"samples", K::integer, "4000", "number of field samples"},
        {"seed", K::integer, "0", "random seed"}}},
      {"bootstrap4",
       "spectral integrand and integral of the four-point function",
       {{"gamma", K::real, "1", "coupling"},
        {"mu", K::real, "1", "cosmological constant"},
        {"alphas", K::real_list, "1.8,1.8,1.8,1.8", "four external weights"},
        {"z", K::complex, "0.2", "cross ratio, |z| < 1"},
        {"p_max", K::real, "8", "upper end of the p grid"},
        {"nodes", K::integer, "51", "number of p nodes"},
        {"level", K::integer, "6", "block truncation level"}}},
      {"toy-scatter",
       "toy Liouville scattering problem",
       {{"gamma", K::real, "1", "coupling"},
        {"p", K::real, "1", "momentum"},
        {"tol", K::real, "1e-10", "integration tolerance"},
        {"c_min", K::optional_real, "auto", "left end of the grid"},
        {"c_max", K::optional_real, "auto", "right end of the grid"},
        {"step_factor", K::real, "1", "step multiplier"}}},
  };
  return table;
}

const CommandSpec& find_command(std::string_view name) {
  for (const auto& c : command_table()) {
    if (c.name == name) return c;
  }
  throw ConfigError("unknown command '" + std::string(name) + "'");
}

std::map<std::string, std::string> parse_config_text(std::string_view text, std::string_view origin) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    const std::string where = std::string(origin) + ":" + std::to_string(number);
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    const std::string key = flag_to_key(trim(std::string_view(t).substr(0, eq)));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (!out.emplace(key, trim(std::string_view(t).substr(eq + 1))).second) {
      throw ConfigError(where + ": repeated key '" + key + "'");
    }
  }
  return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

RunConfig resolve_config(const CommandSpec& spec, const std::map<std::string, std::string>& file_values,
                         const std::map<std::string, std::string>& flag_values) {
  RunConfig cfg;
  cfg.command = spec.name;
  for (const auto& k : spec.keys) cfg.values[k.key] = k.default_value;

  std::map<std::string, std::string> merged;
  for (const auto& [k, v] : file_values) merged[flag_to_key(k)] = v;
  for (const auto& [k, v] : flag_values) merged[flag_to_key(k)] = v;

  for (const auto& [key, value] : merged) {
    if (key == "command") {
      if (value != spec.name) throw ConfigError("config names command '" + value + "', running '" + spec.name + "'");
      continue;
    }
    if (key == "threads") {
      const double t = parse_real(value);
      if (t < 0 || t != std::floor(t) || t > 4096) throw ConfigError("threads must be a non-negative integer");
      cfg.threads = static_cast<int>(t);
    } else if (key == "output") {
      cfg.output = value;
    } else if (key == "csv") {
      cfg.csv = value;
    } else if (key == "svg") {
      cfg.svg = value;
    } else if (cfg.values.count(key)) {
      cfg.values[key] = value;
    } else {
      throw ConfigError("unknown key '" + key + "' for command " + spec.name);
    }
  }
  for (const auto& k : spec.keys) {
    try {
      check_value(k, cfg.values[k.key]);
    } catch (const ConfigError& e) {
      throw ConfigError(k.key + ": " + e.what());
    }
  }
  return cfg;
}

double RunConfig::real(const std::string& key) const { return parse_real(values.at(key)); }

std::optional<double> RunConfig::optional_real(const std::string& key) const {
  const std::string& v = values.at(key);
  if (v == "auto") return std::nullopt;
  return parse_real(v);
}

std::int64_t RunConfig::integer(const std::string& key) const { return std::llround(real(key)); }

std::vector<double> RunConfig::reals(const std::string& key) const {
  std::vector<double> out;
  for (const auto& s : split_list(values.at(key))) out.push_back(parse_real(s));
  return out;
}

Complex RunConfig::complex(const std::string& key) const { return parse_complex(values.at(key)); }

std::vector<Complex> RunConfig::complexes(const std::string& key) const {
  std::vector<Complex> out;
  for (const auto& s : split_list(values.at(key))) out.push_back(parse_complex(s));
  return out;
}

const std::string& RunConfig::text(const std::string& key) const { return values.at(key); }

nlohmann::json RunConfig::to_json() const {
  const CommandSpec& spec = find_command(command);
  nlohmann::json j = nlohmann::json::object();
  for (const auto& k : spec.keys) {
    switch (k.kind) {
      case ValueKind::real:
        j[k.key] = real(k.key);
        break;
      case ValueKind::optional_real:
        if (const auto v = optional_real(k.key)) {
          j[k.key] = *v;
        } else {
          j[k.key] = "auto";
        }
        break;
      case ValueKind::integer:
        j[k.key] = integer(k.key);
        break;
      case ValueKind::real_list:
        j[k.key] = reals(k.key);
        break;
      case ValueKind::complex:
        j[k.key] = complex_json(complex(k.key));
        break;
      case ValueKind::complex_list: {
        nlohmann::json a = nlohmann::json::array();
        for (Complex z : complexes(k.key)) a.push_back(complex_json(z));
        j[k.key] = a;
        break;
      }
      case ValueKind::rational:
        j[k.key] = normalize_rational(values.at(k.key));
        break;
      case ValueKind::text:
        j[k.key] = values.at(k.key);
        break;
    }
  }
  return j;
}

std::string RunConfig::hash() const {
  nlohmann::json j = to_json();
  j["command"] = command;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(j.dump())));
  return buf;
}

}  // namespace lcft::cli

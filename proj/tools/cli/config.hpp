#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lcft/core/params.hpp"

namespace lcft::cli {

inline constexpr int kSchemaVersion = 1;

/// Bad command line, config file or key value. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ValueKind { real, optional_real, integer, real_list, complex, complex_list, text, rational };

struct KeySpec {
  std::string key;
  ValueKind kind;
  std::string default_value;  ///< empty list / "auto" allowed where the kind permits
  std::string help;
};

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<KeySpec> keys;
};

/// Keys accepted by every command. They never enter the config hash.
inline constexpr std::string_view kRunKeys[] = {"threads", "output", "csv", "svg"};

const std::vector<CommandSpec>& command_table();
const CommandSpec& find_command(std::string_view name);

/// Fully resolved configuration: every key of the command has a value.
class RunConfig {
 public:
  std::string command;
  std::map<std::string, std::string> values;
  int threads = 0;  ///< 0: LCFT_THREADS or hardware concurrency
  std::string output;
  std::string csv;
  std::string svg;

  double real(const std::string& key) const;
  std::optional<double> optional_real(const std::string& key) const;
  std::int64_t integer(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  Complex complex(const std::string& key) const;
  std::vector<Complex> complexes(const std::string& key) const;
  const std::string& text(const std::string& key) const;

  /// Typed view of the command keys (run keys excluded).
  nlohmann::json to_json() const;
  /// FNV-1a 64 of the canonical JSON dump of to_json(), as 16 hex digits.
  std::string hash() const;
};

/// key = value lines; '#' starts a comment; blank lines ignored; repeated
/// keys rejected.
std::map<std::string, std::string> parse_config_text(std::string_view text, std::string_view origin = "config");
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Merges defaults, file values and flag values (flags win). Unknown keys and
/// malformed values raise ConfigError.
RunConfig resolve_config(const CommandSpec& spec, const std::map<std::string, std::string>& file_values,
                         const std::map<std::string, std::string>& flag_values);

double parse_real(std::string_view text);
Complex parse_complex(std::string_view text);
std::vector<std::string> split_list(std::string_view text);
/// "p/q" or a decimal literal, converted exactly.
std::string normalize_rational(std::string_view text);

std::uint64_t fnv1a(std::string_view bytes);

}  // namespace lcft::cli

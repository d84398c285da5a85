#include <CLI11.hpp>
#include <algorithm>
#include <iostream>
#include <map>
#include <string>

#include "cli/config.hpp"
#include "cli/run.hpp"

using namespace lcft::cli;

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments for Liouville conformal field theory"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", "0.3.0");

  struct Slot {
    CLI::App* app;
    std::string config_path;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
  };
  std::vector<Slot> slots(command_table().size());
  for (std::size_t i = 0; i < command_table().size(); ++i) {
    const CommandSpec& spec = command_table()[i];
    Slot& s = slots[i];
    s.app = app.add_subcommand(spec.name, spec.help);
    s.app->add_option("--config", s.config_path, "key = value config file; flags override it");
    const auto add = [&](const std::string& key, const std::string& help) {
      std::string flag = key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      s.options[key] = s.app->add_option("--" + flag, s.values[key], help);
    };
    for (const auto& k : spec.keys) add(k.key, k.help + " [" + (k.default_value.empty() ? "none" : k.default_value) + "]");
    add("threads", "worker threads; 0 or unset uses LCFT_THREADS, then all cores");
    add("output", "also write the JSON record here");
    add("csv", "write the result curve as CSV");
    add("svg", "write the result curve as an SVG line plot");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  for (std::size_t i = 0; i < slots.size(); ++i) {
    Slot& s = slots[i];
    if (!s.app->parsed()) continue;
    try {
      std::map<std::string, std::string> file;
      if (!s.config_path.empty()) file = read_config_file(s.config_path);
      std::map<std::string, std::string> flags;
      for (const auto& [key, opt] : s.options) {
        if (opt->count() > 0) flags[key] = s.values[key];
      }
      const RunConfig config = resolve_config(command_table()[i], file, flags);
      return run(config, std::cout, std::cerr);
    } catch (const ConfigError& e) {
      std::cerr << "lcft " << command_table()[i].name << ": invalid configuration: " << e.what() << '\n';
      return kExitValidation;
    }
  }
  return kExitValidation;
}

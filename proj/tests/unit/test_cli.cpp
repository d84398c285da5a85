#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli/config.hpp"
#include "cli/output.hpp"
#include "cli/run.hpp"

using namespace lcft;
using namespace lcft::cli;

namespace {

RunConfig make(const std::string& command, std::map<std::string, std::string> flags = {},
               std::map<std::string, std::string> file = {}) {
  return resolve_config(find_command(command), file, flags);
}

int run_quiet(const RunConfig& c, std::string* out = nullptr, std::string* err = nullptr) {
  std::ostringstream o, e;
  const int code = run(c, o, e);
  if (out) *out = o.str();
  if (err) *err = e.str();
  return code;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Parse, Reals) {
  EXPECT_EQ(parse_real("1.5"), 1.5);
  EXPECT_EQ(parse_real(" +2e-3 "), 2e-3);
  EXPECT_THROW(parse_real("1.5x"), ConfigError);
  EXPECT_THROW(parse_real(""), ConfigError);
  EXPECT_THROW(parse_real("nan"), ConfigError);
  EXPECT_THROW(parse_real("1,5"), ConfigError);
}

TEST(Parse, Complex) {
  EXPECT_EQ(parse_complex("0.3+1.2i"), Complex(0.3, 1.2));
  EXPECT_EQ(parse_complex("-1-2i"), Complex(-1, -2));
  EXPECT_EQ(parse_complex("2.5i"), Complex(0, 2.5));
  EXPECT_EQ(parse_complex("-i"), Complex(0, -1));
  EXPECT_EQ(parse_complex("1e-3+2e+1i"), Complex(1e-3, 20));
  EXPECT_EQ(parse_complex("4"), Complex(4, 0));
  EXPECT_THROW(parse_complex("1+2j"), ConfigError);
  EXPECT_THROW(parse_complex("1+xi"), ConfigError);
}

TEST(Parse, ListsAndRationals) {
  EXPECT_EQ(split_list("1.8, 1.9,2"), (std::vector<std::string>{"1.8", "1.9", "2"}));
  EXPECT_TRUE(split_list("").empty());
  EXPECT_THROW(split_list("1,,2"), ConfigError);
  EXPECT_EQ(normalize_rational("3/6"), "1/2");
  EXPECT_EQ(normalize_rational("0.125"), "1/8");
  EXPECT_EQ(normalize_rational("007/010"), "7/10");
  EXPECT_EQ(normalize_rational("-2.5e1"), "-25");
  EXPECT_EQ(normalize_rational("1.5e-2"), "3/200");
  EXPECT_THROW(normalize_rational("1/0"), ConfigError);
  EXPECT_THROW(normalize_rational("a/2"), ConfigError);
}

TEST(Config, TextFormat) {
  const auto m = parse_config_text("# comment\n gamma = 0.7 \n\nalphas=1.8,1.9 # trailing\np-max = 4\n");
  EXPECT_EQ(m.at("gamma"), "0.7");
  EXPECT_EQ(m.at("alphas"), "1.8,1.9");
  EXPECT_EQ(m.at("p_max"), "4");
  EXPECT_THROW(parse_config_text("gamma 1\n"), ConfigError);
  EXPECT_THROW(parse_config_text("gamma = 1\ngamma = 2\n"), ConfigError);
  EXPECT_THROW(parse_config_text(" = 2\n"), ConfigError);
}

TEST(Config, StrictKeysAndFlagsWin) {
  EXPECT_THROW(make("dozz", {{"foo", "1"}}), ConfigError);
  EXPECT_THROW(make("dozz", {}, {{"samples", "10"}}), ConfigError);
  EXPECT_THROW(make("dozz", {{"gamma", "one"}}), ConfigError);
  EXPECT_THROW(make("gram", {{"level", "2.5"}}), ConfigError);
  EXPECT_THROW(make("nope"), ConfigError);
  EXPECT_THROW(make("dozz", {}, {{"command", "upsilon"}}), ConfigError);
  const RunConfig c = make("dozz", {{"gamma", "0.9"}}, {{"gamma", "0.5"}, {"mu", "2"}});
  EXPECT_EQ(c.real("gamma"), 0.9);
  EXPECT_EQ(c.real("mu"), 2.0);
  EXPECT_EQ(c.complexes("alphas").size(), 3u);
}

TEST(Config, HashIgnoresRunKeysAndSpelling) {
  const RunConfig a = make("dozz", {{"gamma", "1"}});
  const RunConfig b = make("dozz", {{"gamma", "1.0"}, {"threads", "3"}, {"output", "x.json"}, {"csv", "y.csv"}});
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_EQ(a.hash().size(), 16u);
  EXPECT_NE(a.hash(), make("dozz", {{"gamma", "1.1"}}).hash());
  EXPECT_EQ(b.threads, 3);
  EXPECT_THROW(make("dozz", {{"threads", "-1"}}), ConfigError);
  // FNV-1a reference values
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Run, DozzRecord) {
  const RunOutput r = execute(make("dozz", {{"alphas", "1.8,1.8,1.8"}}));
  const auto& j = r.record;
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  EXPECT_EQ(j["command"], "dozz");
  EXPECT_FALSE(j["result"]["pole_flag"].get<bool>());
  EXPECT_TRUE(j["result"].contains("tolerance"));
  EXPECT_EQ(j["params"]["Q"], 2.5);
  EXPECT_EQ(j["config_hash"], make("dozz").hash());
  EXPECT_TRUE(j["diagnostics"].contains("runtime_seconds"));
}

TEST(Run, ExitCodes) {
  std::string err;
  EXPECT_EQ(run_quiet(make("three-point", {{"alphas", "1.2,1.2,1.2"}, {"samples", "10"}}), nullptr, &err),
            kExitPrecondition);
  EXPECT_NE(err.find("Seiberg"), std::string::npos);
  EXPECT_NE(err.find("violates_sum"), std::string::npos);
  EXPECT_EQ(run_quiet(make("three-point", {{"alphas", "1.8,1.8"}})), kExitValidation);
  EXPECT_EQ(run_quiet(make("three-point", {{"drift", "exact"}, {"samples", "10"}})), kExitValidation);
  EXPECT_EQ(run_quiet(make("gram", {{"level", "13"}})), kExitValidation);
  EXPECT_EQ(run_quiet(make("toy-scatter", {{"step_factor", "100"}})), kExitConvergence);
  EXPECT_EQ(run_quiet(make("toy-scatter", {{"tol", "1e-30"}})), kExitValidation);
  EXPECT_EQ(run_quiet(make("upsilon", {{"gamma", "2.5"}})), kExitValidation);
  EXPECT_EQ(run_quiet(make("dozz")), kExitOk);
}

TEST(Run, StochasticRecordsAreDeterministic) {
  const std::vector<std::pair<std::string, std::map<std::string, std::string>>> cases{
      {"three-point", {{"samples", "300"}, {"cutoff", "8"}, {"seed", "7"}, {"reference", "1.8,1.8,1.8"},
                       {"alphas", "1.9,1.8,1.7"}}},
      {"moments", {{"samples", "500"}, {"geometry", "torus"}, {"cutoff", "16"}, {"seed", "3"}}},
      {"sample-gmc", {{"samples", "200"}, {"geometry", "sphere"}, {"cutoff", "8"}, {"seed", "5"}}},
      {"two-point-limit", {{"samples", "200"}, {"cutoff", "8"}, {"seed", "2"}}},
  };
  for (const auto& [cmd, flags] : cases) {
    auto f1 = flags, f3 = flags;
    f1["threads"] = "1";
    f3["threads"] = "3";
    const auto a = execute(make(cmd, f1)).record;
    const auto b = execute(make(cmd, f1)).record;
    const auto c = execute(make(cmd, f3)).record;
    EXPECT_EQ(comparable(a).dump(), comparable(b).dump()) << cmd;
    EXPECT_EQ(comparable(a).dump(), comparable(c).dump()) << cmd;
    EXPECT_TRUE(a["result"].contains("std_error")) << cmd;
  }
}

TEST(Run, CurvesAreIncreasingCsv) {
  const std::string csv = ::testing::TempDir() + "lcft_curve.csv";
  const std::string svg = ::testing::TempDir() + "lcft_curve.svg";
  const std::string json = ::testing::TempDir() + "lcft_record.json";
  for (const auto& cmd : {"toy-scatter", "bootstrap4", "two-point-limit", "block"}) {
    std::map<std::string, std::string> f{{"csv", csv}, {"svg", svg}, {"output", json}};
    if (std::string(cmd) == "two-point-limit") {
      f["samples"] = "100";
      f["cutoff"] = "8";
      f["epsilons"] = "0.14,0.11,0.12";
    }
    if (std::string(cmd) == "bootstrap4") f["nodes"] = "21";
    std::string out;
    ASSERT_EQ(run_quiet(make(cmd, f), &out), kExitOk) << cmd;
    EXPECT_EQ(slurp(json), out);
    std::istringstream in(slurp(csv));
    std::string line;
    std::getline(in, line);
    EXPECT_NE(line.find(','), std::string::npos) << cmd;
    double prev = -1e300;
    int rows = 0;
    while (std::getline(in, line)) {
      const double x = parse_real(line.substr(0, line.find(',')));
      EXPECT_GT(x, prev) << cmd;
      prev = x;
      ++rows;
    }
    EXPECT_GT(rows, 2) << cmd;
    EXPECT_EQ(slurp(svg).rfind("<svg", 0), 0u) << cmd;
  }
  std::remove(csv.c_str());
  std::remove(svg.c_str());
  std::remove(json.c_str());
}

TEST(Output, TableOrdering) {
  Table t;
  t.add_column("x", {2, 1, 3, 1});
  t.add_column("y", {20, 10, 30, 10});
  make_increasing(t);
  EXPECT_EQ(t.columns[0], (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(to_csv(t), "x,y\n1,10\n2,20\n3,30\n");
  t.add_column("z", {1, 2, 3});
  Table bad;
  bad.add_column("x", {1, 1});
  bad.add_column("y", {1, 2});
  EXPECT_THROW(make_increasing(bad), ConfigError);
  EXPECT_THROW(t.add_column("w", {1}), ConfigError);
}

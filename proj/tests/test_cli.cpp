#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "lva/errors.hpp"

using namespace lva;
using namespace lva::cli;

namespace {

RunConfig config(std::string command, std::string lattice, std::string ring = "Q") {
  RunConfig c;
  c.command = std::move(command);
  c.lattice_source = std::move(lattice);
  c.ring = std::move(ring);
  c.format = "structured";
  c.threads = 1;
  return c;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("lva_cli_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

std::pair<int, std::string> emit(const RunConfig& c) {
  std::ostringstream out, err;
  const int rc = run_and_emit(c, out, err);
  return {rc, out.str()};
}

}  // namespace

TEST(LatticeParsing, Presets) {
  EXPECT_EQ(resolve_lattice("A1").gram(), (IntMatrix{{2}}));
  EXPECT_THROW(resolve_lattice("no-such-lattice"), InputError);
}

TEST(LatticeParsing, Diagnostics) {
  try {
    parse_lattice_text("{\"gram\": [[1]]}", "odd.json");
    FAIL() << "odd diagonal accepted";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("odd.json:1:"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("not even"), std::string::npos) << e.what();
  }
  try {
    parse_lattice_text("{\"name\": \"x\",\n \"gram\": [[2, 3],\n          [3, 2]]}", "pd.json");
    FAIL() << "indefinite form accepted";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("pd.json:3:"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("-5"), std::string::npos) << e.what();
  }
  try {
    parse_lattice_text("{\"gram\":\n [[2, 1]\n  [1, 2]]}", "syntax.json");
    FAIL() << "syntax error accepted";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("syntax.json:3:"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_lattice_text("{\"gram\": [[2, 1.5], [1.5, 2]]}"), InputError);
  EXPECT_THROW(parse_lattice_text("{\"gram\": [[2, 1], [1]]}"), InputError);
  EXPECT_THROW(parse_lattice_text("[]"), InputError);
  EXPECT_THROW(parse_lattice_file("/nonexistent/lattice.json"), InputError);
}

TEST(LatticeParsing, FileRoundTrip) {
  const auto path = write_temp("a2.json", "{\"name\": \"my-a2\", \"gram\": [[2, -1], [-1, 2]]}");
  const Lattice l = resolve_lattice(path);
  EXPECT_EQ(l.name(), "my-a2");
  EXPECT_EQ(l.determinant(), 3);
}

TEST(Run, AnalyzeA2) {
  Report r;
  EXPECT_EQ(run(config("analyze", "A2"), r), ExitCode::ok);
  EXPECT_EQ(r["results"]["roots"], 6);
  EXPECT_EQ(r["results"]["weyl_order"], 6);
  EXPECT_EQ(r["results"]["orthogonal_order"], 12);
  EXPECT_EQ(r["results"]["outer_classes"], 2);
  EXPECT_EQ(r["results"]["determinant"], 3);
  EXPECT_EQ(r["results"]["cartan_type"][0]["type"], "A");
  EXPECT_EQ(r["results"]["cartan_type"][0]["rank"], 2);
  EXPECT_EQ(r["verdict"], "pass");
  for (const auto& c : r["checks"]) {
    EXPECT_FALSE(c["anchor"].get<std::string>().empty());
    EXPECT_TRUE(c["counterexample"].is_null());
  }
}

TEST(Run, ExitCodes) {
  Report r;
  EXPECT_EQ(run(config("analyze", "E8"), r), ExitCode::resource_cap);
  EXPECT_EQ(r["verdict"], "resource-cap");
  EXPECT_EQ(r["results"]["roots"], 240);

  EXPECT_EQ(run(config("analyze", "nope"), r), ExitCode::input_error);
  EXPECT_EQ(run(config("analyze", "A1", "Fp:4"), r), ExitCode::input_error);
  EXPECT_EQ(run(config("frobnicate", "A1"), r), ExitCode::input_error);

  EXPECT_EQ(run(config("conformal", "A2", "Fp:3"), r), ExitCode::ok);
  EXPECT_EQ(r["verdict"], "refused");
  EXPECT_NE(r["results"]["refusal"].get<std::string>().find("det"), std::string::npos);

  auto small = config("verify-axioms", "A1");
  small.max_weight = 1;
  EXPECT_EQ(run(small, r), ExitCode::ok);
  EXPECT_EQ(r["verdict"], "pass");
}

TEST(Run, ConfigEchoUsesEffectiveDefaults) {
  Report r;
  run(config("graded-dims", "A1"), r);
  EXPECT_EQ(r["config"]["max_weight"], 6);
  EXPECT_EQ(r["results"]["dimensions"].size(), 7u);
  EXPECT_EQ(r["results"]["dimensions"][4]["oracle"], 13);
}

TEST(Run, SchemaKeysInOrder) {
  Report r;
  run(config("graded-dims", "A1"), r);
  std::vector<std::string> keys;
  for (const auto& [k, v] : r.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"artifact", "version", "command", "config", "lattice", "results",
                                            "checks", "verdict"}));
}

TEST(Emit, StructuredOutputIsByteIdentical) {
  auto c = config("aut-report", "A1");
  c.samples = 3;
  c.seed = 42;
  const auto [rc1, a] = emit(c);
  const auto [rc2, b] = emit(c);
  EXPECT_EQ(rc1, 0);
  EXPECT_EQ(rc2, 0);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.find("wall_time"), std::string::npos);

  c.timing = true;
  EXPECT_NE(emit(c).second.find("wall_time_seconds"), std::string::npos);
}

TEST(Emit, TextIsDerivedFromReport) {
  auto c = config("analyze", "A1");
  c.format = "text";
  const auto [rc, text] = emit(c);
  EXPECT_EQ(rc, 0);
  EXPECT_NE(text.find("[PASS] root-datum"), std::string::npos);
  EXPECT_NE(text.find("verdict: pass"), std::string::npos);
}

TEST(Emit, WritesToFile) {
  auto c = config("analyze", "A1");
  c.output = (std::filesystem::temp_directory_path() / "lva_cli_test_out.json").string();
  EXPECT_EQ(emit(c).first, 0);
  std::ifstream in(c.output);
  const Report r = Report::parse(in);
  EXPECT_EQ(r["command"], "analyze");
}

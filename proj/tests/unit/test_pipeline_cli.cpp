#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "dfab/error.hpp"
#include "dfab/json_io.hpp"
#include "dfab/mesh_io.hpp"
#include "dfab/pipeline.hpp"
#include "dfab_tools/cli.hpp"
#include "dfab_tools/fixtures.hpp"
#include "test_support.hpp"

namespace dfab {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code = -1;
  std::string out, err;
};

Run dfab_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string fixture(const std::string& name) { return (testing::fixture_dir() / name).string(); }

std::vector<std::string> offline_clients() {
  return {"--set", "clients.language_model=fallback", "--set", "clients.mesh_generator=mock",
          "--set", "clients.mock_manifest=" + fixture("mock_manifest.json")};
}

std::vector<std::string> operator+(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

TEST(Config, DefaultsRoundTrip) {
  const PipelineConfig defaults;
  const auto text = config_to_json(defaults);
  EXPECT_EQ(config_to_json(config_from_json(text)), text);
  EXPECT_EQ(config_to_json(config_from_json("{}")), text);
  EXPECT_EQ(defaults.assembly.movement_plane_z, 72.0);
  EXPECT_EQ(defaults.motion, (MotionParams{2.0, 1.0, AccelRatio::two_to_one}));
}

TEST(Config, OverridesApplyInOrder) {
  const auto c = load_config(std::nullopt, {"inventory=30", "motion.velocity=1", "motion.acceleration=1",
                                            "source_cm=[80,10,5]", "inventory=25",
                                            "clients.mock_manifest=/tmp/m.json"});
  EXPECT_EQ(c.assembly.inventory.available_components, 25u);
  EXPECT_EQ(c.motion.ratio, AccelRatio::one_to_one);
  EXPECT_EQ(c.assembly.source, (Vec3{80, 10, 5}));
  EXPECT_EQ(c.clients.mock_manifest, "/tmp/m.json");
}

TEST(Config, FileThenOverrides) {
  testing::TempDir dir("config");
  std::ofstream(dir / "c.json") << R"({"cell_size_cm": 5, "movement_plane_z_cm": 80})";
  const auto c = load_config(dir / "c.json", {"movement_plane_z_cm=90"});
  EXPECT_EQ(c.assembly.cell_size, 5.0);
  EXPECT_EQ(c.assembly.movement_plane_z, 90.0);
}

TEST(Config, Violations) {
  auto code = [](const std::vector<std::string>& overrides) {
    try {
      load_config(std::nullopt, overrides);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::schema_mismatch;
  };
  EXPECT_EQ(code({"inventory=\"many\""}), ErrorCode::config_violation);
  EXPECT_EQ(code({"nonsense=1"}), ErrorCode::config_violation);
  EXPECT_EQ(code({"movement_plane_z_cm=50"}), ErrorCode::config_violation);
  EXPECT_EQ(code({"motion.acceleration=0.3"}), ErrorCode::config_violation);
  EXPECT_EQ(code({"source_cm=[30,20,10]"}), ErrorCode::config_violation);
  EXPECT_EQ(code({"no_equals_sign"}), ErrorCode::config_violation);
}

TEST(Cli, PipelineOnMesh) {
  testing::TempDir dir("cli");
  const auto r = dfab_cli({"pipeline", "--mesh", fixture("table.stl"), "--out-dir", dir.path().string()});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  for (const char* name : {"grid.json", "report.json", "sequence.json", "toolpath.json", "summary.txt"}) {
    EXPECT_TRUE(fs::exists(dir / name)) << name;
  }
  const auto grid = grid_from_json(read_file(dir / "grid.json"));
  EXPECT_EQ(grid.size(), 37u);
  const auto path = parse_toolpath_json(read_file(dir / "toolpath.json"));
  EXPECT_EQ(path.commands.size(), 1 + 8 * 37u);
}

TEST(Cli, PipelineFromText) {
  testing::TempDir dir("cli");
  const auto r = dfab_cli(std::vector<std::string>{"pipeline", "--text", "make me a coffee table",
                                                   "--out-dir", dir.path().string()} +
                          offline_clients());
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("object: coffee table"), std::string::npos);
}

TEST(Cli, RejectionAsksToRestate) {
  const auto r = dfab_cli(std::vector<std::string>{"pipeline", "--text", "Knowledge"} + offline_clients());
  EXPECT_EQ(r.code, cli::kRejected);
  EXPECT_NE(r.err.find("restate"), std::string::npos);
  EXPECT_EQ(dfab_cli(std::vector<std::string>{"filter", "--text", "create beauty"} + offline_clients()).code,
            cli::kRejected);
}

TEST(Cli, UnknownObjectWithMockGenerator) {
  const auto r = dfab_cli(std::vector<std::string>{"pipeline", "--text", "I want a spaceship"} +
                          offline_clients());
  EXPECT_EQ(r.code, cli::kClientUnavailable);
  EXPECT_NE(r.err.find("spaceship"), std::string::npos);
}

TEST(Cli, ErrorExitCodes) {
  testing::TempDir dir("cli");
  std::ofstream(dir / "bad.stl") << "solid nope\n facet oops\n";
  std::ofstream(dir / "thing.ply") << "ply\n";
  std::ofstream(dir / "points.obj") << "v 0 0 0\nv 1 0 0\n";
  { std::ofstream(dir / "empty.obj"); }
  EXPECT_EQ(dfab_cli({"pipeline", "--mesh", (dir / "bad.stl").string(), "--out-dir", dir.path().string()}).code,
            cli::kMalformedFile);
  EXPECT_EQ(dfab_cli({"voxelize", "--mesh", (dir / "thing.ply").string()}).code, cli::kUnsupportedFormat);
  EXPECT_EQ(dfab_cli({"voxelize", "--mesh", (dir / "points.obj").string()}).code, cli::kEmptyMesh);
  // Zero bytes and unreadable paths are not meshes at all.
  EXPECT_EQ(dfab_cli({"voxelize", "--mesh", (dir / "empty.obj").string()}).code, cli::kMalformedFile);
  EXPECT_EQ(dfab_cli({"voxelize", "--mesh", (dir / "missing.stl").string()}).code, cli::kMalformedFile);
  EXPECT_EQ(dfab_cli({"voxelize", "--mesh", fixture("table.stl"), "--out", (dir / "no/such/dir/g.json").string()})
                .code,
            cli::kIoError);
  EXPECT_EQ(dfab_cli({"voxelize", "--mesh", fixture("table.stl"), "--set", "inventory=0"}).code,
            cli::kConfigViolation);
  EXPECT_EQ(dfab_cli({"voxelize"}).code, cli::kUsage);
  EXPECT_EQ(dfab_cli({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(dfab_cli({"--help"}).code, cli::kOk);
}

TEST(Cli, CheckWithoutFailureHandlingShowsRawStatuses) {
  for (const auto& f : fixtures::all()) {
    testing::TempDir dir("check");
    const auto r = dfab_cli({"check", "--mesh", fixture(f.name + ".stl"), "--no-failure-handling",
                             "--out-dir", dir.path().string()});
    EXPECT_EQ(r.code, cli::kChecksFailed) << f.name;
    const auto report = report_from_json(read_file(dir / "report.json"));
    for (std::size_t n = 0; n < 4; ++n) EXPECT_EQ(report.results[n].status, f.expected_raw[n]) << f.name;
    EXPECT_FALSE(report.failure_handling);
  }
}

TEST(Cli, StagesComposeToThePipeline) {
  testing::TempDir dir("compose");
  const auto mesh = fixture("shelf.stl");
  const auto p = [&](const char* name) { return (dir / name).string(); };
  ASSERT_EQ(dfab_cli({"pipeline", "--mesh", mesh, "--out-dir", p("all")}).code, cli::kOk);
  ASSERT_EQ(dfab_cli({"voxelize", "--mesh", mesh, "--out", p("first.json")}).code, cli::kOk);
  ASSERT_EQ(dfab_cli({"check", "--mesh", mesh, "--grid", p("first.json"), "--out-dir", p("stage")}).code,
            cli::kOk);
  ASSERT_EQ(dfab_cli({"sequence", "--grid", p("stage/grid.json"), "--out", p("stage/sequence.json")}).code,
            cli::kOk);
  ASSERT_EQ(dfab_cli({"toolpath", "--grid", p("stage/grid.json"), "--sequence", p("stage/sequence.json"),
                      "--out", p("stage/toolpath.json")})
                .code,
            cli::kOk);
  for (const char* name : {"grid.json", "report.json", "sequence.json", "toolpath.json"}) {
    EXPECT_EQ(read_file(dir / "stage" / name), read_file(dir / "all" / name)) << name;
  }
  const auto v = dfab_cli({"validate", "--grid", p("stage/grid.json"), "--sequence", p("stage/sequence.json"),
                           "--report", p("stage/report.json"), "--toolpath", p("stage/toolpath.json"),
                           "--out", p("sim.json")});
  EXPECT_EQ(v.code, cli::kOk) << v.err;
}

TEST(Cli, ValidateCatchesBadSequence) {
  testing::TempDir dir("validate");
  ASSERT_EQ(dfab_cli({"pipeline", "--mesh", fixture("letter_t.stl"), "--out-dir", dir.path().string()}).code,
            cli::kOk);
  auto seq = sequence_from_json(read_file(dir / "sequence.json"));
  std::reverse(seq.cells.begin(), seq.cells.end());
  write_file(dir / "reversed.json", sequence_to_json(seq));
  const auto r = dfab_cli({"validate", "--grid", (dir / "grid.json").string(), "--sequence",
                           (dir / "reversed.json").string()});
  EXPECT_EQ(r.code, cli::kValidationFailed);

  seq.cells.pop_back();
  write_file(dir / "short.json", sequence_to_json(seq));
  EXPECT_EQ(dfab_cli({"validate", "--grid", (dir / "grid.json").string(), "--sequence",
                      (dir / "short.json").string()})
                .code,
            cli::kSequenceGridMismatch);
}

TEST(Cli, RobotScriptFormat) {
  testing::TempDir dir("script");
  ASSERT_EQ(dfab_cli({"pipeline", "--mesh", fixture("letter_t.stl"), "--format", "robot_script",
                      "--out-dir", dir.path().string()})
                .code,
            cli::kOk);
  const auto script = read_file(dir / "toolpath.txt");
  EXPECT_EQ(std::count(script.begin(), script.end(), '\n'), 1 + 8 * 7);
}

TEST(Fixtures, CommittedFilesMatchGenerator) {
  for (const auto& f : fixtures::all()) {
    const auto bytes = write_stl_binary(fixtures::mesh(f));
    EXPECT_EQ(read_file(testing::fixture_dir() / (f.name + ".stl")),
              std::string(reinterpret_cast<const char*>(bytes.data()), bytes.size()))
        << f.name;
  }
}

}  // namespace
}  // namespace dfab

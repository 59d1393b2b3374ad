#include "dfab_tools/cli.hpp"

#include <filesystem>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "dfab/json_io.hpp"
#include "dfab/pipeline.hpp"

namespace dfab::cli {

namespace fs = std::filesystem;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::malformed_file:
      return kMalformedFile;
    case ErrorCode::unsupported_format:
      return kUnsupportedFormat;
    case ErrorCode::empty_mesh:
      return kEmptyMesh;
    case ErrorCode::cannot_fit:
      return kCannotFit;
    case ErrorCode::empty_assembly:
      return kEmptyAssembly;
    case ErrorCode::empty_after_modification:
      return kEmptyAfterModification;
    case ErrorCode::sequence_grid_mismatch:
      return kSequenceGridMismatch;
    case ErrorCode::unsequenceable:
      return kUnsequenceable;
    case ErrorCode::config_violation:
      return kConfigViolation;
    case ErrorCode::client_unavailable:
      return kClientUnavailable;
    case ErrorCode::schema_mismatch:
      return kSchemaMismatch;
  }
  return kInternal;
}

namespace {

struct Options {
  std::string config;
  std::vector<std::string> sets;
  std::string mesh;
  std::string text;
  std::string grid;
  std::string sequence;
  std::string report;
  std::string toolpath;
  std::string out;
  std::string out_dir = ".";
  std::string format = "json";
  bool no_failure_handling = false;
};

PipelineConfig config_of(const Options& o) {
  return load_config(o.config.empty() ? std::nullopt : std::optional<fs::path>(o.config), o.sets);
}

ToolpathFormat format_of(const Options& o) {
  return o.format == "robot_script" ? ToolpathFormat::robot_script : ToolpathFormat::json;
}

// Writes to --out when given, else to the output stream.
void emit(const Options& o, std::ostream& out, const std::string& content) {
  if (o.out.empty()) {
    out << content;
  } else {
    write_file(o.out, content);
  }
}

void print_checks(std::ostream& out, const FeasibilityReport& report) {
  for (std::size_t n = 0; n < kAllChecks.size(); ++n) {
    out << to_string(kAllChecks[n]) << ": " << to_string(report.results[n].status);
    if (report.failure_handling) out << " -> " << to_string(report.final_results[n].status);
    out << "\n";
  }
}

int cmd_pipeline(const Options& o, std::ostream& out, std::ostream& err) {
  const auto config = config_of(o);
  TriangleMesh raw;
  if (!o.text.empty()) {
    const auto outcome = run_filter(o.text, config);
    if (const auto* rejection = std::get_if<Rejection>(&outcome)) {
      err << rejection->message << "\n";
      return kRejected;
    }
    const auto& request = std::get<ObjectRequest>(outcome);
    out << "object: " << request.extracted_phrase << "\n";
    const auto generator = make_mesh_generator(config.clients);
    raw = acquire_mesh(request, *generator);
  } else {
    raw = load_mesh(o.mesh);
  }
  const auto result = run_pipeline(raw, config, !o.no_failure_handling);
  const auto written = write_artifacts(o.out_dir, result, format_of(o));
  out << summarize(result);
  for (const auto& p : written) out << "wrote " << p.string() << "\n";
  if (!result.validation.ok) {
    for (const auto& p : result.validation.problems) err << "validation: " << p << "\n";
    return kValidationFailed;
  }
  return kOk;
}

int cmd_filter(const Options& o, std::ostream& out, std::ostream& err) {
  const auto outcome = run_filter(o.text, config_of(o));
  if (const auto* rejection = std::get_if<Rejection>(&outcome)) {
    err << rejection->message << "\n";
    return kRejected;
  }
  out << std::get<ObjectRequest>(outcome).extracted_phrase << "\n";
  return kOk;
}

int cmd_voxelize(const Options& o, std::ostream& out, std::ostream&) {
  const auto config = config_of(o);
  const auto prepared = prepare_mesh(load_mesh(o.mesh), config);
  emit(o, out, grid_to_json(stage_voxelize(prepared, config)));
  return kOk;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
  const auto config = config_of(o);
  std::optional<PreparedMesh> prepared;
  if (!o.mesh.empty()) prepared = prepare_mesh(load_mesh(o.mesh), config);
  const auto first_pass =
      o.grid.empty() ? stage_voxelize(*prepared, config) : grid_from_json(read_file(o.grid));
  const auto outcome =
      stage_check(first_pass, prepared ? &*prepared : nullptr, config, !o.no_failure_handling);

  fs::create_directories(o.out_dir);
  write_file(fs::path(o.out_dir) / ArtifactNames::grid, grid_to_json(outcome.grid));
  write_file(fs::path(o.out_dir) / ArtifactNames::report, report_to_json(outcome.report));
  print_checks(out, outcome.report);
  const bool all_pass = std::all_of(outcome.report.final_results.begin(),
                                    outcome.report.final_results.end(),
                                    [](const CheckResult& r) { return r.passed(); });
  if (!all_pass) {
    err << "some checks fail" << (o.no_failure_handling ? " (failure handling disabled)" : "")
        << "\n";
    return kChecksFailed;
  }
  return kOk;
}

int cmd_sequence(const Options& o, std::ostream& out, std::ostream&) {
  const auto grid = grid_from_json(read_file(o.grid));
  const auto plan = stage_sequence(grid, !o.no_failure_handling);
  emit(o, out, sequence_to_json(plan.sequence));
  if (!o.out.empty()) out << "sequencing: " << to_string(plan.method) << "\n";
  return kOk;
}

int cmd_toolpath(const Options& o, std::ostream& out, std::ostream&) {
  const auto config = config_of(o);
  const auto grid = grid_from_json(read_file(o.grid));
  const auto seq = sequence_from_json(read_file(o.sequence));
  emit(o, out, emit_toolpath(stage_toolpath(seq, grid, config), format_of(o)));
  return kOk;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  const auto config = config_of(o);
  const auto grid = grid_from_json(read_file(o.grid));
  const auto seq = sequence_from_json(read_file(o.sequence));
  std::optional<FeasibilityReport> report;
  if (!o.report.empty()) report = report_from_json(read_file(o.report));
  std::optional<Toolpath> path;
  if (!o.toolpath.empty()) path = parse_toolpath_json(read_file(o.toolpath));

  const auto outcome =
      stage_validate(grid, seq, report ? &*report : nullptr, path ? &*path : nullptr, config);
  if (!o.out.empty()) write_file(o.out, simulation_to_json(outcome.simulation));
  for (const auto& p : outcome.problems) err << "validation: " << p << "\n";
  out << (outcome.ok ? "ok" : "failed") << "\n";
  return outcome.ok ? kOk : kValidationFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Plans discrete robotic assembly of objects described by text or meshes."};
  app.name("dfab");
  app.require_subcommand(1, 1);

  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--set", o.sets, "Override a config value, e.g. --set inventory=30")
        ->take_all()
        ->allow_extra_args(false);
  };
  auto failure_flag = [&](CLI::App* sub) {
    sub->add_flag("--no-failure-handling", o.no_failure_handling,
                  "Report raw check results without rescaling, removal or reordering");
  };
  auto format_opt = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Toolpath format")
        ->check(CLI::IsMember({"json", "robot_script"}));
  };
  auto out_opt = [&](CLI::App* sub) { sub->add_option("--out", o.out, "Output file (default stdout)"); };

  auto* pipeline = app.add_subcommand("pipeline", "Run every stage and write the artifacts");
  common(pipeline);
  auto* mesh_opt = pipeline->add_option("--mesh", o.mesh, "Input mesh (STL or OBJ)");
  auto* text_opt = pipeline->add_option("--text", o.text, "Request text");
  mesh_opt->excludes(text_opt);
  pipeline->add_option("--out-dir", o.out_dir, "Artifact directory");
  failure_flag(pipeline);
  format_opt(pipeline);

  auto* filter = app.add_subcommand("filter", "Extract the object phrase from a request");
  common(filter);
  filter->add_option("--text", o.text, "Request text")->required();

  auto* vox = app.add_subcommand("voxelize", "Repair, fit and voxelize a mesh");
  common(vox);
  vox->add_option("--mesh", o.mesh, "Input mesh")->required();
  out_opt(vox);

  auto* check = app.add_subcommand("check", "Feasibility checks and failure handling");
  common(check);
  check->add_option("--mesh", o.mesh, "Input mesh; enables rescaling");
  check->add_option("--grid", o.grid, "First-pass grid JSON");
  check->add_option("--out-dir", o.out_dir, "Directory for grid.json and report.json");
  failure_flag(check);

  auto* sequence = app.add_subcommand("sequence", "Order the cells of a grid");
  common(sequence);
  sequence->add_option("--grid", o.grid, "Grid JSON")->required();
  failure_flag(sequence);
  out_opt(sequence);

  auto* toolpath = app.add_subcommand("toolpath", "Plan pick-and-place motion");
  common(toolpath);
  toolpath->add_option("--grid", o.grid, "Grid JSON")->required();
  toolpath->add_option("--sequence", o.sequence, "Sequence JSON")->required();
  format_opt(toolpath);
  out_opt(toolpath);

  auto* validate_cmd = app.add_subcommand("validate", "Simulate and cross-check artifacts");
  common(validate_cmd);
  validate_cmd->add_option("--grid", o.grid, "Grid JSON")->required();
  validate_cmd->add_option("--sequence", o.sequence, "Sequence JSON")->required();
  validate_cmd->add_option("--report", o.report, "Report JSON");
  validate_cmd->add_option("--toolpath", o.toolpath, "Toolpath JSON");
  out_opt(validate_cmd);

  try {
    app.parse(argc, argv);
    if (pipeline->parsed() && o.mesh.empty() && o.text.empty()) {
      throw CLI::RequiredError("pipeline needs --mesh or --text");
    }
    if (check->parsed() && o.mesh.empty() && o.grid.empty()) {
      throw CLI::RequiredError("check needs --mesh or --grid");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (pipeline->parsed()) return cmd_pipeline(o, out, err);
    if (filter->parsed()) return cmd_filter(o, out, err);
    if (vox->parsed()) return cmd_voxelize(o, out, err);
    if (check->parsed()) return cmd_check(o, out, err);
    if (sequence->parsed()) return cmd_sequence(o, out, err);
    if (toolpath->parsed()) return cmd_toolpath(o, out, err);
    return cmd_validate(o, out, err);
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error& e) {
    err << "error [io]: " << e.what() << "\n";
    return kIoError;
  } catch (const std::runtime_error& e) {
    err << "error [io]: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInternal;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"dfab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace dfab::cli

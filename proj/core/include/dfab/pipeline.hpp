#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dfab/config.hpp"
#include "dfab/feasibility.hpp"
#include "dfab/frontend.hpp"
#include "dfab/toolpath.hpp"
#include "dfab/validator.hpp"

namespace dfab {

enum class LanguageModelChoice { automatic, http, fallback };
enum class MeshGeneratorChoice { automatic, http, mock };

struct ClientSettings {
  /// automatic: HTTP when DFAB_LLM_ENDPOINT is set, else the offline fallback.
  LanguageModelChoice language_model = LanguageModelChoice::automatic;
  /// automatic: HTTP when DFAB_MESHGEN_ENDPOINT is set, else the mock manifest.
  MeshGeneratorChoice mesh_generator = MeshGeneratorChoice::automatic;
  std::string mock_manifest;
};

struct PipelineConfig {
  AssemblyConfig assembly;
  MotionParams motion;
  ClientSettings clients;
  /// Multiplies every input coordinate; 1 means the mesh is in centimeters.
  double unit_scale = 1.0;
  double weld_tolerance = kDefaultWeldTolerance;
  unsigned threads = 1;
};

/// Canonical JSON of every setting, defaults included.
std::string config_to_json(const PipelineConfig& config);

/// Reads a config document; absent keys keep their defaults and unknown keys
/// are rejected. Throws Error{config_violation}.
PipelineConfig config_from_json(std::string_view text);

/// Defaults, then the optional file, then each "dotted.key=value" override in
/// order. Values parse as JSON when they can and as strings otherwise.
PipelineConfig load_config(const std::optional<std::filesystem::path>& file,
                           const std::vector<std::string>& overrides);

std::unique_ptr<LanguageModelClient> make_language_model(const ClientSettings& settings);
std::unique_ptr<MeshGeneratorClient> make_mesh_generator(const ClientSettings& settings);

/// Filters with the configured language model, or the offline filter when
/// none is configured.
FilterOutcome run_filter(std::string_view text, const PipelineConfig& config);

struct PreparedMesh {
  TriangleMesh fitted;  ///< repaired and fitted to the workspace
  RepairSummary repair;
  double fit_scale = 1.0;
};

/// Repair, then fit (shrink only) to the workspace.
PreparedMesh prepare_mesh(const TriangleMesh& raw, const PipelineConfig& config);

/// First-pass occupancy of a prepared mesh.
OccupancyGrid stage_voxelize(const PreparedMesh& mesh, const PipelineConfig& config);

/// Feasibility checks and failure handling. `mesh` enables the rescale loop.
FeasibilityOutcome stage_check(const OccupancyGrid& first_pass, const PreparedMesh* mesh,
                               const PipelineConfig& config, bool failure_handling);

SequencePlan stage_sequence(const OccupancyGrid& grid, bool allow_reorder);

Toolpath stage_toolpath(const AssemblySequence& seq, const OccupancyGrid& grid,
                        const PipelineConfig& config);

struct ValidationOutcome {
  bool ok = true;
  SimulationReport simulation;
  std::vector<std::string> problems;
};

/// Simulates the sequence and, when given, cross-checks the report and the toolpath.
ValidationOutcome stage_validate(const OccupancyGrid& grid, const AssemblySequence& seq,
                                 const FeasibilityReport* report, const Toolpath* path,
                                 const PipelineConfig& config);

struct PipelineResult {
  OccupancyGrid grid;
  FeasibilityReport report;
  AssemblySequence sequence;
  Toolpath toolpath;
  ValidationOutcome validation;
};

/// Everything after mesh acquisition.
PipelineResult run_pipeline(const TriangleMesh& raw, const PipelineConfig& config,
                            bool failure_handling = true);

/// Human-readable digest. Deterministic: carries no timings or paths.
std::string summarize(const PipelineResult& result);

struct ArtifactNames {
  static constexpr const char* grid = "grid.json";
  static constexpr const char* report = "report.json";
  static constexpr const char* sequence = "sequence.json";
  static constexpr const char* toolpath_json = "toolpath.json";
  static constexpr const char* toolpath_script = "toolpath.txt";
  static constexpr const char* summary = "summary.txt";
};

/// Writes the five artifacts into `dir`, creating it; returns their paths.
std::vector<std::filesystem::path> write_artifacts(const std::filesystem::path& dir,
                                                   const PipelineResult& result,
                                                   ToolpathFormat format);

/// Whole-file helpers; throw std::runtime_error on I/O failure.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace dfab

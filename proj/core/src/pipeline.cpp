#include "dfab/pipeline.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

#include "dfab/error.hpp"
#include "dfab/json_io.hpp"
#include "json.hpp"

namespace dfab {

using ordered_json = nlohmann::ordered_json;

namespace {

[[noreturn]] void bad_config(const std::string& message) {
  throw Error(ErrorCode::config_violation, message);
}

constexpr std::array<std::pair<LanguageModelChoice, const char*>, 3> kLanguageModels{{
    {LanguageModelChoice::automatic, "auto"},
    {LanguageModelChoice::http, "http"},
    {LanguageModelChoice::fallback, "fallback"},
}};
constexpr std::array<std::pair<MeshGeneratorChoice, const char*>, 3> kMeshGenerators{{
    {MeshGeneratorChoice::automatic, "auto"},
    {MeshGeneratorChoice::http, "http"},
    {MeshGeneratorChoice::mock, "mock"},
}};

template <class Enum, std::size_t N>
const char* name_of(Enum value, const std::array<std::pair<Enum, const char*>, N>& table) {
  for (const auto& [v, name] : table) {
    if (v == value) return name;
  }
  return "?";
}

template <class Enum, std::size_t N>
Enum value_of(const std::string& name, const std::array<std::pair<Enum, const char*>, N>& table,
              const char* key) {
  for (const auto& [v, n] : table) {
    if (name == n) return v;
  }
  bad_config(std::string(key) + ": unknown choice '" + name + "'");
}

ordered_json vec_json(const Vec3& v) { return ordered_json::array({v.x, v.y, v.z}); }

Vec3 vec_from(const ordered_json& j, const char* key) {
  if (!j.is_array() || j.size() != 3) bad_config(std::string(key) + " must hold three numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

ordered_json defaults_json() { return ordered_json::parse(config_to_json(PipelineConfig{})); }

// Overlays `patch` onto `base`, rejecting keys the defaults do not define.
void overlay(ordered_json& base, const ordered_json& patch, const std::string& where) {
  if (!patch.is_object()) bad_config((where.empty() ? "config" : where) + " must be an object");
  for (const auto& [key, value] : patch.items()) {
    const std::string path = where.empty() ? key : where + "." + key;
    if (!base.contains(key)) bad_config("unknown config key '" + path + "'");
    if (base[key].is_object()) {
      overlay(base[key], value, path);
    } else {
      base[key] = value;
    }
  }
}

PipelineConfig decode(const ordered_json& doc) {
  PipelineConfig c;
  try {
    auto& a = c.assembly;
    a.workspace.extent = vec_from(doc.at("workspace_cm"), "workspace_cm");
    a.cell_size = doc.at("cell_size_cm").get<double>();
    a.inventory.available_components = doc.at("inventory").get<std::size_t>();
    a.limits.max_unsupported = doc.at("max_unsupported").get<int>();
    a.limits.max_stack = doc.at("max_stack").get<int>();
    a.source = vec_from(doc.at("source_cm"), "source_cm");
    a.movement_plane_z = doc.at("movement_plane_z_cm").get<double>();
    a.clearance = doc.at("clearance_cm").get<double>();
    if (const auto& g = doc.at("grip_offset_cm"); !g.is_null()) a.grip_offset = g.get<double>();

    const auto& m = doc.at("motion");
    c.motion.velocity = m.at("velocity").get<double>();
    c.motion.acceleration = m.at("acceleration").get<double>();

    const auto& cl = doc.at("clients");
    c.clients.language_model =
        value_of(cl.at("language_model").get<std::string>(), kLanguageModels, "clients.language_model");
    c.clients.mesh_generator =
        value_of(cl.at("mesh_generator").get<std::string>(), kMeshGenerators, "clients.mesh_generator");
    c.clients.mock_manifest = cl.at("mock_manifest").get<std::string>();

    c.unit_scale = doc.at("unit_scale").get<double>();
    c.weld_tolerance = doc.at("weld_tolerance_cm").get<double>();
    c.threads = doc.at("threads").get<unsigned>();
  } catch (const nlohmann::json::exception& e) {
    bad_config(std::string("config: ") + e.what());
  }

  try {
    c.motion.ratio = infer_ratio(c.motion.velocity, c.motion.acceleration);
  } catch (const Error& e) {
    bad_config(std::string("motion: ") + e.what());
  }
  validate(c.motion);
  validate(c.assembly);
  if (!(c.unit_scale > 0.0)) bad_config("unit_scale must be positive");
  if (!(c.weld_tolerance >= 0.0)) bad_config("weld_tolerance_cm must be non-negative");
  if (c.threads < 1) bad_config("threads must be at least 1");
  return c;
}

ordered_json parse_config_text(std::string_view text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad_config(std::string("config is not valid JSON: ") + e.what());
  }
}

std::string format_cell(const CellIndex& c) {
  return "(" + std::to_string(c.i) + ", " + std::to_string(c.j) + ", " + std::to_string(c.k) + ")";
}

}  // namespace

std::string config_to_json(const PipelineConfig& config) {
  const auto& a = config.assembly;
  ordered_json doc;
  doc["workspace_cm"] = vec_json(a.workspace.extent);
  doc["cell_size_cm"] = a.cell_size;
  doc["inventory"] = a.inventory.available_components;
  doc["max_unsupported"] = a.limits.max_unsupported;
  doc["max_stack"] = a.limits.max_stack;
  doc["source_cm"] = vec_json(a.source);
  doc["movement_plane_z_cm"] = a.movement_plane_z;
  doc["clearance_cm"] = a.clearance;
  doc["grip_offset_cm"] = a.grip_offset ? ordered_json(*a.grip_offset) : ordered_json();
  doc["motion"] = {{"velocity", config.motion.velocity}, {"acceleration", config.motion.acceleration}};
  doc["clients"] = {{"language_model", name_of(config.clients.language_model, kLanguageModels)},
                    {"mesh_generator", name_of(config.clients.mesh_generator, kMeshGenerators)},
                    {"mock_manifest", config.clients.mock_manifest}};
  doc["unit_scale"] = config.unit_scale;
  doc["weld_tolerance_cm"] = config.weld_tolerance;
  doc["threads"] = config.threads;
  return doc.dump(2) + "\n";
}

PipelineConfig config_from_json(std::string_view text) {
  auto doc = defaults_json();
  overlay(doc, parse_config_text(text), "");
  return decode(doc);
}

PipelineConfig load_config(const std::optional<std::filesystem::path>& file,
                           const std::vector<std::string>& overrides) {
  auto doc = defaults_json();
  if (file) {
    std::string text;
    try {
      text = read_file(*file);
    } catch (const std::runtime_error& e) {
      bad_config(e.what());
    }
    overlay(doc, parse_config_text(text), "");
  }
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) bad_config("override '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq);
    const std::string raw = item.substr(eq + 1);
    ordered_json value = ordered_json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;

    ordered_json* node = &doc;
    std::string::size_type start = 0;
    for (;;) {
      const auto dot = key.find('.', start);
      const std::string part = key.substr(start, dot == std::string::npos ? dot : dot - start);
      if (!node->is_object() || !node->contains(part)) bad_config("unknown config key '" + key + "'");
      node = &(*node)[part];
      if (dot == std::string::npos) break;
      start = dot + 1;
    }
    if (node->is_object()) {
      overlay(*node, value, key);
    } else {
      *node = std::move(value);
    }
  }
  return decode(doc);
}

std::unique_ptr<LanguageModelClient> make_language_model(const ClientSettings& settings) {
  if (settings.language_model == LanguageModelChoice::fallback) return nullptr;
  auto env = HttpLanguageModelClient::settings_from_env();
  if (!env) {
    if (settings.language_model == LanguageModelChoice::http) {
      throw Error(ErrorCode::client_unavailable, "DFAB_LLM_ENDPOINT is not set");
    }
    return nullptr;
  }
  return std::make_unique<HttpLanguageModelClient>(std::move(*env));
}

std::unique_ptr<MeshGeneratorClient> make_mesh_generator(const ClientSettings& settings) {
  if (settings.mesh_generator != MeshGeneratorChoice::mock) {
    if (auto env = HttpMeshGenerator::settings_from_env()) {
      return std::make_unique<HttpMeshGenerator>(std::move(*env));
    }
    if (settings.mesh_generator == MeshGeneratorChoice::http) {
      throw Error(ErrorCode::client_unavailable, "DFAB_MESHGEN_ENDPOINT is not set");
    }
  }
  if (settings.mock_manifest.empty()) {
    throw Error(ErrorCode::client_unavailable,
                "no mesh generator: set DFAB_MESHGEN_ENDPOINT or clients.mock_manifest");
  }
  return std::make_unique<MockMeshGenerator>(MockMeshGenerator::from_manifest(settings.mock_manifest));
}

FilterOutcome run_filter(std::string_view text, const PipelineConfig& config) {
  if (auto client = make_language_model(config.clients)) return filter_request(text, *client);
  return fallback_filter(text);
}

PreparedMesh prepare_mesh(const TriangleMesh& raw, const PipelineConfig& config) {
  const TriangleMesh input = config.unit_scale == 1.0 ? raw : scaled(raw, config.unit_scale);
  auto repaired = repair_mesh(input, config.weld_tolerance);
  auto fit = fit_to_workspace(repaired.mesh, config.assembly.workspace);
  return {std::move(fit.mesh), repaired.summary, fit.scale_factor};
}

OccupancyGrid stage_voxelize(const PreparedMesh& mesh, const PipelineConfig& config) {
  VoxelizeOptions options;
  options.threads = config.threads;
  return voxelize(mesh.fitted, build_grid(bounding_box(mesh.fitted), config.assembly.cell_size),
                  options);
}

FeasibilityOutcome stage_check(const OccupancyGrid& first_pass, const PreparedMesh* mesh,
                               const PipelineConfig& config, bool failure_handling) {
  validate(config.assembly);
  FeasibilityOptions options;
  options.failure_handling = failure_handling;
  options.voxelize.threads = config.threads;
  auto outcome =
      run_feasibility(first_pass, mesh ? &mesh->fitted : nullptr, config.assembly, options);
  if (mesh) {
    outcome.report.fit_scale = mesh->fit_scale;
    outcome.report.final_scale = mesh->fit_scale * outcome.report.final_scale.value_or(1.0);
    outcome.report.repair = mesh->repair;
  }
  return outcome;
}

SequencePlan stage_sequence(const OccupancyGrid& grid, bool allow_reorder) {
  if (grid.empty()) throw Error(ErrorCode::empty_assembly, "grid has no occupied cells");
  return plan_sequence(grid, allow_reorder);
}

Toolpath stage_toolpath(const AssemblySequence& seq, const OccupancyGrid& grid,
                        const PipelineConfig& config) {
  return plan_toolpath(seq, grid, config.assembly, config.motion);
}

ValidationOutcome stage_validate(const OccupancyGrid& grid, const AssemblySequence& seq,
                                 const FeasibilityReport* report, const Toolpath* path,
                                 const PipelineConfig& config) {
  ValidationOutcome out;
  out.simulation = simulate_assembly(seq, grid, config.assembly);
  if (!out.simulation.ok) {
    const auto& step = out.simulation.steps[*out.simulation.first_failure];
    out.problems.push_back("placement " + std::to_string(*out.simulation.first_failure) + " at " +
                           format_cell(step.cell) + " is not feasible");
  }
  if (report && !verify_report_consistency(*report, grid, config.assembly)) {
    out.problems.push_back("report does not match the grid");
  }
  if (path) {
    if (auto issue = verify_toolpath(*path, seq, grid, config.assembly)) {
      out.problems.push_back("toolpath: " + *issue);
    }
  }
  out.ok = out.problems.empty();
  return out;
}

PipelineResult run_pipeline(const TriangleMesh& raw, const PipelineConfig& config,
                            bool failure_handling) {
  const auto prepared = prepare_mesh(raw, config);
  const auto first_pass = stage_voxelize(prepared, config);
  auto outcome = stage_check(first_pass, &prepared, config, failure_handling);
  auto plan = stage_sequence(outcome.grid, failure_handling);
  PipelineResult result{std::move(outcome.grid), std::move(outcome.report), std::move(plan.sequence),
                        {}, {}};
  result.toolpath = stage_toolpath(result.sequence, result.grid, config);
  result.validation =
      stage_validate(result.grid, result.sequence, &result.report, &result.toolpath, config);
  return result;
}

std::string summarize(const PipelineResult& result) {
  std::ostringstream os;
  char buf[128];
  const auto& r = result.report;
  os << "checks before failure handling:\n";
  for (const auto& c : r.results) {
    std::snprintf(buf, sizeof buf, "  %-16s %s", std::string(to_string(c.check)).c_str(),
                  std::string(to_string(c.status)).c_str());
    os << buf;
    if (c.check == CheckKind::component_count) {
      os << " (" << c.count << " components)";
    } else if (!c.cells.empty()) {
      os << " (" << c.cells.size() << " cells)";
    }
    os << "\n";
  }
  os << "failure handling: " << (r.failure_handling ? "on" : "off") << "\n";
  for (const auto& m : r.modifications) {
    os << "  " << to_string(m.kind);
    if (m.kind == Modification::Kind::rescale) {
      std::snprintf(buf, sizeof buf, " #%d factor %.6f longest edge %.3f cm", m.iteration, m.factor,
                    m.longest_edge);
      os << buf;
    } else if (!m.cells.empty()) {
      os << " removed " << m.cells.size();
    }
    os << " -> " << m.component_count << " components\n";
  }
  os << "final checks:";
  for (const auto& c : r.final_results) os << " " << to_string(c.check) << "=" << to_string(c.status);
  os << "\n";
  if (r.final_scale) {
    std::snprintf(buf, sizeof buf, "scale: %.6f\n", *r.final_scale);
    os << buf;
  }
  os << "components: " << r.final_component_count << "\n";
  os << "sequencing: " << to_string(r.sequencing) << "\n";
  std::snprintf(buf, sizeof buf, "toolpath: %zu commands, v=%g a=%g (%s), estimated %.1f s\n",
                result.toolpath.commands.size(), result.toolpath.params.velocity,
                result.toolpath.params.acceleration,
                std::string(to_string(result.toolpath.params.ratio)).c_str(),
                estimate_duration(result.toolpath));
  os << buf;
  os << "validation: " << (result.validation.ok ? "ok" : "failed") << "\n";
  for (const auto& p : result.validation.problems) os << "  " << p << "\n";
  return os.str();
}

std::vector<std::filesystem::path> write_artifacts(const std::filesystem::path& dir,
                                                   const PipelineResult& result,
                                                   ToolpathFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  const std::vector<std::pair<std::filesystem::path, std::string>> files{
      {dir / ArtifactNames::grid, grid_to_json(result.grid)},
      {dir / ArtifactNames::report, report_to_json(result.report)},
      {dir / ArtifactNames::sequence, sequence_to_json(result.sequence)},
      {dir / (format == ToolpathFormat::json ? ArtifactNames::toolpath_json
                                             : ArtifactNames::toolpath_script),
       emit_toolpath(result.toolpath, format)},
      {dir / ArtifactNames::summary, summarize(result)},
  };
  std::vector<std::filesystem::path> written;
  for (const auto& [path, content] : files) {
    write_file(path, content);
    written.push_back(path);
  }
  return written;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace dfab

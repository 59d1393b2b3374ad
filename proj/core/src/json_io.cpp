#include "dfab/json_io.hpp"

#include <stdexcept>

#include "dfab/error.hpp"
#include "json.hpp"

namespace dfab {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json cell_json(const CellIndex& c) { return ordered_json::array({c.i, c.j, c.k}); }

CellIndex cell_from(const ordered_json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorCode::schema_mismatch, "cell must be [i, j, k]");
  return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
}

template <class Range>
ordered_json cells_json(const Range& cells) {
  auto out = ordered_json::array();
  for (const auto& c : cells) out.push_back(cell_json(c));
  return out;
}

std::vector<CellIndex> cells_from(const ordered_json& j) {
  if (!j.is_array()) throw Error(ErrorCode::schema_mismatch, "expected an array of cells");
  std::vector<CellIndex> out;
  out.reserve(j.size());
  for (const auto& c : j) out.push_back(cell_from(c));
  return out;
}

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

// Runs a reader, turning any JSON-library failure into schema_mismatch.
template <class F>
auto reading(std::string_view what, F&& body) {
  try {
    return body();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::schema_mismatch, std::string(what) + ": " + e.what());
  }
}

template <class Enum, std::size_t N>
Enum enum_from(const std::string& name, const std::array<Enum, N>& values) {
  for (const auto v : values) {
    if (to_string(v) == name) return v;
  }
  throw Error(ErrorCode::schema_mismatch, "unknown value '" + name + "'");
}

constexpr std::array<CheckStatus, 2> kStatuses{CheckStatus::passed, CheckStatus::failed};
constexpr std::array<Modification::Kind, 4> kModKinds{
    Modification::Kind::rescale, Modification::Kind::remove_overhang,
    Modification::Kind::truncate_stack, Modification::Kind::connectivity_sort};
constexpr std::array<SequencingMethod, 2> kMethods{SequencingMethod::naive,
                                                   SequencingMethod::connectivity};

ordered_json statuses_json(const std::array<CheckResult, 4>& results) {
  ordered_json out = ordered_json::object();
  for (const auto& r : results) out[std::string(to_string(r.check))] = to_string(r.status);
  return out;
}

ordered_json details_json(const std::array<CheckResult, 4>& results) {
  ordered_json out = ordered_json::object();
  for (const auto& r : results) {
    out[std::string(to_string(r.check))] = {{"count", r.count}, {"cells", cells_json(r.cells)}};
  }
  return out;
}

std::array<CheckResult, 4> results_from(const ordered_json& statuses, const ordered_json& details) {
  std::array<CheckResult, 4> out;
  for (std::size_t n = 0; n < kAllChecks.size(); ++n) {
    const std::string name(to_string(kAllChecks[n]));
    out[n].check = kAllChecks[n];
    out[n].status = enum_from(statuses.at(name).get<std::string>(), kStatuses);
    out[n].count = details.at(name).at("count").get<std::size_t>();
    out[n].cells = cells_from(details.at(name).at("cells"));
  }
  return out;
}

}  // namespace

std::string grid_to_json(const OccupancyGrid& grid) {
  const auto& s = grid.spec();
  ordered_json doc;
  doc["cell_size_cm"] = s.cell_size;
  doc["origin_cm"] = {s.origin.x, s.origin.y, s.origin.z};
  doc["dims"] = {s.dims[0], s.dims[1], s.dims[2]};
  doc["occupied"] = cells_json(grid);
  return dump(doc);
}

OccupancyGrid grid_from_json(std::string_view text) {
  return reading("grid JSON", [&] {
    const auto doc = ordered_json::parse(text);
    GridSpec spec;
    spec.cell_size = doc.at("cell_size_cm").get<double>();
    const auto& o = doc.at("origin_cm");
    const auto& d = doc.at("dims");
    if (o.size() != 3 || d.size() != 3) {
      throw Error(ErrorCode::schema_mismatch, "origin_cm and dims need three entries");
    }
    spec.origin = {o[0].get<double>(), o[1].get<double>(), o[2].get<double>()};
    spec.dims = {d[0].get<int>(), d[1].get<int>(), d[2].get<int>()};
    if (!(spec.cell_size > 0.0) || spec.dims[0] < 1 || spec.dims[1] < 1 || spec.dims[2] < 1) {
      throw Error(ErrorCode::schema_mismatch, "cell size and dims must be positive");
    }
    OccupancyGrid grid(spec);
    for (const auto& c : cells_from(doc.at("occupied"))) {
      try {
        grid.insert(c);
      } catch (const std::out_of_range&) {
        throw Error(ErrorCode::schema_mismatch, "occupied cell outside dims");
      }
    }
    return grid;
  });
}

std::string sequence_to_json(const AssemblySequence& seq) {
  ordered_json doc;
  doc["cells"] = cells_json(seq.cells);
  return dump(doc);
}

AssemblySequence sequence_from_json(std::string_view text) {
  return reading("sequence JSON", [&] {
    const auto doc = ordered_json::parse(text);
    return AssemblySequence{cells_from(doc.at("cells"))};
  });
}

std::string report_to_json(const FeasibilityReport& report) {
  ordered_json doc;
  doc["checks"] = statuses_json(report.results);
  doc["final_checks"] = statuses_json(report.final_results);
  doc["modifications"] = ordered_json::array();
  for (const auto& m : report.modifications) {
    ordered_json entry;
    entry["kind"] = to_string(m.kind);
    entry["iteration"] = m.iteration;
    entry["factor"] = m.factor;
    entry["longest_edge_cm"] = m.longest_edge;
    entry["component_count"] = m.component_count;
    entry["cells"] = cells_json(m.cells);
    doc["modifications"].push_back(std::move(entry));
  }
  doc["final_component_count"] = report.final_component_count;
  doc["failure_handling"] = report.failure_handling;
  doc["sequencing"] = to_string(report.sequencing);
  doc["fit_scale"] = report.fit_scale ? ordered_json(*report.fit_scale) : ordered_json();
  doc["final_scale"] = report.final_scale ? ordered_json(*report.final_scale) : ordered_json();
  if (report.repair) {
    const auto& r = *report.repair;
    doc["repair"] = {{"welded_vertices", r.welded_vertices},
                     {"removed_degenerate", r.removed_degenerate},
                     {"removed_duplicate", r.removed_duplicate},
                     {"removed_unreferenced", r.removed_unreferenced},
                     {"flipped_triangles", r.flipped_triangles},
                     {"manifold", r.manifold}};
  } else {
    doc["repair"] = nullptr;
  }
  doc["details"] = details_json(report.results);
  doc["final_details"] = details_json(report.final_results);
  return dump(doc);
}

FeasibilityReport report_from_json(std::string_view text) {
  return reading("report JSON", [&] {
    const auto doc = ordered_json::parse(text);
    FeasibilityReport report;
    report.results = results_from(doc.at("checks"), doc.at("details"));
    report.final_results = results_from(doc.at("final_checks"), doc.at("final_details"));
    for (const auto& entry : doc.at("modifications")) {
      Modification m;
      m.kind = enum_from(entry.at("kind").get<std::string>(), kModKinds);
      m.iteration = entry.at("iteration").get<int>();
      m.factor = entry.at("factor").get<double>();
      m.longest_edge = entry.at("longest_edge_cm").get<double>();
      m.component_count = entry.at("component_count").get<std::size_t>();
      m.cells = cells_from(entry.at("cells"));
      report.modifications.push_back(std::move(m));
    }
    report.final_component_count = doc.at("final_component_count").get<std::size_t>();
    report.failure_handling = doc.at("failure_handling").get<bool>();
    report.sequencing = enum_from(doc.at("sequencing").get<std::string>(), kMethods);
    if (!doc.at("fit_scale").is_null()) report.fit_scale = doc.at("fit_scale").get<double>();
    if (!doc.at("final_scale").is_null()) report.final_scale = doc.at("final_scale").get<double>();
    if (const auto& r = doc.at("repair"); !r.is_null()) {
      report.repair = RepairSummary{r.at("welded_vertices").get<std::size_t>(),
                                    r.at("removed_degenerate").get<std::size_t>(),
                                    r.at("removed_duplicate").get<std::size_t>(),
                                    r.at("removed_unreferenced").get<std::size_t>(),
                                    r.at("flipped_triangles").get<std::size_t>(),
                                    r.at("manifold").get<bool>()};
    }
    return report;
  });
}

std::string simulation_to_json(const SimulationReport& report) {
  ordered_json doc;
  doc["ok"] = report.ok;
  doc["first_failure"] = report.first_failure ? ordered_json(*report.first_failure) : ordered_json();
  doc["steps"] = ordered_json::array();
  for (const auto& s : report.steps) {
    doc["steps"].push_back({{"cell", cell_json(s.cell)},
                            {"supported", s.supported},
                            {"corridor_clear", s.corridor_clear},
                            {"plane_clear", s.plane_clear}});
  }
  return dump(doc);
}

}  // namespace dfab

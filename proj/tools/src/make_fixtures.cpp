// Regenerates the fixture meshes and mock manifest used by the tests.
#include <filesystem>
#include <iostream>

#include "dfab/mesh_io.hpp"
#include "dfab/pipeline.hpp"
#include "dfab_tools/fixtures.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <output-dir>\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  std::string manifest = "{\n";
  bool first = true;
  for (const auto& f : dfab::fixtures::all()) {
    const auto bytes = dfab::write_stl_binary(dfab::fixtures::mesh(f));
    const auto path = dir / (f.name + ".stl");
    dfab::write_file(path, {reinterpret_cast<const char*>(bytes.data()), bytes.size()});
    manifest += std::string(first ? "" : ",\n") + "  \"" + f.name + "\": \"" + f.name + ".stl\"";
    first = false;
    std::cout << path.string() << "\n";
  }
  manifest += ",\n  \"coffee table\": \"table.stl\",\n  \"simple stool\": \"stool.stl\"\n}\n";
  dfab::write_file(dir / "mock_manifest.json", manifest);
  return 0;
}

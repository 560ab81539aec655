// Regenerates the shipped corpus from the built-in definitions:
//   corpusgen [output-dir]   (default: corpus)
// writes <dir>/fans/<name>.json and <dir>/varieties/<name>.json.

#include <filesystem>
#include <iostream>
#include <string>

#include "eulerchar/corpus.hpp"
#include "eulerchar/json_io.hpp"

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  std::string dir = argc > 1 ? argv[1] : "corpus";
  try {
    fs::create_directories(fs::path(dir) / "fans");
    fs::create_directories(fs::path(dir) / "varieties");
    auto fans = eulerchar::corpus::standard_fans();
    for (const auto& nf : fans) {
      auto path = fs::path(dir) / "fans" / (nf.file + ".json");
      eulerchar::write_file(path.string(), eulerchar::fan_json(nf.fan));
    }
    auto varieties = eulerchar::corpus::standard_varieties();
    for (const auto& nv : varieties) {
      auto path = fs::path(dir) / "varieties" / (nv.file + ".json");
      eulerchar::write_file(path.string(), eulerchar::variety_json(nv.variety));
    }
    std::cout << "wrote " << fans.size() << " fans and " << varieties.size()
              << " varieties under " << dir << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

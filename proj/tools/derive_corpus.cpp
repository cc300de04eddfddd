#include <filesystem>
#include <iostream>

#include "toric/corpus.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: derive-corpus OUTDIR\n";
    return 2;
  }
  const std::filesystem::path root = argv[1];
  try {
    for (const auto& file : toric::corpus_files()) {
      const auto path = root / file.path;
      std::filesystem::create_directories(path.parent_path());
      toric::write_text_file(path.string(), toric::canonical_dump(file.content));
      std::cout << path.string() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

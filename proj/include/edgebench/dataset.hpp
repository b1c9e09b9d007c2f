// BIPED-style sample ingestion: a tab-separated manifest pairs image files
// with ground-truth rasters by id. Relative paths resolve against the
// manifest's directory; EDGEBENCH_DATA names the default dataset root.
#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "edgebench/image.hpp"
#include "edgebench/image_io.hpp"

namespace edgebench {

struct SampleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ManifestEntry {
  std::string id;
  std::string image_path;
  std::string gt_path;
};

struct Manifest {
  std::string root;
  std::vector<ManifestEntry> entries;
};

struct SamplePair {
  std::string id;
  GrayImage image;
  BinaryEdgeMap gt;
  std::string image_path;
  std::string gt_path;
};

inline std::string default_data_root() {
  const char* env = std::getenv("EDGEBENCH_DATA");
  return env ? std::string(env) : std::string();
}

// One sample per line: id<TAB>image_path<TAB>gt_path. Blank lines and
// lines starting with '#' are ignored. Ids must be unique and every
// referenced file must exist.
inline Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot open manifest: " + path);

  Manifest m;
  m.root = std::filesystem::path(path).parent_path().string();

  auto resolve = [&m](const std::string& p) {
    std::filesystem::path fp(p);
    if (fp.is_absolute() || m.root.empty()) return p;
    return (std::filesystem::path(m.root) / fp).string();
  };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    std::istringstream fields(line);
    ManifestEntry e;
    if (!std::getline(fields, e.id, '\t') ||
        !std::getline(fields, e.image_path, '\t') ||
        !std::getline(fields, e.gt_path, '\t'))
      throw FormatError("manifest line " + std::to_string(lineno) +
                        ": expected id<TAB>image<TAB>gt");
    e.image_path = resolve(e.image_path);
    e.gt_path = resolve(e.gt_path);

    for (const auto& prev : m.entries)
      if (prev.id == e.id)
        throw FormatError("manifest: duplicate sample id '" + e.id + "'");
    if (!std::filesystem::exists(e.image_path))
      throw NotFoundError("manifest sample '" + e.id +
                          "': missing image " + e.image_path);
    if (!std::filesystem::exists(e.gt_path))
      throw NotFoundError("manifest sample '" + e.id +
                          "': missing ground truth " + e.gt_path);
    m.entries.push_back(std::move(e));
  }
  return m;
}

inline SamplePair load_pair(const ManifestEntry& e, int gt_cutoff = 127) {
  SamplePair s;
  s.id = e.id;
  s.image_path = e.image_path;
  s.gt_path = e.gt_path;
  s.image = load_image(e.image_path);
  s.gt = load_ground_truth(e.gt_path, gt_cutoff);
  if (!s.image.same_size(s.gt))
    throw SampleError("sample '" + e.id +
                      "': image/ground-truth dimension mismatch (" +
                      std::to_string(s.image.rows()) + "x" +
                      std::to_string(s.image.cols()) + " vs " +
                      std::to_string(s.gt.rows()) + "x" +
                      std::to_string(s.gt.cols()) + ")");
  return s;
}

// Loads every manifest entry, failing fast on the first bad pair.
inline std::vector<SamplePair> pair_samples(const Manifest& m,
                                            int gt_cutoff = 127) {
  std::vector<SamplePair> out;
  out.reserve(m.entries.size());
  for (const auto& e : m.entries) out.push_back(load_pair(e, gt_cutoff));
  return out;
}

}  // namespace edgebench

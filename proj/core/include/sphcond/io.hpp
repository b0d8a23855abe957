#pragma once

#include <map>
#include <string>
#include <vector>

#include "sphcond/geometry.hpp"
#include "sphcond/optimizer.hpp"
#include "sphcond/voronoi.hpp"

namespace sphcond {

/// PointSet CSV: header "theta,phi", radians, 12 significant digits, plus a
/// JSON sidecar {"convention": "from_z"|"above_xy", "labels": [...]} at
/// <stem>.json next to <stem>.csv.
void save_pointset(const PointSet& ps, const std::string& csv_path);
PointSet load_pointset(const std::string& csv_path);  // sidecar optional

std::string convention_name(Convention c);
Convention convention_from_name(const std::string& name);

/// Machine-readable trace: all records plus eta_star / kappa_star / selection.
std::string trace_to_json(const TransitionTrace& trace, int indent = 2);

std::string dmeasure_to_json(const DMeasureReport& report, std::size_t q);

/// SHA-256 hex digest (used for manifest config hashes and file digests).
std::string sha256_hex(const std::string& bytes);
std::string sha256_file_hex(const std::string& path);

struct RunManifest {
  std::string command_line;
  std::string tool_version;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::map<std::string, std::string> input_digests;   // path -> sha256
  std::map<std::string, std::string> output_digests;  // path -> sha256
  std::string generated_at;  // ISO-8601; excluded from determinism guarantees
};

RunManifest make_manifest(const std::string& command_line, std::uint64_t seed,
                          const std::vector<std::string>& input_paths);
void add_output_digest(RunManifest& m, const std::string& path);
std::string manifest_to_json(const RunManifest& m, int indent = 2);

}  // namespace sphcond

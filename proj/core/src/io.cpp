#include "sphcond/io.hpp"

#include <array>
#include <cstdint>
#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace sphcond {

namespace {

using nlohmann::json;

std::string sidecar_path(const std::string& csv_path) {
  const auto dot = csv_path.rfind('.');
  const std::string stem = dot == std::string::npos ? csv_path : csv_path.substr(0, dot);
  return stem + ".json";
}

std::string format_sig(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// ------------------------------------------------------------- SHA-256

struct Sha256 {
  std::array<std::uint32_t, 8> h = {0x6a09e667u, 0xbb67ae85u, 0x3c6ef372u, 0xa54ff53au,
                                    0x510e527fu, 0x9b05688cu, 0x1f83d9abu, 0x5be0cd19u};
  std::array<std::uint8_t, 64> block{};
  std::size_t block_len = 0;
  std::uint64_t total = 0;

  static std::uint32_t rotr(std::uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

  void compress(const std::uint8_t* p) {
    static constexpr std::uint32_t k[64] = {
        0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
        0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
        0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
        0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
        0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
        0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
        0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
        0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
        0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
        0xc67178f2};
    std::uint32_t w[64];
    for (int i = 0; i < 16; ++i)
      w[i] = (std::uint32_t(p[4 * i]) << 24) | (std::uint32_t(p[4 * i + 1]) << 16) |
             (std::uint32_t(p[4 * i + 2]) << 8) | std::uint32_t(p[4 * i + 3]);
    for (int i = 16; i < 64; ++i) {
      const std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
      const std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
      w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    auto a = h;
    for (int i = 0; i < 64; ++i) {
      const std::uint32_t s1 = rotr(a[4], 6) ^ rotr(a[4], 11) ^ rotr(a[4], 25);
      const std::uint32_t ch = (a[4] & a[5]) ^ (~a[4] & a[6]);
      const std::uint32_t t1 = a[7] + s1 + ch + k[i] + w[i];
      const std::uint32_t s0 = rotr(a[0], 2) ^ rotr(a[0], 13) ^ rotr(a[0], 22);
      const std::uint32_t maj = (a[0] & a[1]) ^ (a[0] & a[2]) ^ (a[1] & a[2]);
      const std::uint32_t t2 = s0 + maj;
      a[7] = a[6];
      a[6] = a[5];
      a[5] = a[4];
      a[4] = a[3] + t1;
      a[3] = a[2];
      a[2] = a[1];
      a[1] = a[0];
      a[0] = t1 + t2;
    }
    for (int i = 0; i < 8; ++i) h[i] += a[i];
  }

  void update(const char* data, std::size_t len) {
    total += len;
    while (len > 0) {
      const std::size_t take = std::min(len, block.size() - block_len);
      std::memcpy(block.data() + block_len, data, take);
      block_len += take;
      data += take;
      len -= take;
      if (block_len == block.size()) {
        compress(block.data());
        block_len = 0;
      }
    }
  }

  std::string hex() {
    const std::uint64_t bits = total * 8;
    const char pad0 = static_cast<char>(0x80);
    update(&pad0, 1);
    const char zero = 0;
    while (block_len != 56) update(&zero, 1);
    for (int i = 7; i >= 0; --i) {
      const char b = static_cast<char>((bits >> (8 * i)) & 0xff);
      update(&b, 1);
    }
    std::ostringstream os;
    for (auto v : h) {
      char buf[9];
      std::snprintf(buf, sizeof(buf), "%08x", v);
      os << buf;
    }
    return os.str();
  }
};

}  // namespace

std::string convention_name(Convention c) {
  return c == Convention::FromZAxis ? "from_z" : "above_xy";
}

Convention convention_from_name(const std::string& name) {
  if (name == "from_z") return Convention::FromZAxis;
  if (name == "above_xy") return Convention::AboveXyPlane;
  throw std::invalid_argument("unknown convention '" + name + "'");
}

void save_pointset(const PointSet& ps, const std::string& csv_path) {
  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot write " + csv_path);
  csv << "theta,phi\n";
  for (const auto& d : ps.directions)
    csv << format_sig(d.theta) << "," << format_sig(d.phi) << "\n";

  json side;
  side["convention"] = convention_name(ps.convention);
  if (ps.has_labels()) side["labels"] = ps.labels;
  std::ofstream js(sidecar_path(csv_path));
  js << side.dump(2) << "\n";
}

PointSet load_pointset(const std::string& csv_path) {
  std::ifstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot read " + csv_path);
  PointSet ps;
  std::string line;
  if (!std::getline(csv, line)) throw std::runtime_error(csv_path + ": empty file");
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error(csv_path + ": malformed row");
    Direction d;
    d.theta = std::stod(line.substr(0, comma));
    d.phi = wrap_azimuth(std::stod(line.substr(comma + 1)));
    ps.directions.push_back(d);
  }
  std::ifstream js(sidecar_path(csv_path));
  if (js) {
    json side = json::parse(js);
    if (side.contains("convention"))
      ps.convention = convention_from_name(side["convention"].get<std::string>());
    if (side.contains("labels")) ps.labels = side["labels"].get<std::vector<int>>();
  }
  validate(ps);
  return ps;
}

std::string trace_to_json(const TransitionTrace& trace, int indent) {
  json out;
  out["r"] = trace.transition_count();
  out["termination"] = trace.termination;
  out["infeasible"] = trace.infeasible_at_start;
  out["records"] = json::array();
  for (const auto& rec : trace.records) {
    json jr;
    jr["index"] = rec.index;
    jr["eta"] = rec.eta;
    jr["lambda_min"] = rec.lambda_min;
    jr["lambda_max"] = rec.lambda_max;
    jr["kappa"] = rec.kappa;
    jr["selected"] = rec.mask.indices();
    out["records"].push_back(std::move(jr));
  }
  if (!trace.records.empty()) {
    out["eta_star"] = trace.eta_star;
    out["kappa_star"] = trace.kappa_star;
    out["selected_indices"] = trace.best_mask.indices();
  }
  return out.dump(indent);
}

std::string dmeasure_to_json(const DMeasureReport& report, std::size_t q) {
  json out;
  out["nu"] = report.nu;
  out["d"] = report.d_measure;
  out["q"] = q;
  return out.dump(2);
}

std::string sha256_hex(const std::string& bytes) {
  Sha256 s;
  s.update(bytes.data(), bytes.size());
  return s.hex();
}

std::string sha256_file_hex(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  Sha256 s;
  char buf[65536];
  while (in) {
    in.read(buf, sizeof(buf));
    s.update(buf, static_cast<std::size_t>(in.gcount()));
  }
  return s.hex();
}

RunManifest make_manifest(const std::string& command_line, std::uint64_t seed,
                          const std::vector<std::string>& input_paths) {
  RunManifest m;
  m.command_line = command_line;
  m.tool_version =
#ifdef SPHCOND_VERSION
      SPHCOND_VERSION;
#else
      "dev";
#endif
  m.seed = seed;
  m.config_hash = sha256_hex(command_line + "#" + std::to_string(seed));
  for (const auto& p : input_paths) m.input_digests[p] = sha256_file_hex(p);
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&now));
  m.generated_at = buf;
  return m;
}

void add_output_digest(RunManifest& m, const std::string& path) {
  m.output_digests[path] = sha256_file_hex(path);
}

std::string manifest_to_json(const RunManifest& m, int indent) {
  json out;
  out["command_line"] = m.command_line;
  out["tool_version"] = m.tool_version;
  out["seed"] = m.seed;
  out["config_hash"] = m.config_hash;
  out["inputs"] = m.input_digests;
  out["outputs"] = m.output_digests;
  out["generated_at"] = m.generated_at;
  return out.dump(indent);
}

}  // namespace sphcond

#pragma once

// Persistence: CSV state/record/table formats, run configuration, and the
// reproducibility manifest.

#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "analysis.hpp"

namespace gpspec {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// 17 significant digits: bit-faithful double round trips.
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// --- SHA-256 (for manifest content hashes) ----------------------------------

namespace detail {

inline std::uint32_t rotr(std::uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

inline std::string sha256_hex(const std::string& data) {
  static const std::uint32_t K[64] = {
      0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1,
      0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3,
      0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786,
      0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
      0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
      0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13,
      0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
      0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
      0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a,
      0x5b9cca4f, 0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
      0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};
  std::array<std::uint32_t, 8> H = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                                    0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
  std::string msg = data;
  const std::uint64_t bitlen = std::uint64_t(data.size()) * 8;
  msg.push_back(char(0x80));
  while (msg.size() % 64 != 56) msg.push_back(char(0));
  for (int i = 7; i >= 0; --i) msg.push_back(char((bitlen >> (8 * i)) & 0xff));

  std::uint32_t w[64];
  for (std::size_t off = 0; off < msg.size(); off += 64) {
    for (int i = 0; i < 16; ++i)
      w[i] = (std::uint32_t(std::uint8_t(msg[off + 4 * i])) << 24) |
             (std::uint32_t(std::uint8_t(msg[off + 4 * i + 1])) << 16) |
             (std::uint32_t(std::uint8_t(msg[off + 4 * i + 2])) << 8) |
             std::uint32_t(std::uint8_t(msg[off + 4 * i + 3]));
    for (int i = 16; i < 64; ++i) {
      const std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
      const std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
      w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    auto [a, b, c, d, e, f, g, h] = H;
    for (int i = 0; i < 64; ++i) {
      const std::uint32_t S1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
      const std::uint32_t ch = (e & f) ^ (~e & g);
      const std::uint32_t t1 = h + S1 + ch + K[i] + w[i];
      const std::uint32_t S0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
      const std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
      const std::uint32_t t2 = S0 + maj;
      h = g; g = f; f = e; e = d + t1;
      d = c; c = b; b = a; a = t1 + t2;
    }
    H[0] += a; H[1] += b; H[2] += c; H[3] += d;
    H[4] += e; H[5] += f; H[6] += g; H[7] += h;
  }
  std::ostringstream os;
  for (std::uint32_t v : H) {
    char buf[9];
    std::snprintf(buf, sizeof(buf), "%08x", v);
    os << buf;
  }
  return os.str();
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace detail

// --- SpectralState CSV -------------------------------------------------------

inline void write_state_csv(std::ostream& os, const SpectralState& s) {
  const HermiteBasis& b = *s.basis;
  for (int a = 1; a <= b.dim; ++a) os << "k_" << a << ",";
  os << "re,im\n";
  int k[3];
  for (std::size_t f = 0; f < s.coeffs.size(); ++f) {
    b.unflatten(f, k);
    for (int a = 0; a < b.dim; ++a) os << k[a] << ",";
    os << fmt17(s.coeffs[f].real()) << "," << fmt17(s.coeffs[f].imag()) << "\n";
  }
}

inline void write_state_csv(const std::filesystem::path& path, const SpectralState& s) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  write_state_csv(os, s);
}

// Reader rejects rows whose indices exceed the basis band limit.
inline SpectralState read_state_csv(std::istream& is, BasisPtr basis) {
  SpectralState s = zero_state(basis);
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("state CSV: missing header");
  {
    std::ostringstream expect;
    for (int a = 1; a <= basis->dim; ++a) expect << "k_" << a << ",";
    expect << "re,im";
    if (line != expect.str())
      throw std::runtime_error("state CSV: bad header \"" + line + "\"");
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::size_t flat = 0;
    for (int a = 0; a < basis->dim; ++a) {
      if (!std::getline(row, cell, ',')) throw std::runtime_error("state CSV: short row");
      const long k = std::stol(cell);
      if (k < 0 || k >= basis->n_modes)
        throw std::runtime_error("state CSV: mode index " + cell +
                                 " out of range for n_modes = " +
                                 std::to_string(basis->n_modes));
      flat = flat * basis->n_modes + std::size_t(k);
    }
    if (!std::getline(row, cell, ',')) throw std::runtime_error("state CSV: short row");
    const double re = std::stod(cell);
    if (!std::getline(row, cell, ',')) throw std::runtime_error("state CSV: short row");
    const double im = std::stod(cell);
    s.coeffs[flat] = cplx{re, im};
  }
  return s;
}

inline SpectralState read_state_csv(const std::filesystem::path& path, BasisPtr basis) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  return read_state_csv(is, basis);
}

// --- RunRecord and table CSVs ------------------------------------------------

inline void write_run_record_csv(const std::filesystem::path& path, const RunRecord& r) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << "t,mass,energy,h1,linf_grid\n";
  for (std::size_t i = 0; i < r.times.size(); ++i)
    os << fmt17(r.times[i]) << "," << fmt17(r.mass_series[i]) << ","
       << fmt17(r.energy_series[i]) << "," << fmt17(r.h1_series[i]) << ","
       << fmt17(r.linf_grid[i]) << "\n";
}

inline void write_weak_limit_csv(const std::filesystem::path& path,
                                 const std::vector<WeakLimitRow>& rows) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << "n,eps_n,zn_linf_h1,ratio\n";
  for (const auto& r : rows)
    os << r.n << "," << fmt17(r.eps_n) << "," << fmt17(r.zn_linf_h1) << ","
       << fmt17(r.ratio) << "\n";
}

inline void write_reach_csv(const std::filesystem::path& path,
                            const std::vector<ReachSample>& samples) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << "sample_id,t,r,lr_norm,h1\n";
  for (std::size_t i = 0; i < samples.size(); ++i)
    os << i << "," << fmt17(samples[i].t) << "," << fmt17(samples[i].r) << ","
       << fmt17(samples[i].lr) << "," << fmt17(samples[i].h1) << "\n";
}

inline void write_covering_csv(const std::filesystem::path& path,
                               const std::vector<std::pair<double, int>>& curve) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << "eps,net_size\n";
  for (const auto& [eps, n] : curve) os << fmt17(eps) << "," << n << "\n";
}

// --- Run configuration --------------------------------------------------------

struct RunConfig {
  int dim = 1;
  int n_modes = 16;
  int sigma = 0;
  double T = 1.0;
  double dt = 1e-3;
  std::string integrator = "strang";
  nlohmann::json control = {{"kind", "zero"}};
  nlohmann::json initial_state = "ground";
  std::uint64_t seed = 1;
  std::string output_dir = "out";
  // optional knobs
  double picard_tol = 1e-10;
  int picard_max_iter = 60;
  int snapshot_stride = 0;  // 0: pick ~10 snapshots automatically
};

inline nlohmann::json to_json(const RunConfig& c) {
  return nlohmann::json{{"dim", c.dim},
                        {"n_modes", c.n_modes},
                        {"sigma", c.sigma},
                        {"T", c.T},
                        {"dt", c.dt},
                        {"integrator", c.integrator},
                        {"control", c.control},
                        {"initial_state", c.initial_state},
                        {"seed", c.seed},
                        {"output_dir", c.output_dir},
                        {"picard_tol", c.picard_tol},
                        {"picard_max_iter", c.picard_max_iter},
                        {"snapshot_stride", c.snapshot_stride}};
}

// Parses and validates every child-module precondition up front; rejects
// unknown keys.
inline RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  static const char* allowed[] = {"dim",        "n_modes",       "sigma",
                                  "T",          "dt",            "integrator",
                                  "control",    "initial_state", "seed",
                                  "output_dir", "picard_tol",    "picard_max_iter",
                                  "snapshot_stride"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed)
      if (it.key() == a) ok = true;
    if (!ok) throw ConfigError("config: unknown key \"" + it.key() + "\"");
  }
  RunConfig c;
  try {
    if (j.contains("dim")) c.dim = j.at("dim").get<int>();
    if (j.contains("n_modes")) c.n_modes = j.at("n_modes").get<int>();
    if (j.contains("sigma")) c.sigma = j.at("sigma").get<int>();
    if (j.contains("T")) c.T = j.at("T").get<double>();
    if (j.contains("dt")) c.dt = j.at("dt").get<double>();
    if (j.contains("integrator")) c.integrator = j.at("integrator").get<std::string>();
    if (j.contains("control")) c.control = j.at("control");
    if (j.contains("initial_state")) c.initial_state = j.at("initial_state");
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("picard_tol")) c.picard_tol = j.at("picard_tol").get<double>();
    if (j.contains("picard_max_iter"))
      c.picard_max_iter = j.at("picard_max_iter").get<int>();
    if (j.contains("snapshot_stride"))
      c.snapshot_stride = j.at("snapshot_stride").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  if (c.dim < 1 || c.dim > 3) throw ConfigError("config: field \"dim\" must be 1..3");
  if (c.n_modes < 2 || c.n_modes % 2 != 0)
    throw ConfigError("config: field \"n_modes\" must be even and >= 2");
  if (c.sigma != 0 && c.sigma != 1)
    throw ConfigError("config: field \"sigma\" must be 0 or 1");
  if (!(c.T > 0.0)) throw ConfigError("config: field \"T\" must be > 0");
  if (!(c.dt > 0.0)) throw ConfigError("config: field \"dt\" must be > 0");
  if (c.dt > 0.1) throw ConfigError("config: field \"dt\" must be <= 0.1");
  if (c.integrator != "strang" && c.integrator != "picard")
    throw ConfigError("config: field \"integrator\" must be \"strang\" or \"picard\"");
  if (!(c.picard_tol > 0.0))
    throw ConfigError("config: field \"picard_tol\" must be > 0");
  if (c.picard_max_iter < 1)
    throw ConfigError("config: field \"picard_max_iter\" must be >= 1");
  if (c.snapshot_stride < 0)
    throw ConfigError("config: field \"snapshot_stride\" must be >= 0");
  try {
    control_from_json(c.control);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: field \"control\": ") + e.what());
  }
  if (!(c.initial_state.is_string() && c.initial_state.get<std::string>() == "ground") &&
      !(c.initial_state.is_object() &&
        (c.initial_state.contains("file") || c.initial_state.contains("coeffs"))))
    throw ConfigError(
        "config: field \"initial_state\" must be \"ground\", {\"file\":...} or "
        "{\"coeffs\":[[k...,re,im],...]}");
  return c;
}

inline RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open " + path.string());
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: parse error: ") + e.what());
  }
  return config_from_json(j);
}

inline SpectralState initial_state_from_config(const RunConfig& c, BasisPtr basis) {
  if (c.initial_state.is_string()) return ground_state(basis);
  if (c.initial_state.contains("file"))
    return read_state_csv(c.initial_state.at("file").get<std::string>(), basis);
  SpectralState s = zero_state(basis);
  for (const auto& row : c.initial_state.at("coeffs")) {
    if (!row.is_array() || int(row.size()) != c.dim + 2)
      throw ConfigError("config: initial_state coeffs rows need k_1..k_d,re,im");
    std::size_t flat = 0;
    for (int a = 0; a < c.dim; ++a) {
      const long k = row[a].get<long>();
      if (k < 0 || k >= c.n_modes)
        throw ConfigError("config: initial_state mode index out of range");
      flat = flat * c.n_modes + std::size_t(k);
    }
    s.coeffs[flat] = cplx{row[c.dim].get<double>(), row[c.dim + 1].get<double>()};
  }
  return s;
}

// Manifest: config echo plus a content hash for every output file.
inline void write_manifest(const std::filesystem::path& dir, const RunConfig& cfg,
                           const std::vector<std::string>& files, double wall_time_s) {
  nlohmann::json outputs = nlohmann::json::array();
  for (const std::string& f : files)
    outputs.push_back({{"path", f}, {"sha256", detail::sha256_hex(detail::read_file(dir / f))}});
  nlohmann::json m{{"config", to_json(cfg)},
                   {"outputs", outputs},
                   {"wall_time_s", wall_time_s}};
  std::ofstream os(dir / "manifest.json");
  if (!os) throw std::runtime_error("cannot write manifest.json");
  os << m.dump(2) << "\n";
}

}  // namespace gpspec

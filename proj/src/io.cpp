#include "tfe/io.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace tfe::io {

std::string format_double(double x) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << x;
  return os.str();
}

// ---------------------------------------------------------------------------
// SHA-256 (FIPS 180-4), self-contained.

namespace {

constexpr uint32_t kK[64] = {
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

inline uint32_t rotr(uint32_t v, int s) { return (v >> s) | (v << (32 - s)); }

void sha256_block(uint32_t h[8], const unsigned char* p) {
  uint32_t w[64];
  for (int i = 0; i < 16; ++i)
    w[i] = (uint32_t(p[4 * i]) << 24) | (uint32_t(p[4 * i + 1]) << 16) |
           (uint32_t(p[4 * i + 2]) << 8) | uint32_t(p[4 * i + 3]);
  for (int i = 16; i < 64; ++i) {
    const uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
    const uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
    w[i] = w[i - 16] + s0 + w[i - 7] + s1;
  }
  uint32_t a = h[0], b = h[1], c = h[2], d = h[3];
  uint32_t e = h[4], f = h[5], g = h[6], hh = h[7];
  for (int i = 0; i < 64; ++i) {
    const uint32_t S1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
    const uint32_t ch = (e & f) ^ (~e & g);
    const uint32_t t1 = hh + S1 + ch + kK[i] + w[i];
    const uint32_t S0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
    const uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
    const uint32_t t2 = S0 + maj;
    hh = g; g = f; f = e; e = d + t1;
    d = c; c = b; b = a; a = t1 + t2;
  }
  h[0] += a; h[1] += b; h[2] += c; h[3] += d;
  h[4] += e; h[5] += f; h[6] += g; h[7] += hh;
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  uint32_t h[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                   0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
  const auto* data = reinterpret_cast<const unsigned char*>(bytes.data());
  const size_t n = bytes.size();
  size_t i = 0;
  for (; i + 64 <= n; i += 64) sha256_block(h, data + i);
  unsigned char tail[128] = {0};
  const size_t rem = n - i;
  std::memcpy(tail, data + i, rem);
  tail[rem] = 0x80;
  const size_t total = (rem + 9 <= 64) ? 64 : 128;
  const uint64_t bits = uint64_t(n) * 8;
  for (int j = 0; j < 8; ++j)
    tail[total - 1 - j] = (unsigned char)(bits >> (8 * j));
  sha256_block(h, tail);
  if (total == 128) sha256_block(h, tail + 64);
  std::ostringstream os;
  os << std::hex << std::setfill('0');
  for (uint32_t v : h) os << std::setw(8) << v;
  return os.str();
}

// ---------------------------------------------------------------------------

void write_file(const std::string& path, const std::string& content) {
  std::filesystem::create_directories(
      std::filesystem::path(path).parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.write(content.data(), std::streamsize(content.size()));
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (size_t j = 0; j < header.size(); ++j) {
    if (j) out += ',';
    out += header[j];
  }
  out += '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("csv row width mismatch");
    for (size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += format_double(row[j]);
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// SVG line plot.

namespace {

std::string fmt_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

std::string render_svg(const std::string& title, const std::string& xlabel,
                       const std::string& ylabel,
                       const std::vector<PlotSeries>& series) {
  if (series.empty()) throw std::invalid_argument("render_svg: no series");
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size() || s.x.empty())
      throw std::invalid_argument("render_svg: bad series");
    for (double v : s.x) { xmin = std::min(xmin, v); xmax = std::max(xmax, v); }
    for (double v : s.y) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
  }
  if (xmax <= xmin) { xmax = xmin + 1; }
  if (ymax <= ymin) { ymax = ymin + 1; ymin -= 1; }
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const double W = 640, H = 480;
  const double ml = 72, mr = 24, mt = 42, mb = 58;
  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
  auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
         "height=\"480\" viewBox=\"0 0 640 480\">\n"
      << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  // axes box
  svg << "<rect x=\"" << fmt_coord(ml) << "\" y=\"" << fmt_coord(mt)
      << "\" width=\"" << fmt_coord(W - ml - mr) << "\" height=\""
      << fmt_coord(H - mt - mb)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  // ticks
  for (int k = 0; k <= 5; ++k) {
    const double xv = xmin + k * (xmax - xmin) / 5.0;
    const double yv = ymin + k * (ymax - ymin) / 5.0;
    svg << "<line x1=\"" << fmt_coord(px(xv)) << "\" y1=\"" << fmt_coord(H - mb)
        << "\" x2=\"" << fmt_coord(px(xv)) << "\" y2=\""
        << fmt_coord(H - mb + 5) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << fmt_coord(px(xv)) << "\" y=\""
        << fmt_coord(H - mb + 18)
        << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt_tick(xv)
        << "</text>\n";
    svg << "<line x1=\"" << fmt_coord(ml - 5) << "\" y1=\"" << fmt_coord(py(yv))
        << "\" x2=\"" << fmt_coord(ml) << "\" y2=\"" << fmt_coord(py(yv))
        << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << fmt_coord(ml - 8) << "\" y=\""
        << fmt_coord(py(yv) + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">" << fmt_tick(yv)
        << "</text>\n";
  }
  // labels
  svg << "<text x=\"" << fmt_coord((ml + W - mr) / 2) << "\" y=\"24\" "
         "font-size=\"14\" text-anchor=\"middle\">"
      << xml_escape(title) << "</text>\n";
  svg << "<text x=\"" << fmt_coord((ml + W - mr) / 2) << "\" y=\""
      << fmt_coord(H - 14) << "\" font-size=\"12\" text-anchor=\"middle\">"
      << xml_escape(xlabel) << "</text>\n";
  svg << "<text x=\"18\" y=\"" << fmt_coord((mt + H - mb) / 2)
      << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << fmt_coord((mt + H - mb) / 2) << ")\">" << xml_escape(ylabel)
      << "</text>\n";
  // series
  for (size_t si = 0; si < series.size(); ++si) {
    const char* color = kPalette[si % 6];
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < series[si].x.size(); ++i) {
      if (i) svg << ' ';
      svg << fmt_coord(px(series[si].x[i])) << ','
          << fmt_coord(py(series[si].y[i]));
    }
    svg << "\"/>\n";
  }
  // legend
  for (size_t si = 0; si < series.size(); ++si) {
    if (series[si].label.empty()) continue;
    const double lx = W - mr - 150, ly = mt + 14 + 16.0 * double(si);
    svg << "<line x1=\"" << fmt_coord(lx) << "\" y1=\"" << fmt_coord(ly - 4)
        << "\" x2=\"" << fmt_coord(lx + 24) << "\" y2=\"" << fmt_coord(ly - 4)
        << "\" stroke=\"" << kPalette[si % 6] << "\" stroke-width=\"1.5\"/>\n"
        << "<text x=\"" << fmt_coord(lx + 30) << "\" y=\"" << fmt_coord(ly)
        << "\" font-size=\"11\">" << xml_escape(series[si].label)
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

// ---------------------------------------------------------------------------

void Manifest::add_artifact(const std::string& dir, const std::string& name,
                            const std::string& content) {
  const std::string path = dir + "/" + name;
  write_file(path, content);
  artifacts_.emplace_back(name, sha256_hex(content));
}

void Manifest::set_diagnostic(const std::string& message) {
  diagnostic_ = message;
}

void Manifest::set_result(const std::string& key, const nlohmann::json& value) {
  results_[key] = value;
}

void Manifest::write(const std::string& dir, double wallclock_seconds) const {
  nlohmann::json j;
  j["config"] = config_;
  j["artifacts"] = nlohmann::json::array();
  for (const auto& [path, sha] : artifacts_)
    j["artifacts"].push_back({{"path", path}, {"sha256", sha}});
  j["versions"] = {
      {"compiler", __VERSION__},
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                    std::to_string(EIGEN_MAJOR_VERSION) + "." +
                    std::to_string(EIGEN_MINOR_VERSION)},
      {"json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                   std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                   std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
  j["wallclock"] = wallclock_seconds;
  if (!results_.empty()) j["results"] = results_;
  if (!diagnostic_.empty()) j["diagnostic"] = diagnostic_;
  write_file(dir + "/manifest.json", j.dump(2) + "\n");
}

}  // namespace tfe::io

#include "tlsw/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tlsw/error.hpp"

#ifndef TLSW_VERSION
#define TLSW_VERSION "0.0.0"
#endif

namespace tlsw {
namespace {

using nlohmann::json;

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '"')) {
    s.remove_suffix(1);
  }
  return s;
}

bool parse_number(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto line : split(text, '\n')) {
    if (!trim(line).empty()) out.push_back(line);
  }
  return out;
}

}  // namespace

const char* version() noexcept { return TLSW_VERSION; }

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) fail(ErrorCode::IoError, "failed writing '" + path.string() + "'");
}

json read_json(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ConfigError, path.string() + ": " + e.what());
  }
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

TimeSeries parse_series_csv(std::string_view text) {
  const auto lines = lines_of(text);
  TimeSeries x;
  std::size_t first = 0;
  std::size_t column = 0;
  if (lines.empty()) fail(ErrorCode::IoError, "series CSV is empty");
  const auto head = split(lines[0], ',');
  double probe = 0.0;
  const bool has_header = !parse_number(head.back(), probe);
  if (head.size() > 2) fail(ErrorCode::IoError, "series CSV must have one or two columns");
  if (has_header) first = 1;
  if (head.size() == 2) column = 1;
  std::vector<double> times;
  for (std::size_t i = first; i < lines.size(); ++i) {
    const auto cells = split(lines[i], ',');
    double v = 0.0;
    if (cells.size() != head.size() || !parse_number(cells[column], v)) {
      fail(ErrorCode::IoError, "line " + std::to_string(i + 1) + ": expected " +
                                   std::to_string(head.size()) + " numeric column(s)");
    }
    if (!std::isfinite(v)) fail(ErrorCode::IoError, "line " + std::to_string(i + 1) + ": non-finite value");
    x.values.push_back(v);
    if (column == 1) {
      double t = 0.0;
      if (parse_number(cells[0], t)) times.push_back(t);
    }
  }
  if (times.size() >= 2 && times.size() == x.values.size()) {
    x.origin = TimeOrigin{times[0], times[1] - times[0]};
  }
  return x;
}

TimeSeries read_series_csv(const std::filesystem::path& path) {
  return parse_series_csv(read_text(path));
}

std::string series_csv(const TimeSeries& x) {
  std::string out = "time_index,value\n";
  for (std::size_t t = 0; t < x.size(); ++t) {
    out += std::to_string(t) + ',' + format_double(x.values[t]) + '\n';
  }
  return out;
}

std::string spectrum_csv(const ScaleTimeArray& s) {
  std::string out = "scale,j,time_index,value\n";
  for (std::size_t lev = 1; lev <= s.levels(); ++lev) {
    const std::string prefix = std::to_string(lev) + ",-" + std::to_string(lev) + ',';
    for (std::size_t k = 0; k < s.length(); ++k) {
      out += prefix + std::to_string(k) + ',' + format_double(s(lev, k)) + '\n';
    }
  }
  return out;
}

ScaleTimeArray parse_spectrum_csv(std::string_view text) {
  const auto lines = lines_of(text);
  std::vector<std::array<double, 3>> rows;
  std::size_t levels = 0;
  std::size_t length = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split(lines[i], ',');
    double scale = 0.0, k = 0.0, v = 0.0, j = 0.0;
    if (cells.size() != 4 || !parse_number(cells[0], scale) || !parse_number(cells[1], j) ||
        !parse_number(cells[2], k) || !parse_number(cells[3], v) || scale < 1 || k < 0) {
      fail(ErrorCode::IoError, "spectrum CSV line " + std::to_string(i + 1) +
                                   ": expected scale,j,time_index,value");
    }
    rows.push_back({scale, k, v});
    levels = std::max(levels, static_cast<std::size_t>(scale));
    length = std::max(length, static_cast<std::size_t>(k) + 1);
  }
  if (rows.size() != levels * length) fail(ErrorCode::IoError, "spectrum CSV is not a full grid");
  ScaleTimeArray s(levels, length);
  for (const auto& r : rows) s(static_cast<std::size_t>(r[0]), static_cast<std::size_t>(r[1])) = r[2];
  return s;
}

std::string lacv_csv(const LacvEstimate& c) {
  std::string out = "time_index,lag,value\n";
  for (std::size_t t = 0; t < c.length; ++t) {
    for (std::size_t tau = 0; tau <= c.max_lag; ++tau) {
      out += std::to_string(t) + ',' + std::to_string(tau) + ',' + format_double(c(t, tau)) + '\n';
    }
  }
  return out;
}

std::string trend_csv(const TrendEstimate& t) {
  std::string out = "time_index,value,local_sd\n";
  for (std::size_t k = 0; k < t.mu_hat.size(); ++k) {
    const double sd = t.variances.empty() ? 0.0 : std::sqrt(t.variances(1, k));
    out += std::to_string(k) + ',' + format_double(t.mu_hat[k]) + ',' + format_double(sd) + '\n';
  }
  return out;
}

json to_json(const SpectralConfig& c) {
  json s = {{"kind", c.smoother.to_string()}};
  if (c.smoother.kind == Smoother::Kind::TiThreshold) s["depth"] = c.smoother.depth;
  return {{"wavelet", c.wavelet},
          {"depth", c.depth},
          {"beta", c.beta},
          {"detrend", c.detrend.to_string()},
          {"smoother", s},
          {"boundary", to_string(c.boundary)},
          {"centred", c.centred}};
}

SpectralConfig spectral_config_from_json(const json& j) {
  SpectralConfig c;
  try {
    c.wavelet = j.value("wavelet", c.wavelet);
    parse_filter(c.wavelet);
    c.depth = j.value("depth", c.depth);
    c.beta = j.value("beta", c.beta);
    if (j.contains("detrend")) c.detrend = Detrend::parse(j.at("detrend").get<std::string>());
    if (j.contains("smoother")) {
      const auto& s = j.at("smoother");
      if (s.is_string()) {
        c.smoother = Smoother::parse(s.get<std::string>());
      } else {
        c.smoother = Smoother::parse(s.value("kind", std::string("none")));
        c.smoother.depth = s.value("depth", c.smoother.depth);
      }
    }
    if (j.contains("boundary")) c.boundary = parse_boundary(j.at("boundary").get<std::string>());
    c.centred = j.value("centred", c.centred);
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("spectral config: ") + e.what());
  }
  if (c.depth < 0) fail(ErrorCode::ConfigError, "spectral config: depth must be non-negative");
  return c;
}

json to_json(const TrendConfig& c) {
  return {{"wavelet", c.wavelet},
          {"depth", c.depth},
          {"rule", c.rule == ThresholdRule::Hard ? "hard" : "soft"},
          {"transform", c.transform == TrendTransform::TI ? "ti" : "dwt"}};
}

TrendConfig trend_config_from_json(const json& j) {
  TrendConfig c;
  try {
    c.wavelet = j.value("wavelet", c.wavelet);
    parse_filter(c.wavelet);
    c.depth = j.value("depth", c.depth);
    const auto rule = j.value("rule", std::string("hard"));
    if (rule == "hard") {
      c.rule = ThresholdRule::Hard;
    } else if (rule == "soft") {
      c.rule = ThresholdRule::Soft;
    } else {
      fail(ErrorCode::ConfigError, "trend config: rule must be hard or soft");
    }
    const auto transform = j.value("transform", std::string("ti"));
    if (transform == "ti") {
      c.transform = TrendTransform::TI;
    } else if (transform == "dwt") {
      c.transform = TrendTransform::DWT;
    } else {
      fail(ErrorCode::ConfigError, "trend config: transform must be ti or dwt");
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("trend config: ") + e.what());
  }
  if (c.depth < 0) fail(ErrorCode::ConfigError, "trend config: depth must be non-negative");
  return c;
}

json spectrum_json(const SpectrumEstimate& s) {
  return {{"config", to_json(s.config)},
          {"scales", s.depth()},
          {"length", s.length()},
          {"correction", s.correction.label()},
          {"correction_filters", s.correction.filters},
          {"condition_number", s.condition_number},
          {"negative_counts", s.negative_counts}};
}

void RunManifest::add_output(const std::filesystem::path& dir, const std::string& name,
                             std::string_view bytes) {
  write_text(dir / name, bytes);
  outputs.emplace_back(name, digest(bytes));
}

json RunManifest::to_json() const {
  json files = json::array();
  for (const auto& [name, hash] : outputs) files.push_back({{"file", name}, {"digest", hash}});
  return {{"command", command},   {"config", config},         {"seeds", seeds},
          {"version", version()}, {"input_digest", input_digest}, {"timings", timings},
          {"outputs", files}};
}

void write_manifest(const std::filesystem::path& dir, const RunManifest& m) {
  write_text(dir / "manifest.json", m.to_json().dump(2) + "\n");
}

}  // namespace tlsw

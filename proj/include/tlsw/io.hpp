#pragma once

// CSV and JSON input/output and run manifests.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "tlsw/lacv.hpp"
#include "tlsw/spectral.hpp"
#include "tlsw/transforms.hpp"
#include "tlsw/trend.hpp"

namespace tlsw {

const char* version() noexcept;

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

nlohmann::json read_json(const std::filesystem::path& path);

/// 64-bit FNV-1a, hex encoded.
std::string digest(std::string_view bytes);

/// Accepts a single value column (optionally headed) or a time,value table
/// with a header row.
TimeSeries parse_series_csv(std::string_view text);
TimeSeries read_series_csv(const std::filesystem::path& path);

/// time_index,value
std::string series_csv(const TimeSeries& x);

/// scale,j,time_index,value
std::string spectrum_csv(const ScaleTimeArray& s);

/// Inverse of spectrum_csv.
ScaleTimeArray parse_spectrum_csv(std::string_view text);

/// time_index,lag,value
std::string lacv_csv(const LacvEstimate& c);

/// time_index,value,local_sd with local_sd from the finest-scale variance.
std::string trend_csv(const TrendEstimate& t);

nlohmann::json spectrum_json(const SpectrumEstimate& s);
nlohmann::json to_json(const SpectralConfig& c);
SpectralConfig spectral_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TrendConfig& c);
TrendConfig trend_config_from_json(const nlohmann::json& j);

struct RunManifest {
  std::string command;
  nlohmann::json config;
  std::vector<std::uint64_t> seeds;
  std::string input_digest;
  nlohmann::json timings = nlohmann::json::object();
  std::vector<std::pair<std::string, std::string>> outputs;  // file name, digest

  void add_output(const std::filesystem::path& dir, const std::string& name, std::string_view bytes);
  nlohmann::json to_json() const;
};

/// Writes manifest.json into dir.
void write_manifest(const std::filesystem::path& dir, const RunManifest& m);

}  // namespace tlsw

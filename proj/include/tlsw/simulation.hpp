#pragma once

// LSW simulation with additive trend and seasonal components, and the
// built-in spectra and trends of the simulation study.

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "tlsw/array.hpp"
#include "tlsw/random.hpp"
#include "tlsw/transforms.hpp"

namespace tlsw {

/// amplitude * f(frequency * pi * z) with f one of sin, cos, sin^2.
struct TrigTerm {
  enum class Fn { Sin, Cos, SinSquared };
  Fn fn = Fn::Sin;
  double amplitude = 1.0;
  double frequency = 1.0;
};

/// constant + sum of terms on z in [from, to), zero elsewhere.
struct SpectrumComponent {
  int level = 1;
  double from = 0.0;
  double to = 1.0;
  double constant = 0.0;
  std::vector<TrigTerm> terms;

  double value(double z) const;
};

struct SpectrumSpec {
  std::string name;  // preset name, empty for user spectra
  std::vector<SpectrumComponent> components;
  double white_noise = 0.0;  // adds white_noise * 2^{-m} at every level m <= log2 T

  /// S at (level, z); white-noise levels are capped by max_level.
  double value(int level, double z, int max_level) const;

  /// Finest-to-coarsest levels carrying power for a series of the given length.
  int top_level(std::size_t length) const;

  /// S_j(k/T) for levels 1..levels and k = 0..T-1.
  ScaleTimeArray grid(int levels, std::size_t length) const;
};

struct SeasonalSpec {
  int period = 12;
  double offset_min = 0.0;
  double offset_max = 10.0;
  bool time_varying = false;
  double slope_min = -0.05;
  double slope_max = 0.05;
  std::vector<double> offsets;  // K_1..K_period; drawn when empty
  std::vector<double> slopes;   // time-varying mode; drawn when empty
};

struct TrendSpec {
  std::string name = "zero";  // zero, linear, sine, logistic, piecewise_quadratic, polynomial
  std::vector<double> coefficients;  // polynomial in z, constant first
  std::optional<SeasonalSpec> seasonal;

  double value(double z) const;
};

enum class Innovations { Gaussian, ExponentialCentred };

struct SimConfig {
  std::size_t length = 1024;
  std::string generator = "ep4";
  SpectrumSpec spectrum;
  TrendSpec trend;
  Innovations innovations = Innovations::Gaussian;
  std::uint64_t seed = 1;
  bool centred = true;  // amplitude at innovation m follows time m - centre(psi_j)
};

/// S1, S2, S3, white_noise_haar, haar_ma1, zero. Throws UnknownPreset.
SpectrumSpec builtin_spectrum(const std::string& name);

/// zero, linear, sine, logistic, piecewise_quadratic. Throws UnknownPreset.
TrendSpec builtin_trend(const std::string& name);

std::vector<double> innovations(Innovations kind, std::size_t count, Rng& rng);

/// s_t for t = 0..length-1; season m (1-based) is active when t mod K = m mod K.
std::vector<double> seasonal_component(const SeasonalSpec& spec, std::size_t length, Rng& rng);

/// Draws innovations scale-major then time-major for levels 1..top_level,
/// then seasonal offsets, all from one stream seeded by cfg.seed.
TimeSeries simulate_lsw(const SimConfig& cfg);

/// Noise-free mean mu(t/T) + s_t of the realisation simulate_lsw(cfg) returns.
std::vector<double> simulated_mean(const SimConfig& cfg);

void to_json(nlohmann::json& j, const SpectrumSpec& s);
void from_json(const nlohmann::json& j, SpectrumSpec& s);
void to_json(nlohmann::json& j, const TrendSpec& s);
void from_json(const nlohmann::json& j, TrendSpec& s);
void to_json(nlohmann::json& j, const SimConfig& c);
void from_json(const nlohmann::json& j, SimConfig& c);

std::string to_string(Innovations kind);
Innovations parse_innovations(const std::string& text);

}  // namespace tlsw

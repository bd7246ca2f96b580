#include "tlsw/simulation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "tlsw/error.hpp"
#include "tlsw/kernels.hpp"
#include "tlsw/wavelet.hpp"

namespace tlsw {
namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

SpectrumComponent constant_on(int level, double from, double to, double value = 1.0) {
  return {level, from, to, value, {}};
}

std::string fn_name(TrigTerm::Fn fn) {
  switch (fn) {
    case TrigTerm::Fn::Sin: return "sin";
    case TrigTerm::Fn::Cos: return "cos";
    case TrigTerm::Fn::SinSquared: return "sin2";
  }
  return "sin";
}

TrigTerm::Fn parse_fn(const std::string& s) {
  if (s == "sin") return TrigTerm::Fn::Sin;
  if (s == "cos") return TrigTerm::Fn::Cos;
  if (s == "sin2") return TrigTerm::Fn::SinSquared;
  fail(ErrorCode::ConfigError, "unknown trigonometric function '" + s + "'");
}

template <typename F>
auto with_context(const char* what, F&& body) {
  try {
    return body();
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, std::string(what) + ": " + e.what());
  }
}

}  // namespace

double SpectrumComponent::value(double z) const {
  if (z < from || z >= to) return 0.0;
  double acc = constant;
  for (const auto& term : terms) {
    const double arg = term.frequency * kPi * z;
    switch (term.fn) {
      case TrigTerm::Fn::Sin: acc += term.amplitude * std::sin(arg); break;
      case TrigTerm::Fn::Cos: acc += term.amplitude * std::cos(arg); break;
      case TrigTerm::Fn::SinSquared: {
        const double s = std::sin(arg);
        acc += term.amplitude * s * s;
        break;
      }
    }
  }
  return acc;
}

double SpectrumSpec::value(int level, double z, int max_level) const {
  double acc = 0.0;
  for (const auto& c : components) {
    if (c.level == level) acc += c.value(z);
  }
  if (white_noise > 0.0 && level <= max_level) acc += white_noise * std::ldexp(1.0, -level);
  return acc;
}

int SpectrumSpec::top_level(std::size_t length) const {
  int top = white_noise > 0.0 ? dyadic_log2(length) : 0;
  for (const auto& c : components) top = std::max(top, c.level);
  return top;
}

ScaleTimeArray SpectrumSpec::grid(int levels, std::size_t length) const {
  const int max_level = dyadic_log2(length);
  ScaleTimeArray out(static_cast<std::size_t>(levels), length);
  for (int lev = 1; lev <= levels; ++lev) {
    for (std::size_t k = 0; k < length; ++k) {
      out(static_cast<std::size_t>(lev), k) =
          value(lev, static_cast<double>(k) / static_cast<double>(length), max_level);
    }
  }
  return out;
}

double TrendSpec::value(double z) const {
  if (name == "zero") return 0.0;
  if (name == "linear") return 4.0 * z;
  if (name == "sine") return -2.0 * std::sin(2.0 * kPi * z) - 1.5 * std::cos(kPi * z);
  if (name == "logistic") {
    // 4 / (1 + exp(4 - 7 ln 4z)) rewritten to stay finite at z = 0.
    const double p = std::pow(4.0 * z, 7.0);
    return 4.0 * p / (p + std::exp(4.0));
  }
  if (name == "piecewise_quadratic") {
    if (z < 300.0 / 1024.0) return 12.0 * z * z + 2.0 * z;
    if (z < 800.0 / 1024.0) return 1.81 - 16.0 * z * z + 4.0 * z;
    return 4.0 * z - 7.94;
  }
  if (name == "polynomial") {
    double acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * z + *it;
    return acc;
  }
  fail(ErrorCode::UnknownPreset, "unknown trend '" + name + "'");
}

SpectrumSpec builtin_spectrum(const std::string& name) {
  const std::string key = lower(name);
  SpectrumSpec s;
  s.name = key;
  if (key == "s1") {
    s.components.push_back({5, 0.0, 1.0, 0.0, {{TrigTerm::Fn::SinSquared, 1.0, 4.0}}});
    s.components.push_back(constant_on(1, 800.0 / 1024.0, 900.0 / 1024.0));
  } else if (key == "s2") {
    for (int lev = 1; lev <= 4; ++lev) {
      s.components.push_back(constant_on(lev, (lev - 1) * 0.25, lev * 0.25));
    }
  } else if (key == "s3") {
    s.components.push_back(
        {1, 0.0, 1.0, 0.5, {{TrigTerm::Fn::Sin, 0.25, 1.0}, {TrigTerm::Fn::Cos, -0.5, 1.5}}});
    s.components.push_back(
        {3, 0.0, 1.0, 0.5, {{TrigTerm::Fn::Sin, -0.125, 2.0}, {TrigTerm::Fn::Cos, -0.25, 0.5}}});
  } else if (key == "white_noise_haar") {
    s.white_noise = 1.0;
  } else if (key == "haar_ma1") {
    s.components.push_back(constant_on(1, 0.0, 1.0));
  } else if (key == "zero") {
  } else {
    fail(ErrorCode::UnknownPreset, "unknown spectrum preset '" + name + "'");
  }
  return s;
}

TrendSpec builtin_trend(const std::string& name) {
  const std::string key = lower(name);
  if (key == "zero" || key == "none" || key == "linear" || key == "sine" || key == "logistic" ||
      key == "piecewise_quadratic") {
    TrendSpec t;
    t.name = key == "none" ? "zero" : key;
    return t;
  }
  fail(ErrorCode::UnknownPreset, "unknown trend preset '" + name + "'");
}

std::vector<double> innovations(Innovations kind, std::size_t count, Rng& rng) {
  std::vector<double> out(count);
  for (auto& v : out) v = kind == Innovations::Gaussian ? rng.normal() : rng.exponential() - 1.0;
  return out;
}

std::vector<double> seasonal_component(const SeasonalSpec& spec, std::size_t length, Rng& rng) {
  if (spec.period < 1) fail(ErrorCode::InvalidArgument, "seasonal period must be at least 1");
  const auto k = static_cast<std::size_t>(spec.period);
  std::vector<double> offsets = spec.offsets;
  if (offsets.empty()) {
    for (std::size_t m = 0; m < k; ++m) offsets.push_back(rng.uniform(spec.offset_min, spec.offset_max));
  }
  std::vector<double> slopes = spec.slopes;
  if (spec.time_varying && slopes.empty()) {
    for (std::size_t m = 0; m < k; ++m) slopes.push_back(rng.uniform(spec.slope_min, spec.slope_max));
  }
  if (offsets.size() != k || (spec.time_varying && slopes.size() != k)) {
    fail(ErrorCode::ShapeMismatch, "seasonal offsets/slopes must have one entry per season");
  }
  std::vector<double> out(length);
  for (std::size_t t = 0; t < length; ++t) {
    const std::size_t season = (t + k - 1) % k;  // index of K_m with t mod K = m mod K
    out[t] = offsets[season];
    if (spec.time_varying) out[t] += slopes[season] * static_cast<double>(t);
  }
  return out;
}

namespace {

std::vector<double> deterministic_part(const SimConfig& cfg, Rng& rng) {
  std::vector<double> out(cfg.length);
  for (std::size_t t = 0; t < cfg.length; ++t) {
    out[t] = cfg.trend.value(static_cast<double>(t) / static_cast<double>(cfg.length));
  }
  if (cfg.trend.seasonal) {
    const auto s = seasonal_component(*cfg.trend.seasonal, cfg.length, rng);
    for (std::size_t t = 0; t < cfg.length; ++t) out[t] += s[t];
  }
  return out;
}

}  // namespace

TimeSeries simulate_lsw(const SimConfig& cfg) {
  const int max_level = dyadic_log2(cfg.length);
  const int top = cfg.spectrum.top_level(cfg.length);
  if (top > max_level) {
    fail(ErrorCode::DepthExceeded, "spectrum has power at level " + std::to_string(top) +
                                       " but log2(T) = " + std::to_string(max_level));
  }
  Rng rng(cfg.seed);
  const std::size_t n = cfg.length;
  TimeSeries out;
  out.values.assign(n, 0.0);
  if (top > 0) {
    const DiscreteWaveletSet wavelets(parse_filter(cfg.generator), top);
    const auto& k = kernels::active();
    std::vector<double> amplitude(n);
    std::vector<double> contribution(n);
    for (int lev = 1; lev <= top; ++lev) {
      std::vector<double> a = innovations(cfg.innovations, n, rng);
      const auto shift = cfg.centred ? energy_centre(wavelets.at(lev)) : 0;
      const auto period = static_cast<std::ptrdiff_t>(n);
      for (std::size_t m = 0; m < n; ++m) {
        const auto t = ((static_cast<std::ptrdiff_t>(m) - shift) % period + period) % period;
        const double s = cfg.spectrum.value(lev, static_cast<double>(t) / static_cast<double>(n),
                                            max_level);
        if (s < 0.0) fail(ErrorCode::InvalidArgument, "spectrum must be non-negative");
        a[m] *= std::sqrt(s);
      }
      k.circular_correlate(a, wavelets.at(lev), 1, contribution);
      k.axpy(1.0, contribution, out.values);
    }
  }
  const auto mean_part = deterministic_part(cfg, rng);
  for (std::size_t t = 0; t < n; ++t) out.values[t] += mean_part[t];
  return out;
}

std::vector<double> simulated_mean(const SimConfig& cfg) {
  Rng rng(cfg.seed);
  const int top = cfg.spectrum.top_level(cfg.length);
  for (int lev = 1; lev <= top; ++lev) innovations(cfg.innovations, cfg.length, rng);
  return deterministic_part(cfg, rng);
}

std::string to_string(Innovations kind) {
  return kind == Innovations::Gaussian ? "gaussian" : "exponential_centred";
}

Innovations parse_innovations(const std::string& text) {
  const std::string key = lower(text);
  if (key == "gaussian" || key == "normal") return Innovations::Gaussian;
  if (key == "exponential_centred" || key == "exponential") return Innovations::ExponentialCentred;
  fail(ErrorCode::ConfigError, "unknown innovations '" + text + "'");
}

void to_json(json& j, const SpectrumSpec& s) {
  json components = json::array();
  for (const auto& c : s.components) {
    json terms = json::array();
    for (const auto& t : c.terms) {
      terms.push_back({{"fn", fn_name(t.fn)}, {"amplitude", t.amplitude}, {"frequency", t.frequency}});
    }
    components.push_back({{"level", c.level},
                          {"from", c.from},
                          {"to", c.to},
                          {"constant", c.constant},
                          {"terms", terms}});
  }
  j = {{"components", components}, {"white_noise", s.white_noise}};
  if (!s.name.empty()) j["preset"] = s.name;
}

void from_json(const json& j, SpectrumSpec& s) {
  if (j.is_string()) {
    s = builtin_spectrum(j.get<std::string>());
    return;
  }
  with_context("spectrum", [&] {
    s = SpectrumSpec{};
    if (j.contains("components")) {
      for (const auto& c : j.at("components")) {
        SpectrumComponent comp;
        comp.level = c.at("level").get<int>();
        comp.from = c.value("from", 0.0);
        comp.to = c.value("to", 1.0);
        comp.constant = c.value("constant", 0.0);
        if (comp.level < 1) fail(ErrorCode::ConfigError, "spectrum: level must be at least 1");
        for (const auto& t : c.value("terms", json::array())) {
          comp.terms.push_back({parse_fn(t.at("fn").get<std::string>()),
                                t.value("amplitude", 1.0), t.value("frequency", 1.0)});
        }
        s.components.push_back(std::move(comp));
      }
      s.white_noise = j.value("white_noise", 0.0);
      s.name = j.value("preset", std::string{});
    } else if (j.contains("preset")) {
      s = builtin_spectrum(j.at("preset").get<std::string>());
    } else {
      fail(ErrorCode::ConfigError, "spectrum: expected a preset name or a components list");
    }
    return 0;
  });
}

void to_json(json& j, const TrendSpec& s) {
  j = {{"name", s.name}};
  if (!s.coefficients.empty()) j["coefficients"] = s.coefficients;
  if (s.seasonal) {
    const auto& q = *s.seasonal;
    j["seasonal"] = {{"period", q.period},         {"offset_min", q.offset_min},
                     {"offset_max", q.offset_max}, {"time_varying", q.time_varying},
                     {"slope_min", q.slope_min},   {"slope_max", q.slope_max},
                     {"offsets", q.offsets},       {"slopes", q.slopes}};
  }
}

void from_json(const json& j, TrendSpec& s) {
  if (j.is_string()) {
    s = builtin_trend(j.get<std::string>());
    return;
  }
  with_context("trend", [&] {
    s = TrendSpec{};
    s.name = lower(j.value("name", std::string("zero")));
    if (s.name == "polynomial") {
      s.coefficients = j.at("coefficients").get<std::vector<double>>();
    } else {
      builtin_trend(s.name);
    }
    if (j.contains("seasonal") && !j.at("seasonal").is_null()) {
      const auto& q = j.at("seasonal");
      SeasonalSpec spec;
      spec.period = q.value("period", spec.period);
      spec.offset_min = q.value("offset_min", spec.offset_min);
      spec.offset_max = q.value("offset_max", spec.offset_max);
      spec.time_varying = q.value("time_varying", spec.time_varying);
      spec.slope_min = q.value("slope_min", spec.slope_min);
      spec.slope_max = q.value("slope_max", spec.slope_max);
      spec.offsets = q.value("offsets", std::vector<double>{});
      spec.slopes = q.value("slopes", std::vector<double>{});
      if (spec.period < 1) fail(ErrorCode::ConfigError, "trend.seasonal: period must be >= 1");
      s.seasonal = spec;
    }
    return 0;
  });
}

void to_json(json& j, const SimConfig& c) {
  j = {{"length", c.length},
       {"generator", c.generator},
       {"spectrum", c.spectrum},
       {"trend", c.trend},
       {"innovations", to_string(c.innovations)},
       {"seed", c.seed},
       {"centred", c.centred}};
}

void from_json(const json& j, SimConfig& c) {
  with_context("simulation config", [&] {
    c = SimConfig{};
    if (j.contains("preset")) {
      // "<spectrum>+<trend>", e.g. "s1+linear"
      const auto preset = j.at("preset").get<std::string>();
      const auto plus = preset.find('+');
      c.spectrum = builtin_spectrum(preset.substr(0, plus));
      if (plus != std::string::npos) c.trend = builtin_trend(preset.substr(plus + 1));
    }
    c.length = j.value("length", c.length);
    c.generator = j.value("generator", c.generator);
    if (j.contains("spectrum")) c.spectrum = j.at("spectrum").get<SpectrumSpec>();
    if (j.contains("trend")) c.trend = j.at("trend").get<TrendSpec>();
    if (j.contains("innovations")) c.innovations = parse_innovations(j.at("innovations").get<std::string>());
    c.seed = j.value("seed", c.seed);
    c.centred = j.value("centred", c.centred);
    parse_filter(c.generator);
    if (!is_dyadic(c.length)) {
      fail(ErrorCode::NonDyadicLength, "length " + std::to_string(c.length) + " is not a power of two");
    }
    return 0;
  });
}

}  // namespace tlsw

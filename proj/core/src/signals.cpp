#include "respsim/signals.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>
#include <string_view>

#include "respsim/error.hpp"
#include "respsim/random.hpp"

namespace respsim::signals {

double RespSignal::span_s() const noexcept {
  if (samples.empty() || sample_rate_hz <= 0.0) return 0.0;
  return static_cast<double>(samples.size() - 1) / sample_rate_hz;
}

void RespSignal::validate() const {
  if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz)) {
    throw ParameterError("signal sample rate must be positive");
  }
  if (samples.empty()) throw ParameterError("signal has no samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i])) {
      throw ParameterError("signal sample " + std::to_string(i) + " is not finite");
    }
  }
}

void SynthesisParams::validate() const {
  if (!(rate_hz > 0.0)) throw ParameterError("rate_hz must be > 0");
  if (!(rate_jitter >= 0.0)) throw ParameterError("rate_jitter must be >= 0");
  if (!(amp_jitter >= 0.0)) throw ParameterError("amp_jitter must be >= 0");
  if (!(inhale_fraction > 0.0 && inhale_fraction < 1.0)) {
    throw ParameterError("inhale_fraction must be in (0, 1)");
  }
  if (!(duration_s > 0.0)) throw ParameterError("duration_s must be > 0");
}

namespace {

constexpr std::uint32_t kSynthesisStream = 0x53594e54;  // "SYNT"
constexpr std::uint32_t kPeriodTag = 1;
constexpr std::uint32_t kAmplitudeTag = 2;
constexpr int kMaxRedraws = 64;

// Standard normal truncated at +-3, redrawn from successive counter blocks.
double truncated_normal(const CounterStream& rng, std::uint32_t cycle, std::uint32_t tag) {
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    const auto w = rng.block(cycle, tag + 0x100u * static_cast<std::uint32_t>(attempt));
    for (std::uint32_t word : w) {
      const double z = to_normal(word);
      if (std::abs(z) <= 3.0) return z;
    }
  }
  return 0.0;
}

struct Cycle {
  double start_s;
  double period_s;
  double amplitude;
};

double cycle_value(const Cycle& c, double t, double inhale_fraction) {
  const double tau = t - c.start_s;
  const double inhale = inhale_fraction * c.period_s;
  if (tau < inhale) {
    return c.amplitude * 0.5 * (1.0 - std::cos(std::numbers::pi * tau / inhale));
  }
  const double phase = (tau - inhale) / (c.period_s - inhale);
  const double tail = std::exp(-kExhaleDecay);
  return c.amplitude * (std::exp(-kExhaleDecay * phase) - tail) / (1.0 - tail);
}

}  // namespace

RespSignal synthesize(const SynthesisParams& params) {
  params.validate();
  const CounterStream rng(params.seed, kSynthesisStream, 0);
  const double base_period = 1.0 / params.rate_hz;

  std::vector<Cycle> cycles;
  double start = 0.0;
  for (std::uint32_t k = 0; start <= params.duration_s; ++k) {
    double period_scale = 1.0;
    double amplitude = 1.0;
    if (params.rate_jitter > 0.0) {
      // Floor keeps the period positive for very large jitter.
      period_scale = std::max(0.05, 1.0 + params.rate_jitter * truncated_normal(rng, k, kPeriodTag));
    }
    if (params.amp_jitter > 0.0) {
      amplitude = std::max(0.0, 1.0 + params.amp_jitter * truncated_normal(rng, k, kAmplitudeTag));
    }
    cycles.push_back({start, base_period * period_scale, amplitude});
    start += base_period * period_scale;
  }

  const auto n = static_cast<std::size_t>(std::ceil(params.duration_s * kSynthesisRateHz - 1e-9));
  RespSignal out;
  out.sample_rate_hz = kSynthesisRateHz;
  out.kind = SignalKind::synthetic;
  out.samples.resize(std::max<std::size_t>(n, 1));

  std::size_t c = 0;
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    const double t = static_cast<double>(i) / kSynthesisRateHz;
    if (params.rate_jitter == 0.0) {
      // Exact periodicity: index the cycle directly rather than accumulating.
      const double k = std::floor(t / base_period);
      const double tau = t - k * base_period;
      out.samples[i] = cycle_value({0.0, base_period, 1.0}, tau, params.inhale_fraction);
      if (params.amp_jitter > 0.0) {
        const auto idx = std::min(static_cast<std::size_t>(k), cycles.size() - 1);
        out.samples[i] *= cycles[idx].amplitude;
      }
      continue;
    }
    while (c + 1 < cycles.size() && cycles[c + 1].start_s <= t) ++c;
    out.samples[i] = cycle_value(cycles[c], t, params.inhale_fraction);
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view token, double& value) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const auto* end = token.data() + token.size();
  const auto result = std::from_chars(token.data(), end, value);
  return result.ec == std::errc() && result.ptr == end;
}

}  // namespace

RespSignal parse_waveform(std::istream& in, double sample_rate_hz) {
  if (!(sample_rate_hz > 0.0)) throw ParameterError("sample rate must be > 0");
  RespSignal out;
  out.sample_rate_hz = sample_rate_hz;
  out.kind = SignalKind::recorded;

  std::string line;
  bool first_line = true;
  std::size_t record = 0;
  while (std::getline(in, line)) {
    const std::string_view token = trim(line);
    const bool was_first = first_line;
    first_line = false;
    if (token.empty()) continue;
    double value = 0.0;
    if (!parse_double(token, value)) {
      const bool looks_numeric =
          std::isdigit(static_cast<unsigned char>(token.front())) || token.front() == '-' ||
          token.front() == '+' || token.front() == '.';
      if (was_first && !looks_numeric) continue;  // header
      throw IngestionError(record + 1, "cannot parse '" + std::string(token) + "' as a number");
    }
    ++record;
    if (!std::isfinite(value)) {
      throw IngestionError(record, "non-finite value '" + std::string(token) + "'");
    }
    out.samples.push_back(value);
  }
  if (out.samples.empty()) throw IngestionError(0, "waveform file contains no samples");
  return out;
}

RespSignal load_waveform(const std::filesystem::path& path, double sample_rate_hz) {
  std::ifstream in(path);
  if (!in) throw IngestionError(0, "cannot open waveform file '" + path.string() + "'");
  return parse_waveform(in, sample_rate_hz);
}

RespSignal resample_linear(const RespSignal& s, double target_rate_hz) {
  s.validate();
  if (!(target_rate_hz > 0.0)) throw ParameterError("target rate must be > 0");
  const std::size_t n = s.samples.size();
  const auto m = static_cast<std::size_t>(
                     std::floor(static_cast<double>(n - 1) * target_rate_hz / s.sample_rate_hz + 1e-9)) +
                 1;
  RespSignal out;
  out.sample_rate_hz = target_rate_hz;
  out.kind = s.kind;
  out.samples.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double pos = static_cast<double>(j) * s.sample_rate_hz / target_rate_hz;
    auto i0 = static_cast<std::size_t>(std::floor(pos));
    if (i0 >= n - 1) {
      out.samples[j] = s.samples[n - 1];
      continue;
    }
    const double frac = pos - static_cast<double>(i0);
    out.samples[j] = frac == 0.0 ? s.samples[i0]
                                 : s.samples[i0] + frac * (s.samples[i0 + 1] - s.samples[i0]);
  }
  return out;
}

RespSignal normalize(const RespSignal& s) {
  s.validate();
  const auto [lo, hi] = std::minmax_element(s.samples.begin(), s.samples.end());
  const double min = *lo;
  const double range = *hi - *lo;
  if (!(range > 0.0)) throw DegenerateSignalError("cannot normalise a constant signal");
  RespSignal out = s;
  for (double& v : out.samples) v = (v - min) / range;
  return out;
}

}  // namespace respsim::signals

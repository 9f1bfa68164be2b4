#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace respsim::signals {

enum class SignalKind { synthetic, recorded };

/// Uniformly sampled respiratory waveform.
struct RespSignal {
  std::vector<double> samples;
  double sample_rate_hz = 0.0;
  SignalKind kind = SignalKind::synthetic;

  std::size_t size() const noexcept { return samples.size(); }
  /// Time spanned by the samples, (n - 1) / rate.
  double span_s() const noexcept;
  /// Throws ParameterError unless rate > 0, non-empty and all samples finite.
  void validate() const;
};

/// Knobs of the breath-cycle generator.
struct SynthesisParams {
  double rate_hz = 0.25;
  double rate_jitter = 0.0;
  double amp_jitter = 0.0;
  double inhale_fraction = 0.4;
  double duration_s = 30.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Internal sample rate of `synthesize`.
inline constexpr double kSynthesisRateHz = 100.0;

/// Exhale shape: exp(-kExhaleDecay * phase), rescaled to end at zero.
inline constexpr double kExhaleDecay = 2.0;

/// Quasi-periodic breathing waveform at kSynthesisRateHz.
///
/// Each cycle is a raised-cosine inhale over `inhale_fraction` of its period
/// followed by an exponentially decaying exhale back to zero. Per-cycle period
/// and amplitude multipliers are 1 + jitter * z with z standard normal,
/// truncated at +-3. The values are in [0, max amplitude].
RespSignal synthesize(const SynthesisParams& params);

/// Single-column CSV (optional non-numeric header line).
RespSignal load_waveform(const std::filesystem::path& path, double sample_rate_hz);
RespSignal parse_waveform(std::istream& in, double sample_rate_hz);

/// Linear interpolation onto a grid of `target_rate_hz` starting at t = 0.
RespSignal resample_linear(const RespSignal& s, double target_rate_hz);

/// Direct-form-II-transposed biquad, a0 normalised to 1.
struct Biquad {
  double b0, b1, b2, a1, a2;
};

/// 4th-order Butterworth low-pass as two biquads (bilinear transform with
/// frequency prewarping). Each section has unit DC gain.
std::array<Biquad, 2> design_butter4_lowpass(double cutoff_hz, double sample_rate_hz);

/// Samples added on each side before the forward-backward pass.
inline constexpr std::size_t kFiltfiltPad = 15;

/// Zero-phase 4th-order Butterworth low-pass (forward-backward, reflect padded).
RespSignal lowpass_butter4(const RespSignal& s, double cutoff_hz = 1.0);

/// Affine rescale onto [0, 1]. Throws DegenerateSignalError for constant input.
RespSignal normalize(const RespSignal& s);

}  // namespace respsim::signals

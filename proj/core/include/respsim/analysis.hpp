#pragma once

#include <cstdint>
#include <span>

#include <nlohmann/json.hpp>

#include "respsim/depth.hpp"
#include "respsim/signals.hpp"

namespace respsim::analysis {

/// snr_db is clamped to [-kSnrCapDb, +kSnrCapDb].
inline constexpr double kSnrCapDb = 60.0;
inline constexpr double kDefaultBandHz = 0.1;

struct SnrResult {
  double rho = 0.0;      ///< in-band energy / total energy above 0 Hz
  double snr_db = 0.0;   ///< 10 log10(rho / (1 - rho)), clamped
  double band_energy = 0.0;
  double total_energy = 0.0;
};

/// Band ratio around f0 and 2 f0 of the Hann-windowed, zero-padded periodogram.
/// Requires at least 10 s of signal and 0 < f0 < rate / 4. Zero energy throws
/// DegenerateSignalError.
SnrResult snr(const signals::RespSignal& signal, double f0_hz, double band_hz = kDefaultBandHz);

struct F0Estimate {
  double f0_hz = 0.0;
  /// Another local maximum in range reached half the peak power.
  bool harmonic_ambiguity = false;
};

/// Strongest periodogram peak in [lo_hz, hi_hz], refined by a parabola through
/// the log power of three bins. Among local maxima with at least half the peak
/// power the lowest frequency wins. Throws DetectionError when the peak does
/// not exceed the mean power in range.
F0Estimate detect_f0(const signals::RespSignal& reference, double lo_hz = 0.1, double hi_hz = 0.5);

/// Population std over all pixels of (noisy - clean).
double frame_noise_std(const DepthFrame& noisy, const DepthFrame& clean);
/// frame_noise_std averaged over frames.
double measure_noise_std(const DepthVideo& noisy, const DepthVideo& clean);

/// Stereo depth sensitivity (m / f_b) Z^2 sigma_p.
double axial_sensitivity(double z_m, double m, double f_b, double sigma_p);

/// Pearson correlation of two equally long sequences.
double pearson(std::span<const double> a, std::span<const double> b);

struct Moments {
  double mean = 0.0;
  double stddev = 0.0;          ///< population
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};
Moments moments(std::span<const double> x);

/// One analysed configuration.
struct SnrReport {
  nlohmann::json noise_spec = nlohmann::json::array();
  double scale = 1.0;
  double empirical_sigma_m = 0.0;
  double rho = 0.0;
  double snr_db = 0.0;
  double f0_hz = 0.0;
  double band_hz = kDefaultBandHz;
  std::uint64_t seed = 0;
  bool harmonic_ambiguity = false;
};

nlohmann::json to_json(const SnrReport& r);

}  // namespace respsim::analysis

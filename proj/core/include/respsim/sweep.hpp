#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "respsim/analysis.hpp"
#include "respsim/depth.hpp"
#include "respsim/extract.hpp"
#include "respsim/noise.hpp"

namespace respsim::sweep {

/// Per-frame noise std and RoI means of one corrupted video, computed frame by
/// frame without keeping the noisy frames.
struct Measurement {
  std::vector<double> frame_sigma;             ///< [frame]
  std::vector<std::vector<double>> roi_means;  ///< [scale][frame]

  double mean_sigma() const;
};

/// Apply `chain` to every frame of `clean` (an empty chain means no noise) and
/// measure. `roi.scale` is ignored; one series per entry of `scales`.
Measurement corrupt_and_measure(const DepthVideo& clean, const noise::NoiseChain& chain,
                                const extract::RoiSpec& roi, std::span<const double> scales, unsigned threads = 1);

/// Parameter sweep over one spec, optionally after a fixed prefix chain.
struct SweepGrid {
  noise::NoiseSpec spec;
  std::string param_name;
  std::vector<double> values;  ///< strictly increasing
  std::vector<double> scales;
  std::vector<std::uint64_t> seeds;
  noise::NoiseChain prefix;    ///< applied before `spec`

  void validate() const;
  /// The chain for one cell; every member takes `seed`.
  noise::NoiseChain chain_for(double value, std::uint64_t seed) const;
};

struct SweepSettings {
  extract::RoiSpec roi;
  double f0_hz = 0.25;
  double band_hz = analysis::kDefaultBandHz;
  unsigned threads = 1;
};

struct SweepRow {
  std::string model;
  std::string param_name;
  double param_value = 0.0;
  double scale = 1.0;
  std::uint64_t seed = 0;
  double empirical_sigma_m = 0.0;
  double rho = 0.0;
  double snr_db = 0.0;
  double f0_hz = 0.0;
  std::string error;  ///< non-empty for a failed cell; numeric fields are NaN
};

struct SummaryRow {
  std::string model;
  std::string param_name;
  double param_value = 0.0;
  double scale = 1.0;
  std::size_t n_seeds = 0;
  double empirical_sigma_m_mean = 0.0;
  double rho_mean = 0.0;
  double snr_db_mean = 0.0;
  double snr_db_std = 0.0;  ///< sample std over seeds, 0 for a single seed
};

struct SweepResult {
  std::vector<SweepRow> rows;        ///< value-major, then scale, then seed
  std::vector<SummaryRow> summary;   ///< value-major, then scale
};

/// Every (value, scale, seed) cell: corrupt, extract, snr against settings.f0_hz.
/// A failing cell yields NaN rows with the error message instead of aborting.
SweepResult run_sweep(const DepthVideo& clean, const SweepGrid& grid, const SweepSettings& settings);

/// Summary rows for `rows` in grid order.
std::vector<SummaryRow> summarize(const std::vector<SweepRow>& rows);

/// Gain k such that the mean over `noise` series of snr(k * (clean - mean(clean)) + noise_i)
/// equals `target_db`, by bisection on [k_lo, k_hi]. Throws when the target is
/// not bracketed.
double calibrate_gain(const signals::RespSignal& clean, const std::vector<std::vector<double>>& noise,
                      double f0_hz, double band_hz, double target_db, double k_lo = 1e-3, double k_hi = 1e3);

}  // namespace respsim::sweep

#include "respsim/sweep.hpp"

#include <cmath>
#include <limits>

#include "respsim/error.hpp"
#include "respsim/parallel.hpp"

namespace respsim::sweep {

double Measurement::mean_sigma() const {
  if (frame_sigma.empty()) return 0.0;
  double sum = 0.0;
  for (double s : frame_sigma) sum += s;
  return sum / static_cast<double>(frame_sigma.size());
}

Measurement corrupt_and_measure(const DepthVideo& clean, const noise::NoiseChain& chain,
                                const extract::RoiSpec& roi, std::span<const double> scales, unsigned threads) {
  clean.validate();
  for (const auto& spec : chain) spec.validate();
  std::vector<extract::RoiSpec> rois;
  for (double s : scales) {
    extract::RoiSpec r = roi;
    r.scale = s;
    r.validate_for(clean.width(), clean.height());
    rois.push_back(r);
  }
  const std::size_t n = clean.frames.size();
  Measurement m;
  m.frame_sigma.assign(n, 0.0);
  m.roi_means.assign(rois.size(), std::vector<double>(n, 0.0));
  parallel_for(n, threads, [&](std::size_t t) {
    const DepthFrame& src = clean.frames[t];
    if (chain.empty()) {
      for (std::size_t k = 0; k < rois.size(); ++k) m.roi_means[k][t] = extract::roi_mean(src, rois[k]);
      return;
    }
    const DepthFrame noisy = noise::apply_chain_frame(src, chain, static_cast<std::uint32_t>(t));
    m.frame_sigma[t] = analysis::frame_noise_std(noisy, src);
    for (std::size_t k = 0; k < rois.size(); ++k) m.roi_means[k][t] = extract::roi_mean(noisy, rois[k]);
  });
  return m;
}

void SweepGrid::validate() const {
  if (values.empty()) throw ParameterError("sweep grid has no parameter values");
  if (scales.empty()) throw ParameterError("sweep grid has no scales");
  if (seeds.empty()) throw ParameterError("sweep grid has no seeds");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) throw ParameterError("sweep values must be strictly increasing");
  }
  for (double s : scales) {
    if (!(s > 0.0 && s <= 1.0)) throw ParameterError("sweep scales must lie in (0, 1]");
  }
  noise::get_parameter(spec, param_name);
  for (const auto& p : prefix) p.validate();
}

noise::NoiseChain SweepGrid::chain_for(double value, std::uint64_t seed) const {
  noise::NoiseChain chain = prefix;
  noise::NoiseSpec swept = spec;
  noise::set_parameter(swept, param_name, value);
  chain.push_back(swept);
  for (auto& s : chain) s.seed = seed;
  return chain;
}

SweepResult run_sweep(const DepthVideo& clean, const SweepGrid& grid, const SweepSettings& settings) {
  grid.validate();
  const std::string model(grid.spec.type_name());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const std::size_t n_scales = grid.scales.size();
  const std::size_t n_seeds = grid.seeds.size();

  SweepResult result;
  for (double value : grid.values) {
    // cells[scale][seed]
    std::vector<std::vector<SweepRow>> cells(n_scales, std::vector<SweepRow>(n_seeds));
    for (std::size_t si = 0; si < n_seeds; ++si) {
      const std::uint64_t seed = grid.seeds[si];
      for (std::size_t k = 0; k < n_scales; ++k) {
        cells[k][si] = SweepRow{model, grid.param_name, value, grid.scales[k], seed, nan, nan, nan, nan, {}};
      }
      try {
        const auto chain = grid.chain_for(value, seed);
        for (const auto& s : chain) s.validate();
        const Measurement m = corrupt_and_measure(clean, chain, settings.roi, grid.scales, settings.threads);
        const double sigma = m.mean_sigma();
        for (std::size_t k = 0; k < n_scales; ++k) {
          SweepRow& row = cells[k][si];
          row.empirical_sigma_m = sigma;
          try {
            const signals::RespSignal s{m.roi_means[k], clean.frame_rate_hz, signals::SignalKind::recorded};
            const auto r = analysis::snr(s, settings.f0_hz, settings.band_hz);
            row.rho = r.rho;
            row.snr_db = r.snr_db;
            row.f0_hz = settings.f0_hz;
          } catch (const Error& e) {
            row.error = e.what();
          }
        }
      } catch (const Error& e) {
        for (std::size_t k = 0; k < n_scales; ++k) cells[k][si].error = e.what();
      }
    }
    for (auto& per_scale : cells) {
      for (auto& row : per_scale) result.rows.push_back(std::move(row));
    }
  }
  result.summary = summarize(result.rows);
  return result;
}

std::vector<SummaryRow> summarize(const std::vector<SweepRow>& rows) {
  std::vector<SummaryRow> out;
  std::size_t i = 0;
  while (i < rows.size()) {
    std::size_t j = i;
    while (j < rows.size() && rows[j].param_value == rows[i].param_value && rows[j].scale == rows[i].scale &&
           rows[j].model == rows[i].model) {
      ++j;
    }
    SummaryRow s{rows[i].model, rows[i].param_name, rows[i].param_value, rows[i].scale, 0, 0.0, 0.0, 0.0, 0.0};
    std::vector<double> snrs;
    for (std::size_t k = i; k < j; ++k) {
      if (!rows[k].error.empty() || std::isnan(rows[k].snr_db)) continue;
      s.empirical_sigma_m_mean += rows[k].empirical_sigma_m;
      s.rho_mean += rows[k].rho;
      s.snr_db_mean += rows[k].snr_db;
      snrs.push_back(rows[k].snr_db);
    }
    s.n_seeds = snrs.size();
    if (snrs.empty()) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      s.empirical_sigma_m_mean = s.rho_mean = s.snr_db_mean = s.snr_db_std = nan;
    } else {
      const double n = static_cast<double>(snrs.size());
      s.empirical_sigma_m_mean /= n;
      s.rho_mean /= n;
      s.snr_db_mean /= n;
      if (snrs.size() > 1) {
        double ss = 0.0;
        for (double v : snrs) ss += (v - s.snr_db_mean) * (v - s.snr_db_mean);
        s.snr_db_std = std::sqrt(ss / (n - 1.0));
      }
    }
    out.push_back(s);
    i = j;
  }
  return out;
}

double calibrate_gain(const signals::RespSignal& clean, const std::vector<std::vector<double>>& noise,
                      double f0_hz, double band_hz, double target_db, double k_lo, double k_hi) {
  if (noise.empty()) throw ParameterError("calibration needs at least one noise series");
  double mean = 0.0;
  for (double v : clean.samples) mean += v;
  mean /= static_cast<double>(clean.size());

  auto mean_snr = [&](double k) {
    double sum = 0.0;
    for (const auto& series : noise) {
      if (series.size() != clean.size()) throw ParameterError("noise series length differs from the signal");
      signals::RespSignal s{std::vector<double>(clean.size()), clean.sample_rate_hz, signals::SignalKind::recorded};
      for (std::size_t i = 0; i < s.samples.size(); ++i) s.samples[i] = k * (clean.samples[i] - mean) + series[i];
      sum += analysis::snr(s, f0_hz, band_hz).snr_db;
    }
    return sum / static_cast<double>(noise.size());
  };

  double lo = std::log(k_lo);
  double hi = std::log(k_hi);
  if (!(mean_snr(k_lo) < target_db && mean_snr(k_hi) > target_db)) {
    throw ParameterError("calibration target is not bracketed by the gain interval");
  }
  for (int it = 0; it < 100 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mean_snr(std::exp(mid)) < target_db ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

}  // namespace respsim::sweep

#include "respsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "respsim/error.hpp"
#include "respsim/spectrum.hpp"

namespace respsim::analysis {

SnrResult snr(const signals::RespSignal& signal, double f0_hz, double band_hz) {
  signal.validate();
  const double rate = signal.sample_rate_hz;
  if (static_cast<double>(signal.size()) / rate < 10.0 - 1e-9) {
    throw ParameterError("SNR needs at least 10 s of signal");
  }
  if (!(f0_hz > 0.0 && f0_hz < rate / 4.0)) {
    throw ParameterError("f0 must lie in (0, rate/4)");
  }
  if (!(band_hz > 0.0)) throw ParameterError("band_hz must be > 0");

  const Periodogram p = periodogram(signal.samples, rate);
  SnrResult r;
  for (std::size_t k = 1; k < p.power.size(); ++k) {
    const double f = p.frequency(k);
    r.total_energy += p.power[k];
    if (std::abs(f - f0_hz) <= band_hz || std::abs(f - 2.0 * f0_hz) <= band_hz) r.band_energy += p.power[k];
  }
  if (!(r.total_energy > 0.0)) throw DegenerateSignalError("signal has no energy above 0 Hz");
  r.rho = r.band_energy / r.total_energy;
  const double rest = r.total_energy - r.band_energy;
  if (r.band_energy <= 0.0) {
    r.snr_db = -kSnrCapDb;
  } else if (rest <= 0.0) {
    r.snr_db = kSnrCapDb;
  } else {
    r.snr_db = std::clamp(10.0 * std::log10(r.band_energy / rest), -kSnrCapDb, kSnrCapDb);
  }
  return r;
}

F0Estimate detect_f0(const signals::RespSignal& reference, double lo_hz, double hi_hz) {
  reference.validate();
  if (!(lo_hz > 0.0 && hi_hz > lo_hz)) throw ParameterError("invalid f0 search range");
  const Periodogram p = periodogram(reference.samples, reference.sample_rate_hz);

  std::vector<std::size_t> bins;
  for (std::size_t k = 1; k < p.power.size(); ++k) {
    const double f = p.frequency(k);
    if (f >= lo_hz && f <= hi_hz) bins.push_back(k);
  }
  if (bins.empty()) throw DetectionError("no periodogram bin inside the search range");

  double mean = 0.0;
  std::size_t best = bins.front();
  for (std::size_t k : bins) {
    mean += p.power[k];
    if (p.power[k] > p.power[best]) best = k;
  }
  mean /= static_cast<double>(bins.size());
  if (!(p.power[best] > mean)) throw DetectionError("no spectral peak above the mean power in range");

  // Local maxima strong enough to compete with the peak.
  std::vector<std::size_t> strong;
  for (std::size_t k : bins) {
    const bool left = k == 0 || p.power[k] >= p.power[k - 1];
    const bool right = k + 1 >= p.power.size() || p.power[k] >= p.power[k + 1];
    if (left && right && p.power[k] >= 0.5 * p.power[best]) strong.push_back(k);
  }
  F0Estimate est;
  est.harmonic_ambiguity = strong.size() > 1;
  const std::size_t k = strong.empty() ? best : strong.front();

  double delta = 0.0;
  if (k > 0 && k + 1 < p.power.size() && p.power[k - 1] > 0.0 && p.power[k + 1] > 0.0) {
    const double a = std::log(p.power[k - 1]);
    const double b = std::log(p.power[k]);
    const double c = std::log(p.power[k + 1]);
    const double denom = a - 2.0 * b + c;
    if (denom < 0.0) delta = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
  }
  est.f0_hz = (static_cast<double>(k) + delta) * p.bin_hz;
  return est;
}

double frame_noise_std(const DepthFrame& noisy, const DepthFrame& clean) {
  if (noisy.width != clean.width || noisy.height != clean.height) {
    throw ParameterError("frame dimensions differ");
  }
  const std::size_t n = noisy.size();
  if (n == 0) throw ParameterError("empty frame");
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += static_cast<double>(noisy.depth[i]) - clean.depth[i];
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = static_cast<double>(noisy.depth[i]) - clean.depth[i] - mean;
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(n));
}

double measure_noise_std(const DepthVideo& noisy, const DepthVideo& clean) {
  if (noisy.frames.size() != clean.frames.size()) {
    throw ParameterError("frame counts differ: " + std::to_string(noisy.frames.size()) + " vs " +
                         std::to_string(clean.frames.size()));
  }
  if (noisy.frames.empty()) throw ParameterError("empty video");
  double sum = 0.0;
  for (std::size_t t = 0; t < noisy.frames.size(); ++t) sum += frame_noise_std(noisy.frames[t], clean.frames[t]);
  return sum / static_cast<double>(noisy.frames.size());
}

double axial_sensitivity(double z_m, double m, double f_b, double sigma_p) {
  if (!(f_b > 0.0)) throw ParameterError("f_b must be > 0");
  return (m / f_b) * z_m * z_m * sigma_p;
}

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) throw ParameterError("pearson needs two equally long sequences");
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(a.size());
  mb /= static_cast<double>(b.size());
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) throw DegenerateSignalError("pearson of a constant sequence");
  return sab / std::sqrt(saa * sbb);
}

Moments moments(std::span<const double> x) {
  if (x.size() < 2) throw ParameterError("moments need at least two values");
  const double n = static_cast<double>(x.size());
  Moments m;
  for (double v : x) m.mean += v;
  m.mean /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - m.mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  m.stddev = std::sqrt(m2);
  if (m2 > 0.0) {
    m.skewness = m3 / std::pow(m2, 1.5);
    m.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  }
  return m;
}

nlohmann::json to_json(const SnrReport& r) {
  return {{"noise_spec", r.noise_spec}, {"scale", r.scale},   {"empirical_sigma_m", r.empirical_sigma_m},
          {"rho", r.rho},               {"snr_db", r.snr_db}, {"f0_hz", r.f0_hz},
          {"band_hz", r.band_hz},       {"seed", r.seed},     {"harmonic_ambiguity", r.harmonic_ambiguity}};
}

}  // namespace respsim::analysis

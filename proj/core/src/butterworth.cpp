#include <algorithm>
#include <cmath>
#include <numbers>

#include "respsim/error.hpp"
#include "respsim/signals.hpp"

namespace respsim::signals {

std::array<Biquad, 2> design_butter4_lowpass(double cutoff_hz, double sample_rate_hz) {
  if (!(sample_rate_hz > 0.0)) throw ParameterError("sample rate must be > 0");
  if (!(cutoff_hz > 0.0) || !(cutoff_hz < sample_rate_hz / 2.0)) {
    throw ParameterError("cutoff must lie in (0, Nyquist)");
  }
  // Prewarped analog cutoff, normalised so that s = (z - 1) / (z + 1).
  const double k = std::tan(std::numbers::pi * cutoff_hz / sample_rate_hz);
  const double k2 = k * k;
  std::array<Biquad, 2> sections{};
  for (int i = 0; i < 2; ++i) {
    // Pole pair angles pi/8 and 3pi/8 from the negative real axis.
    const double theta = std::numbers::pi * (2.0 * i + 1.0) / 8.0;
    const double q = 1.0 / (2.0 * std::cos(theta));
    const double norm = 1.0 / (1.0 + k / q + k2);
    Biquad& s = sections[static_cast<std::size_t>(i)];
    s.b0 = k2 * norm;
    s.b1 = 2.0 * s.b0;
    s.b2 = s.b0;
    s.a1 = 2.0 * (k2 - 1.0) * norm;
    s.a2 = (1.0 - k / q + k2) * norm;
  }
  return sections;
}

namespace {

// One pass of the cascade over `x`, states initialised to the steady state of
// a constant input equal to x.front() (unit DC gain per section).
void run_cascade(const std::array<Biquad, 2>& sections, std::vector<double>& x) {
  for (const Biquad& s : sections) {
    const double x0 = x.front();
    double z2 = (s.b2 - s.a2) * x0;
    double z1 = (s.b1 - s.a1) * x0 + z2;
    for (double& v : x) {
      const double in = v;
      const double out = s.b0 * in + z1;
      z1 = s.b1 * in - s.a1 * out + z2;
      z2 = s.b2 * in - s.a2 * out;
      v = out;
    }
  }
}

}  // namespace

RespSignal lowpass_butter4(const RespSignal& s, double cutoff_hz) {
  s.validate();
  const auto sections = design_butter4_lowpass(cutoff_hz, s.sample_rate_hz);
  const std::size_t n = s.samples.size();
  if (n <= kFiltfiltPad) {
    throw ParameterError("signal too short for forward-backward filtering (need > " +
                         std::to_string(kFiltfiltPad) + " samples)");
  }

  // Reflect about the end samples without repeating them.
  std::vector<double> ext;
  ext.reserve(n + 2 * kFiltfiltPad);
  for (std::size_t i = kFiltfiltPad; i >= 1; --i) ext.push_back(s.samples[i]);
  ext.insert(ext.end(), s.samples.begin(), s.samples.end());
  for (std::size_t i = 1; i <= kFiltfiltPad; ++i) ext.push_back(s.samples[n - 1 - i]);

  run_cascade(sections, ext);
  std::reverse(ext.begin(), ext.end());
  run_cascade(sections, ext);
  std::reverse(ext.begin(), ext.end());

  RespSignal out;
  out.sample_rate_hz = s.sample_rate_hz;
  out.kind = s.kind;
  out.samples.assign(ext.begin() + static_cast<std::ptrdiff_t>(kFiltfiltPad),
                     ext.begin() + static_cast<std::ptrdiff_t>(kFiltfiltPad + n));
  return out;
}

}  // namespace respsim::signals

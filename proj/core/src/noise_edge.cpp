#include <algorithm>
#include <cmath>
#include <vector>

#include "respsim/error.hpp"
#include "respsim/noise.hpp"
#include "noise_internal.hpp"

namespace respsim::noise {

namespace {

// Half-sample symmetric reflection: ... 1 0 | 0 1 2 ... n-1 | n-1 n-2 ...
int reflect(int i, int n) {
  const int period = 2 * n;
  int m = i % period;
  if (m < 0) m += period;
  return m < n ? m : period - 1 - m;
}

std::vector<float> sobel_magnitude(const DepthFrame& f) {
  const int w = f.width;
  const int h = f.height;
  const std::size_t pw = static_cast<std::size_t>(w) + 2;
  // One-pixel reflected border.
  std::vector<float> pad(pw * (static_cast<std::size_t>(h) + 2));
  for (int y = -1; y <= h; ++y) {
    const float* src = f.depth.data() + static_cast<std::size_t>(reflect(y, h)) * w;
    float* dst = pad.data() + static_cast<std::size_t>(y + 1) * pw;
    dst[0] = src[reflect(-1, w)];
    std::copy(src, src + w, dst + 1);
    dst[w + 1] = src[reflect(w, w)];
  }
  std::vector<float> mag(f.size());
  for (int y = 0; y < h; ++y) {
    const float* up = pad.data() + static_cast<std::size_t>(y) * pw;
    const float* mid = up + pw;
    const float* dn = mid + pw;
    float* out = mag.data() + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      const float gx = (up[x + 2] + 2.0f * mid[x + 2] + dn[x + 2]) - (up[x] + 2.0f * mid[x] + dn[x]);
      const float gy = (dn[x] + 2.0f * dn[x + 1] + dn[x + 2]) - (up[x] + 2.0f * up[x + 1] + up[x + 2]);
      out[x] = std::sqrt(gx * gx + gy * gy);
    }
  }
  return mag;
}

std::vector<float> gaussian_kernel(double sigma) {
  const int r = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(2 * r + 1);
  double sum = 0.0;
  for (int i = -r; i <= r; ++i) {
    k[i + r] = std::exp(-0.5 * (i * i) / (sigma * sigma));
    sum += k[i + r];
  }
  std::vector<float> out(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) out[i] = static_cast<float>(k[i] / sum);
  return out;
}

// Separable blur with reflect padding. Accumulation order is fixed.
std::vector<float> blur(const std::vector<float>& in, int w, int h, double sigma) {
  const auto k = gaussian_kernel(sigma);
  const int r = static_cast<int>(k.size() / 2);

  std::vector<float> tmp(in.size());
  std::vector<float> row(static_cast<std::size_t>(w + 2 * r));
  for (int y = 0; y < h; ++y) {
    const float* src = in.data() + static_cast<std::size_t>(y) * w;
    for (int i = 0; i < w + 2 * r; ++i) row[i] = src[reflect(i - r, w)];
    float* dst = tmp.data() + static_cast<std::size_t>(y) * w;
    std::fill(dst, dst + w, 0.0f);
    for (int j = 0; j <= 2 * r; ++j) {
      const float kj = k[j];
      const float* p = row.data() + j;
      for (int x = 0; x < w; ++x) dst[x] += kj * p[x];
    }
  }

  std::vector<float> out(in.size(), 0.0f);
  for (int y = 0; y < h; ++y) {
    float* dst = out.data() + static_cast<std::size_t>(y) * w;
    for (int j = 0; j <= 2 * r; ++j) {
      const float kj = k[j];
      const float* p = tmp.data() + static_cast<std::size_t>(reflect(y + j - r, h)) * w;
      for (int x = 0; x < w; ++x) dst[x] += kj * p[x];
    }
  }
  return out;
}

bool scale_to_unit(std::vector<float>& v) {
  const float mx = v.empty() ? 0.0f : *std::max_element(v.begin(), v.end());
  if (!(mx > 0.0f)) {
    std::fill(v.begin(), v.end(), 0.0f);
    return false;
  }
  for (auto& x : v) x = std::min(1.0f, x / mx);
  return true;
}

}  // namespace

AoeMask edge_aoe(const DepthFrame& frame, double sigma_g_px, double aoe_threshold) {
  if (!(sigma_g_px > 0.0)) throw ParameterError("sigma_g_px must be > 0");
  AoeMask mask{frame.width, frame.height, sobel_magnitude(frame)};
  if (!scale_to_unit(mask.values)) return mask;
  mask.values = blur(mask.values, frame.width, frame.height, sigma_g_px);
  if (!scale_to_unit(mask.values)) return mask;
  const auto thr = static_cast<float>(aoe_threshold);
  for (auto& x : mask.values) {
    if (x < thr) x = 0.0f;
  }
  return mask;
}

DepthFrame apply_edge_gaussian(const DepthFrame& frame, const EdgeGaussian& spec, const CounterStream& rng) {
  NoiseSpec{spec, 0}.validate();
  const AoeMask mask = edge_aoe(frame, spec.sigma_g_px, spec.aoe_threshold);
  DepthFrame out = frame;
  for (std::size_t i = 0; i < out.depth.size(); ++i) {
    const float m = mask.values[i];
    if (m == 0.0f) continue;
    out.depth[i] = static_cast<float>(static_cast<double>(frame.depth[i]) +
                                      static_cast<double>(m) * spec.sigma_m * normal_at(rng, kPixelTag, i));
  }
  return out;
}

DepthFrame apply_edge_permutation(const DepthFrame& frame, const EdgePermutation& spec, const CounterStream& rng,
                                  Boundary boundary) {
  NoiseSpec{spec, 0}.validate();
  return apply_edge_permutation(frame, edge_aoe(frame, spec.sigma_g_px, spec.aoe_threshold), spec.r_p_px, rng,
                                boundary);
}

DepthFrame apply_edge_permutation(const DepthFrame& frame, const AoeMask& mask, int r_p_px,
                                  const CounterStream& rng, Boundary boundary) {
  if (r_p_px < 1) throw ParameterError("r_p_px must be >= 1");
  if (mask.width != frame.width || mask.height != frame.height) {
    throw ParameterError("AoE mask dimensions do not match the frame");
  }
  struct Offset {
    int dx, dy;
  };
  std::vector<Offset> disk;
  for (int dy = -r_p_px; dy <= r_p_px; ++dy) {
    for (int dx = -r_p_px; dx <= r_p_px; ++dx) {
      if (dx * dx + dy * dy <= r_p_px * r_p_px) disk.push_back({dx, dy});
    }
  }
  const auto n_disk = static_cast<std::uint32_t>(disk.size());
  const int w = frame.width;
  const int h = frame.height;

  DepthFrame out = frame;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t p = static_cast<std::size_t>(y) * w + x;
      const float m = mask.values[p];
      if (m <= 0.0f) continue;
      auto words = rng.block(static_cast<std::uint32_t>(p), kPermuteTag);
      if (!(to_unit(words[0]) < m)) continue;
      // Rejection sampling over the full disk gives a uniform draw on its clipped part.
      int slot = 1;
      std::uint32_t attempt = 0;
      for (;;) {
        if (slot == 4) {
          ++attempt;
          words = rng.block(static_cast<std::uint32_t>(p), kPermuteTag + (attempt << 8));
          slot = 0;
        }
        const Offset o = disk[to_bounded(words[slot++], n_disk)];
        int qx = x + o.dx;
        int qy = y + o.dy;
        if (boundary == Boundary::toroidal) {
          qx = (qx % w + w) % w;
          qy = (qy % h + h) % h;
        } else if (qx < 0 || qx >= w || qy < 0 || qy >= h) {
          continue;
        }
        out.depth[p] = frame.at(qx, qy);
        break;
      }
    }
  }
  return out;
}

}  // namespace respsim::noise

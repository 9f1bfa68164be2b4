#pragma once

// Stream tags shared by the noise translation units.

#include <cstddef>
#include <cstdint>

#include "respsim/random.hpp"

namespace respsim::noise {

inline constexpr std::uint32_t kPixelTag = 1;
inline constexpr std::uint32_t kShiftTag = 2;
inline constexpr std::uint32_t kPermuteTag = 3;

/// The normal fill_normal(.., tag) would place at `index`.
double normal_at(const CounterStream& rng, std::uint32_t tag, std::size_t index);

}  // namespace respsim::noise

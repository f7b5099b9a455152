#pragma once

#include <cstdint>

#include "dctbch/image.hpp"

namespace dctbch {

/// Deterministic natural-looking test image: smooth gradients, a few soft
/// discs, oriented texture and mild noise, kept inside [16, 240].
GrayImage synthetic_image(int width, int height, std::uint64_t seed);

}  // namespace dctbch

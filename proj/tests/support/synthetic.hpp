#pragma once

#include <cstdint>
#include <vector>

#include "deblur/image.hpp"

namespace deblur::testing {

/// Independent uniform pixels in [lo, hi].
Image random_image(int width, int height, std::uint64_t seed, double lo = 0.0, double hi = 1.0);

/// Patchwork of 24x24 cells, each a sinusoidal grating with its own
/// orientation, period, contrast and mean level.
Image texture_image(int width, int height, std::uint64_t seed);

/// Linear ramp 0.5 + slope * (x cos(theta) + y sin(theta)) about the center, unclamped.
std::vector<double> ramp_patch(int size, double theta, double slope);

/// Row-major random values in [0,1].
std::vector<double> random_patch(int size, std::uint64_t seed);

}  // namespace deblur::testing

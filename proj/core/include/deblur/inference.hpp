#pragma once

#include <span>
#include <vector>

#include "deblur/filter_bank.hpp"
#include "deblur/image.hpp"

namespace deblur {

/// Per-pixel restoration: each output pixel is the keyed filter applied to the
/// replicate-padded k x k patch centered on it, clamped to [0,1].
/// Throws std::invalid_argument if the image is smaller than the patch.
Image restore(const Image& degraded, const FilterBank& bank);

/// One restoration per bank, in bank order.
std::vector<Image> restore_multi(const Image& degraded, std::span<const FilterBank> banks);

}  // namespace deblur

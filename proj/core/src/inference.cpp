#include "deblur/inference.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "deblur/parallel.hpp"
#include "deblur/patch.hpp"

namespace deblur {

Image restore(const Image& degraded, const FilterBank& bank) {
    const int k = bank.patch_size;
    if (degraded.width() < k || degraded.height() < k)
        throw std::invalid_argument("image " + std::to_string(degraded.width()) + "x" +
                                    std::to_string(degraded.height()) + " is smaller than the " + std::to_string(k) +
                                    "x" + std::to_string(k) + " restoration patch");

    const PatchSampler sampler(degraded, k);
    const std::size_t taps = static_cast<std::size_t>(k) * k;
    Image out(degraded.width(), degraded.height());

    parallel_for(0, degraded.height(), [&](int y) {
        std::vector<double> patch(taps);
        auto dst = out.row(y);
        for (int x = 0; x < degraded.width(); ++x) {
            sampler.extract(x, y, patch);
            const auto filter = bank.filter(quantize(features(patch, k), bank.quant));
            const double value = std::inner_product(patch.begin(), patch.end(), filter.begin(), 0.0);
            dst[x] = std::clamp(value, 0.0, 1.0);
        }
    });
    return out;
}

std::vector<Image> restore_multi(const Image& degraded, std::span<const FilterBank> banks) {
    std::vector<Image> out;
    out.reserve(banks.size());
    for (const auto& bank : banks) out.push_back(restore(degraded, bank));
    return out;
}

}  // namespace deblur

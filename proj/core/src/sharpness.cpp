#include "deblur/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "deblur/structure_tensor.hpp"

namespace deblur {

void QConfig::validate() const {
    if (patch_size < 2) throw std::invalid_argument("Q tile size must be at least 2");
    if (!(tau >= 0.0 && tau < 1.0)) throw std::invalid_argument("Q anisotropy threshold must lie in [0, 1)");
    if (!(scale > 0.0)) throw std::invalid_argument("Q scale must be positive");
}

namespace {

// Gradient products of one tile; derivatives are taken inside the tile
// (central, one-sided on the tile border) so tiles are independent.
StructureTensor tile_tensor(const Image& image, int x0, int y0, int n) {
    StructureTensor t;
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) {
            const int xl = x == 0 ? x : x - 1;
            const int xr = x == n - 1 ? x : x + 1;
            const int yu = y == 0 ? y : y - 1;
            const int yd = y == n - 1 ? y : y + 1;
            const double gx = (image.at(x0 + xr, y0 + y) - image.at(x0 + xl, y0 + y)) / (xr - xl);
            const double gy = (image.at(x0 + x, y0 + yd) - image.at(x0 + x, y0 + yu)) / (yd - yu);
            t.gxx += gx * gx;
            t.gxy += gx * gy;
            t.gyy += gy * gy;
        }
    return t;
}

}  // namespace

double metric_q(const Image& image, const QConfig& config) {
    config.validate();
    const int n = config.patch_size;
    const int tiles_x = image.width() / n;
    const int tiles_y = image.height() / n;
    if (tiles_x == 0 || tiles_y == 0) throw std::invalid_argument("image is smaller than one Q tile");

    double sum = 0.0;
    for (int ty = 0; ty < tiles_y; ++ty)
        for (int tx = 0; tx < tiles_x; ++tx) {
            const TensorEigen e = eigen(tile_tensor(image, tx * n, ty * n, n));
            const double s1 = std::sqrt(e.lambda1);
            const double s2 = std::sqrt(e.lambda2);
            const double r = s1 + s2 > 0.0 ? (s1 - s2) / (s1 + s2) : 0.0;
            if (r > config.tau) sum += s1 * r;
        }
    return config.scale * sum / (static_cast<double>(tiles_x) * tiles_y);
}

double deviation_v(double q_restored, double q_original, double q_degraded) noexcept {
    const double denominator = q_restored - q_degraded;
    if (denominator == 0.0) return q_restored == q_original ? 0.0 : kUnboundedDeviation;
    return std::abs((q_restored - q_original) / denominator);
}

double index_j(double v) noexcept {
    if (std::isinf(v)) return 0.0;
    return 1.0 / (1.0 + v);
}

SharpnessReport sharpness_report(double q_original, double q_degraded, double q_restored) noexcept {
    SharpnessReport r;
    r.q_original = q_original;
    r.q_degraded = q_degraded;
    r.q_restored = q_restored;
    r.v = deviation_v(q_restored, q_original, q_degraded);
    r.j = index_j(r.v);
    r.well_behaved = q_restored >= std::min(q_original, q_degraded) && q_restored <= std::max(q_original, q_degraded);
    return r;
}

SharpnessReport sharpness_report(const Image& original, const Image& degraded, const Image& restored,
                                 const QConfig& config) {
    if (original.width() != degraded.width() || original.height() != degraded.height() ||
        original.width() != restored.width() || original.height() != restored.height())
        throw std::invalid_argument("sharpness report: image dimensions differ");
    return sharpness_report(metric_q(original, config), metric_q(degraded, config), metric_q(restored, config));
}

}  // namespace deblur

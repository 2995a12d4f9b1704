#include "deblur/structure_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace deblur {

void QuantConfig::validate() const {
    const bool ok = std::isfinite(strength_low) && std::isfinite(strength_high) && std::isfinite(coherence_low) &&
                    std::isfinite(coherence_high) && strength_low >= 0.0 && strength_low <= strength_high &&
                    coherence_low >= 0.0 && coherence_low <= coherence_high && coherence_high <= 1.0;
    if (!ok) throw std::invalid_argument("quantization thresholds must be ordered and non-negative");
}

namespace {

void check_patch(std::span<const double> patch, int size) {
    if (size < 3) throw std::invalid_argument("gradient patches must be at least 3x3");
    if (patch.size() != static_cast<std::size_t>(size) * size)
        throw std::invalid_argument("patch length does not match its size");
}

// Derivative along one line of samples at position i (stride between samples).
inline double diff(const double* p, int i, int n, std::ptrdiff_t stride) noexcept {
    if (i == 0) return p[stride] - p[0];
    if (i == n - 1) return p[(n - 1) * stride] - p[(n - 2) * stride];
    return 0.5 * (p[(i + 1) * stride] - p[(i - 1) * stride]);
}

}  // namespace

GradientField gradients(std::span<const double> patch, int size) {
    check_patch(patch, size);
    GradientField g;
    g.gx.resize(patch.size());
    g.gy.resize(patch.size());
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * size + x;
            g.gx[i] = diff(patch.data() + static_cast<std::size_t>(y) * size, x, size, 1);
            g.gy[i] = diff(patch.data() + x, y, size, size);
        }
    return g;
}

StructureTensor tensor(std::span<const double> patch, int size) {
    check_patch(patch, size);
    StructureTensor t;
    const double* p = patch.data();
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            const double gx = diff(p + static_cast<std::size_t>(y) * size, x, size, 1);
            const double gy = diff(p + x, y, size, size);
            t.gxx += gx * gx;
            t.gxy += gx * gy;
            t.gyy += gy * gy;
        }
    return t;
}

TensorEigen eigen(const StructureTensor& t) noexcept {
    const double a = t.gxx;
    const double b = t.gxy;
    const double c = t.gyy;
    const double half_trace = 0.5 * (a + c);
    const double radius = std::hypot(0.5 * (a - c), b);

    TensorEigen e;
    e.lambda1 = std::max(0.0, half_trace + radius);
    e.lambda2 = std::max(0.0, half_trace - radius);
    if (radius == 0.0) return e;  // isotropic or zero: keep (1, 0)

    // Of the two equivalent eigenvector forms, use the one with the larger
    // leading component to avoid cancellation.
    double vx;
    double vy;
    if (a >= c) {
        vx = half_trace + radius - c;
        vy = b;
    } else {
        vx = b;
        vy = half_trace + radius - a;
    }
    const double norm = std::hypot(vx, vy);
    e.vx = vx / norm;
    e.vy = vy / norm;
    return e;
}

PatchFeatures features(const StructureTensor& t) noexcept {
    const TensorEigen e = eigen(t);
    PatchFeatures f;
    double angle = std::atan2(e.vy, e.vx);
    if (angle < 0.0) angle += std::numbers::pi;
    if (angle >= std::numbers::pi) angle -= std::numbers::pi;
    f.angle = angle;

    const double s1 = std::sqrt(e.lambda1);
    const double s2 = std::sqrt(e.lambda2);
    f.strength = s1;
    f.coherence = s1 + s2 > 0.0 ? std::clamp((s1 - s2) / (s1 + s2), 0.0, 1.0) : 0.0;
    return f;
}

PatchFeatures features(std::span<const double> patch, int size) { return features(tensor(patch, size)); }

namespace {

int bucket(double value, double low, double high) noexcept {
    if (value < low) return 0;
    if (value < high) return 1;
    return 2;
}

}  // namespace

PatchKey quantize(const PatchFeatures& f, const QuantConfig& config) noexcept {
    PatchKey key;
    const double scaled = f.angle / std::numbers::pi * PatchKey::kAngleBins;
    key.angle_bin = std::clamp(static_cast<int>(std::floor(scaled)), 0, PatchKey::kAngleBins - 1);
    key.strength_bin = bucket(f.strength, config.strength_low, config.strength_high);
    key.coherence_bin = bucket(f.coherence, config.coherence_low, config.coherence_high);
    return key;
}

}  // namespace deblur

#pragma once

#include <limits>

#include "deblur/image.hpp"

namespace deblur {

struct QConfig {
    int patch_size = 8;  // side of the non-overlapping tiles
    double tau = 0.10;   // tiles with coherence R > tau count as anisotropic
    double scale = 64.0;

    void validate() const;
};

/// No-reference sharpness: scale * (sum over anisotropic tiles of s1 * R) / tile count,
/// where s1 >= s2 are the singular values of the tile's gradient matrix and
/// R = (s1 - s2) / (s1 + s2). Partial edge tiles are ignored.
double metric_q(const Image& image, const QConfig& config = {});

/// Sentinel for an unbounded deviation (restoration no sharper than the degraded input).
inline constexpr double kUnboundedDeviation = std::numeric_limits<double>::infinity();

/// |(q_restored - q_original) / (q_restored - q_degraded)|; 0 when all three agree.
double deviation_v(double q_restored, double q_original, double q_degraded) noexcept;

/// 1 / (1 + v), mapping the unbounded sentinel to 0.
double index_j(double v) noexcept;

struct SharpnessReport {
    double q_original = 0.0;
    double q_degraded = 0.0;
    double q_restored = 0.0;
    double v = 0.0;
    double j = 1.0;
    bool well_behaved = true;  // q_restored lies between q_degraded and q_original
};

SharpnessReport sharpness_report(const Image& original, const Image& degraded, const Image& restored,
                                 const QConfig& config = {});

/// Report from precomputed Q values.
SharpnessReport sharpness_report(double q_original, double q_degraded, double q_restored) noexcept;

}  // namespace deblur

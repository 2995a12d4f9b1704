#pragma once

#include <span>
#include <vector>

namespace deblur {

/// Gradient statistics of a patch. `angle` is the orientation of the dominant
/// gradient direction in [0, pi), with x along columns and y down the rows.
struct PatchFeatures {
    double angle = 0.0;
    double strength = 0.0;   // sqrt of the largest eigenvalue
    double coherence = 0.0;  // (sqrt(l1) - sqrt(l2)) / (sqrt(l1) + sqrt(l2))
};

/// Summed gradient products over a patch (the 2x2 matrix G^T G).
struct StructureTensor {
    double gxx = 0.0;
    double gxy = 0.0;
    double gyy = 0.0;
};

struct TensorEigen {
    double lambda1 = 0.0;  // largest
    double lambda2 = 0.0;
    double vx = 1.0;       // unit eigenvector of lambda1
    double vy = 0.0;
};

/// Thresholds for the strength and coherence buckets. Values below `*_low`
/// land in bucket 0, values below `*_high` in bucket 1, the rest in bucket 2.
struct QuantConfig {
    double strength_low = 0.01;
    double strength_high = 0.06;
    double coherence_low = 0.25;
    double coherence_high = 0.5;

    void validate() const;
    bool operator==(const QuantConfig&) const = default;
};

/// Dictionary index: 24 angle bins x 3 strength bins x 3 coherence bins.
struct PatchKey {
    static constexpr int kAngleBins = 24;
    static constexpr int kStrengthBins = 3;
    static constexpr int kCoherenceBins = 3;
    static constexpr int kCount = kAngleBins * kStrengthBins * kCoherenceBins;

    int angle_bin = 0;
    int strength_bin = 0;
    int coherence_bin = 0;

    /// Flat index, angle-major: (angle * 3 + strength) * 3 + coherence.
    constexpr int index() const noexcept { return (angle_bin * kStrengthBins + strength_bin) * kCoherenceBins + coherence_bin; }
    static constexpr PatchKey from_index(int index) noexcept {
        return {index / (kStrengthBins * kCoherenceBins), (index / kCoherenceBins) % kStrengthBins, index % kCoherenceBins};
    }
    bool operator==(const PatchKey&) const = default;
};

struct GradientField {
    std::vector<double> gx;
    std::vector<double> gy;
};

/// Per-pixel gradients of a row-major size x size patch: central differences
/// inside, one-sided differences on the patch border. Requires size >= 3.
GradientField gradients(std::span<const double> patch, int size);

StructureTensor tensor(std::span<const double> patch, int size);

/// Closed-form eigen decomposition of the symmetric 2x2 tensor. Round-off
/// negatives are clamped to zero; a zero tensor yields eigenvector (1, 0).
TensorEigen eigen(const StructureTensor& t) noexcept;

PatchFeatures features(const StructureTensor& t) noexcept;
PatchFeatures features(std::span<const double> patch, int size);

PatchKey quantize(const PatchFeatures& f, const QuantConfig& config) noexcept;

}  // namespace deblur

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace deblur {

/// Single-channel luminance plane, row-major, values nominally in [0,1].
class Image {
public:
    Image() = default;
    Image(int width, int height, double fill = 0.0);
    Image(int width, int height, std::vector<double> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& at(int x, int y) noexcept { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    double at(int x, int y) const noexcept { return data_[static_cast<std::size_t>(y) * width_ + x]; }

    /// Replicate-edge access: coordinates outside the plane clamp to the border.
    double clamped(int x, int y) const noexcept;

    std::span<double> row(int y) noexcept { return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)}; }
    std::span<const double> row(int y) const noexcept { return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)}; }

    std::span<double> pixels() noexcept { return data_; }
    std::span<const double> pixels() const noexcept { return data_; }

    void clamp_unit() noexcept;

    bool operator==(const Image&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
};

/// Normalized square convolution kernel with odd side length.
class BlurKernel {
public:
    BlurKernel(int size, std::vector<double> taps);

    static BlurKernel identity() { return BlurKernel(1, {1.0}); }

    int size() const noexcept { return size_; }
    int radius() const noexcept { return size_ / 2; }
    double tap(int dx, int dy) const noexcept { return taps_[static_cast<std::size_t>(dy + radius()) * size_ + dx + radius()]; }
    std::span<const double> taps() const noexcept { return taps_; }

private:
    int size_;
    std::vector<double> taps_;
};

/// Only replicate-edge padding is supported.
enum class BorderPolicy { replicate };

struct NoiseSpec {
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

BlurKernel gaussian_kernel(int size, double sigma);
BlurKernel box_kernel(int size);

/// Replicate-padded 2-D convolution, output clamped to [0,1].
Image convolve(const Image& image, const BlurKernel& kernel,
               BorderPolicy border = BorderPolicy::replicate);

/// Blur followed by seeded additive Gaussian noise; clamped to [0,1].
Image degrade(const Image& image, const BlurKernel& kernel, const NoiseSpec& noise = {});

/// Returns +infinity for identical images.
double psnr(const Image& reference, const Image& test);

/// Mean SSIM over all valid 11x11 Gaussian windows (sigma 1.5), dynamic range 1.
double ssim(const Image& reference, const Image& test);

}  // namespace deblur

#include "deblur/image.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "deblur/parallel.hpp"

namespace deblur {

Image::Image(int width, int height, double fill) : width_(width), height_(height) {
    if (width < 0 || height < 0) throw std::invalid_argument("image dimensions must be non-negative");
    data_.assign(static_cast<std::size_t>(width) * height, fill);
}

Image::Image(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
    if (width < 0 || height < 0) throw std::invalid_argument("image dimensions must be non-negative");
    if (data_.size() != static_cast<std::size_t>(width) * height)
        throw std::invalid_argument("image data length " + std::to_string(data_.size()) +
                                    " does not match " + std::to_string(width) + "x" + std::to_string(height));
}

double Image::clamped(int x, int y) const noexcept {
    x = std::clamp(x, 0, width_ - 1);
    y = std::clamp(y, 0, height_ - 1);
    return at(x, y);
}

void Image::clamp_unit() noexcept {
    for (double& v : data_) v = std::clamp(v, 0.0, 1.0);
}

BlurKernel::BlurKernel(int size, std::vector<double> taps) : size_(size), taps_(std::move(taps)) {
    if (size < 1 || size % 2 == 0) throw std::invalid_argument("kernel size must be odd and positive");
    if (taps_.size() != static_cast<std::size_t>(size) * size)
        throw std::invalid_argument("kernel tap count does not match size");
    double sum = 0.0;
    for (double t : taps_) {
        if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("kernel taps must be finite and non-negative");
        sum += t;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("kernel taps must sum to 1");
}

BlurKernel gaussian_kernel(int size, double sigma) {
    if (size < 1 || size % 2 == 0) throw std::invalid_argument("gaussian kernel size must be odd and positive");
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian sigma must be positive");

    const int r = size / 2;
    std::vector<double> taps;
    taps.reserve(static_cast<std::size_t>(size) * size);
    for (int y = -r; y <= r; ++y)
        for (int x = -r; x <= r; ++x) taps.push_back(std::exp(-(x * x + y * y) / (2.0 * sigma * sigma)));
    const double sum = std::accumulate(taps.begin(), taps.end(), 0.0);
    for (double& t : taps) t /= sum;
    return BlurKernel(size, std::move(taps));
}

BlurKernel box_kernel(int size) {
    if (size < 1 || size % 2 == 0) throw std::invalid_argument("box kernel size must be odd and positive");
    const auto n = static_cast<std::size_t>(size) * size;
    return BlurKernel(size, std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

namespace {

// Copy of the image with a replicated border of the given radius.
Image pad_replicate(const Image& image, int radius) {
    Image padded(image.width() + 2 * radius, image.height() + 2 * radius);
    for (int y = 0; y < padded.height(); ++y)
        for (int x = 0; x < padded.width(); ++x) padded.at(x, y) = image.clamped(x - radius, y - radius);
    return padded;
}

}  // namespace

Image convolve(const Image& image, const BlurKernel& kernel, BorderPolicy) {
    if (image.empty()) throw std::invalid_argument("cannot convolve an empty image");
    const int r = kernel.radius();
    if (r == 0) {
        Image out = image;
        out.clamp_unit();
        return out;
    }

    const Image padded = pad_replicate(image, r);
    Image out(image.width(), image.height());
    const int k = kernel.size();
    // Convolution flips the kernel; reversing the tap order turns it into a correlation.
    std::vector<double> flipped(kernel.taps().rbegin(), kernel.taps().rend());

    parallel_for(0, image.height(), [&](int y) {
        auto dst = out.row(y);
        for (int x = 0; x < image.width(); ++x) {
            double acc = 0.0;
            for (int ky = 0; ky < k; ++ky) {
                const double* src = padded.row(y + ky).data() + x;
                const double* t = flipped.data() + static_cast<std::size_t>(ky) * k;
                for (int kx = 0; kx < k; ++kx) acc += t[kx] * src[kx];
            }
            dst[x] = acc;
        }
    });

    out.clamp_unit();
    return out;
}

Image degrade(const Image& image, const BlurKernel& kernel, const NoiseSpec& noise) {
    if (noise.sigma < 0.0) throw std::invalid_argument("noise sigma must be non-negative");
    Image out = convolve(image, kernel);
    if (noise.sigma > 0.0) {
        std::mt19937_64 rng(noise.seed);
        std::normal_distribution<double> dist(0.0, noise.sigma);
        for (double& v : out.pixels()) v += dist(rng);
        out.clamp_unit();
    }
    return out;
}

namespace {

void require_same_shape(const Image& a, const Image& b, const char* what) {
    if (a.width() != b.width() || a.height() != b.height())
        throw std::invalid_argument(std::string(what) + ": image dimensions differ");
}

}  // namespace

double psnr(const Image& reference, const Image& test) {
    require_same_shape(reference, test, "psnr");
    if (reference.empty()) throw std::invalid_argument("psnr: empty images");
    double sse = 0.0;
    const auto a = reference.pixels();
    const auto b = test.pixels();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sse += d * d;
    }
    if (sse == 0.0) return std::numeric_limits<double>::infinity();
    const double mse = sse / static_cast<double>(a.size());
    return 10.0 * std::log10(1.0 / mse);
}

namespace {

constexpr int kSsimWindow = 11;
constexpr double kSsimSigma = 1.5;

// Separable 'valid' filtering with a normalized 1-D Gaussian.
std::vector<double> filter_valid(std::span<const double> src, int w, int h, std::span<const double> g) {
    const int n = static_cast<int>(g.size());
    const int ow = w - n + 1;
    const int oh = h - n + 1;
    std::vector<double> tmp(static_cast<std::size_t>(ow) * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i) acc += g[i] * src[static_cast<std::size_t>(y) * w + x + i];
            tmp[static_cast<std::size_t>(y) * ow + x] = acc;
        }
    std::vector<double> out(static_cast<std::size_t>(ow) * oh);
    for (int y = 0; y < oh; ++y)
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i) acc += g[i] * tmp[static_cast<std::size_t>(y + i) * ow + x];
            out[static_cast<std::size_t>(y) * ow + x] = acc;
        }
    return out;
}

}  // namespace

double ssim(const Image& reference, const Image& test) {
    require_same_shape(reference, test, "ssim");
    const int w = reference.width();
    const int h = reference.height();
    if (w < kSsimWindow || h < kSsimWindow)
        throw std::invalid_argument("ssim: image smaller than the 11x11 window");

    std::vector<double> g(kSsimWindow);
    for (int i = 0; i < kSsimWindow; ++i) {
        const double d = i - kSsimWindow / 2;
        g[i] = std::exp(-d * d / (2.0 * kSsimSigma * kSsimSigma));
    }
    const double gsum = std::accumulate(g.begin(), g.end(), 0.0);
    for (double& v : g) v /= gsum;

    const auto x = reference.pixels();
    const auto y = test.pixels();
    std::vector<double> xx(x.size()), yy(x.size()), xy(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        xx[i] = x[i] * x[i];
        yy[i] = y[i] * y[i];
        xy[i] = x[i] * y[i];
    }

    const auto mu_x = filter_valid(x, w, h, g);
    const auto mu_y = filter_valid(y, w, h, g);
    const auto e_xx = filter_valid(xx, w, h, g);
    const auto e_yy = filter_valid(yy, w, h, g);
    const auto e_xy = filter_valid(xy, w, h, g);

    constexpr double c1 = (0.01 * 1.0) * (0.01 * 1.0);
    constexpr double c2 = (0.03 * 1.0) * (0.03 * 1.0);
    double total = 0.0;
    for (std::size_t i = 0; i < mu_x.size(); ++i) {
        const double mx = mu_x[i];
        const double my = mu_y[i];
        const double vx = e_xx[i] - mx * mx;
        const double vy = e_yy[i] - my * my;
        const double cxy = e_xy[i] - mx * my;
        total += ((2.0 * mx * my + c1) * (2.0 * cxy + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
    }
    return total / static_cast<double>(mu_x.size());
}

}  // namespace deblur

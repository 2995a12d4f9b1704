#include "deblur/patch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace deblur {

PatchSampler::PatchSampler(const Image& image, int patch_size) : size_(patch_size) {
    if (patch_size < 1 || patch_size % 2 == 0) throw std::invalid_argument("patch size must be odd and positive");
    if (image.empty()) throw std::invalid_argument("cannot sample patches from an empty image");
    const int r = patch_size / 2;
    padded_ = Image(image.width() + 2 * r, image.height() + 2 * r);
    for (int y = 0; y < padded_.height(); ++y)
        for (int x = 0; x < padded_.width(); ++x) padded_.at(x, y) = image.clamped(x - r, y - r);
}

void PatchSampler::extract(int cx, int cy, std::span<double> out) const noexcept {
    // Padded coordinates of the patch's top-left corner are exactly (cx, cy).
    for (int y = 0; y < size_; ++y) {
        const auto src = padded_.row(cy + y).subspan(static_cast<std::size_t>(cx), static_cast<std::size_t>(size_));
        std::copy(src.begin(), src.end(), out.begin() + static_cast<std::ptrdiff_t>(y) * size_);
    }
}

const char* to_string(Dihedral g) noexcept {
    switch (g) {
        case Dihedral::identity: return "identity";
        case Dihedral::rotate90: return "rotate90";
        case Dihedral::rotate180: return "rotate180";
        case Dihedral::rotate270: return "rotate270";
        case Dihedral::flip_x: return "flip_x";
        case Dihedral::flip_y: return "flip_y";
        case Dihedral::transpose: return "transpose";
        case Dihedral::anti_transpose: return "anti_transpose";
    }
    return "unknown";
}

std::array<int, 2> apply(Dihedral g, int x, int y) noexcept {
    switch (g) {
        case Dihedral::identity: return {x, y};
        case Dihedral::rotate90: return {-y, x};
        case Dihedral::rotate180: return {-x, -y};
        case Dihedral::rotate270: return {y, -x};
        case Dihedral::flip_x: return {-x, y};
        case Dihedral::flip_y: return {x, -y};
        case Dihedral::transpose: return {y, x};
        case Dihedral::anti_transpose: return {-y, -x};
    }
    return {x, y};
}

std::vector<int> source_permutation(Dihedral g, int patch_size) {
    if (patch_size < 1 || patch_size % 2 == 0) throw std::invalid_argument("patch size must be odd and positive");
    const int r = patch_size / 2;
    std::vector<int> source(static_cast<std::size_t>(patch_size) * patch_size);
    for (int y = -r; y <= r; ++y)
        for (int x = -r; x <= r; ++x) {
            const auto [tx, ty] = apply(g, x, y);
            source[static_cast<std::size_t>(ty + r) * patch_size + tx + r] = (y + r) * patch_size + x + r;
        }
    return source;
}

std::vector<double> transform_patch(std::span<const double> patch, int patch_size, Dihedral g) {
    const auto source = source_permutation(g, patch_size);
    if (patch.size() != source.size()) throw std::invalid_argument("patch length does not match its size");
    std::vector<double> out(patch.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = patch[source[i]];
    return out;
}

Image transform_image(const Image& image, Dihedral g) {
    const int w = image.width();
    const int h = image.height();
    const bool swaps = g == Dihedral::rotate90 || g == Dihedral::rotate270 || g == Dihedral::transpose ||
                       g == Dihedral::anti_transpose;
    Image out(swaps ? h : w, swaps ? w : h);
    // Work in doubled coordinates about the image center so even sizes map exactly.
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const auto [tx, ty] = apply(g, 2 * x - (w - 1), 2 * y - (h - 1));
            const int ox = (tx + out.width() - 1) / 2;
            const int oy = (ty + out.height() - 1) / 2;
            out.at(ox, oy) = image.at(x, y);
        }
    return out;
}

int transform_angle_bin(int angle_bin, Dihedral g) noexcept {
    // Transform the bin's center direction; every element maps bin edges onto
    // bin edges because 90 degrees spans a whole number of bins.
    const double center = (angle_bin + 0.5) * std::numbers::pi / PatchKey::kAngleBins;
    const double cx = std::cos(center);
    const double cy = std::sin(center);
    double tx = cx;
    double ty = cy;
    switch (g) {
        case Dihedral::identity: break;
        case Dihedral::rotate90: tx = -cy; ty = cx; break;
        case Dihedral::rotate180: tx = -cx; ty = -cy; break;
        case Dihedral::rotate270: tx = cy; ty = -cx; break;
        case Dihedral::flip_x: tx = -cx; break;
        case Dihedral::flip_y: ty = -cy; break;
        case Dihedral::transpose: tx = cy; ty = cx; break;
        case Dihedral::anti_transpose: tx = -cy; ty = -cx; break;
    }
    double angle = std::atan2(ty, tx);
    if (angle < 0.0) angle += std::numbers::pi;
    if (angle >= std::numbers::pi) angle -= std::numbers::pi;
    const int bin = static_cast<int>(std::floor(angle / std::numbers::pi * PatchKey::kAngleBins));
    return std::clamp(bin, 0, PatchKey::kAngleBins - 1);
}

PatchKey transform_key(PatchKey key, Dihedral g) noexcept {
    key.angle_bin = transform_angle_bin(key.angle_bin, g);
    return key;
}

}  // namespace deblur

#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>

#include "deblur/image.hpp"

namespace deblur {

class ImageIoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads PNG (8/16-bit; gray, gray+alpha, RGB, RGBA, palette) or binary PGM (P5).
/// Color is reduced to luminance with BT.601 weights; alpha is ignored.
Image load_image(const std::filesystem::path& path);

/// Writes an 8-bit grayscale PNG, quantizing with round-half-up.
/// Entries of `text` are stored as PNG tEXt chunks.
void save_image(const Image& image, const std::filesystem::path& path,
                const std::map<std::string, std::string>& text = {});

/// 8-bit code written for a luminance value.
std::uint8_t quantize_8bit(double value) noexcept;

}  // namespace deblur

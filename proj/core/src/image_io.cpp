#include "deblur/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <memory>
#include <vector>

namespace deblur {

namespace {

constexpr double kLumaR = 0.299;
constexpr double kLumaG = 0.587;
constexpr double kLumaB = 0.114;

struct FileCloser {
    void operator()(std::FILE* f) const noexcept { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

// State that must survive a longjmp out of libpng lives on the heap.
struct PngReadState {
    std::vector<png_byte> pixels;
    std::vector<png_bytep> rows;
    char message[256] = {};
};

void png_error_to_buffer(png_structp png, png_const_charp msg) {
    auto* message = static_cast<char*>(png_get_error_ptr(png));
    std::snprintf(message, 256, "%s", msg);
    png_longjmp(png, 1);
}

void png_warning_ignore(png_structp, png_const_charp) {}

Image load_png(const std::filesystem::path& path, std::FILE* file) {
    auto state = std::make_unique<PngReadState>();
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, state->message, png_error_to_buffer,
                                             png_warning_ignore);
    if (!png) throw ImageIoError("libpng initialization failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw ImageIoError("libpng initialization failed");
    }

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw ImageIoError(path.string() + ": " + state->message);
    }

    png_init_io(png, file);
    png_read_info(png, info);

    const png_byte color_type = png_get_color_type(png, info);
    const png_byte bit_depth = png_get_bit_depth(png, info);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    png_read_update_info(png, info);

    const auto width = static_cast<int>(png_get_image_width(png, info));
    const auto height = static_cast<int>(png_get_image_height(png, info));
    const int channels = png_get_channels(png, info);
    const int depth = png_get_bit_depth(png, info);
    const std::size_t rowbytes = png_get_rowbytes(png, info);

    state->pixels.resize(rowbytes * static_cast<std::size_t>(height));
    state->rows.resize(static_cast<std::size_t>(height));
    for (int y = 0; y < height; ++y) state->rows[y] = state->pixels.data() + rowbytes * y;
    png_read_image(png, state->rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    auto sample = [&](const png_byte* row, int index) -> double {
        if (depth == 16) return ((row[2 * index] << 8) | row[2 * index + 1]) / 65535.0;
        return row[index] / 255.0;
    };

    Image image(width, height);
    for (int y = 0; y < height; ++y) {
        const png_byte* row = state->rows[y];
        for (int x = 0; x < width; ++x) {
            if (channels >= 3) {
                image.at(x, y) = kLumaR * sample(row, x * channels) + kLumaG * sample(row, x * channels + 1) +
                                 kLumaB * sample(row, x * channels + 2);
            } else {
                image.at(x, y) = sample(row, x * channels);
            }
        }
    }
    image.clamp_unit();
    return image;
}

// Binary PGM: "P5", width, height, maxval separated by whitespace/comments, one
// whitespace byte, then big-endian samples (two bytes when maxval > 255).
Image load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ImageIoError(path.string() + ": cannot open");

    auto next_token = [&]() -> long {
        int c = in.get();
        while (in && (std::isspace(c) || c == '#')) {
            if (c == '#')
                while (in && c != '\n') c = in.get();
            c = in.get();
        }
        long value = 0;
        bool any = false;
        while (in && std::isdigit(c)) {
            value = value * 10 + (c - '0');
            any = true;
            c = in.get();
        }
        if (!any) throw ImageIoError(path.string() + ": malformed PGM header");
        return value;
    };

    char magic[2] = {};
    in.read(magic, 2);
    if (magic[0] != 'P' || magic[1] != '5') throw ImageIoError(path.string() + ": not a binary PGM");
    const long width = next_token();
    const long height = next_token();
    const long maxval = next_token();
    if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 65535)
        throw ImageIoError(path.string() + ": invalid PGM header values");

    const int bytes = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> raw(static_cast<std::size_t>(width * height * bytes));
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (in.gcount() != static_cast<std::streamsize>(raw.size())) throw ImageIoError(path.string() + ": truncated PGM data");

    Image image(static_cast<int>(width), static_cast<int>(height));
    auto px = image.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) {
        const unsigned v = bytes == 2 ? (raw[2 * i] << 8) | raw[2 * i + 1] : raw[i];
        px[i] = std::min(1.0, v / static_cast<double>(maxval));
    }
    return image;
}

}  // namespace

Image load_image(const std::filesystem::path& path) {
    FilePtr file(std::fopen(path.c_str(), "rb"));
    if (!file) throw ImageIoError(path.string() + ": cannot open");

    std::array<unsigned char, 8> header{};
    const std::size_t got = std::fread(header.data(), 1, header.size(), file.get());
    if (got == header.size() && png_sig_cmp(header.data(), 0, header.size()) == 0) {
        std::rewind(file.get());
        return load_png(path, file.get());
    }
    if (got >= 2 && header[0] == 'P' && header[1] == '5') return load_pgm(path);
    throw ImageIoError(path.string() + ": unsupported image format (expected PNG or binary PGM)");
}

std::uint8_t quantize_8bit(double value) noexcept {
    const double scaled = std::floor(std::clamp(value, 0.0, 1.0) * 255.0 + 0.5);
    return static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
}

void save_image(const Image& image, const std::filesystem::path& path,
                const std::map<std::string, std::string>& text) {
    if (image.empty()) throw ImageIoError(path.string() + ": refusing to write an empty image");

    struct WriteState {
        std::vector<png_byte> pixels;
        std::vector<png_bytep> rows;
        std::vector<png_text> chunks;
        char message[256] = {};
    };
    auto state = std::make_unique<WriteState>();
    state->pixels.resize(image.size());
    const auto src = image.pixels();
    std::transform(src.begin(), src.end(), state->pixels.begin(), quantize_8bit);
    for (int y = 0; y < image.height(); ++y)
        state->rows.push_back(state->pixels.data() + static_cast<std::size_t>(y) * image.width());
    for (const auto& [key, value] : text) {
        png_text chunk{};
        chunk.compression = PNG_TEXT_COMPRESSION_NONE;
        chunk.key = const_cast<char*>(key.c_str());
        chunk.text = const_cast<char*>(value.c_str());
        chunk.text_length = value.size();
        state->chunks.push_back(chunk);
    }

    FilePtr file(std::fopen(path.c_str(), "wb"));
    if (!file) throw ImageIoError(path.string() + ": cannot open for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, state->message, png_error_to_buffer,
                                              png_warning_ignore);
    if (!png) throw ImageIoError("libpng initialization failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw ImageIoError("libpng initialization failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw ImageIoError(path.string() + ": " + state->message);
    }

    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(image.width()), static_cast<png_uint_32>(image.height()), 8,
                 PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    if (!state->chunks.empty())
        png_set_text(png, info, state->chunks.data(), static_cast<int>(state->chunks.size()));
    png_write_info(png, info);
    png_write_image(png, state->rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);

    if (std::fflush(file.get()) != 0) throw ImageIoError(path.string() + ": write failed");
}

}  // namespace deblur

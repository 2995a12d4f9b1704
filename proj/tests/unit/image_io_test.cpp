#include <gtest/gtest.h>
#include <png.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "deblur/image_io.hpp"
#include "synthetic.hpp"

namespace deblur {
namespace {

namespace fs = std::filesystem;

class ImageIo : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("deblur_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path dir_;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

TEST(Quantize, RoundsHalfUpAndClamps) {
    EXPECT_EQ(quantize_8bit(0.0), 0);
    EXPECT_EQ(quantize_8bit(1.0), 255);
    EXPECT_EQ(quantize_8bit(-3.0), 0);
    EXPECT_EQ(quantize_8bit(7.0), 255);
    EXPECT_EQ(quantize_8bit(0.5 / 255.0), 1);
    EXPECT_EQ(quantize_8bit(127.5 / 255.0), 128);
}

TEST_F(ImageIo, PngRoundTripIsExactOnTheEightBitGrid) {
    Image img(9, 5);
    for (std::size_t i = 0; i < img.size(); ++i) img.pixels()[i] = static_cast<double>((i * 37) % 256) / 255.0;
    save_image(img, dir_ / "a.png");
    EXPECT_EQ(load_image(dir_ / "a.png"), img);
}

TEST_F(ImageIo, PngRoundTripIsWithinHalfAStep) {
    const Image img = testing::random_image(31, 17, 9);
    save_image(img, dir_ / "b.png");
    const Image back = load_image(dir_ / "b.png");
    ASSERT_EQ(back.width(), 31);
    ASSERT_EQ(back.height(), 17);
    for (std::size_t i = 0; i < img.size(); ++i) EXPECT_LE(std::abs(back.pixels()[i] - img.pixels()[i]), 0.5 / 255.0 + 1e-12);
}

TEST_F(ImageIo, TextChunksAreStored) {
    save_image(Image(4, 4, 0.5), dir_ / "t.png", {{"Manifest", "out/manifest.json"}});
    const std::string bytes = slurp(dir_ / "t.png");
    EXPECT_NE(bytes.find("tEXtManifest"), std::string::npos);
    EXPECT_NE(bytes.find("out/manifest.json"), std::string::npos);
}

TEST_F(ImageIo, ReadsEightAndSixteenBitPgm) {
    {
        std::ofstream out(dir_ / "a.pgm", std::ios::binary);
        out << "P5\n# comment\n3 1\n255\n";
        out.put(static_cast<char>(0)).put(static_cast<char>(255)).put(static_cast<char>(51));
    }
    const Image a = load_image(dir_ / "a.pgm");
    ASSERT_EQ(a.width(), 3);
    EXPECT_DOUBLE_EQ(a.at(0, 0), 0.0);
    EXPECT_DOUBLE_EQ(a.at(1, 0), 1.0);
    EXPECT_DOUBLE_EQ(a.at(2, 0), 0.2);
    {
        std::ofstream out(dir_ / "b.pgm", std::ios::binary);
        out << "P5 2 1 1000\n";
        const unsigned char raw[] = {0x01, 0xF4, 0x03, 0xE8};  // 500, 1000
        out.write(reinterpret_cast<const char*>(raw), 4);
    }
    const Image b = load_image(dir_ / "b.pgm");
    EXPECT_DOUBLE_EQ(b.at(0, 0), 0.5);
    EXPECT_DOUBLE_EQ(b.at(1, 0), 1.0);
}

TEST_F(ImageIo, ColorPngIsReducedToLuma) {
    const fs::path path = dir_ / "rgb.png";
    std::FILE* f = std::fopen(path.c_str(), "wb");
    ASSERT_NE(f, nullptr);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    png_init_io(png, f);
    png_set_IHDR(png, info, 2, 1, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_byte row[6] = {255, 0, 0, 0, 0, 255};
    png_write_row(png, row);
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    std::fclose(f);

    const Image img = load_image(path);
    EXPECT_NEAR(img.at(0, 0), 0.299, 1e-12);
    EXPECT_NEAR(img.at(1, 0), 0.114, 1e-12);
}

TEST_F(ImageIo, RejectsMissingAndUnknownFiles) {
    EXPECT_THROW(load_image(dir_ / "missing.png"), ImageIoError);
    std::ofstream(dir_ / "junk.png") << "not an image";
    EXPECT_THROW(load_image(dir_ / "junk.png"), ImageIoError);
    std::ofstream(dir_ / "short.pgm", std::ios::binary) << "P5 4 4 255\nab";
    EXPECT_THROW(load_image(dir_ / "short.pgm"), ImageIoError);
}

TEST_F(ImageIo, TruncatedPngIsAnError) {
    save_image(testing::random_image(40, 40, 1), dir_ / "full.png");
    const std::string bytes = slurp(dir_ / "full.png");
    std::ofstream(dir_ / "cut.png", std::ios::binary) << bytes.substr(0, bytes.size() / 2);
    EXPECT_THROW(load_image(dir_ / "cut.png"), ImageIoError);
}

}  // namespace
}  // namespace deblur

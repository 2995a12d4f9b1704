#include <gtest/gtest.h>

#include <cmath>

#include "deblur/filter_learning.hpp"
#include "deblur/inference.hpp"
#include "synthetic.hpp"

namespace deblur {
namespace {

TEST(Restore, IdentityBankReproducesInput) {
    const Image img = testing::random_image(23, 19, 1);
    EXPECT_EQ(restore(img, FilterBank::identity(7)), img);
}

TEST(Restore, ConstantImageStaysConstantUnderNormalizedFilters) {
    FilterBank bank = FilterBank::identity(5);
    for (auto& f : bank.filters) std::fill(f.begin(), f.end(), 1.0 / 25.0);
    const Image out = restore(Image(12, 12, 0.42), bank);
    for (double v : out.pixels()) EXPECT_NEAR(v, 0.42, 1e-12);
}

TEST(Restore, AppliesTheKeyedFilter) {
    // Shift filter: output takes the left neighbour.
    FilterBank bank = FilterBank::identity(3);
    for (auto& f : bank.filters) {
        std::fill(f.begin(), f.end(), 0.0);
        f[3] = 1.0;
    }
    const Image img = testing::random_image(8, 6, 2);
    const Image out = restore(img, bank);
    for (int y = 0; y < 6; ++y)
        for (int x = 0; x < 8; ++x) EXPECT_EQ(out.at(x, y), img.clamped(x - 1, y));
}

TEST(Restore, OutputIsClampedToUnitRange) {
    FilterBank bank = FilterBank::identity(3);
    for (auto& f : bank.filters) f[4] = 3.0;
    const Image out = restore(testing::random_image(9, 9, 3), bank);
    for (double v : out.pixels()) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
    }
}

TEST(Restore, IsLocalToThePatchNeighbourhood) {
    std::vector<Image> corpus{testing::texture_image(40, 40, 4)};
    TrainConfig config;
    config.patch_size = 5;
    config.kernel = KernelSpec::parse("gaussian:5:1.0");
    const FilterBank bank = train(corpus, config);
    Image img = testing::texture_image(30, 30, 5);
    const Image before = restore(img, bank);
    img.at(15, 15) = 1.0 - img.at(15, 15);
    const Image after = restore(img, bank);
    // Keys are computed from the patch alone, so influence stops at the patch radius.
    for (int y = 0; y < 30; ++y)
        for (int x = 0; x < 30; ++x)
            if (std::max(std::abs(x - 15), std::abs(y - 15)) > 2) EXPECT_EQ(before.at(x, y), after.at(x, y)) << x << "," << y;
}

TEST(Restore, RejectsImagesSmallerThanThePatch) {
    EXPECT_THROW(restore(Image(6, 20), FilterBank::identity(7)), std::invalid_argument);
    EXPECT_NO_THROW(restore(Image(7, 7), FilterBank::identity(7)));
}

TEST(Restore, MultiAppliesEachBankInOrder) {
    const Image img = testing::random_image(10, 10, 6);
    FilterBank shift = FilterBank::identity(3);
    for (auto& f : shift.filters) {
        std::fill(f.begin(), f.end(), 0.0);
        f[5] = 1.0;
    }
    const std::vector<FilterBank> banks{FilterBank::identity(3), shift};
    const auto out = restore_multi(img, banks);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0], img);
    EXPECT_EQ(out[1], restore(img, shift));
}

}  // namespace
}  // namespace deblur

#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "deblur/filter_learning.hpp"
#include "deblur/image_io.hpp"
#include "deblur/patch.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

namespace deblur {
namespace {

Accumulator random_full_rank(int taps, std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    Eigen::MatrixXd a(taps + 15, taps);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = n(rng);
    Eigen::VectorXd b(a.rows());
    for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = n(rng);
    Accumulator acc;
    acc.ata = a.transpose() * a;
    acc.atb = a.transpose() * b;
    acc.count = static_cast<std::uint64_t>(a.rows());
    return acc;
}

double relative_error(const std::vector<double>& x, const std::vector<double>& ref) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - ref[i]) * (x[i] - ref[i]);
        den += ref[i] * ref[i];
    }
    return std::sqrt(num / den);
}

TEST(Solve, MatchesEliminationOracleOnFullRankSystems) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const Accumulator acc = random_full_rank(25, rng);
        const std::vector<double> w(acc.ata.data(), acc.ata.data() + acc.ata.size());
        const std::vector<double> v(acc.atb.data(), acc.atb.data() + acc.atb.size());
        EXPECT_LT(relative_error(solve(acc, 5, 1e-8), testing::gauss_solve(w, v, 25)), 1e-8);
    }
}

TEST(Solve, EmptyBucketGivesDeltaFilter) {
    EXPECT_EQ(solve(Accumulator{}, 5, 1e-8), identity_filter(5));
}

TEST(Solve, RankOneSystemGivesMinimumNormFilter) {
    // Constant patches: every solution sums to one; the minimum-norm one is uniform.
    Accumulator acc;
    acc.ata = Eigen::MatrixXd::Constant(9, 9, 4.0 * 0.3 * 0.3);
    acc.atb = Eigen::VectorXd::Constant(9, 4.0 * 0.3 * 0.3);
    acc.count = 4;
    for (double t : solve(acc, 3, 1e-8)) EXPECT_NEAR(t, 1.0 / 9.0, 1e-12);
}

TEST(Solve, RejectsMismatchedDimensions) {
    std::mt19937_64 rng(1);
    EXPECT_THROW(solve(random_full_rank(9, rng), 5, 1e-8), std::invalid_argument);
}

TEST(Accumulate, CountsOnePatchPerStrideCell) {
    const Image sharp = testing::random_image(20, 13, 1);
    AccumulatorSet acc(5, {});
    accumulate_pair(sharp, sharp, 1, acc);
    EXPECT_EQ(acc.total_count(), 20u * 13u);
    AccumulatorSet strided(5, {});
    accumulate_pair(sharp, sharp, 3, strided);
    EXPECT_EQ(strided.total_count(), 7u * 5u);
    EXPECT_THROW(accumulate_pair(sharp, Image(3, 3), 1, acc), std::invalid_argument);
}

TEST(Accumulate, MatchesPerPatchOuterProducts) {
    const Image sharp = testing::random_image(12, 10, 2);
    const Image blurred = convolve(sharp, gaussian_kernel(3, 0.8));
    AccumulatorSet acc(5, {});
    accumulate_pair(sharp, blurred, 1, acc);

    AccumulatorSet ref(5, {});
    const PatchSampler sampler(blurred, 5);
    std::vector<double> p(25);
    for (int y = 0; y < 10; ++y)
        for (int x = 0; x < 12; ++x) {
            sampler.extract(x, y, p);
            Accumulator& bucket = ref[quantize(features(p, 5), QuantConfig{})];
            bucket.ensure_allocated(25);
            const Eigen::Map<const Eigen::VectorXd> a(p.data(), 25);
            bucket.ata += a * a.transpose();
            bucket.atb += a * sharp.at(x, y);
            ++bucket.count;
        }
    for (int i = 0; i < PatchKey::kCount; ++i) {
        const auto& got = acc.buckets()[i];
        const auto& want = ref.buckets()[i];
        ASSERT_EQ(got.count, want.count);
        if (want.empty()) continue;
        EXPECT_LT((got.ata - want.ata).norm(), 1e-12 * want.ata.norm());
        EXPECT_LT((got.atb - want.atb).norm(), 1e-12 * want.atb.norm());
    }
}

TEST(Merge, SumsAndChecksCompatibility) {
    const Image a = testing::random_image(10, 10, 3);
    const Image b = testing::random_image(10, 10, 4);
    AccumulatorSet sa(5, {});
    AccumulatorSet sb(5, {});
    accumulate_pair(a, a, 1, sa);
    accumulate_pair(b, b, 1, sb);
    EXPECT_EQ(merge(sa, sb).total_count(), 200u);
    EXPECT_THROW(merge(sa, AccumulatorSet(7, {})), std::invalid_argument);
    EXPECT_THROW(merge(sa, AccumulatorSet(5, QuantConfig{0.02, 0.06, 0.25, 0.5})), std::invalid_argument);
}

// Augmenting the statistics of one image must equal accumulating all eight
// transformed copies of it (the blur used here is symmetric under the group).
TEST(Augment, EqualsExplicitlyTransformedTrainingImages) {
    const Image sharp = testing::random_image(15, 11, 5);
    const BlurKernel kernel = gaussian_kernel(3, 0.7);
    AccumulatorSet single(5, {});
    accumulate_pair(sharp, convolve(sharp, kernel), 1, single);
    const AccumulatorSet augmented = augment(single);
    EXPECT_EQ(augmented.total_count(), 8 * single.total_count());

    AccumulatorSet explicit_set(5, {});
    for (const Dihedral g : kDihedralGroup) {
        const Image t = transform_image(sharp, g);
        accumulate_pair(t, convolve(t, kernel), 1, explicit_set);
    }
    for (int i = 0; i < PatchKey::kCount; ++i) {
        const auto& got = augmented.buckets()[i];
        const auto& want = explicit_set.buckets()[i];
        ASSERT_EQ(got.count, want.count) << "bucket " << i;
        if (want.empty()) continue;
        EXPECT_LT((got.ata - want.ata).norm(), 1e-10 * want.ata.norm());
        EXPECT_LT((got.atb - want.atb).norm(), 1e-10 * want.atb.norm());
    }
}

TEST(Augment, ProducesSymmetricFiltersAcrossMappedBuckets) {
    std::vector<Image> corpus;
    for (int i = 0; i < 3; ++i) corpus.push_back(testing::texture_image(48, 48, 10 + i));
    TrainConfig config;
    config.patch_size = 5;
    config.kernel = KernelSpec::parse("gaussian:5:1.0");
    const FilterBank bank = train(corpus, config);
    // The filter of the rotated bucket is the rotated filter.
    for (int i = 0; i < PatchKey::kCount; ++i) {
        const PatchKey key = PatchKey::from_index(i);
        if (bank.counts[i] < 2000) continue;
        const PatchKey rotated = transform_key(key, Dihedral::rotate90);
        const auto expected = transform_patch(bank.filter(key), 5, Dihedral::rotate90);
        const auto actual = bank.filter(rotated);
        for (int t = 0; t < 25; ++t) EXPECT_NEAR(actual[t], expected[t], 1e-6) << "bucket " << i;
    }
}

TEST(Train, IdentityKernelLearnsDeltaFilters) {
    std::vector<Image> corpus;
    for (int i = 0; i < 4; ++i) corpus.push_back(testing::random_image(40, 40, 20 + i));
    TrainConfig config;
    config.patch_size = 5;
    config.kernel = KernelSpec::parse("identity");
    const FilterBank bank = train(corpus, config);
    const auto delta = identity_filter(5);
    int populated = 0;
    for (int i = 0; i < PatchKey::kCount; ++i) {
        if (bank.counts[i] < 200) continue;
        ++populated;
        for (int t = 0; t < 25; ++t) EXPECT_NEAR(bank.filters[i][t], delta[t], 1e-8) << "bucket " << i;
    }
    EXPECT_GT(populated, 20);
}

TEST(Train, IsBitIdenticalAcrossRuns) {
    std::vector<Image> corpus;
    for (int i = 0; i < 3; ++i) corpus.push_back(testing::texture_image(40, 36, 30 + i));
    TrainConfig config;
    config.patch_size = 7;
    EXPECT_EQ(train(corpus, config), train(corpus, config));
}

TEST(Train, RecordsConfigurationInBank) {
    TrainConfig config;
    config.patch_size = 5;
    config.kernel = KernelSpec::parse("box:3");
    config.quant = QuantConfig{0.02, 0.05, 0.2, 0.4};
    const std::vector<Image> corpus{testing::texture_image(24, 24, 1)};
    const FilterBank bank = train(corpus, config);
    EXPECT_EQ(bank.patch_size, 5);
    EXPECT_EQ(bank.kernel_tag, "box:3");
    EXPECT_EQ(bank.quant, config.quant);
    EXPECT_NO_THROW(bank.validate());
}

TEST(Train, RejectsBadConfigurationAndEmptyCorpus) {
    TrainConfig config;
    config.patch_size = 4;
    EXPECT_THROW(config.validate(), std::invalid_argument);
    config.patch_size = 3;
    EXPECT_THROW(config.validate(), std::invalid_argument);
    config.patch_size = 5;
    config.stride = 0;
    EXPECT_THROW(config.validate(), std::invalid_argument);
    EXPECT_THROW(train(std::span<const Image>{}, TrainConfig{}), std::invalid_argument);
}

TEST(Train, StrideDefaultsDependOnCorpusSize) {
    const TrainConfig config;
    EXPECT_EQ(config.resolved_stride(100), 1);
    EXPECT_EQ(config.resolved_stride(101), 2);
    TrainConfig fixed;
    fixed.stride = 3;
    EXPECT_EQ(fixed.resolved_stride(500), 3);
}

TEST(TrainFiles, SkipsUnreadableImagesWithWarning) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "deblur_train_files";
    fs::create_directories(dir);
    save_image(testing::texture_image(24, 24, 3), dir / "a.png");
    std::ofstream(dir / "b.png") << "garbage";
    std::vector<std::string> warnings;
    TrainConfig config;
    config.patch_size = 5;
    const std::vector<fs::path> files{dir / "a.png", dir / "b.png"};
    const FilterBank bank = train_files(files, config, [&](const std::string& w) { warnings.push_back(w); });
    EXPECT_EQ(warnings.size(), 1u);
    std::uint64_t total = 0;
    for (auto c : bank.counts) total += c;
    EXPECT_EQ(total, 8u * 24u * 24u);
    const std::vector<fs::path> bad{dir / "b.png"};
    EXPECT_THROW(train_files(bad, config), std::invalid_argument);
    fs::remove_all(dir);
}

}  // namespace
}  // namespace deblur

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "deblur/filter_bank.hpp"
#include "deblur/image.hpp"
#include "deblur/kernel_spec.hpp"
#include "deblur/structure_tensor.hpp"

namespace deblur {

/// Normal-equation sums for one dictionary bucket: ata = sum a a^T and
/// atb = sum a b over training patches a (flattened row-major) with target b.
/// Matrices stay unallocated (size 0) until the first contribution; an
/// unallocated accumulator reads as all-zero.
struct Accumulator {
    Eigen::MatrixXd ata;
    Eigen::VectorXd atb;
    std::uint64_t count = 0;

    bool empty() const noexcept { return count == 0; }
    void ensure_allocated(int taps);
    void add(const Accumulator& other);
};

/// One accumulator per PatchKey, tied to the patch size and quantization used to key them.
class AccumulatorSet {
public:
    AccumulatorSet(int patch_size, QuantConfig quant);

    int patch_size() const noexcept { return patch_size_; }
    int taps() const noexcept { return patch_size_ * patch_size_; }
    const QuantConfig& quant() const noexcept { return quant_; }

    Accumulator& operator[](PatchKey key) noexcept { return buckets_[static_cast<std::size_t>(key.index())]; }
    const Accumulator& operator[](PatchKey key) const noexcept { return buckets_[static_cast<std::size_t>(key.index())]; }
    std::span<Accumulator> buckets() noexcept { return buckets_; }
    std::span<const Accumulator> buckets() const noexcept { return buckets_; }

    std::uint64_t total_count() const noexcept;

private:
    int patch_size_;
    QuantConfig quant_;
    std::vector<Accumulator> buckets_;
};

struct TrainConfig {
    int patch_size = 21;
    /// Training patch stride; unset picks 1 for corpora of at most 100 images, 2 otherwise.
    std::optional<int> stride;
    KernelSpec kernel{KernelSpec::Type::gaussian, 15, 2.10};
    QuantConfig quant;
    double pinv_tolerance = 1e-8;
    bool augment = true;

    void validate() const;
    int resolved_stride(std::size_t corpus_size) const;
};

/// Adds every stride-grid patch of `blurred` (keyed by its own features) with
/// the co-located sharp pixel as target.
void accumulate_pair(const Image& sharp, const Image& blurred, int stride, AccumulatorSet& acc);

/// Element-wise sum; throws std::invalid_argument on patch size or quantization mismatch.
AccumulatorSet merge(const AccumulatorSet& a, const AccumulatorSet& b);

/// Adds the seven non-identity lattice symmetries of every contribution,
/// re-keyed to the transformed angle bin. Total count grows by exactly 8x.
AccumulatorSet augment(AccumulatorSet acc);

/// Minimum-norm least-squares filter pinv(ata) * atb. Eigenvalues of the
/// symmetric ata below tolerance * largest are discarded. An empty bucket
/// yields the delta filter. Throws std::runtime_error on non-finite output.
std::vector<double> solve(const Accumulator& acc, int patch_size, double tolerance);

/// Incremental trainer: feed sharp images one at a time, then finish().
class Trainer {
public:
    Trainer(TrainConfig config, std::size_t expected_images);

    void add(const Image& sharp);
    std::size_t images() const noexcept { return images_; }
    const AccumulatorSet& accumulators() const noexcept { return acc_; }

    FilterBank finish() &&;

private:
    TrainConfig config_;
    BlurKernel kernel_;
    int stride_;
    AccumulatorSet acc_;
    std::size_t images_ = 0;
};

FilterBank train(std::span<const Image> corpus, const TrainConfig& config);

/// Loads each file in turn; unreadable files are reported through `warn` and skipped.
FilterBank train_files(std::span<const std::filesystem::path> files, const TrainConfig& config,
                       const std::function<void(const std::string&)>& warn = {});

}  // namespace deblur

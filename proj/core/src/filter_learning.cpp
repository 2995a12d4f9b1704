#include "deblur/filter_learning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "deblur/image_io.hpp"
#include "deblur/parallel.hpp"
#include "deblur/patch.hpp"

namespace deblur {

void Accumulator::ensure_allocated(int taps) {
    if (ata.rows() == taps) return;
    ata = Eigen::MatrixXd::Zero(taps, taps);
    atb = Eigen::VectorXd::Zero(taps);
}

void Accumulator::add(const Accumulator& other) {
    if (other.empty()) return;
    ensure_allocated(static_cast<int>(other.ata.rows()));
    ata += other.ata;
    atb += other.atb;
    count += other.count;
}

AccumulatorSet::AccumulatorSet(int patch_size, QuantConfig quant)
    : patch_size_(patch_size), quant_(quant), buckets_(PatchKey::kCount) {
    if (patch_size < 3 || patch_size % 2 == 0) throw std::invalid_argument("patch size must be odd and at least 3");
    quant_.validate();
}

std::uint64_t AccumulatorSet::total_count() const noexcept {
    std::uint64_t total = 0;
    for (const auto& b : buckets_) total += b.count;
    return total;
}

void TrainConfig::validate() const {
    if (patch_size < 5 || patch_size % 2 == 0) throw std::invalid_argument("training patch size must be odd and >= 5");
    if (stride && *stride < 1) throw std::invalid_argument("training stride must be >= 1");
    if (!(pinv_tolerance >= 0.0)) throw std::invalid_argument("pseudoinverse tolerance must be non-negative");
    quant.validate();
}

int TrainConfig::resolved_stride(std::size_t corpus_size) const {
    if (stride) return *stride;
    return corpus_size <= 100 ? 1 : 2;
}

namespace {

constexpr int kChunk = 256;

// Copies the strictly lower triangle over the upper one.
void symmetrize(Eigen::MatrixXd& m) {
    for (Eigen::Index j = 1; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < j; ++i) m(i, j) = m(j, i);
}

}  // namespace

void accumulate_pair(const Image& sharp, const Image& blurred, int stride, AccumulatorSet& acc) {
    if (sharp.width() != blurred.width() || sharp.height() != blurred.height())
        throw std::invalid_argument("training pair dimensions differ");
    if (stride < 1) throw std::invalid_argument("stride must be >= 1");
    if (sharp.empty()) return;

    const int k = acc.patch_size();
    const int taps = acc.taps();
    const PatchSampler sampler(blurred, k);

    const int cols = (blurred.width() + stride - 1) / stride;
    const int rows = (blurred.height() + stride - 1) / stride;
    std::vector<std::int16_t> keys(static_cast<std::size_t>(cols) * rows);

    parallel_for(0, rows, [&](int gy) {
        std::vector<double> patch(static_cast<std::size_t>(taps));
        for (int gx = 0; gx < cols; ++gx) {
            sampler.extract(gx * stride, gy * stride, patch);
            keys[static_cast<std::size_t>(gy) * cols + gx] =
                static_cast<std::int16_t>(quantize(features(patch, k), acc.quant()).index());
        }
    });

    // Group grid cells by bucket, preserving raster order within each bucket.
    std::vector<std::size_t> offsets(PatchKey::kCount + 1, 0);
    for (const auto key : keys) ++offsets[static_cast<std::size_t>(key) + 1];
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    std::vector<std::int32_t> order(keys.size());
    {
        auto cursor = offsets;
        for (std::size_t i = 0; i < keys.size(); ++i) order[cursor[static_cast<std::size_t>(keys[i])]++] = static_cast<std::int32_t>(i);
    }

    auto buckets = acc.buckets();
    parallel_for(0, PatchKey::kCount, [&](int bucket) {
        const std::size_t begin = offsets[bucket];
        const std::size_t end = offsets[bucket + 1];
        if (begin == end) return;
        Accumulator& target = buckets[bucket];
        target.ensure_allocated(taps);

        Eigen::MatrixXd a(taps, kChunk);
        Eigen::VectorXd b(kChunk);
        for (std::size_t start = begin; start < end; start += kChunk) {
            const auto m = static_cast<Eigen::Index>(std::min<std::size_t>(kChunk, end - start));
            for (Eigen::Index j = 0; j < m; ++j) {
                const auto cell = static_cast<std::size_t>(order[start + static_cast<std::size_t>(j)]);
                const int x = static_cast<int>(cell % static_cast<std::size_t>(cols)) * stride;
                const int y = static_cast<int>(cell / static_cast<std::size_t>(cols)) * stride;
                sampler.extract(x, y, std::span<double>(a.col(j).data(), static_cast<std::size_t>(taps)));
                b(j) = sharp.at(x, y);
            }
            const auto block = a.leftCols(m);
            target.ata.selfadjointView<Eigen::Lower>().rankUpdate(block);
            target.atb.noalias() += block * b.head(m);
            target.count += static_cast<std::uint64_t>(m);
        }
        symmetrize(target.ata);
    });
}

AccumulatorSet merge(const AccumulatorSet& a, const AccumulatorSet& b) {
    if (a.patch_size() != b.patch_size()) throw std::invalid_argument("cannot merge accumulators of different patch sizes");
    if (!(a.quant() == b.quant())) throw std::invalid_argument("cannot merge accumulators with different quantization");
    AccumulatorSet out = a;
    auto dst = out.buckets();
    const auto src = b.buckets();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i].add(src[i]);
    return out;
}

AccumulatorSet augment(AccumulatorSet acc) {
    const int k = acc.patch_size();
    const int taps = acc.taps();
    std::vector<std::vector<int>> permutations;
    for (const Dihedral g : kDihedralGroup) permutations.push_back(source_permutation(g, k));

    // Symmetries only move the angle bin, so each (strength, coherence) slice
    // of 24 buckets is closed and can be rebuilt on its own.
    for (int s = 0; s < PatchKey::kStrengthBins; ++s)
        for (int c = 0; c < PatchKey::kCoherenceBins; ++c) {
            std::vector<Accumulator> rebuilt(PatchKey::kAngleBins);
            parallel_for(0, PatchKey::kAngleBins, [&](int target_bin) {
                Accumulator& out = rebuilt[target_bin];
                for (std::size_t gi = 0; gi < kDihedralGroup.size(); ++gi) {
                    // Find the source bin mapped onto target_bin by this element.
                    for (int source_bin = 0; source_bin < PatchKey::kAngleBins; ++source_bin) {
                        if (transform_angle_bin(source_bin, kDihedralGroup[gi]) != target_bin) continue;
                        const Accumulator& src = acc[PatchKey{source_bin, s, c}];
                        if (src.empty()) continue;
                        out.ensure_allocated(taps);
                        const auto& perm = permutations[gi];
                        for (int j = 0; j < taps; ++j) {
                            const int pj = perm[j];
                            for (int i = 0; i < taps; ++i) out.ata(i, j) += src.ata(perm[i], pj);
                            out.atb(j) += src.atb(pj);
                        }
                        out.count += src.count;
                    }
                }
            });
            for (int a = 0; a < PatchKey::kAngleBins; ++a) acc[PatchKey{a, s, c}] = std::move(rebuilt[a]);
        }
    return acc;
}

std::vector<double> solve(const Accumulator& acc, int patch_size, double tolerance) {
    if (acc.empty()) return identity_filter(patch_size);
    const auto taps = static_cast<Eigen::Index>(patch_size) * patch_size;
    if (acc.ata.rows() != taps || acc.atb.size() != taps)
        throw std::invalid_argument("accumulator dimensions do not match the patch size");

    // ata is symmetric, so its singular values are the absolute eigenvalues
    // and the eigenvectors serve as both singular bases.
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(acc.ata);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigen decomposition of normal matrix failed");
    const auto& values = es.eigenvalues();
    const auto& vectors = es.eigenvectors();
    const double largest = values.cwiseAbs().maxCoeff();

    Eigen::VectorXd h = Eigen::VectorXd::Zero(taps);
    if (largest > 0.0) {
        const Eigen::VectorXd projected = vectors.transpose() * acc.atb;
        for (Eigen::Index i = 0; i < taps; ++i)
            if (std::abs(values(i)) > tolerance * largest) h += (projected(i) / values(i)) * vectors.col(i);
    }
    if (!h.allFinite()) throw std::runtime_error("pseudoinverse produced non-finite filter taps");
    return {h.data(), h.data() + h.size()};
}

namespace {

TrainConfig validated(TrainConfig config) {
    config.validate();
    return config;
}

}  // namespace

Trainer::Trainer(TrainConfig config, std::size_t expected_images)
    : config_(validated(std::move(config))),
      kernel_(config_.kernel.build()),
      stride_(config_.resolved_stride(expected_images)),
      acc_(config_.patch_size, config_.quant) {}

void Trainer::add(const Image& sharp) {
    const Image blurred = degrade(sharp, kernel_, NoiseSpec{});
    accumulate_pair(sharp, blurred, stride_, acc_);
    ++images_;
}

FilterBank Trainer::finish() && {
    AccumulatorSet acc = config_.augment ? augment(std::move(acc_)) : std::move(acc_);

    FilterBank bank = FilterBank::identity(config_.patch_size, config_.quant, config_.kernel.to_string());
    parallel_for(0, PatchKey::kCount, [&](int i) {
        const Accumulator& bucket = acc.buckets()[static_cast<std::size_t>(i)];
        bank.filters[i] = solve(bucket, config_.patch_size, config_.pinv_tolerance);
        bank.counts[i] = bucket.count;
    });
    return bank;
}

FilterBank train(std::span<const Image> corpus, const TrainConfig& config) {
    if (corpus.empty()) throw std::invalid_argument("training corpus is empty");
    Trainer trainer(config, corpus.size());
    for (const Image& image : corpus) trainer.add(image);
    return std::move(trainer).finish();
}

FilterBank train_files(std::span<const std::filesystem::path> files, const TrainConfig& config,
                       const std::function<void(const std::string&)>& warn) {
    if (files.empty()) throw std::invalid_argument("training corpus is empty");
    Trainer trainer(config, files.size());
    for (const auto& path : files) {
        Image image;
        try {
            image = load_image(path);
        } catch (const ImageIoError& e) {
            if (warn) warn(std::string("skipping ") + e.what());
            continue;
        }
        trainer.add(image);
    }
    if (trainer.images() == 0) throw std::invalid_argument("no readable images in training corpus");
    return std::move(trainer).finish();
}

}  // namespace deblur

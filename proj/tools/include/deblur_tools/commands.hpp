#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "deblur/sharpness.hpp"

namespace deblur::tools {

namespace fs = std::filesystem;

struct DegradeOptions {
    fs::path input;  // file or flat directory
    fs::path output_dir;
    std::string kernel = "gaussian:15:2.10";
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
};

struct TrainOptions {
    fs::path corpus;  // flat directory of sharp images
    fs::path output;  // bank file
    std::string kernel = "gaussian:15:2.10";
    int patch_size = 21;
    std::optional<int> stride;
    std::vector<double> strength_thresholds{0.01, 0.06};
    std::vector<double> coherence_thresholds{0.25, 0.5};
    double pinv_tolerance = 1e-8;
    bool no_augment = false;
};

struct RestoreOptions {
    fs::path input;  // file or flat directory
    std::vector<fs::path> banks;
    fs::path output_dir;
};

struct BlendOptions {
    std::vector<fs::path> candidates;
    fs::path output;
    std::optional<fs::path> report;  // defaults to <output>.blend.txt
    double eta = 1e-4;
    double epsilon_w = 1e-4;
    int max_rounds = 1000;
    QConfig q;
};

struct EvalOptions {
    fs::path original_dir;
    fs::path degraded_dir;
    fs::path restored_dir;
    std::optional<fs::path> csv;
    QConfig q;
};

/// Each command returns the process exit code: 0 iff every input was processed.
/// Progress goes to `out`, per-file diagnostics to `err`.
int run_degrade(const DegradeOptions& options, std::ostream& out, std::ostream& err);
int run_train(const TrainOptions& options, std::ostream& out, std::ostream& err);
int run_restore(const RestoreOptions& options, std::ostream& out, std::ostream& err);
int run_blend(const BlendOptions& options, std::ostream& out, std::ostream& err);
int run_eval(const EvalOptions& options, std::ostream& out, std::ostream& err);

/// Sorted PNG/PGM files directly inside `dir` (no recursion), or `path` itself if it is a file.
std::vector<fs::path> collect_images(const fs::path& path);

/// Output name for an (input, bank) pair: "<stem>.png" for a single bank,
/// "<stem>__<bank stem>.png" when several banks are applied.
std::string restored_name(const fs::path& input, const fs::path& bank, std::size_t bank_count);

/// Per-file noise seed: the run seed mixed with an FNV-1a hash of the file name.
std::uint64_t file_seed(std::uint64_t seed, const std::string& name) noexcept;

}  // namespace deblur::tools

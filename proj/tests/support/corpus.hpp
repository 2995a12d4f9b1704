#pragma once

#include <filesystem>
#include <vector>

#include "deblur/image.hpp"

namespace deblur::testing {

std::filesystem::path desk_corpus_dir();

/// Corpus files in sorted order; empty if the corpus was not generated.
std::vector<std::filesystem::path> desk_corpus_files();

/// Deterministic split: crops with an even index train, odd ones evaluate.
struct CorpusSplit {
    std::vector<std::filesystem::path> train;
    std::vector<std::filesystem::path> eval;
};
CorpusSplit desk_corpus_split();

std::vector<Image> load_all(const std::vector<std::filesystem::path>& files);

}  // namespace deblur::testing

#include "corpus.hpp"

#include <algorithm>

#include "deblur/image_io.hpp"

namespace deblur::testing {

std::filesystem::path desk_corpus_dir() { return DEBLUR_DESK_CORPUS_DIR; }

std::vector<std::filesystem::path> desk_corpus_files() {
    std::vector<std::filesystem::path> files;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(desk_corpus_dir(), ec))
        if (entry.path().extension() == ".png") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    return files;
}

CorpusSplit desk_corpus_split() {
    CorpusSplit split;
    for (const auto& f : desk_corpus_files()) {
        const std::string stem = f.stem().string();
        const int index = stem.back() - '0';
        (index % 2 == 0 ? split.train : split.eval).push_back(f);
    }
    return split;
}

std::vector<Image> load_all(const std::vector<std::filesystem::path>& files) {
    std::vector<Image> images;
    images.reserve(files.size());
    for (const auto& f : files) images.push_back(load_image(f));
    return images;
}

}  // namespace deblur::testing

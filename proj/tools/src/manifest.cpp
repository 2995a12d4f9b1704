#include "deblur_tools/manifest.hpp"

#include <fstream>
#include <stdexcept>

#ifndef DEBLUR_VERSION
#define DEBLUR_VERSION "unknown"
#endif

namespace deblur::tools {

RunManifest::RunManifest(std::string command) : command_(std::move(command)), start_(std::chrono::steady_clock::now()) {}

void RunManifest::add_input(const std::filesystem::path& path) { inputs_.push_back(path.generic_string()); }

void RunManifest::add_output(const std::filesystem::path& path) { outputs_.push_back(path.generic_string()); }

void RunManifest::mark(const std::string& phase) {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
    timings_[phase] = elapsed.count();
}

nlohmann::json RunManifest::to_json() const {
    return {
        {"command", command_}, {"version", version()},   {"inputs", inputs_},
        {"outputs", outputs_}, {"config", config_},      {"timings_seconds", timings_},
    };
}

void RunManifest::write(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path.string() + ": cannot write manifest");
    out << to_json().dump(2) << '\n';
    if (!out) throw std::runtime_error(path.string() + ": manifest write failed");
}

const char* RunManifest::version() noexcept { return DEBLUR_VERSION; }

std::filesystem::path manifest_path_for(const std::filesystem::path& output, bool is_directory) {
    if (is_directory) return output / "manifest.json";
    std::filesystem::path p = output;
    p += ".manifest.json";
    return p;
}

}  // namespace deblur::tools

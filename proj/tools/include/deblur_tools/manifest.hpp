#pragma once

#include <nlohmann/json.hpp>

#include <chrono>
#include <filesystem>
#include <string>

namespace deblur::tools {

/// Provenance record written next to every artifact a command emits.
class RunManifest {
public:
    explicit RunManifest(std::string command);

    void add_input(const std::filesystem::path& path);
    void add_output(const std::filesystem::path& path);
    void set_config(nlohmann::json config) { config_ = std::move(config); }
    void mark(const std::string& phase);  // records seconds since start under timings.<phase>

    nlohmann::json to_json() const;
    void write(const std::filesystem::path& path) const;

    static const char* version() noexcept;

private:
    std::string command_;
    nlohmann::json inputs_ = nlohmann::json::array();
    nlohmann::json outputs_ = nlohmann::json::array();
    nlohmann::json config_ = nlohmann::json::object();
    nlohmann::json timings_ = nlohmann::json::object();
    std::chrono::steady_clock::time_point start_;
};

/// Manifest path for a directory output ("<dir>/manifest.json") or a file output ("<file>.manifest.json").
std::filesystem::path manifest_path_for(const std::filesystem::path& output, bool is_directory);

}  // namespace deblur::tools

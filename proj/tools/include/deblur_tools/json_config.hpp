#pragma once

#include <CLI11.hpp>

#include <istream>
#include <string>
#include <vector>

namespace deblur::tools {

/// Reads CLI defaults from a JSON document. Top-level keys that name a
/// subcommand hold objects of that subcommand's options, e.g.
///   {"train": {"patch_size": 13, "kernel": "box:3"}}
/// Underscores in keys are accepted in place of dashes. Arrays feed
/// multi-value options. Values given on the command line win.
class JsonConfig : public CLI::ConfigBase {
public:
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;
};

}  // namespace deblur::tools

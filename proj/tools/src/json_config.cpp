#include "deblur_tools/json_config.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace deblur::tools {

namespace {

std::string scalar_text(const nlohmann::json& value) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
    if (value.is_number() || value.is_null()) return value.dump();
    throw CLI::ConversionError("config values must be scalars or arrays of scalars, got " + value.dump());
}

void flatten(const nlohmann::json& object, std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& items) {
    for (const auto& [raw_key, value] : object.items()) {
        std::string key = raw_key;
        std::replace(key.begin(), key.end(), '_', '-');
        if (value.is_object()) {
            parents.push_back(key);
            flatten(value, parents, items);
            parents.pop_back();
            continue;
        }
        CLI::ConfigItem item;
        item.parents = parents;
        item.name = key;
        if (value.is_array()) {
            for (const auto& element : value) item.inputs.push_back(scalar_text(element));
        } else {
            item.inputs.push_back(scalar_text(value));
        }
        items.push_back(std::move(item));
    }
}

}  // namespace

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const {
    nlohmann::json document;
    try {
        document = nlohmann::json::parse(input);
    } catch (const nlohmann::json::parse_error& e) {
        throw CLI::ParseError(std::string("invalid JSON config: ") + e.what(), CLI::ExitCodes::ConversionError);
    }
    if (!document.is_object()) throw CLI::ParseError("JSON config must be an object", CLI::ExitCodes::ConversionError);
    std::vector<CLI::ConfigItem> items;
    std::vector<std::string> parents;
    flatten(document, parents, items);
    return items;
}

}  // namespace deblur::tools

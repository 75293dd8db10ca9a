#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "opdeloc/ensemble.hpp"
#include "opdeloc/io.hpp"

namespace opdeloc::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sectioned key-value settings. Every key has a default; a file may override
// any subset but may not introduce keys that do not exist.
class Config {
public:
    Config();
    static Config load(const std::filesystem::path& path);

    std::string text(const std::string& section, const std::string& key) const;
    int integer(const std::string& section, const std::string& key) const;
    double real(const std::string& section, const std::string& key) const;
    bool flag(const std::string& section, const std::string& key) const;
    std::vector<int> integers(const std::string& section, const std::string& key) const;
    std::vector<std::string> words(const std::string& section, const std::string& key) const;
    std::vector<GraphFamily> models(const std::string& section, const std::string& key) const;

    void set(const std::string& section, const std::string& key, const std::string& value);

    // "# section.key = value" lines for output headers.
    Metadata metadata(const std::string& section) const;

private:
    std::map<std::string, std::map<std::string, std::string>> values_;
    std::string origin_ = "<defaults>";
};

// "full", "star", "ring", "ws(k=1,p=0.1)"
GraphFamily parse_model(const std::string& label);

}  // namespace opdeloc::cli

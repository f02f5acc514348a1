#pragma once

// Line-based run configuration:
//
//   # comment
//   [section]
//   key = value
//
// Keys before the first section header belong to the section "".  Lists
// are whitespace- or comma-separated.  Every key must be known; unknown
// keys and malformed values are reported with their line number.

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace canardlab::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Config {
public:
    static Config parse(const std::string& text, const std::string& origin = "<config>");
    static Config load(const std::filesystem::path& path);

    bool has(const std::string& section, const std::string& key) const;

    std::optional<std::string> text(const std::string& section, const std::string& key) const;
    std::optional<double> number(const std::string& section, const std::string& key) const;
    std::optional<long long> integer(const std::string& section, const std::string& key) const;
    std::optional<bool> boolean(const std::string& section, const std::string& key) const;
    std::optional<std::vector<double>> numbers(const std::string& section, const std::string& key) const;

    /// Throws ConfigError naming the first key not in `known` (entries are "section.key").
    void reject_unknown(const std::vector<std::string>& known) const;

    /// Directory of the file the config was loaded from (for relative paths).
    const std::filesystem::path& base_dir() const { return base_dir_; }

private:
    struct Entry {
        std::string value;
        int line = 0;
    };
    std::map<std::string, std::map<std::string, Entry>> sections_;
    std::string origin_;
    std::filesystem::path base_dir_;

    const Entry* find(const std::string& section, const std::string& key) const;
    [[noreturn]] void bad_value(const std::string& section, const std::string& key, const Entry& e,
                                const char* expected) const;
};

/// Parses a number with the C locale; the whole string must be consumed.
std::optional<double> parse_double(const std::string& s);

}  // namespace canardlab::cli

#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace canardlab::cli {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_' || c == '-'; });
}

}  // namespace

std::optional<double> parse_double(const std::string& s) {
    double x = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, x);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    return x;
}

Config Config::parse(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto where = origin + ":" + std::to_string(line_no) + ": ";
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where + "unterminated section header");
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            if (!valid_name(section)) throw ConfigError(where + "invalid section name");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (!valid_name(key)) throw ConfigError(where + "invalid key '" + key + "'");
        auto& sec = cfg.sections_[section];
        if (sec.count(key)) throw ConfigError(where + "duplicate key '" + key + "'");
        sec[key] = Entry{value, line_no};
    }
    return cfg;
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    Config cfg = parse(ss.str(), path.string());
    cfg.base_dir_ = path.parent_path();
    return cfg;
}

const Config::Entry* Config::find(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    const auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
}

void Config::bad_value(const std::string& section, const std::string& key, const Entry& e, const char* expected) const {
    throw ConfigError(origin_ + ":" + std::to_string(e.line) + ": " + section + "." + key + " expects " + expected +
                      ", got '" + e.value + "'");
}

bool Config::has(const std::string& section, const std::string& key) const { return find(section, key) != nullptr; }

std::optional<std::string> Config::text(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    if (!e) return std::nullopt;
    return e->value;
}

std::optional<double> Config::number(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    if (!e) return std::nullopt;
    const auto x = parse_double(e->value);
    if (!x) bad_value(section, key, *e, "a number");
    return x;
}

std::optional<long long> Config::integer(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    if (!e) return std::nullopt;
    long long x = 0;
    const auto [ptr, ec] = std::from_chars(e->value.data(), e->value.data() + e->value.size(), x);
    if (ec != std::errc() || ptr != e->value.data() + e->value.size()) bad_value(section, key, *e, "an integer");
    return x;
}

std::optional<bool> Config::boolean(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    if (!e) return std::nullopt;
    if (e->value == "true" || e->value == "yes" || e->value == "1") return true;
    if (e->value == "false" || e->value == "no" || e->value == "0") return false;
    bad_value(section, key, *e, "true or false");
}

std::optional<std::vector<double>> Config::numbers(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    if (!e) return std::nullopt;
    std::string s = e->value;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) {
        const auto x = parse_double(tok);
        if (!x) bad_value(section, key, *e, "a list of numbers");
        out.push_back(*x);
    }
    if (out.empty()) bad_value(section, key, *e, "a non-empty list of numbers");
    return out;
}

void Config::reject_unknown(const std::vector<std::string>& known) const {
    for (const auto& [section, keys] : sections_) {
        for (const auto& [key, entry] : keys) {
            const std::string full = section + "." + key;
            if (std::find(known.begin(), known.end(), full) == known.end()) {
                throw ConfigError(origin_ + ":" + std::to_string(entry.line) + ": unknown key '" + key + "'" +
                                  (section.empty() ? std::string() : " in section [" + section + "]"));
            }
        }
    }
}

}  // namespace canardlab::cli

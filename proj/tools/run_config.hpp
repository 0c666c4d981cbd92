#pragma once

// Flat section.key = value configuration with a fixed schema: every key has a default and a
// one-line description; anything outside the schema is rejected.

#include <pathology/errors.hpp>

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace pathology::cli {

class config_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct KeySpec {
    std::string default_value;
    std::string doc;
};

class RunConfig {
public:
    void declare(const std::string& key, std::string default_value, std::string doc) {
        schema_[key] = {default_value, std::move(doc)};
        values_[key] = std::move(default_value);
    }

    bool known(const std::string& key) const { return schema_.count(key) > 0; }

    void set(const std::string& key, const std::string& value) {
        if (!known(key)) throw config_error("unknown config key '" + key + "'");
        values_[key] = value;
    }

    // "section.key=value"
    void set_assignment(const std::string& text) {
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw config_error("expected key=value, got '" + text + "'");
        set(trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
    }

    void load_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw config_error("cannot open config file '" + path + "'");
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
            line = trim(line);
            if (line.empty()) continue;
            try {
                set_assignment(line);
            } catch (const config_error& e) {
                throw config_error(path + ":" + std::to_string(lineno) + ": " + e.what());
            }
        }
    }

    const std::string& str(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) throw config_error("undeclared config key '" + key + "'");
        return it->second;
    }

    double real(const std::string& key) const {
        const auto& s = str(key);
        double v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size())
            throw config_error("config key '" + key + "' expects a real number, got '" + s + "'");
        return v;
    }

    long integer(const std::string& key) const {
        const auto& s = str(key);
        long v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size())
            throw config_error("config key '" + key + "' expects an integer, got '" + s + "'");
        return v;
    }

    bool flag(const std::string& key) const {
        const auto& s = str(key);
        if (s == "1" || s == "true" || s == "on") return true;
        if (s == "0" || s == "false" || s == "off") return false;
        throw config_error("config key '" + key + "' expects true/false, got '" + s + "'");
    }

    // Keys under the given sections, in sorted order.
    std::vector<std::string> keys(const std::vector<std::string>& sections) const {
        std::vector<std::string> out;
        for (const auto& [k, v] : values_)
            for (const auto& s : sections)
                if (k.rfind(s + ".", 0) == 0) out.push_back(k);
        return out;
    }

    const KeySpec& describe(const std::string& key) const { return schema_.at(key); }

    static std::string trim(const std::string& s) {
        const auto a = s.find_first_not_of(" \t\r\n");
        if (a == std::string::npos) return "";
        const auto b = s.find_last_not_of(" \t\r\n");
        return s.substr(a, b - a + 1);
    }

private:
    std::map<std::string, KeySpec> schema_;
    std::map<std::string, std::string> values_;
};

}  // namespace pathology::cli

#include <carleson/config.hpp>

#include <cctype>
#include <sstream>

#include <carleson/errors.hpp>

namespace carleson {
namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool valid_key(const std::string& key) {
    if (key.empty()) return false;
    for (char c : key) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    }
    return true;
}

}  // namespace

std::vector<ConfigEntry> parse_key_values(const std::string& text) {
    std::vector<ConfigEntry> entries;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string stripped = trim(raw);
        if (stripped.empty() || stripped[0] == '#') continue;

        auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ParseError("line " + std::to_string(line) +
                             ": expected `key = value`, got \"" + stripped +
                             "\"");
        }
        ConfigEntry entry;
        entry.line = line;
        entry.key = trim(stripped.substr(0, eq));
        if (!valid_key(entry.key)) {
            throw ParseError("line " + std::to_string(line) +
                             ": invalid key \"" + entry.key + "\"");
        }

        std::string rhs = trim(stripped.substr(eq + 1));
        if (!rhs.empty() && rhs[0] == '"') {
            auto close = rhs.find('"', 1);
            if (close == std::string::npos) {
                throw ParseError("line " + std::to_string(line) +
                                 ": unterminated string for key \"" +
                                 entry.key + "\"");
            }
            if (!trim(rhs.substr(close + 1)).empty()) {
                throw ParseError("line " + std::to_string(line) +
                                 ": trailing content after string for key \"" +
                                 entry.key + "\"");
            }
            entry.value = rhs.substr(1, close - 1);
            entry.quoted = true;
        } else {
            auto hash = rhs.find('#');
            if (hash != std::string::npos) rhs = trim(rhs.substr(0, hash));
            if (rhs.empty()) {
                throw ParseError("line " + std::to_string(line) +
                                 ": empty value for key \"" + entry.key +
                                 "\"");
            }
            entry.value = rhs;
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

}  // namespace carleson

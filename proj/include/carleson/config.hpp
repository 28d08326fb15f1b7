#pragma once

#include <string>
#include <vector>

/// Plain-text configuration: one `key = value` per line, `#` comments,
/// optionally double-quoted string values. Parsing keeps line numbers so
/// later validation (including unknown-key rejection) can point at the
/// offending line.

namespace carleson {

struct ConfigEntry {
    std::string key;
    std::string value;
    int line = 0;
    /// Value came double-quoted (verbatim string, inline comments kept).
    bool quoted = false;
};

/// Parses the document into ordered entries. Throws ParseError with the
/// line number on malformed lines. Duplicate keys are allowed; the last
/// occurrence wins at consumption time.
std::vector<ConfigEntry> parse_key_values(const std::string& text);

}  // namespace carleson

#pragma once
// Flat key=value configuration blocks. '#' starts a comment line; blank lines
// are ignored; later keys override earlier ones.

#include <map>
#include <optional>
#include <string>

namespace stc {

using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(const std::string& text);

// Typed lookups; a present but malformed value throws ParameterError.
std::optional<long long> get_integer(const KeyValues& kv, const std::string& key);
std::optional<double> get_real(const KeyValues& kv, const std::string& key);

} // namespace stc

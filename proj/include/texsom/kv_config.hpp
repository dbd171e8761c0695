#pragma once

#include <texsom/types.hpp>

#include <cstdint>
#include <map>
#include <string>

namespace texsom {

// Flat key=value configuration text. One assignment per line; '#' starts a
// comment; blank lines and surrounding whitespace are ignored. Duplicate keys
// are rejected so a typo cannot silently shadow an earlier setting.
std::map<std::string, std::string> parse_kv_text(const std::string& text,
                                                 const std::string& origin);

// Reads and parses a config file. Missing file throws IoError; malformed
// content throws ConfigError naming the file and line.
std::map<std::string, std::string> parse_kv_file(const std::string& path);

// Typed accessors over a parsed map. Each throws ConfigError naming the key
// when the value does not parse or lies outside the accepted form.
std::string kv_get(const std::map<std::string, std::string>& kv,
                   const std::string& key, const std::string& fallback);
long long kv_get_int(const std::map<std::string, std::string>& kv,
                     const std::string& key, long long fallback);
double kv_get_double(const std::map<std::string, std::string>& kv,
                     const std::string& key, double fallback);
bool kv_get_bool(const std::map<std::string, std::string>& kv,
                 const std::string& key, bool fallback);
std::uint64_t kv_get_u64(const std::map<std::string, std::string>& kv,
                         const std::string& key, std::uint64_t fallback);

}  // namespace texsom

#pragma once

// Strict JSON access helpers. Configs reject unknown keys so that a typo in
// a tolerance name fails loudly instead of silently using a default.

#include <json.hpp>

#include <initializer_list>
#include <set>
#include <stdexcept>
#include <string>

namespace srglab {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

/// Error raised for malformed configuration or schema violations. `where`
/// is a JSON-pointer-ish path to the offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(where) {}
    [[nodiscard]] const std::string& where() const { return where_; }

private:
    std::string where_;
};

namespace jsonu {

inline void require_object(const Json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where, "expected an object");
}

/// Reject keys outside the allowed set.
inline void check_keys(const Json& j, const std::string& where,
                       std::initializer_list<const char*> allowed) {
    require_object(j, where);
    std::set<std::string> ok;
    for (const char* k : allowed) ok.insert(k);
    for (const auto& item : j.items()) {
        if (ok.find(item.key()) == ok.end()) {
            throw ConfigError(where, "unknown key `" + item.key() + "`");
        }
    }
}

inline const Json& require(const Json& j, const std::string& where,
                           const std::string& key) {
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError(where, "missing key `" + key + "`");
    return *it;
}

inline double get_number(const Json& j, const std::string& where,
                         const std::string& key) {
    const Json& v = require(j, where, key);
    if (!v.is_number()) throw ConfigError(where + "/" + key, "expected number");
    return v.get<double>();
}

inline double get_number_or(const Json& j, const std::string& where,
                            const std::string& key, double fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_number()) throw ConfigError(where + "/" + key, "expected number");
    return it->get<double>();
}

inline long long get_integer(const Json& j, const std::string& where,
                             const std::string& key) {
    const Json& v = require(j, where, key);
    if (!v.is_number_integer()) {
        throw ConfigError(where + "/" + key, "expected integer");
    }
    return v.get<long long>();
}

inline long long get_integer_or(const Json& j, const std::string& where,
                                const std::string& key, long long fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_number_integer()) {
        throw ConfigError(where + "/" + key, "expected integer");
    }
    return it->get<long long>();
}

inline std::string get_string(const Json& j, const std::string& where,
                              const std::string& key) {
    const Json& v = require(j, where, key);
    if (!v.is_string()) throw ConfigError(where + "/" + key, "expected string");
    return v.get<std::string>();
}

inline std::string get_string_or(const Json& j, const std::string& where,
                                 const std::string& key,
                                 const std::string& fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_string()) throw ConfigError(where + "/" + key, "expected string");
    return it->get<std::string>();
}

inline bool get_bool_or(const Json& j, const std::string& where,
                        const std::string& key, bool fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_boolean()) throw ConfigError(where + "/" + key, "expected bool");
    return it->get<bool>();
}

}  // namespace jsonu

}  // namespace srglab

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcorr/sequences.hpp"

namespace pcorr {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kManifestVersion = 1;

// Everything needed to byte-reproduce a CLI run: the argv, the sequence
// spec, flat parameters, and the root seed.
struct RunManifest {
    std::string tool_version = kToolVersion;
    std::string command;              // subcommand name
    std::vector<std::string> argv;    // full argument vector after the program name
    SequenceSpec spec;
    bool has_spec = false;
    std::vector<std::pair<std::string, std::string>> params;
    std::uint64_t seed = 0;
    std::string started, finished;    // ISO-8601 UTC
    std::vector<std::string> outputs;

    void set_param(const std::string& key, const std::string& value);

    nlohmann::json to_json() const;
    static RunManifest from_json(const nlohmann::json& j);

    void save(const std::string& path) const;
    static RunManifest load(const std::string& path);
};

std::string iso_timestamp_now();

} // namespace pcorr

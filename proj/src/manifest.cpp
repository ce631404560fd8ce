#include "pcorr/manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

#include <json.hpp>

#include "pcorr/errors.hpp"

namespace pcorr {

std::string iso_timestamp_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void RunManifest::set_param(const std::string& key, const std::string& value) {
    for (auto& [k, v] : params)
        if (k == key) {
            v = value;
            return;
        }
    params.emplace_back(key, value);
}

nlohmann::json RunManifest::to_json() const {
    nlohmann::json p = nlohmann::json::object();
    for (const auto& [k, v] : params) p[k] = v;
    nlohmann::json j{{"manifest_v", kManifestVersion},
                     {"tool_version", tool_version},
                     {"command", command},
                     {"argv", argv},
                     {"params", p},
                     {"seed", seed},
                     {"started", started},
                     {"finished", finished},
                     {"outputs", outputs}};
    if (has_spec) j["spec"] = spec.to_json();
    return j;
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
    if (j.at("manifest_v").get<int>() != kManifestVersion)
        throw BadParams("unsupported manifest version");
    RunManifest m;
    m.tool_version = j.at("tool_version").get<std::string>();
    m.command = j.at("command").get<std::string>();
    m.argv = j.at("argv").get<std::vector<std::string>>();
    if (j.contains("spec")) {
        m.spec = SequenceSpec::from_json(j.at("spec"));
        m.has_spec = true;
    }
    for (const auto& [k, v] : j.at("params").items()) m.params.emplace_back(k, v.get<std::string>());
    m.seed = j.at("seed").get<std::uint64_t>();
    m.started = j.value("started", "");
    m.finished = j.value("finished", "");
    m.outputs = j.at("outputs").get<std::vector<std::string>>();
    return m;
}

void RunManifest::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw BadParams("cannot write manifest: " + path);
    out << to_json().dump(2) << '\n';
}

RunManifest RunManifest::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadParams("cannot read manifest: " + path);
    nlohmann::json j;
    in >> j;
    return from_json(j);
}

} // namespace pcorr

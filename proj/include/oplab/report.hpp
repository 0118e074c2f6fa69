#pragma once

#include <cstdint>
#include <string>

#include "oplab/json_io.hpp"

namespace oplab {

struct RunReport {
    std::string command;
    Json inputs = Json::object();
    Json outputs = Json::object();
    Json certificates = Json::object();
    std::uint64_t seed = 0;
    std::string versions = "oplab 1.0.0";

    Json to_json() const;
    static RunReport from_json(const Json& j);

    // "json": canonical (sorted keys, round-trip float text); "table": lossy
    std::string render(const std::string& format) const;
};

// per-task seed: FNV-1a of the subcommand path folded into the master seed
std::uint64_t derive_seed(std::uint64_t master, const std::string& path);

}  // namespace oplab

#include "oplab/report.hpp"

#include <sstream>

namespace oplab {

Json RunReport::to_json() const {
    Json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["certificates"] = certificates;
    j["seed"] = seed;
    j["versions"] = versions;
    return j;
}

RunReport RunReport::from_json(const Json& j) {
    RunReport r;
    r.command = j.at("command").get<std::string>();
    r.inputs = j.at("inputs");
    r.outputs = j.at("outputs");
    r.certificates = j.at("certificates");
    r.seed = j.at("seed").get<std::uint64_t>();
    r.versions = j.at("versions").get<std::string>();
    return r;
}

namespace {

void render_table(const std::string& prefix, const Json& j, std::ostringstream& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            render_table(prefix.empty() ? k : prefix + "." + k, v, out);
    } else if (j.is_array() && j.size() > 8) {
        out << prefix << ": [" << j.size() << " entries]\n";
    } else {
        out << prefix << ": " << j.dump() << "\n";
    }
}

}  // namespace

std::string RunReport::render(const std::string& format) const {
    if (format == "json") return to_json().dump(2) + "\n";
    if (format == "table") {
        std::ostringstream out;
        out << "command: " << command << "\n";
        render_table("outputs", outputs, out);
        if (!certificates.empty()) render_table("certificates", certificates, out);
        return out.str();
    }
    throw InvalidInputError("render: unknown format \"" + format + "\"");
}

std::uint64_t derive_seed(std::uint64_t master, const std::string& path) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (unsigned char c : path) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h ^ (master * 0x9E3779B97F4A7C15ULL);
}

}  // namespace oplab

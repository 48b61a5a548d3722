#pragma once

#include <boost/crc.hpp>

#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>

#ifndef ATLAS_DEFAULT_DATA_DIR
#define ATLAS_DEFAULT_DATA_DIR "data"
#endif

namespace atlas {

using json = nlohmann::json;

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {
inline std::string& data_dir_override() {
    static std::string dir;
    return dir;
}
}  // namespace detail

// Explicit override (CLI flag) wins over ATLAS_DATA_DIR, which wins over the build default.
inline void set_data_dir(const std::string& dir) { detail::data_dir_override() = dir; }

inline std::string data_dir() {
    if (!detail::data_dir_override().empty()) return detail::data_dir_override();
    if (const char* env = std::getenv("ATLAS_DATA_DIR"); env && *env) return env;
    return ATLAS_DEFAULT_DATA_DIR;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline std::string crc32_hex(const std::string& bytes) {
    boost::crc_32_type crc;
    crc.process_bytes(bytes.data(), bytes.size());
    std::ostringstream os;
    os << std::hex << std::setw(8) << std::setfill('0') << crc.checksum();
    return os.str();
}

// Loads a data file and checks it against the checksum pinned in MANIFEST.json.
inline json load_data_file(const std::string& name, const std::string& expected_schema) {
    const std::string dir = data_dir();
    const std::string bytes = read_file(dir + "/" + name);
    json manifest;
    try {
        manifest = json::parse(read_file(dir + "/MANIFEST.json"));
    } catch (const json::exception& e) {
        throw DataError("malformed MANIFEST.json: " + std::string(e.what()));
    }
    if (!manifest.contains("files") || !manifest["files"].contains(name))
        throw DataError("MANIFEST.json has no entry for " + name);
    const std::string want = manifest["files"][name].get<std::string>();
    const std::string got = crc32_hex(bytes);
    if (want != got) throw DataError("checksum mismatch for " + name + ": manifest " + want + ", file " + got);
    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::exception& e) {
        throw DataError("malformed " + name + ": " + e.what());
    }
    if (j.value("schema", "") != expected_schema)
        throw DataError(name + ": expected schema " + expected_schema);
    return j;
}

}  // namespace atlas

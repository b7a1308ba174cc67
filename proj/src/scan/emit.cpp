// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/scan/emit.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qdmet/common/error.hpp"

namespace qdmet::scan {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string n_frag_json(const std::vector<double>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += fmt(v[i]);
    }
    out += "]";
    return out;
}

std::string join_flags(const std::vector<std::string>& flags) {
    std::string out;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        if (i) out += ";";
        out += flags[i];
    }
    return out;
}

}  // namespace

std::string to_csv(const ScanResult& result) {
    std::ostringstream out;
    out << "kind,geom_param,fragmentation,solver,e_total_ha,delta_e_ha,mu_ha,n_frag_json,"
           "seed,scheme,n_shots,flags\n";
    for (const auto& r : result.rows) {
        out << csv_field(r.kind) << "," << fmt(r.geom_param) << ","
            << csv_field(r.fragmentation) << "," << csv_field(r.solver) << ","
            << fmt(r.e_total_ha) << "," << fmt(r.delta_e_ha) << "," << fmt(r.mu_ha) << ","
            << csv_field(n_frag_json(r.n_frag)) << "," << r.seed << "," << csv_field(r.scheme)
            << "," << r.n_shots << "," << csv_field(join_flags(r.flags)) << "\n";
    }
    return out.str();
}

nlohmann::json to_json(const ScanResult& result) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : result.rows) {
        rows.push_back({{"kind", r.kind},
                        {"geom_param", r.geom_param},
                        {"fragmentation", r.fragmentation},
                        {"solver", r.solver},
                        {"e_total_ha", r.e_total_ha},
                        {"delta_e_ha", r.delta_e_ha},
                        {"mu_ha", r.mu_ha},
                        {"n_frag", r.n_frag},
                        {"seed", r.seed},
                        {"scheme", r.scheme},
                        {"n_shots", r.n_shots},
                        {"flags", r.flags}});
    }
    return nlohmann::json{{"config_hash", result.config_hash},
                          {"config_text", result.config.canonical_text()},
                          {"any_failed", result.any_failed},
                          {"rows", rows}};
}

ScanResult result_from_json(const nlohmann::json& j) {
    ScanResult out;
    out.config = parse_scan_config(j.at("config_text").get<std::string>());
    out.config_hash = j.at("config_hash").get<std::string>();
    out.any_failed = j.at("any_failed").get<bool>();
    for (const auto& rj : j.at("rows")) {
        ScanRow r;
        r.kind = rj.at("kind").get<std::string>();
        r.geom_param = rj.at("geom_param").get<double>();
        r.fragmentation = rj.at("fragmentation").get<std::string>();
        r.solver = rj.at("solver").get<std::string>();
        r.e_total_ha = rj.at("e_total_ha").get<double>();
        r.delta_e_ha = rj.at("delta_e_ha").get<double>();
        r.mu_ha = rj.at("mu_ha").get<double>();
        r.n_frag = rj.at("n_frag").get<std::vector<double>>();
        r.seed = rj.at("seed").get<std::uint64_t>();
        r.scheme = rj.at("scheme").get<std::string>();
        r.n_shots = rj.at("n_shots").get<int>();
        r.flags = rj.at("flags").get<std::vector<std::string>>();
        out.rows.push_back(std::move(r));
    }
    return out;
}

std::vector<std::string> write_outputs(const ScanResult& result, const std::string& path_stem,
                                       const std::vector<std::string>& formats) {
    if (path_stem.empty()) throw Error("emit: empty output path");
    const std::filesystem::path stem(path_stem);
    if (stem.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(stem.parent_path(), ec);
        if (ec) throw Error("emit: cannot create " + stem.parent_path().string());
    }

    std::vector<std::string> written;
    for (const auto& format : formats) {
        const std::string path = path_stem + "." + format;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("emit: cannot write " + path);
        if (format == "csv")
            out << to_csv(result);
        else if (format == "json")
            out << to_json(result).dump(2) << "\n";
        else
            throw Error("emit: unknown format " + format);
        if (!out.good()) throw Error("emit: write failed for " + path);
        written.push_back(path);
    }
    return written;
}

}  // namespace qdmet::scan

// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/scan/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qdmet/common/error.hpp"
#include "qdmet/common/rng.hpp"

namespace qdmet::scan {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

double parse_number(const std::string& tok, const std::string& where) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw ParseError("config: bad number \"" + tok + "\" in " + where);
    }
    if (used != tok.size()) throw ParseError("config: bad number \"" + tok + "\" in " + where);
    return v;
}

int parse_int(const std::string& tok, const std::string& where) {
    const double v = parse_number(tok, where);
    const int i = static_cast<int>(std::llround(v));
    if (std::abs(v - i) > 1e-9)
        throw ParseError("config: expected an integer, got \"" + tok + "\" in " + where);
    return i;
}

std::vector<double> parse_numbers(const std::string& value, const std::string& where) {
    std::vector<double> out;
    for (const auto& tok : split_ws(value)) out.push_back(parse_number(tok, where));
    return out;
}

std::array<double, 3> parse_vec3(const std::string& value, const std::string& where) {
    const auto v = parse_numbers(value, where);
    if (v.size() != 3) throw ParseError("config: " + where + " needs three components");
    return {v[0], v[1], v[2]};
}

// "label : 0 1 | atoms 2 3" -> named partition with one group per '|'.
NamedPartition parse_partition(const std::string& value) {
    const auto colon = value.find(':');
    if (colon == std::string::npos)
        throw ParseError("config: partition needs \"label : groups\", got \"" + value + "\"");
    NamedPartition p;
    p.label = trim(value.substr(0, colon));
    if (p.label.empty()) throw ParseError("config: partition label is empty");

    std::string rest = value.substr(colon + 1);
    std::size_t start = 0;
    while (start <= rest.size()) {
        const auto bar = rest.find('|', start);
        const std::string piece =
            trim(bar == std::string::npos ? rest.substr(start) : rest.substr(start, bar - start));
        auto toks = split_ws(piece);
        FragmentGroup g;
        if (!toks.empty() && toks.front() == "atoms") {
            g.by_atoms = true;
            toks.erase(toks.begin());
        }
        for (const auto& t : toks) g.indices.push_back(parse_int(t, "partition " + p.label));
        if (g.indices.empty())
            throw ParseError("config: partition " + p.label + " has an empty group");
        p.groups.push_back(std::move(g));
        if (bar == std::string::npos) break;
        start = bar + 1;
    }
    return p;
}

void check_monotone(const std::vector<double>& grid, const std::string& where) {
    if (grid.empty()) throw ParseError("config: " + where + " grid is empty");
    if (grid.size() == 1) return;
    const bool up = grid[1] > grid[0];
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const bool step_up = grid[i] > grid[i - 1];
        if (grid[i] == grid[i - 1] || step_up != up)
            throw ParseError("config: " + where + " grid must be strictly monotone");
    }
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

std::vector<dmet::FragmentSpec> resolve_partition(const NamedPartition& partition,
                                                  const chem::BasisSet& basis) {
    std::vector<dmet::FragmentSpec> out;
    for (std::size_t g = 0; g < partition.groups.size(); ++g) {
        const auto& group = partition.groups[g];
        dmet::FragmentSpec spec;
        spec.label = partition.label + "/" + std::to_string(g);
        spec.solver = partition.solver;
        spec.orbitals = group.by_atoms ? dmet::orbitals_for_atoms(basis, group.indices)
                                       : group.indices;
        std::sort(spec.orbitals.begin(), spec.orbitals.end());
        out.push_back(std::move(spec));
    }
    return out;
}

ScanConfig parse_scan_config(const std::string& text) {
    ScanConfig cfg;
    cfg.seeds.clear();
    cfg.schemes.clear();
    cfg.formats.clear();

    std::vector<chem::Atom> atoms;
    std::string xyz_path;
    std::string default_solver = "fci";
    std::vector<std::pair<std::string, std::string>> solver_overrides;
    bool saw_r0 = false;

    std::string section;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find_first_of("#;");
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError("config line " + std::to_string(lineno) + ": unclosed section");
            section = trim(line.substr(1, line.size() - 2));
            const bool known = section == "molecule" || section == "scan" ||
                               section == "fragments" || section == "solvers" ||
                               section == "noise" || section == "mitigation" ||
                               section == "output";
            if (!known)
                throw ParseError("config: unknown section [" + section + "]");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ParseError("config line " + std::to_string(lineno) + ": empty key or value");

        if (section == "molecule") {
            if (key == "atom") {
                const auto toks = split_ws(value);
                if (toks.size() != 4)
                    throw ParseError("config: atom needs \"symbol x y z\", got \"" + value + "\"");
                chem::Atom a;
                a.symbol = toks[0];
                a.z = chem::element_z(a.symbol);
                if (a.z == 0) throw ParseError("config: unknown element " + a.symbol);
                for (int c = 0; c < 3; ++c)
                    a.pos_angstrom[c] = parse_number(toks[c + 1], "atom line");
                atoms.push_back(std::move(a));
            } else if (key == "xyz") {
                xyz_path = value;
            } else if (key == "charge") {
                cfg.charge = parse_int(value, "charge");
            } else {
                throw ParseError("config: unknown molecule key " + key);
            }
        } else if (section == "scan") {
            if (key == "kind") {
                cfg.kind = value;
            } else if (key == "grid" || key == "counts") {
                cfg.grid = parse_numbers(value, "grid");
            } else if (key == "moving") {
                for (const auto& t : split_ws(value)) cfg.moving.push_back(parse_int(t, "moving"));
            } else if (key == "axis") {
                cfg.axis = parse_vec3(value, "axis");
            } else if (key == "pivot") {
                cfg.pivot = parse_vec3(value, "pivot");
            } else if (key == "r0") {
                cfg.r0 = parse_number(value, "r0");
                saw_r0 = true;
            } else if (key == "r1") {
                cfg.r1 = parse_number(value, "r1");
            } else if (key == "seeds") {
                for (const auto& t : split_ws(value))
                    cfg.seeds.push_back(static_cast<std::uint64_t>(parse_int(t, "seeds")));
            } else {
                throw ParseError("config: unknown scan key " + key);
            }
        } else if (section == "fragments") {
            if (key != "partition") throw ParseError("config: unknown fragments key " + key);
            cfg.partitions.push_back(parse_partition(value));
        } else if (section == "solvers") {
            if (key == "default")
                default_solver = value;
            else
                solver_overrides.emplace_back(key, value);
        } else if (section == "noise") {
            if (key == "mode") {
                if (value == "none")
                    cfg.noise.mode = NoiseConfig::Mode::None;
                else if (value == "uniform")
                    cfg.noise.mode = NoiseConfig::Mode::Uniform;
                else if (value == "sampled")
                    cfg.noise.mode = NoiseConfig::Mode::Sampled;
                else
                    throw ParseError("config: noise mode must be none, uniform, or sampled");
            } else if (key == "seed") {
                cfg.noise.seed = static_cast<std::uint64_t>(parse_int(value, "noise seed"));
            } else if (key == "readout") {
                cfg.noise.readout = parse_number(value, "readout");
            } else if (key == "depol1") {
                cfg.noise.depol1 = parse_number(value, "depol1");
            } else if (key == "depol2") {
                cfg.noise.depol2 = parse_number(value, "depol2");
            } else {
                throw ParseError("config: unknown noise key " + key);
            }
        } else if (section == "mitigation") {
            if (key == "schemes") {
                for (const auto& t : split_ws(value)) {
                    if (t != "raw" && t != "spam" && t != "pmsv")
                        throw ParseError("config: unknown mitigation scheme " + t);
                    cfg.schemes.push_back(t);
                }
            } else if (key == "calibration_shots") {
                cfg.calibration_shots = parse_int(value, "calibration_shots");
            } else {
                throw ParseError("config: unknown mitigation key " + key);
            }
        } else if (section == "output") {
            if (key == "path") {
                cfg.output_path = value;
            } else if (key == "formats") {
                for (const auto& t : split_ws(value)) {
                    if (t != "csv" && t != "json")
                        throw ParseError("config: unknown output format " + t);
                    cfg.formats.push_back(t);
                }
            } else {
                throw ParseError("config: unknown output key " + key);
            }
        } else {
            throw ParseError("config line " + std::to_string(lineno) + ": key outside a section");
        }
    }

    if (cfg.seeds.empty()) cfg.seeds = {1, 2, 3, 4};
    if (cfg.schemes.empty()) cfg.schemes = {"raw", "spam", "pmsv"};
    if (cfg.formats.empty()) cfg.formats = {"csv", "json"};

    if (!xyz_path.empty() && !atoms.empty())
        throw ParseError("config: give either inline atoms or an xyz file, not both");
    if (!xyz_path.empty()) {
        cfg.molecule = chem::parse_xyz_file(xyz_path, cfg.charge);
        cfg.molecule_source = xyz_path;
    } else if (!atoms.empty()) {
        cfg.molecule = chem::Molecule(atoms, cfg.charge);
        cfg.molecule_source = "inline";
    } else {
        throw ParseError("config: no molecule given");
    }

    // Single-point configs (the dmet subcommand) carry no [scan] section at
    // all; any scan key present demands a complete, valid one.
    if (!cfg.kind.empty() || !cfg.grid.empty()) {
        if (cfg.kind != "distance" && cfg.kind != "angle" && cfg.kind != "mu" &&
            cfg.kind != "shots")
            throw ParseError("config: scan kind must be distance, angle, mu, or shots");
        check_monotone(cfg.grid, cfg.kind);

        const bool geometric =
            cfg.kind == "distance" || cfg.kind == "angle" || cfg.kind == "shots";
        if (geometric && cfg.moving.empty())
            throw ParseError("config: geometric scans need a nonempty moving group");
        for (int a : cfg.moving)
            if (a < 0 || a >= static_cast<int>(cfg.molecule.n_atoms()))
                throw ParseError("config: moving atom index out of range");

        if (cfg.kind == "distance") {
            if (!saw_r0) cfg.r0 = 2.0;
            // The reference distance joins the grid so dE(r0) = 0 lands on a row.
            const bool present =
                std::any_of(cfg.grid.begin(), cfg.grid.end(),
                            [&](double g) { return std::abs(g - cfg.r0) < 1e-12; });
            if (!present) {
                const bool up = cfg.grid.size() < 2 || cfg.grid[1] > cfg.grid[0];
                cfg.grid.push_back(cfg.r0);
                std::sort(cfg.grid.begin(), cfg.grid.end());
                if (!up) std::reverse(cfg.grid.begin(), cfg.grid.end());
            }
        }
        if (cfg.kind == "shots") {
            for (double g : cfg.grid)
                if (g < 1 || std::abs(g - std::llround(g)) > 1e-9)
                    throw ParseError("config: shot counts must be positive integers");
            if (cfg.r1 == 0.0)
                throw ParseError("config: shots sweeps need r1 (displaced distance)");
        }
    }
    if (cfg.calibration_shots < 1000)
        throw ParseError("config: calibration_shots must be at least 1000");

    if (cfg.partitions.empty()) throw ParseError("config: no fragment partition given");
    const dmet::SolverKind fallback = dmet::parse_solver(default_solver);
    for (auto& p : cfg.partitions) p.solver = fallback;
    for (const auto& [label, solver] : solver_overrides) {
        bool found = false;
        for (auto& p : cfg.partitions)
            if (p.label == label) {
                p.solver = dmet::parse_solver(solver);
                found = true;
            }
        if (!found) throw ParseError("config: solver override for unknown partition " + label);
    }
    return cfg;
}

ScanConfig parse_scan_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scan_config(buf.str());
}

std::string ScanConfig::canonical_text() const {
    std::ostringstream out;
    // Geometry is always inlined so the canonical text is self-contained and
    // re-parseable regardless of whether the original config used an xyz file.
    out << "[molecule]\n";
    out << "charge = " << charge << "\n";
    for (const auto& a : molecule.atoms())
        out << "atom = " << a.symbol << " " << fmt(a.pos_angstrom[0]) << " "
            << fmt(a.pos_angstrom[1]) << " " << fmt(a.pos_angstrom[2]) << "\n";

    if (!kind.empty()) {
        out << "[scan]\n";
        out << "kind = " << kind << "\n";
        out << "grid =";
        for (double g : grid) out << " " << fmt(g);
        out << "\n";
        if (!moving.empty()) {
            out << "moving =";
            for (int a : moving) out << " " << a;
            out << "\n";
            out << "axis = " << fmt(axis[0]) << " " << fmt(axis[1]) << " " << fmt(axis[2])
                << "\n";
            out << "pivot = " << fmt(pivot[0]) << " " << fmt(pivot[1]) << " " << fmt(pivot[2])
                << "\n";
        }
        out << "r0 = " << fmt(r0) << "\n";
        if (kind == "shots") out << "r1 = " << fmt(r1) << "\n";
        out << "seeds =";
        for (auto s : seeds) out << " " << s;
        out << "\n";
    }

    out << "[fragments]\n";
    for (const auto& p : partitions) {
        out << "partition = " << p.label << " :";
        for (std::size_t g = 0; g < p.groups.size(); ++g) {
            if (g) out << " |";
            if (p.groups[g].by_atoms) out << " atoms";
            for (int i : p.groups[g].indices) out << " " << i;
        }
        out << "\n";
    }
    out << "[solvers]\n";
    for (const auto& p : partitions)
        out << p.label << " = " << dmet::to_string(p.solver) << "\n";

    out << "[noise]\n";
    out << "mode = "
        << (noise.mode == NoiseConfig::Mode::None
                ? "none"
                : noise.mode == NoiseConfig::Mode::Uniform ? "uniform" : "sampled")
        << "\n";
    out << "seed = " << noise.seed << "\n";
    out << "readout = " << fmt(noise.readout) << "\n";
    out << "depol1 = " << fmt(noise.depol1) << "\n";
    out << "depol2 = " << fmt(noise.depol2) << "\n";

    out << "[mitigation]\n";
    out << "schemes =";
    for (const auto& s : schemes) out << " " << s;
    out << "\n";
    out << "calibration_shots = " << calibration_shots << "\n";

    out << "[output]\n";
    if (!output_path.empty()) out << "path = " << output_path << "\n";
    out << "formats =";
    for (const auto& f : formats) out << " " << f;
    out << "\n";
    return out.str();
}

std::string ScanConfig::hash() const {
    const std::uint64_t h = common::fnv1a(canonical_text());
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace qdmet::scan

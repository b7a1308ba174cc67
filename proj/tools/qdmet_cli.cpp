// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdmet/chem/basis.hpp"
#include "qdmet/chem/integrals.hpp"
#include "qdmet/chem/molecule.hpp"
#include "qdmet/common/error.hpp"
#include "qdmet/mf/rhf.hpp"
#include "qdmet/scan/config.hpp"
#include "qdmet/scan/driver.hpp"
#include "qdmet/scan/emit.hpp"

namespace {

using namespace qdmet;

int run_scf(const std::string& xyz_path, int charge) {
    const chem::Molecule mol = chem::parse_xyz_file(xyz_path, charge);
    const chem::BasisSet basis = chem::build_basis(mol);
    const chem::Integrals ints = chem::compute_integrals(mol, basis);
    const mf::RhfResult scf = mf::run_rhf(ints, mol.n_electrons());

    std::printf("molecule:        %zu atoms, %d electrons, charge %d\n", mol.n_atoms(),
                mol.n_electrons(), mol.charge());
    std::printf("basis functions: %d (STO-3G)\n", basis.size());
    std::printf("E(nuc)  = %18.12f Ha\n", ints.e_nuc);
    std::printf("E(elec) = %18.12f Ha\n", scf.e_elec);
    std::printf("E(RHF)  = %18.12f Ha   (%d iterations)\n", scf.e_total, scf.n_iter);
    std::printf("orbital energies / Ha:");
    for (Eigen::Index i = 0; i < scf.eps.size(); ++i) std::printf(" %.6f", scf.eps[i]);
    std::printf("\n");
    return 0;
}

/// Shared tail of every sweep subcommand: the CSV table goes to stdout,
/// requested files to disk, and partial failures turn into exit code 2.
int finish(const scan::ScanResult& res) {
    std::fputs(scan::to_csv(res).c_str(), stdout);
    if (!res.config.output_path.empty()) {
        const auto written = scan::write_outputs(res, res.config.output_path,
                                                 res.config.formats);
        for (const auto& p : written) std::fprintf(stderr, "wrote %s\n", p.c_str());
    }
    std::fprintf(stderr, "config hash %s, %zu rows\n", res.config_hash.c_str(),
                 res.rows.size());
    if (res.any_failed) {
        std::fprintf(stderr, "warning: some cells failed; see the flags column\n");
        return 2;
    }
    return 0;
}

int run_emit(const std::string& in_path, const std::string& format,
             const std::string& out_stem) {
    std::ifstream in(in_path);
    if (!in) throw Error("emit: cannot open " + in_path);
    nlohmann::json j;
    in >> j;
    const scan::ScanResult res = scan::result_from_json(j);
    if (!out_stem.empty()) {
        for (const auto& p : scan::write_outputs(res, out_stem, {format}))
            std::fprintf(stderr, "wrote %s\n", p.c_str());
    } else if (format == "csv") {
        std::fputs(scan::to_csv(res).c_str(), stdout);
    } else {
        std::printf("%s\n", scan::to_json(res).dump(2).c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qdmet: embedding workbench for small molecules"};
    app.require_subcommand(1);

    std::string xyz_path;
    int charge = 0;
    auto* scf = app.add_subcommand("scf", "restricted Hartree-Fock on an xyz geometry");
    scf->add_option("xyz", xyz_path, "xyz file, coordinates in Angstrom")->required();
    scf->add_option("--charge", charge, "total molecular charge");

    std::string config_path;
    auto* dmet = app.add_subcommand("dmet", "one-shot embedding on the base geometry");
    dmet->add_option("config", config_path, "sectioned key-value config")->required();
    auto* scan_cmd = app.add_subcommand("scan", "distance or angle sweep");
    scan_cmd->add_option("config", config_path, "config with a distance or angle scan")
        ->required();
    auto* mu = app.add_subcommand("mu-scan", "fragment occupations against the potential");
    mu->add_option("config", config_path, "config with kind = mu")->required();
    auto* shots = app.add_subcommand("shots", "noisy sampling sweep with mitigation");
    shots->add_option("config", config_path, "config with kind = shots")->required();

    std::string in_path;
    std::string format = "csv";
    std::string out_stem;
    auto* emit = app.add_subcommand("emit", "re-render a stored result");
    emit->add_option("--in", in_path, "result json written by a sweep")->required();
    emit->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    emit->add_option("--out", out_stem, "output stem; omit to print to stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (scf->parsed()) return run_scf(xyz_path, charge);
        if (emit->parsed()) return run_emit(in_path, format, out_stem);

        const scan::ScanConfig cfg = scan::parse_scan_config_file(config_path);
        if (dmet->parsed()) return finish(scan::run_single_point(cfg));
        if (scan_cmd->parsed()) return finish(scan::run_dissociation(cfg));
        if (mu->parsed()) return finish(scan::run_mu_scan(cfg));
        return finish(scan::run_shots_sweep(cfg));
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

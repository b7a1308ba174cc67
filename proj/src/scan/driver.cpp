// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/scan/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <tuple>

#include "qdmet/chem/integrals.hpp"
#include "qdmet/common/error.hpp"
#include "qdmet/common/rng.hpp"
#include "qdmet/dmet/dmet_driver.hpp"
#include "qdmet/mf/lowdin.hpp"
#include "qdmet/mf/rhf.hpp"
#include "qdmet/mitigation/pmsv.hpp"
#include "qdmet/mitigation/spam.hpp"
#include "qdmet/qsim/measurement.hpp"
#include "qdmet/scan/geometry.hpp"
#include "qdmet/vqe/solver.hpp"

namespace qdmet::scan {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string fmt_flag(const char* prefix, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%.6g", prefix, v);
    return buf;
}

/// Molecule expressed over Lowdin orbitals, ready for the embedding layer.
struct LocalizedProblem {
    chem::BasisSet basis;
    mf::OrthoBasis ob;
    Eigen::MatrixXd d_lo;
    double e_nuc = 0.0;
    int n_elec = 0;
    bool scf_converged = true;
};

LocalizedProblem localize(const chem::Molecule& mol) {
    const auto ints = chem::compute_integrals(mol, chem::build_basis(mol));
    // The mean-field density seeds the bath and the democratic energies are
    // linear in it, so converge well past the row tolerances.
    mf::RhfOptions opts;
    opts.conv_energy = 1e-12;
    opts.conv_error = 1e-10;
    const auto scf = mf::run_rhf(ints, mol.n_electrons(), opts);
    LocalizedProblem out{chem::build_basis(mol), mf::lowdin_orthogonalize(ints), {}, 0.0, 0, true};
    out.d_lo = out.ob.density(scf.D);
    out.e_nuc = ints.e_nuc;
    out.n_elec = mol.n_electrons();
    out.scf_converged = scf.converged;
    return out;
}

/// Classical fragments go to the exact-diagonalisation solvers; uccsd-vqe
/// fragments to the circuit path.
dmet::SolverFn dispatching_solver() {
    auto circuit = vqe::make_vqe_solver();
    return [circuit](const dmet::EmbeddingProblem& emb, const dmet::FragmentSpec& spec,
                     double mu) {
        if (spec.solver == dmet::SolverKind::Vqe) return circuit(emb, spec, mu);
        return dmet::solve_fragment_classical(emb, spec, mu);
    };
}

ScanRow base_row(const ScanConfig& cfg, const NamedPartition& p) {
    ScanRow row;
    row.kind = cfg.kind;
    row.fragmentation = p.label;
    row.solver = dmet::to_string(p.solver);
    return row;
}

ScanRow solve_cell(const ScanConfig& cfg, const NamedPartition& p, const chem::Molecule& mol,
                   double geom_param) {
    ScanRow row = base_row(cfg, p);
    row.geom_param = geom_param;
    const auto t0 = clock_type::now();
    try {
        const LocalizedProblem loc = localize(mol);
        const auto specs = resolve_partition(p, loc.basis);
        const auto res = dmet::run_dmet(loc.ob.h, loc.ob.eri, loc.d_lo, loc.e_nuc, loc.n_elec,
                                        specs, {}, dispatching_solver());
        row.e_total_ha = res.e_total;
        row.mu_ha = res.mu_global;
        bool all_converged = loc.scf_converged;
        for (const auto& f : res.fragments) {
            row.n_frag.push_back(f.n_x);
            all_converged = all_converged && f.converged;
        }
        row.flags.push_back(all_converged ? "converged" : "unconverged");
    } catch (const Error& e) {
        row.flags.push_back(std::string("failed:") + e.what());
    }
    row.wall_seconds = seconds_since(t0);
    return row;
}

bool row_failed(const ScanRow& row) {
    return std::any_of(row.flags.begin(), row.flags.end(),
                       [](const std::string& f) { return f.rfind("failed:", 0) == 0; });
}

/// delta E against the reference row, plateau flag, and the charge-transfer
/// row for one partition's slice of a distance scan. Rows arrive in grid
/// order.
void finish_distance_rows(const ScanConfig& cfg, std::vector<ScanRow>& rows,
                          std::vector<ScanRow>& extra) {
    const ScanRow* ref = nullptr;
    for (const auto& r : rows)
        if (!row_failed(r) && std::abs(r.geom_param - cfg.r0) < 1e-12) ref = &r;
    if (!ref) {
        for (auto& r : rows) r.flags.push_back("no-reference");
        return;
    }
    for (auto& r : rows) {
        if (row_failed(r)) continue;
        r.delta_e_ha = (&r == ref) ? 0.0 : r.e_total_ha - ref->e_total_ha;
    }

    // Plateau: the last grid step's slope in Ha per Angstrom.
    if (rows.size() >= 2) {
        ScanRow& last = rows[rows.size() - 1];
        const ScanRow& prev = rows[rows.size() - 2];
        if (!row_failed(last) && !row_failed(prev)) {
            const double dr = std::abs(last.geom_param - prev.geom_param);
            const double grad = std::abs(last.e_total_ha - prev.e_total_ha) / dr;
            if (dr > 0 && grad < 0.5e-3) last.flags.push_back("plateau");
        }
    }

    // Charge transfer between the closest and farthest converged rows.
    const ScanRow* near = nullptr;
    const ScanRow* far = nullptr;
    for (const auto& r : rows) {
        if (row_failed(r)) continue;
        if (!near || r.geom_param < near->geom_param) near = &r;
        if (!far || r.geom_param > far->geom_param) far = &r;
    }
    if (!near || !far || near == far || near->n_frag.size() != far->n_frag.size()) return;
    ScanRow ct;
    ct.kind = "charge-transfer";
    ct.geom_param = far->geom_param;
    ct.fragmentation = near->fragmentation;
    ct.solver = near->solver;
    ct.delta_e_ha = near->e_total_ha - far->e_total_ha;
    for (std::size_t i = 0; i < near->n_frag.size(); ++i)
        ct.n_frag.push_back(near->n_frag[i] - far->n_frag[i]);
    ct.flags.push_back(fmt_flag("near:", near->geom_param));
    ct.flags.push_back(fmt_flag("far:", far->geom_param));
    extra.push_back(std::move(ct));
}

void finalise(ScanResult& res) {
    for (const auto& r : res.rows) res.any_failed = res.any_failed || row_failed(r);
    sort_rows(res.rows);
}

qsim::NoiseModel make_noise(const NoiseConfig& cfg, int n_qubits) {
    switch (cfg.mode) {
        case NoiseConfig::Mode::Uniform:
            return qsim::NoiseModel::uniform(n_qubits, cfg.readout, cfg.depol1, cfg.depol2);
        case NoiseConfig::Mode::Sampled:
            return qsim::NoiseModel::sampled(n_qubits, cfg.seed);
        case NoiseConfig::Mode::None:
        default:
            return qsim::NoiseModel::uniform(n_qubits, 0.0, 0.0, 0.0);
    }
}

bool wants(const ScanConfig& cfg, const char* scheme) {
    return std::find(cfg.schemes.begin(), cfg.schemes.end(), scheme) != cfg.schemes.end();
}

}  // namespace

void sort_rows(std::vector<ScanRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const ScanRow& a, const ScanRow& b) {
        return std::tie(a.kind, a.fragmentation, a.solver, a.geom_param, a.seed, a.n_shots,
                        a.scheme) <
               std::tie(b.kind, b.fragmentation, b.solver, b.geom_param, b.seed, b.n_shots,
                        b.scheme);
    });
}

ScanResult run_single_point(const ScanConfig& cfg) {
    ScanResult res{cfg, cfg.hash(), {}, false};
    for (const auto& p : cfg.partitions) {
        ScanRow row = solve_cell(cfg, p, cfg.molecule, 0.0);
        row.kind = "dmet";
        res.rows.push_back(std::move(row));
    }
    finalise(res);
    return res;
}

ScanResult run_dissociation(const ScanConfig& cfg) {
    if (cfg.kind != "distance" && cfg.kind != "angle")
        throw ContractError("scan: run_dissociation needs a distance or angle config");
    ScanResult res{cfg, cfg.hash(), {}, false};
    const auto geometries = build_scan_geometries(cfg);

    for (const auto& p : cfg.partitions) {
        std::vector<ScanRow> rows;
        for (std::size_t gi = 0; gi < geometries.size(); ++gi)
            rows.push_back(solve_cell(cfg, p, geometries[gi], cfg.grid[gi]));

        std::vector<ScanRow> extra;
        if (cfg.kind == "distance") {
            finish_distance_rows(cfg, rows, extra);
        } else {
            // Angle scans reference the first grid point.
            const ScanRow* ref = rows.empty() || row_failed(rows.front()) ? nullptr : &rows.front();
            for (auto& r : rows)
                if (ref && !row_failed(r))
                    r.delta_e_ha = (&r == ref) ? 0.0 : r.e_total_ha - ref->e_total_ha;
        }
        for (auto& r : rows) res.rows.push_back(std::move(r));
        for (auto& r : extra) res.rows.push_back(std::move(r));
    }
    finalise(res);
    return res;
}

ScanResult run_mu_scan(const ScanConfig& cfg) {
    if (cfg.kind != "mu") throw ContractError("scan: run_mu_scan needs a mu config");
    ScanResult res{cfg, cfg.hash(), {}, false};
    const auto solver = dispatching_solver();

    for (const auto& p : cfg.partitions) {
        const auto t0 = clock_type::now();
        try {
            const LocalizedProblem loc = localize(cfg.molecule);
            const auto specs = resolve_partition(p, loc.basis);
            const auto prep = dmet::prepare_fragments(loc.ob.h, loc.ob.eri, loc.d_lo, specs);

            std::vector<double> previous;
            for (double mu : cfg.grid) {
                ScanRow row = base_row(cfg, p);
                row.geom_param = mu;
                row.mu_ha = mu;
                row.e_total_ha = loc.e_nuc;
                bool all_converged = loc.scf_converged;
                for (std::size_t k = 0; k < prep.problems.size(); ++k) {
                    const auto sol = solver(prep.problems[k], prep.specs[k], mu);
                    row.e_total_ha += sol.energy_frag;
                    row.n_frag.push_back(sol.n_x);
                    all_converged = all_converged && sol.converged;
                }
                row.flags.push_back(all_converged ? "converged" : "unconverged");
                // A crossing: the order of two fragments' occupations flips
                // between neighbouring grid points. Differences below 1e-9
                // are degenerate (symmetric fragments), not crossings.
                if (!previous.empty())
                    for (std::size_t a = 0; a < row.n_frag.size(); ++a)
                        for (std::size_t b = a + 1; b < row.n_frag.size(); ++b) {
                            const double before = previous[a] - previous[b];
                            const double now = row.n_frag[a] - row.n_frag[b];
                            if (std::abs(before) > 1e-9 && std::abs(now) > 1e-9 &&
                                before * now < 0.0)
                                row.flags.push_back("cross:" + std::to_string(a) + "-" +
                                                    std::to_string(b));
                        }
                previous = row.n_frag;
                row.wall_seconds = seconds_since(t0);
                res.rows.push_back(std::move(row));
            }

            const auto opt = dmet::run_dmet(loc.ob.h, loc.ob.eri, loc.d_lo, loc.e_nuc,
                                            loc.n_elec, specs, {}, solver);
            ScanRow row = base_row(cfg, p);
            row.geom_param = opt.mu_global;
            row.mu_ha = opt.mu_global;
            row.e_total_ha = opt.e_total;
            for (const auto& f : opt.fragments) row.n_frag.push_back(f.n_x);
            row.flags.push_back("optimized");
            row.wall_seconds = seconds_since(t0);
            res.rows.push_back(std::move(row));
        } catch (const Error& e) {
            ScanRow row = base_row(cfg, p);
            row.flags.push_back(std::string("failed:") + e.what());
            row.wall_seconds = seconds_since(t0);
            res.rows.push_back(std::move(row));
        }
    }
    finalise(res);
    return res;
}

namespace {

/// Fixed per-geometry state of a shots sweep: the optimised circuits and
/// grouped fragment observables, priced once, re-sampled per cell.
struct SweepGeometry {
    double distance = 0.0;
    std::string tag;  // rng label component
    double e_nuc = 0.0;
    double mu = 0.0;
    double e_ideal = 0.0;
    bool converged = true;
    std::vector<vqe::VqeFragmentCircuit> circuits;
    std::vector<qsim::GroupedObservable> grouped;
};

SweepGeometry prepare_sweep_geometry(const ScanConfig& cfg, const NamedPartition& p,
                                     double distance, const std::string& tag) {
    const chem::Molecule mol =
        place_at_distance(cfg.molecule, cfg.moving, cfg.axis, distance);
    check_no_overlap(mol);
    const LocalizedProblem loc = localize(mol);
    const auto specs = resolve_partition(p, loc.basis);
    const auto res = dmet::run_dmet(loc.ob.h, loc.ob.eri, loc.d_lo, loc.e_nuc, loc.n_elec,
                                    specs, {}, dispatching_solver());

    SweepGeometry out;
    out.distance = distance;
    out.tag = tag;
    out.e_nuc = loc.e_nuc;
    out.mu = res.mu_global;
    out.e_ideal = res.e_total;
    out.converged = loc.scf_converged;
    for (const auto& f : res.fragments) out.converged = out.converged && f.converged;

    const auto prep = dmet::prepare_fragments(loc.ob.h, loc.ob.eri, loc.d_lo, specs);
    for (std::size_t k = 0; k < prep.problems.size(); ++k) {
        auto circ = vqe::prepare_vqe_fragment(prep.problems[k], prep.specs[k], res.mu_global);
        out.converged = out.converged && circ.optimisation.converged;
        out.grouped.push_back(qsim::group_qubitwise(circ.fragment_obs));
        out.circuits.push_back(std::move(circ));
    }
    return out;
}

}  // namespace

ScanResult run_shots_sweep(const ScanConfig& cfg) {
    if (cfg.kind != "shots") throw ContractError("scan: run_shots_sweep needs a shots config");
    ScanResult res{cfg, cfg.hash(), {}, false};

    for (const auto& p : cfg.partitions) {
        const auto t0 = clock_type::now();
        if (p.solver != dmet::SolverKind::Vqe) {
            ScanRow row = base_row(cfg, p);
            row.flags.push_back("failed:shots sweeps need the uccsd-vqe solver");
            res.rows.push_back(std::move(row));
            continue;
        }
        try {
            SweepGeometry reference = prepare_sweep_geometry(cfg, p, cfg.r0, "r0");
            SweepGeometry displaced = prepare_sweep_geometry(cfg, p, cfg.r1, "r1");
            SweepGeometry* geoms[2] = {&reference, &displaced};

            {
                ScanRow ideal = base_row(cfg, p);
                ideal.geom_param = cfg.r1;
                ideal.scheme = "ideal";
                ideal.e_total_ha = displaced.e_ideal;
                ideal.delta_e_ha = displaced.e_ideal - reference.e_ideal;
                ideal.mu_ha = displaced.mu;
                ideal.flags.push_back(displaced.converged && reference.converged ? "converged"
                                                                                 : "unconverged");
                ideal.wall_seconds = seconds_since(t0);
                res.rows.push_back(std::move(ideal));
            }

            // One device per fragment register; calibrations are per seed,
            // shared across shot counts and geometries like on hardware.
            std::vector<qsim::NoiseModel> devices;
            for (const auto& c : reference.circuits)
                devices.push_back(make_noise(cfg.noise, c.ansatz.n_qubits));

            const bool use_spam = wants(cfg, "spam");
            const bool use_pmsv = wants(cfg, "pmsv");
            const bool use_raw = wants(cfg, "raw");

            for (std::uint64_t seed : cfg.seeds) {
                std::vector<mitigation::ConfusionMatrix> cals;
                if (use_spam)
                    for (std::size_t k = 0; k < devices.size(); ++k)
                        cals.push_back(mitigation::calibrate_spam(
                            devices[k], reference.circuits[k].ansatz.n_qubits,
                            cfg.calibration_shots,
                            common::derive_seed(seed, "spam-cal-" + p.label + "-frag" +
                                                          std::to_string(k))));

                for (double count : cfg.grid) {
                    const int n = static_cast<int>(std::llround(count));
                    double e_raw[2] = {reference.e_nuc, displaced.e_nuc};
                    double e_spam[2] = {reference.e_nuc, displaced.e_nuc};
                    double e_pmsv[2] = {reference.e_nuc, displaced.e_nuc};
                    long kept = 0;
                    long total = 0;
                    int passed_through = 0;
                    bool pmsv_empty = false;

                    for (int g = 0; g < 2; ++g) {
                        const SweepGeometry& geom = *geoms[g];
                        for (std::size_t k = 0; k < geom.circuits.size(); ++k) {
                            const auto& circ = geom.circuits[k];
                            common::Rng rng(common::derive_seed(
                                seed, "shots-" + p.label + "-" + geom.tag + "-frag" +
                                          std::to_string(k) + "-n" + std::to_string(n)));
                            const auto tables = qsim::sample_grouped_noisy(
                                geom.grouped[k], 0, circ.preparation, n, devices[k], rng);
                            if (use_raw)
                                e_raw[g] += estimate_energy(geom.grouped[k], tables);
                            if (use_spam)
                                e_spam[g] += mitigation::estimate_energy_spam(geom.grouped[k],
                                                                              tables, cals[k]);
                            if (use_pmsv) {
                                try {
                                    const auto est = mitigation::estimate_energy_pmsv(
                                        geom.grouped[k], tables, circ.n_elec);
                                    e_pmsv[g] += est.energy;
                                    kept += est.shots_kept;
                                    total += est.shots_total;
                                    passed_through += est.groups_passed_through;
                                } catch (const MitigationError&) {
                                    pmsv_empty = true;
                                }
                            }
                        }
                    }

                    for (const auto& scheme : cfg.schemes) {
                        ScanRow row = base_row(cfg, p);
                        row.geom_param = cfg.r1;
                        row.mu_ha = displaced.mu;
                        row.seed = seed;
                        row.scheme = scheme;
                        row.n_shots = n;
                        if (scheme == "raw") {
                            row.e_total_ha = e_raw[1];
                            row.delta_e_ha = e_raw[1] - e_raw[0];
                        } else if (scheme == "spam") {
                            row.e_total_ha = e_spam[1];
                            row.delta_e_ha = e_spam[1] - e_spam[0];
                        } else if (pmsv_empty) {
                            row.flags.push_back("failed:pmsv-empty");
                        } else {
                            row.e_total_ha = e_pmsv[1];
                            row.delta_e_ha = e_pmsv[1] - e_pmsv[0];
                            if (total > 0)
                                row.flags.push_back(
                                    fmt_flag("kept:", static_cast<double>(kept) / total));
                            if (passed_through > 0)
                                row.flags.push_back(
                                    fmt_flag("passthrough:", passed_through));
                        }
                        row.wall_seconds = seconds_since(t0);
                        res.rows.push_back(std::move(row));
                    }
                }
            }
        } catch (const Error& e) {
            ScanRow row = base_row(cfg, p);
            row.flags.push_back(std::string("failed:") + e.what());
            row.wall_seconds = seconds_since(t0);
            res.rows.push_back(std::move(row));
        }
    }
    finalise(res);
    return res;
}

}  // namespace qdmet::scan

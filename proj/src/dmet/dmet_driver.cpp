// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/dmet/dmet_driver.hpp"

#include <cmath>
#include <sstream>

#include "qdmet/common/error.hpp"

namespace qdmet::dmet {

PreparedFragments prepare_fragments(const Eigen::MatrixXd& h_lo, const Tensor4& eri_lo,
                                    const Eigen::MatrixXd& d_lo,
                                    const std::vector<FragmentSpec>& fragments) {
    validate_partition(fragments, static_cast<int>(h_lo.rows()));
    PreparedFragments prep;
    prep.specs = fragments;
    prep.baths.reserve(fragments.size());
    prep.problems.reserve(fragments.size());
    for (const auto& spec : fragments) {
        prep.baths.push_back(schmidt_bath(d_lo, spec.orbitals));
        prep.problems.push_back(build_embedding(h_lo, eri_lo, prep.baths.back(), spec.orbitals));
    }
    return prep;
}

namespace {

struct MuSample {
    double mu;
    double n_total;
};

std::string mu_table(const std::vector<MuSample>& samples, int n_elec) {
    std::ostringstream os;
    os << "mu -> total particle number (target " << n_elec << "):";
    for (const auto& s : samples) os << "\n  " << s.mu << " -> " << s.n_total;
    return os.str();
}

}  // namespace

DmetResult run_dmet(const Eigen::MatrixXd& h_lo, const Tensor4& eri_lo,
                    const Eigen::MatrixXd& d_lo, double e_nuc, int n_elec,
                    const std::vector<FragmentSpec>& fragments, const DmetOptions& opts,
                    const SolverFn& solver) {
    if (std::abs(d_lo.trace() - n_elec) > 1e-6)
        throw ContractError("mean-field density trace does not match the electron count");

    const auto prep = prepare_fragments(h_lo, eri_lo, d_lo, fragments);
    const auto n_x = static_cast<int>(prep.problems.size());

    DmetResult res;
    std::vector<FragmentSolution> solutions(n_x);
    std::vector<MuSample> history;

    auto constraint = [&](double mu) {
        double n_total = 0.0;
        for (int k = 0; k < n_x; ++k) {
            solutions[k] = solver(prep.problems[k], prep.specs[k], mu);
            n_total += solutions[k].n_x;
        }
        ++res.mu_evaluations;
        history.push_back({mu, n_total});
        return n_total - n_elec;
    };

    double mu = 0.0;
    double f = constraint(mu);

    if (std::abs(f) > opts.mu_tol) {
        // Raising mu lowers the fragment on-site energies, so the summed
        // particle number grows with mu. Bracket a sign change outward from
        // zero, then close in by regula falsi with the Illinois guard.
        double a = 0.0, fa = f;
        double width = opts.mu_bracket;
        const double dir = (f < 0.0) ? 1.0 : -1.0;
        double b = dir * width;
        double fb = constraint(b);
        while (fa * fb > 0.0) {
            width *= 2.0;
            if (width > opts.mu_bracket_max)
                throw ConditioningError("chemical potential bracket not found; " +
                                        mu_table(history, n_elec));
            a = b;
            fa = fb;
            b = dir * width;
            fb = constraint(b);
        }

        bool converged = std::abs(fb) <= opts.mu_tol;
        mu = b;
        f = fb;
        for (int it = 0; it < opts.max_iter && !converged; ++it) {
            const double c = (a * fb - b * fa) / (fb - fa);
            const double fc = constraint(c);
            mu = c;
            f = fc;
            if (std::abs(fc) <= opts.mu_tol) {
                converged = true;
                break;
            }
            if (fa * fc > 0.0) {
                a = c;
                fa = fc;
                fb *= 0.5;
            } else {
                b = c;
                fb = fc;
                fa *= 0.5;
            }
        }
        if (!converged)
            throw ConditioningError("chemical potential search did not converge; " +
                                    mu_table(history, n_elec));
    }

    res.mu_global = mu;
    res.e_total = e_nuc;
    res.n_total = 0.0;
    for (int k = 0; k < n_x; ++k) {
        const auto& sol = solutions[k];
        res.e_total += sol.energy_frag;
        res.n_total += sol.n_x;
        FragmentReport rep;
        rep.label = prep.specs[k].label;
        rep.solver = prep.specs[k].solver;
        rep.energy_frag = sol.energy_frag;
        rep.n_x = sol.n_x;
        rep.n_frag = prep.problems[k].n_frag;
        rep.n_bath = prep.problems[k].n_bath;
        rep.n_elec_emb = prep.problems[k].n_elec;
        rep.converged = sol.converged;
        res.fragments.push_back(std::move(rep));
    }
    res.residual = res.n_total - n_elec;
    return res;
}

std::vector<double> particle_number_scan(const PreparedFragments& prep,
                                         const std::vector<double>& mu_grid,
                                         const SolverFn& solver) {
    std::vector<double> totals;
    totals.reserve(mu_grid.size());
    for (double mu : mu_grid) {
        double n_total = 0.0;
        for (std::size_t k = 0; k < prep.problems.size(); ++k)
            n_total += solver(prep.problems[k], prep.specs[k], mu).n_x;
        totals.push_back(n_total);
    }
    return totals;
}

}  // namespace qdmet::dmet

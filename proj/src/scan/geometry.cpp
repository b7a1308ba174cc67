// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/scan/geometry.hpp"

#include <cmath>
#include <set>

#include "qdmet/common/error.hpp"

namespace qdmet::scan {

namespace {

using Vec3 = std::array<double, 3>;

Vec3 unit(const Vec3& v) {
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (n < 1e-12) throw GeometryError("scan: zero-length axis");
    return {v[0] / n, v[1] / n, v[2] / n};
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Moving-group membership mask; rejects bad indices and degenerate splits.
std::vector<bool> moving_mask(const chem::Molecule& mol, const std::vector<int>& moving) {
    const int n = static_cast<int>(mol.n_atoms());
    std::vector<bool> mask(static_cast<std::size_t>(n), false);
    if (moving.empty()) throw GeometryError("scan: moving group is empty");
    for (int a : moving) {
        if (a < 0 || a >= n) throw GeometryError("scan: moving atom index out of range");
        mask[a] = true;
    }
    if (static_cast<int>(moving.size()) == n && mol.n_atoms() > 0)
        throw GeometryError("scan: moving group covers the whole molecule");
    return mask;
}

}  // namespace

chem::Molecule place_at_distance(const chem::Molecule& mol, const std::vector<int>& moving,
                                 const std::array<double, 3>& axis, double distance_angstrom) {
    const auto mask = moving_mask(mol, moving);
    const Vec3 u = unit(axis);

    Vec3 c_fixed{};
    Vec3 c_moving{};
    int n_fixed = 0;
    int n_moving = 0;
    for (std::size_t i = 0; i < mol.n_atoms(); ++i) {
        const auto& p = mol.atoms()[i].pos_angstrom;
        auto& c = mask[i] ? c_moving : c_fixed;
        for (int k = 0; k < 3; ++k) c[k] += p[k];
        (mask[i] ? n_moving : n_fixed) += 1;
    }
    for (int k = 0; k < 3; ++k) {
        c_fixed[k] /= n_fixed;
        c_moving[k] /= n_moving;
    }

    const Vec3 sep{c_moving[0] - c_fixed[0], c_moving[1] - c_fixed[1], c_moving[2] - c_fixed[2]};
    const double shift = distance_angstrom - dot(sep, u);

    std::vector<Vec3> pos;
    pos.reserve(mol.n_atoms());
    for (std::size_t i = 0; i < mol.n_atoms(); ++i) {
        Vec3 p = mol.atoms()[i].pos_angstrom;
        if (mask[i])
            for (int k = 0; k < 3; ++k) p[k] += shift * u[k];
        pos.push_back(p);
    }
    return mol.with_positions(pos);
}

chem::Molecule rotate_group(const chem::Molecule& mol, const std::vector<int>& moving,
                            const std::array<double, 3>& axis,
                            const std::array<double, 3>& pivot, double angle_deg) {
    const auto mask = moving_mask(mol, moving);
    const Vec3 u = unit(axis);
    const double theta = angle_deg * M_PI / 180.0;
    const double c = std::cos(theta);
    const double s = std::sin(theta);

    std::vector<Vec3> pos;
    pos.reserve(mol.n_atoms());
    for (std::size_t i = 0; i < mol.n_atoms(); ++i) {
        Vec3 p = mol.atoms()[i].pos_angstrom;
        if (mask[i]) {
            const Vec3 r{p[0] - pivot[0], p[1] - pivot[1], p[2] - pivot[2]};
            const Vec3 uxr = cross(u, r);
            const double ur = dot(u, r);
            for (int k = 0; k < 3; ++k)
                p[k] = pivot[k] + r[k] * c + uxr[k] * s + u[k] * ur * (1.0 - c);
        }
        pos.push_back(p);
    }
    return mol.with_positions(pos);
}

void check_no_overlap(const chem::Molecule& mol, double min_angstrom) {
    for (std::size_t i = 0; i < mol.n_atoms(); ++i)
        for (std::size_t j = i + 1; j < mol.n_atoms(); ++j) {
            const auto& a = mol.atoms()[i].pos_angstrom;
            const auto& b = mol.atoms()[j].pos_angstrom;
            const double d2 = (a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) +
                              (a[2] - b[2]) * (a[2] - b[2]);
            if (d2 < min_angstrom * min_angstrom)
                throw GeometryError("scan: atoms " + std::to_string(i) + " and " +
                                    std::to_string(j) + " overlap after the transform");
        }
}

std::vector<chem::Molecule> build_scan_geometries(const ScanConfig& cfg) {
    std::vector<chem::Molecule> out;
    out.reserve(cfg.grid.size());
    for (double g : cfg.grid) {
        chem::Molecule mol =
            cfg.kind == "angle"
                ? rotate_group(cfg.molecule, cfg.moving, cfg.axis, cfg.pivot, g)
                : place_at_distance(cfg.molecule, cfg.moving, cfg.axis, g);
        check_no_overlap(mol);
        out.push_back(std::move(mol));
    }
    return out;
}

}  // namespace qdmet::scan

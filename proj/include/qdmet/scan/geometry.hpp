// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <array>
#include <vector>

#include "qdmet/chem/molecule.hpp"
#include "qdmet/scan/config.hpp"

namespace qdmet::scan {

/// Rigid translation of the moving group along the axis so that the
/// centroid separation between stationary and moving atoms, projected on
/// the axis, equals distance_angstrom exactly. Internal geometries of both
/// groups are untouched.
chem::Molecule place_at_distance(const chem::Molecule& mol, const std::vector<int>& moving,
                                 const std::array<double, 3>& axis, double distance_angstrom);

/// Rigid rotation of the moving group by angle_deg about the axis through
/// the pivot (Rodrigues formula); 0 degrees returns the input positions.
chem::Molecule rotate_group(const chem::Molecule& mol, const std::vector<int>& moving,
                            const std::array<double, 3>& axis,
                            const std::array<double, 3>& pivot, double angle_deg);

/// Throws GeometryError when any two atoms sit closer than min_angstrom;
/// transformed structures are checked before any integrals are attempted.
void check_no_overlap(const chem::Molecule& mol, double min_angstrom = 0.2);

/// One molecule per grid value for distance and angle scans, overlap-checked.
std::vector<chem::Molecule> build_scan_geometries(const ScanConfig& cfg);

}  // namespace qdmet::scan

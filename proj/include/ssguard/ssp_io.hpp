#pragma once

// Profile container "ssp-1": a text header followed by raw little-endian
// float64 arrays. Header lines:
//
//   ssp-1
//   gamma <float>
//   symmetry cartesian|axisym
//   dims <n0> <n1> <n2>
//   spacing <h0> <h1> <h2>
//   origin <o0> <o1> <o2>
//   boundary decay|periodic
//   curl_tol <float>            (optional)
//   c_flat <float>              (optional)
//   array <name> <rank> <offset> <length>
//   end
//
// Offsets are bytes past the header's "end" line; lengths count float64
// values, row-major with the last index fastest. Rank-3 arrays are stored
// component-major (x block, then y, then z). Cartesian arrays: "U" (rank 3),
// optional "Omega" (rank 3), optional "P" (rank 1). Axisymmetric files use
// dims (nr, nz, 1) and scalar arrays "U_r", "U_theta", "U_z" and optionally
// "Omega_r", "Omega_theta", "Omega_z", "P" on the (r, z) grid.

#include <string>

#include "ssguard/profile.hpp"

namespace ssguard::axisym {
struct AxisymProfile;
}

namespace ssguard::io {

/// Reads a profile; axisymmetric files are returned through the Cartesian
/// adapter in load_axisym (call that directly for meridional work).
Profile load_profile(const std::string& path);
void save_profile(const Profile& p, const std::string& path);

bool file_is_axisym(const std::string& path);

axisym::AxisymProfile load_axisym(const std::string& path);
void save_axisym(const axisym::AxisymProfile& p, const std::string& path);

/// Two-column (time, value) text series; '#' starts a comment.
struct Series {
    std::vector<double> t, v;
};
Series load_series(const std::string& path);

/// One point per line, "x y z".
std::vector<Vec3> load_points(const std::string& path);

}  // namespace ssguard::io

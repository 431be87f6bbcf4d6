#pragma once

// Atomic units are used throughout the library. These constants convert
// between atomic units and the lab units accepted in configuration files.
// Values follow CODATA 2018.
namespace hhg::units {

inline constexpr double kHartreeEv = 27.211386245988;
inline constexpr double kBohrAngstrom = 0.529177210903;
inline constexpr double kTimeAuFs = 2.4188843265857e-2;
inline constexpr double kSpeedOfLightAu = 137.035999084;
inline constexpr double kFieldAuGvm = 514.220674763;

inline constexpr double ev_to_ha(double ev) { return ev / kHartreeEv; }
inline constexpr double ha_to_ev(double ha) { return ha * kHartreeEv; }
inline constexpr double angstrom_to_bohr(double ang) { return ang / kBohrAngstrom; }
inline constexpr double bohr_to_angstrom(double b) { return b * kBohrAngstrom; }
inline constexpr double nm_to_bohr(double nm) { return nm * 10.0 / kBohrAngstrom; }
inline constexpr double um_to_bohr(double um) { return um * 1e4 / kBohrAngstrom; }
inline constexpr double fs_to_au(double fs) { return fs / kTimeAuFs; }
inline constexpr double au_to_fs(double au) { return au * kTimeAuFs; }
inline constexpr double gvm_to_au(double gvm) { return gvm / kFieldAuGvm; }
inline constexpr double per_fs_to_au(double r) { return r * kTimeAuFs; }

}  // namespace hhg::units

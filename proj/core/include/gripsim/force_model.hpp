#pragma once

#include <utility>
#include <vector>

#include "gripsim/geometry.hpp"

namespace gripsim {

/// Free parameters of the grasp-force model. None of them is directly
/// measurable on the built gripper, so they ship with documented defaults
/// and are normally obtained through calibrate().
struct MaterialParams {
    double mu = 0.6;          // membrane/object friction coefficient
    double sigma0_kpa = 10.0; // jamming contact normal stress
    double p_c_kpa = 80.0;    // vacuum gauge pressure magnitude
    double k_syn = 1.0;       // empirical synergy gain on the friction term

    void validate() const;
};

enum class Actuation { Synergistic, SuctionOnly, JammingOnly };

enum class ForceMode { Mode1, Mode2, Mode3 };

struct ForceBreakdown {
    double suction_n = 0.0;
    double friction_n = 0.0; // assembled contribution (clamped at 0, synergy gain applied)
    double total_n = 0.0;
    ForceMode mode = ForceMode::Mode1;
    std::vector<std::pair<int, double>> per_dse_suction_n;
};

/// Mode 1: capillary-tip suction, P_c * pi * (d_in/2)^2.
double capillary_force_n(const MaterialParams& params, const GripperGeometry& geometry);

/// Jamming friction over a conformal spherical contact of half-angle
/// theta_c on an object of radius r_obj:
///   integral_0^theta_c sigma0 * 2*pi*R^2 * sin(t) * (mu*sin(t) - cos(t)) dt.
/// Evaluated by adaptive quadrature and cross-checked against the closed
/// form; the two routes must agree to 1e-9 relative or a ConfigError is
/// thrown. The raw signed value is returned; total_grasp_force clamps
/// negative friction at zero during assembly.
double friction_force_n(const MaterialParams& params, double r_obj_mm, double theta_c_rad);

/// Closed-form friction only (no quadrature cross-check). Same value as
/// friction_force_n; used on hot paths (calibration objective).
double friction_force_closed_n(const MaterialParams& params, double r_obj_mm, double theta_c_rad);

/// Cup suction over a sealed circle of radius r_contact*sin(theta_c).
double cup_suction_force_n(const MaterialParams& params, double r_contact_mm, double theta_c_rad);

/// Distributed suction: sum over engaged DSEs of P_c * A * cos(beta),
/// with A = pi*(r_obj*sin(theta_c))^2 taken from each contact entry, or
/// pi*cup_radius^2 per cup for flat contact. Returns the total and the
/// per-DSE contributions.
std::pair<double, std::vector<std::pair<int, double>>> multi_dse_suction_n(
    const MaterialParams& params, const ContactSolution& contact, double r_obj_mm,
    const GripperGeometry& geometry);

/// Assembles the full grasp force for a solid object:
///   Mode 1 (d below the seal threshold): capillary suction only.
///   Mode 2 (below the cup diameter): cup suction + clamped jamming friction.
///   Mode 3 (one cup and up): distributed suction + clamped jamming friction.
/// Friction acts over the object/membrane interface, modeled as a full
/// conformal crown (theta = pi/2) of radius min(r_obj, membrane radius).
/// SuctionOnly zeroes sigma0; JammingOnly zeroes P_c in the suction terms.
ForceBreakdown total_grasp_force(const ObjectSpec& object, const MaterialParams& params,
                                 const GripperGeometry& geometry, const ContactSolution& contact,
                                 Actuation actuation);

}  // namespace gripsim

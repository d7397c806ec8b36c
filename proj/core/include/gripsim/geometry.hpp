#pragma once

#include <vector>

namespace gripsim {

/// Physical layout of the gripper: hemispherical membrane with suction
/// cups (DSEs) arranged on concentric rings. Lengths in mm, angles as
/// noted; SI conversion happens inside the force computations.
struct GripperGeometry {
    double membrane_diameter_mm = 30.0;
    double membrane_thickness_mm = 0.8;
    double cup_radius_mm = 2.5;
    double cup_effective_diameter_mm = 5.0;   // d_m, mode-2/3 boundary
    double capillary_inner_diameter_mm = 0.3; // d_in
    double cup_profile_arc_mm = 7.853981633974483; // L_A, rim-to-rim meridian arc (pi * cup radius)
    std::vector<double> ring_polar_angles_rad = {0.0, 0.5235987755982988, 1.0471975511965976};
    std::vector<int> ring_counts = {1, 6, 12};
    double seal_contact_angle_deg = 9.2;

    int total_dse_count() const;

    /// Throws ConfigError if any invariant is violated.
    void validate() const;
};

/// One suction element: ring position, axis direction on the membrane,
/// and adjacency (center<->ring-1, consecutive within a ring, each
/// ring-1 element to its two nearest ring-2 elements).
struct DseLayout {
    int dse_id = 0;
    int ring_index = 0;
    double axis_polar_angle_rad = 0.0;
    double axis_azimuth_rad = 0.0;
    std::vector<int> neighbors;
};

/// Target object. Spheres and flat-tops are solids with a mass; liquids
/// carry density and conductivity for the detection path.
struct ObjectSpec {
    enum class Kind { Sphere, FlatTop, Liquid };

    Kind kind = Kind::Sphere;
    double diameter_mm = 0.0;     // sphere
    double extent_mm = 0.0;       // flat-top
    double density_kg_m3 = 0.0;   // liquid
    bool conductive = false;      // liquid
    double mass_g = 0.0;          // solids

    static ObjectSpec sphere(double diameter_mm, double mass_g = 0.0);
    static ObjectSpec flat_top(double extent_mm, double mass_g = 0.0);
    static ObjectSpec liquid(double density_kg_m3, bool conductive);

    bool is_solid() const { return kind != Kind::Liquid; }
    void validate() const;
};

enum class ContactRegime { CapillaryOnly, PartialCup, MultiDse, Flat };

struct ContactEntry {
    int dse_id = 0;
    double beta_rad = 0.0;    // cup axis vs grasp axis at the contact point
    double theta_c_rad = 0.0; // conformal seal half-angle on the object
};

struct ContactSolution {
    std::vector<ContactEntry> engaged;
    ContactRegime regime = ContactRegime::CapillaryOnly;

    int n_engaged() const { return static_cast<int>(engaged.size()); }
    const ContactEntry* find(int dse_id) const;
};

/// Builds the DSE layout for a geometry. Ring-1 azimuths start at 0;
/// each outer ring is offset by half its pitch so inner-ring elements
/// bisect their two nearest outer neighbors.
std::vector<DseLayout> build_layout(const GripperGeometry& geometry);

/// Largest sphere diameter the capillary tip alone can seal:
/// 2 * cup_radius * sin(seal angle).
double seal_threshold_diameter_mm(const GripperGeometry& geometry);

/// Conformal-wrap contact model for solids.
///
/// The membrane wraps a sphere of radius R isometrically along the
/// meridian, so a DSE at membrane arc s sits at object angle beta = s/R.
/// Engagement:
///   - center and ring-1: beta < pi/2 (strict);
///   - outer rings (index >= 2) additionally need the full cup profile
///     plus an anchoring margin of one profile arc above the equator,
///     (s + L_A)/R < pi/2 (strict), and are thinned to every second cup
///     while the azimuthal chord spacing 2*R*sin(beta)*sin(pi/m) cannot
///     fit one profile arc L_A.
/// The seal half-angle is theta_c = min(pi/2, L_A/(2R), asin(min(1, R_cup/R))):
/// the wrap arc limits it, and the seal circle cannot outgrow the cup rim.
ContactSolution solve_contact(const ObjectSpec& object,
                              const GripperGeometry& geometry,
                              const std::vector<DseLayout>& layout);

}  // namespace gripsim

#include "gripsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "gripsim/errors.hpp"

namespace gripsim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;

double angular_distance(double a, double b) {
    double d = std::fmod(std::fabs(a - b), 2.0 * kPi);
    return std::min(d, 2.0 * kPi - d);
}

}  // namespace

int GripperGeometry::total_dse_count() const {
    return std::accumulate(ring_counts.begin(), ring_counts.end(), 0);
}

void GripperGeometry::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) throw ConfigError(std::string(name) + " must be strictly positive");
    };
    positive(membrane_diameter_mm, "membrane_diameter_mm");
    positive(membrane_thickness_mm, "membrane_thickness_mm");
    positive(cup_radius_mm, "cup_radius_mm");
    positive(cup_effective_diameter_mm, "cup_effective_diameter_mm");
    positive(capillary_inner_diameter_mm, "capillary_inner_diameter_mm");
    positive(cup_profile_arc_mm, "cup_profile_arc_mm");

    if (!(capillary_inner_diameter_mm < 2.0 * cup_radius_mm))
        throw ConfigError("capillary bore must be smaller than the cup diameter");
    if (ring_polar_angles_rad.empty() || ring_counts.size() != ring_polar_angles_rad.size())
        throw ConfigError("ring_counts and ring_polar_angles must be non-empty and equal-length");
    if (ring_counts.front() != 1 || ring_polar_angles_rad.front() != 0.0)
        throw ConfigError("first ring must be the single central DSE at polar angle 0");
    for (std::size_t i = 0; i < ring_counts.size(); ++i) {
        if (ring_counts[i] < 0) throw ConfigError("ring_counts must be non-negative");
        double a = ring_polar_angles_rad[i];
        if (a < 0.0 || a > kHalfPi)
            throw ConfigError("ring polar angles must lie in [0, pi/2]");
        if (i > 0 && !(a > ring_polar_angles_rad[i - 1]))
            throw ConfigError("ring polar angles must be strictly increasing");
    }
    if (!(seal_contact_angle_deg >= 0.0 && seal_contact_angle_deg < 90.0))
        throw ConfigError("seal contact angle must lie in [0, 90) degrees");
}

ObjectSpec ObjectSpec::sphere(double diameter_mm, double mass_g) {
    ObjectSpec o;
    o.kind = Kind::Sphere;
    o.diameter_mm = diameter_mm;
    o.mass_g = mass_g;
    return o;
}

ObjectSpec ObjectSpec::flat_top(double extent_mm, double mass_g) {
    ObjectSpec o;
    o.kind = Kind::FlatTop;
    o.extent_mm = extent_mm;
    o.mass_g = mass_g;
    return o;
}

ObjectSpec ObjectSpec::liquid(double density_kg_m3, bool conductive) {
    ObjectSpec o;
    o.kind = Kind::Liquid;
    o.density_kg_m3 = density_kg_m3;
    o.conductive = conductive;
    return o;
}

void ObjectSpec::validate() const {
    switch (kind) {
        case Kind::Sphere:
            if (!(diameter_mm > 0.0)) throw ConfigError("sphere diameter must be positive");
            break;
        case Kind::FlatTop:
            if (!(extent_mm > 0.0)) throw ConfigError("flat-top extent must be positive");
            break;
        case Kind::Liquid:
            if (!(density_kg_m3 > 0.0)) throw ConfigError("liquid density must be positive");
            break;
    }
    if (mass_g < 0.0) throw ConfigError("mass must be non-negative");
}

const ContactEntry* ContactSolution::find(int dse_id) const {
    for (const auto& e : engaged)
        if (e.dse_id == dse_id) return &e;
    return nullptr;
}

std::vector<DseLayout> build_layout(const GripperGeometry& geometry) {
    geometry.validate();

    std::vector<DseLayout> layout;
    layout.reserve(static_cast<std::size_t>(geometry.total_dse_count()));

    // ids are assigned ring by ring, in azimuth order within each ring.
    std::vector<std::vector<int>> ring_ids(geometry.ring_counts.size());
    int next_id = 0;
    for (std::size_t r = 0; r < geometry.ring_counts.size(); ++r) {
        int count = geometry.ring_counts[r];
        double pitch = count > 0 ? 2.0 * kPi / count : 0.0;
        // odd rings start at azimuth 0, even rings at half pitch, so each
        // ring-1 DSE bisects its two nearest ring-2 DSEs by construction
        double offset = (r >= 2 && count > 0) ? pitch / 2.0 : 0.0;
        for (int k = 0; k < count; ++k) {
            DseLayout d;
            d.dse_id = next_id++;
            d.ring_index = static_cast<int>(r);
            d.axis_polar_angle_rad = geometry.ring_polar_angles_rad[r];
            d.axis_azimuth_rad = (r == 0) ? 0.0 : offset + k * pitch;
            ring_ids[r].push_back(d.dse_id);
            layout.push_back(d);
        }
    }

    auto connect = [&layout](int a, int b) {
        if (a == b) return;
        auto& na = layout[static_cast<std::size_t>(a)].neighbors;
        auto& nb = layout[static_cast<std::size_t>(b)].neighbors;
        if (std::find(na.begin(), na.end(), b) == na.end()) na.push_back(b);
        if (std::find(nb.begin(), nb.end(), a) == nb.end()) nb.push_back(a);
    };

    // center <-> every ring-1 DSE
    if (ring_ids.size() > 1 && !ring_ids[0].empty())
        for (int id : ring_ids[1]) connect(ring_ids[0][0], id);

    // consecutive within each ring
    for (std::size_t r = 1; r < ring_ids.size(); ++r) {
        const auto& ids = ring_ids[r];
        int n = static_cast<int>(ids.size());
        if (n < 2) continue;
        for (int k = 0; k < n; ++k) connect(ids[static_cast<std::size_t>(k)], ids[static_cast<std::size_t>((k + 1) % n)]);
    }

    // each ring-(r) DSE <-> its two nearest ring-(r+1) DSEs, for r >= 1
    for (std::size_t r = 1; r + 1 < ring_ids.size(); ++r) {
        const auto& inner = ring_ids[r];
        const auto& outer = ring_ids[r + 1];
        if (outer.empty()) continue;
        for (int id : inner) {
            const auto& me = layout[static_cast<std::size_t>(id)];
            std::vector<std::pair<double, int>> by_dist;
            for (int oid : outer)
                by_dist.emplace_back(
                    angular_distance(me.axis_azimuth_rad, layout[static_cast<std::size_t>(oid)].axis_azimuth_rad), oid);
            std::sort(by_dist.begin(), by_dist.end());
            int take = std::min<std::size_t>(2, by_dist.size());
            for (int k = 0; k < take; ++k) connect(id, by_dist[static_cast<std::size_t>(k)].second);
        }
    }

    for (auto& d : layout) std::sort(d.neighbors.begin(), d.neighbors.end());
    return layout;
}

double seal_threshold_diameter_mm(const GripperGeometry& geometry) {
    double theta = geometry.seal_contact_angle_deg * kPi / 180.0;
    return 2.0 * geometry.cup_radius_mm * std::sin(theta);
}

namespace {

double seal_half_angle(double r_obj_mm, const GripperGeometry& g) {
    double wrap = g.cup_profile_arc_mm / (2.0 * r_obj_mm);
    double rim = std::asin(std::min(1.0, g.cup_radius_mm / r_obj_mm));
    return std::min({kHalfPi, wrap, rim});
}

}  // namespace

ContactSolution solve_contact(const ObjectSpec& object,
                              const GripperGeometry& geometry,
                              const std::vector<DseLayout>& layout) {
    geometry.validate();
    object.validate();
    if (!object.is_solid())
        throw std::domain_error("solve_contact: liquids are handled by the pneumatic/TIGMS path");

    ContactSolution sol;

    if (object.kind == ObjectSpec::Kind::FlatTop) {
        sol.regime = ContactRegime::Flat;
        for (const auto& d : layout)
            sol.engaged.push_back({d.dse_id, 0.0, kHalfPi});
        return sol;
    }

    double d = object.diameter_mm;
    if (d <= geometry.capillary_inner_diameter_mm)
        throw std::domain_error("solve_contact: object smaller than the capillary bore is ungraspable");

    double r_obj = d / 2.0;
    double r_mem = geometry.membrane_diameter_mm / 2.0;
    double arc = geometry.cup_profile_arc_mm;
    double theta_c = seal_half_angle(r_obj, geometry);

    if (d < geometry.cup_effective_diameter_mm) {
        // object smaller than one cup: only the central DSE can act
        sol.regime = d < seal_threshold_diameter_mm(geometry) ? ContactRegime::CapillaryOnly
                                                              : ContactRegime::PartialCup;
        sol.engaged.push_back({0, 0.0, theta_c});
        return sol;
    }

    sol.regime = ContactRegime::MultiDse;

    // engagement is decided ring by ring; decimation thins whole rings
    int ring_start = 0;
    for (std::size_t r = 0; r < geometry.ring_counts.size(); ++r) {
        int count = geometry.ring_counts[r];
        int first_id = ring_start;
        ring_start += count;
        if (count == 0) continue;
        double s = r_mem * geometry.ring_polar_angles_rad[r];
        double beta = s / r_obj;
        if (!(beta < kHalfPi)) continue;
        int stride = 1;
        if (r >= 2) {
            // outer rings: full profile + one arc of anchoring margin above the equator
            if (!((s + arc) / r_obj < kHalfPi)) continue;
            // thin to alternate cups while the azimuthal chord cannot fit one profile arc
            auto chord = [&](int m) { return 2.0 * r_obj * std::sin(beta) * std::sin(kPi / m); };
            if (chord(count) < arc) {
                if (count % 2 == 0 && chord(count / 2) >= arc)
                    stride = 2;
                else
                    continue;
            }
        }
        for (int k = 0; k < count; k += stride)
            sol.engaged.push_back({first_id + k, beta, theta_c});
    }

    std::sort(sol.engaged.begin(), sol.engaged.end(),
              [](const ContactEntry& a, const ContactEntry& b) { return a.dse_id < b.dse_id; });
    return sol;
}

}  // namespace gripsim

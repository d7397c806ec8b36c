#include "gripsim/scenario.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "gripsim/errors.hpp"

namespace gripsim {

namespace {

using nlohmann::json;

const json* find(const json& j, const char* key) {
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

double get_number(const json& j, const std::string& path, const char* key, double fallback,
                  bool required = false) {
    const json* v = find(j, key);
    if (!v) {
        if (required) throw SchemaError(path + key, "missing required field");
        return fallback;
    }
    if (!v->is_number()) throw SchemaError(path + key, "expected a number");
    return v->get<double>();
}

bool get_bool(const json& j, const std::string& path, const char* key, bool fallback) {
    const json* v = find(j, key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw SchemaError(path + key, "expected a boolean");
    return v->get<bool>();
}

ObjectSpec parse_object(const json& j) {
    if (!j.is_object()) throw SchemaError("object", "expected an object");
    const json* kind = find(j, "kind");
    if (!kind || !kind->is_string()) throw SchemaError("object.kind", "expected a string");
    std::string k = kind->get<std::string>();
    ObjectSpec spec;
    if (k == "sphere") {
        spec = ObjectSpec::sphere(get_number(j, "object.", "diameter_mm", 0.0, true),
                                  get_number(j, "object.", "mass_g", 0.0));
    } else if (k == "flat_top") {
        spec = ObjectSpec::flat_top(get_number(j, "object.", "extent_mm", 0.0, true),
                                    get_number(j, "object.", "mass_g", 0.0));
    } else if (k == "liquid") {
        spec = ObjectSpec::liquid(get_number(j, "object.", "density_kg_m3", 0.0, true),
                                  get_bool(j, "object.", "conductive", false));
    } else {
        throw SchemaError("object.kind", "must be one of sphere, flat_top, liquid");
    }
    try {
        spec.validate();
    } catch (const ConfigError& e) {
        throw SchemaError("object", e.what());
    }
    return spec;
}

void parse_geometry(const json& j, GripperGeometry& g) {
    if (!j.is_object()) throw SchemaError("geometry", "expected an object");
    g.membrane_diameter_mm = get_number(j, "geometry.", "membrane_diameter_mm", g.membrane_diameter_mm);
    g.membrane_thickness_mm = get_number(j, "geometry.", "membrane_thickness_mm", g.membrane_thickness_mm);
    g.cup_radius_mm = get_number(j, "geometry.", "cup_radius_mm", g.cup_radius_mm);
    g.cup_effective_diameter_mm =
        get_number(j, "geometry.", "cup_effective_diameter_mm", g.cup_effective_diameter_mm);
    g.capillary_inner_diameter_mm =
        get_number(j, "geometry.", "capillary_inner_diameter_mm", g.capillary_inner_diameter_mm);
    g.cup_profile_arc_mm = get_number(j, "geometry.", "cup_profile_arc_mm", g.cup_profile_arc_mm);
    g.seal_contact_angle_deg =
        get_number(j, "geometry.", "seal_contact_angle_deg", g.seal_contact_angle_deg);
    if (const json* v = find(j, "ring_polar_angles_rad")) {
        if (!v->is_array()) throw SchemaError("geometry.ring_polar_angles_rad", "expected an array");
        g.ring_polar_angles_rad = v->get<std::vector<double>>();
    }
    if (const json* v = find(j, "ring_counts")) {
        if (!v->is_array()) throw SchemaError("geometry.ring_counts", "expected an array");
        g.ring_counts = v->get<std::vector<int>>();
    }
}

void parse_params(const json& j, MaterialParams& p) {
    if (!j.is_object()) throw SchemaError("params", "expected an object");
    p.mu = get_number(j, "params.", "mu", p.mu);
    p.sigma0_kpa = get_number(j, "params.", "sigma0_kpa", p.sigma0_kpa);
    p.p_c_kpa = get_number(j, "params.", "p_c_kpa", p.p_c_kpa);
    p.k_syn = get_number(j, "params.", "k_syn", p.k_syn);
}

void parse_thresholds(const json& j, Thresholds& t) {
    if (!j.is_object()) throw SchemaError("thresholds", "expected an object");
    t.dp_engaged_kpa = get_number(j, "thresholds.", "dp_engaged_kpa", t.dp_engaged_kpa);
    t.v_liquid_v = get_number(j, "thresholds.", "v_liquid_v", t.v_liquid_v);
    t.t_decision_s = get_number(j, "thresholds.", "t_decision_s", t.t_decision_s);
    t.tau_split_s = get_number(j, "thresholds.", "tau_split_s", t.tau_split_s);
}

}  // namespace

void Scenario::validate() const {
    if (!(tick_s > 0.0)) throw SchemaError("tick_s", "must be positive");
    if (duration_s < 0.0) throw SchemaError("duration_s", "must be non-negative");
    if (contact_time_s < 0.0 || contact_time_s > duration_s)
        throw SchemaError("contact_time_s", "must satisfy 0 <= contact_time <= duration");
    if (safety_factor <= 0.0) throw SchemaError("safety_factor", "must be positive");
    try {
        object.validate();
        geometry.validate();
        params.validate();
        thresholds.validate();
        pressure.validate();
        detector.validate();
    } catch (const ConfigError& e) {
        throw SchemaError("scenario", e.what());
    }
    for (const auto& ev : script) {
        if (ev.action != "inject" && ev.action != "release")
            throw SchemaError("script.action", "must be inject or release");
        if (ev.t_s < 0.0) throw SchemaError("script.t_s", "must be non-negative");
    }
}

Scenario Scenario::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw SchemaError("$", "scenario root must be an object");
    Scenario s;
    const json* obj = find(j, "object");
    if (!obj) throw SchemaError("object", "missing required field");
    s.object = parse_object(*obj);

    s.contact_time_s = get_number(j, "", "contact_time_s", s.contact_time_s);
    s.duration_s = get_number(j, "", "duration_s", s.duration_s);
    s.tick_s = get_number(j, "", "tick_s", s.tick_s);
    s.safety_factor = get_number(j, "", "safety_factor", s.safety_factor);
    s.membrane_jam_kpa = get_number(j, "", "membrane_jam_kpa", s.membrane_jam_kpa);
    if (const json* v = find(j, "seed")) {
        if (!v->is_number_integer()) throw SchemaError("seed", "expected an integer");
        s.seed = v->get<std::uint64_t>();
    }
    if (const json* v = find(j, "geometry")) parse_geometry(*v, s.geometry);
    if (const json* v = find(j, "params")) parse_params(*v, s.params);
    if (const json* v = find(j, "thresholds")) parse_thresholds(*v, s.thresholds);
    if (const json* v = find(j, "noise")) {
        if (v->is_string() && v->get<std::string>() == "off") {
            s.noise.enabled = false;
        } else if (v->is_object()) {
            s.noise.enabled = get_bool(*v, "noise.", "enabled", true);
            s.noise.pressure_sigma_kpa =
                get_number(*v, "noise.", "pressure_sigma_kpa", s.noise.pressure_sigma_kpa);
            s.noise.voltage_sigma_v =
                get_number(*v, "noise.", "voltage_sigma_v", s.noise.voltage_sigma_v);
        } else {
            throw SchemaError("noise", "expected an object or the string \"off\"");
        }
    }
    if (const json* v = find(j, "script")) {
        if (!v->is_array()) throw SchemaError("script", "expected an array");
        for (const auto& e : *v) {
            ScriptedEvent ev;
            ev.t_s = get_number(e, "script.", "t_s", 0.0, true);
            const json* action = find(e, "action");
            if (!action || !action->is_string())
                throw SchemaError("script.action", "expected a string");
            ev.action = action->get<std::string>();
            ev.dse_id = static_cast<int>(get_number(e, "script.", "dse_id", 0.0));
            s.script.push_back(ev);
        }
    }
    s.validate();
    return s;
}

Scenario Scenario::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError(path, "cannot open scenario file");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw SchemaError(path, std::string("JSON parse error: ") + e.what());
    }
    return from_json(j);
}

nlohmann::json RunReport::to_json() const {
    json per_dse = json::array();
    for (const auto& [id, f] : force.per_dse_suction_n) per_dse.push_back({{"dse_id", id}, {"force_n", f}});
    return json{{"selected_mode", to_string(selected_mode)},
                {"engaged_ids", engaged_ids},
                {"force",
                 {{"suction_n", force.suction_n},
                  {"friction_n", force.friction_n},
                  {"total_n", force.total_n},
                  {"mode", static_cast<int>(force.mode) + 1},
                  {"per_dse_suction", per_dse}}},
                {"lift_success", lift_success},
                {"liquid_captured", liquid_captured},
                {"traces",
                 {{"frames_csv", trace_csv},
                  {"commands_csv", commands_csv},
                  {"decisions_jsonl", decisions_jsonl}}}};
}

}  // namespace gripsim

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gripsim/force_model.hpp"
#include "gripsim/geometry.hpp"
#include "gripsim/sensor_sim.hpp"
#include "gripsim/tigms.hpp"

namespace gripsim {

struct NoiseConfig {
    bool enabled = true;
    double pressure_sigma_kpa = 0.02;
    double voltage_sigma_v = 0.01;
};

struct ScriptedEvent {
    double t_s = 0.0;
    std::string action; // "inject" | "release"
    int dse_id = 0;
};

/// A full closed-loop run description, loadable from JSON.
struct Scenario {
    ObjectSpec object;
    double contact_time_s = 0.5;
    double duration_s = 3.0;
    double tick_s = 1e-3;
    std::uint64_t seed = 0;
    GripperGeometry geometry;
    MaterialParams params;
    Thresholds thresholds;
    PressureModel pressure = PressureModel::reference();
    LiquidDetector detector;
    NoiseConfig noise;
    double safety_factor = 1.0;
    double membrane_jam_kpa = 80.0;
    std::vector<ScriptedEvent> script;

    void validate() const;

    /// Throws SchemaError naming the offending field.
    static Scenario from_json(const nlohmann::json& j);
    static Scenario load(const std::string& path);
};

struct RunReport {
    GraspMode selected_mode = GraspMode::NoGrasp;
    std::vector<int> engaged_ids;
    ForceBreakdown force;
    bool lift_success = false;
    bool liquid_captured = false;
    std::string trace_csv;
    std::string commands_csv;
    std::string decisions_jsonl;

    nlohmann::json to_json() const;
};

}  // namespace gripsim

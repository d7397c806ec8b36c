#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "gripsim/calibration.hpp"
#include "gripsim/scenario.hpp"

namespace gripsim {

/// Runs the closed loop for one scenario: sensor frames from ground-truth
/// contact, TIGMS decision at contact_time + t_decision, pneumatic policy
/// on the resulting events, force evaluation of the final grasp. Writes
/// frames CSV, actuator-command CSV, decision JSONL and report JSON into
/// out_dir. Identical scenarios (including seed) produce byte-identical
/// files.
RunReport run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir);

struct ForceTableRow {
    Actuation actuation = Actuation::Synergistic;
    bool flat = false;
    double d_mm = 0.0;
    ForceMode mode = ForceMode::Mode1;
    int n_engaged = 0;
    double suction_n = 0.0;
    double friction_n = 0.0;
    double total_n = 0.0;
};

/// Per-diameter force sweep plus one flat-top row per actuation.
std::vector<ForceTableRow> force_table(const std::vector<double>& diameters_mm,
                                       const MaterialParams& params,
                                       const GripperGeometry& geometry,
                                       const std::vector<Actuation>& actuations);

void write_force_table_csv(const std::vector<ForceTableRow>& rows, std::ostream& out);

/// Reference sensing traces: the noise-free engagement-pressure curve and
/// the liquid-ingress voltage transient. Returns the two file paths.
std::pair<std::filesystem::path, std::filesystem::path> replay_fig6(
    const std::filesystem::path& out_dir);

/// Measurement tables are CSV with columns object_kind,d_mm,actuation,force_N.
std::vector<Measurement> load_measurements_csv(std::istream& in);
std::vector<Measurement> load_measurements_csv_file(const std::filesystem::path& path);

void save_params_json(const MaterialParams& params, const std::filesystem::path& path);
MaterialParams load_params_json(const std::filesystem::path& path);

std::string to_string(Actuation a);
Actuation actuation_from_string(const std::string& s);

}  // namespace gripsim

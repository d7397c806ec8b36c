// Command-line front end: scenario simulation, force tables, calibration
// and the reference sensing traces.
//
// Exit codes: 0 success, 2 schema/usage error, 3 calibration failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gripsim/errors.hpp"
#include "gripsim/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSchema = 2;
constexpr int kExitCalibration = 3;

std::vector<double> parse_diameters(const std::string& list) {
    std::vector<double> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw gripsim::SchemaError("--diameters", "malformed number: " + item);
        }
    }
    if (out.empty()) throw gripsim::SchemaError("--diameters", "empty diameter list");
    return out;
}

std::vector<gripsim::Actuation> parse_actuations(const std::string& list) {
    if (list.empty())
        return {gripsim::Actuation::Synergistic, gripsim::Actuation::SuctionOnly,
                gripsim::Actuation::JammingOnly};
    std::vector<gripsim::Actuation> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(gripsim::actuation_from_string(item));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Soft suction-jamming gripper co-simulation"};
    app.require_subcommand(1);

    std::optional<std::uint64_t> seed_override;
    std::string noise_mode;
    app.add_option("--seed", seed_override, "Override the scenario RNG seed");
    app.add_option("--noise", noise_mode, "Sensor noise control: off | on");

    auto* simulate = app.add_subcommand("simulate", "Run one scenario closed-loop");
    simulate->fallthrough(); // --seed / --noise may follow the subcommand
    std::string scenario_path, out_dir;
    simulate->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    simulate->add_option("--out", out_dir, "Output directory")->required();

    auto* force_table_cmd = app.add_subcommand("force-table", "Force sweep over sphere diameters");
    std::string diameters_list, calibration_path, table_out, actuations_list;
    force_table_cmd->add_option("--diameters", diameters_list, "Comma-separated diameters in mm")
        ->required();
    force_table_cmd->add_option("--calibration", calibration_path, "Calibrated params JSON");
    force_table_cmd->add_option("--out", table_out, "Output CSV path")->required();
    force_table_cmd->add_option("--actuations", actuations_list,
                                "Comma-separated subset of synergistic,suction_only,jamming_only");

    auto* calibrate_cmd = app.add_subcommand("calibrate", "Fit material parameters to measurements");
    std::string measurements_path, params_out;
    double max_rms = 0.1;
    std::optional<double> fix_mu, fix_sigma0, fix_pc;
    calibrate_cmd->add_option("--measurements", measurements_path, "Measurements CSV")->required();
    calibrate_cmd->add_option("--out", params_out, "Output params JSON")->required();
    calibrate_cmd->add_option("--max-rms", max_rms, "Feasibility cap on the RMS residual [N]");
    calibrate_cmd->add_option("--fix-mu", fix_mu, "Hold mu fixed at this value");
    calibrate_cmd->add_option("--fix-sigma0", fix_sigma0, "Hold sigma0 fixed at this value [kPa]");
    calibrate_cmd->add_option("--fix-pc", fix_pc, "Hold P_c fixed at this value [kPa]");

    auto* replay = app.add_subcommand("replay-fig6", "Write the reference sensing traces");
    std::string replay_out;
    replay->add_option("--out", replay_out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitSchema;
    }

    bool noise_off = false;
    if (!noise_mode.empty()) {
        if (noise_mode == "off")
            noise_off = true;
        else if (noise_mode != "on") {
            std::cerr << "schema error: --noise must be 'off' or 'on'\n";
            return kExitSchema;
        }
    }

    try {
        if (*simulate) {
            gripsim::Scenario scenario = gripsim::Scenario::load(scenario_path);
            if (seed_override) scenario.seed = *seed_override;
            if (noise_off) scenario.noise.enabled = false;
            gripsim::RunReport report = gripsim::run_scenario(scenario, out_dir);
            std::cout << "mode=" << gripsim::to_string(report.selected_mode)
                      << " engaged=" << report.engaged_ids.size()
                      << " F_g=" << report.force.total_n << " N"
                      << " lift_success=" << (report.lift_success ? "true" : "false") << '\n';
        } else if (*force_table_cmd) {
            gripsim::MaterialParams params;
            if (!calibration_path.empty()) params = gripsim::load_params_json(calibration_path);
            auto rows = gripsim::force_table(parse_diameters(diameters_list), params,
                                             gripsim::GripperGeometry{},
                                             parse_actuations(actuations_list));
            std::ofstream out(table_out, std::ios::binary);
            if (!out) throw std::runtime_error("cannot open " + table_out);
            gripsim::write_force_table_csv(rows, out);
            std::cout << "wrote " << rows.size() << " rows to " << table_out << '\n';
        } else if (*calibrate_cmd) {
            auto measurements = gripsim::load_measurements_csv_file(measurements_path);
            gripsim::CalibrationOptions options;
            options.max_rms_residual_n = max_rms;
            if (fix_mu) {
                options.fit_mu = false;
                options.initial.mu = *fix_mu;
            }
            if (fix_sigma0) {
                options.fit_sigma0 = false;
                options.initial.sigma0_kpa = *fix_sigma0;
            }
            if (fix_pc) {
                options.fit_pc = false;
                options.initial.p_c_kpa = *fix_pc;
            }
            gripsim::CalibrationResult result =
                gripsim::calibrate(measurements, gripsim::GripperGeometry{}, options);
            gripsim::save_params_json(result.params, params_out);
            std::cout << "mu=" << result.params.mu << " sigma0_kpa=" << result.params.sigma0_kpa
                      << " p_c_kpa=" << result.params.p_c_kpa << " sse=" << result.sse_n2 << '\n';
        } else if (*replay) {
            auto [pressure_path, voltage_path] = gripsim::replay_fig6(replay_out);
            std::cout << "wrote " << pressure_path.string() << " and " << voltage_path.string()
                      << '\n';
        }
    } catch (const gripsim::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return kExitSchema;
    } catch (const gripsim::CalibrationError& e) {
        std::cerr << "calibration failure: " << e.what() << '\n';
        std::cerr << "per-point residuals [N]:";
        for (double r : e.per_point_residuals()) std::cerr << ' ' << r;
        std::cerr << '\n';
        return kExitCalibration;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}

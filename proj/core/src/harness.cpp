#include "gripsim/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gripsim/errors.hpp"
#include "gripsim/pneumatics.hpp"

namespace gripsim {

namespace {

constexpr double kGravity = 9.80665; // m/s^2

// fixed-width numeric formatting keeps trace files byte-stable
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string valve_str(Valve v) { return v == Valve::Open ? "open" : "closed"; }

std::string target_str(int target) {
    if (target == kMembraneTarget) return "membrane";
    char buf[16];
    std::snprintf(buf, sizeof(buf), "dse_%02d", target);
    return buf;
}

void write_commands(std::ostream& out, double t, const std::vector<ActuatorCommand>& commands) {
    for (const auto& c : commands)
        out << fmt(t) << ',' << target_str(c.target) << ',' << fmt(c.pump_duty) << ','
            << valve_str(c.inlet) << ',' << valve_str(c.outlet) << '\n';
}

struct GroundTruth {
    std::vector<SealType> seal_by_dse;
    bool detector_closes = false;
    ContactSolution contact; // valid for solids only
};

GroundTruth ground_truth(const Scenario& s, const std::vector<DseLayout>& layout) {
    GroundTruth gt;
    gt.seal_by_dse.assign(layout.size(), SealType::None);
    if (s.object.is_solid()) {
        gt.contact = solve_contact(s.object, s.geometry, layout);
        SealType engaged_seal = gt.contact.regime == ContactRegime::CapillaryOnly
                                    ? SealType::CapillarySeal
                                    : SealType::CupSeal;
        for (const auto& e : gt.contact.engaged)
            gt.seal_by_dse[static_cast<std::size_t>(e.dse_id)] = engaged_seal;
    } else {
        // liquid enters through the central capillary
        gt.seal_by_dse[0] = SealType::CapillarySeal;
        gt.detector_closes = s.object.conductive &&
                             detector_closed(s.detector, s.object.density_kg_m3);
    }
    return gt;
}

}  // namespace

RunReport run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir) {
    scenario.validate();
    std::filesystem::create_directories(out_dir);

    auto layout = build_layout(scenario.geometry);
    const auto n_dse = layout.size();
    GroundTruth gt = ground_truth(scenario, layout);

    SensorStream::Config stream_cfg;
    stream_cfg.pressure = scenario.pressure;
    stream_cfg.detector = scenario.detector;
    stream_cfg.contact_time_s = scenario.contact_time_s;
    stream_cfg.tick_s = scenario.tick_s;
    stream_cfg.noise_enabled = scenario.noise.enabled;
    stream_cfg.pressure_sigma_kpa = scenario.noise.pressure_sigma_kpa;
    stream_cfg.voltage_sigma_v = scenario.noise.voltage_sigma_v;
    stream_cfg.seed = scenario.seed;
    SensorStream stream(gt.seal_by_dse, gt.detector_closes, stream_cfg);

    RunReport report;
    report.trace_csv = "trace.csv";
    report.commands_csv = "commands.csv";
    report.decisions_jsonl = "decisions.jsonl";

    std::ofstream trace(out_dir / report.trace_csv, std::ios::binary);
    std::ofstream commands(out_dir / report.commands_csv, std::ios::binary);
    std::ofstream decisions(out_dir / report.decisions_jsonl, std::ios::binary);
    if (!trace || !commands || !decisions)
        throw std::runtime_error("cannot open output files under " + out_dir.string());

    trace << "t_s";
    for (std::size_t i = 0; i < n_dse; ++i) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%02u", static_cast<unsigned>(i));
        trace << ",dp_" << buf;
    }
    trace << ",membrane_kpa,volts\n";
    commands << "t_s,target,pump_duty,inlet,outlet\n";

    PneumaticController controller(static_cast<int>(n_dse));

    const long n_ticks = static_cast<long>(std::floor(scenario.duration_s / scenario.tick_s + 1e-9));
    const double decision_time = scenario.contact_time_s + scenario.thresholds.t_decision_s;
    long decision_tick = -1;
    if (scenario.duration_s > 0.0) {
        long k = static_cast<long>(std::ceil(decision_time / scenario.tick_s - 1e-9));
        if (k < n_ticks) decision_tick = k;
    }

    // per-DSE history since contact, feeding the decision-time classifier
    std::vector<std::vector<TraceSample>> history(n_dse);
    bool liquid_event_sent = false;
    bool decided = false;

    std::multimap<long, ScriptedEvent> script_by_tick;
    for (const auto& ev : scenario.script)
        script_by_tick.insert({static_cast<long>(std::llround(ev.t_s / scenario.tick_s)), ev});

    for (long k = 0; k < n_ticks; ++k) {
        double t = static_cast<double>(k) * scenario.tick_s;
        if (k == 0)
            write_commands(commands, t, controller.apply(StartCommand{}));

        double membrane_kpa =
            controller.state().membrane.jamming == Jamming::Jammed ? scenario.membrane_jam_kpa : 0.0;
        SensorFrame frame = stream.next(membrane_kpa);

        trace << fmt(frame.t_s);
        for (double dp : frame.dse_pressure_drop_kpa) trace << ',' << fmt(dp);
        trace << ',' << fmt(frame.membrane_kpa) << ',' << fmt(frame.detector_voltage_v) << '\n';

        double since_contact = t - scenario.contact_time_s;
        if (since_contact >= -1e-12) {
            for (std::size_t i = 0; i < n_dse; ++i)
                history[i].push_back({since_contact, frame.dse_pressure_drop_kpa[i]});
        }

        // liquid shutoff is event-driven off the voltage crossing, ahead of
        // the slower mode decision
        if (!liquid_event_sent && frame.detector_voltage_v < scenario.thresholds.v_liquid_v) {
            write_commands(commands, t, controller.apply(LiquidDetected{0}));
            liquid_event_sent = true;
        }

        if (k == decision_tick) {
            std::vector<EngagementObservation> obs;
            obs.reserve(n_dse);
            for (std::size_t i = 0; i < n_dse; ++i)
                obs.push_back(classify_dse(static_cast<int>(i), history[i], scenario.thresholds));
            GraspMode mode = select_mode(obs, frame.detector_voltage_v, layout, scenario.thresholds);
            decided = true;
            report.selected_mode = mode;
            for (const auto& o : obs)
                if (o.classification != SealType::None) report.engaged_ids.push_back(o.dse_id);

            nlohmann::json dp_vec = nlohmann::json::array();
            for (double dp : frame.dse_pressure_drop_kpa) dp_vec.push_back(dp);
            decisions << nlohmann::json{{"t", frame.t_s},
                                        {"mode", to_string(mode)},
                                        {"engaged_ids", report.engaged_ids},
                                        {"V", frame.detector_voltage_v},
                                        {"dp_vector", dp_vec}}
                             .dump()
                      << '\n';

            if (mode != GraspMode::Liquid && mode != GraspMode::NoGrasp) {
                write_commands(commands, t, controller.apply(ContactDetected{report.engaged_ids}));
                write_commands(commands, t, controller.apply(ModeSelected{mode}));
            }
        }

        auto [lo, hi] = script_by_tick.equal_range(k);
        for (auto it = lo; it != hi; ++it) {
            const ScriptedEvent& ev = it->second;
            if (ev.action == "inject")
                write_commands(commands, t, controller.apply(InjectCommand{ev.dse_id}));
            else
                write_commands(commands, t, controller.apply(ReleaseCommand{}));
        }
    }

    if (!decided) report.selected_mode = GraspMode::NoGrasp;

    bool liquid_scenario = !scenario.object.is_solid();
    report.liquid_captured = liquid_event_sent;
    if (scenario.object.is_solid() && decided && report.selected_mode != GraspMode::NoGrasp &&
        report.selected_mode != GraspMode::Liquid) {
        report.force = total_grasp_force(scenario.object, scenario.params, scenario.geometry,
                                         gt.contact, Actuation::Synergistic);
        double weight_n = scenario.object.mass_g * 1e-3 * kGravity;
        report.lift_success = report.force.total_n >= weight_n * scenario.safety_factor;
    } else if (liquid_scenario) {
        report.lift_success = report.liquid_captured;
    }

    std::ofstream report_file(out_dir / "report.json", std::ios::binary);
    report_file << report.to_json().dump(2) << '\n';
    return report;
}

std::vector<ForceTableRow> force_table(const std::vector<double>& diameters_mm,
                                       const MaterialParams& params,
                                       const GripperGeometry& geometry,
                                       const std::vector<Actuation>& actuations) {
    auto layout = build_layout(geometry);
    std::vector<ForceTableRow> rows;
    for (Actuation a : actuations) {
        for (double d : diameters_mm) {
            if (d <= geometry.capillary_inner_diameter_mm)
                throw std::domain_error("force_table: diameter at or below the capillary bore");
            ObjectSpec obj = ObjectSpec::sphere(d);
            ContactSolution contact = solve_contact(obj, geometry, layout);
            ForceBreakdown f = total_grasp_force(obj, params, geometry, contact, a);
            rows.push_back({a, false, d, f.mode, contact.n_engaged(), f.suction_n, f.friction_n,
                            f.total_n});
        }
        ObjectSpec flat = ObjectSpec::flat_top(geometry.membrane_diameter_mm);
        ContactSolution contact = solve_contact(flat, geometry, layout);
        ForceBreakdown f = total_grasp_force(flat, params, geometry, contact, a);
        rows.push_back({a, true, 0.0, f.mode, contact.n_engaged(), f.suction_n, f.friction_n,
                        f.total_n});
    }
    return rows;
}

void write_force_table_csv(const std::vector<ForceTableRow>& rows, std::ostream& out) {
    out << "actuation,d_mm,mode,n_engaged,f_suction_n,f_friction_n,f_total_n\n";
    for (const auto& r : rows) {
        out << to_string(r.actuation) << ',' << (r.flat ? std::string("flat") : fmt(r.d_mm)) << ','
            << "Mode" << (static_cast<int>(r.mode) + 1) << ',' << r.n_engaged << ','
            << fmt(r.suction_n) << ',' << fmt(r.friction_n) << ',' << fmt(r.total_n) << '\n';
    }
}

std::pair<std::filesystem::path, std::filesystem::path> replay_fig6(
    const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    const PressureModel& model = PressureModel::reference();
    LiquidDetector detector;

    auto pressure_path = out_dir / "engagement_pressure.csv";
    {
        std::ofstream out(pressure_path, std::ios::binary);
        out << "t_s,dp_kpa\n";
        for (long k = 0; k <= 6000; ++k) {
            double t = static_cast<double>(k) * 1e-3;
            out << fmt(t) << ',' << fmt(dse_pressure_kpa(t, SealType::CupSeal, model)) << '\n';
        }
    }

    auto voltage_path = out_dir / "detector_voltage.csv";
    {
        std::ofstream out(voltage_path, std::ios::binary);
        out << "t_s,volts\n";
        for (long k = 0; k <= 300; ++k) {
            double t = static_cast<double>(k) * 2e-4;
            out << fmt(t) << ',' << fmt(detector_voltage_v(t, true, detector)) << '\n';
        }
    }
    return {pressure_path, voltage_path};
}

std::string to_string(Actuation a) {
    switch (a) {
        case Actuation::Synergistic: return "synergistic";
        case Actuation::SuctionOnly: return "suction_only";
        case Actuation::JammingOnly: return "jamming_only";
    }
    return "synergistic";
}

Actuation actuation_from_string(const std::string& s) {
    if (s == "synergistic") return Actuation::Synergistic;
    if (s == "suction_only") return Actuation::SuctionOnly;
    if (s == "jamming_only") return Actuation::JammingOnly;
    throw SchemaError("actuation", "must be synergistic, suction_only or jamming_only");
}

std::vector<Measurement> load_measurements_csv(std::istream& in) {
    std::vector<Measurement> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.starts_with("object_kind") || line.starts_with("#")) continue;
        std::stringstream ss(line);
        std::string kind, d_str, act, force_str;
        if (!std::getline(ss, kind, ',') || !std::getline(ss, d_str, ',') ||
            !std::getline(ss, act, ',') || !std::getline(ss, force_str))
            throw SchemaError("measurements line " + std::to_string(line_no),
                              "expected object_kind,d_mm,actuation,force_N");
        Measurement m;
        try {
            if (kind == "sphere")
                m.object = ObjectSpec::sphere(std::stod(d_str));
            else if (kind == "flat_top")
                m.object = ObjectSpec::flat_top(d_str.empty() ? 30.0 : std::stod(d_str));
            else
                throw SchemaError("measurements line " + std::to_string(line_no),
                                  "object_kind must be sphere or flat_top");
            m.actuation = actuation_from_string(act);
            m.force_n = std::stod(force_str);
        } catch (const std::invalid_argument&) {
            throw SchemaError("measurements line " + std::to_string(line_no), "malformed number");
        }
        out.push_back(m);
    }
    return out;
}

std::vector<Measurement> load_measurements_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError(path.string(), "cannot open measurements file");
    return load_measurements_csv(in);
}

void save_params_json(const MaterialParams& params, const std::filesystem::path& path) {
    nlohmann::json j{{"mu", params.mu},
                     {"sigma0_kpa", params.sigma0_kpa},
                     {"p_c_kpa", params.p_c_kpa},
                     {"k_syn", params.k_syn}};
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write params file " + path.string());
    out << j.dump(2) << '\n';
}

MaterialParams load_params_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError(path.string(), "cannot open params file");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(path.string(), std::string("JSON parse error: ") + e.what());
    }
    MaterialParams p;
    if (j.contains("mu")) p.mu = j["mu"].get<double>();
    if (j.contains("sigma0_kpa")) p.sigma0_kpa = j["sigma0_kpa"].get<double>();
    if (j.contains("p_c_kpa")) p.p_c_kpa = j["p_c_kpa"].get<double>();
    if (j.contains("k_syn")) p.k_syn = j["k_syn"].get<double>();
    p.validate();
    return p;
}

}  // namespace gripsim

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace gripsim {

/// Per-DSE pressure response to engagement: first-order saturation
/// dP(t) = dp_max * (1 - exp(-t/tau)) with separate time constants for a
/// full cup seal and a capillary-tip seal.
struct PressureModel {
    double dp_max_kpa = 0.0;
    double tau_cup_s = 0.0;
    double tau_cap_s = 0.2;
    double noise_sigma_kpa = 0.02;

    void validate() const;

    /// The reference response fitted through the measured anchor points
    /// (1 s, 1.42 kPa) and (5 s, 2.78 kPa).
    static const PressureModel& reference();
};

/// Fits (dp_max, tau_cup) through anchor points (t_s, dp_kpa). With two
/// anchors this is a 1-D root find on tau (residual tolerance 1e-9);
/// with more it is a least-squares fit. Throws ConfigError when no
/// tau in (0, 100] s fits.
PressureModel fit_pressure_model(const std::vector<std::pair<double, double>>& anchors);

enum class SealType { None, CapillarySeal, CupSeal };

/// Noise-free pressure drop at t seconds after contact.
double dse_pressure_kpa(double t_since_contact_s, SealType seal, const PressureModel& model);

/// Buoyancy switch: a brass-topped foam float closes two electrodes when
/// the surrounding liquid out-weighs the float.
struct LiquidDetector {
    double foam_diameter_mm = 9.0;
    double foam_height_mm = 10.0;
    double foam_density_kg_m3 = 30.0;
    double brass_thickness_mm = 0.1;
    double brass_density_kg_m3 = 8730.0;
    double electrode_gap_mm = 2.0;
    double v_open_v = 5.0;
    double v_closed_v = 0.87;
    double tau_v_s = 1.3e-3;

    void validate() const;

    /// Float mean density: (foam mass + brass film mass) / foam volume.
    double effective_density_kg_m3() const;
};

/// True iff liquid is present and out-weighs the float.
bool detector_closed(const LiquidDetector& detector, const std::optional<double>& liquid_density_kg_m3);

/// Probe voltage t seconds after ingress. Open circuit reads v_open;
/// a closed switch decays first-order from v_open toward v_closed.
double detector_voltage_v(double t_since_ingress_s, bool closed, const LiquidDetector& detector);

/// One tick of the simulated tactile stack.
struct SensorFrame {
    double t_s = 0.0;
    std::vector<double> dse_pressure_drop_kpa;
    double membrane_kpa = 0.0;
    double detector_voltage_v = 0.0;
};

/// Deterministic per-scenario frame generator. Owns its seed; frames are
/// produced strictly in tick order so identical configs give identical
/// streams byte for byte.
class SensorStream {
public:
    struct Config {
        PressureModel pressure;
        LiquidDetector detector;
        double contact_time_s = 0.0;
        double tick_s = 1e-3;
        bool noise_enabled = true;
        double pressure_sigma_kpa = 0.02;
        double voltage_sigma_v = 0.01;
        std::uint64_t seed = 0;
    };

    /// seal_by_dse gives each DSE's response class once contact begins;
    /// detector_closes tells whether the liquid switch engages at contact.
    SensorStream(std::vector<SealType> seal_by_dse, bool detector_closes, Config config);
    ~SensorStream();
    SensorStream(SensorStream&&) noexcept;
    SensorStream& operator=(SensorStream&&) noexcept;

    /// Produces the frame for the next tick. membrane_kpa is supplied by
    /// the plant side (jamming circuit state).
    SensorFrame next(double membrane_kpa);

    double current_time_s() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace gripsim

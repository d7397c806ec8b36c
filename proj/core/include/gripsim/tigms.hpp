#pragma once

#include <string>
#include <vector>

#include "gripsim/geometry.hpp"
#include "gripsim/sensor_sim.hpp"

namespace gripsim {

struct Thresholds {
    double dp_engaged_kpa = 1.4; // pressure drop that counts as engagement
    double v_liquid_v = 1.1;     // detector voltage below this means liquid
    double t_decision_s = 1.0;   // sampling time after contact
    double tau_split_s = 0.5;    // transient boundary: capillary vs cup seal

    void validate() const;
};

struct TraceSample {
    double t_s = 0.0; // since contact
    double dp_kpa = 0.0;
};

struct EngagementObservation {
    int dse_id = 0;
    SealType classification = SealType::None;
    double dp_at_decision_kpa = 0.0;
};

enum class GraspMode { Mode1, Mode2, Mode3, Liquid, NoGrasp };

std::string to_string(GraspMode mode);

/// Classifies one DSE from its pressure trace over [0, t_decision].
/// Below the engagement threshold at decision time the DSE reads None;
/// otherwise the transient time constant is estimated by least squares
/// and split at tau_split into capillary-tip vs full-cup seal.
EngagementObservation classify_dse(int dse_id, const std::vector<TraceSample>& trace,
                                   const Thresholds& thresholds);

/// Rule-based mode selection, in strict precedence order:
///   1. voltage below the liquid threshold        -> Liquid
///   2. capillary seal on the center, no cup seal -> Mode1
///   3. 1-3 cup seals forming a connected set     -> Mode2
///   4. more than 3 cup seals, or 2-3 disconnected -> Mode3
///   5. nothing observed                          -> NoGrasp
/// Disconnected multi-contact reads as a membrane-spanning (large) object.
GraspMode select_mode(const std::vector<EngagementObservation>& observations, double voltage_v,
                      const std::vector<DseLayout>& layout, const Thresholds& thresholds);

}  // namespace gripsim

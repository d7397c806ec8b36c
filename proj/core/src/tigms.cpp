#include "gripsim/tigms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "detail/fit_util.hpp"
#include "gripsim/errors.hpp"

namespace gripsim {

void Thresholds::validate() const {
    if (!(dp_engaged_kpa > 0.0)) throw ConfigError("dp_engaged must be positive");
    if (!(v_liquid_v > 0.0 && v_liquid_v < 5.0)) throw ConfigError("v_liquid must lie in (0, 5) V");
    if (!(t_decision_s > 0.0)) throw ConfigError("t_decision must be positive");
    if (!(tau_split_s > 0.0)) throw ConfigError("tau_split must be positive");
}

std::string to_string(GraspMode mode) {
    switch (mode) {
        case GraspMode::Mode1: return "Mode1";
        case GraspMode::Mode2: return "Mode2";
        case GraspMode::Mode3: return "Mode3";
        case GraspMode::Liquid: return "Liquid";
        case GraspMode::NoGrasp: return "NoGrasp";
    }
    return "NoGrasp";
}

EngagementObservation classify_dse(int dse_id, const std::vector<TraceSample>& trace,
                                   const Thresholds& thresholds) {
    thresholds.validate();
    if (trace.size() < 2)
        throw std::invalid_argument("classify_dse: insufficient trace data");
    if (trace.front().t_s > 1e-9 || trace.back().t_s < thresholds.t_decision_s - 1e-9)
        throw std::invalid_argument("classify_dse: trace must cover [0, t_decision]");

    // value closest to the decision instant
    const TraceSample* at_decision = &trace.front();
    for (const auto& s : trace)
        if (std::fabs(s.t_s - thresholds.t_decision_s) <
            std::fabs(at_decision->t_s - thresholds.t_decision_s))
            at_decision = &s;

    EngagementObservation obs;
    obs.dse_id = dse_id;
    obs.dp_at_decision_kpa = at_decision->dp_kpa;
    if (at_decision->dp_kpa < thresholds.dp_engaged_kpa) {
        obs.classification = SealType::None;
        return obs;
    }

    std::vector<detail::TimedValue> samples;
    samples.reserve(trace.size());
    for (const auto& s : trace)
        if (s.t_s > 0.0) samples.push_back({s.t_s, s.dp_kpa});
    auto fit = detail::fit_saturating_exponential(samples, 1e-3, 50.0);
    obs.classification = fit.tau_s <= thresholds.tau_split_s ? SealType::CapillarySeal
                                                             : SealType::CupSeal;
    return obs;
}

namespace {

bool connected_under(const std::vector<int>& ids, const std::vector<DseLayout>& layout) {
    if (ids.size() <= 1) return true;
    std::vector<bool> in_set(layout.size(), false);
    for (int id : ids) in_set[static_cast<std::size_t>(id)] = true;
    std::vector<int> stack = {ids.front()};
    std::vector<bool> seen(layout.size(), false);
    seen[static_cast<std::size_t>(ids.front())] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        for (int nb : layout[static_cast<std::size_t>(cur)].neighbors) {
            auto u = static_cast<std::size_t>(nb);
            if (in_set[u] && !seen[u]) {
                seen[u] = true;
                ++reached;
                stack.push_back(nb);
            }
        }
    }
    return reached == ids.size();
}

}  // namespace

GraspMode select_mode(const std::vector<EngagementObservation>& observations, double voltage_v,
                      const std::vector<DseLayout>& layout, const Thresholds& thresholds) {
    thresholds.validate();
    if (observations.size() != layout.size())
        throw std::invalid_argument("select_mode: need exactly one observation per DSE");

    if (voltage_v < thresholds.v_liquid_v) return GraspMode::Liquid;

    std::vector<int> cup_ids;
    bool central_capillary = false;
    for (const auto& obs : observations) {
        if (obs.dse_id < 0 || obs.dse_id >= static_cast<int>(layout.size()))
            throw std::invalid_argument("select_mode: observation id out of range");
        if (obs.classification == SealType::CupSeal) cup_ids.push_back(obs.dse_id);
        if (obs.dse_id == 0 && obs.classification == SealType::CapillarySeal)
            central_capillary = true;
    }

    if (cup_ids.empty())
        return central_capillary ? GraspMode::Mode1 : GraspMode::NoGrasp;
    if (cup_ids.size() <= 3 && connected_under(cup_ids, layout)) return GraspMode::Mode2;
    return GraspMode::Mode3;
}

}  // namespace gripsim

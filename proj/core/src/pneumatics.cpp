#include "gripsim/pneumatics.hpp"

#include <algorithm>
#include <stdexcept>

#include "gripsim/errors.hpp"

namespace gripsim {

namespace {

DseCircuitState settings_for(DsePhase phase) {
    switch (phase) {
        case DsePhase::Standby:    return {phase, 0.0, Valve::Open, Valve::Closed};
        case DsePhase::Seeking:    return {phase, 0.3, Valve::Open, Valve::Closed};
        case DsePhase::Engaged:    return {phase, 1.0, Valve::Open, Valve::Closed};
        case DsePhase::LiquidHeld: return {phase, 0.0, Valve::Closed, Valve::Closed};
        case DsePhase::Injecting:  return {phase, 1.0, Valve::Closed, Valve::Open};
        case DsePhase::Off:        return {phase, 0.0, Valve::Closed, Valve::Closed};
    }
    return {};
}

void validate_ids(const std::vector<int>& ids, std::size_t circuit_count) {
    for (int id : ids)
        if (id < 0 || id >= static_cast<int>(circuit_count))
            throw std::invalid_argument("pneumatics: DSE id out of range");
}

void set_phase(PneumaticState& state, std::size_t index, DsePhase phase) {
    state.circuits[index] = settings_for(phase);
}

}  // namespace

PneumaticState initial_state(int circuit_count) {
    if (circuit_count <= 0) throw std::invalid_argument("pneumatics: circuit count must be positive");
    PneumaticState s;
    s.circuits.assign(static_cast<std::size_t>(circuit_count), settings_for(DsePhase::Standby));
    return s;
}

void check_invariants(const PneumaticState& state) {
    for (const auto& c : state.circuits) {
        const auto expected = settings_for(c.phase);
        bool ok = true;
        switch (c.phase) {
            case DsePhase::Seeking:    ok = c.pump_duty == 0.3; break;
            case DsePhase::Engaged:    ok = c.pump_duty == 1.0; break;
            case DsePhase::LiquidHeld: ok = c.pump_duty == 0.0 && c.inlet == Valve::Closed; break;
            case DsePhase::Injecting:  ok = c.pump_duty == 1.0 && c.outlet == Valve::Open; break;
            case DsePhase::Standby:
            case DsePhase::Off:        ok = c.pump_duty == 0.0; break;
        }
        if (!ok || c != expected)
            throw ConfigError("pneumatic circuit settings inconsistent with phase");
    }
    if (state.membrane.jamming == Jamming::Jammed &&
        !(state.membrane.pump_on && state.membrane.valve == Valve::Closed))
        throw ConfigError("jammed membrane must hold vacuum (pump on, valve closed)");
}

StepResult step(const PneumaticState& state, const ControlEvent& event) {
    PneumaticState next = state;
    const std::size_t n = state.circuits.size();

    std::visit(
        [&](const auto& ev) {
            using T = std::decay_t<decltype(ev)>;
            if constexpr (std::is_same_v<T, StartCommand>) {
                for (std::size_t i = 0; i < n; ++i)
                    if (next.circuits[i].phase == DsePhase::Standby)
                        set_phase(next, i, DsePhase::Seeking);
            } else if constexpr (std::is_same_v<T, ContactDetected>) {
                validate_ids(ev.engaged_ids, n);
                for (std::size_t i = 0; i < n; ++i) {
                    if (next.circuits[i].phase != DsePhase::Seeking) continue;
                    bool engaged = std::find(ev.engaged_ids.begin(), ev.engaged_ids.end(),
                                             static_cast<int>(i)) != ev.engaged_ids.end();
                    set_phase(next, i, engaged ? DsePhase::Engaged : DsePhase::Off);
                }
            } else if constexpr (std::is_same_v<T, DisengagedDetected>) {
                validate_ids(ev.ids, n);
                for (int id : ev.ids)
                    if (next.circuits[static_cast<std::size_t>(id)].phase == DsePhase::Engaged)
                        set_phase(next, static_cast<std::size_t>(id), DsePhase::Off);
            } else if constexpr (std::is_same_v<T, LiquidDetected>) {
                validate_ids({ev.dse_id}, n);
                set_phase(next, static_cast<std::size_t>(ev.dse_id), DsePhase::LiquidHeld);
            } else if constexpr (std::is_same_v<T, InjectCommand>) {
                validate_ids({ev.dse_id}, n);
                if (next.circuits[static_cast<std::size_t>(ev.dse_id)].phase != DsePhase::LiquidHeld)
                    throw RejectedCommandError("inject command requires a liquid-holding circuit");
                set_phase(next, static_cast<std::size_t>(ev.dse_id), DsePhase::Injecting);
            } else if constexpr (std::is_same_v<T, ReleaseCommand>) {
                for (std::size_t i = 0; i < n; ++i) set_phase(next, i, DsePhase::Standby);
                next.membrane = MembraneCircuitState{};
            } else if constexpr (std::is_same_v<T, Tick>) {
                // time passes; the policy is purely event-driven
            } else if constexpr (std::is_same_v<T, ModeSelected>) {
                if (ev.mode == GraspMode::Mode2 || ev.mode == GraspMode::Mode3)
                    next.membrane = {Jamming::Jammed, Valve::Closed, true};
            }
        },
        event);

    StepResult result;
    result.commands.reserve(4);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& before = state.circuits[i];
        const auto& after = next.circuits[i];
        if (before.pump_duty != after.pump_duty || before.inlet != after.inlet ||
            before.outlet != after.outlet)
            result.commands.push_back(
                {static_cast<int>(i), after.pump_duty, after.inlet, after.outlet});
    }
    if (!(state.membrane == next.membrane))
        result.commands.push_back({kMembraneTarget, next.membrane.pump_on ? 1.0 : 0.0,
                                   next.membrane.valve, Valve::Closed});
    result.state = std::move(next);
    return result;
}

}  // namespace gripsim

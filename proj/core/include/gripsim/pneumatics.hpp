#pragma once

#include <variant>
#include <vector>

#include "gripsim/tigms.hpp"

namespace gripsim {

enum class Valve { Open, Closed };
enum class DsePhase { Standby, Seeking, Engaged, LiquidHeld, Injecting, Off };
enum class Jamming { Slack, Jammed };

/// Per-DSE pneumatic circuit: one pump plus inlet/outlet valves. Pump
/// duty is quantized to {0, 0.3, 1.0}.
struct DseCircuitState {
    DsePhase phase = DsePhase::Standby;
    double pump_duty = 0.0;
    Valve inlet = Valve::Open;
    Valve outlet = Valve::Closed;

    bool operator==(const DseCircuitState&) const = default;
};

struct MembraneCircuitState {
    Jamming jamming = Jamming::Slack;
    Valve valve = Valve::Open;
    bool pump_on = false;

    bool operator==(const MembraneCircuitState&) const = default;
};

struct PneumaticState {
    std::vector<DseCircuitState> circuits;
    MembraneCircuitState membrane;

    bool operator==(const PneumaticState&) const = default;
};

// Event alphabet for the control policy.
struct StartCommand {};
struct ContactDetected { std::vector<int> engaged_ids; };
struct DisengagedDetected { std::vector<int> ids; };
struct LiquidDetected { int dse_id = 0; };
struct InjectCommand { int dse_id = 0; };
struct ReleaseCommand {};
struct Tick { double dt_s = 0.0; };
struct ModeSelected { GraspMode mode = GraspMode::NoGrasp; };

using ControlEvent = std::variant<StartCommand, ContactDetected, DisengagedDetected, LiquidDetected,
                                  InjectCommand, ReleaseCommand, Tick, ModeSelected>;

/// One actuator delta. target is a DSE id, or kMembraneTarget for the
/// jamming circuit (whose pump_duty is 0/1 and whose inlet column carries
/// the membrane valve).
inline constexpr int kMembraneTarget = -1;

struct ActuatorCommand {
    int target = 0;
    double pump_duty = 0.0;
    Valve inlet = Valve::Open;
    Valve outlet = Valve::Closed;
};

struct StepResult {
    PneumaticState state;
    std::vector<ActuatorCommand> commands;
};

PneumaticState initial_state(int circuit_count);

/// Throws ConfigError if a phase/duty/valve combination is inconsistent.
void check_invariants(const PneumaticState& state);

/// Advances the control policy one event. Transitions:
///   Standby --Start--> all Seeking at 30% duty
///   Seeking --ContactDetected(S)--> Engaged (full duty) for S, Off otherwise
///   Engaged --DisengagedDetected--> Off (frozen until release)
///   any     --LiquidDetected(i)--> LiquidHeld(i) within the same step
///   LiquidHeld --InjectCommand--> Injecting (pump on, outlet open)
///   any     --ReleaseCommand--> everything Standby, membrane slack
///   ModeSelected(Mode2|Mode3) jams the membrane
/// Commands are the delta between the old and new actuator settings.
StepResult step(const PneumaticState& state, const ControlEvent& event);

/// Convenience single-owner wrapper processing events strictly in order.
class PneumaticController {
public:
    explicit PneumaticController(int circuit_count) : state_(initial_state(circuit_count)) {}

    std::vector<ActuatorCommand> apply(const ControlEvent& event) {
        StepResult r = step(state_, event);
        state_ = std::move(r.state);
        return std::move(r.commands);
    }

    const PneumaticState& state() const { return state_; }

private:
    PneumaticState state_;
};

}  // namespace gripsim

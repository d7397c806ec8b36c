#include "gripsim/sensor_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "detail/fit_util.hpp"
#include "gripsim/errors.hpp"

namespace gripsim {

namespace {

constexpr double kPi = std::numbers::pi;

double saturating(double t, double dp_max, double tau) {
    return dp_max * (1.0 - std::exp(-t / tau));
}

}  // namespace

void PressureModel::validate() const {
    if (!(dp_max_kpa > 0.0)) throw ConfigError("dp_max must be positive");
    if (!(tau_cap_s > 0.0 && tau_cap_s < tau_cup_s))
        throw ConfigError("time constants must satisfy 0 < tau_cap < tau_cup");
    if (noise_sigma_kpa < 0.0) throw ConfigError("noise sigma must be non-negative");
}

const PressureModel& PressureModel::reference() {
    static const PressureModel model = fit_pressure_model({{1.0, 1.42}, {5.0, 2.78}});
    return model;
}

PressureModel fit_pressure_model(const std::vector<std::pair<double, double>>& anchors) {
    if (anchors.size() < 2) throw ConfigError("pressure fit needs at least two anchor points");
    auto pts = anchors;
    std::sort(pts.begin(), pts.end());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!(pts[i].first > 0.0) || !(pts[i].second > 0.0))
            throw ConfigError("anchor times and pressures must be positive");
        if (i > 0 && !(pts[i].first > pts[i - 1].first))
            throw ConfigError("anchor times must be distinct");
    }

    constexpr double kTauLo = 1e-6, kTauHi = 100.0;
    PressureModel model;

    if (pts.size() == 2) {
        auto [t1, y1] = pts[0];
        auto [t2, y2] = pts[1];
        // eliminate dp_max; g is increasing in tau from (y1 - y2) toward y1*t2/t1 - y2
        auto g = [&](double tau) {
            return y1 * (1.0 - std::exp(-t2 / tau)) / (1.0 - std::exp(-t1 / tau)) - y2;
        };
        if (!(g(kTauLo) < 0.0) || !(g(kTauHi) > 0.0))
            throw ConfigError("no exponential through the anchors with tau in (0, 100] s");
        double lo = kTauLo, hi = kTauHi;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            (g(mid) < 0.0 ? lo : hi) = mid;
        }
        model.tau_cup_s = 0.5 * (lo + hi);
        model.dp_max_kpa = y1 / (1.0 - std::exp(-t1 / model.tau_cup_s));
        double residual = std::fabs(saturating(t2, model.dp_max_kpa, model.tau_cup_s) - y2);
        if (residual > 1e-9)
            throw ConfigError("pressure fit residual above 1e-9 kPa");
    } else {
        std::vector<detail::TimedValue> samples;
        samples.reserve(pts.size());
        for (auto [t, y] : pts) samples.push_back({t, y});
        auto fit = detail::fit_saturating_exponential(samples, kTauLo, kTauHi);
        if (!(fit.amplitude > 0.0))
            throw ConfigError("pressure fit produced a non-positive amplitude");
        model.tau_cup_s = fit.tau_s;
        model.dp_max_kpa = fit.amplitude;
    }

    if (!(model.tau_cap_s < model.tau_cup_s))
        throw ConfigError("fitted tau_cup must exceed the capillary time constant");
    return model;
}

double dse_pressure_kpa(double t_since_contact_s, SealType seal, const PressureModel& model) {
    if (t_since_contact_s < 0.0) throw std::domain_error("time since contact must be >= 0");
    switch (seal) {
        case SealType::None:
            return 0.0;
        case SealType::CapillarySeal:
            return saturating(t_since_contact_s, model.dp_max_kpa, model.tau_cap_s);
        case SealType::CupSeal:
            return saturating(t_since_contact_s, model.dp_max_kpa, model.tau_cup_s);
    }
    return 0.0;
}

void LiquidDetector::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) throw ConfigError(std::string(name) + " must be positive");
    };
    positive(foam_diameter_mm, "foam_diameter_mm");
    positive(foam_height_mm, "foam_height_mm");
    positive(foam_density_kg_m3, "foam_density_kg_m3");
    positive(brass_thickness_mm, "brass_thickness_mm");
    positive(brass_density_kg_m3, "brass_density_kg_m3");
    positive(electrode_gap_mm, "electrode_gap_mm");
    positive(tau_v_s, "tau_v_s");
    if (!(v_closed_v < v_open_v)) throw ConfigError("v_closed must be below v_open");
}

double LiquidDetector::effective_density_kg_m3() const {
    double r_m = foam_diameter_mm * 1e-3 / 2.0;
    double area = kPi * r_m * r_m;
    double foam_volume = area * foam_height_mm * 1e-3;
    double brass_volume = area * brass_thickness_mm * 1e-3;
    double mass = foam_density_kg_m3 * foam_volume + brass_density_kg_m3 * brass_volume;
    return mass / foam_volume;
}

bool detector_closed(const LiquidDetector& detector,
                     const std::optional<double>& liquid_density_kg_m3) {
    detector.validate();
    return liquid_density_kg_m3.has_value() &&
           *liquid_density_kg_m3 > detector.effective_density_kg_m3();
}

double detector_voltage_v(double t_since_ingress_s, bool closed, const LiquidDetector& detector) {
    if (t_since_ingress_s < 0.0) throw std::domain_error("time since ingress must be >= 0");
    if (!closed) return detector.v_open_v;
    return detector.v_closed_v +
           (detector.v_open_v - detector.v_closed_v) * std::exp(-t_since_ingress_s / detector.tau_v_s);
}

struct SensorStream::Impl {
    std::vector<SealType> seal_by_dse;
    bool detector_closes;
    Config cfg;
    detail::GaussianRng rng;
    long tick_index = 0;

    Impl(std::vector<SealType> seals, bool closes, Config c)
        : seal_by_dse(std::move(seals)), detector_closes(closes), cfg(c), rng(c.seed) {}
};

SensorStream::SensorStream(std::vector<SealType> seal_by_dse, bool detector_closes, Config config)
    : impl_(std::make_unique<Impl>(std::move(seal_by_dse), detector_closes, config)) {}

SensorStream::~SensorStream() = default;
SensorStream::SensorStream(SensorStream&&) noexcept = default;
SensorStream& SensorStream::operator=(SensorStream&&) noexcept = default;

double SensorStream::current_time_s() const {
    return static_cast<double>(impl_->tick_index) * impl_->cfg.tick_s;
}

SensorFrame SensorStream::next(double membrane_kpa) {
    auto& s = *impl_;
    SensorFrame frame;
    frame.t_s = static_cast<double>(s.tick_index) * s.cfg.tick_s;
    ++s.tick_index;
    frame.membrane_kpa = membrane_kpa;

    double since_contact = frame.t_s - s.cfg.contact_time_s;
    frame.dse_pressure_drop_kpa.reserve(s.seal_by_dse.size());
    for (SealType seal : s.seal_by_dse) {
        double dp = 0.0;
        if (since_contact >= 0.0 && seal != SealType::None)
            dp = dse_pressure_kpa(since_contact, seal, s.cfg.pressure);
        if (s.cfg.noise_enabled) dp += s.rng(s.cfg.pressure_sigma_kpa);
        frame.dse_pressure_drop_kpa.push_back(std::max(dp, 0.0));
    }

    bool closed = s.detector_closes && since_contact >= 0.0;
    double v = detector_voltage_v(std::max(since_contact, 0.0), closed, s.cfg.detector);
    if (s.cfg.noise_enabled) v += s.rng(s.cfg.voltage_sigma_v);
    double v_lo = s.cfg.detector.v_closed_v - 3.0 * s.cfg.voltage_sigma_v;
    double v_hi = s.cfg.detector.v_open_v + 3.0 * s.cfg.voltage_sigma_v;
    frame.detector_voltage_v = std::clamp(v, v_lo, v_hi);
    return frame;
}

}  // namespace gripsim

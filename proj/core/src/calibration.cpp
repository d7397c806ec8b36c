#include "gripsim/calibration.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "gripsim/errors.hpp"

namespace gripsim {

namespace {

struct PreparedMeasurement {
    ObjectSpec object;
    Actuation actuation;
    double force_n;
    ContactSolution contact;
};

double objective(const std::vector<PreparedMeasurement>& ms, const GripperGeometry& geom,
                 const MaterialParams& p) {
    double sse = 0.0;
    for (const auto& m : ms) {
        double f = total_grasp_force(m.object, p, geom, m.contact, m.actuation).total_n;
        double r = f - m.force_n;
        sse += r * r;
    }
    return sse;
}

// coarse scan + golden-section refinement on one coordinate
double line_search(const std::function<double(double)>& f, double lo, double hi, double x0) {
    if (!(hi > lo)) return lo;
    constexpr int kScan = 64;
    double best_x = x0, best_f = f(x0);
    for (int i = 0; i <= kScan; ++i) {
        double x = lo + (hi - lo) * i / kScan;
        double v = f(x);
        if (v < best_f) {
            best_f = v;
            best_x = x;
        }
    }
    double step = (hi - lo) / kScan;
    double a = std::max(lo, best_x - step), b = std::min(hi, best_x + step);
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a), x2 = a + kInvPhi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80 && (b - a) > 1e-13 * (hi - lo); ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        }
    }
    double mid = 0.5 * (a + b);
    return f(mid) <= best_f ? mid : best_x;
}

ForceMode mode_of(const ObjectSpec& o, const GripperGeometry& g) {
    if (o.kind == ObjectSpec::Kind::FlatTop) return ForceMode::Mode3;
    if (o.diameter_mm < seal_threshold_diameter_mm(g)) return ForceMode::Mode1;
    if (o.diameter_mm < g.cup_effective_diameter_mm) return ForceMode::Mode2;
    return ForceMode::Mode3;
}

}  // namespace

CalibrationResult calibrate(const std::vector<Measurement>& measurements,
                            const GripperGeometry& geometry, const CalibrationOptions& options) {
    if (measurements.empty()) throw std::invalid_argument("calibrate: no measurements");

    int free_params = (options.fit_mu ? 1 : 0) + (options.fit_sigma0 ? 1 : 0) +
                      (options.fit_pc ? 1 : 0);
    if (free_params == 0) throw std::invalid_argument("calibrate: no free parameters");
    if (static_cast<int>(measurements.size()) < free_params)
        throw std::invalid_argument("calibrate: fewer measurements than free parameters");
    if (free_params == 3) {
        if (measurements.size() < 3)
            throw std::invalid_argument("calibrate: full fit needs >= 3 measurements");
        std::set<ForceMode> modes;
        for (const auto& m : measurements) modes.insert(mode_of(m.object, geometry));
        if (modes.size() < 2)
            throw std::invalid_argument("calibrate: full fit needs measurements spanning >= 2 modes");
    }

    auto layout = build_layout(geometry);
    std::vector<PreparedMeasurement> prepared;
    prepared.reserve(measurements.size());
    for (const auto& m : measurements) {
        if (!m.object.is_solid())
            throw std::invalid_argument("calibrate: measurements must be solid objects");
        prepared.push_back({m.object, m.actuation, m.force_n,
                            solve_contact(m.object, geometry, layout)});
    }

    const double lo[3] = {options.mu_lo, options.sigma0_lo_kpa, options.pc_lo_kpa};
    const double hi[3] = {options.mu_hi, options.sigma0_hi_kpa, options.pc_hi_kpa};
    const bool fit[3] = {options.fit_mu, options.fit_sigma0, options.fit_pc};

    auto clamp_initial = [&](int i, double v) { return std::clamp(v, lo[i], hi[i]); };
    double init[3] = {clamp_initial(0, options.initial.mu),
                      clamp_initial(1, options.initial.sigma0_kpa),
                      clamp_initial(2, options.initial.p_c_kpa)};

    auto eval = [&](const double x[3]) {
        MaterialParams p = options.initial;
        p.mu = x[0];
        p.sigma0_kpa = x[1];
        p.p_c_kpa = x[2];
        return objective(prepared, geometry, p);
    };

    // deterministic multi-start: box corners, center, and the initial guess
    std::vector<std::array<double, 3>> starts;
    for (int mask = 0; mask < 8; ++mask)
        starts.push_back({fit[0] ? (mask & 1 ? hi[0] : lo[0]) : init[0],
                          fit[1] ? (mask & 2 ? hi[1] : lo[1]) : init[1],
                          fit[2] ? (mask & 4 ? hi[2] : lo[2]) : init[2]});
    starts.push_back({fit[0] ? 0.5 * (lo[0] + hi[0]) : init[0],
                      fit[1] ? 0.5 * (lo[1] + hi[1]) : init[1],
                      fit[2] ? 0.5 * (lo[2] + hi[2]) : init[2]});
    starts.push_back({init[0], init[1], init[2]});

    double best_x[3] = {init[0], init[1], init[2]};
    double best_f = eval(best_x);

    for (const auto& s : starts) {
        double x[3] = {s[0], s[1], s[2]};
        double f_cur = eval(x);
        for (int pass = 0; pass < 60; ++pass) {
            double f_before = f_cur;
            for (int i = 0; i < 3; ++i) {
                if (!fit[i]) continue;
                auto slice = [&](double v) {
                    double y[3] = {x[0], x[1], x[2]};
                    y[i] = v;
                    return eval(y);
                };
                x[i] = line_search(slice, lo[i], hi[i], x[i]);
            }
            f_cur = eval(x);
            if (f_before - f_cur < 1e-18) break;
        }
        if (f_cur < best_f) {
            best_f = f_cur;
            best_x[0] = x[0];
            best_x[1] = x[1];
            best_x[2] = x[2];
        }
    }

    CalibrationResult result;
    result.params = options.initial;
    result.params.mu = best_x[0];
    result.params.sigma0_kpa = best_x[1];
    result.params.p_c_kpa = best_x[2];
    result.sse_n2 = best_f;
    for (const auto& m : prepared) {
        double f = total_grasp_force(m.object, result.params, geometry, m.contact, m.actuation).total_n;
        result.per_point_residual_n.push_back(f - m.force_n);
    }

    double rms = std::sqrt(best_f / static_cast<double>(measurements.size()));
    if (rms > options.max_rms_residual_n)
        throw CalibrationError("calibration infeasible: rms residual " + std::to_string(rms) +
                                   " N exceeds cap " + std::to_string(options.max_rms_residual_n) + " N",
                               result.per_point_residual_n);
    return result;
}

}  // namespace gripsim

#pragma once

#include <vector>

#include "gripsim/force_model.hpp"
#include "gripsim/geometry.hpp"

namespace gripsim {

struct Measurement {
    ObjectSpec object;
    Actuation actuation = Actuation::Synergistic;
    double force_n = 0.0;
};

struct CalibrationOptions {
    // which parameters the search may move; fixed ones keep their value
    // from `initial`
    bool fit_mu = true;
    bool fit_sigma0 = true;
    bool fit_pc = true;
    MaterialParams initial;

    double mu_lo = 0.0, mu_hi = 2.0;
    double sigma0_lo_kpa = 0.0, sigma0_hi_kpa = 100.0;
    double pc_lo_kpa = 0.0, pc_hi_kpa = 101.325;

    // fit is declared infeasible above this RMS force residual
    double max_rms_residual_n = 0.1;
};

struct CalibrationResult {
    MaterialParams params;
    double sse_n2 = 0.0;
    std::vector<double> per_point_residual_n;
};

/// Least-squares fit of (mu, sigma0, P_c) against measured grasp forces,
/// by deterministic multi-start coordinate descent inside the bounds.
/// Requires at least as many measurements as free parameters; the default
/// all-free fit requires >= 3 measurements spanning >= 2 force modes.
/// Throws CalibrationError (with per-point residuals) when the best fit
/// stays above max_rms_residual_n.
CalibrationResult calibrate(const std::vector<Measurement>& measurements,
                            const GripperGeometry& geometry,
                            const CalibrationOptions& options = {});

}  // namespace gripsim

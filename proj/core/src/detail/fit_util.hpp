#pragma once

// Internal fitting / RNG helpers shared by sensor_sim and tigms.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace gripsim::detail {

struct TimedValue {
    double t_s;
    double value;
};

// 1-D minimization: coarse log/linear scan followed by golden-section
// refinement around the best bracket.
inline double minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                              bool log_scale, int scan_points = 200) {
    auto to_x = [&](double u) { return log_scale ? lo * std::pow(hi / lo, u) : lo + (hi - lo) * u; };
    double best_u = 0.0, best_f = f(to_x(0.0));
    for (int i = 1; i <= scan_points; ++i) {
        double u = static_cast<double>(i) / scan_points;
        double v = f(to_x(u));
        if (v < best_f) {
            best_f = v;
            best_u = u;
        }
    }
    double du = 1.0 / scan_points;
    double a = std::max(0.0, best_u - du), b = std::min(1.0, best_u + du);
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a), x2 = a + kInvPhi * (b - a);
    double f1 = f(to_x(x1)), f2 = f(to_x(x2));
    for (int it = 0; it < 100 && (b - a) > 1e-14; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(to_x(x1));
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(to_x(x2));
        }
    }
    return to_x(0.5 * (a + b));
}

struct ExpFit {
    double amplitude = 0.0;
    double tau_s = 0.0;
    double sse = 0.0;
};

// Least squares fit of y = a * (1 - exp(-t/tau)) with the amplitude
// profiled out analytically for each candidate tau.
inline ExpFit fit_saturating_exponential(const std::vector<TimedValue>& samples, double tau_lo,
                                         double tau_hi) {
    auto amplitude_for = [&](double tau) {
        double num = 0.0, den = 0.0;
        for (const auto& s : samples) {
            double f = 1.0 - std::exp(-s.t_s / tau);
            num += s.value * f;
            den += f * f;
        }
        return den > 0.0 ? num / den : 0.0;
    };
    auto sse_for = [&](double tau) {
        double a = amplitude_for(tau);
        double sse = 0.0;
        for (const auto& s : samples) {
            double r = s.value - a * (1.0 - std::exp(-s.t_s / tau));
            sse += r * r;
        }
        return sse;
    };
    double tau = minimize_scalar(sse_for, tau_lo, tau_hi, /*log_scale=*/true);
    return {amplitude_for(tau), tau, sse_for(tau)};
}

// Deterministic Gaussian source: Box-Muller over mt19937_64, one value
// per draw (the second branch is discarded to keep streams stateless).
class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed) : gen_(seed) {}

    double operator()(double sigma) {
        if (sigma <= 0.0) return 0.0;
        double u1 = uniform01();
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(1.0 - u1));
        return sigma * r * std::cos(6.283185307179586 * u2);
    }

private:
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    std::mt19937_64 gen_;
};

}  // namespace gripsim::detail

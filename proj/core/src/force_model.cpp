#include "gripsim/force_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gripsim/errors.hpp"

namespace gripsim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;
constexpr double kMmToM = 1e-3;
constexpr double kKpaToPa = 1e3;

// adaptive Simpson; integrands here are smooth so this converges fast
template <typename F>
double simpson_step(F&& f, double a, double b, double fa, double fb, double fm, double whole,
                    double eps, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * eps)
        return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, fm, flm, left, 0.5 * eps, depth - 1) +
           simpson_step(f, m, b, fm, fb, frm, right, 0.5 * eps, depth - 1);
}

template <typename F>
double integrate(F&& f, double a, double b, double eps) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fb, fm, whole, eps, 48);
}

double friction_quadrature_n(double mu, double sigma0_pa, double r_obj_m, double theta_c) {
    auto integrand = [&](double t) {
        return sigma0_pa * 2.0 * kPi * r_obj_m * r_obj_m * std::sin(t) *
               (mu * std::sin(t) - std::cos(t));
    };
    double scale = sigma0_pa * 2.0 * kPi * r_obj_m * r_obj_m * (mu + 1.0);
    double eps = std::max(1e-14 * std::max(scale, 1.0), 1e-300);
    return integrate(integrand, 0.0, theta_c, eps);
}

double friction_closed_impl(double mu, double sigma0_pa, double r_obj_m, double theta_c) {
    double bracket = mu * (theta_c / 2.0 - std::sin(2.0 * theta_c) / 4.0) -
                     std::sin(theta_c) * std::sin(theta_c) / 2.0;
    return 2.0 * kPi * sigma0_pa * r_obj_m * r_obj_m * bracket;
}

void check_theta(double theta_c) {
    if (!(theta_c > 0.0 && theta_c <= kHalfPi))
        throw std::domain_error("theta_c must lie in (0, pi/2]");
}

}  // namespace

void MaterialParams::validate() const {
    if (mu < 0.0) throw ConfigError("mu must be non-negative");
    if (sigma0_kpa < 0.0) throw ConfigError("sigma0 must be non-negative");
    if (p_c_kpa < 0.0 || p_c_kpa > 101.325)
        throw ConfigError("P_c must lie in [0, 101.325] kPa");
    if (k_syn < 0.0) throw ConfigError("k_syn must be non-negative");
}

double capillary_force_n(const MaterialParams& params, const GripperGeometry& geometry) {
    double r = geometry.capillary_inner_diameter_mm * kMmToM / 2.0;
    return params.p_c_kpa * kKpaToPa * kPi * r * r;
}

double friction_force_n(const MaterialParams& params, double r_obj_mm, double theta_c_rad) {
    check_theta(theta_c_rad);
    double sigma0_pa = params.sigma0_kpa * kKpaToPa;
    double r = r_obj_mm * kMmToM;
    double closed = friction_closed_impl(params.mu, sigma0_pa, r, theta_c_rad);
    double quad = friction_quadrature_n(params.mu, sigma0_pa, r, theta_c_rad);
    double scale = std::max({std::fabs(closed), std::fabs(quad),
                             sigma0_pa * 2.0 * kPi * r * r * 1e-6, 1e-30});
    if (std::fabs(closed - quad) > 1e-9 * scale)
        throw ConfigError("friction quadrature and closed form disagree beyond 1e-9 relative");
    return closed;
}

double friction_force_closed_n(const MaterialParams& params, double r_obj_mm, double theta_c_rad) {
    check_theta(theta_c_rad);
    return friction_closed_impl(params.mu, params.sigma0_kpa * kKpaToPa, r_obj_mm * kMmToM,
                                theta_c_rad);
}

double cup_suction_force_n(const MaterialParams& params, double r_contact_mm, double theta_c_rad) {
    double seal_r = r_contact_mm * kMmToM * std::sin(theta_c_rad);
    return params.p_c_kpa * kKpaToPa * kPi * seal_r * seal_r;
}

std::pair<double, std::vector<std::pair<int, double>>> multi_dse_suction_n(
    const MaterialParams& params, const ContactSolution& contact, double r_obj_mm,
    const GripperGeometry& geometry) {
    if (contact.regime != ContactRegime::MultiDse && contact.regime != ContactRegime::Flat)
        throw std::domain_error("multi_dse_suction requires a MultiDse or Flat contact");
    if (contact.engaged.empty())
        throw std::domain_error("multi_dse_suction requires at least one engaged DSE");

    double p_c_pa = params.p_c_kpa * kKpaToPa;
    std::vector<std::pair<int, double>> per_dse;
    per_dse.reserve(contact.engaged.size());
    double total = 0.0;
    for (const auto& e : contact.engaged) {
        double area;
        if (contact.regime == ContactRegime::Flat) {
            double rc = geometry.cup_radius_mm * kMmToM;
            area = kPi * rc * rc;
        } else {
            double seal_r = r_obj_mm * kMmToM * std::sin(e.theta_c_rad);
            area = kPi * seal_r * seal_r;
        }
        double f = p_c_pa * area * std::cos(e.beta_rad);
        per_dse.emplace_back(e.dse_id, f);
        total += f;
    }
    return {total, std::move(per_dse)};
}

ForceBreakdown total_grasp_force(const ObjectSpec& object, const MaterialParams& params,
                                 const GripperGeometry& geometry, const ContactSolution& contact,
                                 Actuation actuation) {
    params.validate();
    if (!object.is_solid())
        throw std::domain_error("total_grasp_force: liquids carry no grasp force");

    MaterialParams eff = params;
    if (actuation == Actuation::SuctionOnly) eff.sigma0_kpa = 0.0;
    MaterialParams suction = eff;
    if (actuation == Actuation::JammingOnly) suction.p_c_kpa = 0.0;

    ForceBreakdown out;
    double friction_gain = (actuation == Actuation::Synergistic) ? eff.k_syn : 1.0;

    if (object.kind == ObjectSpec::Kind::Sphere &&
        object.diameter_mm <= geometry.capillary_inner_diameter_mm)
        throw std::domain_error("object below the capillary bore is ungraspable");

    bool flat = object.kind == ObjectSpec::Kind::FlatTop;
    double d = object.diameter_mm;
    double r_obj_mm = d / 2.0;
    double r_mem_mm = geometry.membrane_diameter_mm / 2.0;

    if (!flat && d < seal_threshold_diameter_mm(geometry)) {
        out.mode = ForceMode::Mode1;
        out.suction_n = capillary_force_n(suction, geometry);
        out.friction_n = 0.0;
        out.per_dse_suction_n = {{0, out.suction_n}};
    } else if (!flat && d < geometry.cup_effective_diameter_mm) {
        out.mode = ForceMode::Mode2;
        if (contact.engaged.empty())
            throw std::domain_error("mode-2 assembly requires an engaged central DSE");
        const auto& central = contact.engaged.front();
        out.suction_n = cup_suction_force_n(suction, r_obj_mm, central.theta_c_rad);
        double raw = friction_force_closed_n(eff, r_obj_mm, kHalfPi);
        out.friction_n = friction_gain * std::max(raw, 0.0);
        out.per_dse_suction_n = {{0, out.suction_n}};
    } else {
        out.mode = ForceMode::Mode3;
        auto [f_s, per] = multi_dse_suction_n(suction, contact, r_obj_mm, geometry);
        out.suction_n = f_s;
        out.per_dse_suction_n = std::move(per);
        double r_f = flat ? r_mem_mm : std::min(r_obj_mm, r_mem_mm);
        double raw = friction_force_closed_n(eff, r_f, kHalfPi);
        out.friction_n = friction_gain * std::max(raw, 0.0);
    }

    out.total_n = out.suction_n + out.friction_n;
    return out;
}

}  // namespace gripsim

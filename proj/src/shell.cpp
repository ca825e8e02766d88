#include "bvl/shell.hpp"

#include <cmath>
#include <numbers>

namespace bvl {

namespace {
constexpr double kPi = std::numbers::pi;
}

MaterialModel MaterialModel::from_modulus(double E_MPa) {
    MaterialModel m;
    m.youngs_modulus_MPa = E_MPa;
    m.source = Source::explicit_value;
    m.validate();
    return m;
}

void MaterialModel::validate() const {
    if (!(youngs_modulus_MPa > 0.0) || !std::isfinite(youngs_modulus_MPa))
        throw std::invalid_argument("Young's modulus must be positive");
}

ShellGeometry::ShellGeometry(double outer_radius_mm, double inner_radius_mm,
                             double thickness_mm, double slope_angle_deg)
    : R_(outer_radius_mm), r_(inner_radius_mm), t_(thickness_mm) {
    if (!(R_ > r_) || !(r_ > 0.0))
        throw std::invalid_argument("require R > r > 0");
    if (!(t_ > 0.0))
        throw std::invalid_argument("require thickness > 0");
    if (!(slope_angle_deg > 0.0) || !(slope_angle_deg < 90.0))
        throw std::invalid_argument("require 0 < slope angle < 90 degrees");
    alpha_ = slope_angle_deg * kPi / 180.0;
    L_ = (R_ - r_) / std::cos(alpha_);
    h0_ = (R_ - r_) * std::tan(alpha_);
}

double ShellGeometry::slope_angle_deg() const {
    return alpha_ * 180.0 / kPi;
}

double slant_compression(const ShellGeometry& geom, double h_mm) {
    if (!std::isfinite(h_mm))
        throw std::invalid_argument("h must be finite");
    const double span = geom.outer_radius() - geom.inner_radius();
    const double dl = geom.slant_length() - std::sqrt(span * span + h_mm * h_mm);
    return dl > 0.0 ? dl : 0.0;
}

double cross_section_area(const ShellGeometry& geom, double x_mm) {
    if (!(x_mm >= 0.0) || !(x_mm <= geom.slant_length() * (1.0 + 1e-12)))
        throw std::invalid_argument("x outside [0, L]");
    return 2.0 * kPi * (geom.inner_radius() + x_mm * std::cos(geom.slope_angle_rad())) *
           geom.thickness();
}

double second_moment(const ShellGeometry& geom, double x_mm) {
    if (!(x_mm >= 0.0) || !(x_mm <= geom.slant_length() * (1.0 + 1e-12)))
        throw std::invalid_argument("x outside [0, L]");
    const double t = geom.thickness();
    return (kPi / 6.0) *
           (geom.inner_radius() + x_mm * std::cos(geom.slope_angle_rad())) * t * t * t;
}

// integral of dx/A(x) over [0, L]
static double axial_compliance(const ShellGeometry& geom) {
    return std::log(geom.outer_radius() / geom.inner_radius()) /
           (2.0 * kPi * geom.thickness() * std::cos(geom.slope_angle_rad()));
}

double axial_force_from_compression(const ShellGeometry& geom,
                                    const MaterialModel& mat, double dl_mm) {
    if (!(dl_mm >= 0.0))
        throw std::invalid_argument("compression must be non-negative");
    return dl_mm * mat.youngs_modulus_MPa / axial_compliance(geom);
}

double axial_energy(const ShellGeometry& geom, const MaterialModel& mat,
                    double force_N) {
    if (!(force_N >= 0.0))
        throw std::invalid_argument("force must be non-negative");
    return force_N * force_N * axial_compliance(geom) /
           (2.0 * mat.youngs_modulus_MPa);
}

BucklingSolution critical_buckling_force(const ShellGeometry& geom,
                                         const MaterialModel& mat) {
    mat.validate();
    const double L = geom.slant_length();
    const double t = geom.thickness();
    const double Rpr = geom.outer_radius() + geom.inner_radius();
    // F_c = [int 1/2 E I(x) w''^2 dx] / [int 1/2 w'^2 dx] for w = C sin(pi x/L);
    // both integrals close since I(x) is affine in x.
    const double Fc = mat.youngs_modulus_MPa * t * t * t * kPi * kPi * kPi * Rpr /
                      (12.0 * L * L);
    const double dlc = Fc * axial_compliance(geom) / mat.youngs_modulus_MPa;
    const double span = geom.outer_radius() - geom.inner_radius();
    const double travel = L - span;
    if (dlc >= travel)
        throw NoBucklingError("critical compression exceeds travel: monostable shell");
    const double reach = L - dlc;
    const double hc = std::sqrt(reach * reach - span * span);
    return BucklingSolution{Fc, dlc, hc};
}

double mode_amplitude(const ShellGeometry& geom, double excess_compression_mm) {
    if (!(excess_compression_mm >= 0.0))
        throw std::invalid_argument("excess compression must be non-negative");
    return (2.0 / kPi) * std::sqrt(geom.slant_length() * excess_compression_mm);
}

double bending_energy(const ShellGeometry& geom, const MaterialModel& mat,
                      double amplitude_mm) {
    if (!(amplitude_mm >= 0.0))
        throw std::invalid_argument("amplitude must be non-negative");
    const double L = geom.slant_length();
    const double t = geom.thickness();
    const double Rpr = geom.outer_radius() + geom.inner_radius();
    const double pi5 = kPi * kPi * kPi * kPi * kPi;
    return mat.youngs_modulus_MPa * t * t * t * amplitude_mm * amplitude_mm * pi5 *
           Rpr / (48.0 * L * L * L);
}

double strain_energy(const ShellGeometry& geom, const MaterialModel& mat,
                     const BucklingSolution& buck, double h_mm) {
    const double dl = slant_compression(geom, h_mm);
    if (dl <= buck.critical_compression_mm) {
        const double F = axial_force_from_compression(geom, mat, dl);
        return axial_energy(geom, mat, F);
    }
    const double pre = axial_energy(geom, mat, buck.critical_force_N);
    const double C = mode_amplitude(geom, dl - buck.critical_compression_mm);
    return pre + bending_energy(geom, mat, C);
}

}  // namespace bvl

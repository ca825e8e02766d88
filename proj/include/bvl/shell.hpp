#pragma once

#include <optional>
#include <stdexcept>
#include <string>

// Mechanics of a single conical-shell slice-beam: compression kinematics,
// axial elasticity, sine-mode buckling, and the piecewise strain energy.
//
// Units: mm / N / MPa / mJ (consistent: MPa*mm^2 = N, N*mm = mJ).
// Angles enter the API in degrees and are stored in radians.

namespace bvl {

struct MaterialModel {
    enum class Source { explicit_value, table, fallback_formula };

    double youngs_modulus_MPa = 0.0;
    std::optional<double> shore_hardness;
    Source source = Source::explicit_value;

    static MaterialModel from_modulus(double E_MPa);

    void validate() const;
};

class ShellGeometry {
  public:
    ShellGeometry(double outer_radius_mm, double inner_radius_mm,
                  double thickness_mm, double slope_angle_deg);

    double outer_radius() const { return R_; }
    double inner_radius() const { return r_; }
    double thickness() const { return t_; }
    double slope_angle_rad() const { return alpha_; }
    double slope_angle_deg() const;

    // Slant length L = (R - r)/cos(alpha).
    double slant_length() const { return L_; }
    // Rest height h0 = (R - r)*tan(alpha).
    double rest_height() const { return h0_; }

  private:
    double R_, r_, t_, alpha_, L_, h0_;
};

struct BucklingSolution {
    double critical_force_N;       // F_c
    double critical_compression_mm; // dl_c
    double critical_height_mm;     // |h| at which buckling starts
};

// Thrown when the buckling compression exceeds the available travel:
// the slant never buckles and the valve is monostable.
class NoBucklingError : public std::domain_error {
  public:
    explicit NoBucklingError(const std::string& what)
        : std::domain_error(what) {}
};

// Slant compression dl(h) = L - sqrt((R-r)^2 + h^2), clamped at 0 for
// grid points marginally past the rest height.
double slant_compression(const ShellGeometry& geom, double h_mm);

// Cross-sectional area of the slice beam, A(x) = 2*pi*(r + x*cos a)*t.
double cross_section_area(const ShellGeometry& geom, double x_mm);

// Second moment of area, I(x) = (pi/6)*(r + x*cos a)*t^3.
double second_moment(const ShellGeometry& geom, double x_mm);

// Axial force producing a given compression of the tapered member.
// The compliance integral closes to ln(R/r)/(2*pi*t*cos a).
double axial_force_from_compression(const ShellGeometry& geom,
                                    const MaterialModel& mat, double dl_mm);

// Stored axial energy for a force F held through the member.
double axial_energy(const ShellGeometry& geom, const MaterialModel& mat,
                    double force_N);

// Critical load of the pinned-pinned sine mode, plus the compression and
// height at which buckling starts. Throws NoBucklingError when the
// critical compression is not reachable within the travel.
BucklingSolution critical_buckling_force(const ShellGeometry& geom,
                                         const MaterialModel& mat);

// Amplitude of the sine mode absorbing a given excess compression:
// C = (2/pi)*sqrt(L*excess).
double mode_amplitude(const ShellGeometry& geom, double excess_compression_mm);

// Bending energy of the sine mode at amplitude C.
double bending_energy(const ShellGeometry& geom, const MaterialModel& mat,
                      double amplitude_mm);

// Piecewise single-shell strain energy U1(h). Below the buckling
// threshold the member is a linear spring; past it the axial force is
// frozen at F_c and the excess compression goes into the bending mode.
double strain_energy(const ShellGeometry& geom, const MaterialModel& mat,
                     const BucklingSolution& buck, double h_mm);

}  // namespace bvl

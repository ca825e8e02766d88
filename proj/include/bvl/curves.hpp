#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bvl/shell.hpp"

// Two-shell valve energy landscape, pressure-displacement curve and
// critical-pressure extraction.

namespace bvl {

struct EnergyCurve {
    std::vector<double> h_mm;  // strictly increasing, spans [-h0, h0]
    std::vector<double> U_mJ;  // doubled two-shell energy
};

struct PressureCurve {
    std::vector<double> h_mm;
    std::vector<double> p_kPa;
    double dVdh_mm2 = 0.0;
};

struct ValveCharacteristic {
    bool bistable = false;
    double state_low_mm = 0.0;   // stable state at negative h
    double state_high_mm = 0.0;  // stable state at positive h
    double critical_pressure_kPa = 0.0;
    double snap_height_mm = 0.0;  // h at which p peaks
};

// Doubled strain energy 2*U1(h) on a uniform grid over [-h0, h0].
// grid_n must be odd and >= 101 so that h = 0 is a grid point.
// Propagates NoBucklingError for monostable geometry.
EnergyCurve total_energy_curve(const ShellGeometry& geom,
                               const MaterialModel& mat, std::size_t grid_n);

// dV/dh of the conical-displacement chamber volume model,
// V(h) = pi*h*(R^2 + R*r + r^2)/3. Constant in h.
double chamber_volume_derivative(const ShellGeometry& geom);

// p(h) = (dU/dh)/(dV/dh) in kPa; central differences on the grid,
// one-sided at the endpoints.
PressureCurve pressure_curve(const EnergyCurve& curve, const ShellGeometry& geom);

// Conservation self-check: rebuilds U(h) = int p dV by trapezoid rule.
EnergyCurve energy_from_pressure_roundtrip(const PressureCurve& pc,
                                           const ShellGeometry& geom);

// Stable states and critical switching pressure for one design.
// Monostable geometry is reported through the flag, not an exception.
ValveCharacteristic characterize(const ShellGeometry& geom,
                                 const MaterialModel& mat, std::size_t grid_n);

// Indices of the stable states on the energy grid. Interior strict local
// minima are preferred (plateau ties resolve toward smaller |h|); when no
// interior minimum exists the rest states at the grid endpoints take
// their place.
std::vector<std::size_t> stable_state_indices(const EnergyCurve& curve);

void write_energy_csv(const EnergyCurve& curve, const std::string& path);
void write_pressure_csv(const PressureCurve& curve, const std::string& path);

}  // namespace bvl

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bvl/curves.hpp"
#include "bvl/materials.hpp"
#include "bvl/shell.hpp"

// Parameter sweeps over hardness / thickness / slope angle and inverse
// design against a target critical pressure.

namespace bvl {

enum class SweepParameter { shore_hardness, thickness, slope_angle };

std::string to_string(SweepParameter p);
SweepParameter sweep_parameter_from_string(const std::string& name);

struct Baseline {
    ShellGeometry geometry;
    MaterialModel material;
    HardnessTable table = HardnessTable::defaults();
    std::size_t grid_n = 2001;

    static Baseline reference_defaults();
};

struct SweepSpec {
    SweepParameter parameter;
    std::vector<double> values;  // strictly increasing, non-empty
    Baseline fixed;
};

struct SweepRow {
    double value;
    ValveCharacteristic characteristic;
};

struct SweepResult {
    SweepParameter parameter;
    std::vector<SweepRow> rows;
};

// One characterize() per value; monostable rows are flagged, never abort
// the sweep. jobs > 1 evaluates rows in parallel; output order is the
// input order either way.
SweepResult run_sweep(const SweepSpec& spec, unsigned jobs = 1);

struct InversionResult {
    double parameter_value;
    double achieved_Pc_kPa;
    std::size_t iterations;
};

class InversionError : public std::runtime_error {
  public:
    explicit InversionError(const std::string& what) : std::runtime_error(what) {}
};

// Bisection on thickness or slope angle (continuous), to
// |P_c - target| < 0.05 kPa or 60 iterations. Endpoint sampling guards
// monotonicity and reachability; violations raise InversionError with
// "target unreachable" / "non-monotone" messages.
InversionResult invert_design(double target_Pc_kPa, SweepParameter parameter,
                              double lower, double upper, const Baseline& fixed);

// Continuous inversion on the Young's modulus (P_c is linear in E).
InversionResult invert_modulus(double target_Pc_kPa, double lower_E_MPa,
                               double upper_E_MPa, const Baseline& fixed);

// Hardness resolves to the nearest printable table entry.
InversionResult invert_hardness(double target_Pc_kPa, const Baseline& fixed);

void write_sweep_csv(const SweepResult& result, const std::string& path);
void write_sweep_json(const SweepResult& result, const Baseline& fixed,
                      const std::string& path);

}  // namespace bvl

#include "bvl/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <stdexcept>

#include <json.hpp>

namespace bvl {

std::string to_string(SweepParameter p) {
    switch (p) {
        case SweepParameter::shore_hardness: return "shore_hardness";
        case SweepParameter::thickness: return "thickness";
        case SweepParameter::slope_angle: return "slope_angle";
    }
    return "?";
}

SweepParameter sweep_parameter_from_string(const std::string& name) {
    if (name == "shore_hardness" || name == "hardness" || name == "shore")
        return SweepParameter::shore_hardness;
    if (name == "thickness" || name == "t") return SweepParameter::thickness;
    if (name == "slope_angle" || name == "alpha") return SweepParameter::slope_angle;
    throw std::invalid_argument("unknown sweep parameter: " + name);
}

Baseline Baseline::reference_defaults() {
    Baseline b{ShellGeometry(8.0, 4.0, 1.0, 45.0),
               MaterialModel::from_modulus(1.65)};
    b.material.shore_hardness = 50.0;
    b.material.source = MaterialModel::Source::table;
    return b;
}

namespace {

ValveCharacteristic evaluate(const Baseline& fixed, SweepParameter param,
                             double value) {
    ShellGeometry geom = fixed.geometry;
    MaterialModel mat = fixed.material;
    switch (param) {
        case SweepParameter::shore_hardness:
            mat = fixed.table.modulus_for_hardness(value);
            break;
        case SweepParameter::thickness:
            geom = ShellGeometry(geom.outer_radius(), geom.inner_radius(), value,
                                 geom.slope_angle_deg());
            break;
        case SweepParameter::slope_angle:
            // R, r held fixed; h0 and L follow the angle
            geom = ShellGeometry(geom.outer_radius(), geom.inner_radius(),
                                 geom.thickness(), value);
            break;
    }
    return characterize(geom, mat, fixed.grid_n);
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, unsigned jobs) {
    if (spec.values.empty())
        throw std::invalid_argument("sweep values must be non-empty");
    for (std::size_t i = 1; i < spec.values.size(); ++i)
        if (!(spec.values[i] > spec.values[i - 1]))
            throw std::invalid_argument("sweep values must be strictly increasing");

    SweepResult result;
    result.parameter = spec.parameter;
    result.rows.resize(spec.values.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < spec.values.size(); ++i)
            result.rows[i] = {spec.values[i],
                              evaluate(spec.fixed, spec.parameter, spec.values[i])};
    } else {
        std::vector<std::future<ValveCharacteristic>> futs;
        futs.reserve(spec.values.size());
        for (double v : spec.values)
            futs.push_back(std::async(std::launch::async, [&, v] {
                return evaluate(spec.fixed, spec.parameter, v);
            }));
        for (std::size_t i = 0; i < futs.size(); ++i)
            result.rows[i] = {spec.values[i], futs[i].get()};
    }
    return result;
}

InversionResult invert_design(double target_Pc_kPa, SweepParameter parameter,
                              double lower, double upper, const Baseline& fixed) {
    if (parameter == SweepParameter::shore_hardness)
        return invert_hardness(target_Pc_kPa, fixed);
    if (!(lower < upper))
        throw std::invalid_argument("require lower < upper");

    auto pc = [&](double v) {
        return evaluate(fixed, parameter, v).critical_pressure_kPa;
    };
    double p_lo = pc(lower);
    double p_hi = pc(upper);
    if (p_lo == p_hi)
        throw InversionError("non-monotone: endpoint pressures coincide");
    const bool increasing = p_hi > p_lo;
    const double pmin = std::min(p_lo, p_hi);
    const double pmax = std::max(p_lo, p_hi);
    if (target_Pc_kPa < pmin || target_Pc_kPa > pmax)
        throw InversionError("target unreachable within bounds");

    double a = lower, b = upper;
    double v = 0.5 * (a + b);
    double p = pc(v);
    const double width_tol = 1e-6 * (upper - lower);
    std::size_t it = 0;
    while (it < 60 &&
           (std::abs(p - target_Pc_kPa) >= 0.05 || (b - a) > width_tol)) {
        if ((p < target_Pc_kPa) == increasing)
            a = v;
        else
            b = v;
        v = 0.5 * (a + b);
        p = pc(v);
        ++it;
    }
    return {v, p, it};
}

InversionResult invert_modulus(double target_Pc_kPa, double lower_E_MPa,
                               double upper_E_MPa, const Baseline& fixed) {
    // P_c is linear in E: one characterize() fixes the slope
    const double p_ref =
        characterize(fixed.geometry, fixed.material, fixed.grid_n)
            .critical_pressure_kPa;
    if (!(p_ref > 0.0))
        throw InversionError("baseline is monostable; modulus inversion undefined");
    const double E = fixed.material.youngs_modulus_MPa * target_Pc_kPa / p_ref;
    if (E < lower_E_MPa || E > upper_E_MPa)
        throw InversionError("target unreachable within bounds");
    return {E, target_Pc_kPa, 0};
}

InversionResult invert_hardness(double target_Pc_kPa, const Baseline& fixed) {
    const auto& entries = fixed.table.entries();
    if (entries.empty())
        throw InversionError("hardness table is empty");
    const double p_ref =
        characterize(fixed.geometry, fixed.material, fixed.grid_n)
            .critical_pressure_kPa;
    if (!(p_ref > 0.0))
        throw InversionError("baseline is monostable; hardness inversion undefined");
    const double E_ref = fixed.material.youngs_modulus_MPa;
    double best_s = entries.front().first;
    double best_p = p_ref * entries.front().second / E_ref;
    for (const auto& [s, E] : entries) {
        const double p = p_ref * E / E_ref;  // P_c scales linearly with E
        if (std::abs(p - target_Pc_kPa) < std::abs(best_p - target_Pc_kPa)) {
            best_s = s;
            best_p = p;
        }
    }
    return {best_s, best_p, 0};
}

void write_sweep_csv(const SweepResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    out << "param,P_c_kPa,bistable,h_state_mm\n";
    char buf[128];
    for (const auto& row : result.rows) {
        std::snprintf(buf, sizeof(buf), "%.9g,%.9g,%s,%.9g", row.value,
                      row.characteristic.critical_pressure_kPa,
                      row.characteristic.bistable ? "true" : "false",
                      row.characteristic.state_high_mm);
        out << buf << "\n";
    }
}

void write_sweep_json(const SweepResult& result, const Baseline& fixed,
                      const std::string& path) {
    nlohmann::json j;
    j["parameter"] = to_string(result.parameter);
    j["provenance"] = {
        {"R_mm", fixed.geometry.outer_radius()},
        {"r_mm", fixed.geometry.inner_radius()},
        {"t_mm", fixed.geometry.thickness()},
        {"alpha_deg", fixed.geometry.slope_angle_deg()},
        {"E_MPa", fixed.material.youngs_modulus_MPa},
        {"grid_n", fixed.grid_n},
    };
    j["rows"] = nlohmann::json::array();
    for (const auto& row : result.rows) {
        j["rows"].push_back({{"value", row.value},
                             {"P_c_kPa", row.characteristic.critical_pressure_kPa},
                             {"bistable", row.characteristic.bistable},
                             {"h_state_mm", row.characteristic.state_high_mm},
                             {"h_state_low_mm", row.characteristic.state_low_mm}});
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace bvl

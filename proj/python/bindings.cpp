#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bvl/bench.hpp"
#include "bvl/curves.hpp"
#include "bvl/explorer.hpp"
#include "bvl/materials.hpp"
#include "bvl/shell.hpp"

namespace py = pybind11;
using namespace bvl;

PYBIND11_MODULE(_core, m) {
    m.doc() = "bistable conical-shell valve toolkit";

    py::register_exception<NoBucklingError>(m, "NoBucklingError");
    py::register_exception<InversionError>(m, "InversionError");
    py::register_exception<BenchError>(m, "BenchError");

    py::class_<ShellGeometry>(m, "ShellGeometry")
        .def(py::init<double, double, double, double>(), py::arg("R_mm"),
             py::arg("r_mm"), py::arg("t_mm"), py::arg("alpha_deg"))
        .def_property_readonly("R", &ShellGeometry::outer_radius)
        .def_property_readonly("r", &ShellGeometry::inner_radius)
        .def_property_readonly("t", &ShellGeometry::thickness)
        .def_property_readonly("alpha_deg", &ShellGeometry::slope_angle_deg)
        .def_property_readonly("L", &ShellGeometry::slant_length)
        .def_property_readonly("h0", &ShellGeometry::rest_height);

    py::class_<MaterialModel>(m, "MaterialModel")
        .def_static("from_modulus", &MaterialModel::from_modulus, py::arg("E_MPa"))
        .def_readonly("E_MPa", &MaterialModel::youngs_modulus_MPa)
        .def_readonly("shore_hardness", &MaterialModel::shore_hardness);

    py::class_<BucklingSolution>(m, "BucklingSolution")
        .def_readonly("F_c_N", &BucklingSolution::critical_force_N)
        .def_readonly("dl_c_mm", &BucklingSolution::critical_compression_mm)
        .def_readonly("h_c_mm", &BucklingSolution::critical_height_mm);

    m.def("slant_compression", &slant_compression);
    m.def("cross_section_area", &cross_section_area);
    m.def("second_moment", &second_moment);
    m.def("axial_force_from_compression", &axial_force_from_compression);
    m.def("axial_energy", &axial_energy);
    m.def("critical_buckling_force", &critical_buckling_force);
    m.def("mode_amplitude", &mode_amplitude);
    m.def("bending_energy", &bending_energy);
    m.def("strain_energy", &strain_energy);

    py::class_<EnergyCurve>(m, "EnergyCurve")
        .def_readonly("h_mm", &EnergyCurve::h_mm)
        .def_readonly("U_mJ", &EnergyCurve::U_mJ);
    py::class_<PressureCurve>(m, "PressureCurve")
        .def_readonly("h_mm", &PressureCurve::h_mm)
        .def_readonly("p_kPa", &PressureCurve::p_kPa)
        .def_readonly("dVdh_mm2", &PressureCurve::dVdh_mm2);
    py::class_<ValveCharacteristic>(m, "ValveCharacteristic")
        .def_readonly("bistable", &ValveCharacteristic::bistable)
        .def_readonly("state_low_mm", &ValveCharacteristic::state_low_mm)
        .def_readonly("state_high_mm", &ValveCharacteristic::state_high_mm)
        .def_readonly("P_c_kPa", &ValveCharacteristic::critical_pressure_kPa)
        .def_readonly("snap_height_mm", &ValveCharacteristic::snap_height_mm);

    m.def("total_energy_curve", &total_energy_curve, py::arg("geom"),
          py::arg("mat"), py::arg("grid_n") = 2001);
    m.def("chamber_volume_derivative", &chamber_volume_derivative);
    m.def("pressure_curve", &pressure_curve);
    m.def("energy_from_pressure_roundtrip", &energy_from_pressure_roundtrip);
    m.def("characterize", &characterize, py::arg("geom"), py::arg("mat"),
          py::arg("grid_n") = 2001);

    py::class_<HardnessTable>(m, "HardnessTable")
        .def_static("defaults", &HardnessTable::defaults)
        .def_static("load", &HardnessTable::load)
        .def_static("empty", &HardnessTable::empty)
        .def("entries", &HardnessTable::entries)
        .def("modulus_for_hardness", &HardnessTable::modulus_for_hardness);
    m.def("calibrated_gent_modulus", &calibrated_gent_modulus);

    py::enum_<SweepParameter>(m, "SweepParameter")
        .value("shore_hardness", SweepParameter::shore_hardness)
        .value("thickness", SweepParameter::thickness)
        .value("slope_angle", SweepParameter::slope_angle);

    py::class_<Baseline>(m, "Baseline")
        .def_static("reference_defaults", &Baseline::reference_defaults)
        .def_readwrite("geometry", &Baseline::geometry)
        .def_readwrite("material", &Baseline::material)
        .def_readwrite("table", &Baseline::table)
        .def_readwrite("grid_n", &Baseline::grid_n);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("value", &SweepRow::value)
        .def_readonly("characteristic", &SweepRow::characteristic);
    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("parameter", &SweepResult::parameter)
        .def_readonly("rows", &SweepResult::rows);

    m.def(
        "run_sweep",
        [](SweepParameter p, const std::vector<double>& values,
           const Baseline& fixed, unsigned jobs) {
            return run_sweep(SweepSpec{p, values, fixed}, jobs);
        },
        py::arg("parameter"), py::arg("values"), py::arg("fixed"),
        py::arg("jobs") = 1);

    py::class_<InversionResult>(m, "InversionResult")
        .def_readonly("parameter_value", &InversionResult::parameter_value)
        .def_readonly("achieved_Pc_kPa", &InversionResult::achieved_Pc_kPa)
        .def_readonly("iterations", &InversionResult::iterations);
    m.def("invert_design", &invert_design, py::arg("target_Pc_kPa"),
          py::arg("parameter"), py::arg("lower"), py::arg("upper"),
          py::arg("fixed"));
    m.def("invert_modulus", &invert_modulus);
    m.def("invert_hardness", &invert_hardness);

    py::class_<ValveSimModel>(m, "ValveSimModel")
        .def(py::init<>())
        .def_readwrite("critical_pressure_kPa", &ValveSimModel::critical_pressure_kPa)
        .def_readwrite("base_response_time_s", &ValveSimModel::base_response_time_s)
        .def_readwrite("degradation", &ValveSimModel::degradation)
        .def_readwrite("leak_threshold", &ValveSimModel::leak_threshold)
        .def_readwrite("cycle_count", &ValveSimModel::cycle_count)
        .def("response_time", &ValveSimModel::response_time)
        .def_static("chemical_preset", &ValveSimModel::chemical_preset)
        .def_static("physical_preset", &ValveSimModel::physical_preset);

    py::class_<BenchConfig>(m, "BenchConfig")
        .def(py::init<>())
        .def_readwrite("dt_s", &BenchConfig::dt_s)
        .def_readwrite("sample_rate_hz", &BenchConfig::sample_rate_hz)
        .def_readwrite("tau_fill_s", &BenchConfig::tau_fill_s)
        .def_readwrite("tau_block_s", &BenchConfig::tau_block_s)
        .def_readwrite("pump_flow_mL_min", &BenchConfig::pump_flow_mL_min)
        .def_readwrite("settle_time_s", &BenchConfig::settle_time_s)
        .def_readwrite("max_trials", &BenchConfig::max_trials)
        .def_readwrite("seed", &BenchConfig::seed)
        .def_readwrite("log_enabled", &BenchConfig::log_enabled);

    py::class_<ProtocolResult>(m, "ProtocolResult")
        .def_readonly("measured_Pc_kPa", &ProtocolResult::measured_Pc_kPa)
        .def_readonly("response_times_s", &ProtocolResult::response_times_s)
        .def_readonly("trials", &ProtocolResult::trials)
        .def_readonly("failure_cycle", &ProtocolResult::failure_cycle)
        .def_readonly("total_sim_time_s", &ProtocolResult::total_sim_time_s);

    m.def(
        "run_algorithm_1",
        [](const ValveSimModel& v, double dp, double start, const BenchConfig& cfg) {
            return run_algorithm_1(v, dp, start, cfg);
        },
        py::arg("valve"), py::arg("delta_p_kPa"), py::arg("start_kPa"),
        py::arg("config") = BenchConfig{});
    m.def(
        "run_algorithm_2",
        [](const ValveSimModel& v, unsigned cycles, const BenchConfig& cfg) {
            return run_algorithm_2(v, cycles, cfg);
        },
        py::arg("valve"), py::arg("cycles"), py::arg("config") = BenchConfig{});

    m.def(
        "fit_exponential",
        [](const std::vector<std::pair<double, double>>& series) {
            const auto f = fit_exponential(series);
            return py::make_tuple(f.a, f.b, f.rms_residual);
        },
        "least-squares fit of T = a*exp(b*n); returns (a, b, rms_log_residual)");
}

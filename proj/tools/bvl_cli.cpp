#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bvl/bench.hpp"
#include "bvl/curves.hpp"
#include "bvl/explorer.hpp"
#include "bvl/materials.hpp"
#include "bvl/shell.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitModel = 3;

struct CommonOpts {
    double R = 8.0, r = 4.0, t = 1.0, alpha = 45.0;
    double shore = 50.0;
    double E = 0.0;  // 0 -> derive from shore hardness
    std::size_t grid = 2001;
    std::string material_table;
    std::string out = ".";
    std::string format = "both";
    std::uint64_t seed = 0;
    unsigned jobs = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--R", o.R, "outer radius, mm");
    cmd->add_option("--r", o.r, "inner radius, mm");
    cmd->add_option("--t", o.t, "shell thickness, mm");
    cmd->add_option("--alpha", o.alpha, "slope angle, degrees");
    cmd->add_option("--shore", o.shore, "shore-A hardness");
    cmd->add_option("--E", o.E, "Young's modulus, MPa (overrides --shore)");
    cmd->add_option("--grid", o.grid, "energy grid points (odd, >= 101)");
    cmd->add_option("--material-table", o.material_table,
                    "hardness table file (shoreA=modulus_MPa lines)");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--format", o.format, "csv, json or both")
        ->check(CLI::IsMember({"csv", "json", "both"}));
    cmd->add_option("--seed", o.seed, "RNG seed");
    cmd->add_option("--jobs", o.jobs, "parallel sweep rows");
}

bvl::HardnessTable resolve_table(const CommonOpts& o) {
    std::string path = o.material_table;
    if (path.empty()) {
        if (const char* env = std::getenv("BVL_MATERIAL_TABLE")) path = env;
    }
    return path.empty() ? bvl::HardnessTable::defaults()
                        : bvl::HardnessTable::load(path);
}

bvl::Baseline resolve_baseline(const CommonOpts& o) {
    bvl::Baseline b{bvl::ShellGeometry(o.R, o.r, o.t, o.alpha),
                    bvl::MaterialModel::from_modulus(1.0)};
    b.table = resolve_table(o);
    b.material = o.E > 0.0 ? bvl::MaterialModel::from_modulus(o.E)
                           : b.table.modulus_for_hardness(o.shore);
    b.grid_n = o.grid;
    return b;
}

fs::path out_file(const CommonOpts& o, const std::string& name) {
    const fs::path dir(o.out);
    if (!fs::is_directory(dir))
        throw std::ios_base::failure("output directory does not exist: " + o.out);
    return dir / name;
}

void write_json(const json& j, const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::ios_base::failure("cannot open for writing: " + path.string());
    out << j.dump(2) << "\n";
}

// start:stop:step range (endpoints inclusive within 1e-9) or a
// comma-separated list
std::vector<double> parse_values(const std::string& text) {
    std::vector<double> values;
    const auto c1 = text.find(':');
    if (c1 != std::string::npos) {
        const auto c2 = text.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw CLI::ValidationError("--values", "want start:stop:step");
        const double start = std::stod(text.substr(0, c1));
        const double stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        const double step = std::stod(text.substr(c2 + 1));
        if (!(step > 0.0) || stop < start)
            throw CLI::ValidationError("--values", "bad range");
        for (double v = start; v <= stop + 1e-9; v += step)
            values.push_back(std::min(v, stop));
        return values;
    }
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        values.push_back(std::stod(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return values;
}

json characteristic_json(const bvl::ValveCharacteristic& vc) {
    return {{"bistable", vc.bistable},
            {"P_c_kPa", vc.critical_pressure_kPa},
            {"stable_states_mm", {vc.state_low_mm, vc.state_high_mm}},
            {"snap_height_mm", vc.snap_height_mm}};
}

int cmd_curve(const CommonOpts& o) {
    const bvl::Baseline b = resolve_baseline(o);
    const auto curve = bvl::total_energy_curve(b.geometry, b.material, b.grid_n);
    const auto pc = bvl::pressure_curve(curve, b.geometry);
    const auto vc = bvl::characterize(b.geometry, b.material, b.grid_n);
    if (o.format != "json") {
        bvl::write_energy_csv(curve, out_file(o, "energy.csv").string());
        bvl::write_pressure_csv(pc, out_file(o, "pressure.csv").string());
    }
    json j = characteristic_json(vc);
    j["geometry"] = {{"R_mm", o.R}, {"r_mm", o.r}, {"t_mm", o.t},
                     {"alpha_deg", o.alpha}};
    j["E_MPa"] = b.material.youngs_modulus_MPa;
    j["grid_n"] = b.grid_n;
    write_json(j, out_file(o, "summary.json"));
    return 0;
}

int cmd_sweep(const CommonOpts& o, const std::string& param,
              const std::string& values) {
    bvl::SweepSpec spec{bvl::sweep_parameter_from_string(param),
                        parse_values(values), resolve_baseline(o)};
    const auto result = bvl::run_sweep(spec, o.jobs);
    if (o.format != "json")
        bvl::write_sweep_csv(result, out_file(o, "sweep.csv").string());
    if (o.format != "csv")
        bvl::write_sweep_json(result, spec.fixed, out_file(o, "sweep.json").string());
    return 0;
}

int cmd_invert(const CommonOpts& o, const std::string& param, double target,
               double lo, double hi) {
    const bvl::Baseline b = resolve_baseline(o);
    const auto res = bvl::invert_design(
        target, bvl::sweep_parameter_from_string(param), lo, hi, b);
    json j = {{"parameter", param},
              {"target_Pc_kPa", target},
              {"value", res.parameter_value},
              {"achieved_Pc_kPa", res.achieved_Pc_kPa},
              {"iterations", res.iterations}};
    write_json(j, out_file(o, "invert.json"));
    std::cout << param << " = " << res.parameter_value
              << " (P_c = " << res.achieved_Pc_kPa << " kPa)\n";
    return 0;
}

int cmd_simulate(const CommonOpts& o, const std::string& config, double Pc,
                 double T0, double dp, double start) {
    bvl::Scenario sc;
    if (!config.empty()) sc = bvl::load_scenario(config);
    if (Pc > 0.0) sc.valve.critical_pressure_kPa = Pc;
    if (T0 > 0.0) sc.valve.base_response_time_s = T0;
    if (dp > 0.0) sc.delta_p_kPa = dp;
    if (start > 0.0) sc.start_kPa = start;
    sc.bench.seed = o.seed;
    const auto result =
        bvl::run_algorithm_1(sc.valve, sc.delta_p_kPa, sc.start_kPa, sc.bench);
    bvl::write_log_csv(result.log, out_file(o, "log.csv").string());
    json j = {{"measured_Pc_kPa", result.measured_Pc_kPa},
              {"trials", result.trials},
              {"response_times_s", result.response_times_s},
              {"sim_time_s", result.total_sim_time_s}};
    write_json(j, out_file(o, "simulate.json"));
    std::cout << "measured P_critical = " << result.measured_Pc_kPa << " kPa in "
              << result.trials << " trials\n";
    return 0;
}

int cmd_fatigue(const CommonOpts& o, const std::string& preset, unsigned cycles,
                double a, double b, int leak) {
    bvl::ValveSimModel valve;
    if (preset == "chemical")
        valve = bvl::ValveSimModel::chemical_preset();
    else if (preset == "physical")
        valve = bvl::ValveSimModel::physical_preset();
    else if (!preset.empty())
        throw CLI::ValidationError("--preset", "want chemical or physical");
    if (a > 0.0 && b != 0.0) valve.degradation = {{a, b}};
    if (leak >= 0) valve.leak_threshold = static_cast<unsigned>(leak);
    bvl::BenchConfig cfg;
    cfg.seed = o.seed;
    cfg.log_enabled = false;
    const auto result = bvl::run_algorithm_2(valve, cycles, cfg);
    {
        std::ofstream out(out_file(o, "fatigue.csv"), std::ios::binary);
        if (!out) throw std::ios_base::failure("cannot write fatigue.csv");
        out << "n,T_s\n";
        char buf[64];
        for (std::size_t i = 0; i < result.response_times_s.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%zu,%.9g", i + 1,
                          result.response_times_s[i]);
            out << buf << "\n";
        }
    }
    json j = {{"cycles_completed", result.trials},
              {"sim_time_s", result.total_sim_time_s}};
    if (result.failure_cycle)
        j["failure_cycle"] = *result.failure_cycle;
    if (result.response_times_s.size() >= 10) {
        std::vector<std::pair<double, double>> series;
        for (std::size_t i = 0; i < result.response_times_s.size(); ++i)
            series.emplace_back(double(i + 1), result.response_times_s[i]);
        const auto fit = bvl::fit_exponential(series);
        j["fit"] = {{"a_s", fit.a}, {"b_per_cycle", fit.b},
                    {"rms_log_residual", fit.rms_residual}};
    }
    write_json(j, out_file(o, "fatigue.json"));
    if (result.failure_cycle)
        std::cout << "failed after " << *result.failure_cycle
                  << " complete cycles\n";
    else
        std::cout << result.trials << " cycles completed\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bistable conical-shell valve toolkit"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    CommonOpts o;

    auto* curve = app.add_subcommand("curve", "energy and pressure curves");
    add_common(curve, o);

    std::string param = "thickness", values = "0.7:1.3:0.1";
    auto* sweep = app.add_subcommand("sweep", "parameter sweep");
    add_common(sweep, o);
    sweep->add_option("--param", param, "shore_hardness | thickness | slope_angle");
    sweep->add_option("--values", values, "start:stop:step or comma list");

    double target = 0.0, lo = 0.7, hi = 1.3;
    auto* invert = app.add_subcommand("invert", "inverse design");
    add_common(invert, o);
    invert->add_option("--param", param, "parameter to invert");
    invert->add_option("--target", target, "target critical pressure, kPa")
        ->required();
    invert->add_option("--lo", lo, "lower bound");
    invert->add_option("--hi", hi, "upper bound");

    std::string config;
    double sim_Pc = 0.0, sim_T0 = 0.0, sim_dp = 0.0, sim_start = 0.0;
    auto* simulate = app.add_subcommand("simulate", "critical-pressure search on the virtual rig");
    add_common(simulate, o);
    simulate->add_option("--config", config, "scenario file (key=value)");
    simulate->add_option("--Pc", sim_Pc, "valve critical pressure, kPa");
    simulate->add_option("--T0", sim_T0, "valve response time, s");
    simulate->add_option("--dp", sim_dp, "search pressure step, kPa");
    simulate->add_option("--start", sim_start, "search start pressure, kPa");

    std::string preset;
    unsigned cycles = 500;
    double fat_a = 0.0, fat_b = 0.0;
    int leak = -1;
    auto* fatigue = app.add_subcommand("fatigue", "fatigue cycling protocol");
    add_common(fatigue, o);
    fatigue->add_option("--preset", preset, "chemical | physical");
    fatigue->add_option("--cycles", cycles, "number of cycles");
    fatigue->add_option("--a", fat_a, "degradation amplitude, s");
    fatigue->add_option("--b", fat_b, "degradation rate, 1/cycle");
    fatigue->add_option("--leak", leak, "leak threshold, cycles");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (curve->parsed()) return cmd_curve(o);
        if (sweep->parsed()) return cmd_sweep(o, param, values);
        if (invert->parsed()) return cmd_invert(o, param, target, lo, hi);
        if (simulate->parsed())
            return cmd_simulate(o, config, sim_Pc, sim_T0, sim_dp, sim_start);
        if (fatigue->parsed())
            return cmd_fatigue(o, preset, cycles, fat_a, fat_b, leak);
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitModel;
    }
    return kExitUsage;
}

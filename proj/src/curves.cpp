#include "bvl/curves.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace bvl {

EnergyCurve total_energy_curve(const ShellGeometry& geom,
                               const MaterialModel& mat, std::size_t grid_n) {
    if (grid_n < 101 || grid_n % 2 == 0)
        throw std::invalid_argument("grid_n must be odd and >= 101");
    const BucklingSolution buck = critical_buckling_force(geom, mat);
    const double h0 = geom.rest_height();
    const std::size_t mid = grid_n / 2;
    const double dh = h0 / static_cast<double>(mid);

    EnergyCurve curve;
    curve.h_mm.resize(grid_n);
    curve.U_mJ.resize(grid_n);
    // build the positive half and mirror so U is even bit-exactly
    for (std::size_t k = 0; k <= mid; ++k) {
        const double h = (k == mid) ? h0 : static_cast<double>(k) * dh;
        const double U = 2.0 * strain_energy(geom, mat, buck, h);
        curve.h_mm[mid + k] = h;
        curve.U_mJ[mid + k] = U;
        curve.h_mm[mid - k] = -h;
        curve.U_mJ[mid - k] = U;
    }
    curve.h_mm[mid] = 0.0;
    return curve;
}

double chamber_volume_derivative(const ShellGeometry& geom) {
    const double R = geom.outer_radius();
    const double r = geom.inner_radius();
    return std::numbers::pi * (R * R + R * r + r * r) / 3.0;
}

PressureCurve pressure_curve(const EnergyCurve& curve, const ShellGeometry& geom) {
    const std::size_t n = curve.h_mm.size();
    if (n < 3)
        throw std::invalid_argument("curve too short");
    PressureCurve pc;
    pc.h_mm = curve.h_mm;
    pc.p_kPa.resize(n);
    pc.dVdh_mm2 = chamber_volume_derivative(geom);
    const double scale = 1000.0 / pc.dVdh_mm2;  // MPa -> kPa
    const double dh = curve.h_mm[1] - curve.h_mm[0];
    pc.p_kPa[0] = (curve.U_mJ[1] - curve.U_mJ[0]) / dh * scale;
    pc.p_kPa[n - 1] = (curve.U_mJ[n - 1] - curve.U_mJ[n - 2]) / dh * scale;
    for (std::size_t i = 1; i + 1 < n; ++i)
        pc.p_kPa[i] = (curve.U_mJ[i + 1] - curve.U_mJ[i - 1]) / (2.0 * dh) * scale;
    return pc;
}

EnergyCurve energy_from_pressure_roundtrip(const PressureCurve& pc,
                                           const ShellGeometry& geom) {
    const std::size_t n = pc.h_mm.size();
    EnergyCurve out;
    out.h_mm = pc.h_mm;
    out.U_mJ.resize(n);
    const double dVdh = chamber_volume_derivative(geom);
    double acc = 0.0;
    out.U_mJ[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double dh = pc.h_mm[i] - pc.h_mm[i - 1];
        // p in kPa -> MPa for mJ bookkeeping
        acc += 0.5 * (pc.p_kPa[i] + pc.p_kPa[i - 1]) * 1e-3 * dVdh * dh;
        out.U_mJ[i] = acc;
    }
    return out;
}

std::vector<std::size_t> stable_state_indices(const EnergyCurve& curve) {
    const std::vector<double>& U = curve.U_mJ;
    const std::size_t n = U.size();
    std::vector<std::size_t> minima;
    std::size_t i = 1;
    while (i + 1 < n) {
        std::size_t j = i;
        while (j + 1 < n - 1 && U[j + 1] == U[i]) ++j;  // plateau run [i, j]
        if (U[i] < U[i - 1] && U[j] < U[j + 1]) {
            std::size_t best = i;
            for (std::size_t k = i; k <= j; ++k)
                if (std::abs(curve.h_mm[k]) < std::abs(curve.h_mm[best])) best = k;
            minima.push_back(best);
        }
        i = j + 1;
    }
    // rest states at the travel ends stand in when the interior is monotone
    if (minima.size() < 2) {
        minima.push_back(0);
        minima.push_back(n - 1);
    }
    std::sort(minima.begin(), minima.end(), [&](std::size_t a, std::size_t b) {
        return U[a] != U[b] ? U[a] < U[b] : std::abs(curve.h_mm[a]) < std::abs(curve.h_mm[b]);
    });
    minima.resize(2);
    std::sort(minima.begin(), minima.end());
    return minima;
}

ValveCharacteristic characterize(const ShellGeometry& geom,
                                 const MaterialModel& mat, std::size_t grid_n) {
    ValveCharacteristic vc;
    EnergyCurve curve;
    try {
        curve = total_energy_curve(geom, mat, grid_n);
    } catch (const NoBucklingError&) {
        vc.bistable = false;
        vc.state_low_mm = -geom.rest_height();
        vc.state_high_mm = geom.rest_height();
        return vc;
    }
    const PressureCurve pc = pressure_curve(curve, geom);
    const auto states = stable_state_indices(curve);
    vc.state_low_mm = curve.h_mm[states[0]];
    vc.state_high_mm = curve.h_mm[states[1]];
    // switch in the +h direction: peak pressure strictly between the states
    double pmax = 0.0;
    std::size_t arg = states[0];
    for (std::size_t k = states[0] + 1; k < states[1]; ++k) {
        if (pc.p_kPa[k] > pmax) {
            pmax = pc.p_kPa[k];
            arg = k;
        }
    }
    vc.critical_pressure_kPa = pmax;
    vc.snap_height_mm = curve.h_mm[arg];
    vc.bistable = pmax > 0.0;
    return vc;
}

namespace {
void write_csv(const std::vector<double>& x, const std::vector<double>& y,
               const char* header, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    out << header << "\n";
    char buf[64];
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.9g,%.9g", x[i], y[i]);
        out << buf << "\n";
    }
}
}  // namespace

void write_energy_csv(const EnergyCurve& curve, const std::string& path) {
    write_csv(curve.h_mm, curve.U_mJ, "h_mm,U_mJ", path);
}

void write_pressure_csv(const PressureCurve& curve, const std::string& path) {
    write_csv(curve.h_mm, curve.p_kPa, "h_mm,p_kPa", path);
}

}  // namespace bvl

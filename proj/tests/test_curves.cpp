#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>

#include "bvl/curves.hpp"
#include "quadrature.hpp"

using namespace bvl;

namespace {
constexpr double kPi = std::numbers::pi;
ShellGeometry baseline_geom() { return ShellGeometry(8.0, 4.0, 1.0, 45.0); }
MaterialModel baseline_mat() { return MaterialModel::from_modulus(1.65); }
}  // namespace

TEST_CASE("energy curve grid and invariants") {
    const auto g = baseline_geom();
    const auto m = baseline_mat();
    CHECK_THROWS_AS(total_energy_curve(g, m, 100), std::invalid_argument);
    CHECK_THROWS_AS(total_energy_curve(g, m, 99), std::invalid_argument);

    const auto curve = total_energy_curve(g, m, 2001);
    REQUIRE(curve.h_mm.size() == 2001);
    CHECK(curve.h_mm.front() == -g.rest_height());
    CHECK(curve.h_mm.back() == g.rest_height());
    CHECK(curve.h_mm[1000] == 0.0);
    CHECK(std::abs(curve.U_mJ.front()) <= 1e-12);
    CHECK(std::abs(curve.U_mJ.back()) <= 1e-12);
    for (std::size_t i = 1; i < curve.h_mm.size(); ++i)
        CHECK(curve.h_mm[i] > curve.h_mm[i - 1]);
    for (std::size_t i = 0; i < curve.h_mm.size(); ++i) {
        CHECK(curve.U_mJ[i] >= 0.0);
        CHECK(curve.U_mJ[i] == curve.U_mJ[curve.h_mm.size() - 1 - i]);  // even
    }

    // doubling rule at h = 0
    const auto buck = critical_buckling_force(g, m);
    CHECK(curve.U_mJ[1000] ==
          doctest::Approx(2.0 * strain_energy(g, m, buck, 0.0)).epsilon(1e-12));
}

TEST_CASE("degenerate thin shell has vanishing energy") {
    const auto curve = total_energy_curve(ShellGeometry(8.0, 4.0, 1e-4, 45.0),
                                          baseline_mat(), 101);
    for (double U : curve.U_mJ) CHECK(U < 1e-6);
}

TEST_CASE("chamber volume derivative") {
    const auto g = baseline_geom();
    const double dVdh = chamber_volume_derivative(g);
    CHECK(dVdh == doctest::Approx(112.0 * kPi / 3.0).epsilon(1e-12));

    // numeric route: piston core plus linear cone displacement field
    const double R = 8.0, r = 4.0, h = 1.0;
    const double V = kPi * r * r * h +
                     testutil::integrate(
                         [&](double rho) {
                             return 2.0 * kPi * rho * h * (R - rho) / (R - r);
                         },
                         r, R);
    CHECK(dVdh == doctest::Approx(V / h).epsilon(1e-9));

    // near-flat piston limit
    const ShellGeometry flat(8.0, 7.9999, 1.0, 45.0);
    CHECK(chamber_volume_derivative(flat) ==
          doctest::Approx(kPi * 64.0).epsilon(1e-4));
}

TEST_CASE("pressure curve oddness and shape") {
    const auto g = baseline_geom();
    const auto curve = total_energy_curve(g, baseline_mat(), 2001);
    const auto pc = pressure_curve(curve, g);

    CHECK(pc.p_kPa[1000] == 0.0);
    double pmax = 0.0;
    for (double p : pc.p_kPa) pmax = std::max(pmax, std::abs(p));
    const std::size_t n = pc.p_kPa.size();
    for (std::size_t i = 0; i < n; ++i)
        CHECK(std::abs(pc.p_kPa[i] + pc.p_kPa[n - 1 - i]) <= 1e-6 * pmax);

    // single positive hump between the left stable state and h = 0
    std::size_t arg = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (pc.p_kPa[i] > pc.p_kPa[arg]) arg = i;
    CHECK(pc.h_mm[arg] < 0.0);
    CHECK(pc.p_kPa[arg] > 0.0);
}

TEST_CASE("energy-pressure round trip") {
    const auto g = baseline_geom();
    const auto curve = total_energy_curve(g, baseline_mat(), 2001);
    const auto pc = pressure_curve(curve, g);
    const auto back = energy_from_pressure_roundtrip(pc, g);

    double Umax = 0.0;
    for (double U : curve.U_mJ) Umax = std::max(Umax, U);
    for (std::size_t i = 0; i < curve.U_mJ.size(); ++i)
        CHECK(std::abs(back.U_mJ[i] - curve.U_mJ[i]) <= 1e-4 * Umax);

    // zero pressure reconstructs zero energy; doubling p doubles U
    PressureCurve zero = pc;
    for (double& p : zero.p_kPa) p = 0.0;
    for (double U : energy_from_pressure_roundtrip(zero, g).U_mJ) CHECK(U == 0.0);

    PressureCurve twice = pc;
    for (double& p : twice.p_kPa) p *= 2.0;
    const auto doubled = energy_from_pressure_roundtrip(twice, g);
    for (std::size_t i = 0; i < back.U_mJ.size(); ++i)
        CHECK(doubled.U_mJ[i] == doctest::Approx(2.0 * back.U_mJ[i]).epsilon(1e-12));
}

TEST_CASE("characterize the baseline design") {
    const auto vc = characterize(baseline_geom(), baseline_mat(), 2001);
    CHECK(vc.bistable);
    CHECK(vc.critical_pressure_kPa > 0.0);
    CHECK(vc.state_low_mm == doctest::Approx(-vc.state_high_mm).epsilon(1e-12));
    CHECK(vc.state_high_mm > 0.0);
    CHECK(vc.snap_height_mm < 0.0);  // switching in the +h direction
}

TEST_CASE("modulus scaling leaves the landscape shape unchanged") {
    const auto base = characterize(baseline_geom(), baseline_mat(), 2001);
    for (double k : {0.5, 2.0, 4.0}) {
        const auto scaled = characterize(
            baseline_geom(), MaterialModel::from_modulus(k * 1.65), 2001);
        CHECK(scaled.critical_pressure_kPa / base.critical_pressure_kPa ==
              doctest::Approx(k).epsilon(1e-12));
        CHECK(scaled.state_low_mm == base.state_low_mm);
        CHECK(scaled.state_high_mm == base.state_high_mm);
        CHECK(scaled.snap_height_mm == base.snap_height_mm);
    }
}

TEST_CASE("extreme thin shell characterizes without error") {
    const auto vc =
        characterize(ShellGeometry(8.0, 4.0, 0.01, 45.0), baseline_mat(), 2001);
    CHECK((!vc.bistable || vc.critical_pressure_kPa < 1.0));
}

TEST_CASE("grid refinement changes P_c by less than 0.5%") {
    const auto coarse = characterize(baseline_geom(), baseline_mat(), 2001);
    const auto fine = characterize(baseline_geom(), baseline_mat(), 20001);
    CHECK(std::abs(fine.critical_pressure_kPa - coarse.critical_pressure_kPa) <
          0.005 * coarse.critical_pressure_kPa);
}

TEST_CASE("plateau minima resolve toward smaller |h|") {
    EnergyCurve curve;
    curve.h_mm = {-3, -2, -1, 0, 1, 2, 3};
    curve.U_mJ = {5, 1, 1, 2, 3, 0.5, 4};
    const auto states = stable_state_indices(curve);
    REQUIRE(states.size() == 2);
    CHECK(states[0] == 2);  // plateau {1,2} resolves to h=-1
    CHECK(states[1] == 5);
}

TEST_CASE("monotone interior falls back to the rest states") {
    EnergyCurve curve;
    curve.h_mm = {-2, -1, 0, 1, 2};
    curve.U_mJ = {0, 2, 3, 2, 0};
    const auto states = stable_state_indices(curve);
    REQUIRE(states.size() == 2);
    CHECK(states[0] == 0);
    CHECK(states[1] == 4);
}

TEST_CASE("csv emission format") {
    const auto g = baseline_geom();
    const auto curve = total_energy_curve(g, baseline_mat(), 101);
    write_energy_csv(curve, "curve_test.csv");
    std::ifstream in("curve_test.csv", std::ios::binary);
    std::string header;
    std::getline(in, header);
    CHECK(header == "h_mm,U_mJ");
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 101);
    in.close();
    std::remove("curve_test.csv");
}

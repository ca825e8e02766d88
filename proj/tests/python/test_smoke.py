"""Smoke test of the python bindings: exercises one call from each module."""

import math
import sys

import bvl


def main() -> int:
    geom = bvl.ShellGeometry(8.0, 4.0, 1.0, 45.0)
    assert math.isclose(geom.L, math.sqrt(32.0))
    assert math.isclose(geom.h0, 4.0)

    mat = bvl.MaterialModel.from_modulus(1.65)
    buck = bvl.critical_buckling_force(geom, mat)
    assert buck.F_c_N > 0

    table = bvl.HardnessTable.defaults()
    assert table.modulus_for_hardness(50.0).E_MPa == 1.65

    vc = bvl.characterize(geom, mat, 2001)
    assert vc.bistable
    assert 5.0 <= vc.P_c_kPa <= 70.0
    assert math.isclose(vc.state_low_mm, -vc.state_high_mm)

    baseline = bvl.Baseline.reference_defaults()
    sweep = bvl.run_sweep(bvl.SweepParameter.thickness, [0.9, 1.0, 1.1], baseline)
    pcs = [row.characteristic.P_c_kPa for row in sweep.rows]
    assert pcs == sorted(pcs)

    inv = bvl.invert_design(pcs[1], bvl.SweepParameter.thickness, 0.7, 1.3, baseline)
    assert abs(inv.parameter_value - 1.0) < 1e-3

    valve = bvl.ValveSimModel()
    valve.critical_pressure_kPa = 8.0
    cfg = bvl.BenchConfig()
    cfg.log_enabled = False
    res = bvl.run_algorithm_1(valve, 1.0, 7.0, cfg)
    assert 8.0 <= res.measured_Pc_kPa < 9.0

    fatigue = bvl.run_algorithm_2(bvl.ValveSimModel.chemical_preset(), 12, cfg)
    a, b, _ = bvl.fit_exponential(
        [(n + 1, T) for n, T in enumerate(fatigue.response_times_s)]
    )
    assert math.isclose(a, 0.341, rel_tol=1e-6)
    assert math.isclose(b, 0.00388, rel_tol=1e-6)

    print("python smoke ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())

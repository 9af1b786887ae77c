"""Acceptance suite: nine desk-scale criteria, one pass/fail line each.

Each criterion maps to one test below, at the stated tolerances.  Run with
``pytest -s tests/test_acceptance.py`` to see the per-criterion lines.
"""

import math

from splicelab.harness import CheckSpec, run_check


def _report(label, ok):
    print(f"{label}: {'PASS' if ok else 'FAIL'}")
    assert ok, label


def test_ac1_determinant_bounds():
    results = run_check(CheckSpec("det_bounds",
                                  params={"n_samples": 20001}))
    ok = all(r.passed and r.measured <= 1e-12 for r in results)
    _report("AC1 determinant bounds (1 <= D <= 2 exact to 1e-12)", ok)


def test_ac2_gluing_roundtrip():
    results = run_check(CheckSpec("roundtrip", seeds=tuple(range(20))))
    ok = (len(results) == 20
          and all(r.passed and r.measured <= 1e-10 for r in results))
    _report("AC2 gluing round trip (20 seeds, sup error <= 1e-10)", ok)


def test_ac3_pipeline_identity():
    results = run_check(CheckSpec("pipeline_agreement",
                                  seeds=tuple(range(10))))
    slope = next(r for r in results if r.point.get("fit") == "slope")
    ok = all(r.passed for r in results) and abs(slope.measured - 4.0) <= 0.5
    _report(f"AC3 pipeline identity (refinement slope "
            f"{slope.measured:.2f} in 4 +/- 0.5)", ok)


def test_ac4_cross_term_decay():
    results = run_check(CheckSpec("cross_term_decay",
                                  seeds=tuple(range(10))))
    bound_rows = [r for r in results if "seed" in r.point]
    rate = next(r for r in results if r.point.get("fit") == "d_sweep")
    ok = (all(r.passed for r in bound_rows)
          and abs(rate.measured - rate.bound) <= 0.05 * rate.bound)
    _report(f"AC4 cross-term decay (bound at k=1,2; d-sweep rate "
            f"{rate.measured:.3f} vs {rate.bound} within 5%)", ok)


def test_ac5_operator_norm_convergence():
    results = run_check(CheckSpec("dW_opnorm_limit"))
    ok = all(r.passed for r in results)
    _report("AC5 operator-norm convergence (monotone R-sweep; analytic "
            "dominant factor bounded over R in [1e6, 1e9])", ok)


def test_ac6_neck_derivative_rate():
    results = run_check(CheckSpec("dR_rate"))
    fd = next(r for r in results if r.point.get("mode") == "fd")
    ok = all(r.passed for r in results) and abs(fd.measured - 2.0) <= 0.2
    _report(f"AC6 neck-derivative rate (FD slope {fd.measured:.2f} in "
            f"2 +/- 0.2; 1/L^2 and 1/ln^2 laws within factor 2)", ok)


def test_ac7_twist_derivative_decay():
    results = run_check(CheckSpec("dtheta_rate", seeds=tuple(range(10))))
    stability = next(r for r in results
                     if r.point.get("fit") == "C_stability")
    flat = next(r for r in results
                if r.point.get("input") == "s-independent")
    ok = (all(r.passed for r in results)
          and stability.measured <= 2.0 and flat.measured == 0.0)
    _report(f"AC7 twist-derivative decay (C spread "
            f"{stability.measured:.2f}x <= 2; flat input exactly 0)", ok)


def test_ac8_weighted_translation_suite():
    jensen = run_check(CheckSpec("jensen", seeds=tuple(range(100))))
    tau = run_check(CheckSpec("tau_norm_bound"))
    cont = run_check(CheckSpec("H_continuity"))
    fd = run_check(CheckSpec("fd_dR"))
    sat = min(r.fitted["saturation"] for r in tau)
    ok = (len(jensen) == 100 and all(r.passed for r in jensen)
          and all(r.passed for r in tau) and sat >= 0.5
          and len(cont) == 20 and all(r.passed for r in cont)
          and all(r.passed for r in fd))
    _report(f"AC8 weighted-translation suite (Jensen x100; translation "
            f"bound saturated to {sat:.2f}; continuity modulus x20; "
            f"FD slope {fd[0].measured:.2f})", ok)


def test_ac9_c1_at_infinity():
    seq = run_check(CheckSpec("c1_at_infinity"))
    ext = run_check(CheckSpec("derivative_extension"))
    analytic = [r for r in seq if "sequence" in r.point]
    ok = (all(r.passed for r in seq) and all(r.passed for r in ext)
          and all(r.measured <= 1e-3 for r in analytic))
    _report("AC9 C1 behavior at the degenerate limit (analytic sequences "
            "monotone to < 1e-3; difference quotients -> extension)", ok)

"""Acceptance gate: one test per criterion, exact arithmetic throughout.

Each test prints a PASS/FAIL line (run pytest with -s to see them inline;
the same checks back the CLI verb `extmukai verify all`).  Stated runtime
targets are asserted where the criteria fix them.
"""

import time

import pytest

from extmukai.verification import (
    DEFAULT_SEED,
    all_passed,
    crit01_sqrt_todd_linearisation,
    crit02_integral_and_exp,
    crit03_lefschetz_expansion,
    crit04_pairing_factorials,
    crit05_catalog,
    crit06_lambda_invariance,
    crit07_counterexample_lattice,
    crit08_eichler_transport,
    crit09_isotropy,
    crit10_moduli_box,
    crit11_rank_predicates,
    crit12_poincare,
)


def report(number, title, checks, elapsed=None):
    ok = all_passed(checks)
    status = "PASS" if ok else "FAIL"
    timing = " (%.1fs)" % elapsed if elapsed is not None else ""
    print("[%s] criterion %02d: %s%s" % (status, number, title, timing))
    for c in checks:
        if not c["pass"]:
            print("    FAILED check: %s -- %s" % (c["name"], c["detail"]))
    return ok


def test_criterion_01_sqrt_todd_linearisation():
    t0 = time.time()
    checks = crit01_sqrt_todd_linearisation(DEFAULT_SEED)
    elapsed = time.time() - t0
    ok = report(1, "sqrt-Todd linearisation pairings", checks, elapsed)
    assert ok
    assert elapsed < 60, "runtime target"


def test_criterion_02_integral_and_exp():
    checks = crit02_integral_and_exp(DEFAULT_SEED)
    assert report(2, "integral of sqrt-Todd and exponential identity", checks)


def test_criterion_03_lefschetz_expansion():
    checks = crit03_lefschetz_expansion(DEFAULT_SEED)
    assert report(3, "Lefschetz power expansion coefficients (j <= 8)", checks)


def test_criterion_04_pairing_factorials():
    checks = crit04_pairing_factorials()
    assert report(4, "pairing factorial identity (n <= 6)", checks)


def test_criterion_05_catalog():
    checks = crit05_catalog(DEFAULT_SEED)
    assert report(5, "catalog actions and dn-transfer", checks)


def test_criterion_06_lambda_invariance():
    checks = crit06_lambda_invariance(DEFAULT_SEED)
    assert report(6, "lattice invariance of random plus-group generators", checks)


def test_criterion_07_counterexample():
    checks = crit07_counterexample_lattice()
    assert report(7, "n = 10 third-of-delta counterexample lattice", checks)


def test_criterion_08_transport():
    checks = crit08_eichler_transport(DEFAULT_SEED)
    assert report(8, "Eichler transport words (50 + 10 pairs)", checks)


def test_criterion_09_isotropy():
    checks = crit09_isotropy(DEFAULT_SEED)
    assert report(9, "isotropy suite", checks)


def test_criterion_10_moduli_box():
    t0 = time.time()
    checks = crit10_moduli_box()
    elapsed = time.time() - t0
    ok = report(10, "exhaustive moduli box", checks, elapsed)
    assert ok
    assert elapsed < 30, "runtime target"


def test_criterion_11_rank_predicates():
    checks = crit11_rank_predicates()
    assert report(11, "rank predicates against brute force (|r| <= 10^6)", checks)


def test_criterion_12_poincare():
    checks = crit12_poincare()
    assert report(12, "Poincare hyperbolic-plane exchange (g = 2..6)", checks)

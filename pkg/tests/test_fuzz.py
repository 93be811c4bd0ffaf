"""Seeded fuzz suite behavior: green runs, determinism and replayability."""

import pytest

from conekit.errors import BadFamily
from conekit.fuzz import (
    SUITES,
    fuzz_adjoint,
    fuzz_bijection,
    fuzz_composition,
    fuzz_duality,
    run_suite,
)


def test_all_suites_green_small():
    for suite, n in [("duality", 40), ("composition", 20),
                     ("bijection", 60), ("adjoint", 60)]:
        out = run_suite(suite, n, seed=123)
        assert out["failed"] == 0, out["failures"][:1]
        assert out["passed"] == n
        assert out["suite"] == suite


def test_runs_deterministic():
    a = fuzz_duality(15, seed=9)
    b = fuzz_duality(15, seed=9)
    assert a == b


def test_instance_seeds_are_replayable():
    """Instance i of a run with base seed s is the n=1 run with seed s+i."""
    full = fuzz_bijection(10, seed=100)
    solo = fuzz_bijection(1, seed=107)
    assert full["failed"] == 0 and solo["failed"] == 0
    # same instance: single-run params match the full run's sub-case
    assert solo["params"] == full["params"]


def test_composition_checks_bubble_up_details():
    out = fuzz_composition(5, d=3, k=2, seed=4)
    assert out["failed"] == 0
    assert out["params"] == {"d": 3, "k": 2, "tol": 1e-9}


def test_adjoint_suite_small_dim():
    out = fuzz_adjoint(25, d=2, seed=8)
    assert out["failed"] == 0


def test_run_suite_dispatch_and_overrides():
    out = run_suite("bijection", 6, seed=0, d=3)
    assert out["params"]["dims"] == [3]
    out = run_suite("duality", 4, seed=0, d=3, k=2)
    assert out["params"]["ks"] == [2]
    with pytest.raises(BadFamily):
        run_suite("nope", 3, seed=0)


def test_suite_names_exported():
    assert SUITES == ("duality", "composition", "bijection", "adjoint")

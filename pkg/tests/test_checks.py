from __future__ import annotations

import pytest

from modan import fixtures
from modan.checks import CHECKS, permute_algebra, report, run_checks
from modan.derivation import derivation_space
from modan.multiplier import multiplier_space


def _by_status(results, status):
    return [r.tag for r in results if r.status == status]


@pytest.mark.parametrize("name", ["A1", "A2", "A3"])
def test_algebra_only_suite(name):
    results = run_checks(fixtures.ALGEBRAS[name](), None, q_max=2)
    assert _by_status(results, "fail") == []
    assert all(r.tag.startswith(("module", "gauge", "derham.exactness"))
               for r in results if r.status == "skip" and "unit" not in r.detail[0])


@pytest.mark.parametrize("name", ["M2", "AD3"])
def test_module_suite(name):
    mod = fixtures.MODULES[name]()
    results = run_checks(mod.base, mod, q_max=3, seed=7)
    assert _by_status(results, "fail") == []
    assert "multiplier.commutator_range" in _by_status(results, "pass")


def test_ad3_runs_the_annihilator_checks():
    mod = fixtures.ad3()
    passed = _by_status(run_checks(mod.base, mod, q_max=1), "pass")
    for tag in ("module_multiplier.adjoint_kernel", "module_multiplier.adjoint_split",
                "module_derivation.adjoint_split", "multiplier.annihilator_stable"):
        assert tag in passed


def test_degree_checks_skip_at_zero():
    mod = fixtures.m2()
    results = run_checks(mod.base, mod, q_max=0)
    skipped = _by_status(results, "skip")
    assert skipped and all(t.startswith(("hochschild.", "derham.")) for t in skipped)
    assert _by_status(results, "fail") == []


def test_results_are_sorted_and_complete():
    mod = fixtures.m2()
    results = run_checks(mod.base, mod, q_max=1)
    tags = [r.tag for r in results]
    assert tags == sorted(CHECKS)


def test_only_filter():
    a = fixtures.dual_numbers()
    results = run_checks(a, None, only=["algebra.unit"])
    assert [(r.tag, r.status) for r in results] == [("algebra.unit", "pass")]


def test_same_seed_same_report():
    mod = fixtures.ad3()
    r1 = report(run_checks(mod.base, mod, 1, seed=3), mod.base, mod, 1, 3)
    r2 = report(run_checks(mod.base, mod, 1, seed=3), mod.base, mod, 1, 3)
    assert r1 == r2
    assert r1["summary"]["fail"] == 0


def test_permuted_basis_keeps_dimensions():
    a = fixtures.truncated_ideal()
    b = permute_algebra(a, [1, 0])
    assert multiplier_space(b).dim == multiplier_space(a).dim
    assert derivation_space(b).dim == derivation_space(a).dim

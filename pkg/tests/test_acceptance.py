"""Release criteria, one test per check; each prints a pass/fail line."""

import time

import pytest

from maxbond.acceptance import CHECKS

from conftest import acceptance_lines


@pytest.mark.parametrize("name,fn,budget", CHECKS, ids=[c[0] for c in CHECKS])
def test_criterion(name, fn, budget):
    t0 = time.perf_counter()
    passed, detail = fn()
    elapsed = time.perf_counter() - t0
    if passed and budget and elapsed >= budget:
        passed = False
        detail = f"over time budget: {elapsed:.1f}s >= {budget:.0f}s"
    line = f"[{'pass' if passed else 'FAIL'}] {name} ({elapsed:.2f}s) {detail}"
    acceptance_lines.append(line)
    print(line)
    assert passed, detail

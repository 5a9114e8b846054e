"""Acceptance criteria 1-8, one test each, with their stated time limits.

Every result line is printed (captured output) and repeated in the
terminal summary by the hook in conftest.py.
"""

from functools import lru_cache

import pytest

from homalg.acceptance import CRITERIA, run_criterion

RESULTS = {}

CRITERION_3_REASON = (
    "the literal target 0->Z-x2->Z->Z/2->Z/2->0 admits no exact maps and the literal "
    "fixture is not short exact at degree 0; see the decisions ledger"
)


@lru_cache(maxsize=None)
def result(k):
    r = run_criterion(k)
    RESULTS[k] = r
    return r


def _assert_ok(k):
    r = result(k)
    print(r.line())
    assert r.passed, "\n".join(r.details)
    assert r.within_time, f"took {r.seconds:.2f}s, limit {r.limit}s"


@pytest.mark.parametrize("k", [k for k in sorted(CRITERIA) if k != 3])
def test_criterion(k):
    _assert_ok(k)


@pytest.mark.xfail(strict=True, raises=AssertionError, reason=CRITERION_3_REASON)
def test_criterion_3():
    _assert_ok(3)


def test_criterion_3_failures_are_only_the_literal_fixture():
    r = result(3)
    failures = [d for d in r.details if d.startswith(("literal ∂", "target"))]
    assert len(failures) == 2
    assert any("randomized parts pass" in d for d in r.details)
    assert not any(d.startswith(("random SES", "two-of-three")) for d in r.details)

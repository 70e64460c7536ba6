"""One test per acceptance criterion; each records a PASS/FAIL line."""
import time

import pytest

from stairpoly import verify
from stairpoly.facets import load_published

RESULTS = []

CRITERIA = [
    (1, "transfer", 5, "transfer matrix t=2 and f_0..f_5"),
    (2, "values", 5, "e(P_n,0)=1, e(P_n,1)=2^(n-1) for n<=12, four arrays of P_3"),
    (3, "closed-forms", 120, "Ehrhart polynomials n=2..7 equal closed forms"),
    (4, "volumes", 600, "relative volume = Catalan product for n=2..10"),
    (5, "oracles", 120, "DP = brute force on every face, n<=4, t<=4"),
    (6, "reciprocity", 120, "interior counts by reciprocity, vanishing ranges n<=6"),
    (7, "arrays", 300, "array table n<=7, |A_8|=776160, product formula for n-j<=6"),
    (8, "profiles", 300, "n=5 profile (2,6,2), Narayana refinement n<=8"),
    (9, "decomp", 600, "worked example, |det|=1 and C0-C6 for n<=6, tiling n<=5"),
    (10, "facets", 900, "facet tables n=3..6, identities, diagonal fixtures"),
    (11, "kostant", 60, "Kostant count = Catalan product for n<=6"),
]


def _run(number, key, budget, title, heavy=False):
    cfg = verify.RunConfig(heavy=heavy, seed=0)
    fn = dict((k, f) for k, _, f in verify.CHECKS)[key]
    t0 = time.time()
    failures = fn(cfg, load_published(), None)
    elapsed = time.time() - t0
    if elapsed > budget:
        failures = failures + [f"took {elapsed:.1f}s, budget {budget}s"]
    tier = " [heavy]" if heavy else ""
    status = "PASS" if not failures else "FAIL"
    RESULTS.append(f"criterion {number:>2}{tier}: {status}  {title}  ({elapsed:.1f}s)")
    return failures


@pytest.mark.parametrize("number,key,budget,title", CRITERIA, ids=[f"c{c[0]}" for c in CRITERIA])
def test_criterion(number, key, budget, title):
    assert _run(number, key, budget, title) == []


HEAVY = [
    (4, "volumes", 600, "relative volume = Catalan product for n=11,12"),
    (7, "arrays", 900, "|A_8| enumerated, |A_9| counted"),
    (10, "facets", 1800, "facet table n=7 and its identities"),
]


@pytest.mark.heavy
@pytest.mark.parametrize("number,key,budget,title", HEAVY, ids=[f"c{c[0]}-heavy" for c in HEAVY])
def test_criterion_heavy(number, key, budget, title):
    assert _run(number, key, budget, title, heavy=True) == []

"""
One-shot verification suite: every published table and identity recomputed
and compared exactly.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import arrays, decomp, ehrhart, facets, latticeoracle, transfer
from .cache import ResultCache
from .exactcore import UniPoly, catalan, det_exact
from .transfer import GuardExceeded

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


@dataclass
class RunConfig:
    heavy: bool = False
    seed: int = 0
    cache_path: str | None = None
    output: str = "pretty"
    fixtures: str | None = None
    samples: int = 1000
    max_ehrhart_n: int = 10
    max_facet_n: int = 6
    max_enum_n: int = 8
    only: tuple = ()

    def __post_init__(self):
        for name in ("samples", "max_ehrhart_n", "max_facet_n", "max_enum_n"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.output not in ("json", "pretty"):
            raise ValueError("output must be json or pretty")


@dataclass
class CheckResult:
    name: str
    ok: bool | None  # None: skipped by a guard
    failures: list = field(default_factory=list)
    seconds: float = 0.0
    note: str = ""

    def line(self):
        status = {True: "PASS", False: "FAIL", None: "SKIP"}[self.ok]
        extra = f" ({self.note})" if self.note else ""
        return f"[{status}] {self.name} {self.seconds:.1f}s{extra}"


class _Collector:
    def __init__(self):
        self.failures = []

    def expect(self, cond, what):
        if not cond:
            self.failures.append(what)


# -- individual checks -------------------------------------------------------

def check_transfer(cfg, data, cache):
    c = _Collector()
    m2 = transfer.build_transfer_matrix(2)
    c.expect(m2.rows() == [[2, 1], [1, 3]], f"M(2) = {m2.rows()}")
    c.expect(m2.index.parts == ((2,), (1, 1)), "partition order for t=2")
    for t, coeffs in data["transfer_char_polys"].items():
        got = transfer.char_poly_ft(int(t))
        c.expect(got == UniPoly(coeffs), f"f_{t}: got {got.to_json()}")
    return c.failures


def check_small_values(cfg, data, cache):
    c = _Collector()
    for n in range(1, 13):
        c.expect(transfer.evaluate_e(n, 0) == 1, f"e(P_{n},0)")
        c.expect(transfer.evaluate_e(n, 1) == 2 ** (n - 1), f"e(P_{n},1)")
    arrs = set(latticeoracle.staircase_arrays(latticeoracle.FaceSpec(3), 1))
    shown = {((1, 0), (0, 1, 0), (0, 0, 1)), ((1, 0), (0, 0, 1), (0, 1, 0)),
             ((0, 1), (1, 0, 0), (0, 0, 1)), ((0, 1), (0, 0, 1), (1, 0, 0))}
    c.expect(arrs == shown, "the four arrays of 1*P_3")
    c.expect(transfer.evaluate_e(3, 1) == 4, "e(P_3,1)")
    return c.failures


def closed_form(spec) -> UniPoly:
    p = UniPoly([Fraction(spec["scale"])])
    p = p * UniPoly.from_roots(spec["extra_roots"]) * UniPoly(spec["extra_factor"])
    return p * ehrhart.rising_product(spec["rising"])


def check_closed_forms(cfg, data, cache):
    c = _Collector()
    for n, spec in data["ehrhart_closed_forms"].items():
        got = ehrhart.ehrhart_poly(int(n), cache=cache).poly
        c.expect(got == closed_form(spec), f"e(P_{n},t) differs from closed form")
    return c.failures


def check_volumes(cfg, data, cache):
    c = _Collector()
    top = min(cfg.max_ehrhart_n, 10) if not cfg.heavy else 12
    for n in range(2, top + 1):
        v = ehrhart.relative_volume(n, heavy=cfg.heavy, cache=cache)
        c.expect(v == ehrhart.catalan_product(n), f"V_{n} = {v}")
    for n, v in data["volumes"].items():
        if int(n) <= top:
            c.expect(ehrhart.relative_volume(int(n), cache=cache) == v, f"V_{n} vs fixture {v}")
    return c.failures


def all_face_specs(n):
    cells = [(r, s) for r in range(1, n + 1) for s in range(1, min(r + 1, n) + 1)]
    for k in range(len(cells) + 1):
        for sub in itertools.combinations(cells, k):
            yield latticeoracle.FaceSpec(n, sub)


def check_oracles(cfg, data, cache):
    c = _Collector()
    for n in range(1, 5):
        for spec in all_face_specs(n):
            for t in range(5):
                a = latticeoracle.count_points_dp(spec, t)
                b = latticeoracle.count_points_bruteforce(spec, t)
                c.expect(a == b, f"n={n} zeros={spec.key()} t={t}: dp {a} brute {b}")
    return c.failures


def check_reciprocity(cfg, data, cache):
    c = _Collector()
    for n in (3, 4):
        poly = ehrhart.ehrhart_poly(n, cache=cache).poly
        d = comb(n, 2)
        for t in range(1, latticeoracle.interior_bound(n) + 4):
            got = latticeoracle.count_interior(n, t)
            c.expect(got == (-1) ** d * poly(-t), f"interior n={n} t={t}")
    for n in range(2, 7):
        z = latticeoracle.zero_range(n)
        b = latticeoracle.interior_bound(n)
        c.expect(z == b - 1, f"zero range n={n}")
        for t in range(1, b + 1):
            got = latticeoracle.count_interior(n, t)
            c.expect((got == 0) == (t < b), f"vanishing n={n} t={t}: {got}")
    return c.failures


def check_array_table(cfg, data, cache):
    c = _Collector()
    for n, row in data["array_table"].items():
        got = [arrays.count_arrays(int(n), j) for j in range(1, int(n) - 1)]
        c.expect(got == row, f"A_{n}^j = {got}, published {row}")
    c.expect(arrays.count_arrays(8) == ehrhart.catalan_product(8) == 776160, "|A_8|")
    for n in range(3, 15):
        for j in range(max(1, n - 6), n - 1):
            c.expect(arrays.check_array_product_formula(n, j), f"product formula n={n} j={j}")
    if cfg.heavy:
        c.expect(sum(1 for _ in arrays.enumerate_arrays(8)) == 776160, "|A_8| by enumeration")
        c.expect(arrays.count_arrays(9) == ehrhart.catalan_product(9), "|A_9|")
    return c.failures


def check_profiles(cfg, data, cache):
    c = _Collector()
    c.expect(arrays.profile_counts(5) == {1: 2, 2: 6, 3: 2}, "D_5 profile")
    for n in range(3, 9):
        c.expect(arrays.check_narayana_refinement(n)["ok"], f"Narayana refinement n={n}")
    return c.failures


def check_decomposition(cfg, data, cache):
    c = _Collector()
    alpha = arrays.TriArray.parse("0; 0 1; 0 0 2; 0 0 1 2")
    _, stages, _ = decomp.build_linear_map(alpha, record=True)
    expected = {
        2: [["AFGHI"], ["B", "F"], ["C", "G", "J"], ["D", "H", "K", "M"], ["E", "I", "L", "N", "O"]],
        3: [["AFGHIJKL"], ["B", "FJKL"], ["C", "G", "BJ"], ["D", "H", "K", "M"],
            ["E", "I", "L", "N", "O"]],
        4: [["AFGHIJKLMN"], ["B", "FJKLN"], ["C", "GM", "BJN"], ["D", "H", "K", "BCM"],
            ["E", "I", "L", "GN", "O"]],
        5: [["AFGHIJKLMN"], ["B", "FJKLN"], ["C", "GM", "BJN"], ["DO", "H", "K", "BCM"],
            ["E", "I", "L", "GN", "BCO"]],
    }
    for k, rows in expected.items():
        c.expect(stages[k].format("letters") == rows, f"worked example stage {k}")
    for n in range(3, min(cfg.max_enum_n, 6) + 1):
        for al in arrays.enumerate_arrays(n):
            tri, sts, _ = decomp.build_linear_map(al, record=True)
            c.expect(abs(det_exact(tri.coefficient_matrix())) == 1, f"|det| {al!r}")
            for k, s in sts.items():
                c.expect(decomp.conditions_ok(decomp.validate_conditions(s, k, al)),
                         f"C0-C6 {al!r} stage {k}")
    for n in (3, 4, 5):
        rep = decomp.tiling_report(n, cfg.samples, cfg.seed, strict=False)
        c.expect(rep.uncovered == 0 and rep.overlaps == 0, f"tiling n={n}: {rep.to_json()}")
    return c.failures


_facet_tables: dict = {}


def computed_facet_table(n, heavy=False, cache=None):
    if n not in _facet_tables:
        _facet_tables[n] = facets.facet_table(n, heavy=heavy, cache=cache)
    return _facet_tables[n]


def check_facets(cfg, data, cache):
    c = _Collector()
    top = 7 if cfg.heavy else min(cfg.max_facet_n, 6)
    diags = {}
    vols = {}
    for n in range(3, top + 1):
        table = computed_facet_table(n, heavy=cfg.heavy, cache=cache)
        for msg in facets.compare_with_published(table, data):
            c.expect(False, msg)
        c.expect(not facets.check_symmetries(table), f"symmetries n={n}")
        c.expect(not facets.check_antidiagonal(table), f"anti-diagonal n={n}")
        c.expect(facets.check_rectangular(table)["ok"], f"rectangular n={n}")
        c.expect(facets.check_vertex_sum(table)["ok"], f"vertex sum n={n}")
        diags[n] = table.diagonal()
        vols[n] = ehrhart.catalan_product(n)
    c.expect(facets.check_diagonal_relations(diags, vols, b_range=())["ok"], "a_n on computed tables")
    pub = facets.published_diagonals(data)
    for n, d in diags.items():
        c.expect(pub.get(n) == d, f"diagonal n={n}: computed {d}, published {pub.get(n)}")
    rep = facets.check_diagonal_relations(pub)
    c.expect(not rep["a_failures"], f"a_n on published diagonals: {rep['a_failures']}")
    c.expect(rep["b_checked"] == [4, 5, 6, 7, 8] and not rep["b_failures"],
             f"b relation: {rep['b_failures']}")
    c.expect(not facets.rectangular_failures(data["skew_matrix_7"]), "published skew matrix")
    for n, tri in data["facet_tables"].items():
        c.expect(facets.check_rectangular(tri)["ok"], f"published table n={n} rectangular")
    return c.failures


def check_kostant(cfg, data, cache):
    c = _Collector()
    for n in range(2, 7):
        want = 1
        for i in range(n):
            want *= catalan(i)
        got = arrays.kostant_count(n)
        c.expect(got == want, f"K for n={n}: {got} vs {want}")
        c.expect(got == arrays.count_arrays(n + 1), f"K vs |A_{n + 1}|")
    return c.failures


CHECKS = [
    ("transfer", "transfer matrix t=2 and f_0..f_5", check_transfer),
    ("values", "e(P_n,0), e(P_n,1), the four arrays of P_3", check_small_values),
    ("closed-forms", "Ehrhart polynomials n=2..7", check_closed_forms),
    ("volumes", "relative volume = Catalan product", check_volumes),
    ("oracles", "DP vs brute force on every face, n<=4, t<=4", check_oracles),
    ("reciprocity", "interior counts and vanishing ranges", check_reciprocity),
    ("arrays", "array counts and product formula", check_array_table),
    ("profiles", "equality profiles and Narayana refinement", check_profiles),
    ("decomp", "worked example, determinants, C0-C6, tiling", check_decomposition),
    ("facets", "facet tables and identities", check_facets),
    ("kostant", "Kostant partition function", check_kostant),
]


def verify_all(cfg: RunConfig, data=None, log=print) -> tuple[int, list[CheckResult]]:
    data = data or facets.load_published(cfg.fixtures)
    cache = ResultCache(cfg.cache_path) if cfg.cache_path else None
    results = []
    for key, title, fn in CHECKS:
        if cfg.only and key not in cfg.only:
            continue
        t0 = time.time()
        try:
            failures = fn(cfg, data, cache)
            res = CheckResult(f"{key}: {title}", not failures, failures)
        except GuardExceeded as exc:
            res = CheckResult(f"{key}: {title}", None, note=str(exc))
        res.seconds = time.time() - t0
        results.append(res)
        if log:
            log(res.line())
            for f in res.failures:
                log(f"    mismatch: {f}")
    if cache is not None:
        cache.save()
    status = EXIT_MISMATCH if any(r.ok is False for r in results) else EXIT_OK
    return status, results

"""
Relative volumes of the facets P_n(r, s) = conv{v in T_n : v[r][s] = 0}.

Each volume comes from the facet's own Ehrhart polynomial (counts of t*P_n
with a forced zero at (r, s)), scaled by (dim)! and divided by the index of
the vertex-difference lattice inside the integer points of its span.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from math import comb, factorial

from .cache import ResultCache, make_key
from .decomp import vertices
from .ehrhart import VerificationError, catalan_product
from .exactcore import UniPoly, lattice_index, poly_interpolate
from .latticeoracle import FaceSpec, count_points_dp
from .transfer import GuardExceeded

FACET_MAX_N = 6
FACET_MAX_N_HEAVY = 7


def is_facet(n: int, r: int, s: int) -> bool:
    if not (1 <= r <= n and 1 <= s <= n and s <= r + 1):
        return False
    if n == 2:
        return True
    return r != 1 and s != n and s != r + 1


def facet_cells(n: int) -> list[tuple[int, int]]:
    return [(r, s) for r in range(1, n + 1) for s in range(1, min(r + 1, n) + 1)
            if is_facet(n, r, s)]


def facet_vertices(n: int, r: int, s: int):
    return [v for v in vertices(n) if v[r - 1][s - 1] == 0]


def facet_lattice_index(n: int, r: int, s: int) -> int:
    vs = facet_vertices(n, r, s)
    flat = [[x for row in v for x in row] for v in vs]
    base = flat[0]
    diffs = [[a - b for a, b in zip(v, base)] for v in flat[1:]]
    return lattice_index(diffs, rank=comb(n, 2) - 1)


@dataclass
class FacetVolume:
    n: int
    r: int
    s: int
    poly: UniPoly
    lattice_index: int
    volume: int


def _check_n(n: int, heavy: bool):
    limit = FACET_MAX_N_HEAVY if heavy else FACET_MAX_N
    if n > limit:
        raise GuardExceeded(f"facet volumes at n={n} above limit {limit}")


def facet_ehrhart(n: int, r: int, s: int, cache: ResultCache | None = None) -> UniPoly:
    """Ehrhart polynomial of the face with a forced zero at (r, s)."""
    dim = comb(n, 2) - 1
    spec = FaceSpec(n, {(r, s)})

    def count(t):
        thunk = lambda: count_points_dp(spec, t)
        if cache is None:
            return thunk()
        return cache.get_or_compute(make_key("face", n, t, spec.forced_zeros), thunk)

    pts = [(t, count(t)) for t in range(dim + 1)]
    poly = poly_interpolate(pts)
    extra = dim + 1
    if poly(extra) != count(extra):
        raise VerificationError(f"facet ({r},{s}) of P_{n} fails held-out check at t={extra}")
    if poly.degree != dim:
        raise VerificationError(f"facet ({r},{s}) of P_{n} has degree {poly.degree}, want {dim}")
    return poly


def facet_volume(n: int, r: int, s: int, heavy: bool = False,
                 cache: ResultCache | None = None) -> FacetVolume:
    if n < 3:
        raise ValueError("facet tables start at n = 3")
    if not is_facet(n, r, s):
        raise ValueError(f"P_{n}({r},{s}) is not a facet")
    _check_n(n, heavy)
    poly = facet_ehrhart(n, r, s, cache)
    dim = comb(n, 2) - 1
    idx = facet_lattice_index(n, r, s)
    vol = poly.lead * factorial(dim) / idx
    if vol.denominator != 1:
        raise VerificationError(f"non-integral facet volume {vol} at ({r},{s}), n={n}")
    return FacetVolume(n, r, s, poly, idx, int(vol))


@dataclass
class FacetTable:
    n: int
    volumes: dict  # every facet-valid (r, s) -> volume
    indices: dict = field(default_factory=dict)

    def triangle(self) -> list[list[int]]:
        """Rows r = 2..n-1, entries s = 2..r."""
        return [[self.volumes[r, s] for s in range(2, r + 1)] for r in range(2, self.n)]

    def diagonal(self) -> list[int]:
        return [self.volumes[k, k] for k in range(2, self.n)]

    def to_json(self):
        return {"n": self.n,
                "triangle": [[str(v) for v in row] for row in self.triangle()],
                "volumes": {f"{r},{s}": str(v) for (r, s), v in sorted(self.volumes.items())},
                "lattice_indices": {f"{r},{s}": i for (r, s), i in sorted(self.indices.items())}}


def facet_table(n: int, heavy: bool = False, cache: ResultCache | None = None) -> FacetTable:
    _check_n(n, heavy)
    vols, idxs = {}, {}
    for r, s in facet_cells(n):
        fv = facet_volume(n, r, s, heavy, cache)
        vols[r, s] = fv.volume
        idxs[r, s] = fv.lattice_index
    return FacetTable(n, vols, idxs)


def table_from_triangle(n: int, triangle) -> FacetTable:
    """Expand a published triangle to every facet through the two symmetries."""
    vols = {}
    for r in range(2, n):
        for s in range(2, r + 1):
            vols[r, s] = triangle[r - 2][s - 2]
    for r in range(2, n):
        vols[r, 1] = vols[r, 2]
    for s in range(1, n):
        vols[n, s] = vols[n - 1, s] if s > 1 else vols[n - 1, 2]
    return FacetTable(n, vols)


# -- identities --------------------------------------------------------------

def check_symmetries(table: FacetTable) -> list[str]:
    """Column-swap and row-swap symmetries; returns failure descriptions."""
    n, v = table.n, table.volumes
    bad = []
    for r in range(2, n + 1):
        if (r, 1) in v and (r, 2) in v and v[r, 1] != v[r, 2]:
            bad.append(f"vol({r},1) != vol({r},2)")
    for s in range(1, n):
        if (n, s) in v and (n - 1, s) in v and v[n, s] != v[n - 1, s]:
            bad.append(f"vol({n},{s}) != vol({n - 1},{s})")
    return bad


def check_antidiagonal(table: FacetTable) -> list[str]:
    n, v = table.n, table.volumes
    bad = []
    for r in range(2, n):
        for s in range(2, r + 1):
            rr, ss = n + 1 - s, n + 1 - r
            if v[r, s] != v[rr, ss]:
                bad.append(f"vol({r},{s}) != vol({rr},{ss})")
    return bad


def skew_matrix(table_or_triangle, n: int | None = None) -> list[list[int]]:
    """(n-1)x(n-1) skew-symmetric completion with a zero diagonal."""
    tri = table_or_triangle.triangle() if isinstance(table_or_triangle, FacetTable) \
        else table_or_triangle
    m = len(tri) + 1
    out = [[0] * m for _ in range(m)]
    for a in range(1, m):
        for b in range(a):
            out[a][b] = tri[a - 1][b]
            out[b][a] = -tri[a - 1][b]
    return out


def rectangular_failures(matrix) -> list[tuple]:
    """2x2 submatrices whose two diagonal sums differ."""
    m = len(matrix)
    bad = []
    for a1 in range(m):
        for a2 in range(a1 + 1, m):
            for b1 in range(len(matrix[0])):
                for b2 in range(b1 + 1, len(matrix[0])):
                    if matrix[a1][b1] + matrix[a2][b2] != matrix[a1][b2] + matrix[a2][b1]:
                        bad.append((a1, a2, b1, b2))
    return bad


def triangle_rectangular_failures(tri) -> list[tuple]:
    """Same test restricted to 2x2 submatrices lying inside the triangle."""
    bad = []
    rows = len(tri)
    for a1 in range(rows):
        for a2 in range(a1 + 1, rows):
            for b1 in range(len(tri[a1])):
                for b2 in range(b1 + 1, len(tri[a1])):
                    if tri[a1][b1] + tri[a2][b2] != tri[a1][b2] + tri[a2][b1]:
                        bad.append((a1, a2, b1, b2))
    return bad


def check_rectangular(table) -> dict:
    tri = table.triangle() if isinstance(table, FacetTable) else table
    skew = skew_matrix(tri)
    return {"triangle": triangle_rectangular_failures(tri),
            "skew": rectangular_failures(skew),
            "ok": not triangle_rectangular_failures(tri) and not rectangular_failures(skew)}


def check_vertex_sum(table: FacetTable, total: int | None = None) -> dict:
    """
    For each vertex, the facets not containing it are those with a 1 at
    (r, s); their volumes must add up to the volume of P_n.
    """
    n = table.n
    total = catalan_product(n) if total is None else total
    bad = []
    for v in vertices(n):
        s = sum(vol for (r, c), vol in table.volumes.items() if v[r - 1][c - 1] == 1)
        if s != total:
            bad.append((v, s))
    return {"n": n, "target": total, "failures": bad, "ok": not bad}


# -- published data ----------------------------------------------------------

def load_published(path=None) -> dict:
    if path is None:
        text = resources.files("stairpoly").joinpath("data/published.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return json.loads(text)


def palindromic(diag, length):
    full = list(diag)
    while len(full) < length:
        full.append(full[length - 1 - len(full)])
    return full[:length]


def published_diagonals(data=None) -> dict[int, list[int]]:
    data = data or load_published()
    return {int(n): palindromic(d, int(n) - 2) for n, d in data["diagonals"].items()}


def check_diagonal_relations(diagonals: dict[int, list[int]], volumes: dict[int, int] | None = None,
                       b_range=range(4, 9)) -> dict:
    """
    a_n = 3 V_n / C(n,2) for every n given, and the b_n/a_n three-term
    relation for each n in ``b_range`` whose n, n+1, n+2 data are present.
    """
    a = {n: d[0] for n, d in diagonals.items()}
    b = {n: d[1] for n, d in diagonals.items() if len(d) > 1}
    a_fail = []
    for n in sorted(a):
        vol = volumes[n] if volumes and n in volumes else catalan_product(n)
        if Fraction(3 * vol, comb(n, 2)) != a[n]:
            a_fail.append(n)
    b_checked, b_fail = [], []
    for n in b_range:
        if all(k in b and k in a for k in (n, n + 1, n + 2)):
            q = {k: Fraction(b[k], a[k]) for k in (n, n + 1, n + 2)}
            lhs = (n - 1) * (q[n + 1] - q[n])
            rhs = (n + 2) * (q[n + 2] - q[n + 1])
            b_checked.append(n)
            if lhs != rhs:
                b_fail.append(n)
    return {"a_checked": sorted(a), "a_failures": a_fail,
            "b_checked": b_checked, "b_failures": b_fail,
            "ok": not a_fail and not b_fail}


def compare_with_published(table: FacetTable, data=None) -> list[str]:
    """Entry-by-entry mismatches against the published triangle for this n."""
    data = data or load_published()
    ref = data["facet_tables"].get(str(table.n))
    if ref is None:
        return []
    got = table.triangle()
    bad = []
    for r, (row_ref, row_got) in enumerate(zip(ref, got), start=2):
        for s, (x, y) in enumerate(zip(row_ref, row_got), start=2):
            if x != y:
                bad.append(f"n={table.n} ({r},{s}): published {x}, computed {y}")
    if len(ref) != len(got):
        bad.append(f"n={table.n}: triangle shape differs")
    return bad

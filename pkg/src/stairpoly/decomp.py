"""
Unimodular simplices of P_n indexed by the triangular arrays.

A point of P_n is determined by its lower triangle y[i][j], 1 <= j <= i <= n-1;
the superdiagonal and the last row follow from the row and column sums. Each
array alpha gives a triangle of 0/1 linear forms in variables x[i][j] (one per
triangle cell), built one column of alpha at a time by splitting the
variables of a row into chunks and caps. The image of the unit simplex under
that map is a lattice simplex of minimal volume inside P_n.
"""
from __future__ import annotations

import random
import string
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, lcm

from .arrays import TriArray, enumerate_arrays, is_valid
from .exactcore import det_exact
from .transfer import GuardExceeded

TILING_MAX_N = 6
DEFAULT_PRIME = 10007


class ChunkOverflow(ValueError):
    """Column of alpha asks for more chunk variables than the row holds."""


class CoverageError(AssertionError):
    """A point of P_n is in no simplex of the decomposition."""


# -- variables ---------------------------------------------------------------

def cells(n: int) -> list[tuple[int, int]]:
    """Triangle cells (i, j), 1 <= j <= i <= n-1, in column-major order."""
    return [(i, j) for j in range(1, n) for i in range(j, n)]


@lru_cache(maxsize=None)
def var_index(n: int) -> dict:
    return {c: k for k, c in enumerate(cells(n))}


def var_name(n: int, v: int, style: str = "rc") -> str:
    if style == "letters" and comb(n, 2) <= 26:
        return string.ascii_uppercase[v]
    i, j = cells(n)[v]
    return f"x{i}{j}" if n <= 10 else f"x{i}_{j}"


# -- triangles of linear forms ----------------------------------------------

@dataclass(frozen=True)
class LinFuncTriangle:
    """Entry (i, j) is the frozenset of variable ids summed in that cell."""

    n: int
    rows: tuple  # rows[i-1][j-1]

    @classmethod
    def identity(cls, n: int) -> "LinFuncTriangle":
        idx = var_index(n)
        return cls(n, tuple(tuple(frozenset([idx[i, j]]) for j in range(1, i + 1))
                            for i in range(1, n)))

    def __getitem__(self, ij) -> frozenset:
        i, j = ij
        return self.rows[i - 1][j - 1]

    def row_vars(self, i: int) -> list[frozenset]:
        return list(self.rows[i - 1])

    def col_vars(self, j: int) -> list[frozenset]:
        return [self.rows[i - 1][j - 1] for i in range(j, self.n)]

    def coefficient_matrix(self) -> list[list[int]]:
        """Rows are cells and columns variables, both in column-major order."""
        d = comb(self.n, 2)
        out = []
        for i, j in cells(self.n):
            cell = self[i, j]
            out.append([1 if v in cell else 0 for v in range(d)])
        return out

    def apply(self, x) -> dict:
        """Triangle values for a variable assignment ``x`` (sequence by id)."""
        return {(i, j): sum(x[v] for v in self[i, j]) for i, j in cells(self.n)}

    def format(self, style: str = "letters") -> list[list[str]]:
        return [["".join(var_name(self.n, v, style) for v in sorted(c)) for c in row]
                for row in self.rows]

    def dump(self, style: str = "rc") -> str:
        sep = "" if style == "letters" and comb(self.n, 2) <= 26 else "+"
        rows = [[sep.join(var_name(self.n, v, style) for v in sorted(c)) for c in row]
                for row in self.rows]
        width = max(len(s) for row in rows for s in row)
        return "\n".join(" ".join(s.ljust(width) for s in row).rstrip() for row in rows)


def _replace(tri_rows, i, j, value):
    row = list(tri_rows[i - 1])
    row[j - 1] = value
    tri_rows[i - 1] = tuple(row)


@dataclass
class ChunkStep:
    k: int
    zs: list
    chunks: list  # one per i = k+1..n-1
    caps: list


def build_linear_map(alpha: TriArray, record: bool = False, cap_order=None):
    """
    Triangle of linear forms for ``alpha``. With ``record`` also return the
    list of stages (stage k = after columns 2..k of alpha) and the chunk plan.
    ``cap_order`` optionally permutes the order of the cap substitutions.
    """
    n = alpha.n
    if not is_valid(alpha):
        raise ValueError(f"not a valid array: {alpha!r}")
    idx = var_index(n)
    tri = LinFuncTriangle.identity(n)
    stages = {1: tri}
    plan = []
    for k in range(1, n - 1):
        rows = list(tri.rows)
        zs = sorted(set().union(*tri.row_vars(k)))
        chunks, caps = [], []
        pos = 0
        for i in range(k + 1, n):
            a = alpha[i, k + 1]
            if pos + a >= len(zs):
                raise ChunkOverflow(f"column {k + 1} needs more than {len(zs)} variables")
            chunks.append(zs[pos:pos + a])
            pos += a
            caps.append(zs[pos])
        plan.append(ChunkStep(k, zs, chunks, caps))
        # substep 1: cap z -> z + x[i][k+1] in columns 1..k
        order = list(range(len(caps)))
        if cap_order is not None:
            order = cap_order(order)
        for r in order:
            i = k + 1 + r
            cap, new = caps[r], idx[i, k + 1]
            for row in range(1, n):
                for col in range(1, min(row, k) + 1):
                    cell = rows[row - 1][col - 1]
                    if cap in cell:
                        _replace(rows, row, col, cell | {new})
        # substep 2: x[i][k+1] -> x[i][k+1] + chunk
        for r, chunk in enumerate(chunks):
            i = k + 1 + r
            _replace(rows, i, k + 1, frozenset([idx[i, k + 1]]) | frozenset(chunk))
        tri = LinFuncTriangle(n, tuple(rows))
        stages[k + 1] = tri
    if record:
        return tri, stages, plan
    return tri


# -- conditions --------------------------------------------------------------

def validate_conditions(tri: LinFuncTriangle, stage: int, alpha: TriArray | None = None) -> dict:
    """
    Check C0-C6 for a triangle produced after columns 2..``stage`` of alpha.
    Returns {name: None if ok else description of the first offending cell}.
    C2 is skipped (reported ok) when ``alpha`` is not given.
    """
    n, k = tri.n, stage
    idx = var_index(n)
    orig_cols = {v: cells(n)[v][1] for v in range(comb(n, 2))}
    rep = {}

    def first(gen):
        return next(gen, None)

    def pairwise_disjoint(entries):
        seen = set()
        for where, cell in entries:
            if seen & cell:
                return where
            seen |= cell
        return None

    bad = None
    for i in range(1, n):
        bad = bad or pairwise_disjoint(((i, j), tri[i, j]) for j in range(1, i + 1))
    for j in range(1, n):
        bad = bad or pairwise_disjoint(((i, j), tri[i, j]) for i in range(j, n))
    if bad is None:
        bad = first((i, j) for i, j in cells(n) if not tri[i, j])
    rep["C0"] = None if bad is None else f"cell {bad}"

    rect = [(i, j) for i in range(k, n) for j in range(1, k + 1)]
    bad = pairwise_disjoint(((c, tri[c]) for c in rect))
    rep["C1"] = None if bad is None else f"cell {bad}"

    if alpha is None:
        rep["C2"] = None
    else:
        bad = first(c for c in rect if (
            tri[c] != frozenset([idx[c]]) if c[1] == 1 else len(tri[c]) != alpha[c] + 1))
        rep["C2"] = None if bad is None else f"cell {bad}"

    bad = first((i, j) for i, j in cells(n) if j <= k
                and any(orig_cols[v] > k for v in tri[i, j]))
    rep["C3"] = None if bad is None else f"cell {bad}"

    bad = first((i, j) for i, j in cells(n) if j > k and tri[i, j] != frozenset([idx[i, j]]))
    rep["C4"] = None if bad is None else f"cell {bad}"

    bad = None
    for j in range(2, k + 1):
        col = set().union(*tri.col_vars(j))
        row = set().union(*tri.row_vars(j - 1))
        if not col < row:
            bad = j
            break
    rep["C5"] = None if bad is None else f"column {bad}"

    wanted = sorted(v for v in range(comb(n, 2)) if orig_cols[v] <= k)
    seen = sorted(v for c in tri.col_vars(1) for v in c)
    rep["C6"] = None if seen == wanted else "first column multiset mismatch"
    return rep


def conditions_ok(report: dict) -> bool:
    return all(v is None for v in report.values())


# -- points of P_n -----------------------------------------------------------

def complete(n: int, tri_values: dict) -> list[list]:
    """
    Full n x n matrix from the triangle values using unit row and column
    sums. Entries may come out negative for points outside P_n.
    """
    y = [[0] * n for _ in range(n)]
    for (i, j), v in tri_values.items():
        y[i - 1][j - 1] = v
    for i in range(1, n):
        y[i - 1][i] = 1 - sum(y[i - 1][:i])
    for j in range(1, n + 1):
        y[n - 1][j - 1] = 1 - sum(y[i][j - 1] for i in range(n - 1))
    return y


def triangle_of(y) -> dict:
    n = len(y)
    return {(i, j): y[i - 1][j - 1] for i, j in cells(n)}


def in_polytope(y) -> bool:
    """Nonnegative, unit row/column sums, zero above the superdiagonal."""
    n = len(y)
    if any(len(row) != n for row in y):
        return False
    if any(v < 0 for row in y for v in row):
        return False
    if any(y[i][j] != 0 for i in range(n) for j in range(i + 2, n)):
        return False
    return (all(sum(row) == 1 for row in y)
            and all(sum(y[i][j] for i in range(n)) == 1 for j in range(n)))


def chain_inequalities_hold(n: int, tri_values: dict) -> bool:
    """The column/row chain inequalities and the first-column bound."""
    y = tri_values
    for k in range(2, n):
        lower = sum(y[i, k] for i in range(k, n))
        upper = sum(y[k - 1, j] for j in range(1, k))
        if not (lower <= upper <= 1):
            return False
    return sum(y[i, 1] for i in range(1, n)) <= 1


def vertices(n: int) -> list[tuple[tuple[int, ...], ...]]:
    """The 2^(n-1) permutation matrices with no 1 beyond the superdiagonal."""
    out = []

    def rec(i, used, perm):
        if i == n:
            out.append(tuple(tuple(1 if perm[r] == c else 0 for c in range(n)) for r in range(n)))
            return
        for c in range(min(i + 2, n)):
            if c not in used:
                used.add(c)
                perm.append(c)
                rec(i + 1, used, perm)
                perm.pop()
                used.remove(c)

    rec(0, set(), [])
    return out


def simplex_of(alpha: TriArray, tri: LinFuncTriangle | None = None) -> list:
    """
    Vertices of the simplex for ``alpha``: images of the origin and of the
    unit vectors, each completed to an n x n matrix.
    """
    n = alpha.n
    tri = tri or build_linear_map(alpha)
    d = comb(n, 2)
    out = []
    for v in [None] + list(range(d)):
        x = [0] * d
        if v is not None:
            x[v] = 1
        vals = tri.apply(x)
        y = complete(n, vals)
        if not in_polytope(y) or not chain_inequalities_hold(n, vals):
            raise CoverageError(f"simplex vertex {v} of {alpha!r} falls outside P_{n}")
        out.append(y)
    return out


# -- point location ----------------------------------------------------------

def _int_inverse(m):
    """Inverse of an integer matrix with determinant +-1, as integers."""
    d = len(m)
    a = [[Fraction(v) for v in row] + [Fraction(int(r == c)) for c in range(d)]
         for r, row in enumerate(m)]
    for col in range(d):
        piv = next(r for r in range(col, d) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [v / p for v in a[col]]
        for r in range(d):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    inv = [[v for v in row[d:]] for row in a]
    if any(v.denominator != 1 for row in inv for v in row):
        raise ArithmeticError("inverse is not integral")
    return [[int(v) for v in row] for row in inv]


@dataclass
class Decomposition:
    n: int
    alphas: list
    triangles: list
    dets: list
    inverses: list = field(repr=False)


_decomps: dict = {}


def decomposition(n: int, force: bool = False) -> Decomposition:
    if n > TILING_MAX_N and not force:
        raise GuardExceeded(f"decomposition at n={n} above limit {TILING_MAX_N}")
    hit = _decomps.get(n)
    if hit is not None:
        return hit
    alphas, tris, dets, invs = [], [], [], []
    for alpha in enumerate_arrays(n, heavy=force):
        tri = build_linear_map(alpha)
        m = tri.coefficient_matrix()
        alphas.append(alpha)
        tris.append(tri)
        dets.append(det_exact(m))
        invs.append(_int_inverse(m))
    dec = Decomposition(n, alphas, tris, dets, invs)
    _decomps[n] = dec
    return dec


@dataclass
class Location:
    alpha: TriArray
    containing: list  # every alpha whose closed simplex holds the point
    interior: list  # those holding it strictly inside

    @property
    def boundary(self) -> bool:
        return not (len(self.containing) == 1 and len(self.interior) == 1)


def _scaled_triangle(y):
    den = 1
    for row in y:
        for v in row:
            den = lcm(den, Fraction(v).denominator)
    n = len(y)
    vec = [int(Fraction(y[i - 1][j - 1]) * den) for i, j in cells(n)]
    return vec, den


def locate_point(n: int, y, dec: Decomposition | None = None) -> Location:
    """
    Find every simplex containing the point ``y`` (an n x n matrix in P_n).
    Preimages are computed with the integer inverse maps after clearing
    denominators, so the test is exact.
    """
    y = [[Fraction(v) for v in row] for row in y]
    if len(y) != n or not in_polytope(y):
        raise ValueError("point is not in P_n")
    dec = dec or decomposition(n)
    vec, den = _scaled_triangle(y)
    containing, interior = [], []
    for alpha, inv in zip(dec.alphas, dec.inverses):
        x = [sum(a * b for a, b in zip(row, vec) if a) for row in inv]
        if min(x) < 0:
            continue
        s = sum(x)
        if s > den:
            continue
        containing.append(alpha)
        if min(x) > 0 and s < den:
            interior.append(alpha)
    if not containing:
        raise CoverageError(f"point lies in no simplex: {y}")
    best = interior[0] if interior else containing[0]
    return Location(best, containing, interior)


def barycenter(points) -> list[list[Fraction]]:
    k = len(points)
    n = len(points[0])
    return [[sum(Fraction(p[i][j]) for p in points) / k for j in range(n)] for i in range(n)]


def random_point(n: int, rng: random.Random, prime: int = DEFAULT_PRIME, verts=None):
    """Convex combination of the vertices with positive integer weights < prime."""
    verts = verts or vertices(n)
    w = [rng.randrange(1, prime) for _ in verts]
    total = sum(w)
    return [[Fraction(sum(wk * v[i][j] for wk, v in zip(w, verts)), total) for j in range(n)]
            for i in range(n)]


@dataclass
class TilingReport:
    n: int
    samples: int
    seed: int
    single: int = 0
    boundary: int = 0
    uncovered: int = 0
    overlaps: int = 0

    @property
    def ok(self):
        return self.uncovered == 0 and self.overlaps == 0

    def to_json(self):
        return {"n": self.n, "samples": self.samples, "seed": self.seed,
                "single": self.single, "boundary": self.boundary,
                "uncovered": self.uncovered, "overlaps": self.overlaps}


def _classify(report, n, y, dec):
    try:
        loc = locate_point(n, y, dec)
    except CoverageError:
        report.uncovered += 1
        return
    if loc.interior and len(loc.containing) > 1:
        report.overlaps += 1
    elif loc.boundary:
        report.boundary += 1
    else:
        report.single += 1


def tiling_report(n: int, samples: int, seed: int = 0, prime: int = DEFAULT_PRIME,
                  force: bool = False, strict: bool = True) -> TilingReport:
    """
    Sample random points of P_n and count how many simplices contain each.
    An interior point of one simplex lying in another is an overlap.
    """
    dec = decomposition(n, force=force)
    rng = random.Random(seed)
    verts = vertices(n)
    rep = TilingReport(n, samples, seed)
    for _ in range(samples):
        _classify(rep, n, random_point(n, rng, prime, verts), dec)
    if strict and not rep.ok:
        raise CoverageError(f"tiling check failed: {rep.to_json()}")
    return rep


def grid_points(n: int, den: int):
    """All points of P_n whose triangle coordinates are multiples of 1/den."""
    cs = cells(n)

    def rec(k, vals):
        if k == len(cs):
            y = complete(n, vals)
            if in_polytope(y):
                yield y
            return
        for v in range(den + 1):
            vals[cs[k]] = Fraction(v, den)
            yield from rec(k + 1, vals)
        del vals[cs[k]]

    yield from rec(0, {})


def grid_report(n: int, den: int) -> TilingReport:
    dec = decomposition(n)
    rep = TilingReport(n, 0, 0)
    for y in grid_points(n, den):
        rep.samples += 1
        _classify(rep, n, y, dec)
    return rep

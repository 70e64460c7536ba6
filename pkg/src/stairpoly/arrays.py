"""
The triangular arrays that index the unimodular simplices of P_n.

An array has entries a[i][j] for 2 <= j <= i <= n-1. For each column k the
column total is bounded by (k-2) plus the sum of row k-1, and row k-1 is
already complete when column k is placed, so columns can be filled left to
right.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import comb

from .exactcore import catalan
from .transfer import GuardExceeded

ENUM_MAX_N = 8
ENUM_MAX_N_HEAVY = 9
KOSTANT_MAX_N = 7


class TriArray:
    """
    Immutable triangular array. ``rows[r]`` holds row i = r + 2, whose
    entries are columns 2..i.
    """

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows):
        self.n = n
        self.rows = tuple(tuple(int(v) for v in row) for row in rows)
        if len(self.rows) != max(n - 2, 0):
            raise ValueError(f"expected {max(n - 2, 0)} rows for n={n}")
        for r, row in enumerate(self.rows):
            if len(row) != r + 1:
                raise ValueError(f"row {r + 2} should have {r + 1} entries")

    @classmethod
    def parse(cls, text: str) -> "TriArray":
        """Rows separated by ';', entries by whitespace: "0; 0 1; 0 0 2"."""
        rows = [[int(v) for v in chunk.split()] for chunk in text.split(";") if chunk.strip()]
        return cls(len(rows) + 2, rows)

    @classmethod
    def zeros(cls, n: int) -> "TriArray":
        return cls(n, [[0] * (r + 1) for r in range(max(n - 2, 0))])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i - 2][j - 2]

    def column(self, k: int) -> list[int]:
        return [self[i, k] for i in range(k, self.n)]

    def row_sum(self, i: int) -> int:
        return sum(self.rows[i - 2]) if i >= 2 else 0

    def __eq__(self, other):
        return isinstance(other, TriArray) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return f"TriArray.parse({self.format_inline()!r})"

    def format_inline(self) -> str:
        return "; ".join(" ".join(map(str, row)) for row in self.rows)

    def format_triangle(self) -> str:
        width = max((len(str(v)) for row in self.rows for v in row), default=1)
        return "\n".join(" ".join(str(v).rjust(width) for v in row) for row in self.rows)


def column_bound(alpha: TriArray, k: int) -> int:
    return (k - 2) + alpha.row_sum(k - 1)


def is_valid(alpha: TriArray) -> bool:
    if any(v < 0 for row in alpha.rows for v in row):
        return False
    return all(sum(alpha.column(k)) <= column_bound(alpha, k) for k in range(2, alpha.n))


def _check_enum_guard(n: int, heavy: bool):
    limit = ENUM_MAX_N_HEAVY if heavy else ENUM_MAX_N
    if n > limit:
        raise GuardExceeded(f"enumeration at n={n} above limit {limit}")


def _compositions(total_max, length):
    """All length-tuples of nonnegative ints with sum <= total_max, ascending lex."""
    if length == 0:
        yield ()
        return
    for v in range(total_max + 1):
        for rest in _compositions(total_max - v, length - 1):
            yield (v,) + rest


def enumerate_arrays(n: int, zero_prefix_cols: int = 1, heavy: bool = False):
    """
    Stream the arrays whose first ``zero_prefix_cols`` columns vanish, columns
    filled left to right, each column top to bottom with values ascending.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if zero_prefix_cols < 1:
        raise ValueError("zero_prefix_cols must be at least 1")
    _check_enum_guard(n, heavy)
    if n <= 3:
        yield TriArray.zeros(n)
        return
    grid = [[0] * (r + 1) for r in range(n - 2)]

    def rec(k):
        if k == n:
            yield TriArray(n, grid)
            return
        height = n - k
        if k - 1 <= zero_prefix_cols:
            options = [(0,) * height]
        else:
            bound = (k - 2) + sum(grid[k - 3]) if k >= 3 else 0
            options = _compositions(bound, height)
        for col in options:
            for off, v in enumerate(col):
                grid[k - 2 + off][k - 2] = v
            yield from rec(k + 1)

    yield from rec(2)


def tight_count(alpha: TriArray) -> int:
    return sum(1 for k in range(2, alpha.n)
               if sum(alpha.column(k)) == column_bound(alpha, k))


def equality_profile(alpha: TriArray) -> int:
    """Number of column constraints met with equality."""
    if not is_valid(alpha):
        raise ValueError("array violates the column constraints")
    return tight_count(alpha)


def count_by_profile(n: int, j: int = 1) -> dict[int, int]:
    """
    {number of tight constraints: number of arrays} over arrays whose first j
    columns are zero, without materialising them.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if n == 2:
        return {0: 1}

    @lru_cache(maxsize=None)
    def rec(k, prev_sum, partial):
        # columns 2..k-1 are placed; prev_sum is the full sum of row k-1 and
        # partial[r] the running sum of row k + r
        if k == n:
            return ((0, 1),)
        height = n - k
        bound = (k - 2) + prev_sum
        if k - 1 <= j:
            cols = [(0,) * height]
        else:
            cols = _compositions(bound, height)
        out = Counter()
        for col in cols:
            tight = 1 if sum(col) == bound else 0
            sums = tuple(p + v for p, v in zip(partial, col))
            for tc, c in rec(k + 1, sums[0], sums[1:]):
                out[tc + tight] += c
        return tuple(sorted(out.items()))

    return dict(rec(2, 0, (0,) * (n - 2)))


def count_arrays(n: int, j: int = 1) -> int:
    """Number of valid arrays whose first j columns vanish."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return sum(count_by_profile(n, j).values())


def narayana(m: int, k: int) -> int:
    if m <= 0 or k < 1 or k > m:
        return 0
    return comb(m, k) * comb(m, k - 1) // m


def profile_counts(n: int, heavy: bool = False) -> dict[int, int]:
    """D_{n,k} by direct enumeration."""
    return dict(sorted(Counter(tight_count(a) for a in enumerate_arrays(n, heavy=heavy)).items()))


def check_narayana_refinement(n: int, enumerate_: bool = False) -> dict:
    """
    Compare D_{n,k} with (C_0 ... C_{n-3}) * Narayana(n-2, k). The counts come
    from the counting DP, or from full enumeration when ``enumerate_``.
    """
    counts = profile_counts(n) if enumerate_ else count_by_profile(n)
    divisor = 1
    for i in range(n - 2):
        divisor *= catalan(i)
    quotients = {k: Fraction(v, divisor) for k, v in counts.items()}
    expected = {k: narayana(n - 2, k) for k in range(1, n - 1)}
    ok = all(quotients.get(k, 0) == expected[k] for k in expected) and set(counts) <= set(expected)
    return {"n": n, "counts": counts, "divisor": divisor,
            "quotients": quotients, "expected": expected, "ok": ok}


def array_product_formula(n: int, j: int) -> Fraction:
    """prod_{i=j}^{n-3} C(n+i-1, 2i) / (2i+1); empty product is 1."""
    out = Fraction(1)
    for i in range(j, n - 2):
        out *= Fraction(comb(n + i - 1, 2 * i), 2 * i + 1)
    return out


def check_array_product_formula(n: int, j: int) -> bool:
    return array_product_formula(n, j) == count_arrays(n, j)


def kostant_target(n: int) -> tuple:
    """Coordinates of a_1 + 3 a_2 + ... + C(n,2) a_{n-1} in e_1..e_n."""
    return tuple(range(1, n)) + (-comb(n, 2),)


def kostant_count(n: int, target=None, force: bool = False) -> int:
    """
    Number of ways to write ``target`` (default the weight above) as a
    nonnegative integer combination of e_i - e_j, i < j. Processes nodes left
    to right; each node ships its whole surplus to later nodes.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if n > KOSTANT_MAX_N and not force:
        raise GuardExceeded(f"Kostant count at n={n} above limit {KOSTANT_MAX_N}")
    b = tuple(target) if target is not None else kostant_target(n)
    if len(b) != n or sum(b) != 0:
        return 0

    @lru_cache(maxsize=None)
    def rec(i, inflow):
        # inflow[r] = amount already routed into node i + r
        if i == n - 1:
            return 1 if b[i] + inflow[0] == 0 else 0
        surplus = b[i] + inflow[0]
        if surplus < 0:
            return 0
        total = 0
        later = inflow[1:]
        for split in _exact_compositions(surplus, n - 1 - i):
            total += rec(i + 1, tuple(x + y for x, y in zip(later, split)))
        return total

    return rec(0, (0,) * n)


def _exact_compositions(total, length):
    if length == 1:
        yield (total,)
        return
    for v in range(total + 1):
        for rest in _exact_compositions(total - v, length - 1):
            yield (v,) + rest

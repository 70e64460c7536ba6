"""
Independent lattice-point counters for dilates of P_n and its faces.

Points of t*P_n are staircase arrays: n rows, row i holding min(i+1, n)
nonnegative integers, every row and column summing to t. A face is given by
cells forced to zero.
"""
from __future__ import annotations

import itertools
from collections import Counter
from functools import lru_cache
from dataclasses import dataclass
from math import factorial

from .transfer import GuardExceeded


def row_length(n: int, i: int) -> int:
    return min(i + 1, n)


@dataclass(frozen=True)
class FaceSpec:
    n: int
    forced_zeros: frozenset = frozenset()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        zs = frozenset((int(r), int(s)) for r, s in self.forced_zeros)
        for r, s in zs:
            if not (1 <= r <= self.n and 1 <= s <= row_length(self.n, r)):
                raise ValueError(f"cell ({r},{s}) lies outside the staircase for n={self.n}")
        object.__setattr__(self, "forced_zeros", zs)

    @classmethod
    def polytope(cls, n: int) -> "FaceSpec":
        return cls(n)

    def key(self):
        return sorted(self.forced_zeros)


def _check_guard(spec: FaceSpec, t: int, force: bool):
    if t < 0:
        raise ValueError("t must be nonnegative")
    if not force and spec.n > 4 and t > 4:
        raise GuardExceeded(f"brute force at n={spec.n}, t={t} exceeds desk scale")


def staircase_arrays(spec: FaceSpec, t: int, positive: bool = False, force: bool = False):
    """
    Yield every staircase array (tuple of row tuples) with row and column sums
    t, respecting forced zeros. ``positive`` demands every entry >= 1.
    """
    _check_guard(spec, t, force)
    n = spec.n
    lo = 1 if positive else 0

    options = {}
    for i in range(1, n + 1):
        zero_at = [s - 1 for r, s in spec.forced_zeros if r == i]
        options[i] = [combo for combo in itertools.product(range(lo, t + 1), repeat=row_length(n, i))
                      if sum(combo) == t and not any(combo[c] for c in zero_at)]

    def rec(i, colsum, rows):
        if i > n:
            if all(c == t for c in colsum):
                yield tuple(rows)
            return
        for combo in options[i]:
            new = list(colsum)
            ok = True
            for j, v in enumerate(combo):
                new[j] += v
                if new[j] > t:
                    ok = False
                    break
            if ok:
                rows.append(combo)
                yield from rec(i + 1, new, rows)
                rows.pop()

    yield from rec(1, [0] * n, [])


def count_points_bruteforce(spec: FaceSpec, t: int, force: bool = False) -> int:
    return sum(1 for _ in staircase_arrays(spec, t, force=force))


def _multiset_takes(value, mult, budget):
    """
    For ``mult`` interchangeable columns with residual ``value``, yield
    (amount_taken, leftover_residuals, ordered_ways).
    """
    def rec(y, left, spent, counts):
        if left == 0:
            yield spent, counts
            return
        if y == 0:
            yield spent, counts + ((0, left),)
            return
        for c in range(min(left, (budget - spent) // y), -1, -1):
            yield from rec(y - 1, left - c, spent + c * y, counts + ((y, c),) if c else counts)

    top = min(value, budget)
    for spent, counts in rec(top, mult, 0, ()):
        ways = factorial(mult)
        leftovers = []
        for y, c in counts:
            ways //= factorial(c)
            if value - y:
                leftovers.extend([value - y] * c)
        yield spent, leftovers, ways


@lru_cache(maxsize=None)
def _takes_cached(value, mult, budget):
    return tuple((spent, tuple(left), ways)
                 for spent, left, ways in _multiset_takes(value, mult, budget))


def _row_step(free, tagged, new_cols, zero_cols, t):
    """
    One row of the DP. ``free`` is a sorted tuple of interchangeable residuals,
    ``tagged`` a tuple of (column, residual) pairs kept positional, and
    ``new_cols`` the columns opening in this row (residual t each). Columns in
    ``zero_cols`` must receive 0. Returns Counter of (free', tagged') -> ways,
    where tagged' still carries every positional column (caller re-tags).
    Partial states are merged after each group of equal residuals.
    """
    positional = list(tagged) + [(c, t) for c in new_cols]
    caps = [0 if col in zero_cols else res for col, res in positional]
    groups = sorted(Counter(free).items())
    # capacity still available after each stage, for pruning
    rest = [sum(caps)]
    for value, mult in reversed(groups):
        rest.append(rest[-1] + value * mult)
    rest.reverse()
    # partial state: (budget left, leftover free residuals, placed) -> ways
    partial = Counter({(t, (), ()): 1})
    for g, (value, mult) in enumerate(groups):
        nxt = Counter()
        for (budget, left, placed), ways in partial.items():
            for spent, leftovers, w in _takes_cached(value, mult, budget):
                if budget - spent <= rest[g + 1]:
                    key = (budget - spent, tuple(sorted(left + leftovers)), placed)
                    nxt[key] += ways * w
        partial = nxt
    for k, (col, res) in enumerate(positional):
        last = k == len(positional) - 1
        after = sum(caps[k + 1:])
        nxt = Counter()
        for (budget, left, placed), ways in partial.items():
            if last:
                # the final column takes whatever budget remains
                if budget <= caps[k]:
                    nxt[(0, left, placed + ((col, res - budget),))] += ways
                continue
            for y in range(min(caps[k], budget) + 1):
                if budget - y <= after:
                    nxt[(budget - y, left, placed + ((col, res - y),))] += ways
        partial = nxt
    out = Counter()
    for (budget, left, placed), ways in partial.items():
        if budget == 0:
            out[(left, placed)] += ways
    return out


DP_STATE_LIMIT = 2_000_000


def count_points_dp(spec: FaceSpec, t: int, state_limit: int = DP_STATE_LIMIT) -> int:
    """
    Row-by-row count. Untouched columns are tracked only as a multiset of
    owed sums; a column with a forced zero in some later row stays positional
    until that row is done.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    n = spec.n
    if t == 0:
        return 1
    zeros_by_row: dict = {}
    for r, s in spec.forced_zeros:
        zeros_by_row.setdefault(r, set()).add(s)
    last_zero_row = {}
    for r, s in spec.forced_zeros:
        last_zero_row[s] = max(r, last_zero_row.get(s, 0))

    states = Counter({((), ()): 1})
    opened = 0
    for i in range(1, n + 1):
        if i == n and n > 1 and row_length(n, n - 1) == n:
            # the last row must pay every residual exactly, and its sum is t
            # automatically; only its forced zeros can rule a state out
            zero_cols = zeros_by_row.get(n, set())
            return sum(ways for (free, tagged), ways in states.items()
                       if all(res == 0 for col, res in tagged if col in zero_cols))
        length = row_length(n, i)
        new_cols = list(range(opened + 1, length + 1))
        opened = length
        zero_cols = zeros_by_row.get(i, set())
        nxt = Counter()
        for (free, tagged), ways in states.items():
            for (free2, placed), w in _row_step(free, tagged, new_cols, zero_cols, t).items():
                keep = []
                extra = list(free2)
                for col, res in placed:
                    if last_zero_row.get(col, 0) > i:
                        keep.append((col, res))
                    elif res:
                        extra.append(res)
                nxt[(tuple(sorted(extra)), tuple(sorted(keep)))] += ways * w
        states = nxt
        if len(states) > state_limit:
            raise MemoryError(f"DP state count {len(states)} exceeds limit {state_limit}")
    # all residuals must be paid off
    return states.get(((), ()), 0)


def count_interior(n: int, t: int, force: bool = False) -> int:
    """Strictly positive staircase arrays with row and column sums t."""
    if t < 1:
        raise ValueError("t must be positive")
    # shift: entries >= 1, so subtract 1 from every cell and count the
    # nonnegative arrays with row sums t - len(row) and column sums t - colcells
    return _count_shifted(n, t, force)


def _count_shifted(n: int, t: int, force: bool) -> int:
    if not force and n > 5 and t > interior_bound(n) + 6:
        raise GuardExceeded(f"interior count n={n}, t={t} exceeds desk scale")
    lengths = [row_length(n, i) for i in range(1, n + 1)]
    col_cells = [sum(1 for L in lengths if L >= j) for j in range(1, n + 1)]
    row_target = [t - L for L in lengths]
    col_target = [t - c for c in col_cells]
    if min(row_target + col_target) < 0:
        return 0
    # positional DP over rows; state = tuple of residual column sums
    states = Counter({tuple(col_target): 1})
    for i, L in enumerate(lengths):
        nxt = Counter()
        for res, ways in states.items():
            for combo in _compositions_bounded(row_target[i], res[:L]):
                new = tuple(r - c for r, c in zip(res[:L], combo)) + res[L:]
                nxt[new] += ways
        states = nxt
    return states.get(tuple([0] * n), 0)


def _compositions_bounded(total, caps):
    k = len(caps)
    out = []

    def rec(j, rest, acc):
        if j == k - 1:
            if rest <= caps[j]:
                out.append(acc + (rest,))
            return
        for v in range(min(rest, caps[j]) + 1):
            rec(j + 1, rest - v, acc + (v,))

    rec(0, total, ())
    return out


def count_interior_bruteforce(n: int, t: int, force: bool = False) -> int:
    return sum(1 for _ in staircase_arrays(FaceSpec(n), t, positive=True, force=force))


def interior_bound(n: int) -> int:
    """Smallest t that can admit a strictly positive array: max (k+1)(n-k)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return max((k + 1) * (n - k) for k in range(n))


def zero_range(n: int) -> int:
    """Number of consecutive negative dilations -1..-z where e(P_n, -t) = 0."""
    m, odd = divmod(n, 2)
    if odd:
        return (m + 1) ** 2 - 1
    return m * (m + 1) - 1

"""
Partition-indexed transfer matrices for counting lattice points of t*P_n.

For a fixed dilation t, the column sums still owed by the partially filled
staircase array form a partition of t. Filling one more row moves that
partition to another one; ``M[pi][sigma]`` counts the ways to do so. The
value e(P_n, t) is the ``(t)`` component of ``M^(n-1)`` applied to the
all-ones vector.
"""
from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial

from .exactcore import UniPoly, char_poly, matvec

Partition = tuple  # parts in ascending order

MAX_T_DEFAULT = 30


class GuardExceeded(RuntimeError):
    """Raised when a request is above the configured desk-scale limit."""


def partitions_of(t: int) -> list[Partition]:
    """
    All partitions of t with parts ascending, ordered reverse-lexicographically
    on their descending form, so ``(t,)`` comes first and ``(1,)*t`` last.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    out = []

    def rec(remaining, cap, desc):
        if remaining == 0:
            out.append(tuple(reversed(desc)))
            return
        for part in range(min(remaining, cap), 0, -1):
            desc.append(part)
            rec(remaining - part, part, desc)
            desc.pop()

    rec(t, t, [])
    return out


@dataclass(frozen=True)
class PartitionIndex:
    t: int
    parts: tuple
    ordinal: dict = field(compare=False, repr=False)

    @classmethod
    def of(cls, t: int, max_length: int | None = None) -> "PartitionIndex":
        ps = partitions_of(t)
        if max_length is not None:
            ps = [p for p in ps if len(p) <= max_length]
        return cls(t, tuple(ps), {p: i for i, p in enumerate(ps)})

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, p):
        return self.ordinal[tuple(p)]


def y_tuples(xs, t):
    """Lexicographic enumeration of 0 <= y_i <= x_i with sum t."""
    k = len(xs)
    suffix = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        suffix[i] = suffix[i + 1] + xs[i]
    y = [0] * k

    def rec(i, rest):
        if i == k:
            if rest == 0:
                yield tuple(y)
            return
        lo = max(0, rest - suffix[i + 1])
        for v in range(lo, min(xs[i], rest) + 1):
            y[i] = v
            yield from rec(i + 1, rest - v)

    yield from rec(0, t)


@lru_cache(maxsize=None)
def _group_choices(value, mult, budget):
    """
    Ways to take y_1..y_mult (each <= value, total <= budget) from ``mult``
    equal residuals of size ``value``, grouped by the multiset of y's.
    Returns tuples (taken, leftover_residuals, ways) where ways is the
    multinomial count of ordered assignments.
    """
    out = []
    fm = factorial(mult)

    def rec(v, left, spent, counts):
        if left == 0 or v == 0:
            ways = fm // factorial(left)
            zs = [value] * left
            for y, c in counts:
                ways //= factorial(c)
                zs.extend([value - y] * c)
            out.append((spent, tuple(z for z in zs if z), ways))
            return
        for c in range(min(left, (budget - spent) // v), -1, -1):
            rec(v - 1, left - c, spent + c * v, counts + [(v, c)] if c else counts)

    rec(min(value, budget), mult, 0, [])
    return tuple(out)


def transitions(x_parts, t):
    """
    Counter sigma -> number of y-tuples sending the column residuals
    ``x_parts`` to sigma. Equal residuals are handled together and identical
    partial states are merged after each group.
    """
    groups = sorted(Counter(x_parts).items(), reverse=True)
    caps = [0] * (len(groups) + 1)
    for g in range(len(groups) - 1, -1, -1):
        caps[g] = caps[g + 1] + groups[g][0] * groups[g][1]
    states = {(t, ()): 1}
    for g, (value, mult) in enumerate(groups):
        nxt: dict = {}
        for (budget, zs), ways in states.items():
            for taken, left, w in _group_choices(value, mult, budget):
                rest = budget - taken
                if rest > caps[g + 1]:
                    continue
                key = (rest, zs + left)
                nxt[key] = nxt.get(key, 0) + ways * w
        states = nxt
    out = Counter()
    for (budget, zs), ways in states.items():
        if budget == 0:
            out[tuple(sorted(zs))] += ways
    return out


@dataclass(frozen=True)
class TransferMatrix:
    t: int
    index: PartitionIndex
    entries: tuple  # tuple of row tuples

    def rows(self):
        return [list(r) for r in self.entries]

    def to_json(self):
        return {
            "t": self.t,
            "partitions": [list(p) for p in self.index.parts],
            "matrix": [[str(v) for v in row] for row in self.entries],
        }


_cache: dict = {}
_cache_lock = threading.Lock()


def build_transfer_matrix(t: int, max_length: int | None = None,
                          force: bool = False) -> TransferMatrix:
    """
    Transfer matrix for dilation t. With ``max_length`` only partitions of at
    most that many parts are kept (enough for e(P_n, t) with n <= max_length).
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t > MAX_T_DEFAULT and not force:
        raise GuardExceeded(f"t={t} exceeds default limit {MAX_T_DEFAULT}")
    key = (t, max_length)
    with _cache_lock:
        hit = _cache.get(key)
    if hit is not None:
        return hit
    index = PartitionIndex.of(t, max_length)
    d = len(index)
    rows = []
    for pi in index.parts:
        row = [0] * d
        for sigma, c in transitions(pi + (t,), t).items():
            j = index.ordinal.get(sigma)
            if j is not None:
                row[j] += c
        rows.append(tuple(row))
    tm = TransferMatrix(t, index, tuple(rows))
    with _cache_lock:
        return _cache.setdefault(key, tm)


def build_transfer_matrix_naive(t: int) -> TransferMatrix:
    """Same matrix, filled by walking every y-tuple one at a time."""
    index = PartitionIndex.of(t)
    d = len(index)
    rows = []
    for pi in index.parts:
        xs = pi + (t,)
        row = [0] * d
        for y in y_tuples(xs, t):
            sigma = tuple(sorted(x - v for x, v in zip(xs, y) if x - v))
            row[index[sigma]] += 1
        rows.append(tuple(row))
    return TransferMatrix(t, index, tuple(rows))


def _apply_power(tm: TransferMatrix, n: int) -> list[int]:
    vec = [1] * len(tm.index)
    for _ in range(n - 1):
        vec = matvec(tm.entries, vec)
    return vec


def evaluate_e(n: int, t: int, force: bool = False) -> int:
    """e(P_n, t) from the full transfer matrix; e(P_1, t) = 1."""
    if n < 1 or t < 0:
        raise ValueError("need n >= 1 and t >= 0")
    if n == 1:
        return 1
    tm = build_transfer_matrix(t, force=force)
    return _apply_power(tm, n)[tm.index[(t,)] if t else 0]


def evaluate_e_truncated(n: int, t: int, force: bool = False) -> int:
    """
    e(P_n, t) using only partitions with at most n parts. A row never grows
    the number of nonzero residuals by more than one, so after n-1 steps the
    longer partitions cannot feed back into the ``(t)`` component.
    """
    if n < 1 or t < 0:
        raise ValueError("need n >= 1 and t >= 0")
    if n == 1:
        return 1
    tm = build_transfer_matrix(t, max_length=n, force=force)
    return _apply_power(tm, n)[tm.index[(t,)] if t else 0]


def char_poly_ft(t: int, force: bool = False) -> UniPoly:
    """Characteristic polynomial f_t of the full transfer matrix."""
    return char_poly(build_transfer_matrix(t, force=force).entries)


def recursion_values(t: int, n_max: int) -> list[int]:
    """
    e(P_n, t) for n = 1..n_max generated from the f_t recursion, seeded with
    the first p(t) values from the matrix.
    """
    f = char_poly_ft(t)
    deg = f.degree
    seeds = [evaluate_e(n, t) for n in range(1, min(deg, n_max) + 1)]
    vals = list(seeds)
    # lambda^deg = -sum c_i lambda^i
    cs = [int(c) for c in f.coeffs]
    while len(vals) < n_max:
        nxt = -sum(cs[i] * vals[len(vals) - deg + i] for i in range(deg))
        vals.append(nxt)
    return vals

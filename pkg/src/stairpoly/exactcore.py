"""
Exact arithmetic kernels: rational polynomials, integer determinants,
characteristic polynomials, Smith-form lattice indices and Sturm root counts.

Integers are plain Python ints and rationals are ``fractions.Fraction``; both
are arbitrary precision and always kept in lowest terms.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class UniPoly:
    """
    Dense univariate polynomial with rational coefficients, lowest degree
    first. The zero polynomial has an empty coefficient list.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, c=1) -> "UniPoly":
        return cls([0] * degree + [c])

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "UniPoly":
        p = cls([lead])
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * Fraction(other) for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = UniPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, divisor: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = divisor.degree
        lead = divisor.lead
        if len(rem) <= dd:
            return UniPoly(), UniPoly(rem)
        quot = [Fraction(0)] * (len(rem) - dd)
        for k in range(len(rem) - dd - 1, -1, -1):
            q = rem[k + dd] / lead
            quot[k] = q
            if q:
                for i, c in enumerate(divisor.coeffs):
                    rem[k + i] -= q * c
        return UniPoly(quot), UniPoly(rem[:dd])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def divides(self, other: "UniPoly") -> bool:
        """True when ``self`` divides ``other`` exactly."""
        return other.divmod(self)[1].is_zero()

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def to_json(self) -> list[str]:
        return [rat_to_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, items: Sequence[str]) -> "UniPoly":
        return cls([rat_from_str(s) for s in items])

    def __repr__(self):
        return f"UniPoly({self.to_json()})"

    def pretty(self, var: str = "t") -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = rat_to_str(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{rat_to_str(mag)}*{mono}"
            terms.append((sign, body))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def rat_to_str(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rat_from_str(s: str) -> Fraction:
    return Fraction(s)


def poly_interpolate(points: Sequence[tuple]) -> UniPoly:
    """
    Newton divided-difference interpolation in exact rationals. Returns the
    unique polynomial of degree < len(points) through every point.
    """
    if not points:
        raise ValueError("interpolation needs at least one point")
    xs = [Fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate abscissa in interpolation data")
    table = [Fraction(y) for _, y in points]
    m = len(xs)
    newton = [table[0]]
    for level in range(1, m):
        table = [(table[i + 1] - table[i]) / (xs[i + level] - xs[i])
                 for i in range(m - level)]
        newton.append(table[0])
    # Horner-style expansion of the Newton form
    poly = UniPoly([newton[-1]])
    for k in range(m - 2, -1, -1):
        poly = poly * UniPoly([-xs[k], 1]) + newton[k]
    return poly


def _check_square(m: Sequence[Sequence[int]]) -> int:
    d = len(m)
    if d == 0 or any(len(row) != d for row in m):
        raise ValueError("matrix must be square and non-empty")
    return d


def det_exact(m: Sequence[Sequence[int]]) -> int:
    """Signed determinant by Bareiss fraction-free elimination."""
    d = _check_square(m)
    a = [list(map(int, row)) for row in m]
    sign = 1
    prev = 1
    for k in range(d - 1):
        if a[k][k] == 0:
            for r in range(k + 1, d):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, d):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, d):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[d - 1][d - 1]


def char_poly(m: Sequence[Sequence[int]]) -> UniPoly:
    """
    det(lambda*I - M) via Faddeev-LeVerrier. Only integer divisions by
    1..d occur and they are exact, so the whole computation stays in ints.
    """
    d = _check_square(m)
    a = [list(map(int, row)) for row in m]
    coeffs = [0] * (d + 1)
    coeffs[d] = 1
    # M_k = A*M_{k-1} + c_{d-k+1} I ; c_{d-k} = -tr(A M_k) / k
    mk = [[0] * d for _ in range(d)]
    for k in range(1, d + 1):
        c_prev = coeffs[d - k + 1]
        for i in range(d):
            mk[i][i] += c_prev
        am = matmul(a, mk)
        tr = sum(am[i][i] for i in range(d))
        q, r = divmod(-tr, k)
        if r:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        coeffs[d - k] = q
        mk = am
    return UniPoly(coeffs)


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def smith_invariants(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix (any shape)."""
    a = [list(map(int, r)) for r in rows]
    if not a:
        return []
    nr, nc = len(a), len(a[0])
    out = []
    t = 0
    while t < min(nr, nc):
        # choose the smallest nonzero entry in the remaining block as pivot
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, pi, pj = best
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, nr):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, nc):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if done:
                # pivot must divide the whole remaining block
                bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move a smaller remainder into pivot position
            best = None
            for i in range(t, nr):
                v = a[i][t]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, "r")
            for j in range(t, nc):
                v = a[t][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), j, "c")
            _, k, kind = best
            if kind == "r":
                a[t], a[k] = a[k], a[t]
            else:
                for row in a:
                    row[t], row[k] = row[k], row[t]
        out.append(abs(a[t][t]))
        t += 1
    return out


def rank_int(rows: Sequence[Sequence[int]]) -> int:
    return len(smith_invariants(rows))


def lattice_index(vectors: Sequence[Sequence[int]], rank: int | None = None) -> int:
    """
    Index of the lattice generated by ``vectors`` inside the saturated lattice
    (their real span intersected with the integer lattice).
    """
    inv = smith_invariants(vectors)
    if not inv:
        raise ValueError("generating set spans the zero lattice")
    if rank is not None and len(inv) < rank:
        raise ValueError(f"generating set has rank {len(inv)}, expected {rank}")
    out = 1
    for f in inv:
        out *= f
    return out


def _sturm_sequence(p: UniPoly) -> list[UniPoly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        seq.append(-r)
    return seq[:-1]


def _sign_changes(values) -> int:
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def positive_real_root_count(p: UniPoly) -> int:
    """Distinct real roots in (0, inf), by a Sturm sequence."""
    if p.is_zero():
        raise ValueError("zero polynomial has no finite root count")
    # strip a root at zero so the left endpoint is not a root
    cs = list(p.coeffs)
    while cs and cs[0] == 0:
        cs.pop(0)
    q = UniPoly(cs)
    if q.degree <= 0:
        return 0
    seq = _sturm_sequence(q)
    at_zero = _sign_changes(s(0) for s in seq)
    at_inf = _sign_changes(s.lead for s in seq)
    return at_zero - at_inf


def binomial(n: int, k: int) -> int:
    from math import comb
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def catalan(i: int) -> int:
    return binomial(2 * i, i) // (i + 1)


def gcd_list(xs: Iterable[int]) -> int:
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g

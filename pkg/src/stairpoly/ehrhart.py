"""
Ehrhart polynomials of P_n by interpolation.

The count e(P_n, t) is known exactly for small t from the transfer matrix,
and vanishes at t = -1, ..., -z(n) because no strictly positive array exists
for those dilations. Together with e(P_n, 0) = 1 this pins down the
degree C(n, 2) polynomial with far fewer positive evaluations.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, lcm

from .cache import ResultCache, make_key
from .exactcore import UniPoly, catalan, gcd_list, poly_interpolate
from .latticeoracle import zero_range
from .transfer import GuardExceeded, evaluate_e_truncated

MAX_N_DEFAULT = 10
MAX_N_HEAVY = 12


class VerificationError(ArithmeticError):
    """An exact identity that must hold failed (signals an arithmetic bug)."""


@dataclass
class EhrhartResult:
    n: int
    poly: UniPoly
    relative_volume: int
    evaluation_points: list = field(default_factory=list)
    zero_range_used: int = 0

    def to_json(self):
        return {
            "n": self.n,
            "degree": self.poly.degree,
            "coefficients": self.poly.to_json(),
            "relative_volume": str(self.relative_volume),
            "evaluation_points": [[t, str(v)] for t, v in self.evaluation_points],
            "zero_range_used": self.zero_range_used,
        }


def count_e(n: int, t: int, cache: ResultCache | None = None) -> int:
    thunk = lambda: evaluate_e_truncated(n, t, force=True)
    if cache is None:
        return thunk()
    return cache.get_or_compute(make_key("e", n, t), thunk)


def _check_n(n: int, heavy: bool):
    if n < 2:
        raise ValueError("n must be at least 2")
    limit = MAX_N_HEAVY if heavy else MAX_N_DEFAULT
    if n > limit:
        raise GuardExceeded(f"n={n} above limit {limit}" + ("" if heavy else " (use heavy mode)"))


def ehrhart_poly(n: int, heavy: bool = False, cache: ResultCache | None = None) -> EhrhartResult:
    _check_n(n, heavy)
    d = comb(n, 2)
    z = zero_range(n)
    points = [(Fraction(-t), Fraction(0)) for t in range(1, z + 1)]
    evals = [(0, 1)]
    t = 1
    while len(points) + len(evals) < d + 1:
        evals.append((t, count_e(n, t, cache)))
        t += 1
    points += [(Fraction(a), Fraction(b)) for a, b in evals]
    poly = poly_interpolate(points)
    held_out = t
    expect = count_e(n, held_out, cache)
    if poly(held_out) != expect:
        raise VerificationError(
            f"e(P_{n},{held_out}) interpolates to {poly(held_out)}, counted {expect}")
    evals.append((held_out, expect))
    vol = poly.lead * factorial(d)
    if vol.denominator != 1:
        raise VerificationError(f"non-integral relative volume {vol} for n={n}")
    return EhrhartResult(n, poly, int(vol), evals, z)


def relative_volume(n: int, heavy: bool = False, cache: ResultCache | None = None) -> int:
    return ehrhart_poly(n, heavy, cache).relative_volume


def catalan_product(n: int) -> int:
    """Product of the first n-1 Catalan numbers."""
    if n < 2:
        raise ValueError("n must be at least 2")
    out = 1
    for i in range(n - 1):
        out *= catalan(i)
    return out


def check_volume_formula(n: int, heavy: bool = False, cache: ResultCache | None = None) -> bool:
    return relative_volume(n, heavy, cache) == catalan_product(n)


def rising_product(k: int) -> UniPoly:
    """(t+1)(t+2)...(t+k)."""
    return UniPoly.from_roots(range(-1, -k - 1, -1))


def linear_factor_run(poly: UniPoly) -> int:
    """Largest k with (t+1)...(t+k) dividing ``poly``."""
    k = 0
    while poly(-(k + 1)) == 0:
        k += 1
    return k


@dataclass
class FactorReport:
    n: int
    rising_length: int
    expected_rising_length: int
    rising_divides: bool
    square_divides: bool
    cofactor: UniPoly
    scale: Fraction

    @property
    def ok(self):
        return self.rising_divides and self.square_divides

    def pretty(self) -> str:
        body = " * ".join(
            p for p in [
                "(t+3)^2" if self.square_divides else "",
                f"({self.cofactor.pretty()})" if self.cofactor.degree > 0 else "",
                f"prod_(i=1..{self.rising_length})(t+i)",
            ] if p)
        return f"e(P_{self.n},t) = {self.scale} * {body}"


def factor_checks(n: int, heavy: bool = False, cache: ResultCache | None = None,
                  result: EhrhartResult | None = None) -> FactorReport:
    """
    Test that (t+1)...(t+z) divides e(P_n, t) and that (t+3)^2 divides the
    quotient; report the remaining cofactor with integer content removed.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    res = result or ehrhart_poly(n, heavy, cache)
    poly = res.poly
    expected = zero_range(n)
    k = linear_factor_run(poly)
    rising = rising_product(expected)
    rising_ok = rising.divides(poly)
    quot = poly // rising if rising_ok else poly
    sq = UniPoly([3, 1]) ** 2
    square_ok = sq.divides(quot)
    rest = quot // sq if square_ok else quot
    # scale so the cofactor has coprime integer coefficients, positive lead
    den = 1
    for c in rest.coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in rest.coeffs]
    g = gcd_list(ints) or 1
    cof = UniPoly([Fraction(c, g) for c in ints])
    scale = Fraction(g, den)
    return FactorReport(n, k, expected, rising_ok, square_ok, cof, scale)

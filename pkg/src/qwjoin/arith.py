"""Exact integer and quadratic-irrational helpers behind the spectral certificates.

Everything here is exact: inputs are Python ints (or floats that are
reconstructed into rationals before use) and all arithmetic stays in the
64-bit range or raises IntegerOverflowError. Floating point enters only at
the reconstruction boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import IntegerOverflowError

INT64_MAX = 2**63 - 1


def _check64(value: int) -> int:
    if abs(value) > INT64_MAX:
        raise IntegerOverflowError(f"integer {value} exceeds the 64-bit range")
    return value


def nu2(a: int) -> int:
    """Exponent of 2 in a nonzero integer.

    Raises ValueError for 0, where the valuation is undefined; callers that
    can meet 0 must special-case it (a zero difference means a repeated
    eigenvalue, which the support construction already rules out).
    """
    a = int(a)
    if a == 0:
        raise ValueError("nu2 is undefined at 0")
    a = abs(a)
    return (a & -a).bit_length() - 1


def squarefree_part(d: int) -> tuple[int, int]:
    """Split d > 0 as d = s * f**2 with s squarefree. Returns (s, f)."""
    d = int(d)
    if d <= 0:
        raise ValueError(f"squarefree_part requires a positive integer, got {d}")
    _check64(d)
    s, f = 1, 1
    remaining = d
    p = 2
    while p * p <= remaining:
        if remaining % p == 0:
            exp = 0
            while remaining % p == 0:
                remaining //= p
                exp += 1
            f *= p ** (exp // 2)
            if exp % 2:
                s *= p
        p += 1 if p == 2 else 2
    if remaining > 1:
        s *= remaining
    _check64(s)
    _check64(f)
    return s, f


def reconstruct_rational(
    x: float, max_denominator: int = 10**6, tol: float = 1e-7
) -> Fraction | None:
    """Best rational approximation of x, accepted only if it is tol-close.

    Uses the continued-fraction convergents behind Fraction.limit_denominator.
    Returns None when no fraction with denominator <= max_denominator lands
    within tol, so callers can distinguish "irrational as far as we can tell"
    from a genuine reconstruction.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_denominator < 1:
        raise ValueError("max_denominator must be at least 1")
    x = float(x)
    if not math.isfinite(x):
        return None
    if abs(x) > INT64_MAX:
        raise IntegerOverflowError(f"value {x} exceeds the 64-bit range")
    candidate = Fraction(x).limit_denominator(max_denominator)
    if abs(x - candidate) <= tol:
        return candidate
    return None


def gcd_all(values) -> int:
    """gcd of an iterable of integers; gcd of all zeros is 0 by convention."""
    values = [int(v) for v in values]
    if not values:
        raise ValueError("gcd_all requires at least one value")
    g = 0
    for v in values:
        _check64(v)
        g = math.gcd(g, abs(v))
    return g


def lcm_all(values) -> int:
    """lcm of an iterable of nonzero integers, with 64-bit overflow checks."""
    values = [int(v) for v in values]
    if not values:
        raise ValueError("lcm_all requires at least one value")
    result = 1
    for v in values:
        if v == 0:
            raise ValueError("lcm_all is undefined when a value is 0")
        _check64(v)
        result = result * abs(v) // math.gcd(result, abs(v))
        _check64(result)
    return result


@dataclass(frozen=True)
class QuadraticEigenvalue:
    """An eigenvalue written as (a + b*sqrt(delta)) / 2 with integer a, b.

    delta is squarefree and >= 1. delta == 1 encodes a plain integer, so a + b
    must be even in that case. Families produced by classification share a
    single (a, delta) pair across all members, which is what the transfer
    certificates rely on.
    """

    a: int
    b: int
    delta: int

    def __post_init__(self) -> None:
        _check64(self.a)
        _check64(self.b)
        if self.delta < 1:
            raise ValueError("delta must be a positive integer")
        s, f = squarefree_part(self.delta)
        if f != 1:
            raise ValueError(f"delta={self.delta} is not squarefree")
        if self.delta == 1 and (self.a + self.b) % 2:
            raise ValueError("delta=1 requires a + b even so the value is an integer")

    @property
    def value(self) -> float:
        return (self.a + self.b * math.sqrt(self.delta)) / 2.0

    @property
    def is_integer(self) -> bool:
        if self.delta == 1:
            return True
        return self.b == 0 and self.a % 2 == 0

    def as_integer(self) -> int:
        if self.delta == 1:
            return (self.a + self.b) // 2
        if self.b == 0 and self.a % 2 == 0:
            return self.a // 2
        raise ValueError(f"{self} is not an integer eigenvalue")


def classify_eigenvalues(values, tol: float = 1e-7) -> list[QuadraticEigenvalue] | None:
    """Recognize a full list of eigenvalues as integers or one quadratic family.

    All-or-nothing: either every value is matched (shared a and delta for the
    quadratic case, delta > 1 squarefree) or None is returned. Each
    reconstruction must land within 1e-9 * max(1, |value|) of its source.
    """
    values = [float(v) for v in values]
    if not values:
        raise ValueError("classify_eigenvalues requires at least one value")

    def close(quad: QuadraticEigenvalue, x: float) -> bool:
        return abs(quad.value - x) <= 1e-9 * max(1.0, abs(x))

    # Integer recognition first.
    as_int: list[QuadraticEigenvalue] = []
    for v in values:
        r = reconstruct_rational(v, 10**6, tol)
        if r is None or r.denominator != 1:
            as_int = []
            break
        quad = QuadraticEigenvalue(a=2 * int(r), b=0, delta=1)
        if not close(quad, v):
            as_int = []
            break
        as_int.append(quad)
    if as_int:
        return as_int

    # Quadratic family: candidate shared a from pair sums (i == j covers the
    # lone rational member a/2).
    candidates: set[int] = set()
    for i in range(len(values)):
        for j in range(i, len(values)):
            r = reconstruct_rational(values[i] + values[j], 10**6, tol)
            if r is not None and r.denominator == 1:
                candidates.add(int(r))
    for a in sorted(candidates, key=lambda c: (abs(c), c)):
        family: list[QuadraticEigenvalue] = []
        delta: int | None = None
        ok = True
        for v in values:
            x = 2.0 * v - a
            if abs(x) <= tol * max(1.0, abs(v)):
                family.append(None)  # placeholder: b = 0 member
                continue
            y = x * x
            ry = reconstruct_rational(y, 10**6, tol * max(1.0, y))
            if ry is None or ry.denominator != 1 or ry <= 0:
                ok = False
                break
            s, f = squarefree_part(int(ry))
            if s == 1:
                ok = False  # would be rational, and integer recognition failed
                break
            if delta is None:
                delta = s
            elif delta != s:
                ok = False
                break
            family.append(QuadraticEigenvalue(a=a, b=f if x > 0 else -f, delta=s))
        if not ok or delta is None:
            continue
        result = [
            QuadraticEigenvalue(a=a, b=0, delta=delta) if q is None else q
            for q in family
        ]
        if all(close(q, v) for q, v in zip(result, values)):
            return result
    return None

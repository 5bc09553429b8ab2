"""Exact integer arithmetic: totients, Hiller's Phi and cyclotomic polynomials.

Rationals are plain :class:`fractions.Fraction` values, which are always kept
in lowest terms with a positive denominator.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInputError

ReducedFraction = Fraction


def _require_positive(n: int, name: str = "n") -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InvalidInputError(f"{name} must be a positive integer, got {n!r}")


def gcd_lcm(a: int, b: int) -> tuple[int, int]:
    _require_positive(a, "a")
    _require_positive(b, "b")
    g = math.gcd(a, b)
    return g, a // g * b


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``n`` by trial division, as ``{p: k}``."""
    _require_positive(n)
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return isinstance(n, int) and n >= 2 and factorize(n) == {n: 1}


def divisors(n: int) -> list[int]:
    _require_positive(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def euler_phi(n: int) -> int:
    _require_positive(n)
    result = 1
    for p, k in factorize(n).items():
        result *= (p - 1) * p ** (k - 1)
    return result


def hiller_phi(n: int) -> int:
    """Additive totient: sum of phi over the prime-power parts of ``n``.

    The part 2 is dropped when ``n = 2q`` with ``q >= 3`` odd, since a
    primitive ``2q``-th root of unity costs no more than a ``q``-th one.
    """
    _require_positive(n)
    parts = factorize(n)
    total = sum((p - 1) * p ** (k - 1) for p, k in parts.items())
    if parts.get(2) == 1 and n > 2:
        total -= 1
    return total


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial, coefficients lowest degree first."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        cs = [int(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [0]
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPolynomial":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def is_monic(self) -> bool:
        return self.leading == 1

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(x + y for x, y in zip(a, b))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    def __pow__(self, k: int) -> "IntPolynomial":
        result = IntPolynomial([1])
        for _ in range(k):
            result = result * self
        return result

    def divmod_monic(self, divisor: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Long division by a monic divisor; stays inside the integers."""
        if not divisor.is_monic():
            raise InvalidInputError("divisor must be monic")
        rem = list(self.coeffs)
        dd = divisor.degree
        if self.degree < dd:
            return IntPolynomial([0]), self
        quot = [0] * (self.degree - dd + 1)
        for i in range(self.degree - dd, -1, -1):
            c = rem[i + dd]
            quot[i] = c
            if c:
                for j, b in enumerate(divisor.coeffs):
                    rem[i + j] -= c * b
        return IntPolynomial(quot), IntPolynomial(rem[:dd] or [0])

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("x" if k == 1 else f"x^{k}")
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def product(polys: Iterable[IntPolynomial]) -> IntPolynomial:
    result = IntPolynomial([1])
    for p in polys:
        result = result * p
    return result


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> IntPolynomial:
    """The n-th cyclotomic polynomial, by dividing x^n - 1 by the lower ones."""
    _require_positive(n)
    poly = IntPolynomial.monomial(n) - IntPolynomial([1])
    for d in divisors(n)[:-1]:
        poly, rem = poly.divmod_monic(cyclotomic_poly(d))
        assert rem.is_zero()
    return poly


@lru_cache(maxsize=None)
def _factor_candidates(deg: int) -> tuple[int, ...]:
    """All n with phi(n) <= deg; phi(n) >= sqrt(n/2) puts them below 2 deg^2."""
    limit = 2 * deg * deg
    phi = list(range(limit + 1))
    for p in range(2, limit + 1):
        if phi[p] == p:
            for m in range(p, limit + 1, p):
                phi[m] -= phi[m] // p
    return tuple(n for n in range(1, limit + 1) if phi[n] <= deg)


def cyclotomic_factorization(p: IntPolynomial) -> dict[int, int] | None:
    """Write a monic ``p`` as a product of cyclotomic polynomials.

    Returns ``{n: multiplicity}`` or ``None`` when ``p`` is not such a
    product.  A floating-point evaluation at ``exp(2 pi i / n)`` only skips
    candidates whose value is far from zero; every factor that is kept is
    confirmed by exact division.
    """
    if not p.is_monic():
        raise InvalidInputError(f"polynomial must be monic: {p}")
    if p.degree < 1:
        raise InvalidInputError("polynomial must have degree >= 1")
    candidates = np.array(_factor_candidates(p.degree))
    roots = np.exp(2j * np.pi / candidates)
    values = np.polyval(np.array(p.coeffs[::-1], dtype=float), roots)
    slack = 1e-6 * (p.degree + 1) * sum(abs(c) for c in p.coeffs)
    found: Counter[int] = Counter()
    rest = p
    for n in candidates[np.abs(values) <= slack].tolist():
        phi_n = cyclotomic_poly(n)
        while rest.degree >= phi_n.degree:
            q, r = rest.divmod_monic(phi_n)
            if not r.is_zero():
                break
            found[n] += 1
            rest = q
        if rest.degree == 0:
            break
    if rest.coeffs != (1,):
        return None
    return dict(sorted(found.items()))


def cyclotomic_product(orders: dict[int, int] | Sequence[tuple[int, int]]) -> IntPolynomial:
    items = orders.items() if isinstance(orders, dict) else orders
    return product(cyclotomic_poly(n) ** m for n, m in items)

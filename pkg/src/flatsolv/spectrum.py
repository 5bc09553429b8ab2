"""Rotation spectra of one-parameter subgroups and the integer-conjugacy test.

A block ``theta(a t0)`` of the one-parameter group is stored as the turn
fraction ``f = a t0 / 2pi``.  Only rational turns are representable, so the
necessary condition "every eigenvalue is a root of unity" holds by
construction; what remains to decide is whether the eigenvalues fill whole
Galois orbits.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import InvalidInputError
from .exact_arith import IntPolynomial, cyclotomic_poly, euler_phi, product

HALF = Fraction(1, 2)


def fold(f: Fraction) -> Fraction:
    """Map a turn fraction in (0, 1) to its conjugate-invariant rep in (0, 1/2]."""
    return min(f, 1 - f)


@dataclass(frozen=True)
class RotationSpectrum:
    """Centre dimension plus folded rotation turns, sorted descending."""

    center_dim: int = 0
    fractions: tuple[Fraction, ...] = ()

    def __init__(self, center_dim: int = 0, fractions: Iterable = ()):
        if not isinstance(center_dim, int) or center_dim < 0:
            raise InvalidInputError(f"center_dim must be a non-negative integer, got {center_dim!r}")
        folded = []
        for raw in fractions:
            f = Fraction(raw)
            if not 0 < f < 1:
                raise InvalidInputError(f"rotation fraction must lie strictly between 0 and 1, got {f}")
            folded.append(fold(f))
        object.__setattr__(self, "center_dim", center_dim)
        object.__setattr__(self, "fractions", tuple(sorted(folded, reverse=True)))

    @property
    def ambient_dim(self) -> int:
        return self.center_dim + 2 * len(self.fractions)

    @property
    def group_dim(self) -> int:
        return self.ambient_dim + 1

    def __str__(self) -> str:
        fs = ",".join(f"{f.numerator}/{f.denominator}" for f in self.fractions)
        return f"s={self.center_dim};f={fs}"


@dataclass(frozen=True)
class OrbitCertificate:
    """Galois orbits ``(q, multiplicity)`` and the resulting integer char poly."""

    orbits: tuple[tuple[int, int], ...]
    char_poly: IntPolynomial


@dataclass(frozen=True)
class Obstruction:
    kind: str  # "IncompleteOrbit" or "IrrationalAngle"
    q: int | None = None
    missing: tuple[int, ...] = ()
    message: str = field(default="", compare=False)

    def __str__(self) -> str:
        if self.kind == "IncompleteOrbit":
            res = ",".join(map(str, self.missing))
            return f"IncompleteOrbit: q={self.q}, missing primitive residues {{{res}}}"
        return f"{self.kind}: {self.message}"


def eigenvalue_multiset(sp: RotationSpectrum) -> tuple[int, Counter]:
    """Eigenvalues of the rotation matrix as residue labels.

    Returns the multiplicity of the eigenvalue 1 and a counter over labels
    ``(p, q)`` standing for ``exp(2 pi i p / q)``.
    """
    labels: Counter = Counter()
    for f in sp.fractions:
        p, q = f.numerator, f.denominator
        labels[(p, q)] += 1
        labels[(q - p, q)] += 1
    return sp.center_dim, labels


def orbit_check(sp: RotationSpectrum) -> OrbitCertificate | Obstruction:
    """Decide whether the rotation matrix is conjugate to an integer matrix.

    This holds exactly when, for each order q, every primitive q-th root of
    unity occurs among the eigenvalues with the same multiplicity: the
    characteristic polynomial is then a product of cyclotomic polynomials.
    """
    _, labels = eigenvalue_multiset(sp)
    by_q: dict[int, Counter] = {}
    for (p, q), m in labels.items():
        by_q.setdefault(q, Counter())[p] = m
    orbits = []
    for q in sorted(by_q):
        counts = by_q[q]
        residues = [k for k in range(1, q) if math.gcd(k, q) == 1]
        top = max(counts.values())
        missing = tuple(k for k in residues if counts.get(k, 0) < top)
        if missing:
            return Obstruction("IncompleteOrbit", q=q, missing=missing)
        orbits.append((q, top))
    char_poly = IntPolynomial([-1, 1]) ** sp.center_dim * product(
        cyclotomic_poly(q) ** m for q, m in orbits
    )
    return OrbitCertificate(tuple(orbits), char_poly)


def is_certified(sp: RotationSpectrum) -> bool:
    return isinstance(orbit_check(sp), OrbitCertificate)


def spectrum_order(sp: RotationSpectrum) -> int:
    """Order of the rotation matrix: lcm of the turn denominators."""
    return math.lcm(1, *(f.denominator for f in sp.fractions))


_R2, _R3, _R5 = math.sqrt(2), math.sqrt(3), math.sqrt(5)

# Closed forms of cos(2 pi f) for every folded turn with phi(q) <= 4.
_COSINES = {
    Fraction(0): ("1", 1.0),
    Fraction(1, 12): ("sqrt(3)/2", _R3 / 2),
    Fraction(1, 10): ("(1+sqrt(5))/4", (1 + _R5) / 4),
    Fraction(1, 8): ("sqrt(2)/2", _R2 / 2),
    Fraction(1, 6): ("1/2", 0.5),
    Fraction(1, 5): ("(-1+sqrt(5))/4", (-1 + _R5) / 4),
    Fraction(1, 4): ("0", 0.0),
    Fraction(3, 10): ("(1-sqrt(5))/4", (1 - _R5) / 4),
    Fraction(1, 3): ("-1/2", -0.5),
    Fraction(3, 8): ("-sqrt(2)/2", -_R2 / 2),
    Fraction(2, 5): ("-(1+sqrt(5))/4", -(1 + _R5) / 4),
    Fraction(5, 12): ("-sqrt(3)/2", -_R3 / 2),
    Fraction(1, 2): ("-1", -1.0),
}


def exact_cosine(f: Fraction) -> tuple[str, float]:
    """Closed form of ``cos(2 pi f)`` and its value, for phi(denominator) <= 4."""
    f = Fraction(f) % 1
    f = min(f, 1 - f)
    try:
        return _COSINES[f]
    except KeyError:
        raise InvalidInputError(f"no closed form stored for cos(2pi*{f})") from None


@dataclass(frozen=True)
class AdmissiblePair:
    """Two turns ``(a t0, b t0) / 2pi`` folded into [0, 1/2], first >= second."""

    first: Fraction
    second: Fraction

    @property
    def cosines(self) -> tuple[tuple[str, float], tuple[str, float]]:
        return exact_cosine(self.first), exact_cosine(self.second)

    def spectrum(self) -> RotationSpectrum:
        nonzero = [f for f in (self.first, self.second) if f]
        return RotationSpectrum(2 * (2 - len(nonzero)), nonzero)


def admissible_pairs_dim5() -> list[AdmissiblePair]:
    """All pairs of rotation turns on R^4 whose matrix is integer-conjugate.

    A zero turn (``a t0`` in ``2 pi Z``) is allowed here and is turned into a
    centre direction before the orbit test.  Denominators up to
    ``2 * 4**2 = 32`` are searched, which covers every q with phi(q) <= 4.
    """
    turns = sorted({Fraction(p, q) for q in range(1, 33) for p in range(0, q // 2 + 1)})
    pairs = []
    for i, f1 in enumerate(turns):
        for f2 in turns[: i + 1]:
            pair = AdmissiblePair(f1, f2)
            if is_certified(pair.spectrum()):
                pairs.append(pair)
    return pairs


def certified_spectra(ambient_dim: int, max_den: int) -> Iterable[RotationSpectrum]:
    """Every certified spectrum of the given ambient dimension, by packing orbits.

    Chooses how many rotation blocks of each denominator q <= max_den to use,
    always taking whole orbits; the remaining directions go to the centre.
    """
    orbit_blocks = []
    for q in range(2, max_den + 1):
        if q == 2:
            orbit_blocks.append((q, (HALF,)))
        elif euler_phi(q) <= ambient_dim:
            orbit_blocks.append(
                (q, tuple(Fraction(p, q) for p in range(1, q // 2 + 1) if math.gcd(p, q) == 1))
            )

    def rec(idx: int, room: int, chosen: list[Fraction]):
        if idx == len(orbit_blocks):
            yield RotationSpectrum(room, chosen)
            return
        _, block = orbit_blocks[idx]
        cost = 2 * len(block)
        copies = 0
        while copies * cost <= room:
            yield from rec(idx + 1, room - copies * cost, chosen + list(block) * copies)
            copies += 1

    yield from rec(0, ambient_dim, [])

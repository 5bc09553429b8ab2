"""Holonomy groups of flat solvmanifolds and witnesses realizing a given group."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import InvalidInputError, ObstructionError
from .exact_arith import factorize, hiller_phi, is_prime
from .lie_model import AlmostAbelianBlock, E2Factor, SolvmanifoldSpec, TorusFactor, spec_dimension
from .spectrum import Obstruction, RotationSpectrum, orbit_check, spectrum_order


@dataclass(frozen=True, order=True)
class FiniteAbelianGroup:
    """Finite abelian group in invariant-factor form ``d1 | d2 | ... | dk``."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        factors = tuple(int(d) for d in self.invariant_factors)
        if any(d < 2 for d in factors):
            raise InvalidInputError(f"invariant factors must be >= 2: {factors}")
        if any(b % a for a, b in zip(factors, factors[1:])):
            raise InvalidInputError(f"invariant factors must form a divisibility chain: {factors}")
        object.__setattr__(self, "invariant_factors", factors)

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "FiniteAbelianGroup":
        """Canonical form of ``Z_{n1} + Z_{n2} + ...`` (orders of 1 are dropped)."""
        powers: dict[int, list[int]] = {}
        for n in orders:
            if n < 1:
                raise InvalidInputError(f"cyclic order must be positive, got {n}")
            for p, k in factorize(n).items():
                powers.setdefault(p, []).append(p**k)
        width = max((len(v) for v in powers.values()), default=0)
        factors = [1] * width
        for p, pk in powers.items():
            pk.sort(reverse=True)
            for i, x in enumerate(pk):
                factors[width - 1 - i] *= x
        return cls(tuple(factors))

    @classmethod
    def cyclic(cls, n: int) -> "FiniteAbelianGroup":
        return cls.from_orders([n])

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1

    def primary_decomposition(self) -> list[int]:
        """Prime-power orders of the primary cyclic summands, sorted."""
        return sorted(p**k for d in self.invariant_factors for p, k in factorize(d).items())

    def __add__(self, other: "FiniteAbelianGroup") -> "FiniteAbelianGroup":
        return FiniteAbelianGroup.from_orders(self.invariant_factors + other.invariant_factors)

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "e"
        return "+".join(f"Z{d}" for d in self.invariant_factors)


TRIVIAL = FiniteAbelianGroup()


def _require_certified(sp: RotationSpectrum) -> None:
    verdict = orbit_check(sp)
    if isinstance(verdict, Obstruction):
        raise ObstructionError(verdict)


def holonomy_of_block(sp: RotationSpectrum) -> FiniteAbelianGroup:
    """Cyclic of order lcm of the rotation orders; trivial for a torus."""
    _require_certified(sp)
    return FiniteAbelianGroup.cyclic(spectrum_order(sp))


def holonomy_of_spec(spec: SolvmanifoldSpec) -> FiniteAbelianGroup:
    orders = []
    for block in spec.blocks:
        if isinstance(block, AlmostAbelianBlock):
            orders.extend(holonomy_of_block(block.spectrum).invariant_factors)
        elif isinstance(block, E2Factor):
            orders.append(block.fraction.denominator)
    return FiniteAbelianGroup.from_orders(orders)


def prime_power_witness(p: int, k: int, doubled: bool = False) -> RotationSpectrum:
    """Spectrum whose eigenvalues are all primitive ``p^k``-th roots (or ``2p^k``-th).

    Gives holonomy ``Z_{p^k}`` (or ``Z_{2p^k}``) in dimension ``phi(p^k) + 1``.
    """
    if not is_prime(p) or not isinstance(k, int) or k < 1:
        raise InvalidInputError(f"need a prime p and k >= 1, got p={p}, k={k}")
    if p == 2 and doubled:
        raise InvalidInputError("the doubled witness needs an odd prime")
    if p == 2 and k < 2:
        raise InvalidInputError("Z_2 has no witness of dimension phi(2) + 1; use k >= 2")
    pk = p**k
    if doubled:
        fractions = [Fraction(l, 2 * pk) for l in range(1, pk, 2) if l % p]
    else:
        fractions = [Fraction(l, pk) for l in range(1, (pk - 1) // 2 + 1) if l % p]
    return RotationSpectrum(0, fractions)


def merge_blocks(spectra: Iterable[RotationSpectrum]) -> RotationSpectrum:
    """One spectrum with all rotations and centres of the inputs combined."""
    center, fractions = 0, []
    for sp in spectra:
        _require_certified(sp)
        center += sp.center_dim
        fractions.extend(sp.fractions)
    return RotationSpectrum(center, fractions)


def min_dim_solv(n: int) -> int:
    """Least dimension of a flat solvmanifold with holonomy ``Z_n``."""
    if not isinstance(n, int) or n < 2:
        raise InvalidInputError(f"n must be an integer >= 2, got {n!r}")
    return 3 if n == 2 else hiller_phi(n) + 1


def minimal_cyclic_witness(n: int) -> RotationSpectrum:
    """Almost abelian spectrum of dimension ``min_dim_solv(n)`` with holonomy ``Z_n``.

    One prime-power block per prime; when 2 divides ``n`` exactly once, the
    factor 2 is absorbed into the first odd prime's block at no extra cost.
    """
    if not isinstance(n, int) or n < 2:
        raise InvalidInputError(f"n must be an integer >= 2, got {n!r}")
    if n == 2:
        return RotationSpectrum(0, [Fraction(1, 2)])
    parts = factorize(n)
    twos = parts.pop(2, 0)
    blocks = []
    if twos >= 2:
        blocks.append(prime_power_witness(2, twos))
    for i, (p, k) in enumerate(sorted(parts.items())):
        blocks.append(prime_power_witness(p, k, doubled=(twos == 1 and i == 0)))
    return merge_blocks(blocks)


def abelian_witness(group: FiniteAbelianGroup, kahler: bool = False) -> SolvmanifoldSpec:
    """Product of minimal cyclic witnesses, one per primary summand of ``group``.

    With ``kahler`` set, a circle factor evens out an odd total dimension.
    """
    blocks = [AlmostAbelianBlock(minimal_cyclic_witness(q)) for q in group.primary_decomposition()]
    if not blocks:
        blocks = [TorusFactor(1)]
    spec = SolvmanifoldSpec(blocks)
    if kahler and spec_dimension(spec) % 2:
        spec = SolvmanifoldSpec(blocks + [TorusFactor(1)])
    return spec

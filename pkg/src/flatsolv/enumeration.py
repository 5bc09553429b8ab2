"""Possible holonomy groups of flat solvmanifolds in low dimensions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import NamedTuple

from .errors import InvalidInputError
from .holonomy import TRIVIAL, FiniteAbelianGroup, holonomy_of_block
from .lie_model import E2_ORDERS, AlmostAbelianBlock, E2Factor, SolvmanifoldSpec, TorusFactor
from .spectrum import RotationSpectrum, certified_spectra

COMPLETE_DIMS = range(3, 7)


def _witness_key(sp: RotationSpectrum) -> tuple:
    return tuple(sorted(sp.fractions))


def enumerate_almost_abelian(dim: int) -> dict[FiniteAbelianGroup, SolvmanifoldSpec]:
    """Holonomy groups of lattice quotients of ``R x| R^(dim-1)``, with witnesses.

    Certified spectra are generated by packing whole Galois orbits into
    ``dim - 1`` directions; the witness for each group is the spectrum with
    the lexicographically smallest sorted fraction list.
    """
    if not isinstance(dim, int) or dim < 3:
        raise InvalidInputError(f"dimension must be an integer >= 3, got {dim!r}")
    ambient = dim - 1
    best: dict[FiniteAbelianGroup, RotationSpectrum] = {}
    for sp in certified_spectra(ambient, 2 * ambient * ambient):
        group = holonomy_of_block(sp)
        if group not in best or _witness_key(sp) < _witness_key(best[group]):
            best[group] = sp
    return {g: SolvmanifoldSpec([AlmostAbelianBlock(sp)]) for g, sp in sorted(best.items())}


def enumerate_e2_products(n: int, center: int = 0) -> dict[FiniteAbelianGroup, SolvmanifoldSpec]:
    """Holonomies of ``T^center x E(2)^n`` quotients by product lattices."""
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError(f"number of E(2) factors must be >= 1, got {n!r}")
    if center < 0:
        raise InvalidInputError("center dimension must be non-negative")
    out: dict[FiniteAbelianGroup, SolvmanifoldSpec] = {}
    for orders in combinations_with_replacement(E2_ORDERS, n):
        group = FiniteAbelianGroup.from_orders(orders)
        if group in out:
            continue
        blocks: list = [E2Factor(Fraction(1, k)) for k in orders]
        if center:
            blocks.append(TorusFactor(center))
        out[group] = SolvmanifoldSpec(blocks)
    return dict(sorted(out.items()))


@dataclass(frozen=True)
class DimensionReport:
    dim: int
    almost_abelian_groups: frozenset
    product_groups: frozenset
    witnesses: dict = field(compare=False)

    @property
    def all_groups(self) -> frozenset:
        return self.almost_abelian_groups | self.product_groups


def dimension_report(dim: int) -> DimensionReport:
    """Every holonomy group of a flat solvmanifold of dimension 3 to 6.

    Up to dimension 5 every flat solvmanifold is an almost abelian quotient.
    In dimension 6 the ``E(2) x E(2)`` products add the non-cyclic sums, and
    the Kahler classification leaves nothing else (its one extra group, the
    dihedral group of order 8, needs first Betti number 0).
    """
    if dim not in COMPLETE_DIMS:
        raise InvalidInputError(f"completeness is only established for dimensions 3..6, got {dim}")
    almost = enumerate_almost_abelian(dim)
    products = enumerate_e2_products(2, 0) if dim == 6 else {}
    witnesses = dict(products)
    witnesses.update(almost)
    return DimensionReport(dim, frozenset(almost), frozenset(products), dict(sorted(witnesses.items())))


class PlatycosmRow(NamedTuple):
    wolf_name: str
    holonomy: FiniteAbelianGroup
    h1: str
    orientable: bool
    symbol: str
    cosm_name: str
    realizable: bool
    witness: SolvmanifoldSpec | None


def _e2_quotient(center: int, *fractions: str) -> SolvmanifoldSpec:
    return SolvmanifoldSpec([AlmostAbelianBlock(RotationSpectrum(center, fractions))])


def platycosm_table() -> list[PlatycosmRow]:
    """The ten compact flat 3-manifolds and which are ``Gamma \\ E(2)``.

    Non-orientable ones are excluded because solvmanifolds are parallelizable;
    the didicosm because almost abelian quotients have cyclic holonomy.
    """
    z2 = FiniteAbelianGroup.cyclic(2)
    z2z2 = FiniteAbelianGroup((2, 2))
    return [
        PlatycosmRow("G1", TRIVIAL, "Z+Z+Z", True, "c1", "torocosm", True, _e2_quotient(2)),
        PlatycosmRow("G2", z2, "Z+Z2+Z2", True, "c2", "dicosm", True, _e2_quotient(0, "1/2")),
        PlatycosmRow("G3", FiniteAbelianGroup.cyclic(3), "Z+Z3", True, "c3", "tricosm", True,
                     _e2_quotient(0, "1/3")),
        PlatycosmRow("G4", FiniteAbelianGroup.cyclic(4), "Z+Z2", True, "c4", "tetracosm", True,
                     _e2_quotient(0, "1/4")),
        PlatycosmRow("G5", FiniteAbelianGroup.cyclic(6), "Z", True, "c6", "hexacosm", True,
                     _e2_quotient(0, "1/6")),
        PlatycosmRow("G6", z2z2, "Z4+Z4", True, "c22", "didicosm", False, None),
        PlatycosmRow("B1", z2, "Z+Z+Z2", False, "+a1", "first amphicosm", False, None),
        PlatycosmRow("B2", z2, "Z+Z", False, "-a1", "second amphicosm", False, None),
        PlatycosmRow("B3", z2z2, "Z+Z2+Z2", False, "+a2", "first amphidicosm", False, None),
        PlatycosmRow("B4", z2z2, "Z+Z4", False, "-a2", "second amphidicosm", False, None),
    ]

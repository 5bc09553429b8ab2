"""Flat Lie algebras ``z + b + [g,g]`` and products of almost abelian blocks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import InvalidInputError
from .spectrum import RotationSpectrum, fold, is_certified

E2_ORDERS = (2, 3, 4, 6)


def _rank(rows: list[list[Fraction]]) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                factor = m[i][col] / m[rank][col]
                m[i] = [a - factor * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def inverse(matrix: list[list[Fraction]]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over the rationals."""
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if pivot is None:
            raise InvalidInputError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                factor = aug[i][col]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


@dataclass(frozen=True)
class FlatLieAlgebra:
    """Flat Lie algebra data.

    ``rotation_table[i][j]`` is ``alpha_j(e_i)``: the speed at which the i-th
    basis vector of ``b`` rotates the j-th plane of ``[g,g]``.
    """

    center_dim: int
    b_dim: int
    rotation_table: tuple[tuple[Fraction, ...], ...]

    def __init__(self, center_dim: int, b_dim: int, rotation_table: Iterable[Iterable] = ()):
        table = tuple(tuple(Fraction(x) for x in row) for row in rotation_table)
        if center_dim < 0 or b_dim < 0:
            raise InvalidInputError("dimensions must be non-negative")
        if len(table) != b_dim:
            raise InvalidInputError(f"rotation_table needs {b_dim} rows, got {len(table)}")
        widths = {len(row) for row in table}
        if len(widths) > 1:
            raise InvalidInputError("rotation_table rows have different lengths")
        planes = widths.pop() if widths else 0
        if b_dim > planes:
            raise InvalidInputError("dim b cannot exceed dim [g,g] / 2")
        if b_dim and _rank([list(r) for r in table]) < b_dim:
            raise InvalidInputError("rotation_table rows are linearly dependent (ad not injective on b)")
        object.__setattr__(self, "center_dim", center_dim)
        object.__setattr__(self, "b_dim", b_dim)
        object.__setattr__(self, "rotation_table", table)

    @property
    def planes(self) -> int:
        return len(self.rotation_table[0]) if self.rotation_table else 0

    @property
    def derived_comm_dim(self) -> int:
        return 2 * self.planes

    @property
    def dim(self) -> int:
        return self.center_dim + self.b_dim + self.derived_comm_dim


def is_almost_abelian(g: FlatLieAlgebra) -> bool:
    return g.b_dim == 1 and g.planes > 0


def split_e2(g: FlatLieAlgebra) -> tuple[int, int] | None:
    """Split ``g`` as ``z x e(2)^n`` when ``dim b = dim [g,g] / 2``.

    The new basis of ``b`` is dual to the forms ``alpha_j``; in it each basis
    vector rotates exactly one plane at unit speed.
    """
    if g.b_dim != g.planes:
        return None
    if g.b_dim == 0:
        return (g.center_dim, 0)
    if _rank([list(r) for r in g.rotation_table]) < g.b_dim:
        raise InvalidInputError("rotation_table rows are linearly dependent")
    change = dual_basis_change(g)
    assert matmul(change, [list(r) for r in g.rotation_table]) == identity(g.b_dim)
    return (g.center_dim, g.b_dim)


def dual_basis_change(g: FlatLieAlgebra) -> list[list[Fraction]]:
    """Rows give the dual basis ``e'_i = sum_k C[i][k] e_k`` with ``alpha_j(e'_i) = delta_ij``."""
    return inverse([list(r) for r in g.rotation_table])


def ad_on_derived(g: FlatLieAlgebra, change=None) -> list[list[list[Fraction]]]:
    """Matrices of ``ad`` of each basis vector of ``b`` on ``[g,g]``.

    With ``change`` given, the basis of ``b`` is first replaced by the rows
    of ``change`` (coordinates in the original basis).
    """
    rows = [list(r) for r in g.rotation_table]
    if change is not None:
        rows = matmul(change, rows)
    n = 2 * g.planes
    mats = []
    for row in rows:
        m = [[Fraction(0)] * n for _ in range(n)]
        for j, alpha in enumerate(row):
            m[2 * j][2 * j + 1] = alpha
            m[2 * j + 1][2 * j] = -alpha
        mats.append(m)
    return mats


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def spectrum_at(g: FlatLieAlgebra, t0: Fraction) -> RotationSpectrum:
    """Spectrum of ``exp(t0 ad_x)`` for an almost abelian ``g`` (t0 in turns)."""
    if not is_almost_abelian(g):
        raise InvalidInputError("spectrum_at needs an almost abelian algebra")
    center = g.center_dim
    fractions = []
    for speed in g.rotation_table[0]:
        f = (speed * Fraction(t0)) % 1
        if f == 0:
            center += 2
        else:
            fractions.append(fold(f))
    return RotationSpectrum(center, fractions)


@dataclass(frozen=True)
class AlmostAbelianBlock:
    spectrum: RotationSpectrum

    @property
    def dim(self) -> int:
        return self.spectrum.group_dim


@dataclass(frozen=True)
class E2Factor:
    fraction: Fraction

    def __post_init__(self):
        f = Fraction(self.fraction)
        if not 0 < f < 1:
            raise InvalidInputError(f"E(2) turn must lie strictly between 0 and 1, got {f}")
        object.__setattr__(self, "fraction", fold(f))

    @property
    def dim(self) -> int:
        return 3


@dataclass(frozen=True)
class TorusFactor:
    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise InvalidInputError("torus factor needs positive dimension")


Block = Union[AlmostAbelianBlock, E2Factor, TorusFactor]


@dataclass(frozen=True)
class SolvmanifoldSpec:
    blocks: tuple[Block, ...]

    def __init__(self, blocks: Iterable[Block]):
        blocks = tuple(blocks)
        for b in blocks:
            if isinstance(b, AlmostAbelianBlock):
                if not is_certified(b.spectrum):
                    raise InvalidInputError(f"block {b.spectrum} admits no lattice")
            elif isinstance(b, E2Factor):
                if b.fraction.denominator not in E2_ORDERS:
                    raise InvalidInputError(f"E(2) turn {b.fraction} admits no lattice")
            elif not isinstance(b, TorusFactor):
                raise InvalidInputError(f"unknown block {b!r}")
        object.__setattr__(self, "blocks", blocks)

    def __add__(self, other: "SolvmanifoldSpec") -> "SolvmanifoldSpec":
        return SolvmanifoldSpec(self.blocks + other.blocks)


def spec_dimension(spec: SolvmanifoldSpec) -> int:
    return sum(b.dim for b in spec.blocks)

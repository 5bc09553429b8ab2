"""Lattices ``Z t0 x| P Z^m`` in almost abelian groups ``R x| R^m``.

The integer model ``E`` is exact (Python ints); the conjugator ``P`` with
``P^-1 phi(t0) P = E`` is floating point and certified by its residual.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, ObstructionError
from .exact_arith import IntPolynomial, cyclotomic_poly
from .spectrum import HALF, Obstruction, OrbitCertificate, RotationSpectrum, orbit_check, spectrum_order

DEFAULT_TOL = 1e-9

IntMatrix = list[list[int]]


def rotation_matrix(sp: RotationSpectrum, t: float = 1.0) -> np.ndarray:
    """``Id_s`` followed by blocks ``[[cos, sin], [-sin, cos]]`` of angle ``2 pi f t``."""
    n = sp.ambient_dim
    m = np.eye(n)
    for i, f in enumerate(sp.fractions):
        k = sp.center_dim + 2 * i
        theta = 2 * math.pi * float(f) * t
        c, s = math.cos(theta), math.sin(theta)
        m[k : k + 2, k : k + 2] = [[c, s], [-s, c]]
    return m


def companion(poly: IntPolynomial) -> IntMatrix:
    """Companion matrix: ones on the subdiagonal, ``-coeffs`` in the last column."""
    n = poly.degree
    m = [[0] * n for _ in range(n)]
    for i in range(1, n):
        m[i][i - 1] = 1
    for i in range(n):
        m[i][n - 1] = -poly.coeffs[i]
    return m


def block_diag(blocks: list[IntMatrix]) -> IntMatrix:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    k = 0
    for b in blocks:
        for i, row in enumerate(b):
            out[k + i][k : k + len(row)] = row
        k += len(b)
    return out


def int_identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def int_matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def int_det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [row[:] for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def int_char_poly(m: IntMatrix) -> IntPolynomial:
    """Characteristic polynomial ``det(xI - M)`` by Faddeev-LeVerrier.

    For an integer matrix every intermediate matrix is integral and each
    trace is divisible by its step index, so everything stays in ``int``.
    """
    n = len(m)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = M (M_{k-1} + c_{n-k+1} I)
        inner = [row[:] for row in mk]
        for i in range(n):
            inner[i][i] += coeffs[n - k + 1]
        mk = int_matmul(m, inner)
        trace = sum(mk[i][i] for i in range(n))
        assert trace % k == 0
        coeffs[n - k] = -trace // k
    return IntPolynomial(coeffs)


def build_integer_model(cert: OrbitCertificate, s: int) -> IntMatrix:
    """``Id_s`` plus, for each orbit ``(q, m)``, m companion blocks of ``Phi_q``."""
    blocks = [int_identity(s)] if s else []
    for q, m in cert.orbits:
        blocks.extend([companion(cyclotomic_poly(q))] * m)
    return block_diag(blocks)


def matrix_order(e: IntMatrix, limit: int) -> int | None:
    """Smallest ``k <= limit`` with ``E^k = Id``, or None."""
    ident = int_identity(len(e))
    power = [row[:] for row in e]
    for k in range(1, limit + 1):
        if power == ident:
            return k
        power = int_matmul(power, e)
    return None


@dataclass(frozen=True)
class LatticeDescriptor:
    spectrum: RotationSpectrum
    order_d: int
    integer_model_E: IntMatrix
    conjugator_P: np.ndarray
    residual: float

    @property
    def generators(self) -> str:
        m = self.spectrum.ambient_dim
        return f"Z t0 x| P Z^{m} with t0 = 1 turn-unit (phi(t0) = rotation_matrix(spectrum, 1))"


def _null_space(a: np.ndarray, dim: int) -> np.ndarray:
    """The ``dim`` right-singular vectors with the smallest singular values."""
    _, sv, vh = np.linalg.svd(a)
    if dim and sv[-dim] > 1e-6:
        raise NumericalError(f"expected a {dim}-dimensional eigenspace, smallest singular values {sv[-dim:]}")
    return vh[len(sv) - dim :].conj().T


def _conjugator(sp: RotationSpectrum, e: IntMatrix) -> np.ndarray:
    """Columns matched to the rotation blocks: E Q = Q phi, hence P = Q^-1.

    For a complex eigenvector ``u + iv`` of ``E`` with eigenvalue
    ``exp(i theta)``, ``E [u v] = [u v] [[cos, sin], [-sin, cos]]``.
    Repeated eigenvalues take consecutive vectors of their eigenspace.
    """
    ef = np.array(e, dtype=float)
    n = len(e)
    cols: list[np.ndarray] = []
    if sp.center_dim:
        basis = _null_space(ef - np.eye(n), sp.center_dim).real
        cols.extend(basis.T)
    groups: dict = {}
    for f in sp.fractions:
        groups[f] = groups.get(f, 0) + 1
    spaces = {}
    for f, count in groups.items():
        if f == HALF:
            spaces[f] = list(_null_space(ef + np.eye(n), 2 * count).real.T)
        else:
            lam = complex(math.cos(2 * math.pi * f), math.sin(2 * math.pi * f))
            spaces[f] = list(_null_space(ef.astype(complex) - lam * np.eye(n), count).T)
    for f in sp.fractions:
        if f == HALF:
            cols.append(spaces[f].pop(0))
            cols.append(spaces[f].pop(0))
        else:
            w = spaces[f].pop(0)
            cols.append(w.real)
            cols.append(w.imag)
    q = np.column_stack(cols) if cols else np.zeros((0, 0))
    return np.linalg.inv(q)


def build_lattice(sp: RotationSpectrum, tol: float = DEFAULT_TOL) -> LatticeDescriptor:
    cert = orbit_check(sp)
    if isinstance(cert, Obstruction):
        raise ObstructionError(cert)
    e = build_integer_model(cert, sp.center_dim)
    d = spectrum_order(sp)
    if matrix_order(e, d) != d:
        raise NumericalError(f"integer model does not have order {d}")
    if sp.ambient_dim == 0:
        p = np.zeros((0, 0))
        residual = 0.0
    else:
        p = _conjugator(sp, e)
        phi = rotation_matrix(sp, 1.0)
        residual = float(np.max(np.abs(np.linalg.inv(p) @ phi @ p - np.array(e, dtype=float))))
    if residual > tol:
        raise NumericalError(f"conjugator residual {residual:.3e} exceeds tolerance {tol:.1e}")
    return LatticeDescriptor(sp, d, e, p, residual)


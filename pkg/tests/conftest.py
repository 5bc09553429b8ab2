import math
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

import numpy as np
import pytest
from hypothesis import strategies as st

from flatsolv.exact_arith import IntPolynomial, cyclotomic_factorization, divisors, euler_phi
from flatsolv.lattice import rotation_matrix
from flatsolv.spectrum import OrbitCertificate, RotationSpectrum, orbit_check


def folded_turns(max_den):
    """All turns p/q in (0, 1/2] with q <= max_den, ascending."""
    return sorted({Fraction(p, q) for q in range(2, max_den + 1) for p in range(1, q // 2 + 1)})


def numeric_oracle(sp: RotationSpectrum, tol: float = 1e-9) -> bool:
    """Float char poly of the rotation matrix is integral and cyclotomic."""
    if sp.ambient_dim == 0:
        return True
    coeffs = np.real(np.poly(rotation_matrix(sp, 1.0)))[::-1]
    rounded = np.rint(coeffs)
    if np.max(np.abs(coeffs - rounded)) > tol:
        return False
    return cyclotomic_factorization(IntPolynomial(int(c) for c in rounded)) is not None


def fraction_strategy(max_den=20):
    return st.integers(2, max_den).flatmap(
        lambda q: st.integers(1, q - 1).map(lambda p: Fraction(p, q))
    )


def spectra(max_den=20, max_rot=5, max_center=3):
    return st.builds(
        RotationSpectrum,
        st.integers(0, max_center),
        st.lists(fraction_strategy(max_den), max_size=max_rot),
    )


def lcm_of(values):
    return math.lcm(1, *values)


def brute_certified(max_ambient, max_den):
    """Every spectrum with ambient dim <= max_ambient and denominators <= max_den
    that passes orbit_check, found by exhaustive multiset enumeration."""
    turns = folded_turns(max_den)
    out = []
    for n in range(0, max_ambient // 2 + 1):
        for combo in combinations_with_replacement(turns, n):
            sp = RotationSpectrum(0, combo)
            if isinstance(orbit_check(sp), OrbitCertificate):
                out.extend(RotationSpectrum(s, combo) for s in range(0, max_ambient - 2 * n + 1))
    return out


def _poly_from_roots(roots):
    """Row-wise monic polynomial coefficients (highest degree first) from roots."""
    coeffs = np.ones((roots.shape[0], 1), dtype=complex)
    for j in range(roots.shape[1]):
        shifted = np.zeros((roots.shape[0], coeffs.shape[1] + 1), dtype=complex)
        shifted[:, :-1] = coeffs
        shifted[:, 1:] -= coeffs * roots[:, j : j + 1]
        coeffs = shifted
    return coeffs


def numeric_oracle_batch(center_dim, combos, tol=1e-9):
    """Vectorized ``numeric_oracle`` for many rotation multisets of equal size.

    Builds every rotation matrix, takes eigenvalues with LAPACK, expands the
    characteristic polynomial in floating point and hands the integral ones
    to the exact cyclotomic factorizer.
    """
    combos = list(combos)
    n = len(combos[0]) if combos else 0
    dim = center_dim + 2 * n
    if dim == 0:
        return [True] * len(combos)
    angles = 2 * np.pi * np.array([[float(f) for f in c] for c in combos]).reshape(len(combos), n)
    mats = np.zeros((len(combos), dim, dim))
    for i in range(center_dim):
        mats[:, i, i] = 1.0
    c, s = np.cos(angles), np.sin(angles)
    for j in range(n):
        a = center_dim + 2 * j
        mats[:, a, a] = mats[:, a + 1, a + 1] = c[:, j]
        mats[:, a, a + 1] = s[:, j]
        mats[:, a + 1, a] = -s[:, j]
    coeffs = np.real(_poly_from_roots(np.linalg.eigvals(mats)))[:, ::-1]
    rounded = np.rint(coeffs)
    integral = np.max(np.abs(coeffs - rounded), axis=1) <= tol
    cache = {}
    out = []
    for ok, row in zip(integral, rounded.astype(np.int64)):
        if not ok:
            out.append(False)
            continue
        key = tuple(int(x) for x in row)
        if key not in cache:
            cache[key] = cyclotomic_factorization(IntPolynomial(key)) is not None
        out.append(cache[key])
    return out


def brute_lcm_cover_cost(n):
    """Cheapest set of orders >= 2 with lcm n; a -1 eigenvalue costs two slots."""
    cost = lambda q: 2 if q == 2 else euler_phi(q)  # noqa: E731
    divs = [d for d in divisors(n) if d > 1]
    best = None
    for r in range(1, len(divs) + 1):
        for subset in combinations(divs, r):
            if math.lcm(*subset) == n:
                c = sum(cost(q) for q in subset)
                best = c if best is None else min(best, c)
    return best


ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and report.when == "call":
        detail = getattr(item, "acceptance_detail", {}).get("detail", "")
        if report.failed:
            detail = str(call.excinfo.value).splitlines()[0] if call.excinfo and str(call.excinfo.value) else "assertion failed"
        ACCEPTANCE_RESULTS[marker.args[0]] = (report.passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k.split()[0])):
        ok, detail = ACCEPTANCE_RESULTS[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {name}: {detail}")

"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line that is printed in the terminal summary,
so a plain ``pytest tests/test_acceptance.py`` shows the scorecard.
"""

import math
import random
from fractions import Fraction as F
from itertools import combinations_with_replacement

import pytest

from conftest import brute_certified, brute_lcm_cover_cost, folded_turns, numeric_oracle_batch
from flatsolv.enumeration import dimension_report, platycosm_table
from flatsolv.exact_arith import IntPolynomial, cyclotomic_poly, divisors, euler_phi, hiller_phi, product
from flatsolv.holonomy import (
    TRIVIAL,
    FiniteAbelianGroup,
    abelian_witness,
    holonomy_of_block,
    holonomy_of_spec,
    min_dim_solv,
    prime_power_witness,
)
from flatsolv.lattice import build_lattice, int_det, int_identity, int_matmul
from flatsolv.lie_model import spec_dimension
from flatsolv.spectrum import OrbitCertificate, RotationSpectrum, admissible_pairs_dim5, exact_cosine, orbit_check


@pytest.fixture
def record(request):
    """Mutable detail string reported next to the criterion's PASS/FAIL line."""
    state = {"detail": ""}
    request.node.acceptance_detail = state
    return state


def cyclic(*ns):
    return {FiniteAbelianGroup.cyclic(n) for n in ns}


def turn(numer, denom):
    """Angle numer*pi/denom as a turn fraction in [0, 1)."""
    return F(numer, 2 * denom) % 1


@pytest.mark.criterion("1 dimension-3 single rotations")
def test_criterion_01_single_rotations(record):
    # the eight t0 classes pi/2, 3pi/2, 2pi/3, 4pi/3, pi/3, 5pi/3, pi, 2pi
    classes = {turn(1, 2), turn(3, 2), turn(2, 3), turn(4, 3), turn(1, 3), turn(5, 3), turn(1, 1), turn(2, 1)}
    assert F(0) in classes and len(classes) == 8
    found = {F(0)} if isinstance(orbit_check(RotationSpectrum(0, [])), OrbitCertificate) else set()
    checked = 0
    for q in range(2, 121):
        for p in range(1, q):
            if math.gcd(p, q) == 1:
                checked += 1
                if isinstance(orbit_check(RotationSpectrum(0, [F(p, q)])), OrbitCertificate):
                    found.add(F(p, q))
    assert found == classes
    assert {f.denominator for f in found if f} == {2, 3, 4, 6}
    record["detail"] = f"{checked} reduced turns with q <= 120; admissible denominators {{2,3,4,6}}"


@pytest.mark.criterion("2 dimensions 3 and 4")
def test_criterion_02_dims_3_4(record):
    expected = cyclic(1, 2, 3, 4, 6)
    assert dimension_report(3).all_groups == expected
    assert dimension_report(4).all_groups == expected
    record["detail"] = "both equal {e,Z2,Z3,Z4,Z6}"


def case_table_pairs():
    """The four case tables for dimension 5 as unordered turn pairs."""
    ang = lambda *pairs: {turn(a, b) for a, b in pairs}  # noqa: E731
    eight = ang((1, 2), (3, 2), (2, 3), (4, 3), (1, 3), (5, 3), (1, 1), (2, 1))
    seven = eight - {F(0)}
    cases = set()
    cases |= {(F(0), b) for b in eight}                                   # case 1
    cases |= {(a, a) for a in seven} | {(a, 1 - a) for a in seven}        # case 2
    cases |= {(a, turn(1, 1)) for a in ang((1, 2), (3, 2), (2, 3), (4, 3), (1, 3), (5, 3))}
    cases |= {(a, b) for a in ang((1, 2), (3, 2)) for b in ang((2, 3), (4, 3))}
    cases |= {(a, b) for a in ang((1, 3), (5, 3)) for b in ang((1, 2), (3, 2), (2, 3), (4, 3))}
    for first, second in [((1, 4), (3, 4)), ((1, 5), (3, 5)), ((2, 5), (4, 5)), ((1, 6), (5, 6))]:
        mirror = lambda a, b: ang((a, b), (2 * b - a, b))  # noqa: E731  {x, 2pi - x}
        cases |= {(a, b) for a in mirror(*first) for b in mirror(*second)}  # case 4
    fold = lambda f: min(f, 1 - f)  # noqa: E731
    return {tuple(sorted((fold(a), fold(b)), reverse=True)) for a, b in cases}


@pytest.mark.criterion("3 dimension-5 admissible pairs")
def test_criterion_03_admissible_pairs(record):
    ours = {(p.first, p.second) for p in admissible_pairs_dim5()}
    expected = case_table_pairs()
    assert ours == expected
    sporadic = {p for p in ours if p[0].denominator not in (1, 2, 3, 4, 6)}
    assert {p[0].denominator for p in sporadic} | {p[1].denominator for p in sporadic} == {8, 10, 5, 12}
    closed = {
        F(1, 8): math.sqrt(2) / 2, F(3, 8): -math.sqrt(2) / 2,
        F(1, 10): (1 + math.sqrt(5)) / 4, F(3, 10): (1 - math.sqrt(5)) / 4,
        F(1, 5): (math.sqrt(5) - 1) / 4, F(2, 5): -(1 + math.sqrt(5)) / 4,
        F(1, 12): math.sqrt(3) / 2, F(5, 12): -math.sqrt(3) / 2,
    }
    worst = 0.0
    for f, value in closed.items():
        worst = max(worst, abs(math.cos(2 * math.pi * f) - value), abs(exact_cosine(f)[1] - value))
    assert worst <= 1e-12
    record["detail"] = f"{len(ours)} pairs equal the case tables; cosine error {worst:.1e}"


@pytest.mark.criterion("4 dimension 5")
def test_criterion_04_dim5(record):
    assert dimension_report(5).all_groups == cyclic(1, 2, 3, 4, 5, 6, 8, 10, 12)
    record["detail"] = "{e,Z2,Z3,Z4,Z5,Z6,Z8,Z10,Z12}"


PAIR_PRODUCTS = [(2, 2), (2, 3), (2, 4), (2, 6), (3, 3), (3, 4), (3, 6), (4, 4), (4, 6), (6, 6)]


@pytest.mark.criterion("5 dimension 6")
def test_criterion_05_dim6(record):
    r6 = dimension_report(6)
    assert r6.almost_abelian_groups == dimension_report(5).all_groups
    assert r6.product_groups == {FiniteAbelianGroup.from_orders(o) for o in PAIR_PRODUCTS}
    assert len(r6.product_groups) == 10
    # D8 is non-abelian; every holonomy produced here is a FiniteAbelianGroup
    assert all(isinstance(g, FiniteAbelianGroup) for g in r6.all_groups)
    record["detail"] = (f"9 almost-abelian, 10 products, {len(r6.all_groups)} distinct after "
                        "canonicalization, no D8")


@pytest.mark.criterion("6 prime-power witnesses")
def test_criterion_06_prime_powers(record):
    cases = [(2, 2, False), (2, 3, False), (3, 1, False), (3, 2, False), (5, 1, False), (7, 1, False),
             (3, 1, True), (5, 1, True), (7, 1, True)]
    for p, k, doubled in cases:
        sp = prime_power_witness(p, k, doubled)
        q = p**k
        order = 2 * q if doubled else q
        assert sp.group_dim == (p - 1) * p ** (k - 1) + 1
        cert = orbit_check(sp)
        assert isinstance(cert, OrbitCertificate) and cert.orbits == ((order, 1),)
        assert holonomy_of_block(sp) == FiniteAbelianGroup.cyclic(order)
    record["detail"] = "4,8,3,9,5,7 and 6,10,14"


@pytest.mark.criterion("7 minimal dimension")
def test_criterion_07_min_dim(record):
    for n in range(3, 61):
        assert min_dim_solv(n) == hiller_phi(n) + 1 == brute_lcm_cover_cost(n) + 1, n
    assert min_dim_solv(2) == 3
    record["detail"] = "3 <= n <= 60 agree with brute-force cover; min_dim(2) = 3"


@pytest.mark.criterion("8 lattice certification")
def test_criterion_08_lattices(record):
    worst = 0.0
    spectra = brute_certified(8, 12)
    for sp in spectra:
        lat = build_lattice(sp, tol=1e-9)
        e, d = lat.integer_model_E, lat.order_d
        if sp.ambient_dim == 0:
            assert d == 1
            continue
        assert int_det(e) == 1
        ident = int_identity(sp.ambient_dim)
        power = e
        for _ in range(1, d):
            assert power != ident
            power = int_matmul(power, e)
        assert power == ident
        worst = max(worst, lat.residual)
    assert worst <= 1e-9
    record["detail"] = f"{len(spectra)} spectra, max residual {worst:.1e}"


@pytest.mark.criterion("9 cyclotomic identities")
def test_criterion_09_cyclotomic(record):
    for n in range(1, 201):
        assert IntPolynomial.monomial(n) - IntPolynomial([1]) == product(cyclotomic_poly(d) for d in divisors(n))
        assert cyclotomic_poly(n).degree == euler_phi(n)
    record["detail"] = "x^n - 1 = prod Phi_d and deg Phi_n = phi(n) for n <= 200"


@pytest.mark.criterion("10 oracle equivalence")
def test_criterion_10_oracle_sweep(record):
    turns = folded_turns(20)
    total = 0
    for s in range(3):
        for n in range(4):
            combos = list(combinations_with_replacement(turns, n))
            numeric = numeric_oracle_batch(s, combos, tol=1e-9)
            for combo, oracle in zip(combos, numeric):
                exact = isinstance(orbit_check(RotationSpectrum(s, combo)), OrbitCertificate)
                assert exact == oracle, (s, combo)
                total += 1
    record["detail"] = f"{total} spectra agree"


def random_group(rng):
    exponent = rng.randint(1, 60)
    factors = [exponent]
    for _ in range(rng.randint(0, 3)):
        factors.append(rng.choice(divisors(factors[-1])))
    return FiniteAbelianGroup(tuple(sorted(f for f in factors if f > 1)))


@pytest.mark.criterion("11 abelian witnesses")
def test_criterion_11_abelian(record):
    rng = random.Random(20240611)
    groups = [random_group(rng) for _ in range(30)]
    for group in groups:
        assert group.exponent <= 60 and len(group.invariant_factors) <= 4
        assert holonomy_of_spec(abelian_witness(group)) == group
        kahler = abelian_witness(group, kahler=True)
        assert holonomy_of_spec(kahler) == group and spec_dimension(kahler) % 2 == 0
    record["detail"] = f"30 seeded groups, {len({g for g in groups})} distinct, {sum(g == TRIVIAL for g in groups)} trivial"


TABLE_HOLONOMY = {"G1": (), "G2": (2,), "G3": (3,), "G4": (4,), "G5": (6,), "G6": (2, 2),
                  "B1": (2,), "B2": (2,), "B3": (2, 2), "B4": (2, 2)}


@pytest.mark.criterion("12 platycosms")
def test_criterion_12_platycosms(record):
    rows = platycosm_table()
    assert {r.wolf_name for r in rows if r.realizable} == {"G1", "G2", "G3", "G4", "G5"}
    for r in rows:
        assert r.holonomy == FiniteAbelianGroup.from_orders(TABLE_HOLONOMY[r.wolf_name])
        if r.realizable:
            assert spec_dimension(r.witness) == 3
            assert holonomy_of_spec(r.witness) == r.holonomy
        else:
            assert r.witness is None
    record["detail"] = "G1-G5 realizable, G6 and B1-B4 not"

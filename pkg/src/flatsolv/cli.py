"""Command-line front end.

Every command produces a :class:`CommandResult`; ``--json`` prints it as a
JSON object ``{"status", "payload", "diagnostics"}``, otherwise a short text
rendering is printed.  Exit codes: 0 ok, 2 obstruction, 1 error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import enumeration, exact_arith, holonomy, lattice, spectrum
from .errors import FlatSolvError, InvalidInputError, ObstructionError
from .holonomy import FiniteAbelianGroup
from .lie_model import AlmostAbelianBlock, E2Factor, SolvmanifoldSpec, TorusFactor, spec_dimension
from .spectrum import Obstruction, RotationSpectrum

EXIT_CODES = {"ok": 0, "obstruction": 2, "error": 1}


@dataclass
class CommandResult:
    status: str
    payload: dict = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)
    text: str = ""

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_json(self) -> dict:
        return {"status": self.status, "payload": self.payload, "diagnostics": self.diagnostics}


# -- parsing and serialization -------------------------------------------------

_SPECTRUM_RE = re.compile(r"^\s*s\s*=\s*(\d+)\s*;\s*f\s*=\s*(.*?)\s*$")
_FRACTION_RE = re.compile(r"^\s*(\d+)\s*/\s*(\d+)\s*$")


def parse_spectrum(text: str) -> RotationSpectrum:
    """Parse ``s=<int>;f=<p>/<q>,...``; turns are folded into (0, 1/2].

    Only rational turns can be written, so an irrational angle never gets
    past the grammar.
    """
    m = _SPECTRUM_RE.match(text)
    if not m:
        raise InvalidInputError(f"bad spectrum {text!r}; expected s=<int>;f=<p>/<q>[,<p>/<q>...]")
    fractions = []
    body = m.group(2)
    if body:
        for item in body.split(","):
            fm = _FRACTION_RE.match(item)
            if not fm or int(fm.group(2)) == 0:
                raise InvalidInputError(f"bad fraction {item.strip()!r} in {text!r}")
            f = Fraction(int(fm.group(1)), int(fm.group(2)))
            if not 0 < f < 1:
                raise InvalidInputError(f"turn {f} out of range; must lie strictly between 0 and 1")
            fractions.append(f)
    return RotationSpectrum(int(m.group(1)), fractions)


def parse_group(text: str) -> FiniteAbelianGroup:
    """Parse ``Z2+Z12`` style strings; ``e`` is the trivial group."""
    text = text.strip()
    if text in ("e", "{e}", "trivial", ""):
        return holonomy.TRIVIAL
    orders = []
    for part in text.split("+"):
        m = re.fullmatch(r"\s*Z_?(\d+)\s*", part)
        if not m:
            raise InvalidInputError(f"bad group {text!r}")
        orders.append(int(m.group(1)))
    return FiniteAbelianGroup.from_orders(orders)


def group_json(g: FiniteAbelianGroup) -> dict:
    return {"invariant_factors": list(g.invariant_factors), "display": str(g)}


def poly_json(p: exact_arith.IntPolynomial) -> dict:
    return {"coeffs": list(p.coeffs), "text": str(p)}


def obstruction_json(ob: Obstruction) -> dict:
    return {"kind": ob.kind, "q": ob.q, "missing": list(ob.missing), "text": str(ob)}


def block_json(block) -> dict:
    if isinstance(block, AlmostAbelianBlock):
        return {"type": "almost_abelian", "spectrum": str(block.spectrum), "dim": block.dim}
    if isinstance(block, E2Factor):
        f = block.fraction
        return {"type": "e2", "fraction": f"{f.numerator}/{f.denominator}", "dim": 3}
    return {"type": "torus", "dim": block.dim}


def spec_json(spec: SolvmanifoldSpec) -> dict:
    return {
        "blocks": [block_json(b) for b in spec.blocks],
        "dimension": spec_dimension(spec),
        "holonomy": group_json(holonomy.holonomy_of_spec(spec)),
    }


def parse_spec_json(data: dict) -> SolvmanifoldSpec:
    blocks = []
    for b in data["blocks"]:
        if b["type"] == "almost_abelian":
            blocks.append(AlmostAbelianBlock(parse_spectrum(b["spectrum"])))
        elif b["type"] == "e2":
            blocks.append(E2Factor(Fraction(b["fraction"])))
        elif b["type"] == "torus":
            blocks.append(TorusFactor(int(b["dim"])))
        else:
            raise InvalidInputError(f"unknown block type {b['type']!r}")
    return SolvmanifoldSpec(blocks)


def _spec_text(spec: SolvmanifoldSpec) -> str:
    parts = []
    for b in spec.blocks:
        if isinstance(b, AlmostAbelianBlock):
            parts.append(f"[{b.spectrum}]")
        elif isinstance(b, E2Factor):
            parts.append(f"E2({b.fraction})")
        else:
            parts.append(f"T^{b.dim}")
    return " x ".join(parts)


# -- commands ------------------------------------------------------------------

def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise InvalidInputError(f"expected an integer, got {text!r}") from None
    if n < 1:
        raise InvalidInputError(f"expected a positive integer, got {n}")
    return n


def cmd_phi(args) -> CommandResult:
    n = _positive(args.n)
    v = exact_arith.euler_phi(n)
    return CommandResult("ok", {"n": n, "phi": v}, text=f"phi({n}) = {v}")


def cmd_hiller_phi(args) -> CommandResult:
    n = _positive(args.n)
    v = exact_arith.hiller_phi(n)
    return CommandResult("ok", {"n": n, "hiller_phi": v}, text=f"Phi({n}) = {v}")


def cmd_cyclotomic(args) -> CommandResult:
    n = _positive(args.n)
    p = exact_arith.cyclotomic_poly(n)
    return CommandResult("ok", {"n": n, "poly": poly_json(p)}, text=f"Phi_{n}(x) = {p}")


def cmd_check(args) -> CommandResult:
    sp = parse_spectrum(args.spectrum)
    verdict = spectrum.orbit_check(sp)
    if isinstance(verdict, Obstruction):
        return CommandResult(
            "obstruction",
            {"spectrum": str(sp), "obstruction": obstruction_json(verdict)},
            text=f"{sp}: no lattice\n  {verdict}",
        )
    orbits = [[q, m] for q, m in verdict.orbits]
    text = (f"{sp}: lattice exists\n  orbits (q, mult): {verdict.orbits}\n"
            f"  char poly: {verdict.char_poly}")
    return CommandResult(
        "ok",
        {"spectrum": str(sp), "certificate": {"orbits": orbits, "char_poly": poly_json(verdict.char_poly)}},
        text=text,
    )


def cmd_holonomy(args) -> CommandResult:
    sp = parse_spectrum(args.spectrum)
    g = holonomy.holonomy_of_block(sp)
    return CommandResult("ok", {"spectrum": str(sp), "group": group_json(g), "dimension": sp.group_dim},
                         text=f"{sp}: holonomy {g} (dimension {sp.group_dim})")


def cmd_lattice(args) -> CommandResult:
    sp = parse_spectrum(args.spectrum)
    desc = lattice.build_lattice(sp, tol=args.tol)
    payload = {
        "spectrum": str(sp),
        "order_d": desc.order_d,
        "integer_model_E": desc.integer_model_E,
        "conjugator_P": [[float(x) for x in row] for row in desc.conjugator_P],
        "residual": desc.residual,
        "generators": desc.generators,
    }
    rows = "\n".join("    " + " ".join(f"{x:3d}" for x in row) for row in desc.integer_model_E)
    text = (f"{sp}: lattice {desc.generators}\n  order {desc.order_d}, residual {desc.residual:.2e}\n"
            f"  E =\n{rows}")
    return CommandResult("ok", payload, text=text)


def cmd_min_dim(args) -> CommandResult:
    n = _positive(args.n)
    v = holonomy.min_dim_solv(n)
    return CommandResult("ok", {"n": n, "min_dim": v}, text=f"minimal dimension for Z{n}: {v}")


def cmd_construct(args) -> CommandResult:
    if args.cyclic is not None:
        n = _positive(args.cyclic)
        group = FiniteAbelianGroup.cyclic(n)
        if args.kahler or n == 1:
            spec = holonomy.abelian_witness(group, kahler=args.kahler)
        else:
            spec = SolvmanifoldSpec([AlmostAbelianBlock(holonomy.minimal_cyclic_witness(n))])
    else:
        orders = [_positive(x) for x in args.abelian.split(",") if x.strip()]
        group = FiniteAbelianGroup.from_orders(orders)
        spec = holonomy.abelian_witness(group, kahler=args.kahler)
    payload = {"group": group_json(group), "spec": spec_json(spec)}
    text = f"{group}: {_spec_text(spec)} (dimension {spec_dimension(spec)})"
    return CommandResult("ok", payload, text=text)


def cmd_enumerate(args) -> CommandResult:
    dim = _positive(args.dim)
    report = enumeration.dimension_report(dim)
    payload = {
        "dim": dim,
        "almost_abelian": [group_json(g) for g in sorted(report.almost_abelian_groups)],
        "products": [group_json(g) for g in sorted(report.product_groups)],
        "witnesses": [{"group": group_json(g), "spec": spec_json(s)} for g, s in report.witnesses.items()],
    }
    lines = [f"dimension {dim}",
             "  almost abelian: " + ", ".join(map(str, sorted(report.almost_abelian_groups)))]
    if report.product_groups:
        lines.append("  E(2) products:  " + ", ".join(map(str, sorted(report.product_groups))))
    lines.extend(f"    {g}: {_spec_text(s)}" for g, s in report.witnesses.items())
    return CommandResult("ok", payload, text="\n".join(lines))


def cmd_platycosms(args) -> CommandResult:
    rows = enumeration.platycosm_table()
    payload = {"rows": [
        {
            "wolf_name": r.wolf_name,
            "holonomy": group_json(r.holonomy),
            "h1": r.h1,
            "orientable": r.orientable,
            "symbol": r.symbol,
            "cosm_name": r.cosm_name,
            "realizable": r.realizable,
            "witness": spec_json(r.witness) if r.witness else None,
        }
        for r in rows
    ]}
    lines = [f"{'name':4} {'hol':7} {'H1':9} {'or':3} {'sym':4} {'cosm':20} solv"]
    for r in rows:
        lines.append(f"{r.wolf_name:4} {str(r.holonomy):7} {r.h1:9} {'y' if r.orientable else 'n':3} "
                     f"{r.symbol:4} {r.cosm_name:20} {'yes' if r.realizable else 'no'}")
    return CommandResult("ok", payload, text="\n".join(lines))


def seed_check() -> CommandResult:
    """Golden-table self-test of the low-dimensional holonomy lists."""
    cyc = lambda *ns: {FiniteAbelianGroup.cyclic(n) for n in ns}  # noqa: E731
    dim3 = cyc(1, 2, 3, 4, 6)
    dim5 = cyc(1, 2, 3, 4, 5, 6, 8, 10, 12)
    products = {FiniteAbelianGroup.from_orders(p) for p in
                [(2, 2), (2, 3), (2, 4), (2, 6), (3, 3), (3, 4), (3, 6), (4, 4), (4, 6), (6, 6)]}
    checks = {
        "dim3": enumeration.dimension_report(3).all_groups == dim3,
        "dim4": enumeration.dimension_report(4).all_groups == dim3,
        "dim5": enumeration.dimension_report(5).all_groups == dim5,
        "dim6_almost_abelian": enumeration.dimension_report(6).almost_abelian_groups == dim5,
        "dim6_products": enumeration.dimension_report(6).product_groups == products,
        "admissible_pairs_dim5": len(spectrum.admissible_pairs_dim5()) == 19,
        "min_dim": [holonomy.min_dim_solv(n) for n in (2, 3, 4, 5, 6, 12, 15)] == [3, 3, 3, 5, 3, 5, 7],
        "platycosms": [r.realizable for r in enumeration.platycosm_table()] == [True] * 5 + [False] * 5,
    }
    ok = all(checks.values())
    text = "\n".join(f"{'PASS' if v else 'FAIL'} {k}" for k, v in checks.items())
    return CommandResult("ok" if ok else "error",
                         {"checks": [{"name": k, "passed": v} for k, v in checks.items()], "all_passed": ok},
                         text=text)


# -- dispatch ------------------------------------------------------------------

class _ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgumentError(f"{message}\n{self.format_usage()}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print machine-readable JSON")
    common.add_argument("--seed-check", action="store_true", default=argparse.SUPPRESS,
                        help="run the embedded golden-table self-test")

    parser = _Parser(prog="flatsolv", parents=[common],
                     description="Holonomy of flat solvmanifolds, exactly.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    add("phi", cmd_phi, "Euler totient").add_argument("n")
    add("hiller-phi", cmd_hiller_phi, "additive totient Phi(n)").add_argument("n")
    add("cyclotomic", cmd_cyclotomic, "n-th cyclotomic polynomial").add_argument("n")
    add("check", cmd_check, "integer-conjugacy verdict for a spectrum").add_argument("spectrum")
    add("holonomy", cmd_holonomy, "holonomy group of a spectrum").add_argument("spectrum")
    p = add("lattice", cmd_lattice, "certified lattice for a spectrum")
    p.add_argument("spectrum")
    p.add_argument("--tol", type=float, default=lattice.DEFAULT_TOL)
    add("min-dim", cmd_min_dim, "minimal dimension with holonomy Z_n").add_argument("n")
    p = add("construct", cmd_construct, "witness with prescribed holonomy")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--cyclic")
    grp.add_argument("--abelian", help="comma-separated cyclic orders, e.g. 2,4")
    p.add_argument("--kahler", action="store_true")
    add("enumerate", cmd_enumerate, "holonomy groups in a dimension 3..6").add_argument("--dim", required=True)
    add("platycosms", cmd_platycosms, "compact flat 3-manifolds table")
    return parser


def run(argv: list[str]) -> CommandResult:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _ArgumentError as exc:
        return CommandResult("error", {"usage": parser.format_usage()}, [str(exc)], text=str(exc))
    try:
        if getattr(args, "seed_check", False):
            result = seed_check()
        elif getattr(args, "func", None) is None:
            usage = parser.format_usage()
            return CommandResult("error", {"usage": usage}, ["no command given"], text=usage)
        else:
            result = args.func(args)
    except ObstructionError as exc:
        ob = exc.obstruction
        result = CommandResult("obstruction", {"obstruction": obstruction_json(ob)}, text=f"no lattice: {ob}")
    except (FlatSolvError, ValueError) as exc:
        result = CommandResult("error", {"usage": parser.format_usage()}, [str(exc)], text=f"error: {exc}")
    return result


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    as_json = "--json" in argv
    result = run(argv)
    if as_json:
        print(json.dumps(result.to_json(), indent=2))
    elif result.text:
        stream = sys.stdout if result.status != "error" else sys.stderr
        print(result.text, file=stream)
    for line in result.diagnostics:
        if as_json:
            print(line, file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())

"""Command line front end: ``ptl <subcommand> ... [--json]``."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from . import cartier, cyclic, families, strata, zeta
from .arith import field_make, is_prime
from .curves import HyperellipticModel, count_points, genus
from .curvespec import format_curve_spec, format_element, parse_curve_spec
from .errors import ConsistencyError, ParseError, PtlError, SemanticError
from .polygon import NewtonPolygon

__all__ = ["main", "build_parser", "parse_curve_spec", "render_json"]


def _frac(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _polygon(xi: NewtonPolygon) -> dict:
    return {"label": xi.label(), "slopes": xi.as_strings()}


@dataclass
class InvariantReport:
    curve: str
    field: str
    genus: int
    a_number: int | None
    p_rank: int
    L: zeta.LPolynomial
    polygon: NewtonPolygon
    supersingular: bool
    manin: bool

    def __post_init__(self):
        if self.p_rank != zeta.p_rank_from_np(self.polygon):
            raise ConsistencyError(f"p-rank {self.p_rank} disagrees with the Newton polygon {self.polygon.label()}")
        if self.manin != self.supersingular:
            raise ConsistencyError("Manin test disagrees with the Newton polygon")

    def as_dict(self) -> dict:
        return {
            "curve": self.curve,
            "field": self.field,
            "genus": self.genus,
            "a_number": self.a_number,
            "p_rank": self.p_rank,
            "L": [str(c) for c in self.L.coeffs],
            "L_text": str(self.L),
            "newton_polygon": _polygon(self.polygon),
            "supersingular": self.supersingular,
        }


# ---------------------------------------------------------------------------
# subcommands: each returns (input, result)


def _cmd_invariants(args):
    model = parse_curve_spec(args.curve)
    L = zeta.l_polynomial(model, threads=args.threads)
    xi = zeta.newton_polygon(L)
    a = None
    f = zeta.p_rank_from_np(xi)
    if isinstance(model, HyperellipticModel):
        M = cartier.cartier_matrix_hyperelliptic(model)
        a = cartier.a_number(M)
        f = cartier.p_rank(M)
    report = InvariantReport(
        curve=format_curve_spec(model),
        field=repr(model.field),
        genus=genus(model),
        a_number=a,
        p_rank=f,
        L=L,
        polygon=xi,
        supersingular=xi.is_supersingular(),
        manin=zeta.is_supersingular_manin(L),
    )
    return {"curve": args.curve}, report.as_dict()


def _cmd_zeta(args):
    model = parse_curve_spec(args.curve)
    g = genus(model)
    L = zeta.l_polynomial(model, threads=args.threads)
    extra = max(0, args.extra)
    counts = [count_points(model, s) for s in range(1, g + 1 + extra)]
    predicted = [L.point_count(s) for s in range(1, g + 1 + extra)]
    if counts != predicted:
        raise ConsistencyError(f"counts {counts} differ from the zeta prediction {predicted}")
    xi = zeta.newton_polygon(L)
    return (
        {"curve": args.curve, "extra": extra},
        {
            "genus": g,
            "q": model.field.q,
            "point_counts": [str(n) for n in counts],
            "L": [str(c) for c in L.coeffs],
            "L_text": str(L),
            "newton_polygon": _polygon(xi),
            "manin_supersingular": zeta.is_supersingular_manin(L),
        },
    )


def _np_row(xi: NewtonPolygon) -> dict:
    audit = strata.unlikely_audit(xi.genus, xi)
    return {
        "polygon": _polygon(xi),
        "sdim": audit["sdim"],
        "codim": audit["codim"],
        "unlikely": audit["unlikely"],
    }


def _cmd_strata(args):
    inp = {"eo_table": args.eo_table, "polygons": args.polygons, "np": args.np, "compare": args.compare}
    if args.eo_table is not None:
        return inp, {"rows": strata.eo_table(args.eo_table)}
    if args.polygons is not None:
        g = args.polygons
        return inp, {"g": g, "ss_locus_dim": strata.ss_locus_dim(g), "rows": [_np_row(xi) for xi in strata.enumerate_symmetric_nps(g)]}
    if args.np is not None:
        xi = strata.SymmetricNP.of(NewtonPolygon.parse(args.np))
        out = {"g": xi.genus, **strata.unlikely_audit(xi.genus, xi)}
        out["polygon"] = _polygon(xi)
        if args.compare is not None:
            other = strata.SymmetricNP.of(NewtonPolygon.parse(args.compare))
            out["compare"] = {"other": _polygon(other), "relation": strata.np_compare(xi, other)}
        return inp, out
    raise SemanticError("strata needs one of --eo-table, --polygons, --np")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError as exc:
        raise ParseError(f"not a list of integers: {text!r}", 0) from exc


def _eo_row(nu: strata.EOType) -> dict:
    inv = strata.eo_invariants(nu)
    return {"nu": list(nu.nu), "mu": list(inv.young.mu), "f": inv.p_rank, "a": inv.a_number, "dim": inv.dim, "cod": inv.codim}


def _cmd_eo(args):
    inp = {"g": args.g, "nu": args.nu, "mu": args.mu, "add_ordinary": args.add_ordinary}
    if args.nu is not None:
        nu = strata.EOType(_int_list(args.nu))
    elif args.mu is not None:
        if args.g is None:
            raise SemanticError("--mu needs --g")
        nu = strata.eo_from_young(strata.YoungType(_int_list(args.mu)), args.g)
    elif args.g is not None:
        return inp, {"g": args.g, "count": 2**args.g, "rows": [_eo_row(nu) for nu in strata.eo_enumerate(args.g)]}
    else:
        raise SemanticError("eo needs --g, --nu or --mu")
    out = _eo_row(nu)
    if args.add_ordinary:
        out["with_ordinary"] = _eo_row(strata.eo_add_ordinary(nu, args.add_ordinary))
    return inp, out


def _cmd_kottwitz(args):
    f = _int_list(args.sig)
    inp = {"m": args.m, "sig": list(f), "p": args.p, "admissible": args.admissible}
    dec = cyclic.orbits(args.m, args.p)
    out = {
        "orbits": [list(o) for o in dec.orbits],
        "mu_ordinary": _polygon(cyclic.mu_ordinary(args.m, f, args.p)),
        "p_rank_bound": cyclic.p_rank_bound(args.m, f, args.p),
    }
    adm = cyclic.admissible_set(args.m, f, args.p)
    out["basic"] = _polygon(adm.basic)
    if args.admissible:
        out["admissible"] = [_polygon(xi) for xi in adm.polygons]
    return inp, out


def _datum_row(d: cyclic.MonodromyDatum) -> dict:
    f = cyclic.signature(d)
    return {"m": d.m, "a": list(d.a), "N": d.N, "g": d.genus, "f": list(f), "shimura_dim": cyclic.shimura_dim(d.m, f)}


def _cmd_special(args):
    inp = {"m_max": args.m_max, "n_max": args.n_max, "n_min": args.n_min, "table": args.table, "datum": args.datum}
    if args.datum is not None:
        m, _, a = args.datum.partition(":")
        try:
            d = cyclic.MonodromyDatum(int(m), _int_list(a))
        except ValueError as exc:
            raise ParseError(f"datum must look like M:a1,a2,...: {args.datum!r}", 0) from exc
        row = _datum_row(d)
        row["special"] = cyclic.is_special(d) if d.N >= 4 else False
        return inp, row
    if args.table:
        rows = []
        table = cyclic.moonen_table()
        for entry in table["one_dimensional"] + table["two_dimensional"]:
            d = cyclic.MonodromyDatum(entry["m"], entry["a"])
            rows.append({"label": entry["label"], **_datum_row(d), "special": cyclic.is_special(d)})
        return inp, {"rows": rows}
    found = cyclic.special_scan(args.m_max, args.n_max, args.n_min)
    return inp, {"count": len(found), "rows": [_datum_row(d) for d in found]}


def _cmd_cm(args):
    a = _int_list(args.a)
    xi = cyclic.cm_newton_polygon(args.m, a, args.p)
    out = {"newton_polygon": _polygon(xi), "supersingular": xi.is_supersingular()}
    if args.m % 2:
        out["order_criterion"] = cyclic.ss_criterion_cm(args.m, args.p)
    return {"m": args.m, "a": list(a), "p": args.p}, out


def _parse_field(text: str):
    body = text.strip()
    if not body.startswith("F"):
        raise ParseError(f"field must look like F13 or F5^2: {text!r}", 0)
    p, _, k = body[1:].partition("^")
    try:
        p, k = int(p), int(k or 1)
    except ValueError as exc:
        raise ParseError(f"field must look like F13 or F5^2: {text!r}", 1) from exc
    if not is_prime(p):
        raise SemanticError(f"{p} is not prime")
    return field_make(p, k)


def _cmd_scan(args):
    if args.family not in families.FAMILIES:
        raise SemanticError(f"unknown family {args.family!r}; choose from {sorted(families.FAMILIES)}")
    F = _parse_field(args.field)
    report = families.nonordinary_census(families.FAMILIES[args.family], F, threads=args.threads)
    return {"family": args.family, "field": args.field}, report.as_dict()


def _cmd_mass(args):
    p = args.p
    mass, expected = families.mass_formula_check(p)
    out = {"p": p, "mass": _frac(mass), "expected": _frac(expected)}
    if p >= 5:
        out["legendre_ss_count"] = families.legendre_ss_count(p)
        out["ss_j_count"] = families.ss_j_count(p)
        out["ss_j"] = [format_element(j) for j in families.ss_j_invariants(p)]
    return {"p": p}, out


def _cmd_ckp(args):
    dec, g = families.ckp_genus_identity(args.p, args.delta)
    return (
        {"p": args.p, "delta": args.delta},
        {"runs": [{"s": s, "r": r} for s, r in dec.runs], "genus": g},
    )


COMMANDS = {
    "invariants": _cmd_invariants,
    "zeta": _cmd_zeta,
    "strata": _cmd_strata,
    "eo": _cmd_eo,
    "kottwitz": _cmd_kottwitz,
    "special": _cmd_special,
    "cm": _cmd_cm,
    "scan": _cmd_scan,
    "mass": _cmd_mass,
    "ckp": _cmd_ckp,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of a text table")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker threads for counting and scans")
    common.add_argument("--no-timing", action="store_true", help="emit timing_ms as null (byte-stable output)")

    parser = argparse.ArgumentParser(prog="ptl", description="p-torsion, zeta functions and Newton strata of curves")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", parents=[common], help="genus, p-rank, a-number, L-polynomial of a curve")
    p.add_argument("curve", help='curve spec, e.g. "hyp;F3;h=x^5+1"')

    p = sub.add_parser("zeta", parents=[common], help="point counts and L-polynomial")
    p.add_argument("curve")
    p.add_argument("--extra", type=int, default=2, help="check predicted counts this far beyond N_g")

    p = sub.add_parser("strata", parents=[common], help="Newton and Ekedahl-Oort strata")
    p.add_argument("--eo-table", type=int, metavar="G")
    p.add_argument("--polygons", type=int, metavar="G", help="all symmetric polygons of genus G")
    p.add_argument("--np", metavar="POLY", help='a polygon, e.g. "(1/4,3/4)" or "0^2,1/2^4,1^2"')
    p.add_argument("--compare", metavar="POLY", help="compare --np with this polygon")

    p = sub.add_parser("eo", parents=[common], help="Ekedahl-Oort types")
    p.add_argument("--g", type=int)
    p.add_argument("--nu")
    p.add_argument("--mu")
    p.add_argument("--add-ordinary", type=int, default=0)

    p = sub.add_parser("kottwitz", parents=[common], help="mu-ordinary and basic polygons of a signature")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--sig", required=True, help="f_1,...,f_(m-1)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--admissible", action="store_true", help="list the whole admissible set")

    p = sub.add_parser("special", parents=[common], help="special monodromy data")
    p.add_argument("--m-max", type=int, default=12)
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--table", action="store_true", help="show the embedded table of special families")
    p.add_argument("--datum", help="check one datum, e.g. 5:1,1,1,1,1")

    p = sub.add_parser("cm", parents=[common], help="Newton polygon of a three-point cyclic cover")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--p", type=int, required=True)

    p = sub.add_parser("scan", parents=[common], help="p-rank census over a hyperelliptic family")
    p.add_argument("--family", required=True, help=", ".join(sorted(families.FAMILIES)))
    p.add_argument("--field", required=True, help="e.g. F13 or F5^2")

    p = sub.add_parser("mass", parents=[common], help="supersingular elliptic curves and their mass")
    p.add_argument("--p", type=int, required=True)

    p = sub.add_parser("ckp", parents=[common], help="genus identity for Artin-Schreier fiber products")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    return parser


def render_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, dict) and "label" in v and "slopes" in v:
        return v["label"]
    if isinstance(v, list):
        return "[" + ",".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return " ".join(f"{k}={_scalar(x)}" for k, x in v.items())
    return str(v)


def render_text(result: dict) -> str:
    """Aligned key/value lines; a list of row dicts becomes a column table."""
    lines = []
    tables = []
    for key, value in result.items():
        if isinstance(value, list) and value and all(isinstance(r, dict) for r in value):
            tables.append((key, value))
        else:
            lines.append((key, _scalar(value)))
    out = []
    if lines:
        width = max(len(k) for k, _ in lines)
        out += [f"{k.ljust(width)}  {v}" for k, v in lines]
    for key, rows in tables:
        if out:
            out.append("")
        headers = list(rows[0].keys())
        cells = [[_scalar(r.get(h)) for h in headers] for r in rows]
        widths = [max(len(h), *(len(c[i]) for c in cells)) for i, h in enumerate(headers)]
        out.append("  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip())
        out.append("  ".join("-" * w for w in widths))
        out += ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(out) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be positive")
    start = time.perf_counter()
    try:
        inp, result = COMMANDS[args.command](args)
    except (PtlError, ValueError) as exc:
        code = getattr(exc, "exit_code", 2)
        name = type(exc).__name__
        if args.json:
            sys.stdout.write(render_json({"command": args.command, "error": name, "detail": str(exc), "exit_code": code}))
        else:
            sys.stderr.write(f"error: {name}: {exc}\n")
        return code
    elapsed = None if args.no_timing else int(round((time.perf_counter() - start) * 1000))
    if args.json:
        sys.stdout.write(render_json({"command": args.command, "input": inp, "result": result, "timing_ms": elapsed}))
    else:
        sys.stdout.write(render_text(result))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

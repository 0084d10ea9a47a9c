"""Command-line front end: artincohom {poincare,complex,cohomology,verify,arrangement}.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 internal
inconsistency.  Output is assembled in full and written once.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .coxeter import build_graph, finite_type, members, parse_subset
from .errors import (
    ArtinCohomError,
    BadArg,
    BadSpecialization,
    InternalInconsistency,
    NotDivisible,
    RankTooSmall,
    TooLarge,
    Unsupported,
)
from .fields import Point
from .homology import PIDSlice, cohomology_at, cohomology_pid, generic_dims
from .poincare import poincare
from .salvetti import augmented_tilde_b, build_complex, build_G1, build_oC

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
COMPLEX_FAMILIES = ("A", "B", "D", "tildeB")
SUBCOMPLEXES = ("full", "G1", "oC")
DEFAULT_MAX_RANK = 8


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="artincohom", description="Salvetti complexes and their cohomology")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--output", help="write the report to this file instead of stdout")
    p.add_argument("--max-rank", type=int, default=DEFAULT_MAX_RANK,
                   help="largest rank accepted for heavy computations (default 8)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("poincare", help="Poincare polynomial of a parabolic subgroup")
    q.add_argument("--family", required=True, choices=("A", "B", "D", "tildeB", "tildeA", "tildeC"))
    q.add_argument("--rank", required=True, type=int)
    q.add_argument("--weights", choices=("q", "qt"), default="q")
    q.add_argument("--subset", help="bit string or fork notation; default the whole graph")

    c = sub.add_parser("complex", help="build a Salvetti cochain complex")
    _complex_args(c)
    c.add_argument("--dump", help="write the matrix dump to this path")

    h = sub.add_parser("cohomology", help="cohomology under a coefficient specialization")
    _complex_args(h)
    h.add_argument("--coeff", required=True,
                   help="trivial | generic | cyclotomic:d=D,i=I | rational:q=A,t=B | slice:t=[-]q^K | slice:t=C | slice:none")

    v = sub.add_parser("verify", help="check a closed-form statement against computation")
    v.add_argument("--theorem", required=True,
                   choices=("main2", "main3", "inv", "anti", "dpssG", "lemma-simplicial"))
    v.add_argument("--rank", required=True, type=int)
    v.add_argument("--reading", choices=("literal", "reconciled"), default="literal")
    v.add_argument("--sweep", action="store_true", help="probe every small root of unity as well")
    v.add_argument("--jobs", type=int, default=1)

    a = sub.add_parser("arrangement", help="enumerate chambers of the simpliciality arrangement")
    a.add_argument("--rank", required=True, type=int)
    a.add_argument("--variant", choices=("lemma", "orbit"), default="lemma")
    a.add_argument("--jobs", type=int, default=1)
    return p


def _complex_args(p):
    p.add_argument("--family", required=True, choices=COMPLEX_FAMILIES)
    p.add_argument("--rank", required=True, type=int)
    p.add_argument("--weights", choices=("q", "qt"))
    p.add_argument("--augmented", action="store_true", help="affine B_n only: append the top cell")
    p.add_argument("--sub", choices=SUBCOMPLEXES, default="full",
                   help="G1: cells containing vertex 1 of D_n; oC: same inside the augmented affine complex")


# ---------------------------------------------------------------- helpers

def _guard_rank(args):
    if args.rank > args.max_rank:
        raise TooLarge(f"rank {args.rank} exceeds --max-rank {args.max_rank}")


def _make_complex(args):
    _guard_rank(args)
    if args.augmented and args.family != "tildeB":
        raise BadArg("--augmented applies to --family tildeB only")
    if args.sub == "G1":
        if args.family != "D" or args.augmented:
            raise BadArg("--sub G1 needs --family D")
        return build_G1(args.rank)
    if args.sub == "oC":
        if args.family != "tildeB":
            raise BadArg("--sub oC needs --family tildeB")
        return build_oC(args.rank)
    if args.augmented:
        if args.weights == "q":
            raise BadArg("the augmented complex uses qt weights")
        return augmented_tilde_b(args.rank)
    graph = build_graph(args.family, args.rank)
    weights = args.weights or ("qt" if graph.t_vertex is not None else "q")
    if weights == "qt" and graph.t_vertex is None:
        raise BadArg(f"family {args.family} has no t-vertex; use --weights q")
    return build_complex(graph, weights)


def _t_free(cx) -> bool:
    return all(v.is_t_free() for mat in cx.d for v in mat.values())


def _kv(text: str) -> dict[str, str]:
    out = {}
    for part in filter(None, text.split(",")):
        if "=" not in part:
            raise BadArg(f"expected key=value, got {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


_SLICE = re.compile(r"^t=(-?)q(?:\^(-?\d+))?$")


def parse_coeff(text: str, t_free: bool):
    """Return ("field", Point) | ("generic", None) | ("pid", PIDSlice)."""
    kind, _, rest = text.partition(":")
    try:
        if kind == "trivial" and not rest:
            return "field", Point.rational(-1, None if t_free else -1)
        if kind == "generic" and not rest:
            return "generic", None
        if kind == "cyclotomic":
            kv = _kv(rest)
            d = int(kv.pop("d"))
            i = int(kv.pop("i", 0))
            if kv:
                raise BadArg(f"unknown keys {sorted(kv)}")
            return "field", Point.root(d) if t_free else Point.support(d, i)
        if kind == "rational":
            kv = _kv(rest)
            q = Fraction(kv.pop("q"))
            t = kv.pop("t", None)
            if kv:
                raise BadArg(f"unknown keys {sorted(kv)}")
            if t is None and not t_free:
                raise BadArg("this complex needs a value for t")
            return "field", Point.rational(q, None if t_free else Fraction(t))
        if kind == "slice":
            if rest == "none":
                return "pid", PIDSlice()
            m = _SLICE.match(rest.replace(" ", ""))
            if m:
                return "pid", PIDSlice.monomial(-1 if m.group(1) else 1, int(m.group(2) or 1))
            if rest.startswith("t="):
                return "pid", PIDSlice.constant(Fraction(rest[2:]))
    except (KeyError, ValueError, ZeroDivisionError) as exc:
        raise BadArg(f"bad coefficient spec {text!r}: {exc}") from exc
    raise BadArg(f"bad coefficient spec {text!r}")


# ---------------------------------------------------------------- commands

def cmd_poincare(args) -> tuple[dict, int]:
    graph = build_graph(args.family, args.rank)
    mask = graph.full_mask if args.subset is None else parse_subset(args.subset)
    if mask & ~graph.full_mask:
        raise BadArg("subset has vertices outside the graph")
    if not finite_type(graph, mask):
        raise BadArg("subset generates an infinite parabolic subgroup")
    if args.weights == "qt" and graph.t_vertex is None:
        raise BadArg(f"family {args.family} has no t-vertex; use --weights q")
    poly = poincare(graph, mask, args.weights)
    return {"command": "poincare", "family": args.family, "rank": args.rank,
            "weights": args.weights, "subset": members(mask), "polynomial": str(poly)}, EXIT_OK


def cmd_complex(args) -> tuple[dict, int]:
    cx = _make_complex(args)
    cx.check_d_squared()
    if args.dump:
        with open(args.dump, "w") as fh:
            fh.write(cx.dump())
    return {"command": "complex", "name": cx.name, "dims": cx.dims(),
            "euler_characteristic": cx.euler_characteristic(), "d_squared_zero": True,
            "dump": args.dump}, EXIT_OK


def cmd_cohomology(args) -> tuple[dict, int]:
    cx = _make_complex(args)
    kind, what = parse_coeff(args.coeff, _t_free(cx))
    rep = {"command": "cohomology", "name": cx.name, "coeff": args.coeff}
    if kind == "field":
        dims = cohomology_at(cx, what)
        rep["coefficients"] = what.label()
        rep["degrees"] = [{"degree": k, "dim": v} for k, v in enumerate(dims)]
    elif kind == "generic":
        res = generic_dims(cx)
        rep["coefficients"] = "Q(q, t)" if not _t_free(cx) else "Q(q)"
        rep["degrees"] = [{"degree": k, "dim": v} for k, v in enumerate(res.dims)]
        rep["certified_by"] = res.certified_by
    else:
        rep["coefficients"] = what.label()
        rep["degrees"] = [{"degree": g.degree, "free_rank": g.free_rank,
                           "torsion": g.torsion_strings()} for g in cohomology_pid(cx, what)]
    rep["euler_characteristic"] = cx.euler_characteristic()
    return rep, EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    from .verify import verify

    if args.theorem != "lemma-simplicial":
        _guard_rank(args)
    rep = verify(args.theorem, args.rank, args.reading, max(1, args.jobs), args.sweep)
    return {"command": "verify", **rep}, EXIT_OK if rep["pass"] else EXIT_FAIL


def cmd_arrangement(args) -> tuple[dict, int]:
    from .arrangement import verify_lemma

    rep = verify_lemma(args.rank, max(1, args.jobs), args.variant)
    ok = not rep["failures"] and all(rep["checks"].values())
    return {"command": "arrangement", "pass": ok, **rep}, EXIT_OK if ok else EXIT_FAIL


COMMANDS = {"poincare": cmd_poincare, "complex": cmd_complex, "cohomology": cmd_cohomology,
            "verify": cmd_verify, "arrangement": cmd_arrangement}


# ---------------------------------------------------------------- text rendering

def render_text(rep: dict) -> str:
    cmd = rep["command"]
    if cmd == "poincare":
        return rep["polynomial"] + "\n"
    if cmd == "complex":
        lines = [rep["name"], "dims " + " ".join(map(str, rep["dims"])),
                 f"euler characteristic {rep['euler_characteristic']}", "d o d = 0"]
        if rep["dump"]:
            lines.append(f"dump written to {rep['dump']}")
        return "\n".join(lines) + "\n"
    if cmd == "cohomology":
        lines = [f"{rep['name']} over {rep['coefficients']}"]
        for g in rep["degrees"]:
            if "dim" in g:
                lines.append(f"H^{g['degree']}: dim {g['dim']}")
            else:
                tors = ", ".join(g["torsion"]) or "none"
                lines.append(f"H^{g['degree']}: free rank {g['free_rank']}, torsion {tors}")
        return "\n".join(lines) + "\n"
    if cmd == "verify":
        lines = [f"{rep['theorem']} n={rep['n']}: {'PASS' if rep['pass'] else 'FAIL'}"]
        for p in rep["probes"]:
            if not p["pass"]:
                lines.append(f"  probe {p['point']} degree {p['degree']}: "
                             f"expected {p['expected']}, got {p['got']}")
        for c in rep.get("checks", []):
            if not c["pass"]:
                lines.append(f"  check {c['name']}: expected {c['expected']}, got {c['got']}")
        lines.append(f"  {sum(p['pass'] for p in rep['probes'])}/{len(rep['probes'])} probes passed")
        return "\n".join(lines) + "\n"
    lines = [f"arrangement n={rep['n']} ({rep['variant']}): {'PASS' if rep['pass'] else 'FAIL'}",
             f"  {len(rep['hyperplanes'])} hyperplanes, {rep['chamber_count']} chambers, "
             f"{rep['simplicial_count']} simplicial"]
    for name, ok in rep["checks"].items():
        lines.append(f"  {'ok ' if ok else 'BAD'} {name}")
    return "\n".join(lines) + "\n"


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        rep, code = COMMANDS[args.command](args)
    except UsageError as exc:
        stderr.write(str(exc))
        return EXIT_USAGE
    except (BadArg, RankTooSmall, TooLarge, Unsupported, BadSpecialization) as exc:
        stderr.write(f"artincohom: error: {exc}\n")
        return EXIT_USAGE
    except (InternalInconsistency, NotDivisible, AssertionError) as exc:
        stderr.write(f"artincohom: internal inconsistency: {exc}\n")
        return EXIT_INTERNAL
    except ArtinCohomError as exc:
        stderr.write(f"artincohom: error: {exc}\n")
        return EXIT_INTERNAL
    text = json.dumps(rep, indent=2) + "\n" if args.format == "json" else render_text(rep)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line front end: textual algebra definitions in, reproducible
structured reports out.

Exit codes: 0 all verdicts pass, 1 a verdict failed, 2 usage or parse
error, 3 resource cap exceeded.  Every number in a report is printed next
to its exactness or stabilization flag.
"""

from __future__ import annotations

import argparse
import json
import sys

from .linalg import NonSplitAlgebra
from .freelie import TruncationTooLarge
from .dgla import (
    AxiomViolation,
    Dgla,
    disjoint_product,
    free_product_dgla,
    homology_stability,
)
from .cdga import (
    Cdga,
    CdgaAxiomViolation,
    NoAugmentation,
    NonCocycle,
    OddDegreeUnit,
    idempotent_split,
    localization_exactness_report,
    localize,
)
from .cehar import (
    ce_cohomology,
    compare_free_product,
    harrison,
    minimal_model,
)
from .dgla import mc_residual
from .mc import (
    IncompleteSolve,
    derive_constraints,
    pi0_moduli,
    verify_component_decomposition,
    verify_theorem_f,
)
from .defs import DefinitionError, element_degrees, load_algebra, parse_element

PASS, FAIL = "PASS", "FAIL"


class Report:
    """Accumulates a human-readable report and a machine-readable mirror;
    identical inputs produce byte-identical output."""

    def __init__(self, command: str, params: dict):
        self.lines: list[str] = []
        self.data: dict = {"command": command, "parameters": params,
                           "results": {}}
        self.failed = False
        self.lines.append("command: %s" % command)
        for key in sorted(params):
            self.lines.append("  %s = %s" % (key, params[key]))

    def line(self, text: str):
        self.lines.append(text)

    def value(self, key: str, value, flag: str):
        self.lines.append("  %s = %s  [%s]" % (key, value, flag))
        self.data["results"][key] = {"value": value, "flag": flag}

    def verdict(self, key: str, ok: bool):
        self.lines.append("%s: %s" % (key, PASS if ok else FAIL))
        self.data["results"][key] = PASS if ok else FAIL
        if not ok:
            self.failed = True

    def emit(self, json_path=None) -> int:
        print("\n".join(self.lines))
        if json_path:
            with open(json_path, "w") as f:
                json.dump(self.data, f, sort_keys=True, indent=2, default=str)
                f.write("\n")
        return 1 if self.failed else 0


def _echo(args) -> str:
    return " ".join(args)


def _parse_range(text):
    lo, hi = text.split("..")
    return int(lo), int(hi)


def cmd_check(ns, argv) -> int:
    rep = Report(_echo(argv), {"definitions": ", ".join(ns.defs)})
    for ref in ns.defs:
        alg = load_algebra(ref, ns.size, ns.weight)
        try:
            if isinstance(alg, Dgla):
                alg.verify_axioms()
            else:
                alg.verify_axioms()
            rep.verdict("axioms(%s)" % ref, True)
        except (AxiomViolation, CdgaAxiomViolation) as e:
            rep.line("  violation: %s" % e)
            rep.verdict("axioms(%s)" % ref, False)
    return rep.emit(ns.json)


def cmd_homology(ns, argv) -> int:
    alg = load_algebra(ns.defs[0], ns.size, ns.weight)
    rep = Report(_echo(argv), {"definition": ns.defs[0]})
    if isinstance(alg, Dgla) and alg.presentation is not None:
        flags = homology_stability(alg)
        degrees = sorted(flags)
        if ns.range:
            lo, hi = _parse_range(ns.range)
            degrees = [n for n in degrees if lo <= n <= hi]
        for n in degrees:
            v = flags[n]
            flag = "stable" if v["stable"] else "unstable"
            if v.get("edge"):
                flag += ", edge +%d" % v["edge"]
            rep.value("H_%d" % n, v["dim"], flag)
    else:
        h = alg.homology()
        degrees = h.degrees()
        if ns.range:
            lo, hi = _parse_range(ns.range)
            degrees = [n for n in degrees if lo <= n <= hi]
        for n in degrees:
            rep.value("H_%d" % n, h.dim(n), "exact")
    return rep.emit(ns.json)


def cmd_ce(ns, argv) -> int:
    alg = load_algebra(ns.defs[0], ns.size, ns.weight)
    rng = _parse_range(ns.range) if ns.range else None
    table = ce_cohomology(alg, ns.words, rng)
    rep = Report(_echo(argv), {"definition": ns.defs[0], "words": ns.words})
    for n in sorted(table):
        rep.value("H^%d" % n, table[n]["dim"], table[n]["flag"])
    return rep.emit(ns.json)


def cmd_harrison(ns, argv) -> int:
    alg = load_algebra(ns.defs[0], ns.size, ns.weight)
    h = harrison(alg, ns.weight)
    rep = Report(_echo(argv), {"definition": ns.defs[0], "weight": ns.weight})
    for n in h.dgla.space.degrees():
        rep.value("dim_%d" % n, h.dgla.space.dim(n), "weight <= %d" % ns.weight)
    gens = [name for name, _, _ in h.dgla.presentation.pres.generators]
    rep.line("  generators: %s" % ", ".join(gens))
    return rep.emit(ns.json)


def cmd_product(ns, argv, kind: str) -> int:
    g = load_algebra(ns.defs[0], ns.size, ns.weight)
    h = load_algebra(ns.defs[1], ns.size, ns.weight)
    if kind == "free":
        p = free_product_dgla(g, h, ns.weight)
    else:
        p = disjoint_product(g, h, ns.weight)
    rep = Report(_echo(argv), {"definitions": ", ".join(ns.defs),
                               "weight": ns.weight})
    for n in p.space.degrees():
        rep.value("dim_%d" % n, p.space.dim(n), "weight <= %d" % ns.weight)
    if kind == "disjoint":
        rep.line("  distinguished MC element: %r" % p.distinguished_mc)
    return rep.emit(ns.json)


def cmd_mc_verify(ns, argv) -> int:
    alg = load_algebra(ns.defs[0], ns.size, ns.weight)
    xi = parse_element(ns.element, element_degrees(alg))
    residual = mc_residual(alg, xi)
    rep = Report(_echo(argv), {"definition": ns.defs[0], "element": ns.element})
    rep.value("residual", repr(residual), "exact")
    rep.verdict("maurer-cartan", residual.is_zero())
    return rep.emit(ns.json)


def cmd_mc_constraints(ns, argv) -> int:
    alg = load_algebra(ns.defs[0], ns.size, ns.weight)
    system = derive_constraints(alg, ns.simplex)
    rep = Report(_echo(argv), {"definition": ns.defs[0],
                               "simplex": ns.simplex,
                               "poly-degree": ns.poly_degree})
    rep.line("unknowns (coefficient forms):")
    for sym in sorted(system.unknowns):
        p = system.table.form_degree[sym]
        rep.line("  %s : %d-form on Delta^%d" % (sym, p, ns.simplex))
    rep.line("equations (one per basis component):")
    for text in system.pretty():
        rep.line("  " + text)
    rep.data["results"]["equations"] = system.pretty()
    return rep.emit(ns.json)


def cmd_mc_moduli(ns, argv) -> int:
    alg = load_algebra(ns.defs[0], ns.size, ns.weight)
    rep = Report(_echo(argv), {"definition": ns.defs[0],
                               "support": ns.support or "full"})
    moduli = pi0_moduli(alg, support=ns.support)
    flag = "complete" if moduli.kind == "gauge-orbits" else moduli.kind
    if moduli.support is not None:
        flag += ", support %d" % moduli.support
    rep.value("classes", moduli.count(), flag)
    for i, r in enumerate(moduli.representatives):
        rep.line("  class %d: %r" % (i, r))
    rep.verdict("completeness-certificate", True)
    return rep.emit(ns.json)


def cmd_verify(ns, argv) -> int:
    what = ns.what
    rep = Report(_echo(argv), {"check": what})
    if what == "theorem-f":
        algs = [load_algebra(ref, ns.size, ns.weight) for ref in ns.defs]
        report = verify_theorem_f(algs, ns.weight or 4,
                                  vertex_support=ns.support or 2)
        rep.value("moduli(product)", report["moduli_product"], "complete")
        rep.value("moduli(factors)", "+".join(map(str, report["moduli_factors"])),
                  "complete")
        rep.verdict("moduli-bijection", report["bijection"])
        for idx, cell in sorted(report["acyclicity"].items()):
            rep.verdict("acyclicity(g%d u 0)" % idx, cell["pass"])
    elif what == "components":
        alg = load_algebra(ns.defs[0], ns.size, ns.weight)
        report = verify_component_decomposition(alg, support=ns.support)
        rep.value("moduli", report["moduli_count"], "complete")
        rep.verdict("cover-homology-isomorphisms", report["pass"])
    elif what == "free-product-cohomology":
        g = load_algebra(ns.defs[0], ns.size, ns.weight)
        h = load_algebra(ns.defs[1], ns.size, ns.weight)
        report = compare_free_product(g, h, ns.weight or 4,
                                      ns.words or ((ns.weight or 4) - 1))
        for (w, n), cell in sorted(report["cells"].items()):
            rep.value("w=%d,deg=%d" % (w, n),
                      "%d|%d" % (cell["product"], cell["factors"]),
                      "faithful window" if cell["equal"] else "mismatch")
        rep.verdict("free-product-cohomology", report["pass"])
    else:
        raise DefinitionError("unknown verification %r" % what)
    return rep.emit(ns.json)


def cmd_localize(ns, argv) -> int:
    alg = load_algebra(ns.defs[0], ns.size, ns.weight)
    u = parse_element(ns.at, element_degrees(alg))
    loc, _ = localize(alg, u)
    rep = Report(_echo(argv), {"definition": ns.defs[0], "at": ns.at})
    dims = loc.cohomology_dims()
    if not dims:
        rep.line("  localization is the terminal algebra (1 = 0)" if
                 loc.space.total_dim() == 0 else "  cohomology vanishes")
    for n in sorted(dims):
        rep.value("H^%d" % n, dims[n], "exact")
    exact = localization_exactness_report(alg, u)
    rep.verdict("exactness H(A[u^-1]) = H(A)[u^-1]", exact["pass"])
    return rep.emit(ns.json)


def cmd_split(ns, argv) -> int:
    alg = load_algebra(ns.defs[0], ns.size, ns.weight)
    rep = Report(_echo(argv), {"definition": ns.defs[0]})
    factors = idempotent_split(alg)
    rep.value("factors", len(factors), "exact")
    ok = True
    for i, (u, f, kind) in enumerate(factors):
        dims = f.cohomology_dims()
        rep.line("  factor %d (%s): idempotent %r" % (i, kind, u))
        h0 = dims.get(0, 0)
        neg = any(n < 0 and v for n, v in dims.items())
        rep.value("factor%d H^0" % i, h0, "exact")
        ok = ok and h0 == 1 and not neg
    rep.verdict("connected-factors", ok)
    return rep.emit(ns.json)


def cmd_minimal_model(ns, argv) -> int:
    alg = load_algebra(ns.defs[0], ns.size, ns.weight)
    rep = Report(_echo(argv), {"definition": ns.defs[0], "arity": ns.arity})
    model = minimal_model(alg, ns.arity)
    dims = model.homology_dims()
    for n in sorted(dims):
        rep.value("generators in degree %d" % n, dims[n], "exact")
    rep.verdict("differential-has-no-linear-part", model.linear_part_is_zero())
    rep.value("arity-3 corrections", len(model.l3), "exact")
    rep.verdict("quasi-isomorphism-on-homology", model.quasi_iso_verified())
    return rep.emit(ns.json)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mclie",
        description="exact computer algebra for dg Lie algebras and their "
                    "Maurer-Cartan spaces")
    sub = parser.add_subparsers(dest="cmd", required=True)

    def common(p, ndefs="*"):
        p.add_argument("defs", nargs=ndefs,
                       help="definition files or builtin names")
        p.add_argument("--builtin", action="append", default=[],
                       help="add a builtin definition (may repeat)")
        p.add_argument("--size", type=int, default=None)
        p.add_argument("--weight", type=int, default=None)
        p.add_argument("--json", default=None,
                       help="also write a machine-readable report")

    p = sub.add_parser("check", help="run the construction axiom suite")
    common(p)
    p = sub.add_parser("homology", help="homology table with flags")
    common(p)
    p.add_argument("--range", default=None, help="a..b degree range")
    p = sub.add_parser("ce", help="Chevalley-Eilenberg cohomology table")
    common(p)
    p.add_argument("--words", type=int, required=True)
    p.add_argument("--range", default=None)
    p = sub.add_parser("harrison", help="Harrison complex of an augmented cdga")
    common(p)
    p = sub.add_parser("free-product", help="free product of two dglas")
    common(p)
    p = sub.add_parser("disjoint-product", help="(g * s)^x * h")
    common(p)
    p = sub.add_parser("mc-verify", help="exact MC residual of an element")
    common(p)
    p.add_argument("--element", required=True)
    p = sub.add_parser("mc-constraints", help="print the MC constraint system")
    common(p)
    p.add_argument("--simplex", type=int, required=True)
    p.add_argument("--poly-degree", type=int, required=True)
    p = sub.add_parser("mc-moduli", help="pi_0 with completeness certificate")
    common(p)
    p.add_argument("--support", type=int, default=None)
    p = sub.add_parser("verify", help="theorem checks")
    p.add_argument("what", choices=["theorem-f", "components",
                                    "free-product-cohomology"])
    common(p)
    p.add_argument("--support", type=int, default=None)
    p.add_argument("--words", type=int, default=None)
    p = sub.add_parser("localize", help="localization at a cocycle")
    common(p)
    p.add_argument("--at", required=True)
    p = sub.add_parser("split", help="idempotent splitting of H^0")
    common(p)
    p = sub.add_parser("minimal-model", help="homotopy-transfer minimal model")
    common(p)
    p.add_argument("--arity", type=int, default=3)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = make_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    ns.defs = list(ns.defs) + ["builtin:%s" % b for b in ns.builtin]
    if not ns.defs and ns.cmd != "verify":
        print("error: no definitions given", file=sys.stderr)
        return 2
    try:
        if ns.cmd == "check":
            return cmd_check(ns, argv)
        if ns.cmd == "homology":
            return cmd_homology(ns, argv)
        if ns.cmd == "ce":
            return cmd_ce(ns, argv)
        if ns.cmd == "harrison":
            if ns.weight is None:
                print("error: harrison requires --weight", file=sys.stderr)
                return 2
            return cmd_harrison(ns, argv)
        if ns.cmd == "free-product":
            if ns.weight is None:
                print("error: free-product requires --weight", file=sys.stderr)
                return 2
            return cmd_product(ns, argv, "free")
        if ns.cmd == "disjoint-product":
            if ns.weight is None:
                print("error: disjoint-product requires --weight",
                      file=sys.stderr)
                return 2
            return cmd_product(ns, argv, "disjoint")
        if ns.cmd == "mc-verify":
            return cmd_mc_verify(ns, argv)
        if ns.cmd == "mc-constraints":
            return cmd_mc_constraints(ns, argv)
        if ns.cmd == "mc-moduli":
            return cmd_mc_moduli(ns, argv)
        if ns.cmd == "verify":
            return cmd_verify(ns, argv)
        if ns.cmd == "localize":
            return cmd_localize(ns, argv)
        if ns.cmd == "split":
            return cmd_split(ns, argv)
        if ns.cmd == "minimal-model":
            return cmd_minimal_model(ns, argv)
        print("error: unknown command", file=sys.stderr)
        return 2
    except DefinitionError as e:
        print("parse error: %s" % e, file=sys.stderr)
        return 2
    except (TruncationTooLarge,) as e:
        print("resource cap: %s" % e, file=sys.stderr)
        return 3
    except (NonSplitAlgebra, OddDegreeUnit, NonCocycle, NoAugmentation,
            IncompleteSolve, AxiomViolation, CdgaAxiomViolation) as e:
        print("%s: %s" % (type(e).__name__, e), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

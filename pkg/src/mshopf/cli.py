"""Command-line front end.

Exit codes: 0 success, 1 graph-spec parse error, 2 precondition violation,
3 verification failure.  Diagnostics go to stderr as one JSON object.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import io
from .graphs import GraphError, automorphism_order, external_labelings, is_one_pi, loop_number
from .hopf import H, H_ALL, as_generator, pi_ck, pi_ck_report

EXIT_PARSE, EXIT_PRECONDITION, EXIT_VERIFY = 1, 2, 3


class Precondition(Exception):
    pass


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _load(path: str, rho: int | None):
    spec = io.load_spec(path)
    G = spec.graph
    if rho is not None and any(s > rho for s in G.scales):
        raise Precondition(f"graph {spec.name!r} has scales above --rho {rho}")
    return spec, G


def _generator(G):
    try:
        return as_generator(G)
    except GraphError as exc:
        raise Precondition(str(exc)) from None


def cmd_parse(args) -> dict:
    spec, G = _load(args.graph, args.rho)
    out = {"name": spec.name, "graph": io.graph_to_json(G), "loops": loop_number(G)}
    try:
        out["one_pi"] = is_one_pi(G)
    except GraphError:
        out["one_pi"] = False
    out["sigma"] = automorphism_order(G)
    out["N"] = external_labelings(G)
    return out


def cmd_coproduct(args) -> dict:
    _, G = _load(args.graph, args.rho)
    h = H_ALL if args.all_divergent else H
    return {"coproduct": io.tensor_to_json(h.coproduct(_generator(G)))}


def cmd_antipode(args) -> dict:
    _, G = _load(args.graph, args.rho)
    h = H_ALL if args.all_divergent else H
    return {"antipode": io.element_to_json(h.antipode(_generator(G)))}


def cmd_forests(args) -> dict:
    _, G = _load(args.graph, args.rho)
    h = H_ALL if args.all_divergent else H
    g = _generator(G)
    forests = [
        [[i for i in range(len(g.edges)) if m >> i & 1] for m in f] for f in h.forests(g)
    ]
    s = h.antipode_by_forests(g)
    return {
        "graph": io.graph_to_json(g),
        "forests": forests,
        "antipode": io.element_to_json(s),
        "matches_recursive": s == h.antipode(g),
    }


def cmd_gn_tree(args):
    from .multiscale import gn_tree

    _, G = _load(args.graph, args.rho)
    if args.pad_gn and args.rho is None:
        raise Precondition("--pad-gn needs --rho")
    T = gn_tree(_generator(G), args.rho if args.pad_gn else None)
    if args.format == "dot":
        return io.gn_tree_to_dot(T)
    return io.gn_tree_to_json(T)


def cmd_morphism(args):
    _, G = _load(args.graph, args.rho)
    if args.pi_ck:
        rho = 2 if args.rho is None else args.rho
        rep = pi_ck_report(G.graph, rho)
        x = pi_ck(G.graph, rho)
        return {
            "rho": rho,
            "patterns": [
                {"pattern": list(r.pattern), "coefficients": list(r.coefficients), "classes": r.n_classes}
                for r in rep
            ],
            "coefficients": sorted((c for r in rep for c in r.coefficients), reverse=True),
            "total": int(sum(c for _, c in x.items())),
            "classes": len(x),
        }
    from .gntrees import check_pi_gn_morphism, check_pi_rt_morphism, pi_rt
    from .multiscale import gn_tree

    g = _generator(G)
    pad = args.rho if args.pad_gn else None
    T = gn_tree(g, pad)
    if args.pi_rt:
        return {"rooted_tree": repr(pi_rt(T)), "intertwines": check_pi_rt_morphism(T)}
    return {"gn_tree": io.gn_tree_to_json(T), "intertwines": check_pi_gn_morphism(g, pad)}


def cmd_counterterms(args) -> dict:
    from .renorm import ToyAmplitude, renormalized_amplitude, renormalized_by_forests, useful_counterterms

    _, G = _load(args.graph, args.rho)
    g = _generator(G)
    A = ToyAmplitude(args.amplitude)
    cu = useful_counterterms(g, A)
    return {
        "amplitude_model": args.amplitude,
        "tau_A": io.value_to_json(A.tau(A(g))),
        "C_U": io.value_to_json(cu),
        "C_U_equals_tauA_S": cu == A.tau_amplitude()(H.antipode(g)),
        "A_UR": io.value_to_json(renormalized_amplitude(G, A)),
        "A_UR_forest_form": io.value_to_json(renormalized_by_forests(G, A)),
    }


def cmd_effective(args) -> dict:
    from .effective import check_effective_corollary, psi
    from .renorm import ToyAmplitude

    rho = 1 if args.rho is None else args.rho
    A = ToyAmplitude(args.amplitude)
    series = psi(A.tau_amplitude(), rho, args.order)
    res = check_effective_corollary(A, rho, args.order)
    return {
        "rho": rho,
        "order": args.order,
        "psi_tauA": series.to_json(),
        "corollary_holds": res.holds,
        "coefficients": [
            {"power": n, "bare": b.to_json(), "effective": e.to_json()} for n, b, e in res.coefficients()
        ],
    }


def cmd_lemma(args) -> dict:
    from .effective import check_combinatorial_lemma
    from .graphs import bubble

    g1 = io.load_spec(args.g1).graph.graph if args.g1 else bubble()
    g2 = io.load_spec(args.g2).graph.graph if args.g2 else bubble()
    res = check_combinatorial_lemma(g1, g2, source=args.source)
    return {
        "lhs": io.frac(res.lhs),
        "rhs": io.frac(res.rhs),
        "holds": res.holds,
        "terms": [
            {"graph": io.graph_to_json(g.assign()), "weight": io.frac(w), "insertions": n}
            for g, w, n in res.terms
        ],
    }


def cmd_verify(args):
    from .verify import GeneratorConfig, run_suite

    cfg = GeneratorConfig(
        max_loops=args.max_loops,
        rho=3 if args.rho is None else args.rho,
        max_vertices=args.max_vertices,
    )
    checks, elapsed = run_suite(args.suite, cfg)
    lines = [c.line() for c in checks]
    lines.append(f"suite {args.suite}: {elapsed:.1f}s")
    failures = [c for c in checks if not c.ok]
    for c in failures:
        lines.append("counterexample " + json.dumps({"property": c.name, "example": repr(c.counterexample)}))
    return "\n".join(lines) + "\n", (EXIT_VERIFY if failures else 0)


COMMANDS = {
    "parse": cmd_parse,
    "coproduct": cmd_coproduct,
    "antipode": cmd_antipode,
    "forests": cmd_forests,
    "gn-tree": cmd_gn_tree,
    "morphism": cmd_morphism,
    "counterterms": cmd_counterterms,
    "effective": cmd_effective,
    "lemma": cmd_lemma,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    from .verify import SUITES

    p = argparse.ArgumentParser(prog="mshopf", description="Multiscale Hopf algebra toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, graph=True):
        if graph:
            sp.add_argument("graph", help="graph-spec file")
        sp.add_argument("--rho", type=_nonneg, default=None, help="ultraviolet cutoff")
        sp.add_argument("--format", choices=("json", "dot", "text"), default="json")
        return sp

    for name in ("parse", "coproduct", "antipode", "forests"):
        sp = common(sub.add_parser(name))
        sp.add_argument("--all-divergent", action="store_true", help="drop the high condition")
    sp = common(sub.add_parser("gn-tree"))
    sp.add_argument("--pad-gn", action="store_true", help="pad leaves down to depth rho")
    sp = common(sub.add_parser("morphism"))
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--pi-ck", action="store_true")
    grp.add_argument("--pi-gn", action="store_true")
    grp.add_argument("--pi-rt", action="store_true")
    sp.add_argument("--pad-gn", action="store_true")
    sp = common(sub.add_parser("counterterms"))
    sp.add_argument("--amplitude", choices=("toy", "symbols", "local"), default="toy")
    sp = common(sub.add_parser("effective"), graph=False)
    sp.add_argument("--order", type=_positive, default=3)
    sp.add_argument("--amplitude", choices=("toy", "symbols", "local"), default="toy")
    sp = common(sub.add_parser("lemma"), graph=False)
    sp.add_argument("g1", nargs="?", help="inserted quadruped (default: bubble)")
    sp.add_argument("g2", nargs="?", help="host quadruped (default: bubble)")
    sp.add_argument("--source", choices=("oracle", "core"), default="oracle")
    sp = common(sub.add_parser("verify"), graph=False)
    sp.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="hopf")
    sp.add_argument("--max-loops", type=_nonneg, default=3)
    sp.add_argument("--max-vertices", type=_nonneg, default=4)
    return p


def _fail(code: int, kind: str, message: str) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return code


def main(argv=None) -> int:
    from .effective import CatalogDepthError
    from .renorm import UnsupportedSector
    from .wick import OracleError

    args = build_parser().parse_args(argv)
    if getattr(args, "format", "json") == "dot" and args.command != "gn-tree":
        return _fail(EXIT_PRECONDITION, "precondition", "DOT output is only available for gn-tree")
    try:
        result = COMMANDS[args.command](args)
    except io.SpecError as exc:
        return _fail(EXIT_PARSE, "parse", str(exc))
    except UnsupportedSector as exc:
        return _fail(EXIT_PRECONDITION, "unsupported-sector", str(exc))
    except (Precondition, GraphError, CatalogDepthError, OracleError) as exc:
        return _fail(EXIT_PRECONDITION, "precondition", str(exc))
    code = 0
    if isinstance(result, tuple):
        result, code = result
    if isinstance(result, str):
        sys.stdout.write(result)
    else:
        sys.stdout.write(io.dumps(result) + "\n")
    return code


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line interface: ``sqfpow {profile,verify,betti,explore-cycles}``.

Exit codes: 0 computed / verified, 1 a mathematical counterexample was
found, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterator

from .graphs import (
    Graph,
    GraphDomainError,
    GraphInputError,
    connected_components,
    forest_corpus,
    graph_from_edges,
    is_forest,
    make_family,
    matching_number,
    path,
    random_forest,
)
from .monomials import MonomialError, edge_ideal, squarefree_power
from .resolution import GF2, FieldSpec, ResolutionError, betti_table, invariants

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE = 0, 1, 2
CYCLE_CAP = 16
SUITES = ("splitting", "forest-recursion", "path", "section4", "char-independence", "nonincreasing")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# graph input
# ---------------------------------------------------------------------------


def parse_graph_text(text: str) -> Graph:
    """``n <count>`` (optional, first data line), then ``u v`` per line; ``#`` comments."""
    n = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "n":
            if n is not None or pairs or len(tok) != 2:
                raise UsageError(f"line {lineno}: 'n <count>' must be the first data line")
            n = _int(tok[1], lineno)
            continue
        if len(tok) != 2:
            raise UsageError(f"line {lineno}: expected 'u v', got {line!r}")
        pairs.append((_int(tok[0], lineno), _int(tok[1], lineno)))
    if n is None:
        if not pairs:
            raise UsageError("graph file has no edges and no 'n' line")
        n = max(max(p) for p in pairs)
    return graph_from_edges(n, pairs)


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise UsageError(f"line {lineno}: {tok!r} is not an integer") from None


def parse_family(spec: str, seed: int | None) -> Graph:
    kind, _, arg = spec.partition(":")
    if kind == "random-forest":
        n = int(arg) if arg else 8
        return random_forest(n, seed if seed is not None else 0)
    if not arg:
        raise UsageError(f"family {spec!r} needs a size, e.g. {kind}:6")
    try:
        n = int(arg)
    except ValueError:
        raise UsageError(f"bad size in {spec!r}") from None
    return make_family(kind, n)


def graph_from_args(args) -> Graph:
    if bool(args.graph) == bool(args.family):
        raise UsageError("give exactly one of --graph or --family")
    if args.graph:
        try:
            return parse_graph_text(Path(args.graph).read_text(encoding="utf-8"))
        except OSError as e:
            raise UsageError(f"cannot read {args.graph}: {e.strerror}") from None
    return parse_family(args.family, args.seed)


def field_from_args(args) -> FieldSpec:
    text = args.field or os.environ.get("SQFPOW_FIELD") or "gf2"
    try:
        return FieldSpec.parse(text)
    except ValueError as e:
        raise UsageError(str(e)) from None


def k_range(text: str | None, nu: int) -> list[int]:
    if text is None:
        return list(range(1, nu + 1))
    lo, _, hi = text.partition("..")
    try:
        ks = list(range(int(lo), int(hi) + 1)) if hi else [int(lo)]
    except ValueError:
        raise UsageError(f"bad --k {text!r}; use 2 or 1..3") from None
    if not ks or ks[0] < 1 or ks[-1] > nu:
        raise UsageError(f"--k {text} outside 1..{nu}")
    return ks


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_profile(args, out) -> int:
    from .forest_engine import profile

    G = graph_from_args(args)
    fld = field_from_args(args)
    nu = matching_number(G)
    if nu == 0:
        raise UsageError("graph has no edges")
    report = profile(G, fld, k_range(args.k, nu))
    if args.json:
        print(json.dumps(report.to_dict(), sort_keys=True), file=out)
    else:
        print(report.format(), file=out)
    return EXIT_OK


def cmd_betti(args, out) -> int:
    G = graph_from_args(args)
    fld = field_from_args(args)
    if args.power < 1:
        raise UsageError("--power must be >= 1")
    I = squarefree_power(edge_ideal(G), args.power)
    if I.is_zero:
        raise UsageError(f"I(G)^[{args.power}] is the zero ideal (matching number {matching_number(G)})")
    table = betti_table(I, fld)
    inv = invariants(I, fld)
    doc = {
        "n": I.n,
        "ideal": str(I),
        "field": fld.name,
        "betti": [{"i": i, "j": j, "beta": b} for (i, j), b in table.sorted_items()],
        "projdim": inv.projdim,
        "reg": inv.reg,
        "depth_quotient": inv.depth_quotient,
    }
    print(json.dumps(doc), file=out)
    return EXIT_OK


def cmd_explore_cycles(args, out) -> int:
    from .forest_engine import cycle_question

    if not 3 <= args.n_max <= CYCLE_CAP:
        raise UsageError(f"--n-max must be in 3..{CYCLE_CAP}")
    rows = cycle_question(args.n_max, field_from_args(args), cap=CYCLE_CAP)
    print(f"{'n':>3} {'k':>3} {'g(P_n)':>7} {'g(C_n)':>7}  note", file=out)
    for r in rows:
        if r.k == 1:
            note = "k=1: differ by %d" % (r.g_path - r.g_cycle)
        else:
            note = "equal" if r.equal else "DIFFERENT"
        print(f"{r.n:>3} {r.k:>3} {r.g_path:>7} {r.g_cycle:>7}  {note}", file=out)
    return EXIT_OK


# -- verification suites ----------------------------------------------------


@dataclass
class Failure:
    graph: Graph
    k: int | None
    expected: object
    got: object
    what: str

    def transcript(self) -> str:
        ks = "" if self.k is None else f" k={self.k}"
        return f"COUNTEREXAMPLE [{self.what}] {self.graph}{ks}: expected {self.expected}, got {self.got}"


def _suite_graphs(args, default: Callable[[], list[Graph]]) -> Iterator[Graph]:
    if args.graph or args.family:
        if args.family and args.family.startswith("random-forest") and args.trials:
            kind, _, arg = args.family.partition(":")
            seed = args.seed or 0
            for s in range(seed, seed + args.trials):
                yield random_forest(int(arg) if arg else 2 + s % 8, s)
            return
        yield graph_from_args(args)
        return
    yield from default()


def _forest_only(G: Graph) -> None:
    if not is_forest(G):
        raise UsageError(f"{G} is not a forest")


def _suite_splitting(args, fld) -> Iterator[Failure]:
    from .splittings import forest_power_splitting, verify_betti_splitting

    def default():
        return [G for G in forest_corpus(args.n_max or 7) if matching_number(G) >= 3]

    for G in _suite_graphs(args, default):
        _forest_only(G)
        if matching_number(G) < 3 or all(len(c) <= 2 for c in connected_components(G)):
            continue
        for k in range(1, matching_number(G) + 1):
            fs = forest_power_splitting(G, k)
            for name, ok in fs.identities.items():
                if not ok:
                    yield Failure(G, k, "identity holds", "fails", f"ideal identity {name}")
            v = verify_betti_splitting(fs.splitting(), fld)
            if not v:
                yield Failure(G, k, v.ranks and v.ranks[1] + v.ranks[2], v.ranks and v.ranks[0], f"splitting at {v.cell}")
            if fs.t > 0:
                v = verify_betti_splitting(fs.inner_splitting(), fld)
                if not v:
                    yield Failure(G, k, "J = J1 + J2 splits", v.cell, "inner splitting")


def _suite_forest_recursion(args, fld) -> Iterator[Failure]:
    from .forest_engine import _oracle_g, _oracle_reg, g_forest, reg_forest

    for G in _suite_graphs(args, lambda: forest_corpus(args.n_max or 8)):
        _forest_only(G)
        for k in range(1, matching_number(G) + 1):
            a, b = g_forest(G, k, fld), _oracle_g(G, k, fld)
            if a != b:
                yield Failure(G, k, b, a, "g recursion vs oracle")
            a, b = reg_forest(G, k, fld), _oracle_reg(G, k, fld)
            if a != b:
                yield Failure(G, k, b, a, "reg recursion vs oracle")


def _suite_path(args, fld) -> Iterator[Failure]:
    from .forest_engine import path_g_closed_form
    from .resolution import g_value

    if args.graph or args.family:
        raise UsageError("the path suite takes --n-max only")
    for n in range(3, (args.n_max or 10) + 1):
        I = edge_ideal(path(n))
        for k in range(1, n // 2 + 1):
            a, b = g_value(I, k, fld), path_g_closed_form(n, k)
            if a != b:
                yield Failure(path(n), k, b, a, "path closed form")


def _suite_section4(args, fld) -> Iterator[Failure]:
    from .admissible import verify_section4

    for G in _suite_graphs(args, lambda: forest_corpus(args.n_max or 7)):
        _forest_only(G)
        for msg in verify_section4(G, fld).failures:
            yield Failure(G, None, "all statements hold", msg, "aim / regularity")


def _suite_char(args, fld) -> Iterator[Failure]:
    from .forest_engine import char_independence
    from .resolution import GF3, QQ

    for G in _suite_graphs(args, lambda: forest_corpus(args.n_max or 7)):
        _forest_only(G)
        v = char_independence(G, [GF2, GF3, QQ])
        if not v:
            yield Failure(G, None, "identical tables", "; ".join(v.details), "characteristic")


def _suite_nonincreasing(args, fld) -> Iterator[Failure]:
    from .forest_engine import check_nonincreasing

    for G in _suite_graphs(args, lambda: forest_corpus(args.n_max or 8)):
        _forest_only(G)
        v = check_nonincreasing(G, fld)
        if not v:
            yield Failure(G, None, "non-increasing, g(nu)=#isolated", "; ".join(v.details), "monotonicity")


SUITE_RUNNERS = {
    "splitting": _suite_splitting,
    "forest-recursion": _suite_forest_recursion,
    "path": _suite_path,
    "section4": _suite_section4,
    "char-independence": _suite_char,
    "nonincreasing": _suite_nonincreasing,
}


def cmd_verify(args, out) -> int:
    fld = field_from_args(args)
    for failure in SUITE_RUNNERS[args.suite](args, fld):
        print(failure.transcript(), file=out)
        return EXIT_COUNTEREXAMPLE
    print(f"suite {args.suite}: all checks passed", file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sqfpow", description="Squarefree powers of edge ideals.")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_opts(sp):
        sp.add_argument("--graph", help="edge-list file ('n <count>' line optional)")
        sp.add_argument("--family", help="path:n, cycle:n, star:n or random-forest[:n]")
        sp.add_argument("--seed", type=int, default=None, help="seed for random-forest")
        sp.add_argument("--field", help="gf2 (default), gf3, gfp or q; env SQFPOW_FIELD")

    sp = sub.add_parser("profile", help="per-k table of d_k, depth, g, reg, aim")
    graph_opts(sp)
    sp.add_argument("--k", help="single k or range lo..hi")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_profile)

    sp = sub.add_parser("verify", help="run a verification suite")
    graph_opts(sp)
    sp.add_argument("--suite", required=True, choices=SUITES)
    sp.add_argument("--n-max", type=_positive, default=None, help="corpus size bound")
    sp.add_argument("--trials", type=_positive, default=None, help="random-forest fuzz trials")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("betti", help="Betti table of I(G)^[k] as JSON")
    graph_opts(sp)
    sp.add_argument("--power", type=int, default=1)
    sp.set_defaults(func=cmd_betti)

    sp = sub.add_parser("explore-cycles", help="g of paths and cycles side by side")
    sp.add_argument("--n-max", type=int, default=8)
    sp.add_argument("--field")
    sp.set_defaults(func=cmd_explore_cycles)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args, out)
    except (UsageError, GraphInputError, GraphDomainError, MonomialError, ResolutionError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

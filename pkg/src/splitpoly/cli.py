"""Command-line entry point: ``splitpoly <command> ...``.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 unreadable or
malformed input, 4 a value out of the supported range.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .checks import run_checks
from .formats import (
    ParseError,
    pair_csv,
    parse_newick,
    parse_phylip,
    read_network,
    vectors_csv,
    write_newick,
)
from .geometry import facet_sieve, irredundant_facets, vertex_enumerate
from .inference import bme_exact, polysplit
from .networks import enumerate_binary_trees, enumerate_level1_networks, exterior_network
from .polytopes import csn_f_vector, csn_polygon_counts, polytope_vertices, relaxed_bme
from .splits import distance_vector, pairs
from .vectors import bme_vector, network_vector

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_PARSE, EXIT_RANGE = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build() -> argparse.ArgumentParser:
    p = _Parser(prog="splitpoly", description="Exact split-network polytopes and BME tree inference.")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks (default 0)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("enumerate", help="list binary trees or level-1 networks")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--k", type=int, help="bridge count (networks only; default n-3)")
    kind = e.add_mutually_exclusive_group()
    kind.add_argument("--trees", action="store_true")
    kind.add_argument("--networks", action="store_true")

    v = sub.add_parser("vector", help="pair vector of a Newick tree or network JSON document")
    v.add_argument("--in", dest="path", required=True)
    v.add_argument("--kind", choices=["vertex", "distance"], default="vertex",
                   help="polytope vertex vector (default) or weighted distance vector")

    for name, helptext in (("vertices", "vertex count and CSV"), ("facets", "facet count and CSV")):
        q = sub.add_parser(name, help=helptext)
        q.add_argument("--polytope", choices=["stsp", "bme", "bmenk", "relaxed"], required=True)
        q.add_argument("--n", type=int, required=True)
        q.add_argument("--k", type=int)
        q.add_argument("--csv", action="store_true", help="print the CSV instead of the count")
        q.add_argument("--out", help="also write the CSV to this file")

    ps = sub.add_parser("polysplit", help="LP over the relaxed BME polytope")
    ps.add_argument("--dist", required=True, help="PHYLIP distance matrix")
    ps.add_argument("--fallback", action="store_true", help="answer exhaustively if the optimum is fractional")

    bx = sub.add_parser("bme-exact", help="exhaustive balanced minimum evolution")
    bx.add_argument("--dist", required=True, help="PHYLIP distance matrix")

    c = sub.add_parser("csn-fvector", help="simplex counts of the circular split network complex")
    c.add_argument("--n", type=int, required=True)

    ch = sub.add_parser("check", help="run the theorem checks")
    ch.add_argument("--level", choices=["fast", "full"], default="fast")
    return p


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def _network_str(net) -> str:
    bridges = " ".join(str(b) for b in sorted(net.bridges))
    cycle = ",".join(map(str, net.ordering.cycle))
    return f"({cycle}) {bridges}".rstrip()


def _cmd_enumerate(a, out) -> int:
    if a.networks or a.k is not None:
        k = a.n - 3 if a.k is None else a.k
        items = [_network_str(net) for net in enumerate_level1_networks(a.n, k)]
    else:
        items = [write_newick(t) for t in enumerate_binary_trees(a.n)]
    for line in items:
        out(line)
    out(f"count: {len(items)}")
    return EXIT_OK


def _cmd_vector(a, out) -> int:
    text = _read(a.path)
    if text.lstrip().startswith("{"):
        doc = read_network(text)
        if a.kind == "distance":
            x = distance_vector(doc.system, doc.weighting())
        else:
            x = network_vector(exterior_network(doc.network))
        n = doc.n
    else:
        t, w = parse_newick(text, lengths=True)
        n = t.n
        if a.kind == "distance":
            weights = {s: w.get(s, Fraction(1)) for s in t.all_splits()}
            x = distance_vector(t, weights)
        else:
            x = bme_vector(t)
    out(pair_csv(x, n), end="")
    return EXIT_OK


def _vertex_list(a) -> list[tuple]:
    if a.polytope == "relaxed":
        return list(vertex_enumerate(relaxed_bme(a.n)).vertices)
    if a.polytope == "bmenk" and a.k is None:
        raise ValueError("--polytope bmenk needs --k")
    k = {"stsp": 0, "bme": a.n - 3}.get(a.polytope, a.k)
    return list(polytope_vertices(a.n, k).vertices)


def _emit(a, out, csv: str, label: str, count: int) -> None:
    if a.out:
        Path(a.out).write_text(csv)
    if a.csv:
        out(csv, end="")
    else:
        out(f"{label}: {count}")


def _cmd_vertices(a, out) -> int:
    verts = _vertex_list(a)
    _emit(a, out, vectors_csv(verts, a.n), "vertices", len(verts))
    return EXIT_OK


def _cmd_facets(a, out) -> int:
    verts = _vertex_list(a)
    if a.polytope == "relaxed":
        p = relaxed_bme(a.n)
        rows = [p.inequalities[g[0]] for g in irredundant_facets(p, verts)]
    else:
        rows = [(f.normal, f.bound) for f in facet_sieve(verts)]
    head = ["facet"] + [f"{i}-{j}" for i, j in pairs(a.n)] + ["bound"]
    lines = [",".join(head)]
    for idx, (normal, bound) in enumerate(rows):
        lines.append(",".join([str(idx)] + [str(Fraction(v)) for v in normal] + [str(Fraction(bound))]))
    _emit(a, out, "\n".join(lines) + "\n", "facets", len(rows))
    return EXIT_OK


def _cmd_polysplit(a, out) -> int:
    dm = parse_phylip(_read(a.dist))
    res = polysplit(dm.vector, dm.n, fallback=a.fallback)
    out(f"status: {res.status}")
    if res.tree is not None:
        out(f"tree: {write_newick(res.tree, dm.names)}")
    out(f"value: {res.value}")
    if res.status != "tree":
        out(f"lower bound: {res.lower_bound}")
        out(pair_csv(res.point, dm.n, dm.names), end="")
    return EXIT_OK


def _cmd_bme_exact(a, out) -> int:
    dm = parse_phylip(_read(a.dist))
    res = bme_exact(dm.vector, dm.n)
    out(f"tree: {write_newick(res.tree, dm.names)}")
    out(f"value: {res.value}")
    if len(res.ties) > 1:
        out(f"ties: {len(res.ties)}")
        for t in res.ties[1:]:
            out(f"tie: {write_newick(t, dm.names)}")
    return EXIT_OK


def _cmd_csn(a, out) -> int:
    out("f-vector: " + " ".join(map(str, csn_f_vector(a.n))))
    out("polygon counts: " + " ".join(map(str, csn_polygon_counts(a.n))))
    return EXIT_OK


def _cmd_check(a, out) -> int:
    return EXIT_OK if run_checks(a.level, a.seed, out=out) else EXIT_CHECK


_COMMANDS = {
    "enumerate": _cmd_enumerate,
    "vector": _cmd_vector,
    "vertices": _cmd_vertices,
    "facets": _cmd_facets,
    "polysplit": _cmd_polysplit,
    "bme-exact": _cmd_bme_exact,
    "csn-fvector": _cmd_csn,
    "check": _cmd_check,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = _build().parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    def out(line: str = "", end: str = "\n") -> None:
        sys.stdout.write(line + end)

    try:
        return _COMMANDS[args.command](args, out)
    except ParseError as exc:
        where = getattr(args, "dist", None) or getattr(args, "path", None) or "input"
        print(f"splitpoly: {where}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"splitpoly: {exc}", file=sys.stderr)
        return EXIT_RANGE


if __name__ == "__main__":
    sys.exit(main())

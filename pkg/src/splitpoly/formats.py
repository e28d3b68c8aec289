"""Readers and writers: PHYLIP distance matrices, Newick trees, network JSON, CSV.

All numbers are read exactly: decimals such as ``0.25`` become
``Fraction(1, 4)``.  Parse failures raise a :class:`ParseError` subclass
that carries the 1-based line (and column, where meaningful).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .networks import CircularSplitNetwork, PhyloTree
from .splits import CircularOrdering, Split, SplitSystem, interval_in, pairs

__all__ = [
    "ParseError",
    "CountError",
    "ValueFormatError",
    "AsymmetryError",
    "DiagonalError",
    "NewickError",
    "NetworkFormatError",
    "DistanceMatrixFile",
    "NetworkDocument",
    "parse_phylip",
    "write_phylip",
    "parse_newick",
    "write_newick",
    "read_network",
    "write_network",
    "pair_csv",
    "vectors_csv",
    "parse_rational",
]

NETWORK_FORMAT = "splitpoly-network"
NETWORK_VERSION = 1


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line, self.column = line, column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class CountError(ParseError):
    """Wrong number of rows or entries."""


class ValueFormatError(ParseError):
    """An entry is not a nonnegative exact number."""


class AsymmetryError(ParseError):
    pass


class DiagonalError(ParseError):
    pass


class NewickError(ParseError):
    pass


class NetworkFormatError(ParseError):
    pass


def parse_rational(text: str) -> Fraction:
    """``'0.25'``, ``'1/4'``, ``'2.5e-1'`` -> exact fraction."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact number: {text!r}") from exc
    return value


# ---------------------------------------------------------------- PHYLIP


@dataclass(frozen=True)
class DistanceMatrixFile:
    names: tuple[str, ...]
    matrix: tuple[tuple[Fraction, ...], ...]

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def vector(self) -> tuple[Fraction, ...]:
        return tuple(self.matrix[i - 1][j - 1] for i, j in pairs(self.n))


def parse_phylip(text: str) -> DistanceMatrixFile:
    """Square PHYLIP distance matrix; taxa are numbered in file order."""
    lines = [(no, ln) for no, ln in enumerate(text.splitlines(), 1) if ln.strip()]
    if not lines:
        raise CountError("empty PHYLIP input", 1)
    head_no, head = lines[0]
    try:
        n = int(head.split()[0])
    except ValueError:
        raise CountError(f"first line must start with the taxon count, got {head.strip()!r}", head_no, 1)
    if n < 4:
        raise CountError(f"need at least 4 taxa, got {n}", head_no, 1)
    rows = lines[1:]
    if len(rows) != n:
        raise CountError(f"header says {n} taxa but {len(rows)} rows follow", rows[-1][0] if rows else head_no)
    names, matrix = [], []
    for r, (no, ln) in enumerate(rows):
        fields = ln.split()
        if len(fields) != n + 1:
            raise CountError(f"row for {fields[0]!r} has {len(fields) - 1} values, expected {n}", no)
        name = fields[0]
        if name in names:
            raise ValueFormatError(f"duplicate taxon name {name!r}", no, 1)
        names.append(name)
        row = []
        for c, tok in enumerate(fields[1:], 1):
            try:
                v = parse_rational(tok)
            except ValueError:
                raise ValueFormatError(f"bad value {tok!r}", no, c)
            if v < 0:
                raise ValueFormatError(f"negative distance {tok}", no, c)
            row.append(v)
        if row[r] != 0:
            raise DiagonalError(f"diagonal entry for {name!r} is {row[r]}, expected 0", no, r + 1)
        matrix.append(tuple(row))
    for i in range(n):
        for j in range(i + 1, n):
            if matrix[i][j] != matrix[j][i]:
                raise AsymmetryError(
                    f"d({names[i]},{names[j]})={matrix[i][j]} but d({names[j]},{names[i]})={matrix[j][i]}",
                    rows[j][0],
                    i + 1,
                )
    return DistanceMatrixFile(tuple(names), tuple(matrix))


def write_phylip(d: Sequence, n: int, names: Optional[Sequence[str]] = None) -> str:
    names = list(names) if names else [str(i) for i in range(1, n + 1)]
    m = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), v in zip(pairs(n), d):
        m[i - 1][j - 1] = m[j - 1][i - 1] = Fraction(v)
    width = max(len(s) for s in names)
    out = [str(n)]
    for name, row in zip(names, m):
        out.append(name.ljust(width) + " " + " ".join(str(v) for v in row))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- Newick


def _tokenize_newick(text: str):
    i, out = 0, []
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "(),:;":
            out.append((ch, i))
            i += 1
        else:
            j = i
            while j < len(text) and text[j] not in "(),:;" and not text[j].isspace():
                j += 1
            out.append((text[i:j], i))
            i = j
    return out


def parse_newick(text: str, names: Optional[Sequence[str]] = None, lengths: bool = False):
    """Parse an unrooted Newick string over taxa ``1..n``.

    Leaf labels are taxon numbers, or names looked up in ``names`` (position
    ``i`` is taxon ``i+1``).  With ``lengths=True`` returns ``(tree,
    weights)`` where ``weights`` maps every split with a branch length,
    trivial ones included; the two edges at a bifurcating root are merged.
    """
    toks = _tokenize_newick(text)
    pos = 0
    index = {s: i + 1 for i, s in enumerate(names)} if names else None

    def peek():
        return toks[pos][0] if pos < len(toks) else None

    def col():
        return toks[pos][1] + 1 if pos < len(toks) else len(text) + 1

    def take(expected=None):
        nonlocal pos
        if pos >= len(toks):
            raise NewickError("unexpected end of input" + (f", expected {expected!r}" if expected else ""), 1, col())
        tok = toks[pos][0]
        if expected and tok != expected:
            raise NewickError(f"expected {expected!r}, got {tok!r}", 1, col())
        pos += 1
        return tok

    def length():
        if peek() == ":":
            take(":")
            c = col()
            tok = take()
            try:
                return parse_rational(tok)
            except ValueError:
                raise NewickError(f"bad branch length {tok!r}", 1, c)
        return None

    def node():
        # returns (leafset, children, own length, label)
        if peek() == "(":
            take("(")
            kids = [node()]
            while peek() == ",":
                take(",")
                kids.append(node())
            if peek() != ")":
                raise NewickError("unbalanced parentheses: missing ')'", 1, col())
            take(")")
            if peek() not in (None, ":", ",", ")", ";", "("):
                take()  # internal node label, ignored
            ln = length()
            leaves = frozenset().union(*(k[0] for k in kids))
            return (leaves, kids, ln)
        c = col()
        tok = take()
        if tok in "(),:;":
            raise NewickError(f"expected a leaf label, got {tok!r}", 1, c)
        if index is not None:
            if tok not in index:
                raise NewickError(f"unknown taxon name {tok!r}", 1, c)
            taxon = index[tok]
        else:
            try:
                taxon = int(tok)
            except ValueError:
                raise NewickError(f"leaf label {tok!r} is not a taxon number", 1, c)
        return (frozenset([taxon]), [], length(), c)

    root = node()
    if peek() == ")":
        raise NewickError("unbalanced parentheses: extra ')'", 1, col())
    if peek() != ";":
        raise NewickError("missing ';' at end of tree", 1, col())
    take(";")
    if pos != len(toks):
        raise NewickError("text after ';'", 1, col())

    labels: list[int] = []
    stack = [root]
    while stack:
        nd = stack.pop()
        if not nd[1]:
            if nd[0] and next(iter(nd[0])) in labels:
                raise NewickError(f"duplicate taxon label {next(iter(nd[0]))}", 1, nd[3])
            labels.extend(nd[0])
        stack.extend(nd[1])
    n = len(labels)
    if sorted(labels) != list(range(1, n + 1)):
        raise NewickError(f"leaf labels must be exactly 1..{n}, got {sorted(labels)}", 1)
    if n < 4:
        raise NewickError(f"need at least 4 taxa, got {n}", 1)

    weights: dict[Split, Fraction] = {}
    splits = set()

    def visit(nd, is_root):
        leaves, kids, ln = nd[0], nd[1], nd[2]
        if not is_root:
            s = Split.of(leaves, n)
            if not s.trivial:
                splits.add(s)
            if ln is not None:
                weights[s] = weights.get(s, Fraction(0)) + ln
        for k in kids:
            visit(k, False)

    visit(root, True)
    tree = PhyloTree(n, frozenset(splits))
    return (tree, weights) if lengths else tree


def write_newick(
    t: PhyloTree,
    names: Optional[Sequence[str]] = None,
    weights: Optional[Mapping[Split, Fraction]] = None,
) -> str:
    """Canonical Newick: taxon 1 first at the top node, subtrees sorted by smallest taxon."""
    n = t.n
    clusters = [s.part for s in t.splits] + [frozenset([i]) for i in range(2, n + 1)]

    def label(i: int) -> str:
        return names[i - 1] if names else str(i)

    def ln(c: frozenset[int]) -> str:
        if weights is None:
            return ""
        s = Split.of(c, n)
        return f":{weights[s]}" if s in weights else ""

    def children(c: Optional[frozenset[int]]) -> list[frozenset[int]]:
        inner = [d for d in clusters if (c is None or d < c)]
        return sorted((d for d in inner if not any(d < e for e in inner)), key=min)

    def emit(c: frozenset[int]) -> str:
        if len(c) == 1:
            return label(next(iter(c))) + ln(c)
        return "(" + ",".join(emit(d) for d in children(c)) + ")" + ln(c)

    first = label(1) + ln(frozenset([1]))
    return "(" + ",".join([first] + [emit(d) for d in children(None)]) + ");"


# ---------------------------------------------------------------- network JSON


@dataclass(frozen=True)
class NetworkDocument:
    """A weighted circular split network as stored on disk."""

    n: int
    ordering: CircularOrdering
    splits: tuple[tuple[Split, Fraction], ...]
    version: int = NETWORK_VERSION

    @property
    def system(self) -> SplitSystem:
        return SplitSystem.of(self.n, [s for s, _ in self.splits])

    @property
    def network(self) -> CircularSplitNetwork:
        return CircularSplitNetwork(self.ordering, self.system)

    def weighting(self, default: Fraction = Fraction(1)) -> dict[Split, Fraction]:
        """Stored weights; trivial splits without a stored weight get ``default``."""
        w = {s: Fraction(default) for s in self.system.all_splits()}
        w.update(dict(self.splits))
        return w


def read_network(text: str) -> NetworkDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NetworkFormatError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno)
    if not isinstance(raw, dict):
        raise NetworkFormatError("network document must be a JSON object")
    for key in ("n", "ordering", "splits"):
        if key not in raw:
            raise NetworkFormatError(f"missing field {key!r}")
    version = raw.get("version", NETWORK_VERSION)
    if version != NETWORK_VERSION:
        raise NetworkFormatError(f"unsupported format version {version}")
    n = raw["n"]
    if not isinstance(n, int) or n < 4:
        raise NetworkFormatError(f"'n' must be an integer >= 4, got {n!r}")
    try:
        ordering = CircularOrdering.of(raw["ordering"])
    except (ValueError, TypeError) as exc:
        raise NetworkFormatError(f"bad ordering: {exc}")
    if ordering.n != n:
        raise NetworkFormatError(f"ordering has {ordering.n} taxa, n is {n}")
    out: dict[Split, Fraction] = {}
    for k, entry in enumerate(raw["splits"]):
        try:
            s = Split.of(entry["part"], n)
        except (ValueError, TypeError, KeyError) as exc:
            raise NetworkFormatError(f"splits[{k}]: bad part: {exc}")
        try:
            w = parse_rational(str(entry.get("weight", "1")))
        except ValueError:
            raise NetworkFormatError(f"splits[{k}]: bad fraction {entry.get('weight')!r}")
        if w < 0:
            raise NetworkFormatError(f"splits[{k}]: negative weight {w}")
        if not interval_in(s, ordering):
            raise NetworkFormatError(f"splits[{k}]: {sorted(entry['part'])} is not an interval of {ordering}")
        if s in out:
            raise NetworkFormatError(f"splits[{k}]: duplicate split {s}")
        out[s] = w
    return NetworkDocument(n, ordering, tuple(sorted(out.items(), key=lambda kv: kv[0].sort_key())), version)


def write_network(doc: NetworkDocument) -> str:
    body = {
        "format": NETWORK_FORMAT,
        "version": doc.version,
        "n": doc.n,
        "ordering": list(doc.ordering.cycle),
        "splits": [
            {"part": sorted(s.part), "weight": str(Fraction(w))}
            for s, w in sorted(doc.splits, key=lambda kv: kv[0].sort_key())
        ],
    }
    return json.dumps(body, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------- CSV


def _pair_labels(n: int, names: Optional[Sequence[str]]) -> list[str]:
    lab = (lambda i: names[i - 1]) if names else str
    return [f"{lab(i)}-{lab(j)}" for i, j in pairs(n)]


def pair_csv(x: Sequence, n: int, names: Optional[Sequence[str]] = None) -> str:
    """``pair,value`` rows in lexicographic pair order."""
    rows = ["pair,value"] + [f"{p},{Fraction(v)}" for p, v in zip(_pair_labels(n, names), x)]
    return "\n".join(rows) + "\n"


def vectors_csv(vectors: Iterable[Sequence], n: int, label: str = "vertex") -> str:
    """One vector per row, columns in lexicographic pair order."""
    head = [label] + _pair_labels(n, None)
    rows = [",".join(head)]
    for k, v in enumerate(vectors):
        rows.append(",".join([str(k)] + [str(Fraction(a)) for a in v]))
    return "\n".join(rows) + "\n"

"""
Text File Formats
=================
Digraph file::

    # comment lines and blank lines are ignored
    n m
    u v        (m lines, 0-indexed)

Colouring file::

    n K        vertex colouring, then n lines with one colour id each
    m K arc    arc colouring, then m lines in sorted (u, v) arc order

A vertex colouring with K = 0 writes ``-`` for every vertex.
Files are ASCII with LF newlines.
"""

from typing import Iterator, List, Optional, Tuple, Union

from pydantic import ValidationError

from rvc_core.digraph import Digraph
from rvc_core.errors import ColouringError, ParseError
from rvc_core.models import ArcColouring, VertexColouring

Colouring = Union[VertexColouring, ArcColouring]


def _content_lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield number, line.split()


def _int(token: str, number: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", line=number) from None


# ── Digraphs ────────────────────────────────────────────

def parse_digraph(text: str) -> Digraph:
    lines = _content_lines(text)
    try:
        number, header = next(lines)
    except StopIteration:
        raise ParseError("empty digraph file") from None
    if len(header) != 2:
        raise ParseError("header must be 'n m'", line=number)
    n, m = _int(header[0], number), _int(header[1], number)
    if n < 1 or m < 0:
        raise ParseError(f"invalid header n={n} m={m}", line=number)
    arcs = []
    for number, tokens in lines:
        if len(tokens) != 2:
            raise ParseError("arc line must be 'u v'", line=number)
        u, v = _int(tokens[0], number), _int(tokens[1], number)
        if u == v:
            raise ParseError(f"loop at vertex {u}", line=number)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"arc ({u}, {v}) out of range for n={n}", line=number)
        arcs.append((u, v))
    if len(arcs) != m:
        raise ParseError(f"header announces {m} arcs, found {len(arcs)}")
    if len(set(arcs)) != m:
        raise ParseError("duplicate arc lines")
    return Digraph(n=n, arcs=tuple(arcs))


def format_digraph(D: Digraph) -> str:
    lines = [f"{D.n} {D.m}"] + [f"{u} {v}" for u, v in D.arcs]
    return "\n".join(lines) + "\n"


def read_digraph(path: str) -> Digraph:
    with open(path, "r", encoding="ascii") as f:
        return parse_digraph(f.read())


def write_digraph(path: str, D: Digraph) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as f:
        f.write(format_digraph(D))


# ── Colourings ──────────────────────────────────────────

def parse_colouring(text: str, D: Optional[Digraph] = None) -> Colouring:
    """
    Arc colourings need the host digraph ``D`` for the arc order. When ``D``
    is given, size mismatches raise :class:`ColouringError`.
    """
    lines = _content_lines(text)
    try:
        number, header = next(lines)
    except StopIteration:
        raise ParseError("empty colouring file") from None
    arc = len(header) == 3 and header[2] == "arc"
    if len(header) != 2 and not arc:
        raise ParseError("header must be 'n K' or 'm K arc'", line=number)
    size, K = _int(header[0], number), _int(header[1], number)

    ids: List[Optional[int]] = []
    for number, tokens in lines:
        if len(tokens) != 1:
            raise ParseError("expected one colour id per line", line=number)
        token = tokens[0]
        if token == "-":
            if arc or K != 0:
                raise ParseError("'-' is only allowed in vertex colourings with K = 0", line=number)
            ids.append(None)
            continue
        value = _int(token, number)
        if not (0 <= value < K):
            raise ParseError(f"colour id {value} outside 0..{K - 1}", line=number)
        ids.append(value)
    if len(ids) != size:
        raise ParseError(f"header announces {size} entries, found {len(ids)}")

    try:
        if arc:
            if D is None:
                raise ParseError("arc colouring needs its digraph")
            if D.m != size:
                raise ColouringError(f"arc colouring has {size} arcs, digraph has {D.m}")
            return ArcColouring(arcs=D.arcs, colour=tuple(ids), K=K)
        if D is not None and D.n != size:
            raise ColouringError(f"colouring has {size} vertices, digraph has {D.n}")
        return VertexColouring(n=size, colour=tuple(ids), K=K)
    except ValidationError as exc:
        raise ParseError(f"invalid colouring: {exc.errors()[0]['msg']}") from None


def format_colouring(c: Colouring) -> str:
    if isinstance(c, ArcColouring):
        lines = [f"{len(c.arcs)} {c.K} arc"] + [str(x) for x in c.colour]
    else:
        lines = [f"{c.n} {c.K}"] + ["-" if x is None else str(x) for x in c.colour]
    return "\n".join(lines) + "\n"


def read_colouring(path: str, D: Optional[Digraph] = None) -> Colouring:
    with open(path, "r", encoding="ascii") as f:
        return parse_colouring(f.read(), D)


def write_colouring(path: str, c: Colouring) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as f:
        f.write(format_colouring(c))

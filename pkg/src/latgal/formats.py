"""Plain-text lattice and map files, and DOT rendering.

Lattice file::

    lattice <name>
    elements <l0> <l1> ... <lk>
    bottom <l0>
    top <lk>
    covers
    <la> < <lb>

Map file::

    map <name> from <latticeFile#name> to <latticeFile#name>
    <srcLabel> -> <dstLabel>

Tokens are whitespace separated and ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .errors import LatgalError, ParseError
from .lattice import Lattice, MonotoneMap, build_from_covers


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        tokens = []
        col = 0
        for part in line.split():
            col = line.index(part, col)
            tokens.append((part, col + 1))
            col += len(part)
        yield lineno, tokens


def parse_lattice_text(text: str, source: str | None = None) -> Lattice:
    """Parse the lattice text format; construction errors propagate unchanged."""
    name = None
    elements = None
    bottom = top = None
    covers: list[tuple[str, str]] = []
    in_covers = False
    last_line = 0
    for lineno, tokens in _lines(text):
        last_line = lineno
        head, col = tokens[0]

        def fail(msg, column=col):
            raise ParseError(msg, lineno, column, source)

        if in_covers:
            if len(tokens) != 3 or tokens[1][0] != "<":
                fail("expected a cover line '<lower> < <upper>'")
            covers.append((tokens[0][0], tokens[2][0]))
            continue
        if head == "lattice":
            if len(tokens) != 2:
                fail("expected 'lattice <name>'")
            name = tokens[1][0]
        elif head == "elements":
            if len(tokens) < 2:
                fail("'elements' needs at least one label")
            elements = [t for t, _ in tokens[1:]]
            if len(set(elements)) != len(elements):
                fail("duplicate element label")
        elif head in ("bottom", "top"):
            if len(tokens) != 2:
                fail(f"expected '{head} <label>'")
            if head == "bottom":
                bottom = tokens[1][0]
            else:
                top = tokens[1][0]
        elif head == "covers":
            if len(tokens) != 1:
                fail("'covers' stands on its own line", tokens[1][1])
            in_covers = True
        else:
            fail(f"unknown keyword {head!r}")
    for key, value in (("lattice", name), ("elements", elements), ("bottom", bottom),
                       ("top", top)):
        if value is None:
            raise ParseError(f"missing '{key}' line", last_line or None, None, source)
    if not in_covers:
        raise ParseError("missing 'covers' section", last_line or None, None, source)
    known = set(elements)
    for lab in (bottom, top) + tuple(x for pair in covers for x in pair):
        if lab not in known:
            raise ParseError(f"unknown element {lab!r}", None, None, source)
    return build_from_covers(elements, bottom, top, covers, name=name)


def format_lattice(L: Lattice) -> str:
    lines = [
        f"lattice {L.name}",
        "elements " + " ".join(L.names),
        f"bottom {L.names[L.bottom]}",
        f"top {L.names[L.top]}",
        "covers",
    ]
    lines += [f"{L.names[a]} < {L.names[b]}" for a, b in L.covers]
    return "\n".join(lines) + "\n"


def load_lattice(path) -> Lattice:
    path = Path(path)
    return parse_lattice_text(path.read_text(), source=str(path))


def save_lattice(L: Lattice, path) -> None:
    Path(path).write_text(format_lattice(L))


@dataclass(frozen=True)
class MapSpec:
    name: str
    src_file: str
    src_name: str
    dst_file: str
    dst_name: str
    pairs: dict


def parse_map_text(text: str, source: str | None = None) -> MapSpec:
    # '#' separates file and lattice name in the header, so strip comments only after it
    lines = text.splitlines()
    header_idx = None
    for i, raw in enumerate(lines):
        if raw.strip() and not raw.strip().startswith("#"):
            header_idx = i
            break
    if header_idx is None:
        raise ParseError("empty map file", None, None, source)
    header = lines[header_idx].split()
    lineno = header_idx + 1
    if len(header) != 6 or header[0] != "map" or header[2] != "from" or header[4] != "to":
        raise ParseError("expected 'map <name> from <file#name> to <file#name>'", lineno, 1, source)
    refs = []
    for tok in (header[3], header[5]):
        if tok.count("#") != 1:
            raise ParseError(f"lattice reference {tok!r} must look like file#name", lineno,
                             lines[header_idx].index(tok) + 1, source)
        refs.append(tuple(tok.split("#")))
    pairs: dict[str, str] = {}
    rest = "\n" * (header_idx + 1) + "\n".join(lines[header_idx + 1:])
    for ln, tokens in _lines(rest):
        if len(tokens) != 3 or tokens[1][0] != "->":
            raise ParseError("expected '<src> -> <dst>'", ln, tokens[0][1], source)
        src, dst = tokens[0][0], tokens[2][0]
        if src in pairs:
            raise ParseError(f"{src!r} is mapped twice", ln, tokens[0][1], source)
        pairs[src] = dst
    (sf, sn), (df, dn) = refs
    return MapSpec(header[1], sf, sn, df, dn, pairs)


def format_map(name: str, m: MonotoneMap, src_file: str, dst_file: str) -> str:
    lines = [f"map {name} from {src_file}#{m.src.name} to {dst_file}#{m.dst.name}"]
    lines += [f"{m.src.names[x]} -> {m.dst.names[m.table[x]]}" for x in range(m.src.n)]
    return "\n".join(lines) + "\n"


class MapDomainError(LatgalError):
    """A map file does not match the lattices it is applied to."""


def map_from_spec(spec: MapSpec, src: Lattice, dst: Lattice) -> MonotoneMap:
    if spec.src_name != src.name or spec.dst_name != dst.name:
        raise MapDomainError(
            f"map {spec.name!r} goes {spec.src_name} -> {spec.dst_name}, "
            f"expected {src.name} -> {dst.name}")
    extra = set(spec.pairs) - set(src.names)
    if extra:
        raise MapDomainError(f"map {spec.name!r} mentions unknown source elements {sorted(extra)}")
    missing = [x for x in src.names if x not in spec.pairs]
    if missing:
        raise MapDomainError(f"map {spec.name!r} leaves {missing} undefined")
    bad = sorted({y for y in spec.pairs.values() if y not in dst.names})
    if bad:
        raise MapDomainError(f"map {spec.name!r} targets unknown elements {bad}")
    return MonotoneMap.from_labels(src, dst, spec.pairs)


def load_map(path, src: Lattice | None = None, dst: Lattice | None = None) -> MonotoneMap:
    """Load a map; lattices not supplied are read from the header references."""
    path = Path(path)
    spec = parse_map_text(path.read_text(), source=str(path))
    if src is None:
        src = load_lattice(path.parent / spec.src_file)
    if dst is None:
        dst = load_lattice(path.parent / spec.dst_file)
    return map_from_spec(spec, src, dst)


def emit_dot(L: Lattice, highlight: Iterable[int] | None = None) -> str:
    """DOT digraph of the Hasse diagram, bottom drawn lowest."""
    marked = set(highlight or ())
    out = [f'digraph "{L.name}" {{', "  rankdir=BT;"]
    for x in range(L.n):
        attrs = f'label="{L.names[x]}"'
        if x in marked:
            attrs += ", style=filled, fillcolor=lightgrey"
        out.append(f"  n{x} [{attrs}];")
    for a, b in L.covers:
        out.append(f"  n{a} -> n{b} [dir=none];")
    out.append(f"  {{ rank=min; n{L.bottom}; }}")
    out.append("}")
    return "\n".join(out) + "\n"
